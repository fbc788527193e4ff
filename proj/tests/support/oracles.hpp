#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "jeq/jgraph.hpp"
#include "jeq/partition.hpp"

namespace oracle {

/// All w-subsets of [n], generated lexicographically and re-sorted into colex order.
std::vector<std::vector<int>> colex_subsets(int n, int w);

/// Dense integer adjacency matrix of J(n,w) built from intersection sizes.
std::vector<std::vector<std::int64_t>> adjacency_matrix(int n, int w);

/// True when prod (A - e_i I) = 0 and no product that omits one factor vanishes,
/// i.e. the distinct eigenvalues of A are exactly `eigs`.
bool minimal_polynomial_roots(const std::vector<std::vector<std::int64_t>>& a, const std::vector<int>& eigs);

/// Every f: V(J(n,2)) -> {-1,0,1}, f != 0, with (n-4) f(x) = sum of f over the
/// neighbours of x. Values listed by colex rank.
std::vector<std::vector<int>> lambda1_sign_functions(int n);

/// The {-1,0,1} functions f1(a,b) for ordered a != b, and f2(M1,M2) for every
/// ordered balanced bipartition, by colex rank of J(n,2).
std::set<std::vector<int>> type1_family(int n);
std::set<std::vector<int>> type2_family(int n);

/// Per-vertex neighbour counts by brute force over all vertex pairs.
bool equitable_by_pairs(const jeq::TwoPartition& p, jeq::Matrix2& out);

}  // namespace oracle
