#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jeq/jgraph.hpp"
#include "jeq/rational.hpp"

namespace jeq {

/// Integer 2x2 matrix, row-major: {{b11, b12}, {b21, b22}}.
using Matrix2 = std::array<std::array<int, 2>, 2>;

std::string to_string(const Matrix2& m);

/// Quotient matrix of a q-partition. Entries are exact average row sums of the
/// adjacency blocks, so they stay meaningful for non-equitable partitions.
struct QuotientMatrix {
    int q = 0;
    std::vector<Rational> entries;  // row-major, q*q
    bool equitable = false;

    const Rational& operator()(int i, int j) const {
        return entries.at(static_cast<std::size_t>(i * q + j));
    }
    bool is_integral() const;
    /// Only valid for integral 2x2 matrices.
    Matrix2 as_matrix2() const;
    std::string to_string() const;

    friend bool operator==(const QuotientMatrix&, const QuotientMatrix&) = default;
};

/// A permutation of [n] as an image table: sigma[x] for x in 1..n (sigma[0] unused).
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
Permutation inverse(const Permutation& sigma);
Triple apply(const Permutation& sigma, const Triple& t);

/// Equitable 2-partition candidate of V(J(n,3)).
///
/// Cells are stored as a membership bitstring over colex ranks. The labelling is
/// canonical: cell 1 has b11 >= b22; ties go to the smaller cell, then to the
/// labelling that puts vertex {1,2,3} in cell 1.
class TwoPartition {
public:
    /// `in_cell1[r]` is the membership of the vertex with rank r under the caller's
    /// labelling; the labels may be swapped to reach canonical orientation.
    TwoPartition(std::shared_ptr<const JohnsonGraph> graph, std::vector<bool> in_cell1);

    /// Builds from a cell-label string over {'1','2'}, one character per colex rank.
    static TwoPartition from_string(int n, std::string_view cells);

    int n() const noexcept { return graph_->n(); }
    const JohnsonGraph& graph() const noexcept { return *graph_; }
    const std::shared_ptr<const JohnsonGraph>& graph_ptr() const noexcept { return graph_; }

    bool in_cell1(int r) const { return in_cell1_[static_cast<std::size_t>(r)]; }
    int cell(int r) const { return in_cell1(r) ? 1 : 2; }
    /// The X1-indicator of a vertex (1 in cell 1, 0 in cell 2).
    int indicator(const Triple& t) const { return in_cell1(graph_->index(t)) ? 1 : 0; }
    int cell_size(int c) const { return c == 1 ? size1_ : graph_->order() - size1_; }

    const std::vector<bool>& membership() const noexcept { return in_cell1_; }
    const QuotientMatrix& quotient() const noexcept { return quotient_; }
    /// True when the caller's labels were swapped during canonicalization.
    bool flipped() const noexcept { return flipped_; }

    /// The cell-label string ("1"/"2" per rank), as written to partition files.
    std::string to_string() const;

    /// σ·p: the vertex σ(T) gets the cell of T.
    TwoPartition permuted(const Permutation& sigma) const;
    /// Same partition with one vertex moved to the other cell (for corruption tests).
    TwoPartition with_vertex_moved(int r) const;

    friend bool operator==(const TwoPartition& a, const TwoPartition& b) {
        return a.n() == b.n() && a.in_cell1_ == b.in_cell1_;
    }

private:
    std::shared_ptr<const JohnsonGraph> graph_;
    std::vector<bool> in_cell1_;
    int size1_ = 0;
    QuotientMatrix quotient_;
    bool flipped_ = false;
};

/// A 3-partition of V(J(n,3)) with cells labelled 1..3 (no canonical relabelling).
class ThreePartition {
public:
    ThreePartition(std::shared_ptr<const JohnsonGraph> graph, std::vector<std::uint8_t> cells);

    int n() const noexcept { return graph_->n(); }
    const JohnsonGraph& graph() const noexcept { return *graph_; }
    int cell(int r) const { return cells_[static_cast<std::size_t>(r)]; }
    int cell_size(int c) const;
    const std::vector<std::uint8_t>& cells() const noexcept { return cells_; }

private:
    std::shared_ptr<const JohnsonGraph> graph_;
    std::vector<std::uint8_t> cells_;
};

QuotientMatrix quotient_matrix(const TwoPartition& p);
QuotientMatrix quotient_matrix(const ThreePartition& p);

/// A vertex whose neighbour counts miss the averages of its cell.
struct EquitableWitness {
    Triple vertex;
    int cell = 0;
    std::vector<int> observed;       // neighbours in each cell
    std::vector<Rational> required;  // the quotient row of its cell
};

struct EquitableCheck {
    bool equitable = false;
    QuotientMatrix quotient;
    std::optional<EquitableWitness> witness;  // lowest-rank offending vertex

    explicit operator bool() const noexcept { return equitable; }
};

EquitableCheck is_equitable(const TwoPartition& p);
EquitableCheck is_equitable(const ThreePartition& p);

/// θ = b11 - b21; checks that it equals b22 - b12. DomainError unless equitable 2x2.
Rational theta_of(const QuotientMatrix& q);

/// The number of cell-1 vertices in the clique xy*.
int row_indicator_sum(const TwoPartition& p, int x, int y);

/// The parameters the local indicator identities are written in.
struct LocalParams {
    Rational theta;
    Rational p21;
};

/// θ and p21 of an equitable partition with integral quotient; DomainError otherwise.
LocalParams local_params(const TwoPartition& p);

/// ind(abc)(θ+3) + p21 = ab* + ac* + bc*  at t.
bool local_identity_check(const TwoPartition& p, const Triple& t);
bool local_identity_check(const TwoPartition& p, const Triple& t, const LocalParams& params);

/// ab* - cd* = (θ+3)/2 (abc + abd - acd - bcd)  for distinct a,b,c,d.
bool pair_difference_identity(const TwoPartition& p, int a, int b, int c, int d);
bool pair_difference_identity(const TwoPartition& p, int a, int b, int c, int d, const Rational& theta);

/// ab* - ac* = (θ+3)/2 (abd + abe + cde - acd - ace - bde)  for distinct a..e.
bool five_term_identity(const TwoPartition& p, int a, int b, int c, int d, int e);
bool five_term_identity(const TwoPartition& p, int a, int b, int c, int d, int e, const Rational& theta);

}  // namespace jeq
