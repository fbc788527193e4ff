#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "jeq/jgraph.hpp"
#include "jeq/partition.hpp"

namespace jeq {

/// A balanced bipartition U ⊎ W = [2m] with the crossing matching u_i <-> w_i.
class PairedBipartition {
public:
    PairedBipartition(std::vector<int> u, std::vector<int> w);

    /// U = {1..m}, W = {m+1..2m}, u_i matched with w_i = m + i.
    static PairedBipartition standard(int m);
    /// Parses "1:5,2:6,3:7,4:8" (u_i:w_i).
    static PairedBipartition parse(std::string_view pairs);

    int m() const noexcept { return static_cast<int>(u_.size()); }
    int n() const noexcept { return 2 * m(); }
    const std::vector<int>& u() const noexcept { return u_; }
    const std::vector<int>& w() const noexcept { return w_; }

    bool in_u(int x) const { return side_.at(static_cast<std::size_t>(x)) == 0; }
    /// The element matched with x.
    int mate(int x) const { return mate_.at(static_cast<std::size_t>(x)); }

    PairedBipartition permuted(const Permutation& sigma) const;
    std::string to_string() const;

    friend bool operator==(const PairedBipartition& a, const PairedBipartition& b) {
        return a.u_ == b.u_ && a.w_ == b.w_;
    }

private:
    std::vector<int> u_, w_;
    std::vector<int> side_, mate_;  // indexed by element
};

/// Uniformly random pb on [2m].
PairedBipartition random_paired_bipartition(int m, std::mt19937_64& rng);

/// Every pb on [2m]: each ordered choice of U (as a set) and each matching onto W.
std::vector<PairedBipartition> all_paired_bipartitions(int m);

enum class TripleType { X1 = 1, X2 = 2, X3 = 3 };

enum class Family { Pi1, Pi2, Pi3 };

std::string to_string(Family f);
std::optional<Family> parse_family(std::string_view s);

TripleType classify_triple(const PairedBipartition& pb, const Triple& t);

/// Cells 1..3 are X1, X2, X3.
ThreePartition three_partition(const PairedBipartition& pb);

using Matrix3 = std::array<std::array<int, 3>, 3>;
Matrix3 three_partition_matrix(int m);

/// Quotient matrix of a family with the merged cell listed first:
/// Π1 = {X2∪X3, X1}, Π2 = {X1∪X3, X2}, Π3 = {X3, X1∪X2}.
Matrix2 family_matrix(Family f, int m);
/// The same matrix after canonical orientation.
Matrix2 canonical_family_matrix(Family f, int m);

/// Triple types that make up the first (merged) cell of a family.
std::vector<TripleType> merged_cell_types(Family f);

/// The family's 2-partition in canonical orientation. `flipped()` on the result
/// tells whether the merged cell ended up as cell 2.
TwoPartition pi(Family f, const PairedBipartition& pb);
inline TwoPartition pi1(const PairedBipartition& pb) { return pi(Family::Pi1, pb); }
inline TwoPartition pi2(const PairedBipartition& pb) { return pi(Family::Pi2, pb); }
inline TwoPartition pi3(const PairedBipartition& pb) { return pi(Family::Pi3, pb); }

/// The part of a pb that a family depends on, in canonical form.
struct DependenceSignature {
    Family family = Family::Pi1;
    /// Π1, Π3: the side containing the smallest element first, both sorted.
    std::optional<std::pair<std::vector<int>, std::vector<int>>> bipartition;
    /// Π2, Π3: pairs (x<y), sorted.
    std::vector<std::pair<int, int>> matching;

    DependenceSignature permuted(const Permutation& sigma) const;
    std::string to_string() const;

    friend bool operator==(const DependenceSignature&, const DependenceSignature&) = default;
};

DependenceSignature dependence_signature(Family f, const PairedBipartition& pb);

/// Rebuilds a pb from recovered structure. For Π1 the matching is arbitrary
/// (sorted sides paired in order); for Π2 the sides are arbitrary.
PairedBipartition realize(const DependenceSignature& sig);

}  // namespace jeq
