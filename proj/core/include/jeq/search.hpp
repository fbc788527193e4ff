#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jeq/classify.hpp"
#include "jeq/error.hpp"
#include "jeq/partition.hpp"

namespace jeq {

/// Every integer matrix [[b11,b12],[b21,b22]] with rows summing to k, b11 - b21 = θ,
/// entries in [0,k] and b11 >= b22. DomainError unless θ is an eigenvalue of
/// J(n,3) other than k.
std::vector<Matrix2> candidate_matrices(int n, int theta);

enum class SymmetryMode {
    None,       // every labelled solution
    Dedup,      // one solution per Sym(n)-orbit, chosen after a full search
    Canonical,  // vertex {1,2,3} fixed in cell 1 with a canonical neighbourhood, then dedup
};

std::string to_string(SymmetryMode m);
std::optional<SymmetryMode> parse_symmetry(std::string_view s);

struct SearchLimits {
    std::uint64_t max_nodes = 0;  // 0 = unlimited
    double max_seconds = 0;       // 0 = unlimited
};

struct SearchProblem {
    int n = 0;
    Matrix2 q{};
    SymmetryMode symmetry = SymmetryMode::None;
    SearchLimits limits;
    /// false: plain 2^N enumeration with a final check (N <= 24 only).
    bool prune = true;
    /// Also propagate the orthogonality of the cell-1 indicator to the eigenspaces
    /// other than V0 and V_θ (exact necessary conditions).
    bool spectral = true;
    /// Worker threads; 0 = hardware concurrency. Capped by JE_THREADS.
    int threads = 1;
    /// Branch decisions replayed per task when splitting the tree.
    int split_depth = 8;
    /// Run recognition on every solution (θ = n - 7, even n).
    bool recognize = true;

    /// DomainError for an inconsistent matrix (row sums, θ not an eigenvalue, θ = k).
    void validate() const;
};

/// A branch decision: vertex rank and the cell it was put in.
using Decision = std::pair<int, std::uint8_t>;

struct SearchSolution {
    TwoPartition partition;
    std::optional<RecognitionResult> recognition;
    std::string canonical;  // set in the symmetry-reducing modes
};

struct SearchReport {
    int n = 0;
    Matrix2 q{};
    SymmetryMode symmetry = SymmetryMode::None;
    std::vector<SearchSolution> solutions;
    std::uint64_t raw_solutions = 0;  // before symmetry dedup
    std::uint64_t nodes = 0;
    std::uint64_t local_prunes = 0;   // a vertex count left its feasible interval
    std::uint64_t size_prunes = 0;    // a cell outgrew its required size
    std::uint64_t spectral_prunes = 0;  // an eigenspace orthogonality became unsatisfiable
    std::uint64_t forced = 0;         // assignments made by propagation
    std::uint64_t tasks = 0;
    bool complete = true;
    /// Decision prefixes of subtrees left unexplored when a budget ran out.
    std::vector<std::vector<Decision>> frontier;
    double seconds = 0;
};

/// Thrown when a budget runs out; carries everything found so far.
class BudgetExhausted : public Error {
public:
    explicit BudgetExhausted(SearchReport partial)
        : Error("search budget exhausted after " + std::to_string(partial.nodes) + " nodes"), partial_(std::move(partial)) {}
    const SearchReport& partial() const noexcept { return partial_; }

private:
    SearchReport partial_;
};

/// Enumerates equitable 2-partitions of J(n,3) with quotient matrix exactly q.
/// Output order does not depend on the thread count.
SearchReport enumerate(const SearchProblem& problem);

struct ClassificationEntry {
    Matrix2 q{};
    std::size_t solutions = 0;
    std::size_t pi1 = 0, pi2 = 0, pi3 = 0;
    std::vector<std::string> uncertified;  // cell-label strings
    bool complete = true;
    std::uint64_t nodes = 0;
    double seconds = 0;
};

struct ClassificationReport {
    int n = 0;
    SymmetryMode symmetry = SymmetryMode::Canonical;
    std::vector<ClassificationEntry> entries;
    bool complete = true;

    std::size_t uncertified() const;
};

/// Runs enumerate for every non-symmetric candidate matrix at θ = n - 7 and tallies
/// recognition results. Limits apply per matrix; an exhausted budget marks the
/// entry (and the report) incomplete instead of throwing.
ClassificationReport verify_classification(int n, SymmetryMode symmetry = SymmetryMode::Canonical, SearchLimits limits = {},
                                           int threads = 1);

/// Worker count after applying the JE_THREADS cap.
int effective_threads(int requested);

}  // namespace jeq
