#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jeq/jgraph.hpp"
#include "jeq/partition.hpp"

namespace jeq {

/// The 3 x (n-3) cell-1 indicator array of a vertex neighbourhood. Rows are the
/// three pairs of the base, sorted by non-increasing xy* indicator sum (ties by
/// pair); columns are the elements outside the base, ascending.
struct NbArray {
    Triple base;
    int base_indicator = 0;
    std::array<std::pair<int, int>, 3> row_labels{};
    std::array<int, 3> pair_sums{};  // row_indicator_sum of each row pair
    std::vector<int> columns;
    std::array<std::vector<std::uint8_t>, 3> bits;

    int n_columns() const noexcept { return static_cast<int>(columns.size()); }
    int bit(int row, int col) const { return bits[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]; }
    int row_sum(int row) const;
    /// Column c as a 3-bit pattern, top row in the high bit (0b110 = top two rows set).
    int column_type(int c) const;
    /// Number of cell-1 neighbours of the base.
    int ones() const;

    /// Three lines "ab: 0 1 1 ..." preceded by a column header.
    std::string to_string() const;
};

NbArray nb_array(const TwoPartition& p, const Triple& t);

enum class TupleCase { I, II, III, IV, V, VI, Violation, Unknown };

std::string to_string(TupleCase c);

/// Gaps between the sorted pair sums: d1 = top - middle, d2 = middle - bottom.
/// For odd n both are stored doubled.
struct DifferenceTuple {
    int d1 = 0, d2 = 0;
    bool doubled = false;
    TupleCase label = TupleCase::Unknown;

    friend bool operator==(const DifferenceTuple&, const DifferenceTuple&) = default;
};

/// DomainError if t is not in cell 1.
DifferenceTuple difference_tuple(const TwoPartition& p, const Triple& t);
DifferenceTuple difference_tuple(const NbArray& arr, int n);

/// ab* - ac* = (n-4)/2 (abd + abe + cde - acd - ace - bde).
bool rowdiff_identity(const TwoPartition& p, int a, int b, int c, int d, int e);

enum class ViolationRule { EqualRows, UnequalA, UnequalB, UnequalC };

std::string to_string(ViolationRule r);

/// Forbidden column pair (d, e) between a higher row and a lower one.
struct ColumnViolation {
    ViolationRule rule = ViolationRule::EqualRows;
    int upper_row = 0, lower_row = 0;  // row positions in the array
    int d = 0, e = 0;                  // column elements

    friend bool operator==(const ColumnViolation&, const ColumnViolation&) = default;
};

std::vector<ColumnViolation> column_pair_violations(const NbArray& arr);

enum class CaseId { I, II, III, IV_i, IV_ii, V_i, V_ii, VI_i, VI_ii, VI_iii, VI_iv, Unknown };

std::string to_string(CaseId c);
std::optional<CaseId> parse_case(std::string_view s);
TupleCase tuple_case_of(CaseId c);

struct ColumnClass {
    enum class Kind { Omega, Gamma, Beta, Special };
    Kind kind = Kind::Beta;
    int pattern = 0;  // 3-bit column pattern in the template's row order

    std::string to_string() const;
    friend bool operator==(const ColumnClass&, const ColumnClass&) = default;
};

struct CaseProfile {
    CaseId id = CaseId::Unknown;
    DifferenceTuple tuple;
    std::map<int, ColumnClass> grouping;  // column element -> class
};

/// Matches the array against the templates of its difference tuple, up to column
/// permutation and reordering of rows with equal sums.
CaseProfile case_profile(const NbArray& arr, int n);
CaseProfile case_profile(const TwoPartition& p, const Triple& t);

/// Column-type counts of an array, indexed by 3-bit pattern.
using ColumnCounts = std::array<int, 8>;

struct AdmissibleArray {
    ColumnCounts counts{};
    CaseId shape = CaseId::Unknown;

    friend bool operator==(const AdmissibleArray&, const AdmissibleArray&) = default;
};

/// Every column multiset of a cell-1 base (rows sorted, tied rows canonicalized)
/// with the given difference tuple, at least 2n-7 ones, and no forbidden column
/// pair. Needs even n in 10..16.
std::vector<AdmissibleArray> enumerate_admissible_arrays(int n, TupleCase c);

/// Largest n at which a vertex with the given array can exist; nullopt = no bound.
std::optional<int> max_n_bound(CaseId c);

}  // namespace jeq
