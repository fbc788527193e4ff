#include "jeq/localstruct.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "jeq/error.hpp"

namespace jeq {

int NbArray::row_sum(int row) const {
    const auto& r = bits[static_cast<std::size_t>(row)];
    return static_cast<int>(std::count(r.begin(), r.end(), 1));
}

int NbArray::column_type(int c) const { return bit(0, c) << 2 | bit(1, c) << 1 | bit(2, c); }

int NbArray::ones() const { return row_sum(0) + row_sum(1) + row_sum(2); }

std::string NbArray::to_string() const {
    std::string s = "   ";
    for (int c : columns) s += (c < 10 ? "  " : " ") + std::to_string(c);
    s += "\n";
    for (int r = 0; r < 3; ++r) {
        const auto [x, y] = row_labels[static_cast<std::size_t>(r)];
        s += std::to_string(x) + std::to_string(y) + ":";
        if (x >= 10 || y >= 10) s.pop_back();
        for (int c = 0; c < n_columns(); ++c) s += "  " + std::to_string(bit(r, c));
        s += "\n";
    }
    return s;
}

NbArray nb_array(const TwoPartition& p, const Triple& t) {
    const auto& ctx = p.graph().context();
    if (t.arity() != 3 || t.max() > ctx.n) throw InvalidVertex("vertex " + t.to_string() + " is not in J(" + std::to_string(ctx.n) + ",3)");
    NbArray arr;
    arr.base = t;
    arr.base_indicator = p.indicator(t);
    for (int i = 1; i <= ctx.n; ++i)
        if (!t.contains(i)) arr.columns.push_back(i);

    std::array<std::pair<int, int>, 3> pairs{{{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}}};
    std::array<int, 3> sums{};
    for (std::size_t i = 0; i < 3; ++i) sums[i] = row_indicator_sum(p, pairs[i].first, pairs[i].second);
    std::array<std::size_t, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sums[a] > sums[b]; });
    for (std::size_t r = 0; r < 3; ++r) {
        const auto [x, y] = pairs[order[r]];
        arr.row_labels[r] = {x, y};
        arr.pair_sums[r] = sums[order[r]];
        for (int c : arr.columns) arr.bits[r].push_back(static_cast<std::uint8_t>(p.indicator({x, y, c})));
    }
    return arr;
}

std::string to_string(TupleCase c) {
    switch (c) {
        case TupleCase::I: return "I";
        case TupleCase::II: return "II";
        case TupleCase::III: return "III";
        case TupleCase::IV: return "IV";
        case TupleCase::V: return "V";
        case TupleCase::VI: return "VI";
        case TupleCase::Violation: return "violation";
        case TupleCase::Unknown: return "unknown";
    }
    return "?";
}

DifferenceTuple difference_tuple(const NbArray& arr, int n) {
    if (arr.base_indicator != 1) throw DomainError("difference tuples are defined for cell-1 vertices, " + arr.base.to_string() + " is in cell 2");
    DifferenceTuple d;
    d.d1 = arr.pair_sums[0] - arr.pair_sums[1];
    d.d2 = arr.pair_sums[1] - arr.pair_sums[2];
    if (n % 2 != 0) {
        d.d1 *= 2;
        d.d2 *= 2;
        d.doubled = true;
        d.label = TupleCase::Unknown;
        return d;
    }
    const int h = (n - 4) / 2;
    const std::pair<int, int> v{d.d1, d.d2};
    if (v == std::pair{2 * h, 0}) d.label = TupleCase::I;
    else if (v == std::pair{h, h}) d.label = TupleCase::II;
    else if (v == std::pair{0, 2 * h}) d.label = TupleCase::III;
    else if (v == std::pair{h, 0}) d.label = TupleCase::IV;
    else if (v == std::pair{0, h}) d.label = TupleCase::V;
    else if (v == std::pair{0, 0}) d.label = TupleCase::VI;
    else d.label = TupleCase::Violation;
    return d;
}

DifferenceTuple difference_tuple(const TwoPartition& p, const Triple& t) { return difference_tuple(nb_array(p, t), p.n()); }

bool rowdiff_identity(const TwoPartition& p, int a, int b, int c, int d, int e) {
    return five_term_identity(p, a, b, c, d, e, Rational(p.n() - 7));
}

std::string to_string(ViolationRule r) {
    switch (r) {
        case ViolationRule::EqualRows: return "equal-rows";
        case ViolationRule::UnequalA: return "unequal-a";
        case ViolationRule::UnequalB: return "unequal-b";
        case ViolationRule::UnequalC: return "unequal-c";
    }
    return "?";
}

std::vector<ColumnViolation> column_pair_violations(const NbArray& arr) {
    std::vector<ColumnViolation> out;
    const int cols = arr.n_columns();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            const int si = arr.row_sum(i), sj = arr.row_sum(j);
            if (si < sj) continue;
            for (int d = 0; d < cols; ++d)
                for (int e = 0; e < cols; ++e) {
                    if (d == e) continue;
                    const int id = arr.bit(i, d), ie = arr.bit(i, e), jd = arr.bit(j, d), je = arr.bit(j, e);
                    auto add = [&](ViolationRule rule) {
                        out.push_back({rule, i, j, arr.columns[static_cast<std::size_t>(d)], arr.columns[static_cast<std::size_t>(e)]});
                    };
                    if (si == sj) {
                        if (d < e && id && ie && !jd && !je) add(ViolationRule::EqualRows);
                        continue;
                    }
                    if (jd && !id && !ie && !je) add(ViolationRule::UnequalA);
                    if (!id && ie && jd && je) add(ViolationRule::UnequalB);
                    if (d < e && jd && je && !id && !ie) add(ViolationRule::UnequalC);
                }
        }
    return out;
}

std::string to_string(CaseId c) {
    switch (c) {
        case CaseId::I: return "I";
        case CaseId::II: return "II";
        case CaseId::III: return "III";
        case CaseId::IV_i: return "IV.i";
        case CaseId::IV_ii: return "IV.ii";
        case CaseId::V_i: return "V.i";
        case CaseId::V_ii: return "V.ii";
        case CaseId::VI_i: return "VI.i";
        case CaseId::VI_ii: return "VI.ii";
        case CaseId::VI_iii: return "VI.iii";
        case CaseId::VI_iv: return "VI.iv";
        case CaseId::Unknown: return "Unknown";
    }
    return "?";
}

std::optional<CaseId> parse_case(std::string_view s) {
    for (int i = 0; i <= static_cast<int>(CaseId::Unknown); ++i)
        if (to_string(static_cast<CaseId>(i)) == s) return static_cast<CaseId>(i);
    return std::nullopt;
}

TupleCase tuple_case_of(CaseId c) {
    switch (c) {
        case CaseId::I: return TupleCase::I;
        case CaseId::II: return TupleCase::II;
        case CaseId::III: return TupleCase::III;
        case CaseId::IV_i:
        case CaseId::IV_ii: return TupleCase::IV;
        case CaseId::V_i:
        case CaseId::V_ii: return TupleCase::V;
        case CaseId::VI_i:
        case CaseId::VI_ii:
        case CaseId::VI_iii:
        case CaseId::VI_iv: return TupleCase::VI;
        case CaseId::Unknown: return TupleCase::Unknown;
    }
    return TupleCase::Unknown;
}

std::string ColumnClass::to_string() const {
    switch (kind) {
        case Kind::Omega: return "omega";
        case Kind::Gamma: return "gamma";
        case Kind::Beta: return "beta";
        case Kind::Special: {
            std::string s = "special:";
            for (int b = 2; b >= 0; --b) s += (pattern >> b & 1) ? '1' : '0';
            return s;
        }
    }
    return "?";
}

namespace {

struct Template {
    CaseId id;
    std::vector<int> special;
    std::vector<int> bulk;
};

const std::vector<Template>& templates() {
    static const std::vector<Template> t = {
        {CaseId::III, {0b111}, {0b110}},
        {CaseId::IV_i, {}, {0b111, 0b100}},
        {CaseId::IV_ii, {0b110, 0b101}, {0b111, 0b100}},
        {CaseId::V_i, {}, {0b111, 0b110, 0b000}},
        {CaseId::V_ii, {0b100, 0b010}, {0b111, 0b110, 0b000}},
        {CaseId::VI_i, {}, {0b111, 0b000}},
        {CaseId::VI_ii, {0b110, 0b001}, {0b111, 0b000}},
        {CaseId::VI_iii, {0b100, 0b010, 0b001}, {0b111, 0b000}},
        {CaseId::VI_iv, {0b110, 0b101, 0b011}, {0b111, 0b000}},
    };
    return t;
}

using RowPerm = std::array<int, 3>;

// Row permutations that only exchange rows of equal sum.
std::vector<RowPerm> tie_perms(const std::array<int, 3>& sums) {
    std::vector<RowPerm> out;
    RowPerm p{0, 1, 2};
    do {
        if (sums[0] == sums[static_cast<std::size_t>(p[0])] && sums[1] == sums[static_cast<std::size_t>(p[1])] &&
            sums[2] == sums[static_cast<std::size_t>(p[2])])
            out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// New row r takes old row perm[r].
int permute_pattern(int pattern, const RowPerm& perm) {
    int out = 0;
    for (int r = 0; r < 3; ++r) out |= (pattern >> (2 - perm[static_cast<std::size_t>(r)]) & 1) << (2 - r);
    return out;
}

ColumnCounts permute_counts(const ColumnCounts& c, const RowPerm& perm) {
    ColumnCounts out{};
    for (int t = 0; t < 8; ++t) out[static_cast<std::size_t>(permute_pattern(t, perm))] += c[static_cast<std::size_t>(t)];
    return out;
}

bool fits(const ColumnCounts& c, const Template& t) {
    for (int type = 0; type < 8; ++type) {
        const bool special = std::count(t.special.begin(), t.special.end(), type) > 0;
        const bool bulk = std::count(t.bulk.begin(), t.bulk.end(), type) > 0;
        const int k = c[static_cast<std::size_t>(type)];
        if (special && k != 1) return false;
        if (!special && !bulk && k != 0) return false;
    }
    return true;
}

// Template and row permutation matching the counts, if any.
std::optional<std::pair<const Template*, RowPerm>> match(const ColumnCounts& counts, const std::array<int, 3>& sums, TupleCase tc) {
    for (const auto& t : templates()) {
        if (tuple_case_of(t.id) != tc) continue;
        for (const auto& perm : tie_perms(sums))
            if (fits(permute_counts(counts, perm), t)) return std::pair{&t, perm};
    }
    return std::nullopt;
}

ColumnCounts counts_of(const NbArray& arr) {
    ColumnCounts c{};
    for (int col = 0; col < arr.n_columns(); ++col) ++c[static_cast<std::size_t>(arr.column_type(col))];
    return c;
}

}  // namespace

CaseProfile case_profile(const NbArray& arr, int n) {
    CaseProfile prof;
    prof.tuple = difference_tuple(arr, n);
    switch (prof.tuple.label) {
        case TupleCase::I: prof.id = CaseId::I; return prof;
        case TupleCase::II: prof.id = CaseId::II; return prof;
        case TupleCase::Violation:
        case TupleCase::Unknown: return prof;
        default: break;
    }
    const auto m = match(counts_of(arr), arr.pair_sums, prof.tuple.label);
    if (!m) return prof;
    const auto& [tmpl, perm] = *m;
    prof.id = tmpl->id;
    for (int col = 0; col < arr.n_columns(); ++col) {
        const int pattern = permute_pattern(arr.column_type(col), perm);
        ColumnClass cls;
        cls.pattern = pattern;
        if (std::count(tmpl->special.begin(), tmpl->special.end(), pattern)) cls.kind = ColumnClass::Kind::Special;
        else if (pattern == 0b111) cls.kind = ColumnClass::Kind::Omega;
        else if (pattern == 0b110) cls.kind = ColumnClass::Kind::Gamma;
        else cls.kind = ColumnClass::Kind::Beta;
        prof.grouping[arr.columns[static_cast<std::size_t>(col)]] = cls;
    }
    return prof;
}

CaseProfile case_profile(const TwoPartition& p, const Triple& t) { return case_profile(nb_array(p, t), p.n()); }

namespace {

NbArray synthetic_array(const ColumnCounts& counts) {
    NbArray arr;
    arr.base_indicator = 1;
    int col = 1;
    for (int type = 0; type < 8; ++type)
        for (int k = 0; k < counts[static_cast<std::size_t>(type)]; ++k) {
            arr.columns.push_back(col++);
            for (int r = 0; r < 3; ++r) arr.bits[static_cast<std::size_t>(r)].push_back(static_cast<std::uint8_t>(type >> (2 - r) & 1));
        }
    for (int r = 0; r < 3; ++r) arr.pair_sums[static_cast<std::size_t>(r)] = 1 + arr.row_sum(r);
    return arr;
}

void compositions(int total, int slot, ColumnCounts& cur, const std::function<void(const ColumnCounts&)>& fn) {
    if (slot == 7) {
        cur[7] = total;
        fn(cur);
        return;
    }
    for (int k = 0; k <= total; ++k) {
        cur[static_cast<std::size_t>(slot)] = k;
        compositions(total - k, slot + 1, cur, fn);
    }
}

}  // namespace

std::vector<AdmissibleArray> enumerate_admissible_arrays(int n, TupleCase c) {
    if (n % 2 != 0) throw DomainError("admissible arrays are enumerated for even n only");
    if (n < 10 || n > 16) throw DomainError("admissible arrays are enumerated for 10 <= n <= 16");
    if (c == TupleCase::Violation || c == TupleCase::Unknown) throw DomainError("enumeration needs one of the tuple cases I..VI");
    std::set<ColumnCounts> seen;
    std::vector<AdmissibleArray> out;
    ColumnCounts cur{};
    compositions(n - 3, 0, cur, [&](const ColumnCounts& counts) {
        int ones = 0;
        std::array<int, 3> rows{1, 1, 1};
        for (int type = 0; type < 8; ++type)
            for (int r = 0; r < 3; ++r)
                if (type >> (2 - r) & 1) {
                    rows[static_cast<std::size_t>(r)] += counts[static_cast<std::size_t>(type)];
                    ones += counts[static_cast<std::size_t>(type)];
                }
        if (rows[0] < rows[1] || rows[1] < rows[2]) return;
        if (ones < 2 * n - 7) return;
        const auto arr = synthetic_array(counts);
        if (difference_tuple(arr, n).label != c) return;
        ColumnCounts canon = counts;
        for (const auto& perm : tie_perms(rows)) canon = std::min(canon, permute_counts(counts, perm));
        if (seen.count(canon)) return;
        if (!column_pair_violations(arr).empty()) return;
        seen.insert(canon);
        AdmissibleArray a;
        a.counts = canon;
        const auto m = match(canon, rows, c);
        a.shape = c == TupleCase::I ? CaseId::I : c == TupleCase::II ? CaseId::II : m ? m->first->id : CaseId::Unknown;
        out.push_back(a);
    });
    std::sort(out.begin(), out.end(), [](const AdmissibleArray& a, const AdmissibleArray& b) {
        return std::pair{static_cast<int>(a.shape), a.counts} < std::pair{static_cast<int>(b.shape), b.counts};
    });
    return out;
}

std::optional<int> max_n_bound(CaseId c) {
    switch (c) {
        case CaseId::I: return 6;
        case CaseId::II: return 8;
        case CaseId::III: return 8;
        case CaseId::IV_i: return 6;
        case CaseId::IV_ii: return 8;
        case CaseId::V_i: return std::nullopt;
        case CaseId::V_ii: return std::nullopt;
        case CaseId::VI_i: return 14;
        case CaseId::VI_ii: return 14;
        case CaseId::VI_iii: return std::nullopt;
        case CaseId::VI_iv: return 8;
        case CaseId::Unknown: break;
    }
    throw DomainError("no bound is recorded for an unknown case");
}

}  // namespace jeq
