#include "jeq/construct.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "jeq/error.hpp"

namespace jeq {

PairedBipartition::PairedBipartition(std::vector<int> u, std::vector<int> w) : u_(std::move(u)), w_(std::move(w)) {
    const int m = static_cast<int>(u_.size());
    if (m < 3) throw DomainError("a paired bipartition needs m >= 3, got m=" + std::to_string(m));
    if (w_.size() != u_.size()) throw DomainError("U and W must have the same size");
    const int n = 2 * m;
    side_.assign(static_cast<std::size_t>(n + 1), -1);
    mate_.assign(static_cast<std::size_t>(n + 1), 0);
    for (int i = 0; i < m; ++i) {
        for (auto [x, s] : {std::pair{u_[static_cast<std::size_t>(i)], 0}, std::pair{w_[static_cast<std::size_t>(i)], 1}}) {
            if (x < 1 || x > n) throw DomainError("element " + std::to_string(x) + " outside [1.." + std::to_string(n) + "]");
            if (side_[static_cast<std::size_t>(x)] != -1) throw DomainError("element " + std::to_string(x) + " used twice");
            side_[static_cast<std::size_t>(x)] = s;
        }
        mate_[static_cast<std::size_t>(u_[static_cast<std::size_t>(i)])] = w_[static_cast<std::size_t>(i)];
        mate_[static_cast<std::size_t>(w_[static_cast<std::size_t>(i)])] = u_[static_cast<std::size_t>(i)];
    }
}

PairedBipartition PairedBipartition::standard(int m) {
    std::vector<int> u(static_cast<std::size_t>(std::max(m, 0))), w(u.size());
    std::iota(u.begin(), u.end(), 1);
    std::iota(w.begin(), w.end(), m + 1);
    return {u, w};
}

PairedBipartition PairedBipartition::parse(std::string_view pairs) {
    std::vector<int> u, w;
    std::size_t pos = 0;
    auto number = [&](char stop) {
        std::size_t end = pairs.find(stop, pos);
        if (end == std::string_view::npos) end = pairs.size();
        std::string_view token = pairs.substr(pos, end - pos);
        int value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
            throw DomainError("malformed pair list '" + std::string(pairs) + "' at offset " + std::to_string(pos));
        pos = end + 1;
        return value;
    };
    while (pos < pairs.size()) {
        std::size_t colon = pairs.find(':', pos);
        std::size_t comma = pairs.find(',', pos);
        if (colon == std::string_view::npos || colon > comma)
            throw DomainError("malformed pair list '" + std::string(pairs) + "' at offset " + std::to_string(pos));
        u.push_back(number(':'));
        w.push_back(number(','));
    }
    return {u, w};
}

PairedBipartition PairedBipartition::permuted(const Permutation& sigma) const {
    if (static_cast<int>(sigma.size()) != n() + 1) throw DomainError("permutation size does not match n");
    std::vector<int> u, w;
    for (int x : u_) u.push_back(sigma[static_cast<std::size_t>(x)]);
    for (int x : w_) w.push_back(sigma[static_cast<std::size_t>(x)]);
    return {u, w};
}

std::string PairedBipartition::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < u_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(u_[i]) + ':' + std::to_string(w_[i]);
    }
    return s;
}

PairedBipartition random_paired_bipartition(int m, std::mt19937_64& rng) {
    std::vector<int> e(static_cast<std::size_t>(2 * m));
    std::iota(e.begin(), e.end(), 1);
    std::shuffle(e.begin(), e.end(), rng);
    return {std::vector<int>(e.begin(), e.begin() + m), std::vector<int>(e.begin() + m, e.end())};
}

std::vector<PairedBipartition> all_paired_bipartitions(int m) {
    const int n = 2 * m;
    std::vector<PairedBipartition> out;
    std::vector<bool> pick(static_cast<std::size_t>(n), false);
    std::fill(pick.begin(), pick.begin() + m, true);
    do {
        std::vector<int> u, w;
        for (int x = 1; x <= n; ++x) (pick[static_cast<std::size_t>(x - 1)] ? u : w).push_back(x);
        do {
            out.emplace_back(u, w);
        } while (std::next_permutation(w.begin(), w.end()));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

std::string to_string(Family f) {
    switch (f) {
        case Family::Pi1: return "Pi1";
        case Family::Pi2: return "Pi2";
        case Family::Pi3: return "Pi3";
    }
    return "?";
}

std::optional<Family> parse_family(std::string_view s) {
    if (s == "pi1" || s == "Pi1") return Family::Pi1;
    if (s == "pi2" || s == "Pi2") return Family::Pi2;
    if (s == "pi3" || s == "Pi3") return Family::Pi3;
    return std::nullopt;
}

TripleType classify_triple(const PairedBipartition& pb, const Triple& t) {
    if (t.arity() != 3) throw InvalidVertex("expected a 3-subset, got " + t.to_string());
    if (t.max() > pb.n()) throw InvalidVertex("vertex " + t.to_string() + " outside [1.." + std::to_string(pb.n()) + "]");
    const int in_u = pb.in_u(t[0]) + pb.in_u(t[1]) + pb.in_u(t[2]);
    if (in_u == 0 || in_u == 3) return TripleType::X1;
    if (pb.mate(t[0]) == t[1] || pb.mate(t[0]) == t[2] || pb.mate(t[1]) == t[2]) return TripleType::X2;
    return TripleType::X3;
}

ThreePartition three_partition(const PairedBipartition& pb) {
    auto g = JohnsonGraph::get(pb.n(), 3);
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(g->order()));
    for (int r = 0; r < g->order(); ++r) cells[static_cast<std::size_t>(r)] = static_cast<std::uint8_t>(classify_triple(pb, g->vertex(r)));
    return {g, std::move(cells)};
}

Matrix3 three_partition_matrix(int m) {
    return {{{3 * m - 9, 6, 3 * m - 6}, {m - 2, 2 * m - 1, 3 * m - 6}, {m - 2, 6, 5 * m - 13}}};
}

Matrix2 family_matrix(Family f, int m) {
    switch (f) {
        case Family::Pi1: return {{{5 * m - 7, m - 2}, {3 * m, 3 * m - 9}}};
        case Family::Pi2: return {{{6 * m - 15, 6}, {4 * m - 8, 2 * m - 1}}};
        case Family::Pi3: return {{{5 * m - 13, m + 4}, {3 * m - 6, 3 * m - 3}}};
    }
    throw DomainError("unknown family");
}

Matrix2 canonical_family_matrix(Family f, int m) {
    Matrix2 b = family_matrix(f, m);
    if (b[0][0] < b[1][1]) return {{{b[1][1], b[1][0]}, {b[0][1], b[0][0]}}};
    return b;
}

std::vector<TripleType> merged_cell_types(Family f) {
    switch (f) {
        case Family::Pi1: return {TripleType::X2, TripleType::X3};
        case Family::Pi2: return {TripleType::X1, TripleType::X3};
        case Family::Pi3: return {TripleType::X3};
    }
    return {};
}

TwoPartition pi(Family f, const PairedBipartition& pb) {
    auto g = JohnsonGraph::get(pb.n(), 3);
    const auto merged = merged_cell_types(f);
    std::vector<bool> in1(static_cast<std::size_t>(g->order()));
    for (int r = 0; r < g->order(); ++r)
        in1[static_cast<std::size_t>(r)] =
            std::find(merged.begin(), merged.end(), classify_triple(pb, g->vertex(r))) != merged.end();
    return {g, std::move(in1)};
}

namespace {

std::pair<std::vector<int>, std::vector<int>> normalize_sides(std::vector<int> a, std::vector<int> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (b.front() < a.front()) std::swap(a, b);
    return {a, b};
}

std::vector<std::pair<int, int>> normalize_matching(std::vector<std::pair<int, int>> pairs) {
    for (auto& [x, y] : pairs)
        if (x > y) std::swap(x, y);
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace

DependenceSignature DependenceSignature::permuted(const Permutation& sigma) const {
    DependenceSignature s;
    s.family = family;
    if (bipartition) {
        auto map = [&](const std::vector<int>& v) {
            std::vector<int> out;
            for (int x : v) out.push_back(sigma.at(static_cast<std::size_t>(x)));
            return out;
        };
        s.bipartition = normalize_sides(map(bipartition->first), map(bipartition->second));
    }
    std::vector<std::pair<int, int>> m;
    for (auto [x, y] : matching) m.emplace_back(sigma.at(static_cast<std::size_t>(x)), sigma.at(static_cast<std::size_t>(y)));
    s.matching = normalize_matching(std::move(m));
    return s;
}

std::string DependenceSignature::to_string() const {
    std::string s = jeq::to_string(family);
    auto list = [](const std::vector<int>& v) {
        std::string out = "{";
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
        return out + "}";
    };
    if (bipartition) s += " U=" + list(bipartition->first) + " W=" + list(bipartition->second);
    if (!matching.empty()) {
        s += " M=";
        for (std::size_t i = 0; i < matching.size(); ++i)
            s += (i ? "," : "") + std::to_string(matching[i].first) + ":" + std::to_string(matching[i].second);
    }
    return s;
}

DependenceSignature dependence_signature(Family f, const PairedBipartition& pb) {
    DependenceSignature s;
    s.family = f;
    if (f != Family::Pi2) s.bipartition = normalize_sides(pb.u(), pb.w());
    if (f != Family::Pi1) {
        std::vector<std::pair<int, int>> m;
        for (int i = 0; i < pb.m(); ++i) m.emplace_back(pb.u()[static_cast<std::size_t>(i)], pb.w()[static_cast<std::size_t>(i)]);
        s.matching = normalize_matching(std::move(m));
    }
    return s;
}

PairedBipartition realize(const DependenceSignature& sig) {
    switch (sig.family) {
        case Family::Pi1:
            if (!sig.bipartition) throw DomainError("Π1 structure needs a bipartition");
            return {sig.bipartition->first, sig.bipartition->second};
        case Family::Pi2: {
            std::vector<int> u, w;
            for (auto [x, y] : sig.matching) {
                u.push_back(x);
                w.push_back(y);
            }
            return {u, w};
        }
        case Family::Pi3: {
            if (!sig.bipartition) throw DomainError("Π3 structure needs a bipartition");
            const auto& side_u = sig.bipartition->first;
            std::vector<int> u, w;
            for (auto [x, y] : sig.matching) {
                const bool x_in_u = std::binary_search(side_u.begin(), side_u.end(), x);
                const bool y_in_u = std::binary_search(side_u.begin(), side_u.end(), y);
                if (x_in_u == y_in_u) throw DomainError("matched pair " + std::to_string(x) + ":" + std::to_string(y) + " does not cross the bipartition");
                u.push_back(x_in_u ? x : y);
                w.push_back(x_in_u ? y : x);
            }
            return {u, w};
        }
    }
    throw DomainError("unknown family");
}

}  // namespace jeq
