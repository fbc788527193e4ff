#include "jeq/classify.hpp"

#include <algorithm>
#include <numeric>

#include "jeq/error.hpp"

namespace jeq {

namespace {

Matrix2 swapped(const Matrix2& b) { return {{{b[1][1], b[1][0]}, {b[0][1], b[0][0]}}}; }

std::optional<Matrix2> integral_matrix(const QuotientMatrix& q) {
    if (q.q != 2 || !q.equitable || !q.is_integral()) return std::nullopt;
    return q.as_matrix2();
}

// Connected components of the element co-occurrence graph of a set of triples.
std::vector<std::vector<int>> components(int n, const std::vector<Triple>& triples) {
    std::vector<int> parent(static_cast<std::size_t>(n + 1));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    std::vector<bool> used(static_cast<std::size_t>(n + 1), false);
    for (const auto& t : triples) {
        for (int x : t) used[static_cast<std::size_t>(x)] = true;
        parent[static_cast<std::size_t>(find(t[1]))] = find(t[0]);
        parent[static_cast<std::size_t>(find(t[2]))] = find(t[0]);
    }
    std::vector<std::vector<int>> out;
    std::vector<int> slot(static_cast<std::size_t>(n + 1), -1);
    for (int x = 1; x <= n; ++x) {
        if (!used[static_cast<std::size_t>(x)]) return {};
        int root = find(x);
        if (slot[static_cast<std::size_t>(root)] < 0) {
            slot[static_cast<std::size_t>(root)] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[static_cast<std::size_t>(slot[static_cast<std::size_t>(root)])].push_back(x);
    }
    return out;
}

std::optional<std::pair<std::vector<int>, std::vector<int>>> bipartition_from(int n, const std::vector<Triple>& inside) {
    auto comps = components(n, inside);
    if (comps.size() != 2 || comps[0].size() != comps[1].size()) return std::nullopt;
    return std::pair{comps[0], comps[1]};
}

// Pairs whose whole star lies in the chosen side; must form a perfect matching.
std::optional<std::vector<std::pair<int, int>>> matching_from(const TwoPartition& p, bool side_is_cell1) {
    const int n = p.n();
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> deg(static_cast<std::size_t>(n + 1), 0);
    for (int x = 1; x <= n; ++x)
        for (int y = x + 1; y <= n; ++y) {
            const int s = row_indicator_sum(p, x, y);
            if (s == (side_is_cell1 ? n - 2 : 0)) {
                pairs.emplace_back(x, y);
                ++deg[static_cast<std::size_t>(x)];
                ++deg[static_cast<std::size_t>(y)];
            }
        }
    if (static_cast<int>(pairs.size()) * 2 != n) return std::nullopt;
    for (int x = 1; x <= n; ++x)
        if (deg[static_cast<std::size_t>(x)] != 1) return std::nullopt;
    return pairs;
}

std::optional<DependenceSignature> recover(const TwoPartition& p, Family f, bool merged_is_cell1) {
    const auto& g = p.graph();
    const int n = p.n();
    auto in_merged = [&](int r) { return p.in_cell1(r) == merged_is_cell1; };
    DependenceSignature sig;
    sig.family = f;
    switch (f) {
        case Family::Pi1: {
            std::vector<Triple> x1;
            for (int r = 0; r < g.order(); ++r)
                if (!in_merged(r)) x1.push_back(g.vertex(r));
            auto bp = bipartition_from(n, x1);
            if (!bp) return std::nullopt;
            sig.bipartition = bp;
            break;
        }
        case Family::Pi2: {
            auto m = matching_from(p, !merged_is_cell1);
            if (!m) return std::nullopt;
            sig.matching = *m;
            break;
        }
        case Family::Pi3: {
            auto m = matching_from(p, !merged_is_cell1);
            if (!m) return std::nullopt;
            std::vector<int> mate(static_cast<std::size_t>(n + 1), 0);
            for (auto [x, y] : *m) {
                mate[static_cast<std::size_t>(x)] = y;
                mate[static_cast<std::size_t>(y)] = x;
            }
            std::vector<Triple> x1;
            for (int r = 0; r < g.order(); ++r) {
                if (in_merged(r)) continue;
                const auto& t = g.vertex(r);
                const bool has_pair = mate[static_cast<std::size_t>(t[0])] == t[1] || mate[static_cast<std::size_t>(t[0])] == t[2] ||
                                      mate[static_cast<std::size_t>(t[1])] == t[2];
                if (!has_pair) x1.push_back(t);
            }
            auto bp = bipartition_from(n, x1);
            if (!bp) return std::nullopt;
            sig.bipartition = bp;
            sig.matching = *m;
            break;
        }
    }
    // Canonical form of the recovered data.
    return sig.permuted(identity_permutation(n));
}

}  // namespace

std::vector<Family> quotient_family(const QuotientMatrix& q, int n) {
    std::vector<Family> out;
    const auto b = integral_matrix(q);
    if (!b || n % 2 != 0 || n < 6) return out;
    if ((*b)[0][0] == (*b)[1][1]) return out;
    for (Family f : {Family::Pi1, Family::Pi2, Family::Pi3})
        if (canonical_family_matrix(f, n / 2) == *b) out.push_back(f);
    return out;
}

RecognitionResult recognize(const TwoPartition& p) {
    const auto& q = p.quotient();
    if (!q.equitable) throw DomainError("recognition needs an equitable partition");
    const int n = p.n();
    if (theta_of(q) != n - 7) throw DomainError("recognition needs θ = n - 7, got θ = " + to_string(theta_of(q)));
    RecognitionResult res;
    const auto b = integral_matrix(q);
    if (n % 2 != 0 || !b) return res;
    const int m = n / 2;
    for (Family f : {Family::Pi1, Family::Pi2, Family::Pi3}) {
        const Matrix2 raw = family_matrix(f, m);
        for (bool merged_is_cell1 : {true, false}) {
            if ((merged_is_cell1 ? raw : swapped(raw)) != *b) continue;
            auto sig = recover(p, f, merged_is_cell1);
            if (!sig) continue;
            try {
                if (pi(f, realize(*sig)) == p) {
                    res.family = f;
                    res.structure = std::move(sig);
                    res.certified = true;
                    return res;
                }
            } catch (const DomainError&) {
            }
        }
    }
    return res;
}

}  // namespace jeq
