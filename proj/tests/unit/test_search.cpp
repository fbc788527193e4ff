#include "doctest.h"

#include <map>
#include <numeric>
#include <random>

#include "jeq/canonical.hpp"
#include "jeq/construct.hpp"
#include "jeq/error.hpp"
#include "jeq/search.hpp"

using namespace jeq;

namespace {

Permutation random_permutation(int n, std::mt19937_64& rng) {
    Permutation s(static_cast<std::size_t>(n + 1));
    std::iota(s.begin(), s.end(), 0);
    std::shuffle(s.begin() + 1, s.end(), rng);
    return s;
}

std::string brute_canonical(const TwoPartition& p) {
    Permutation s = identity_permutation(p.n());
    std::string best;
    do {
        const auto image = p.permuted(s).to_string();
        if (best.empty() || image < best) best = image;
    } while (std::next_permutation(s.begin() + 1, s.end()));
    return best;
}

std::set<std::string> labels(const SearchReport& r) {
    std::set<std::string> out;
    for (const auto& s : r.solutions) out.insert(s.partition.to_string());
    return out;
}

// Every equitable 2-partition of J(6,3) by its quotient matrix, from all 2^20 labellings.
std::map<Matrix2, std::set<std::string>> all_equitable_j6() {
    auto g = JohnsonGraph::get(6, 3);
    std::map<Matrix2, std::set<std::string>> out;
    const int order = g->order();
    for (std::uint32_t mask = 1; mask + 1 < (1u << order); ++mask) {
        if (!(mask & 1u)) continue;
        std::array<int, 20> c1{};
        bool ok = true;
        int want1 = -1, want2 = -1;
        for (int v = 0; v < order && ok; ++v) {
            for (int u : g->neighbor_ranks(v)) c1[static_cast<std::size_t>(v)] += (mask >> u) & 1u;
            int& want = (mask >> v) & 1u ? want1 : want2;
            if (want < 0) want = c1[static_cast<std::size_t>(v)];
            ok = want == c1[static_cast<std::size_t>(v)];
        }
        if (!ok) continue;
        std::vector<bool> in1(static_cast<std::size_t>(order));
        for (int v = 0; v < order; ++v) in1[static_cast<std::size_t>(v)] = (mask >> v) & 1u;
        const TwoPartition p(g, in1);
        out[p.quotient().as_matrix2()].insert(p.to_string());
    }
    return out;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("canonical form is the least image over all relabellings") {
    std::mt19937_64 rng(8);
    for (int n : {6, 7}) {
        auto g = JohnsonGraph::get(n, 3);
        for (int i = 0; i < 6; ++i) {
            std::vector<bool> in1(static_cast<std::size_t>(g->order()));
            for (std::size_t r = 0; r < in1.size(); ++r) in1[r] = (rng() % 3) == 0;
            in1[0] = true;
            in1[1] = false;
            const TwoPartition p(g, in1);
            CHECK(canonical_form(p) == brute_canonical(p));
        }
    }
    for (Family f : {Family::Pi1, Family::Pi2, Family::Pi3}) {
        const auto p = pi(f, PairedBipartition::standard(3));
        CHECK(canonical_form(p) == brute_canonical(p));
    }
}

TEST_CASE("canonical form is invariant and separates orbits") {
    std::mt19937_64 rng(12);
    for (Family f : {Family::Pi1, Family::Pi2, Family::Pi3}) {
        const auto p = pi(f, PairedBipartition::standard(5));
        const auto c = canonical_form(p);
        for (int i = 0; i < 4; ++i) CHECK(canonical_form(p.permuted(random_permutation(10, rng))) == c);
    }
    const auto pb = PairedBipartition::standard(4);
    const std::set<std::string> forms{canonical_form(pi1(pb)), canonical_form(pi2(pb)), canonical_form(pi3(pb))};
    CHECK(forms.size() == 3);
}

TEST_CASE("twin classes of Π2 are the matched pairs") {
    const auto classes = twin_classes(pi2(PairedBipartition::standard(4)));
    CHECK(classes == std::vector<std::vector<int>>{{1, 5}, {2, 6}, {3, 7}, {4, 8}});
    const auto pi1_classes = twin_classes(pi1(PairedBipartition::standard(4)));
    CHECK(pi1_classes == std::vector<std::vector<int>>{{1, 2, 3, 4}, {5, 6, 7, 8}});
}

TEST_CASE("candidate matrices") {
    const auto c = candidate_matrices(8, 1);
    CHECK(c.size() == 8);
    CHECK(c.front() == Matrix2{{{8, 7}, {7, 8}}});
    CHECK(c.back() == Matrix2{{{15, 0}, {14, 1}}});
    for (const auto& q : c) {
        CHECK(q[0][0] + q[0][1] == 15);
        CHECK(q[1][0] + q[1][1] == 15);
        CHECK(q[0][0] - q[1][0] == 1);
    }
    CHECK_THROWS_AS(candidate_matrices(8, 2), DomainError);
    CHECK_THROWS_AS(candidate_matrices(8, 15), DomainError);
}

TEST_CASE("problem validation") {
    SearchProblem p;
    p.n = 8;
    p.q = {{{9, 6}, {8, 8}}};
    CHECK_THROWS_AS(p.validate(), DomainError);
    p.q = {{{10, 5}, {8, 7}}};
    CHECK_THROWS_AS(p.validate(), DomainError);
    p.q = {{{9, 6}, {8, 7}}};
    CHECK_NOTHROW(p.validate());
    p.prune = false;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p.n = 5;
    CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("every route agrees with exhaustive enumeration at n=6") {
    const auto oracle = all_equitable_j6();
    for (int theta : {3, -1, -3}) {
        for (const auto& q : candidate_matrices(6, theta)) {
            SearchProblem prob;
            prob.n = 6;
            prob.q = q;
            const auto want = oracle.count(q) ? oracle.at(q) : std::set<std::string>{};
            CHECK(labels(enumerate(prob)) == want);
            prob.spectral = false;
            CHECK(labels(enumerate(prob)) == want);
            prob.prune = false;
            CHECK(labels(enumerate(prob)) == want);
        }
    }
}

TEST_CASE("spectral propagation keeps every solution at n=7 and n=8") {
    for (auto [n, theta] : {std::pair{7, 5}, {7, 0}, {7, -3}, {8, 1}}) {
        for (const auto& q : candidate_matrices(n, theta)) {
            SearchProblem prob;
            prob.n = n;
            prob.q = q;
            prob.recognize = false;
            const auto with = enumerate(prob);
            prob.spectral = false;
            const auto without = enumerate(prob);
            CHECK(labels(with) == labels(without));
            CHECK(with.nodes <= without.nodes);
        }
    }
}

TEST_CASE("symmetry modes at n=8") {
    SearchProblem prob;
    prob.n = 8;
    prob.q = {{{13, 2}, {12, 3}}};
    CHECK(enumerate(prob).solutions.size() == 35);
    prob.symmetry = SymmetryMode::Dedup;
    const auto dedup = enumerate(prob);
    CHECK(dedup.solutions.size() == 1);
    CHECK(dedup.raw_solutions == 35);
    prob.symmetry = SymmetryMode::Canonical;
    const auto canon = enumerate(prob);
    REQUIRE(canon.solutions.size() == 1);
    CHECK(canon.solutions[0].canonical == dedup.solutions[0].canonical);
    CHECK(canon.solutions[0].recognition->family == Family::Pi1);

    prob.q = {{{9, 6}, {8, 7}}};
    const auto shared = enumerate(prob);
    REQUIRE(shared.solutions.size() == 2);
    std::set<Family> fams;
    for (const auto& s : shared.solutions) {
        CHECK(s.recognition->certified);
        fams.insert(*s.recognition->family);
    }
    CHECK(fams == std::set<Family>{Family::Pi2, Family::Pi3});
}

TEST_CASE("sporadic n=8 solutions are not certified") {
    SearchProblem prob;
    prob.n = 8;
    prob.q = {{{11, 4}, {10, 5}}};
    prob.symmetry = SymmetryMode::Dedup;
    const auto r = enumerate(prob);
    CHECK(r.raw_solutions == 315);
    for (const auto& s : r.solutions) {
        REQUIRE(s.recognition);
        CHECK_FALSE(s.recognition->certified);
        CHECK_FALSE(s.recognition->family);
    }
}

TEST_CASE("thread count does not change the output") {
    SearchProblem prob;
    prob.n = 8;
    prob.q = {{{9, 6}, {8, 7}}};
    prob.recognize = false;
    const auto one = enumerate(prob);
    prob.threads = 3;
    prob.split_depth = 6;
    const auto many = enumerate(prob);
    REQUIRE(one.solutions.size() == many.solutions.size());
    for (std::size_t i = 0; i < one.solutions.size(); ++i) CHECK(one.solutions[i].partition == many.solutions[i].partition);
}

TEST_CASE("budget exhaustion carries a partial report") {
    SearchProblem prob;
    prob.n = 8;
    prob.q = {{{9, 6}, {8, 7}}};
    prob.limits.max_nodes = 50;
    prob.spectral = false;
    try {
        enumerate(prob);
        FAIL("expected the budget to run out");
    } catch (const BudgetExhausted& e) {
        CHECK_FALSE(e.partial().complete);
        CHECK_FALSE(e.partial().frontier.empty());
        CHECK(e.partial().nodes >= 50);
    }
}

TEST_CASE("classification report at n=10") {
    const auto rep = verify_classification(10);
    CHECK(rep.complete);
    CHECK(rep.uncertified() == 0);
    std::size_t p1 = 0, p2 = 0, p3 = 0;
    for (const auto& e : rep.entries) {
        p1 += e.pi1;
        p2 += e.pi2;
        p3 += e.pi3;
        CHECK(e.q[0][0] != e.q[1][1]);
    }
    CHECK(p1 == 1);
    CHECK(p2 == 1);
    CHECK(p3 == 0);
    CHECK_THROWS_AS(verify_classification(9), DomainError);
}

TEST_CASE("worker cap") {
    CHECK(effective_threads(1) == 1);
    CHECK(effective_threads(0) >= 1);
}

}
