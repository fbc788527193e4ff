#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "jeq/construct.hpp"
#include "jeq/error.hpp"
#include "jeq/partition.hpp"
#include "support/oracles.hpp"

using namespace jeq;

namespace {

Permutation random_permutation(int n, std::mt19937_64& rng) {
    Permutation s(static_cast<std::size_t>(n + 1));
    std::iota(s.begin(), s.end(), 0);
    std::shuffle(s.begin() + 1, s.end(), rng);
    return s;
}

}  // namespace

TEST_SUITE("partition") {

TEST_CASE("permutation helpers") {
    const Permutation s{0, 3, 1, 2};
    CHECK(inverse(s) == Permutation{0, 2, 3, 1});
    CHECK(jeq::apply(s, Triple{1, 2}) == Triple{1, 3});
    CHECK(identity_permutation(3) == Permutation{0, 1, 2, 3});
}

TEST_CASE("quotient of a cell-size-one partition") {
    auto g = JohnsonGraph::get(6, 3);
    std::vector<bool> in1(20, false);
    in1[0] = true;
    TwoPartition p(g, in1);
    const auto check = is_equitable(p);
    CHECK_FALSE(check.equitable);
    REQUIRE(check.witness);
    CHECK(p.flipped());
    CHECK(p.cell(0) == 2);
    CHECK(check.witness->cell == 1);
    CHECK(check.witness->vertex == g->vertex(1));
    CHECK(check.quotient(1, 0) == 9);
    CHECK(check.quotient(1, 1) == 0);
    CHECK(check.quotient(0, 1) == Rational(9, 19));
}

TEST_CASE("canonical orientation puts the larger b11 first") {
    const auto pb = PairedBipartition::standard(3);
    auto p = pi2(pb);
    const auto m = p.quotient().as_matrix2();
    CHECK(m == Matrix2{{{5, 4}, {6, 3}}});
    CHECK(p.flipped());
    CHECK(p.quotient().equitable);
}

TEST_CASE("orientation tie: smaller cell first, then vertex 123 in cell 1") {
    const auto pb = PairedBipartition::standard(5);
    const auto p = pi3(pb);
    CHECK(p.quotient().as_matrix2() == Matrix2{{{12, 9}, {9, 12}}});
    CHECK(p.cell_size(1) == p.cell_size(2));
    CHECK(p.in_cell1(0));
    std::vector<bool> swapped = p.membership();
    swapped.flip();
    const TwoPartition q(p.graph_ptr(), swapped);
    CHECK(q == p);
    CHECK(q.flipped());
}

TEST_CASE("is_equitable agrees with the pairwise oracle") {
    std::mt19937_64 rng(11);
    for (int m : {3, 4, 5}) {
        for (Family f : {Family::Pi1, Family::Pi2, Family::Pi3}) {
            const auto p = pi(f, random_paired_bipartition(m, rng));
            Matrix2 brute{};
            CHECK(oracle::equitable_by_pairs(p, brute));
            CHECK(is_equitable(p).equitable);
            CHECK(p.quotient().as_matrix2() == brute);
            for (int trial = 0; trial < 5; ++trial) {
                const int r = static_cast<int>(rng() % static_cast<std::uint64_t>(p.graph().order()));
                const auto moved = p.with_vertex_moved(r);
                Matrix2 ignored{};
                CHECK(oracle::equitable_by_pairs(moved, ignored) == is_equitable(moved).equitable);
                CHECK_FALSE(is_equitable(moved).equitable);
            }
        }
    }
}

TEST_CASE("witness is the lowest-rank offending vertex") {
    const auto p = pi1(PairedBipartition::standard(4));
    const auto moved = p.with_vertex_moved(37);
    const auto check = is_equitable(moved);
    REQUIRE(check.witness);
    const auto& g = moved.graph();
    const int witness_rank = g.index(check.witness->vertex);
    const auto& q = check.quotient;
    for (int r = 0; r < witness_rank; ++r) {
        int c1 = 0;
        for (int u : g.neighbor_ranks(r)) c1 += moved.in_cell1(u);
        CHECK(Rational(c1) == q(moved.cell(r) - 1, 0));
    }
    CHECK(check.witness->observed != std::vector<int>{});
    CHECK(Rational(check.witness->observed[0]) != check.witness->required[0]);
}

TEST_CASE("from_string and to_string round-trip") {
    const auto p = pi3(PairedBipartition::standard(4));
    const auto s = p.to_string();
    CHECK(s.size() == 56);
    CHECK(TwoPartition::from_string(8, s) == p);
    CHECK_THROWS_AS(TwoPartition::from_string(8, s.substr(1)), DomainError);
    CHECK_THROWS_AS(TwoPartition::from_string(8, std::string(56, '3')), DomainError);
    CHECK_THROWS_AS(TwoPartition::from_string(8, std::string(56, '1')), DomainError);
}

TEST_CASE("relabelling preserves the quotient matrix") {
    std::mt19937_64 rng(3);
    for (Family f : {Family::Pi1, Family::Pi2, Family::Pi3}) {
        const auto p = pi(f, PairedBipartition::standard(6));
        for (int i = 0; i < 5; ++i) {
            const auto sigma = random_permutation(12, rng);
            const auto q = p.permuted(sigma);
            CHECK(q.quotient() == p.quotient());
            CHECK(q.permuted(inverse(sigma)) == p);
        }
    }
}

TEST_CASE("theta_of") {
    const auto p = pi1(PairedBipartition::standard(4));
    CHECK(theta_of(p.quotient()) == 1);
    const auto bad = p.with_vertex_moved(0);
    CHECK_THROWS_AS(theta_of(bad.quotient()), DomainError);
    CHECK_THROWS_AS(local_params(bad), DomainError);
}

TEST_CASE("row_indicator_sum counts the clique") {
    const auto p = pi2(PairedBipartition::standard(4));
    const GraphContext ctx{8, 3};
    for (int x = 1; x <= 8; ++x)
        for (int y = x + 1; y <= 8; ++y) {
            int s = 0;
            for (const auto& t : clique_star(x, y, ctx)) s += p.indicator(t);
            CHECK(row_indicator_sum(p, x, y) == s);
        }
}

TEST_CASE("local identities on constructions") {
    for (int m : {4, 5}) {
        for (Family f : {Family::Pi1, Family::Pi2, Family::Pi3}) {
            const auto p = pi(f, PairedBipartition::standard(m));
            for (int r = 0; r < p.graph().order(); ++r) CHECK(local_identity_check(p, p.graph().vertex(r)));
            CHECK(pair_difference_identity(p, 1, 2, 3, 4));
            CHECK(five_term_identity(p, 1, 2, 3, 4, 5));
            CHECK(five_term_identity(p, 2, 7, 1, 5, 8));
        }
    }
}

TEST_CASE("identities fail on a corrupted partition under the original parameters") {
    const auto p = pi1(PairedBipartition::standard(4));
    const auto params = local_params(p);
    const auto bad = p.with_vertex_moved(0);
    CHECK_THROWS_AS(local_identity_check(bad, Triple{1, 2, 3}), DomainError);
    bool any = false;
    for (int r = 0; r < bad.graph().order(); ++r) any |= !local_identity_check(bad, bad.graph().vertex(r), params);
    CHECK(any);
    bool pair_fails = false;
    for (int a = 1; a <= 8; ++a)
        for (int b = 1; b <= 8; ++b)
            for (int c = 1; c <= 8; ++c)
                for (int d = 1; d <= 8; ++d)
                    if (a != b && a != c && a != d && b != c && b != d && c != d)
                        pair_fails |= !pair_difference_identity(bad, a, b, c, d, params.theta);
    CHECK(pair_fails);
    CHECK_THROWS_AS(pair_difference_identity(p, 1, 1, 3, 4), DomainError);
}

TEST_CASE("three-partition of the construction") {
    for (int m = 3; m <= 6; ++m) {
        const auto t = three_partition(PairedBipartition::standard(m));
        const auto check = is_equitable(t);
        CHECK(check.equitable);
        const auto want = three_partition_matrix(m);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(check.quotient(i, j) == want[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
}

}
