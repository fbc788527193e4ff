#include "doctest.h"

#include <random>

#include "jeq/construct.hpp"
#include "jeq/eigenfn.hpp"
#include "jeq/error.hpp"
#include "support/oracles.hpp"

using namespace jeq;

namespace {

std::vector<int> values_as_ints(const VertexFunction& f) {
    std::vector<int> v;
    for (const auto& x : f.values()) v.push_back(static_cast<int>(x));
    return v;
}

VertexFunction scaled(const VertexFunction& f, const Rational& s) {
    std::vector<Rational> v;
    for (const auto& x : f.values()) v.push_back(x * s);
    return {f.ground(), f.w(), std::move(v)};
}

}  // namespace

TEST_SUITE("eigenfn") {

TEST_CASE("eigenfunction basics") {
    const auto p = pi2(PairedBipartition::standard(4));
    CHECK(is_eigenfunction(partition_function(p), 1) == EigenOutcome::Eigenfunction);
    CHECK(is_eigenfunction(partition_function(p), 2) == EigenOutcome::NotEigenfunction);
    CHECK(is_eigenfunction(VertexFunction::constant(8, 3, 0), 1) == EigenOutcome::Zero);
    CHECK(is_eigenfunction(VertexFunction::constant(8, 3, 5), 15) == EigenOutcome::Eigenfunction);
    CHECK(is_eigenfunction(characteristic_function(p), 1) == EigenOutcome::NotEigenfunction);
}

TEST_CASE("partition function values") {
    const auto p = pi1(PairedBipartition::standard(4));
    const auto f = partition_function(p);
    CHECK(f(Triple{1, 2, 5}) == Rational(-2, 14));
    CHECK(f(Triple{1, 2, 3}) == Rational(12, 14));
    Rational total = 0;
    for (const auto& v : f.values()) total += v;
    CHECK(total == 0);
    CHECK_THROWS_AS(partition_function(p.with_vertex_moved(0)), DomainError);
}

TEST_CASE("vertex function validation") {
    CHECK_THROWS_AS(VertexFunction({3, 1, 2, 4}, 2, std::vector<Rational>(6)), DomainError);
    CHECK_THROWS_AS(VertexFunction::on(5, 2, std::vector<Rational>(9)), DomainError);
    const auto f = VertexFunction::constant(6, 2, 1);
    CHECK_THROWS_AS(f(Triple{1, 7}), InvalidVertex);
    CHECK_THROWS_AS(f(Triple{1, 2, 3}), InvalidVertex);
}

TEST_CASE("partial difference over a relabelled ground set") {
    const auto f = VertexFunction::from({1, 2, 3, 4, 5, 6, 7}, 3, [](const Triple& t) { return Rational(t[0] * 100 + t[1] * 10 + t[2]); });
    const auto d = partial_difference(f, 2, 5);
    CHECK(d.ground() == std::vector<int>{1, 3, 4, 6, 7});
    CHECK(d.w() == 2);
    CHECK(d(Triple{3, 6}) == Rational(236 - 356));
    CHECK(d.labels(0) == Triple{1, 3});
    const auto dd = partial_difference(d, 1, 7);
    CHECK(dd.ground() == std::vector<int>{3, 4, 6});
    CHECK(dd(Triple{4}) == d(Triple{1, 4}) - d(Triple{4, 7}));
    CHECK_THROWS_AS(partial_difference(f, 2, 2), DomainError);
    CHECK_THROWS_AS(partial_difference(f, 2, 8), InvalidVertex);
    CHECK(partial_difference(VertexFunction::constant(8, 3, 3), 1, 2).is_zero());
}

TEST_CASE("matched pair gives a zero difference under Π2") {
    const auto p = pi2(PairedBipartition::standard(4));
    const auto f = partition_function(p);
    for (int i = 1; i <= 4; ++i) CHECK(partial_difference(f, i, i + 4).is_zero());
}

TEST_CASE("Π1 difference across the sides is type 2") {
    const auto p = pi1(PairedBipartition::standard(6));
    const auto d = partial_difference(partition_function(p), 1, 7);
    CHECK(is_eigenfunction(d, 6) == EigenOutcome::Eigenfunction);
    const auto t = classify_lambda1(d);
    CHECK(t.kind == Lambda1Type::Kind::Type2);
    CHECK(t.m1 == std::vector<int>{2, 3, 4, 5, 6});
    CHECK(t.m2 == std::vector<int>{8, 9, 10, 11, 12});
}

TEST_CASE("differences of constructions are zero or eigenfunctions one level down") {
    for (int m : {4, 5, 6, 7})
        for (Family f : {Family::Pi1, Family::Pi2, Family::Pi3}) {
            const auto p = pi(f, PairedBipartition::standard(m));
            const auto fn = partition_function(p);
            const int n = 2 * m;
            const int theta = eigenvalue(GraphContext{n - 2, 2}, 1);
            CHECK(theta == n - 6);
            for (int a = 1; a <= n; ++a)
                for (int b = a + 1; b <= n; ++b) CHECK(is_eigenfunction(partial_difference(fn, a, b), theta) != EigenOutcome::NotEigenfunction);
        }
}

TEST_CASE("inducing keeps the eigenspace") {
    std::mt19937_64 rng(1);
    for (int n = 6; n <= 10; ++n) {
        std::vector<Rational> gamma(static_cast<std::size_t>(n));
        Rational sum = 0;
        for (int i = 0; i + 1 < n; ++i) {
            gamma[static_cast<std::size_t>(i)] = static_cast<int>(rng() % 11) - 5;
            sum += gamma[static_cast<std::size_t>(i)];
        }
        gamma.back() = -sum;
        const auto g = VertexFunction::on(n, 1, gamma);
        CHECK(is_eigenfunction(induce(g, 2), eigenvalue(GraphContext{n, 2}, 1)) != EigenOutcome::NotEigenfunction);
        CHECK(is_eigenfunction(induce(g, 3), eigenvalue(GraphContext{n, 3}, 1)) != EigenOutcome::NotEigenfunction);
    }
    CHECK_THROWS_AS(induce(VertexFunction::constant(6, 3, 1), 2), DomainError);
}

TEST_CASE("classify templates") {
    const auto t1 = classify_lambda1(type1_function(6, 1, 2));
    CHECK(t1.kind == Lambda1Type::Kind::Type1);
    CHECK(t1.a == 1);
    CHECK(t1.b == 2);
    const auto t2 = classify_lambda1(type2_function(6, {1, 2, 3}));
    CHECK(t2.kind == Lambda1Type::Kind::Type2);
    CHECK(t2.m1 == std::vector<int>{1, 2, 3});
    CHECK(t2.m2 == std::vector<int>{4, 5, 6});
    CHECK(classify_lambda1(VertexFunction::constant(6, 2, 0)).kind == Lambda1Type::Kind::Zero);
    CHECK(t2.to_string() == "type2({1,2,3},{4,5,6})");
}

TEST_CASE("classification is invariant under scaling") {
    std::mt19937_64 rng(2);
    std::vector<VertexFunction> fs{type1_function(7, 3, 6), type1_function(8, 5, 2), type2_function(8, {1, 4, 6, 7}),
                                   type2_function(6, {2, 5, 6})};
    for (const auto& f : fs) {
        const auto base = classify_lambda1(f);
        for (int i = 0; i < 10; ++i) {
            Rational s(static_cast<int>(rng() % 19) - 9, static_cast<int>(rng() % 7) + 1);
            if (s == 0) s = -3;
            CHECK(classify_lambda1(scaled(f, s)) == base);
        }
    }
}

TEST_CASE("classification errors") {
    CHECK_THROWS_AS(classify_lambda1(VertexFunction::constant(6, 2, 1)), DomainError);
    std::vector<Rational> sum;
    const auto a = type1_function(6, 1, 2), b = type1_function(6, 3, 4);
    for (std::size_t i = 0; i < a.values().size(); ++i) sum.push_back(a.values()[i] + b.values()[i]);
    const VertexFunction mixed = VertexFunction::on(6, 2, sum);
    CHECK(is_eigenfunction(mixed, 2) == EigenOutcome::Eigenfunction);
    CHECK_THROWS_AS(classify_lambda1(mixed), ClassificationFailure);
    CHECK_THROWS_AS(classify_lambda1(VertexFunction::constant(4, 2, 0)), DomainError);
}

TEST_CASE("sign-function oracle at n=5 finds only type 1") {
    const auto found = oracle::lambda1_sign_functions(5);
    const std::set<std::vector<int>> got(found.begin(), found.end());
    CHECK(got == oracle::type1_family(5));
    for (const auto& v : oracle::type1_family(5)) {
        std::vector<Rational> r(v.begin(), v.end());
        CHECK(classify_lambda1(VertexFunction::on(5, 2, r)).kind == Lambda1Type::Kind::Type1);
    }
    CHECK(values_as_ints(type1_function(5, 1, 2)).size() == 10);
}

TEST_CASE("supports identity on Π2 at n=8") {
    const auto rep = supports_identity(pi2(PairedBipartition::standard(4)));
    CHECK(rep.t1 == 24);
    CHECK(rep.t2 == 0);
    CHECK(rep.t0 == 4);
    CHECK(rep.lhs == 2304);
    CHECK(rep.holds);
    CHECK_THROWS_AS(supports_identity(pi2(PairedBipartition::standard(4)).with_vertex_moved(3)), DomainError);
}

TEST_CASE("zero differences are transitive") {
    for (Family f : {Family::Pi1, Family::Pi2, Family::Pi3}) {
        const auto fn = partition_function(pi(f, PairedBipartition::standard(5)));
        for (int a = 1; a <= 10; ++a)
            for (int b = 1; b <= 10; ++b)
                for (int c = 1; c <= 10; ++c)
                    if (a != b && a != c && b != c) CHECK(zero_diff_transitivity_check(fn, a, b, c));
    }
}

}
