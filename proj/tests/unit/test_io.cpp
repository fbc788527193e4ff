#include "doctest.h"

#include <filesystem>

#include <nlohmann/json.hpp>

#include "jeq/construct.hpp"
#include "jeq/error.hpp"
#include "jeq/partition_io.hpp"

using namespace jeq;

TEST_SUITE("io") {

TEST_CASE("text form") {
    const auto p = pi1(PairedBipartition::standard(3));
    const auto text = to_text(p);
    CHECK(text.rfind("n=6 w=3\n", 0) == 0);
    CHECK(text.size() == 8 + 20 + 1);
    CHECK(parse_partition(text) == p);
    CHECK(parse_partition(text + "\n\n") == p);
}

TEST_CASE("json form") {
    const auto p = pi3(PairedBipartition::standard(4));
    const auto j = nlohmann::json::parse(to_json(p));
    CHECK(j["n"] == 8);
    CHECK(j["cells"]["1"].size() + j["cells"]["2"].size() == 56);
    CHECK(j["cells"]["1"].size() == static_cast<std::size_t>(p.cell_size(1)));
    CHECK(parse_partition(to_json(p)) == p);
}

TEST_CASE("several partitions in one file") {
    const auto a = pi1(PairedBipartition::standard(4));
    const auto b = pi2(PairedBipartition::standard(4));
    const auto ps = parse_partitions(to_text({a, b}));
    REQUIRE(ps.size() == 2);
    CHECK(ps[0] == a);
    CHECK(ps[1] == b);
    CHECK_THROWS_AS(parse_partition(to_text({a, b})), ParseError);
    CHECK_THROWS_AS(to_text({a, pi1(PairedBipartition::standard(3))}), DomainError);
}

TEST_CASE("parse errors carry line and column") {
    const auto good = pi1(PairedBipartition::standard(3)).to_string();
    auto bad = good;
    bad[4] = 'x';
    try {
        parse_partition("n=6 w=3\n" + bad + "\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 5);
    }
    try {
        parse_partition("n=6 w=3\n" + good.substr(0, 19) + "\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 20);
    }
    try {
        parse_partition("n=6 w=4\n" + good + "\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 4);
    }
    CHECK_THROWS_AS(parse_partition(""), ParseError);
    CHECK_THROWS_AS(parse_partition("n=5 w=3\n1111111111\n"), ParseError);
    CHECK_THROWS_AS(parse_partition("n=6 w=3\n"), ParseError);
    CHECK_THROWS_AS(parse_partition("{\"n\": 6, \"cells\": "), ParseError);
    CHECK_THROWS_AS(parse_partition("{\"n\": 6, \"cells\": {\"1\": [[1,2,3]], \"3\": []}}"), ParseError);
    CHECK_THROWS_AS(parse_partition("{\"n\": 6, \"cells\": {\"1\": [[1,2,3]], \"2\": [[1,2,3]]}}"), ParseError);
    CHECK_THROWS_AS(parse_partition("{\"n\": 6, \"cells\": {\"1\": [[1,2,3]], \"2\": []}}"), ParseError);
    CHECK_THROWS_AS(parse_partition("{\"n\": 6, \"cells\": {\"1\": [[1,2,7]]}}"), ParseError);
}

TEST_CASE("single-cell input is a domain error") {
    CHECK_THROWS_AS(parse_partition("n=6 w=3\n" + std::string(20, '1') + "\n"), DomainError);
}

TEST_CASE("construct, write, read and verify round-trip") {
    const auto dir = std::filesystem::temp_directory_path() / "jeq_io_test";
    std::filesystem::create_directories(dir);
    for (int m = 3; m <= 8; ++m)
        for (Family f : {Family::Pi1, Family::Pi2, Family::Pi3}) {
            const auto p = pi(f, PairedBipartition::standard(m));
            const auto path = (dir / ("p" + std::to_string(m) + to_string(f) + ".txt")).string();
            write_file(path, to_text(p));
            const auto back = read_partition_file(path);
            CHECK(back.to_string() == p.to_string());
            CHECK(back.quotient() == p.quotient());
            CHECK(back.quotient().equitable);
        }
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(read_partition_file((dir / "missing.txt").string()), Error);
}

}
