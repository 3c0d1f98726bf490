#include <catch2/catch_amalgamated.hpp>

#include "smpath/io.hpp"
#include "smpath/rng.hpp"

#include <cstdlib>
#include <string>

using namespace smpath;

TEST_CASE("g17 formatting round-trips doubles exactly", "[io]") {
    rng_engine eng({3001, 0});
    for (int i = 0; i < 1000; ++i) {
        const double x = (eng.uniform01() - 0.5) * std::pow(10.0, int(eng.uniform01() * 12) - 6);
        REQUIRE(std::stod(io::format_g17(x)) == x);
    }
    REQUIRE(std::stod(io::format_g17(2.0 * std::numbers::pi)) == 2.0 * std::numbers::pi);
}

TEST_CASE("path csv has the declared layout", "[io]") {
    const auto p = sample_path(sm_model::wiener(1.0), {3100, 0}, 8);
    const auto csv = io::path_csv(p);
    REQUIRE(csv.rfind("t,value\n", 0) == 0);
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 10); // header + 9 points
}

TEST_CASE("field csv round-trips through the reader", "[io]") {
    SECTION("one-dimensional") {
        const auto f = sample_field(sm_model::wiener(1.0), {3200, 1}, 1, 4);
        const auto back = io::field_from_csv(io::field_csv(f), 1);
        REQUIRE(back.dim == 1);
        REQUIRE(back.depth == 4);
        REQUIRE(back.values == f.values);
    }
    SECTION("two-dimensional") {
        const auto f = sample_field(sm_model::sheet2d(1.0), {3200, 2}, 2, 3);
        const auto csv = io::field_csv(f);
        REQUIRE(csv.rfind("x1,x2,value\n", 0) == 0);
        const auto back = io::field_from_csv(csv, 2);
        REQUIRE(back.dim == 2);
        REQUIRE(back.depth == 3);
        REQUIRE(back.values == f.values);
    }
}

TEST_CASE("csv reader rejects malformed grids", "[io]") {
    REQUIRE_THROWS_AS(io::field_from_csv("t,value\n0,0\n0.5,1\n", 1), std::invalid_argument);
    REQUIRE_THROWS_AS(io::field_from_csv("t,value\n", 1), std::invalid_argument);
    // 6 rows cannot be a square grid
    std::string bad2d = "x1,x2,value\n";
    for (int i = 0; i < 6; ++i) bad2d += "0,0,0\n";
    REQUIRE_THROWS_AS(io::field_from_csv(bad2d, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(io::field_from_csv("t,value\n0,0,9\n", 1), std::invalid_argument);
}

TEST_CASE("coefficient csv layout", "[io]") {
    fourier_coefficients c;
    c.max_k = 2;
    c.xi = {6.0, 0.5, 0.25};
    c.eta = {0.0, -2.0, -1.0};
    const auto csv = io::coefficients_csv(c);
    REQUIRE(csv == "k,xi,eta\n0,6,0\n1,0.5,-2\n2,0.25,-1\n");
}

TEST_CASE("fnv1a64 matches known vectors", "[io]") {
    REQUIRE(io::fnv1a64_hex("") == "cbf29ce484222325");
    REQUIRE(io::fnv1a64_hex("a") == "af63dc4c8601ec8c");
    REQUIRE(io::fnv1a64_hex("hello") != io::fnv1a64_hex("hellp"));
}

TEST_CASE("besov report json carries all declared fields", "[io]") {
    const auto f = sample_field(sm_model::wiener(1.0), {3300, 0}, 1, 8);
    besov_params params;
    params.level_min = 3;
    params.level_max = 8;
    const auto sums = dyadic_level_sums(f, params);
    const auto rep = io::besov_report_json(sums, membership_diagnostic(sums));
    REQUIRE(rep.contains("params"));
    REQUIRE(rep.at("levels").size() == 6);
    REQUIRE(rep.at("levels")[0].contains("V"));
    REQUIRE(rep.at("levels")[0].contains("W"));
    REQUIRE(rep.at("levels")[0].contains("cumulative"));
    REQUIRE(rep.contains("slope"));
    REQUIRE(rep.contains("slope_stderr"));
    const std::string verdict = rep.at("verdict").get<std::string>();
    REQUIRE((verdict == "CONVERGENT" || verdict == "DIVERGENT" || verdict == "INCONCLUSIVE"));
}

TEST_CASE("replicate csv is rectangular", "[io]") {
    verification_report rep;
    rep.replicate_columns = {"a", "b"};
    rep.replicate_rows = {{1.0, 2.0}, {3.0, 4.5}};
    REQUIRE(io::replicate_csv(rep) == "replicate,a,b\n0,1,2\n1,3,4.5\n");
}
