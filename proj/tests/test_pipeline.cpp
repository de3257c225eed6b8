#include <cmath>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "xxz/errors.hpp"
#include "xxz/pipeline.hpp"

using namespace xxz;

TEST_CASE("grid parsing") {
    const auto g = parse_grid("-1:1:0.5");
    REQUIRE(g.size() == 5);
    CHECK(g.front() == -1.0);
    CHECK(g.back() == doctest::Approx(1.0));
    CHECK(parse_grid("0.1:0.3:0.1").size() == 3);
    CHECK_THROWS_AS(parse_grid("1:0:0.5"), Error);
    CHECK_THROWS_AS(parse_grid("0:1"), Error);
    CHECK_THROWS_AS(parse_grid("0:1:0"), Error);
    CHECK(parse_lengths("8,10,12") == std::vector<int>{8, 10, 12});
    CHECK_THROWS_AS(parse_lengths("8,x"), Error);
}

TEST_CASE("sweep validation") {
    SweepSpec s;
    s.zeta = 1.5;
    s.h_plus = 2;
    s.lengths = {8, 9};
    s.grid = {0.0};
    CHECK_THROWS_AS(validate(s), Error);
    s.lengths = {8};
    s.grid = {};
    CHECK_THROWS_AS(validate(s), Error);
    s.grid = {0.5, 0.1};
    CHECK_THROWS_AS(validate(s), Error);
}

TEST_CASE("row for identical chains") {
    const ResultRow r = compute_row(8, 1.5, 2, -1, -1, RowOptions{});
    CHECK(r.error.empty());
    CHECK(*r.s_ed == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*r.s_finite == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*r.s_product == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*r.s_thermo == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("row estimators agree") {
    const ResultRow r = compute_row(10, 1.5, 2, -1, 0, RowOptions{});
    CHECK(r.error.empty());
    CHECK(r.case_path == "even-1");
    CHECK(std::abs(*r.s_ed - *r.s_finite) < 1e-8);
    CHECK(std::abs(*r.s_finite - *r.s_thermo) < 2e-3);
}

TEST_CASE("regime errors stay in the row") {
    const ResultRow r = compute_row(8, 1.5, 2.5, 2, 0, RowOptions{});
    CHECK_FALSE(r.error.empty());
    REQUIRE(r.error_code);
    CHECK(is_regime_error(*r.error_code));
    CHECK_FALSE(r.s_thermo);
}

TEST_CASE("ED above the cap is skipped") {
    RowOptions o;
    o.which.product = false;
    o.ed_cap = 8;
    const ResultRow r = compute_row(10, 1.5, 2, -1, 0, o);
    CHECK_FALSE(r.s_ed);
    CHECK(r.s_finite);
}

TEST_CASE("sweep output is deterministic without timing") {
    SweepSpec s;
    s.zeta = 1.5;
    s.h_plus = 2;
    s.fixed_minus = -1;
    s.grid = parse_grid("-0.5:0.5:0.5");
    s.lengths = {6, 8};
    s.jobs = 2;
    std::ostringstream a, b;
    write_csv(a, run_sweep(s), false);
    s.jobs = 1;
    write_csv(b, run_sweep(s), false);
    CHECK(a.str() == b.str());
    std::istringstream is(a.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == kCsvHeader);
    int rows = 0;
    std::getline(is, line);
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 6);
}

TEST_CASE("json rows") {
    const ResultRow r = compute_row(8, 1.5, 2, -1, 0, RowOptions{});
    const auto j = nlohmann::json::parse(rows_to_json({r}, RowOptions{}, false));
    REQUIRE(j["rows"].size() == 1);
    CHECK(j["rows"][0]["L"] == 8);
    CHECK(j["rows"][0]["case_path"] == "even-1");
}

TEST_CASE("convergence summary") {
    std::vector<ResultRow> rows;
    for (int L : {8, 10, 12}) {
        RowOptions o;
        o.which.ed = false;
        o.which.product = false;
        rows.push_back(compute_row(L, 1.5, 2, -1, 0, o));
    }
    const ConvergeSummary s = summarize_convergence(rows);
    REQUIRE(s.gaps.size() == 3);
    CHECK(s.monotone);
    CHECK(s.decay_ratio < 0.6);
    CHECK(s.ratios.size() == 2);
}

TEST_CASE("selftest") {
    std::ostringstream os;
    CHECK(run_selftest(os));
}
