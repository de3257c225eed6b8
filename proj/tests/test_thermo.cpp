#include <cmath>

#include "doctest.h"
#include "xxz/bethe.hpp"
#include "xxz/errors.hpp"
#include "xxz/overlap.hpp"
#include "xxz/thermo.hpp"

using namespace xxz;

namespace {

const cplx kGrid[] = {cplx(0.1), std::polar(0.5, 0.3), cplx(0.9)};

}  // namespace

TEST_CASE("a_plus functional equations") {
    const QSeriesParams real = qseries_params({8, 1.5, -1, 2}, {8, 1.5, 0, 2}, 1);
    for (cplx u : kGrid) CHECK(functional_residual(u, real) < 1e-12);

    const QSeriesParams mm =
        qseries_params({8, 1.5, 0.3, -2}, {8, 1.5, 0.8, -2}, 1, APlusVariant::br_minus_minus);
    for (cplx u : kGrid) CHECK(functional_residual(u, mm) < 1e-12);

    const QSeriesParams single =
        qseries_params({8, 1.5, 0.4, -2}, {8, 1.5, 1.4, -2}, 1, APlusVariant::br_minus_single);
    for (cplx u : kGrid) CHECK(functional_residual(u, single) < 1e-12);
}

TEST_CASE("a_plus is 1 for equal boundaries") {
    const QSeriesParams qp = qseries_params({8, 1.5, -1, 2}, {8, 1.5, -1, 2}, 1);
    for (cplx u : kGrid) CHECK(std::abs(a_plus(u, qp) - 1.0) < 1e-15);
    for (cplx u : {std::polar(1.0, 0.4), std::polar(1.0, 2.2)}) CHECK(std::abs(chi_thermo(u, qp) - 1.0) < 1e-15);
}

TEST_CASE("domain checks") {
    QSeriesParams qp = qseries_params({8, 1.5, -1, 2}, {8, 1.5, 0, 2}, 1);
    CHECK_THROWS_AS(a_plus(2.0, qp), Error);
    qp.p1 = 1.0 / (0.9 * qp.q);
    try {
        check_domain(qp);
        FAIL("domain accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConvergenceDomain);
    }
}

TEST_CASE("overlap_real: product over a_plus and symmetries") {
    const QSeriesParams qp = qseries_params({8, 1.5, -1, 2}, {8, 1.5, 0, 2}, 1);
    const double v = overlap_real(qp.q, qp.p1, qp.p2, 1);
    CHECK(std::abs(overlap_real_from_a_plus(qp) - v) < 1e-13);
    CHECK(std::abs(overlap_real(qp.q, qp.p2, qp.p1, 1) - v) < 1e-15);
    CHECK(std::abs(overlap_real(qp.q, 1.0 / qp.p1, 1.0 / qp.p2, 1) - overlap_real(qp.q, qp.p1, qp.p2, -1)) < 1e-13);
    CHECK(overlap_real(qp.q, qp.p1, qp.p1, 1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("tilde route against the direct epsilon = -1 value") {
    const QSeriesParams qp =
        qseries_params({8, 1.5, 0.3, -2}, {8, 1.5, 0.8, -2}, -1, APlusVariant::br_minus_minus);
    CHECK(std::abs(overlap_real_from_a_plus(qp, true) - overlap_real(qp.q, qp.p1, qp.p2, -1)) < 1e-12);
}

TEST_CASE("case dispatch") {
    ThermoOverlap t = overlap_thermo({17, 1.8, 0, -1}, {17, 1.8, 1.5, -1});
    CHECK(t.vanishing);
    CHECK(t.value == 0.0);
    CHECK(t.case_path == CasePath::odd_2);

    t = overlap_thermo({18, 1.5, -1, 2}, {18, 1.5, 0, 2});
    CHECK(t.case_path == CasePath::even_1);
    CHECK(t.value == doctest::Approx(0.9798117096020927).epsilon(1e-13));

    t = overlap_thermo({18, 1.8, -1, 0}, {18, 1.8, 1, 0});
    CHECK(t.case_path == CasePath::even_2);
    CHECK(t.vanishing);

    t = overlap_thermo({18, 1.5, -0.7, 2}, {18, 1.5, -0.7, 2});
    CHECK(t.value == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(overlap_thermo({8, 1.5, -1, 2}, {9, 1.5, 0, 2}), Error);
    CHECK_THROWS_AS(overlap_thermo({8, 1.5, 2, 2.5}, {8, 1.5, 0, 2.5}), Error);
}

TEST_CASE("overlap_thermo symmetries") {
    const ChainParams a{8, 1.5, -1, 2}, b{8, 1.5, 0, 2};
    const double v = overlap_thermo(a, b).value;
    CHECK(std::abs(overlap_thermo(b, a).value - v) < 1e-13);
    CHECK(std::abs(overlap_thermo(spin_reversal_image(a), spin_reversal_image(b)).value - v) < 1e-12);
    // odd and even formulas agree once h+ changes sign
    const double odd = overlap_thermo({9, 1.8, 0, -1}, {9, 1.8, 0.5, -1}).value;
    const double even = overlap_thermo({8, 1.8, 0, 1}, {8, 1.8, 0.5, 1}).value;
    CHECK(std::abs(odd - even) < 1e-13);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
}

TEST_CASE("chi_thermo against the finite-chain ratio") {
    double prev = 1.0;
    for (int L : {10, 14}) {
        const ChainParams p1{L, 1.5, -1, 2}, p2{L, 1.5, 0, 2};
        const BetheRoots a = solve_ground_state(p1), b = solve_ground_state(p2);
        const QSeriesParams qp = qseries_params(p1, p2, 1);
        double worst = 0.0;
        const auto ra = a.roots(), rb = b.roots();
        for (int j = 0; j < a.N(); ++j) {
            const double l = a.real_roots[j];
            const cplx fin = chi_at_root(ra, p1, rb, p2, j);
            worst = std::max(worst, std::abs(chi_thermo(std::polar(1.0, 2.0 * l), qp) - fin));
        }
        if (L == 14) CHECK(worst < 1e-4);
        CHECK(worst < prev);
        prev = worst;
    }
}

TEST_CASE("pole identity at finite size") {
    const BetheRoots a = solve_ground_state({10, 1.5, -1, 2}), b = solve_ground_state({10, 1.5, 0, 2});
    for (cplx v : {cplx(0.3, 0.05), cplx(1.1, -0.2)}) {
        const auto [lhs, rhs] = pole_identity(v, a.real_roots, b.real_roots, 1.5);
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}
