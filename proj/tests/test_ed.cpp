#include <cmath>

#include "doctest.h"
#include "xxz/bethe.hpp"
#include "xxz/ed.hpp"
#include "xxz/errors.hpp"
#include "xxz/overlap.hpp"

using namespace xxz;

namespace {

// Full 2^L Hamiltonian, built bond by bond without sector bookkeeping.
Eigen::MatrixXd full_hamiltonian(const ChainParams& p) {
    const int n = 1 << p.L;
    const double D = std::cosh(p.zeta);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    auto sz = [](int s, int k) { return (s >> k & 1) ? -1.0 : 1.0; };
    for (int s = 0; s < n; ++s) {
        for (int k = 0; k + 1 < p.L; ++k) {
            H(s, s) += D * (sz(s, k) * sz(s, k + 1) - 1.0);
            if (sz(s, k) != sz(s, k + 1)) H(s ^ (3 << k), s) += 2.0;
        }
        H(s, s) += p.h_minus * sz(s, 0) + p.h_plus * sz(s, p.L - 1);
    }
    return H;
}

}  // namespace

TEST_CASE("two-site block by hand") {
    const ChainParams p{2, 1.3, 0.4, -0.9};
    const Eigen::MatrixXd H = build_hamiltonian_block(p, 1);
    const double D = std::cosh(1.3);
    // basis {down-up, up-down} = bit patterns {1, 2}
    CHECK(H(0, 0) == doctest::Approx(-2 * D - p.h_minus + p.h_plus));
    CHECK(H(1, 1) == doctest::Approx(-2 * D + p.h_minus - p.h_plus));
    CHECK(H(0, 1) == doctest::Approx(2.0));
    CHECK(H(1, 0) == doctest::Approx(2.0));
}

TEST_CASE("ferromagnetic sector") {
    const ChainParams p{7, 1.5, 0.3, -1.1};
    const Eigen::MatrixXd H = build_hamiltonian_block(p, 0);
    REQUIRE(H.rows() == 1);
    CHECK(H(0, 0) == doctest::Approx(p.h_minus + p.h_plus));
}

TEST_CASE("sector blocks against the full matrix") {
    const ChainParams p{6, 1.5, -0.7, 1.2};
    const Eigen::MatrixXd F = full_hamiltonian(p);
    double tr = 0.0;
    for (int n = 0; n <= p.L; ++n) {
        const Eigen::MatrixXd H = build_hamiltonian_block(p, n);
        tr += H.trace();
        const SectorBasis b = SectorBasis::make(p.L, n);
        for (std::size_t i = 0; i < b.dim(); ++i)
            for (std::size_t j = 0; j < b.dim(); ++j) CHECK(H(i, j) == doctest::Approx(F(b.states[i], b.states[j])));
    }
    CHECK(tr == doctest::Approx(F.trace()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(F, Eigen::EigenvaluesOnly);
    CHECK(ground_state(p).energy == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-12));
}

TEST_CASE("sector basis") {
    const SectorBasis b = SectorBasis::make(8, 3);
    CHECK(b.dim() == 56);
    for (std::size_t i = 0; i < b.dim(); ++i) CHECK(b.index(b.states[i]) == long(i));
    CHECK(b.index(0b1111) == -1);
}

TEST_CASE("inertia count") {
    Eigen::MatrixXd H(3, 3);
    H << 2, 1, 0, 1, 2, 1, 0, 1, 2;  // eigenvalues 2 - sqrt 2, 2, 2 + sqrt 2
    CHECK(count_below(H, 0.5) == 0);
    CHECK(count_below(H, 1.0) == 1);
    CHECK(count_below(H, 3.0) == 2);
    CHECK(count_below(H, 4.0) == 3);
    const SectorLow lo = sector_lowest(H);
    CHECK(lo.e0 == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-13));
    CHECK(lo.e1 == doctest::Approx(2.0).epsilon(1e-13));
    CHECK((H * lo.v0 - lo.e0 * lo.v0).norm() < 1e-12);
}

TEST_CASE("ground states") {
    const ChainParams p{8, 1.5, -1, 2};
    const GroundStateVector g = ground_state(p);
    CHECK(g.sector == 4);
    CHECK(std::abs(g.energy - energy(solve_ground_state(p), p)) < 1e-9);
    CHECK(g.gap > 0.0);

    CHECK(ground_state({9, 1.8, 0, -1}).sector == 4);

    const GroundStateVector r = ground_state(spin_reversal_image(p));
    CHECK(r.energy == doctest::Approx(g.energy).epsilon(1e-12));
    CHECK(r.sector == p.L - g.sector);
}

TEST_CASE("ED overlaps") {
    const ChainParams a{8, 1.5, -1, 2};
    CHECK(ed_overlap(a, a).value == doctest::Approx(1.0).epsilon(1e-13));

    const EdOverlap z = ed_overlap({11, 1.8, 0, -1}, {11, 1.8, 1.5, -1});
    CHECK(z.sector_mismatch);
    CHECK(z.value == 0.0);

    const ChainParams p1{12, 1.5, -1, 2}, p2{12, 1.5, 0, 2};
    const double e = ed_overlap(p1, p2).value;
    CHECK(e > 0.0);
    CHECK(std::abs(e - overlap_normalized(solve_ground_state(p1), solve_ground_state(p2)).value) < 1e-8);
}

TEST_CASE("size cap") {
    try {
        build_hamiltonian_block({18, 1.5, -1, 2}, 9);
        FAIL("no size cap");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SizeCap);
    }
}
