#pragma once

#include <vector>

#include "xxz/model.hpp"

namespace xxz {

enum class APlusVariant { real_roots, br_plus_plus, br_minus_minus, br_minus_single };

const char* to_string(APlusVariant v);

struct QSeriesParams {
    double q = 0.0;
    double p1 = 0.0;  // e^{-2 xi_1^-}, signed
    double p2 = 0.0;
    int epsilon_sign = 1;
    APlusVariant variant = APlusVariant::real_roots;
};

// q and the two boundary p's for a pair of chains differing only in h^-.
QSeriesParams qseries_params(const ChainParams& p1, const ChainParams& p2, int epsilon_sign,
                             APlusVariant variant = APlusVariant::real_roots);

// Throws ConvergenceDomain when the q-series parameters leave the regime the closed forms assume.
void check_domain(const QSeriesParams& qp);

cplx a_plus(cplx u, const QSeriesParams& qp);
// The variant with one "-" boundary root in each state, after the boundary factors are absorbed.
// Identical to a_plus for real_roots with epsilon = -1.
cplx a_plus_tilde(cplx u, const QSeriesParams& qp);
// Right-hand side of a_+(u) a_+(u q^2) = rhs(u) for the variant.
cplx functional_rhs(cplx u, const QSeriesParams& qp);
// |a_+(u) a_+(u q^2) - rhs(u)|
double functional_residual(cplx u, const QSeriesParams& qp);

cplx chi_thermo(cplx u, const QSeriesParams& qp);

// The double q-Pochhammer ratio for the given epsilon.
double overlap_real(double q, double p1, double p2, int epsilon);

// The same value as the single product over a_+ (or over a_plus_tilde), truncated once terms reach 1e-17.
double overlap_real_from_a_plus(const QSeriesParams& qp, bool tilde = false);

// Finite-L check: sum_a 2 pi [K(v - lambda_a) - K(v + lambda_a)] / phi'(lambda_a)
// against i [1/phi(v + i zeta) - 1/phi(v - i zeta)]; returns {lhs, rhs}.
std::pair<cplx, cplx> pole_identity(cplx v, const std::vector<double>& lambda, const std::vector<double>& mu,
                                    double zeta);

enum class CasePath { odd_1, odd_2, odd_3, even_1, even_2, even_3 };
const char* to_string(CasePath c);

struct ThermoOverlap {
    double value = 0.0;
    CasePath case_path = CasePath::even_1;
    bool vanishing = false;
};

ThermoOverlap overlap_thermo(const ChainParams& params1, const ChainParams& params2);

}  // namespace xxz
