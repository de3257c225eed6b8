#include "xxz/thermo.hpp"

#include <cmath>

#include "xxz/errors.hpp"

namespace xxz {

const char* to_string(APlusVariant v) {
    switch (v) {
        case APlusVariant::real_roots: return "real_roots";
        case APlusVariant::br_plus_plus: return "br_plus_plus";
        case APlusVariant::br_minus_minus: return "br_minus_minus";
        case APlusVariant::br_minus_single: return "br_minus_single";
    }
    return "?";
}

const char* to_string(CasePath c) {
    switch (c) {
        case CasePath::odd_1: return "odd-1";
        case CasePath::odd_2: return "odd-2";
        case CasePath::odd_3: return "odd-3";
        case CasePath::even_1: return "even-1";
        case CasePath::even_2: return "even-2";
        case CasePath::even_3: return "even-3";
    }
    return "?";
}

QSeriesParams qseries_params(const ChainParams& p1, const ChainParams& p2, int epsilon_sign, APlusVariant variant) {
    QSeriesParams qp;
    qp.q = std::exp(-p1.zeta);
    qp.p1 = boundary_param(p1.h_minus, p1.zeta).p;
    qp.p2 = boundary_param(p2.h_minus, p2.zeta).p;
    qp.epsilon_sign = epsilon_sign;
    qp.variant = variant;
    return qp;
}

namespace {

void need(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::ConvergenceDomain, what);
}

// (x; q^4)_inf
cplx P4(cplx x, double q) { return qpoch(x, std::pow(q, 4)); }

int eps_of(const QSeriesParams& qp) {
    if (qp.variant == APlusVariant::real_roots) {
        if (qp.epsilon_sign != 1 && qp.epsilon_sign != -1) throw Error(ErrorCode::Domain, "epsilon_sign must be +-1");
        return qp.epsilon_sign;
    }
    return 1;
}

cplx expr_shift(cplx u, double q, double p1, double p2, int e) {
    const double a1 = std::pow(p1 * q, e), a2 = std::pow(p2 * q, e), q2 = q * q;
    const cplx r = P4(u * a2, q) / P4(u * q2 * a2, q) * P4(u * q2 * a1, q) / P4(u * a1, q);
    return e == 1 ? r : 1.0 / r;
}

}  // namespace

void check_domain(const QSeriesParams& qp) {
    need(qp.q > 0.0 && qp.q < 1.0, "nome outside (0, 1)");
    need(qp.p1 != 0.0 && qp.p2 != 0.0, "p must be nonzero");
    const double q = qp.q;
    switch (qp.variant) {
        case APlusVariant::real_roots:
        case APlusVariant::br_plus_plus: {
            const int e = eps_of(qp);
            need(std::abs(std::pow(qp.p1 * q, e)) < 1.0 && std::abs(std::pow(qp.p2 * q, e)) < 1.0,
                 "|(p q)^eps| >= 1");
            break;
        }
        case APlusVariant::br_minus_minus:
            for (double p : {qp.p1, qp.p2}) need(std::abs(p * q) < 1.0 && std::abs(q / p) < 1.0, "|p q| or |q/p| >= 1");
            break;
        case APlusVariant::br_minus_single:
            need(std::abs(qp.p1 * q) < 1.0 && std::abs(1.0 / (qp.p2 * q)) < 1.0, "|p1 q| or |1/(p2 q)| >= 1");
            break;
    }
}

cplx a_plus(cplx u, const QSeriesParams& qp) {
    check_domain(qp);
    need(std::abs(u) <= 1.0 + 1e-12, "|u| > 1");
    const double q = qp.q, p1 = qp.p1, p2 = qp.p2, q3 = q * q * q;
    switch (qp.variant) {
        case APlusVariant::real_roots: return expr_shift(u, q, p1, p2, eps_of(qp));
        case APlusVariant::br_plus_plus: return expr_shift(u, q, p1, p2, 1);
        case APlusVariant::br_minus_minus:
            return P4(u * q / p2, q) / P4(u * q / p1, q) * P4(u * q3 / p1, q) / P4(u * q3 / p2, q) *
                   (1.0 - u * p2 * q) / (1.0 - u * p1 * q);
        case APlusVariant::br_minus_single:
            return P4(u * q / p2, q) / P4(u / (p2 * q), q) * P4(u * q3 / p1, q) / P4(u * q / p1, q) /
                   (1.0 - u * p1 * q);
    }
    return 0.0;
}

cplx a_plus_tilde(cplx u, const QSeriesParams& qp) {
    const double q = qp.q, p1 = qp.p1, p2 = qp.p2;
    need(qp.q > 0.0 && qp.q < 1.0 && std::abs(q / p1) < 1.0 && std::abs(q / p2) < 1.0, "|q/p| >= 1");
    return P4(u * q / p2, q) * P4(u / (p1 * q), q) / (P4(u * q / p1, q) * P4(u / (p2 * q), q));
}

cplx functional_rhs(cplx u, const QSeriesParams& qp) {
    const double q = qp.q, p1 = qp.p1, p2 = qp.p2, q3 = q * q * q;
    switch (qp.variant) {
        case APlusVariant::real_roots:
        case APlusVariant::br_plus_plus: {
            const int e = qp.variant == APlusVariant::br_plus_plus ? 1 : eps_of(qp);
            const cplx r = (1.0 - u * std::pow(p2 * q, e)) / (1.0 - u * std::pow(p1 * q, e));
            return e == 1 ? r : 1.0 / r;
        }
        case APlusVariant::br_minus_minus:
            return (1.0 - u * p2 * q) / (1.0 - u * p1 * q) * (1.0 - u * q / p2) / (1.0 - u * q / p1) *
                   (1.0 - u * p2 * q3) / (1.0 - u * p1 * q3);
        case APlusVariant::br_minus_single:
            return 1.0 / ((1.0 - u * p1 * q) * (1.0 - u / (p2 * q)) * (1.0 - u * q / p1) * (1.0 - u * p1 * q3));
    }
    return 0.0;
}

double functional_residual(cplx u, const QSeriesParams& qp) {
    return std::abs(a_plus(u, qp) * a_plus(u * qp.q * qp.q, qp) - functional_rhs(u, qp));
}

cplx chi_thermo(cplx u, const QSeriesParams& qp) {
    const int e = eps_of(qp);
    const cplx pref = std::pow(cplx(qp.p1 / qp.p2), 0.5 * e);
    const double s = std::pow(qp.q, 1 - e);
    const cplx w = a_plus(s * u, qp) * a_plus(s / u, qp);
    return pref * (e == 1 ? w : 1.0 / w);
}

double overlap_real(double q, double p1, double p2, int e) {
    if (e != 1 && e != -1) throw Error(ErrorCode::Domain, "epsilon must be +-1");
    const double q2 = q * q, q4 = q2 * q2;
    const double a = std::pow(p1, 2 * e), b = std::pow(p2, 2 * e), c = std::pow(p1 * p2, e);
    auto Q = [&](double x) { return qpoch2(x, q4, q4).real(); };
    const double r1 = Q(c * q4) / Q(c * q2);
    return Q(a * q2) * Q(b * q2) / (Q(a * q4) * Q(b * q4)) * r1 * r1;
}

double overlap_real_from_a_plus(const QSeriesParams& qp, bool tilde) {
    const int e = tilde ? -1 : eps_of(qp);
    auto f = [&](cplx u) { return tilde ? a_plus_tilde(u, qp) : a_plus(u, qp); };
    const double q4 = std::pow(qp.q, 4);
    double x = std::pow(qp.q, 2 - e);
    const double b1 = std::pow(qp.p1, e), b2 = std::pow(qp.p2, e);
    cplx prod = 1.0;
    for (int n = 0; n < 400 && std::abs(x * b1) + std::abs(x * b2) > 1e-17; ++n, x *= q4) prod *= f(b2 * x) / f(b1 * x);
    return (e == 1 ? prod : 1.0 / prod).real();
}

std::pair<cplx, cplx> pole_identity(cplx v, const std::vector<double>& lambda, const std::vector<double>& mu,
                                    double zeta) {
    auto s = [](cplx x, double y) { return std::sin(x - y) * std::sin(x + y); };
    auto phi = [&](cplx x) {
        cplx r = 1.0;
        for (std::size_t k = 0; k < lambda.size(); ++k) r *= s(x, lambda[k]) / s(x, mu[k]);
        return r;
    };
    cplx lhs = 0.0;
    for (std::size_t a = 0; a < lambda.size(); ++a) {
        const double la = lambda[a];
        cplx dphi = std::sin(2.0 * la);
        for (std::size_t k = 0; k < lambda.size(); ++k) {
            if (k != a) dphi *= s(la, lambda[k]);
            dphi /= s(la, mu[k]);
        }
        lhs += 2.0 * kPi * (kernel_K(v - la, zeta) - kernel_K(v + la, zeta)) / dphi;
    }
    const cplx iz(0.0, zeta);
    const cplx rhs = cplx(0.0, 1.0) * (1.0 / phi(v + iz) - 1.0 / phi(v - iz));
    return {lhs, rhs};
}

ThermoOverlap overlap_thermo(const ChainParams& a, const ChainParams& b) {
    if (a.L % 2 != b.L % 2 || a.zeta != b.zeta || a.h_plus != b.h_plus)
        throw Error(ErrorCode::Domain, "overlap_thermo needs equal zeta, h+ and L parity");
    const Regime r1 = classify(a), r2 = classify(b);
    const bool odd = a.L % 2 == 1;
    ThermoOverlap t;
    if (r1.epsilon_sign != r2.epsilon_sign) {
        t.case_path = odd ? CasePath::odd_2 : CasePath::even_2;
        t.vanishing = true;
        return t;
    }
    const int e = r1.epsilon_sign;
    t.case_path = odd ? (e == 1 ? CasePath::odd_1 : CasePath::odd_3) : (e == 1 ? CasePath::even_1 : CasePath::even_3);
    const QSeriesParams qp = qseries_params(a, b, e);
    t.value = overlap_real(qp.q, qp.p1, qp.p2, e);
    return t;
}

}  // namespace xxz
