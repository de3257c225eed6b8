#include "xxz/specialfns.hpp"

#include <algorithm>
#include <cmath>

#include "xxz/errors.hpp"

namespace xxz {

namespace {

void check_nome(const Nome& nome) {
    if (!(nome.q > 0.0 && nome.q < 1.0))
        throw Error(ErrorCode::Domain, "nome q must lie in (0,1)");
}

void guard_sin(cplx s, const char* where) {
    if (std::abs(s) < 1e-12) throw Error(ErrorCode::PoleProximity, where);
}

// x + atan((k-1) sin x cos x / (cos^2 x + k sin^2 x)); continuous for k > 0
double beta(double x, double k) {
    const double s = std::sin(x), c = std::cos(x);
    return x + std::atan((k - 1.0) * s * c / (c * c + k * s * s));
}

double beta_prime(double x, double k) {
    const double s = std::sin(x), c = std::cos(x);
    return k / (c * c + k * k * s * s);
}

}  // namespace

Nome Nome::from_zeta(double zeta) {
    if (!(zeta > 0.0)) throw Error(ErrorCode::Domain, "zeta must be positive");
    return Nome{std::exp(-zeta), zeta};
}

cplx theta(int i, cplx z, const Nome& nome, const TruncationPolicy& tp) {
    check_nome(nome);
    if (i < 1 || i > 4) throw Error(ErrorCode::Domain, "theta index must be 1..4");
    const double lq = std::log(nome.q);
    // terms grow until n ~ |Im z| / zeta before the gaussian wins
    const int n_peak = static_cast<int>(std::abs(z.imag()) / -lq) + 2;
    cplx sum = (i >= 3) ? cplx(1.0) : cplx(0.0);
    double peak = std::abs(sum);
    for (int n = (i >= 3 ? 1 : 0); n < tp.max_terms; ++n) {
        cplx term;
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        if (i <= 2) {
            const double w = 2.0 * std::exp(lq * (n + 0.5) * (n + 0.5));
            const cplx arg = double(2 * n + 1) * z;
            term = (i == 1) ? sgn * w * std::sin(arg) : w * std::cos(arg);
        } else {
            const double w = 2.0 * std::exp(lq * double(n) * double(n));
            const cplx c = std::cos(2.0 * double(n) * z);
            term = (i == 3) ? w * c : sgn * w * c;
        }
        sum += term;
        peak = std::max(peak, std::abs(term));
        // bound the term by its weight: a single term can vanish at special z
        const double bound = 2.0 * std::exp(lq * (i <= 2 ? (n + 0.5) * (n + 0.5) : double(n) * n) +
                                            (2 * n + 1) * std::abs(z.imag()));
        if (n >= n_peak && bound <= tp.tail_tol * peak) break;
    }
    return sum;
}

double theta1_prime0(const Nome& nome, const TruncationPolicy& tp) {
    check_nome(nome);
    const double lq = std::log(nome.q);
    double sum = 0.0;
    for (int n = 0; n < tp.max_terms; ++n) {
        const double term = ((n % 2 == 0) ? 2.0 : -2.0) * (2 * n + 1) * std::exp(lq * (n + 0.5) * (n + 0.5));
        sum += term;
        if (std::abs(term) <= tp.tail_tol * std::abs(sum)) break;
    }
    return sum;
}

cplx qpoch(cplx x, double alpha, const TruncationPolicy& tp) {
    if (!(std::abs(alpha) < 1.0)) throw Error(ErrorCode::Domain, "qpoch requires |alpha| < 1");
    cplx prod = 1.0;
    cplx xa = x;
    for (int n = 0; n < tp.max_terms; ++n) {
        if (std::abs(xa) < tp.tail_tol) break;
        prod *= (1.0 - xa);
        xa *= alpha;
    }
    return prod;
}

cplx qpoch2(cplx x, double q1, double q2, const TruncationPolicy& tp) {
    if (!(std::abs(q1) < 1.0 && std::abs(q2) < 1.0))
        throw Error(ErrorCode::Domain, "qpoch2 requires |q1|, |q2| < 1");
    if (!(std::abs(x) < 1.0))
        throw Error(ErrorCode::ConvergenceDomain, "qpoch2 requires |x| < 1");
    cplx prod = 1.0;
    cplx xq = x;
    for (int n = 0; n < tp.max_terms; ++n) {
        if (std::abs(xq) < tp.tail_tol) break;
        prod *= qpoch(xq, q1, tp);
        xq *= q2;
    }
    return prod;
}

cplx varphi(cplx lambda, const Nome& nome, const TruncationPolicy& tp) {
    check_nome(nome);
    const cplx e = std::exp(cplx(0.0, 2.0) * lambda);
    const cplx ei = 1.0 / e;
    const double big = std::max(std::abs(e), std::abs(ei));
    const double q2 = nome.q * nome.q;
    cplx prod = 2.0 * std::pow(nome.q, 0.25);
    double qn = q2;
    for (int n = 1; n < tp.max_terms; ++n) {
        prod *= (1.0 - qn * e) * (1.0 - qn * ei) * (1.0 - qn);
        if (qn * big < tp.tail_tol) break;
        qn *= q2;
    }
    return prod;
}

cplx kernel_t(cplx nu, double zeta) {
    const cplx s1 = std::sin(nu), s2 = std::sin(nu - cplx(0.0, zeta));
    guard_sin(s1, "kernel_t near pole at 0");
    guard_sin(s2, "kernel_t near pole at i zeta");
    return std::sinh(zeta) / (s1 * s2);
}

cplx kernel_K(cplx lambda, double zeta) {
    const cplx s1 = std::sin(lambda + cplx(0.0, zeta)), s2 = std::sin(lambda - cplx(0.0, zeta));
    guard_sin(s1, "kernel_K near pole at -i zeta");
    guard_sin(s2, "kernel_K near pole at i zeta");
    return std::sinh(2.0 * zeta) / (2.0 * kPi * s1 * s2);
}

double fn_p(double lambda, double zeta) {
    return 2.0 * beta(lambda, 1.0 / std::tanh(zeta / 2.0));
}

double fn_p_prime(double lambda, double zeta) {
    return 2.0 * beta_prime(lambda, 1.0 / std::tanh(zeta / 2.0));
}

double fn_theta(double lambda, double zeta) {
    return -2.0 * beta(lambda, 1.0 / std::tanh(zeta));
}

double fn_theta_prime(double lambda, double zeta) {
    return -2.0 * beta_prime(lambda, 1.0 / std::tanh(zeta));
}

double fn_g_single(double lambda, double zeta, const XiParam& xi) {
    const double a = zeta / 2.0 - xi.xi_tilde;
    if (a == 0.0) throw Error(ErrorCode::Branch, "boundary phase undefined at a critical field");
    const double k = 1.0 / std::tanh(std::abs(a));
    const double sg = a > 0 ? 1.0 : -1.0;
    const double shift = xi.delta * kPi / 2.0;
    auto big_theta = [&](double y) { return -2.0 * sg * beta(y, k); };
    return big_theta(lambda - shift) - big_theta(-shift);
}

double fn_g(double lambda, double zeta, const XiParam& xi_minus, const XiParam& xi_plus) {
    return fn_g_single(lambda, zeta, xi_minus) + fn_g_single(lambda, zeta, xi_plus);
}

}  // namespace xxz
