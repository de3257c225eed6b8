#pragma once

#include <complex>

namespace xxz {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

struct Nome {
    double q;
    double zeta;
    static Nome from_zeta(double zeta);
};

struct TruncationPolicy {
    double tail_tol = 1e-16;
    int max_terms = 400;
};

// Jacobi theta functions, Gradshteyn-Ryzhik normalization:
//   th1 = 2 sum (-1)^n q^{(n+1/2)^2} sin((2n+1)z)    th2 = 2 sum q^{(n+1/2)^2} cos((2n+1)z)
//   th3 = 1 + 2 sum q^{n^2} cos(2nz)                 th4 = 1 + 2 sum (-1)^n q^{n^2} cos(2nz)
cplx theta(int i, cplx z, const Nome& nome, const TruncationPolicy& tp = {});
double theta1_prime0(const Nome& nome, const TruncationPolicy& tp = {});

// (x; alpha)_inf
cplx qpoch(cplx x, double alpha, const TruncationPolicy& tp = {});
// (x; q1, q2)_inf, requires |x| < 1
cplx qpoch2(cplx x, double q1, double q2, const TruncationPolicy& tp = {});

// th1(lambda)/sin(lambda), product form
cplx varphi(cplx lambda, const Nome& nome, const TruncationPolicy& tp = {});

cplx kernel_t(cplx nu, double zeta);
cplx kernel_K(cplx lambda, double zeta);

// Boundary parameter xi = -xi_tilde + i delta pi/2.
struct XiParam {
    double xi_tilde;
    int delta;
};

// Real-axis phases, odd and continuous, zero at the origin.
double fn_p(double lambda, double zeta);
double fn_p_prime(double lambda, double zeta);
double fn_theta(double lambda, double zeta);
double fn_theta_prime(double lambda, double zeta);
// One boundary contribution to g.
double fn_g_single(double lambda, double zeta, const XiParam& xi);
double fn_g(double lambda, double zeta, const XiParam& xi_minus, const XiParam& xi_plus);

}  // namespace xxz
