#include "xxz/overlap.hpp"

#include <cmath>

#include "xxz/errors.hpp"
#include "xxz/logdet.hpp"

namespace xxz {

namespace {

const cplx kI{0.0, 1.0};

cplx lsin(cplx z) { return std::log(std::sin(z)); }

// log s(x + k, y) = log sin(x + k + y) + log sin(x + k - y), arguments assembled offset-aware
cplx log_s(const Root& x, cplx k, const Root& y) {
    return lsin(combine(x, 1.0, y, 1.0, k)) + lsin(combine(x, 1.0, y, -1.0, k));
}

// t(sx x + sy y); no pole guard here because offset differences are exact
cplx t_of(const Root& x, double sx, const Root& y, double sy, double zeta) {
    const cplx v = combine(x, sx, y, sy);
    const cplx s1 = std::sin(v), s2 = std::sin(v - cplx(0.0, zeta));
    if (s1 == 0.0 || s2 == 0.0) throw Error(ErrorCode::PoleProximity, "t evaluated on its pole");
    return std::sinh(zeta) / (s1 * s2);
}

cplx K_of(const Root& x, double sx, const Root& y, double sy, double zeta) {
    const cplx v = combine(x, sx, y, sy);
    return std::sinh(2.0 * zeta) / (2.0 * kPi * std::sin(v + cplx(0.0, zeta)) * std::sin(v - cplx(0.0, zeta)));
}

bool is_boundary(const Root& r) { return r.anchor.imag() != 0.0; }

void same_size(const std::vector<Root>& a, const std::vector<Root>& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::Domain, "root sets of different size");
}

}  // namespace

Eigen::MatrixXcd modified_slavnov_matrix(const std::vector<Root>& nu, const std::vector<Root>& omega,
                                         const ChainParams& p) {
    same_size(nu, omega);
    const Counting cnt(p);
    const int n = int(nu.size());
    const double z = p.zeta;
    Eigen::MatrixXcd H(n, n);
    for (int k = 0; k < n; ++k) {
        const cplx a = std::exp(cnt.log_a(omega[k], nu));
        for (int j = 0; j < n; ++j) {
            H(j, k) = a * (t_of(omega[k], -1.0, nu[j], 1.0, z) - t_of(omega[k], -1.0, nu[j], -1.0, z)) +
                      t_of(omega[k], 1.0, nu[j], -1.0, z) - t_of(omega[k], 1.0, nu[j], 1.0, z);
        }
    }
    return H;
}

Eigen::MatrixXcd gaudin_matrix(const std::vector<Root>& nu, const ChainParams& p, cplx* log_row_scale) {
    const Counting cnt(p);
    const int n = int(nu.size());
    Eigen::MatrixXcd M(n, n);
    cplx scale_log = 0.0;
    for (int j = 0; j < n; ++j) {
        const cplx s = is_boundary(nu[j]) && nu[j].offset != 0.0 ? std::sin(nu[j].offset) : cplx(1.0);
        for (int k = 0; k < n; ++k)
            M(j, k) = -2.0 * kPi * (K_of(nu[j], 1.0, nu[k], -1.0, p.zeta) - K_of(nu[j], 1.0, nu[k], 1.0, p.zeta)) * s;
        // i a'(nu_j), with a(nu_j) = 1 up to the residual kept
        M(j, j) += kI * std::exp(cnt.log_a(nu[j], nu)) * (cnt.dlog_a(nu[j], nu) * s);
        if (s != 1.0) scale_log += std::log(s);
    }
    if (log_row_scale) *log_row_scale = scale_log;
    return M;
}

cplx slavnov_scalar_product_log(const std::vector<Root>& lambda, const std::vector<Root>& mu, const ChainParams& p,
                                bool extended) {
    same_size(lambda, mu);
    const Counting cnt(p);
    const int n = int(lambda.size());
    const double z = p.zeta;
    const cplx iz(0.0, z);
    const cplx cp = cnt.plus().c(), cm = cnt.minus().c();

    cplx lg = 0.0;
    for (int j = 0; j < n; ++j) {
        const Root& l = lambda[j];
        const Root& m = mu[j];
        // (-1)^L a(l) d(-l) = sin^{2L}(l - i zeta/2)
        lg += 2.0 * p.L * lsin(combine(l, 1.0, -iz / 2.0));
        lg += lsin(combine(l, 2.0, -iz)) + lsin(combine(m, 2.0, -iz)) - lsin(combine(m, 2.0, 0.0));
        // sin(l + i xi+ + i zeta/2) / sin(l - i xi- - i zeta/2)
        lg += lsin(combine(l, 1.0, cp)) - lsin(combine(l, 1.0, -cm));
        for (int k = j + 1; k < n; ++k) {
            lg += lsin(combine(l, 1.0, lambda[k], 1.0, -iz)) - lsin(combine(l, 1.0, lambda[k], 1.0, iz));
            if (lambda[j].value() == lambda[k].value() || mu[k].value() == mu[j].value())
                throw Error(ErrorCode::SingularPrefactor, "coincident roots in the scalar-product prefactor");
            lg -= log_s(l, 0.0, lambda[k]) + log_s(mu[k], 0.0, mu[j]);
        }
    }

    // det H with each column k scaled by a(-mu_k) prod_l s(mu_k - i zeta, lambda_l), pulled out in log form
    Eigen::MatrixXcd H(n, n);
    const cplx sz = std::sin(-iz);
    for (int k = 0; k < n; ++k) {
        const Root& m = mu[k];
        const Root mneg{-m.anchor, -m.offset};
        cplx col = cnt.log_thick_a(mneg);
        for (const Root& l : lambda) col += log_s(m, -iz, l);
        lg += col;
        // a(mu_k) prod s(mu_k + i zeta) / (a(-mu_k) prod s(mu_k - i zeta)) = fa(mu_k) sin(i z + 2 mu)/sin(i z - 2 mu)
        const cplx x = std::exp(cnt.log_a(m, lambda) + lsin(combine(m, 2.0, iz)) - lsin(combine(m, -2.0, iz)));
        for (int j = 0; j < n; ++j) {
            const cplx s0 = std::exp(log_s(m, 0.0, lambda[j]));
            const cplx sp = std::exp(log_s(m, iz, lambda[j]));
            const cplx sm = std::exp(log_s(m, -iz, lambda[j]));
            H(j, k) = sz / s0 * (x / sp - 1.0 / sm);
        }
    }
    return lg + log_det(H, extended);
}

cplx norm_determinant_log(const std::vector<Root>& lambda, const ChainParams& p, bool extended) {
    const Counting cnt(p);
    const int n = int(lambda.size());
    const cplx iz(0.0, p.zeta);
    const cplx cp = cnt.plus().c(), cm = cnt.minus().c();
    cplx lg = 0.0;
    for (int j = 0; j < n; ++j) {
        const Root& l = lambda[j];
        lg += 2.0 * p.L * lsin(combine(l, 1.0, -iz / 2.0)) + lsin(combine(l, 2.0, -iz));
        lg += lsin(combine(l, 1.0, cp)) - lsin(combine(l, 1.0, -cm));
        for (int k = j + 1; k < n; ++k)
            lg += lsin(combine(l, 1.0, lambda[k], 1.0, -iz)) - lsin(combine(l, 1.0, lambda[k], 1.0, iz));
        const Root lneg{-l.anchor, -l.offset};
        lg += cnt.log_thick_a(lneg);
        for (const Root& m : lambda) lg += log_s(l, -iz, m);
        lg -= std::log(kI) + 2.0 * lsin(combine(l, 2.0, 0.0));
        for (int k = 0; k < n; ++k)
            if (k != j) lg -= log_s(l, 0.0, lambda[k]);
    }
    cplx row_scale = 0.0;
    const Eigen::MatrixXcd M = gaudin_matrix(lambda, p, &row_scale);
    return lg + log_det(M, extended) - row_scale;
}

double norm_determinant(const BetheRoots& roots, bool extended) {
    // <{lambda}| is not the adjoint of |{lambda}>, so the value carries a root-dependent phase; the modulus is the norm
    const cplx lg = norm_determinant_log(roots.roots(), roots.solved_params, extended);
    if (!std::isfinite(lg.real())) throw Error(ErrorCode::NegativeNorm, "norm vanishes or overflows; root set is wrong");
    return std::exp(lg.real());
}

NormalizedOverlap overlap_normalized(const BetheRoots& lambda, const BetheRoots& mu, bool extended) {
    const ChainParams& p1 = lambda.solved_params;
    const ChainParams& p2 = mu.solved_params;
    if (p1.L != p2.L || p1.zeta != p2.zeta)
        throw Error(ErrorCode::Domain, "overlap needs the same L and zeta");
    NormalizedOverlap out;
    if (lambda.N() != mu.N() || lambda.spin_reversed != mu.spin_reversed) {
        out.sector_mismatch = true;
        return out;
    }
    if (p1.h_plus != p2.h_plus) throw Error(ErrorCode::Domain, "overlap needs a shared h+");
    // same chain, same state; the general formula would sit on the poles of t
    if (p1.h_minus == p2.h_minus) {
        out.value = 1.0;
        return out;
    }
    const auto lam = lambda.roots();
    const auto mus = mu.roots();
    const int n = int(lam.size());
    const cplx iz(0.0, p1.zeta);
    const cplx c1 = Counting(p1).minus().c(), c2 = Counting(p2).minus().c();

    cplx lg = 0.0;
    for (int k = 0; k < n; ++k) {
        // a_1(-mu)/a_2(-mu) = sin(c_1 - mu)/sin(c_2 - mu)
        lg += lsin(combine(mus[k], -1.0, c1)) - lsin(combine(mus[k], -1.0, c2));
        lg += lsin(combine(lam[k], -1.0, c2)) - lsin(combine(lam[k], -1.0, c1));
        for (int l = 0; l < n; ++l)
            lg += log_s(mus[k], -iz, lam[l]) + log_s(lam[k], -iz, mus[l]) - log_s(lam[k], -iz, lam[l]) -
                  log_s(mus[k], -iz, mus[l]);
    }
    DetRatioWorkspace ws;
    ws.extended = extended;
    cplx s1 = 0.0, s2 = 0.0;
    ws.add(modified_slavnov_matrix(lam, mus, p1), 1);
    ws.add(gaudin_matrix(lam, p1, &s1), -1);
    ws.add(modified_slavnov_matrix(mus, lam, p2), 1);
    ws.add(gaudin_matrix(mus, p2, &s2), -1);
    lg += ws.log_det_accumulator + s1 + s2;

    const cplx s = std::exp(lg);
    out.value = s.real();
    out.imag = s.imag();
    if (std::abs(s.imag()) > 1e-9) throw Error(ErrorCode::RealityViolation, "overlap has a sizeable imaginary part");
    return out;
}

cplx cauchy_kernel_rho_bar(cplx u, cplx w, const Nome& nome) {
    const cplx d1 = theta(1, u - w, nome), d2 = theta(1, u + w, nome);
    if (std::abs(d1) < 1e-14 || std::abs(d2) < 1e-14)
        throw Error(ErrorCode::PoleProximity, "rho_bar at u = +-w mod pi");
    const double pref = theta1_prime0(nome) / theta(2, 0.0, nome).real();
    return pref * (theta(2, u - w, nome) / d1 + theta(2, u + w, nome) / d2);
}

CauchyPair cauchy_det_product_identity(const std::vector<cplx>& nu, const std::vector<cplx>& omega,
                                       const Nome& nome) {
    if (nu.size() != omega.size()) throw Error(ErrorCode::Domain, "Cauchy sets of different size");
    const int n = int(nu.size());
    Eigen::MatrixXcd A(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) A(j, k) = cauchy_kernel_rho_bar(nu[j], omega[k], nome);

    const Nome nome2{nome.q * nome.q, 2.0 * nome.zeta};
    const double pref = theta1_prime0(nome) / theta(2, 0.0, nome).real();
    // 2^N: needed with the GR theta normalization, checked against the direct determinant
    cplx lg = double(n) * std::log(2.0 * pref);
    for (int i = 0; i < n; ++i) lg += std::log(theta(1, 2.0 * nu[i], nome2) * theta(4, 2.0 * omega[i], nome2));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < j; ++k)
            lg += std::log(theta(1, nu[j] + nu[k], nome) * theta(1, nu[j] - nu[k], nome) *
                           theta(1, omega[k] + omega[j], nome) * theta(1, omega[k] - omega[j], nome));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            lg -= std::log(theta(1, nu[j] + omega[k], nome) * theta(1, nu[j] - omega[k], nome));
    return {std::exp(log_det(A)), std::exp(lg)};
}

cplx chi_general(cplx u, const BetheRoots& lambda, const BetheRoots& mu) {
    const ChainParams& p1 = lambda.solved_params;
    const ChainParams& p2 = mu.solved_params;
    const Counting c1(p1), c2(p2);
    const auto lam = lambda.roots();
    const auto mus = mu.roots();
    const Root x{u};
    const cplx iz(0.0, p1.zeta);
    const cplx a1 = std::exp(c1.log_a(x, lam)) - 1.0;
    if (std::abs(a1) < 1e-12) throw Error(ErrorCode::PoleProximity, "chi_general at a root of chain 1");
    cplx lg = std::log((std::exp(c2.log_a(x, mus)) - 1.0) / a1);
    lg += lsin(combine(x, 1.0, -c2.minus().c())) - lsin(combine(x, 1.0, -c1.minus().c()));
    for (std::size_t l = 0; l < lam.size(); ++l)
        lg += log_s(x, -iz, mus[l]) - log_s(x, -iz, lam[l]) + log_s(x, 0.0, lam[l]) - log_s(x, 0.0, mus[l]);
    return std::exp(lg);
}

cplx chi_at_root(const std::vector<Root>& nu, const ChainParams& pa, const std::vector<Root>& omega,
                 const ChainParams& pb, int j) {
    const Counting ca(pa), cb(pb);
    const Root& x = nu[j];
    const cplx iz(0.0, pa.zeta);
    // (a_B - 1) sin(2x) / a_A'(x) replaces (a_B - 1)/(a_A - 1) times s(x, nu_j)
    cplx lg = std::log(std::exp(cb.log_a(x, omega)) - 1.0) + lsin(combine(x, 2.0, 0.0)) -
              (ca.log_a(x, nu) + std::log(ca.dlog_a(x, nu)));
    lg += lsin(combine(x, 1.0, -cb.minus().c())) - lsin(combine(x, 1.0, -ca.minus().c()));
    for (std::size_t l = 0; l < nu.size(); ++l) {
        lg += log_s(x, -iz, omega[l]) - log_s(x, -iz, nu[l]) - log_s(x, 0.0, omega[l]);
        if (int(l) != j) lg += log_s(x, 0.0, nu[l]);
    }
    return std::exp(lg);
}

double overlap_product_form(const BetheRoots& lambda, const BetheRoots& mu) {
    const ChainParams& p1 = lambda.solved_params;
    const ChainParams& p2 = mu.solved_params;
    if (lambda.N() != mu.N() || lambda.spin_reversed != mu.spin_reversed) return 0.0;
    if (p1.h_minus == p2.h_minus && p1.h_plus == p2.h_plus) return 1.0;
    const auto lam = lambda.roots();
    const auto mus = mu.roots();
    const int n = int(lam.size());
    const Nome nome = Nome::from_zeta(p1.zeta);
    auto lphi = [&](const Root& a, double sb, const Root& b) { return std::log(varphi(combine(a, 1.0, b, sb), nome)); };
    cplx lg = 0.0;
    for (int i = 0; i < n; ++i) {
        lg += std::log(chi_at_root(lam, p1, mus, p2, i));
        lg += std::log(chi_at_root(mus, p2, lam, p1, i));  // 1/chi(mu_i)
        for (int j = 0; j < n; ++j) {
            lg += lphi(lam[i], 1.0, lam[j]) + lphi(lam[i], -1.0, lam[j]) - lphi(lam[i], 1.0, mus[j]) -
                  lphi(lam[i], -1.0, mus[j]);
            lg += lphi(mus[i], 1.0, mus[j]) + lphi(mus[i], -1.0, mus[j]) - lphi(mus[i], 1.0, lam[j]) -
                  lphi(mus[i], -1.0, lam[j]);
        }
    }
    const cplx s = std::exp(lg);
    if (std::abs(s.imag()) > 1e-9 * std::max(1.0, std::abs(s)))
        throw Error(ErrorCode::RealityViolation, "product overlap has a sizeable imaginary part");
    return s.real();
}

}  // namespace xxz
