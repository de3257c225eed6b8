#include "xxz/bethe.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "xxz/errors.hpp"

namespace xxz {

std::vector<Root> BetheRoots::roots() const {
    std::vector<Root> r;
    r.reserve(real_roots.size() + 1);
    for (double x : real_roots) r.push_back(Root{cplx(x, 0.0)});
    if (boundary_root) r.push_back(Root{boundary_root->anchor, boundary_root->offset});
    return r;
}

double density_rho(double lambda, const Nome& nome) {
    const double pref = theta1_prime0(nome) / theta(2, 0.0, nome).real();
    return pref / kPi * (theta(3, lambda, nome) / theta(4, lambda, nome)).real();
}

double density_integral(double lambda, const Nome& nome, int nodes) {
    const double h = lambda / nodes;
    double s = 0.5 * (density_rho(0.0, nome) + density_rho(lambda, nome));
    for (int k = 1; k < nodes; ++k) s += density_rho(k * h, nome);
    return s * h;
}

namespace {

// Seeds at the quantiles of rho: int_0^x rho = n / (2 (count + 1)).
std::vector<double> seed_roots(int count, const Nome& nome) {
    const int M = 2048;
    std::vector<double> xs(M + 1), cum(M + 1, 0.0);
    const double h = (kPi / 2) / M;
    double prev = density_rho(0.0, nome);
    xs[0] = 0.0;
    for (int k = 1; k <= M; ++k) {
        xs[k] = k * h;
        const double cur = density_rho(xs[k], nome);
        cum[k] = cum[k - 1] + 0.5 * h * (prev + cur);
        prev = cur;
    }
    // rescale so the table ends at exactly 1/2
    for (double& c : cum) c *= 0.5 / cum[M];
    std::vector<double> out(count);
    for (int j = 0; j < count; ++j) {
        const double t = double(j + 1) / (2.0 * (count + 1));
        auto it = std::lower_bound(cum.begin(), cum.end(), t);
        const int k = std::max<int>(1, int(it - cum.begin()));
        const double f = (t - cum[k - 1]) / (cum[k] - cum[k - 1]);
        out[j] = xs[k - 1] + f * h;
    }
    return out;
}

struct RealSystem {
    const ChainParams& p;
    const std::vector<int>& n;
    const std::optional<Root>& br;

    std::vector<Root> all(const Eigen::VectorXd& x) const {
        std::vector<Root> r;
        for (int j = 0; j < x.size(); ++j) r.push_back(Root{cplx(x[j], 0.0)});
        if (br) r.push_back(*br);
        return r;
    }

    Eigen::VectorXd F(const Eigen::VectorXd& x) const {
        const auto roots = all(x);
        Eigen::VectorXd f(x.size());
        for (int j = 0; j < x.size(); ++j) f[j] = p.L * counting_xi(x[j], roots, p) - kPi * n[j];
        return f;
    }

    Eigen::MatrixXd J(const Eigen::VectorXd& x) const {
        const auto roots = all(x);
        const int m = int(x.size());
        Eigen::MatrixXd J(m, m);
        for (int j = 0; j < m; ++j) {
            for (int k = 0; k < m; ++k)
                J(j, k) = kPi * (kernel_K(x[j] - x[k], p.zeta) - kernel_K(x[j] + x[k], p.zeta)).real();
            J(j, j) += p.L * counting_xi_prime(x[j], roots, p);
        }
        return J;
    }
};

bool admissible(const Eigen::VectorXd& x) {
    for (int j = 0; j < x.size(); ++j) {
        if (!(x[j] > 0.0 && x[j] < kPi / 2)) return false;
        if (j > 0 && !(x[j] > x[j - 1])) return false;
    }
    return true;
}

// Damped Newton on the logarithmic equations; returns the number of steps.
int newton_real(const RealSystem& sys, Eigen::VectorXd& x, int max_iter, std::ostringstream& trace) {
    if (x.size() == 0) return 0;
    Eigen::VectorXd f = sys.F(x);
    double fn = f.cwiseAbs().maxCoeff();
    const double floor = 64.0 * 2.2e-16 * kPi * (x.size() + 1);
    for (int it = 0; it < max_iter; ++it) {
        if (fn <= floor) return it;
        const Eigen::VectorXd step = sys.J(x).partialPivLu().solve(-f);
        double s = 1.0;
        Eigen::VectorXd xn;
        Eigen::VectorXd fnew;
        double fnn = 0.0;
        bool ok = false;
        for (int h = 0; h < 40; ++h, s *= 0.5) {
            xn = x + s * step;
            if (!admissible(xn)) continue;
            fnew = sys.F(xn);
            fnn = fnew.cwiseAbs().maxCoeff();
            if (fnn < fn || step.cwiseAbs().maxCoeff() * s < 1e-15) {
                ok = true;
                break;
            }
        }
        if (it < 8) trace << " it" << it << ":|F|=" << fn;
        if (!ok) return -1;
        const double move = (xn - x).cwiseAbs().maxCoeff();
        x = xn;
        f = fnew;
        fn = fnn;
        if (move < 1e-15) return it + 1;
    }
    return fn <= 1e3 * floor ? max_iter : -1;
}

}  // namespace

double bethe_residual(const std::vector<Root>& roots, const ChainParams& p) {
    const Counting cnt(p);
    double r = 0.0;
    for (const Root& x : roots) r = std::max(r, std::abs(std::exp(cnt.log_a(x, roots)) - 1.0));
    return r;
}

BetheRoots solve_ground_state(const ChainParams& params, const SolverOptions& opts) {
    return solve_ground_state(params, classify(params), opts);
}

namespace {

struct Candidate {
    Eigen::VectorXd x;
    std::optional<Root> br;
    int iterations = 0;
};

std::string clip(const std::ostringstream& trace) {
    std::string t = trace.str();
    // keep the head, which shows how the iteration started
    if (t.size() > 400) t = t.substr(0, 400) + " ...";
    return t;
}

// Real roots with quantum numbers 1..x.size(), optionally next to a boundary root held by the offset iteration.
Candidate block_solve(const ChainParams& sp, Eigen::VectorXd x, std::optional<Root> br, int skip,
                      const SolverOptions& opts, std::ostringstream& trace) {
    const Counting cnt(sp);
    const int nr = int(x.size());
    std::vector<int> qn(nr);
    for (int j = 0; j < nr; ++j) qn[j] = j + 1;

    // sin(offset) = 1/B(anchor + offset), B being a with its vanishing boundary factor removed
    auto update_offset = [&]() {
        std::vector<Root> all;
        for (int j = 0; j < nr; ++j) all.push_back(Root{cplx(x[j], 0.0)});
        all.push_back(*br);
        const cplx inv_b = std::exp(-cnt.log_a(*br, all, skip));
        if (!(std::abs(inv_b.imag()) > 1e-300))
            throw Error(ErrorCode::NoConvergence, "boundary-root offset underflows double range");
        // the root stays on the line Re = delta pi/2, so the offset is purely imaginary
        return std::asin(cplx(0.0, inv_b.imag()));
    };

    Candidate c;
    // Secant on F(y) = G(y) - y, y = Im(offset), G the fixed-point map; plain steps where the secant misbehaves.
    // The plain map contracts at a rate that approaches 1 when the boundary root sits close to the real axis.
    double y_prev = 0.0, f_prev = 0.0;
    bool have_prev = false;
    for (int outer = 0; outer < opts.max_iter; ++outer) {
        const RealSystem sys{sp, qn, br};
        const int its = newton_real(sys, x, opts.max_iter, trace);
        if (its < 0) throw Error(ErrorCode::NoConvergence, "Newton stalled on the real roots; trace:" + clip(trace));
        c.iterations += its;
        if (!br) {
            c.x = x;
            return c;
        }
        const double y = br->offset.imag();
        const cplx g = update_offset();
        const double f = g.imag() - y;
        if (outer < 12) trace << " br" << outer << ":" << std::abs(g);
        if (std::abs(f) <= 1e-14 * std::abs(g) && its <= 1) {
            br->offset = g;
            c.x = x;
            c.br = br;
            return c;
        }
        double next = g.imag();
        if (have_prev && f != f_prev) {
            const double s = y - f * (y - y_prev) / (f - f_prev);
            if (std::isfinite(s) && s * g.imag() > 0.0 && std::abs(s) < 2.0 * std::abs(g.imag())) next = s;
        }
        y_prev = y;
        f_prev = f;
        have_prev = true;
        br->offset = cplx(0.0, next);
    }
    throw Error(ErrorCode::NoConvergence, "block iteration did not settle; trace:" + clip(trace));
}

std::vector<Root> as_roots(const Candidate& c) {
    std::vector<Root> r;
    for (int j = 0; j < c.x.size(); ++j) r.push_back(Root{cplx(c.x[j], 0.0)});
    if (c.br) r.push_back(*c.br);
    return r;
}

}  // namespace

BetheRoots solve_ground_state(const ChainParams& params, const Regime& regime, const SolverOptions& opts) {
    if (regime.gapless) throw Error(ErrorCode::Gapless, "the spectrum becomes gapless: " + regime.gapless_reason);
    if (opts.tol < 1e-13) throw Error(ErrorCode::Domain, "solver tolerance below 1e-13 is not reachable");

    BetheRoots out;
    out.params = params;
    out.regime = regime;
    ChainParams sp = params;
    Regime sr = regime;
    if (regime.case_label == CaseLabel::B_prime) {
        sp = spin_reversal_image(params);
        sr = classify(sp);
        out.spin_reversed = true;
    }
    out.solved_params = sp;

    const Counting cnt(sp);
    const Nome nome = Nome::from_zeta(sp.zeta);
    const bool has_br = sr.boundary_root_side != Side::none;
    const int N = sr.N;
    auto seed = [&](int n) {
        const std::vector<double> s = seed_roots(n, nome);
        return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(s.data(), n));
    };

    std::ostringstream trace;
    std::optional<Candidate> best;
    if (!has_br) {
        best = block_solve(sp, seed(N), std::nullopt, 0, opts, trace);
    } else {
        // The boundary root only forms once L is large enough for its side; below that the ground
        // state keeps N real roots with the last one close to pi/2. Both are tried, lower energy wins.
        const BoundaryParam& b = sr.boundary_root_side == Side::plus ? cnt.plus() : cnt.minus();
        const int skip = sr.boundary_root_side == Side::plus ? 1 : -1;
        std::optional<Candidate> with_br, real_only;
        std::optional<Error> first_error;
        try {
            with_br = block_solve(sp, seed(N - 1), Root{b.anchor(), cplx(0.0, 0.0)}, skip, opts, trace);
        } catch (const Error& e) {
            first_error = e;
        }
        Eigen::VectorXd x0 = seed(N);
        if (with_br && N > 1) {
            x0.head(N - 1) = with_br->x;
            x0[N - 1] = 0.5 * (with_br->x[N - 2] + kPi / 2);
        } else if (with_br) {
            x0[0] = kPi / 4;
        }
        std::ostringstream scratch;
        try {
            real_only = block_solve(sp, x0, std::nullopt, 0, opts, scratch);
            // a root pinned at 0 or pi/2 gives the null vector, not a state
            const Eigen::VectorXd& xr = real_only->x;
            if (bethe_residual(as_roots(*real_only), sp) >= opts.tol || xr.minCoeff() < 1e-7 ||
                kPi / 2 - xr.maxCoeff() < 1e-7)
                real_only.reset();
        } catch (const Error&) {
        }
        if (with_br && real_only) {
            const double e_br = energy(as_roots(*with_br), sp), e_re = energy(as_roots(*real_only), sp);
            best = e_re < e_br ? real_only : with_br;
        } else {
            best = with_br ? with_br : real_only;
        }
        if (!best) throw *first_error;
        if (!best->br)
            out.warnings.push_back("boundary root not formed at this L; ground state has " + std::to_string(N) +
                                   " real roots");
    }
    out.iterations = best->iterations;
    const int nr = int(best->x.size());
    out.quantum_numbers.resize(nr);
    for (int j = 0; j < nr; ++j) out.quantum_numbers[j] = j + 1;

    out.real_roots.assign(best->x.data(), best->x.data() + nr);
    for (int j = 0; j < nr; ++j) {
        const double v = out.real_roots[j];
        if (!(v > 0.0 && v < kPi / 2)) throw Error(ErrorCode::WrongRootCount, "a real root left (0, pi/2)");
        if (j > 0 && v - out.real_roots[j - 1] < 1e-10) throw Error(ErrorCode::WrongRootCount, "two real roots collide");
        if (v < 1e-6 || kPi / 2 - v < 1e-6) {
            std::ostringstream w;
            w << "root " << j + 1 << " within 1e-6 of the interval edge (" << v << ")";
            out.warnings.push_back(w.str());
        }
    }
    if (best->br) {
        BoundaryRootInfo info;
        info.side = sr.boundary_root_side;
        info.anchor = best->br->anchor;
        info.offset = best->br->offset;
        info.epsilon_corr = cplx(0.0, 1.0) * best->br->offset;
        info.clamped = std::abs(info.epsilon_corr) <= opts.clamp_floor;
        out.boundary_root = info;
    }
    out.residual_max = bethe_residual(out.roots(), sp);
    if (!(out.residual_max < opts.tol)) {
        std::ostringstream m;
        m << "residual " << out.residual_max << " above tolerance " << opts.tol << "; trace:" << clip(trace);
        throw Error(ErrorCode::NoConvergence, m.str());
    }
    return out;
}

double energy(const std::vector<Root>& roots, const ChainParams& p) {
    const double z = p.zeta;
    const double s2 = 4.0 * std::sinh(z) * std::sinh(z);
    cplx e = p.h_plus + p.h_minus;
    for (const Root& r : roots) e -= s2 / (std::cosh(z) - std::cos(2.0 * r.value()));
    if (std::abs(e.imag()) > 1e-8) throw Error(ErrorCode::RealityViolation, "energy has a sizeable imaginary part");
    return e.real();
}

double energy(const BetheRoots& roots, const ChainParams& params) {
    if (params.L != roots.params.L || params.zeta != roots.params.zeta)
        throw Error(ErrorCode::Domain, "roots were solved for a different chain");
    // spin reversal leaves the spectrum unchanged
    return energy(roots.roots(), roots.solved_params);
}

cplx transfer_eigenvalue(cplx nu, const std::vector<Root>& roots, const ChainParams& params) {
    const Counting cnt(params);
    const double z = params.zeta;
    const cplx s2 = std::sin(2.0 * nu);
    if (std::abs(s2) < 1e-12) throw Error(ErrorCode::PoleProximity, "transfer eigenvalue at sin(2 nu) = 0");
    const Root v{nu}, mv{-nu};
    cplx l1 = cnt.log_thick_a(v) + std::log(std::sin(2.0 * nu - cplx(0, z)) / s2);
    cplx l2 = cnt.log_thick_a(mv) + std::log(std::sin(2.0 * nu + cplx(0, z)) / s2);
    for (const Root& l : roots) {
        const cplx den = std::sin(combine(v, 1.0, l, 1.0)) * std::sin(combine(v, 1.0, l, -1.0));
        if (den == 0.0) throw Error(ErrorCode::PoleProximity, "transfer eigenvalue evaluated on a root");
        const cplx ld = std::log(den);
        l1 += std::log(std::sin(combine(v, 1.0, l, 1.0, cplx(0, z))) * std::sin(combine(v, 1.0, l, -1.0, cplx(0, z)))) - ld;
        l2 += std::log(std::sin(combine(v, 1.0, l, 1.0, cplx(0, -z))) * std::sin(combine(v, 1.0, l, -1.0, cplx(0, -z)))) - ld;
    }
    return std::exp(l1) + std::exp(l2);
}

double lieb_residual(double lambda, double zeta, int nodes) {
    const Nome nome = Nome::from_zeta(zeta);
    const double h = kPi / nodes;
    double integral = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const double b = -kPi / 2 + k * h;
        integral += kernel_K(lambda - b, zeta).real() * density_rho(b, nome);
    }
    return density_rho(lambda, nome) + h * integral - fn_p_prime(lambda, zeta) / kPi;
}

}  // namespace xxz
