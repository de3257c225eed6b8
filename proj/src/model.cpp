#include "xxz/model.hpp"

#include <cmath>

#include "xxz/errors.hpp"

namespace xxz {

namespace {

cplx I(double y) { return {0.0, y}; }

cplx cot(cplx z) { return std::cos(z) / std::sin(z); }

cplx log_sin(cplx z) { return std::log(std::sin(z)); }

}  // namespace

void validate(const ChainParams& p) {
    if (p.L < 2) throw Error(ErrorCode::Domain, "L must be at least 2");
    if (!(p.zeta > 0.0) || !std::isfinite(p.zeta)) throw Error(ErrorCode::Domain, "zeta must be positive and finite");
    if (!std::isfinite(p.h_minus) || !std::isfinite(p.h_plus))
        throw Error(ErrorCode::Domain, "boundary fields must be finite");
}

BoundaryParam boundary_param(double h, double zeta) {
    const double sh = std::sinh(zeta);
    if (std::abs(h) == sh)
        throw Error(ErrorCode::DegenerateBoundary, "|h| = sinh(zeta) leaves delta undetermined");
    BoundaryParam b{};
    if (std::abs(h) < sh) {
        b.xi = {std::atanh(h / sh), 1};
        b.p = -std::exp(2.0 * b.xi.xi_tilde);
    } else {
        b.xi = {std::atanh(sh / h), 0};
        b.p = std::exp(2.0 * b.xi.xi_tilde);
    }
    b.a = zeta / 2.0 - b.xi.xi_tilde;
    return b;
}

double field_from_boundary(const BoundaryParam& b, double zeta) {
    const double sh = std::sinh(zeta);
    return b.xi.delta == 1 ? sh * std::tanh(b.xi.xi_tilde) : sh / std::tanh(b.xi.xi_tilde);
}

std::pair<double, double> critical_fields(double zeta) {
    const double d = std::cosh(zeta);
    return {d - 1.0, d + 1.0};
}

const char* to_string(CaseLabel c) {
    switch (c) {
        case CaseLabel::A: return "A";
        case CaseLabel::B: return "B";
        case CaseLabel::C: return "C";
        case CaseLabel::A_prime: return "A'";
        case CaseLabel::B_prime: return "B'";
    }
    return "?";
}

const char* to_string(Side s) {
    switch (s) {
        case Side::none: return "none";
        case Side::plus: return "+";
        case Side::minus: return "-";
    }
    return "?";
}

Regime classify_regime(const ChainParams& p) {
    validate(p);
    const auto [c1, c2] = critical_fields(p.zeta);
    const double sh = std::sinh(p.zeta);
    for (double h : {p.h_minus, p.h_plus}) {
        if (std::abs(h) == sh) throw Error(ErrorCode::DegenerateBoundary, "|h| = sinh(zeta)");
        if (std::abs(h) == c1 || std::abs(h) == c2)
            throw Error(ErrorCode::RegimeBoundary, "boundary field sits exactly on a critical field");
    }
    const double hm = p.h_minus, hp = p.h_plus;
    Regime r;
    if (p.L % 2 == 0) {
        r.N = p.L / 2;
        if (hm > c1 && hp > c1) {
            r.gapless = true;
            r.gapless_reason = "h-, h+ > h_cr1 with L even";
            return r;
        }
        if (-hm > c1 && -hp > c1) {
            r.gapless = true;
            r.gapless_reason = "-h-, -h+ > h_cr1 with L even";
            return r;
        }
        if (hm == hp)
            throw Error(ErrorCode::RegimeBoundary, "h- = h+ with L even: boundary-root side undefined");
        const Side s1 = hp > hm ? Side::plus : Side::minus;
        const double hs1 = std::max(hm, hp);
        if (std::abs(hs1) < c1) {
            r.case_label = CaseLabel::A;
            r.boundary_root_side = s1;
        } else if (hs1 > c1 && hs1 < c2) {
            r.case_label = CaseLabel::B;
        } else if (hs1 > c2) {
            r.case_label = CaseLabel::C;
            r.boundary_root_side = s1;
        } else {
            throw Error(ErrorCode::Unclassified, "field pattern matches no even-L case");
        }
        r.epsilon_sign = hm < hp ? 1 : -1;
        return r;
    }
    if ((hm > c1 && -hp > c1) || (-hm > c1 && hp > c1)) {
        r.gapless = true;
        r.gapless_reason = hm > c1 ? "h-, -h+ > h_cr1 with L odd" : "-h-, h+ > h_cr1 with L odd";
        r.N = (p.L - 1) / 2;
        return r;
    }
    const double sum = hm + hp;
    if (sum == 0.0)
        throw Error(ErrorCode::AmbiguousSector, "h+ + h- = 0 with L odd: sectors (L-1)/2 and (L+1)/2 are degenerate");
    if (hm < c1 && hp < c1 && sum < 0.0) {
        r.N = (p.L - 1) / 2;
        r.case_label = CaseLabel::A_prime;
        r.epsilon_sign = 1;
    } else if (hm > -c1 && hp > -c1 && sum > 0.0) {
        r.N = (p.L + 1) / 2;
        r.case_label = CaseLabel::B_prime;
        r.epsilon_sign = -1;
    } else {
        throw Error(ErrorCode::Unclassified, "field pattern matches no odd-L case");
    }
    return r;
}

Regime classify(const ChainParams& p) {
    Regime r = classify_regime(p);
    if (r.gapless) throw Error(ErrorCode::Gapless, "the spectrum becomes gapless: " + r.gapless_reason);
    return r;
}

ChainParams spin_reversal_image(const ChainParams& p) {
    ChainParams r = p;
    r.h_minus = -p.h_minus;
    r.h_plus = -p.h_plus;
    return r;
}

Counting::Counting(const ChainParams& p)
    : p_(p), bm_(boundary_param(p.h_minus, p.zeta)), bp_(boundary_param(p.h_plus, p.zeta)) {}

cplx Counting::log_a(const Root& nu, const std::vector<Root>& roots, int skip_boundary) const {
    const double z = p_.zeta;
    cplx r = 2.0 * p_.L * (log_sin(combine(nu, 1.0, I(-z / 2))) - log_sin(combine(nu, 1.0, I(z / 2))));
    if (skip_boundary != -1) r += log_sin(combine(nu, 1.0, bm_.c()));
    if (skip_boundary != 1) r += log_sin(combine(nu, 1.0, bp_.c()));
    r -= log_sin(combine(nu, -1.0, bm_.c())) + log_sin(combine(nu, -1.0, bp_.c()));
    r += log_sin(combine(nu, -2.0, I(z))) - log_sin(combine(nu, 2.0, I(z)));
    for (const Root& l : roots) {
        r += log_sin(combine(nu, 1.0, l, 1.0, I(z))) + log_sin(combine(nu, 1.0, l, -1.0, I(z)));
        r -= log_sin(combine(nu, 1.0, l, 1.0, I(-z))) + log_sin(combine(nu, 1.0, l, -1.0, I(-z)));
    }
    return r;
}

cplx Counting::dlog_a(const Root& nu, const std::vector<Root>& roots) const {
    const double z = p_.zeta;
    cplx r = 2.0 * p_.L * (cot(combine(nu, 1.0, I(-z / 2))) - cot(combine(nu, 1.0, I(z / 2))));
    for (const BoundaryParam* b : {&bm_, &bp_})
        r += cot(combine(nu, 1.0, b->c())) + cot(combine(nu, -1.0, b->c()));
    r -= 2.0 * (cot(combine(nu, -2.0, I(z))) + cot(combine(nu, 2.0, I(z))));
    for (const Root& l : roots) {
        r += cot(combine(nu, 1.0, l, 1.0, I(z))) + cot(combine(nu, 1.0, l, -1.0, I(z)));
        r -= cot(combine(nu, 1.0, l, 1.0, I(-z))) + cot(combine(nu, 1.0, l, -1.0, I(-z)));
    }
    return r;
}

cplx Counting::a(cplx nu, const std::vector<Root>& roots) const {
    return std::exp(log_a(Root{nu}, roots));
}

cplx Counting::a_prime(cplx nu, const std::vector<Root>& roots) const {
    const Root r{nu};
    return std::exp(log_a(r, roots)) * dlog_a(r, roots);
}

cplx Counting::log_thick_a(const Root& nu) const {
    return 2.0 * p_.L * log_sin(combine(nu, 1.0, I(-p_.zeta / 2))) + log_sin(combine(nu, 1.0, bp_.c())) +
           log_sin(combine(nu, 1.0, bm_.c()));
}

cplx exp_counting(cplx nu, const std::vector<Root>& roots, const ChainParams& p) {
    return Counting(p).a(nu, roots);
}

cplx exp_counting_derivative(cplx nu, const std::vector<Root>& roots, const ChainParams& p) {
    return Counting(p).a_prime(nu, roots);
}

namespace {

// theta(mu - l) + theta(mu + l) for a root off the real axis: 2(arg w - pi) with
// w = s(mu + i zeta, l), continued from mu = 0 where w is on the negative axis.
double pair_phase_complex(double mu, const Root& l, double zeta) {
    const double am = std::abs(mu);
    const Root m{cplx(am, 0.0)};
    const cplx w = std::sin(combine(m, 1.0, l, 1.0, I(zeta))) * std::sin(combine(m, 1.0, l, -1.0, I(zeta)));
    double arg = std::arg(w);
    if (arg < 0) arg += 2.0 * kPi;
    if (am < kPi / 4 && arg > 1.5 * kPi) arg -= 2.0 * kPi;
    const double v = 2.0 * (arg - kPi);
    return mu < 0 ? -v : v;
}

}  // namespace

double counting_xi(double mu, const std::vector<Root>& roots, const ChainParams& p) {
    const BoundaryParam bm = boundary_param(p.h_minus, p.zeta), bp = boundary_param(p.h_plus, p.zeta);
    const double z = p.zeta;
    const double twoL = 2.0 * p.L;
    double s = fn_p(mu, z) + fn_g(mu, z, bm.xi, bp.xi) / twoL - fn_theta(2.0 * mu, z) / twoL;
    for (const Root& l : roots) {
        if (l.value().imag() == 0.0) {
            const double lr = l.value().real();
            s += (fn_theta(mu - lr, z) + fn_theta(mu + lr, z)) / twoL;
        } else {
            if (std::abs(mu) > kPi / 2)
                throw Error(ErrorCode::Branch, "counting_xi with a complex root is tracked on [-pi/2, pi/2] only");
            s += pair_phase_complex(mu, l, z) / twoL;
        }
    }
    return s;
}

double counting_xi_prime(double mu, const std::vector<Root>& roots, const ChainParams& p) {
    const cplx d = Counting(p).dlog_a(Root{cplx(mu, 0.0)}, roots);
    return (d / cplx(0.0, 2.0 * p.L)).real();
}

}  // namespace xxz
