#pragma once

#include <string>
#include <utility>
#include <vector>

#include "xxz/specialfns.hpp"

namespace xxz {

struct ChainParams {
    int L = 0;
    double zeta = 0.0;
    double h_minus = 0.0;
    double h_plus = 0.0;
};

void validate(const ChainParams& p);

// h = -sinh(zeta) coth(xi), xi = -xi_tilde + i delta pi/2, delta = 1 iff |h| < sinh(zeta).
struct BoundaryParam {
    XiParam xi;
    double p;  // e^{-2 xi} = (-1)^delta e^{2 xi_tilde}
    double a;  // zeta/2 - xi_tilde, the distance of the boundary root from the real axis
    // c = i xi + i zeta/2 as it enters sin(nu + c) in the boundary factors
    cplx c() const { return {-xi.delta * kPi / 2.0, a}; }
    // asymptotic position of the boundary root, -c
    cplx anchor() const { return {xi.delta * kPi / 2.0, -a}; }
};

BoundaryParam boundary_param(double h, double zeta);
double field_from_boundary(const BoundaryParam& b, double zeta);

std::pair<double, double> critical_fields(double zeta);

enum class CaseLabel { A, B, C, A_prime, B_prime };
enum class Side { none, plus, minus };

const char* to_string(CaseLabel c);
const char* to_string(Side s);

struct Regime {
    int N = 0;
    CaseLabel case_label = CaseLabel::B;
    Side boundary_root_side = Side::none;
    int epsilon_sign = 1;
    bool gapless = false;
    std::string gapless_reason;
};

// Never throws for gapless input; fills gapless/gapless_reason instead.
Regime classify_regime(const ChainParams& p);
// Throws Gapless for gapless input.
Regime classify(const ChainParams& p);

ChainParams spin_reversal_image(const ChainParams& p);

// A Bethe root split as anchor + offset, so that an exponentially small
// boundary-root offset survives next to its O(1) anchor.
struct Root {
    cplx anchor;
    cplx offset{0.0, 0.0};
    cplx value() const { return anchor + offset; }
};

// sx*x + sy*y + k, anchors and constants first, offsets last
inline cplx combine(const Root& x, double sx, const Root& y, double sy, cplx k = {}) {
    return (sx * x.anchor + sy * y.anchor + k) + (sx * x.offset + sy * y.offset);
}
inline cplx combine(const Root& x, double sx, cplx k) {
    return (sx * x.anchor + k) + sx * x.offset;
}

// Evaluator for the exponential counting function of one chain.
class Counting {
public:
    explicit Counting(const ChainParams& p);

    const ChainParams& params() const { return p_; }
    const BoundaryParam& minus() const { return bm_; }
    const BoundaryParam& plus() const { return bp_; }

    // log of a(nu|roots); skip_boundary = -1/+1 drops sin(nu + c^-)/sin(nu + c^+) from the numerator
    cplx log_a(const Root& nu, const std::vector<Root>& roots, int skip_boundary = 0) const;
    // d/dnu log a(nu|roots)
    cplx dlog_a(const Root& nu, const std::vector<Root>& roots) const;

    cplx a(cplx nu, const std::vector<Root>& roots) const;
    cplx a_prime(cplx nu, const std::vector<Root>& roots) const;

    // log of the thick a(nu) = sin^{2L}(nu - i zeta/2) sin(nu + c^+) sin(nu + c^-)
    cplx log_thick_a(const Root& nu) const;

private:
    ChainParams p_;
    BoundaryParam bm_, bp_;
};

cplx exp_counting(cplx nu, const std::vector<Root>& roots, const ChainParams& p);
cplx exp_counting_derivative(cplx nu, const std::vector<Root>& roots, const ChainParams& p);

// Real-axis counting function; a complex boundary root in `roots` is
// handled through a branch-tracked phase.
double counting_xi(double mu, const std::vector<Root>& roots, const ChainParams& p);
double counting_xi_prime(double mu, const std::vector<Root>& roots, const ChainParams& p);

}  // namespace xxz
