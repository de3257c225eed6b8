#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "xxz/bethe.hpp"

namespace xxz {

// Scalar product <{lambda}|{mu}> with {lambda} on-shell for `p`, returned as a complex log.
cplx slavnov_scalar_product_log(const std::vector<Root>& lambda, const std::vector<Root>& mu, const ChainParams& p,
                                bool extended = false);
// log <{lambda}|{lambda}> from the Gaudin determinant.
cplx norm_determinant_log(const std::vector<Root>& lambda, const ChainParams& p, bool extended = false);
// |<{lambda}|{lambda}>|; the complex value has a convention phase that cancels in S.
double norm_determinant(const BetheRoots& roots, bool extended = false);

Eigen::MatrixXcd modified_slavnov_matrix(const std::vector<Root>& nu, const std::vector<Root>& omega,
                                         const ChainParams& p);
// Gaudin matrix; a boundary-root row is scaled by sin(offset), the returned log factor undoes that.
Eigen::MatrixXcd gaudin_matrix(const std::vector<Root>& nu, const ChainParams& p, cplx* log_row_scale = nullptr);

struct NormalizedOverlap {
    double value = 0.0;
    double imag = 0.0;  // imaginary part before the reality check
    bool sector_mismatch = false;
};

// S from the four determinants. Ground states of different sectors give exactly 0.
NormalizedOverlap overlap_normalized(const BetheRoots& lambda, const BetheRoots& mu, bool extended = false);

cplx cauchy_kernel_rho_bar(cplx u, cplx w, const Nome& nome);

struct CauchyPair {
    cplx det;
    cplx product;
};
// Direct determinant of rho_bar(nu_j, omega_k) and its closed-form evaluation.
CauchyPair cauchy_det_product_identity(const std::vector<cplx>& nu, const std::vector<cplx>& omega,
                                       const Nome& nome);

// tau_2(u|mu) / tau_1(u|lambda) for u off both root sets.
cplx chi_general(cplx u, const BetheRoots& lambda, const BetheRoots& mu);
// The same ratio at u = lambda_j (on-shell for chain 1), with a_1(lambda_j) = 1 substituted.
cplx chi_at_root(const std::vector<Root>& nu, const ChainParams& pa, const std::vector<Root>& omega,
                 const ChainParams& pb, int j);

// Product formula for S, exponentially close to overlap_normalized.
double overlap_product_form(const BetheRoots& lambda, const BetheRoots& mu);

}  // namespace xxz
