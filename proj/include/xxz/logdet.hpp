#pragma once

#include <Eigen/Dense>

#include "xxz/specialfns.hpp"

namespace xxz {

// log det A = sum log(pivot) + i pi (row swaps); the imaginary part is not reduced mod 2 pi.
// extended = true runs the elimination in long double.
cplx log_det(const Eigen::MatrixXcd& A, bool extended = false, double pivot_tol = 1e-300);

// Accumulates sum_i power_i * log det A_i, so ratios never leave log space.
struct DetRatioWorkspace {
    int matrix_dim = 0;
    cplx log_det_accumulator{0.0, 0.0};
    double pivot_tolerance = 1e-300;
    bool extended = false;

    void add(const Eigen::MatrixXcd& A, int power);
};

}  // namespace xxz
