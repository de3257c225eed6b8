#include "xxz/logdet.hpp"

#include <cmath>
#include <vector>

#include "xxz/errors.hpp"

namespace xxz {

namespace {

template <class T>
cplx lu_log_det(const Eigen::MatrixXcd& A, double pivot_tol) {
    using C = std::complex<T>;
    const int n = int(A.rows());
    std::vector<C> m(std::size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[std::size_t(i) * n + j] = C(T(A(i, j).real()), T(A(i, j).imag()));
    auto at = [&](int i, int j) -> C& { return m[std::size_t(i) * n + j]; };

    T log_mag = 0;
    T phase = 0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        T best = std::abs(at(k, k));
        for (int i = k + 1; i < n; ++i) {
            const T v = std::abs(at(i, k));
            if (v > best) best = v, piv = i;
        }
        if (!(best > T(pivot_tol))) throw Error(ErrorCode::SingularMatrix, "zero pivot in LU");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
            phase += T(kPi);
        }
        const C p = at(k, k);
        log_mag += std::log(std::abs(p));
        phase += std::arg(p);
        for (int i = k + 1; i < n; ++i) {
            const C f = at(i, k) / p;
            if (f == C(0)) continue;
            for (int j = k + 1; j < n; ++j) at(i, j) -= f * at(k, j);
        }
    }
    return {double(log_mag), double(phase)};
}

}  // namespace

cplx log_det(const Eigen::MatrixXcd& A, bool extended, double pivot_tol) {
    if (A.rows() != A.cols()) throw Error(ErrorCode::Domain, "log_det needs a square matrix");
    if (A.rows() == 0) return {0.0, 0.0};
    if (!A.allFinite()) throw Error(ErrorCode::SingularMatrix, "non-finite matrix entry");
    return extended ? lu_log_det<long double>(A, pivot_tol) : lu_log_det<double>(A, pivot_tol);
}

void DetRatioWorkspace::add(const Eigen::MatrixXcd& A, int power) {
    if (matrix_dim == 0) matrix_dim = int(A.rows());
    if (A.rows() != matrix_dim) throw Error(ErrorCode::Domain, "determinant sizes differ within one ratio");
    log_det_accumulator += double(power) * log_det(A, extended, pivot_tolerance);
}

}  // namespace xxz
