#include "xxz/ed.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <tuple>

#include "xxz/errors.hpp"

namespace xxz {

SectorBasis SectorBasis::make(int L, int n_down) {
    if (L < 1 || L > 31) throw Error(ErrorCode::Domain, "basis length out of range");
    if (n_down < 0 || n_down > L) throw Error(ErrorCode::Domain, "n_down out of range");
    SectorBasis b;
    b.L = L;
    b.n_down = n_down;
    const std::uint32_t top = std::uint32_t(1) << L;
    for (std::uint32_t s = 0; s < top; ++s)
        if (std::popcount(s) == n_down) b.states.push_back(s);
    return b;
}

long SectorBasis::index(std::uint32_t s) const {
    auto it = std::lower_bound(states.begin(), states.end(), s);
    if (it == states.end() || *it != s) return -1;
    return long(it - states.begin());
}

Eigen::MatrixXd build_hamiltonian_block(const ChainParams& p, int n_down, int cap) {
    validate(p);
    if (p.L > cap) throw Error(ErrorCode::SizeCap, "L = " + std::to_string(p.L) + " above the ED cap");
    const SectorBasis b = SectorBasis::make(p.L, n_down);
    const double delta = std::cosh(p.zeta);
    const long n = long(b.dim());
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    auto sz = [](std::uint32_t s, int k) { return ((s >> k) & 1u) ? -1.0 : 1.0; };
    for (long i = 0; i < n; ++i) {
        const std::uint32_t s = b.states[i];
        double d = p.h_minus * sz(s, 0) + p.h_plus * sz(s, p.L - 1);
        for (int k = 0; k + 1 < p.L; ++k) {
            const double zz = sz(s, k) * sz(s, k + 1);
            d += delta * (zz - 1.0);
            if (zz < 0) {
                // sx sx + sy sy flips an antiparallel pair with amplitude 2
                const long j = b.index(s ^ (3u << k));
                H(j, i) = 2.0;
            }
        }
        H(i, i) = d;
    }
    return H;
}

namespace {

// Fortran LAPACK. Blocked routines whose trailing updates go through dgemm are avoided:
// OpenBLAS 0.3.20 mis-computes dgemm with its Cooperlake kernel on some AVX-512 hosts.
extern "C" {
void dsytrd_(const char* uplo, const int* n, double* a, const int* lda, double* d, double* e, double* tau,
             double* work, const int* lwork, int* info);
void dstebz_(const char* range, const char* order, const int* n, const double* vl, const double* vu, const int* il,
             const int* iu, const double* abstol, const double* d, const double* e, int* m, int* nsplit, double* w,
             int* iblock, int* isplit, double* work, int* iwork, int* info);
void dsytf2_(const char* uplo, const int* n, double* a, const int* lda, int* ipiv, int* info);
void dsytrs_(const char* uplo, const int* n, const int* nrhs, const double* a, const int* lda, const int* ipiv,
             double* b, const int* ldb, int* info);
}

struct Ldlt {
    Eigen::MatrixXd a;
    std::vector<int> ipiv;
    int info = 0;
};

Ldlt bunch_kaufman(const Eigen::MatrixXd& H, double shift) {
    Ldlt f{H, std::vector<int>(H.rows()), 0};
    f.a.diagonal().array() -= shift;
    const int n = int(H.rows());
    const char uplo = 'L';
    dsytf2_(&uplo, &n, f.a.data(), &n, f.ipiv.data(), &f.info);
    if (f.info < 0) throw Error(ErrorCode::Domain, "dsytf2 argument error");
    return f;
}

// lowest two eigenvalues from the tridiagonal form
std::pair<double, double> lowest_eigenvalues(const Eigen::MatrixXd& H) {
    const int n = int(H.rows());
    Eigen::MatrixXd A = H;
    Eigen::VectorXd d(n), e(n), tau(n);
    int info = 0, lwork = -1;
    double wq = 0;
    const char uplo = 'L';
    dsytrd_(&uplo, &n, A.data(), &n, d.data(), e.data(), tau.data(), &wq, &lwork, &info);
    lwork = int(wq);
    std::vector<double> work(std::max(1, lwork));
    dsytrd_(&uplo, &n, A.data(), &n, d.data(), e.data(), tau.data(), work.data(), &lwork, &info);
    if (info != 0) throw Error(ErrorCode::NoConvergence, "dsytrd failed");

    const char range = 'I', order = 'E';
    const int il = 1, iu = 2;
    const double vl = 0, vu = 0, abstol = 0;
    int m = 0, nsplit = 0;
    Eigen::VectorXd w(n);
    std::vector<int> iblock(n), isplit(n), iwork(3 * n);
    std::vector<double> work2(4 * n);
    dstebz_(&range, &order, &n, &vl, &vu, &il, &iu, &abstol, d.data(), e.data(), &m, &nsplit, w.data(),
            iblock.data(), isplit.data(), work2.data(), iwork.data(), &info);
    if (info != 0 || m < 2) throw Error(ErrorCode::NoConvergence, "dstebz failed");
    return {w[0], w[1]};
}

}  // namespace

SectorLow sector_lowest(const Eigen::MatrixXd& H) {
    const int n = int(H.rows());
    SectorLow out;
    if (n == 1) {
        out.e0 = H(0, 0);
        out.e1 = std::numeric_limits<double>::infinity();
        out.v0 = Eigen::VectorXd::Ones(1);
        return out;
    }
    std::tie(out.e0, out.e1) = lowest_eigenvalues(H);

    // inverse iteration just below e0; converges by (shift distance)/(e1 - e0) per solve
    const double scale = 1.0 + std::abs(out.e0);
    const Ldlt f = bunch_kaufman(H, out.e0 - 1e-9 * scale);
    if (f.info > 0) throw Error(ErrorCode::SingularMatrix, "shifted sector matrix is singular");
    Eigen::VectorXd v(n);
    for (int k = 0; k < n; ++k) v[k] = 1.0 + 0.25 * std::sin(0.7 * k + 0.3);
    v.normalize();
    const char uplo = 'L';
    const int one = 1;
    double res = 0.0;
    for (int it = 0; it < 8; ++it) {
        int info = 0;
        dsytrs_(&uplo, &n, &one, f.a.data(), &n, f.ipiv.data(), v.data(), &n, &info);
        if (info != 0) throw Error(ErrorCode::SingularMatrix, "dsytrs failed");
        v.normalize();
        res = (H * v - out.e0 * v).norm();
        if (res < 1e-11 * scale) break;
    }
    if (!(res < 1e-9)) throw Error(ErrorCode::NoConvergence, "ED eigenvector residual above 1e-9");
    out.v0 = v;
    return out;
}

int count_below(const Eigen::MatrixXd& H, double x) {
    const Ldlt f = bunch_kaufman(H, x);
    const int n = int(H.rows());
    // Sylvester: inertia of D equals inertia of H - x
    int neg = 0;
    for (int k = 0; k < n;) {
        if (f.ipiv[k] > 0) {
            if (f.a(k, k) < 0) ++neg;
            k += 1;
        } else {
            const double a = f.a(k, k), c = f.a(k + 1, k + 1), b = f.a(k + 1, k);
            const double det = a * c - b * b;
            if (det < 0)
                neg += 1;
            else if (a + c < 0)
                neg += 2;
            k += 2;
        }
    }
    return neg;
}

GroundStateVector ground_state(const ChainParams& p, int cap) {
    validate(p);
    if (p.L > cap) throw Error(ErrorCode::SizeCap, "L = " + std::to_string(p.L) + " above the ED cap");
    int predicted = p.L / 2;
    try {
        const Regime r = classify_regime(p);
        predicted = r.N;
    } catch (const Error&) {
    }

    std::vector<SectorLow> lows(p.L + 1);
    std::vector<bool> done(p.L + 1, false);
    lows[predicted] = sector_lowest(build_hamiltonian_block(p, predicted, cap));
    done[predicted] = true;
    const double threshold = lows[predicted].e0 + 1e-10;
    for (int n = 0; n <= p.L; ++n) {
        if (done[n]) continue;
        const Eigen::MatrixXd H = build_hamiltonian_block(p, n, cap);
        if (count_below(H, threshold) > 0) {
            lows[n] = sector_lowest(H);
            done[n] = true;
        }
    }
    int best = predicted;
    for (int n = 0; n <= p.L; ++n)
        if (done[n] && lows[n].e0 < lows[best].e0) best = n;
    double second = lows[best].e1;
    for (int n = 0; n <= p.L; ++n)
        if (done[n] && n != best) second = std::min(second, lows[n].e0);

    GroundStateVector g;
    g.energy = lows[best].e0;
    g.vector = lows[best].v0;
    g.sector = best;
    g.gap = second - g.energy;
    if (g.gap < 1e-10)
        throw Error(ErrorCode::DegenerateGroundState,
                    "two lowest levels within 1e-10 (sector " + std::to_string(best) + ")");
    if (best != predicted)
        g.warnings.push_back("ED ground state in sector " + std::to_string(best) + ", classification predicts " +
                             std::to_string(predicted));
    return g;
}

EdOverlap ed_overlap(const ChainParams& p1, const ChainParams& p2, int cap) {
    if (p1.L != p2.L) throw Error(ErrorCode::Domain, "ED overlap needs the same L");
    const GroundStateVector a = ground_state(p1, cap);
    const GroundStateVector b = ground_state(p2, cap);
    EdOverlap out;
    out.sector1 = a.sector;
    out.sector2 = b.sector;
    out.warnings = a.warnings;
    out.warnings.insert(out.warnings.end(), b.warnings.begin(), b.warnings.end());
    if (a.sector != b.sector) {
        out.sector_mismatch = true;
        return out;
    }
    const double d = a.vector.dot(b.vector);
    out.value = d * d / (a.vector.squaredNorm() * b.vector.squaredNorm());
    return out;
}

}  // namespace xxz
