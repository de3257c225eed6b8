#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "xxz/model.hpp"

namespace xxz {

// Sz sector with n_down down spins; bit k set = spin k+1 down.
struct SectorBasis {
    int L = 0;
    int n_down = 0;
    std::vector<std::uint32_t> states;  // ascending

    static SectorBasis make(int L, int n_down);
    std::size_t dim() const { return states.size(); }
    // position of a pattern, -1 if absent
    long index(std::uint32_t s) const;
};

inline constexpr int kEdCap = 16;

Eigen::MatrixXd build_hamiltonian_block(const ChainParams& p, int n_down, int cap = kEdCap);

struct GroundStateVector {
    double energy = 0.0;
    Eigen::VectorXd vector;
    int sector = -1;
    double gap = 0.0;  // to the next global level
    std::vector<std::string> warnings;
};

// Lowest two eigenpairs of one sector: tridiagonal reduction, bisection, inverse iteration.
struct SectorLow {
    double e0 = 0.0;
    double e1 = 0.0;  // +inf for a 1x1 block
    Eigen::VectorXd v0;
};
SectorLow sector_lowest(const Eigen::MatrixXd& H);

// Number of eigenvalues of H below x, from an LDL^T factorization.
int count_below(const Eigen::MatrixXd& H, double x);

GroundStateVector ground_state(const ChainParams& p, int cap = kEdCap);

struct EdOverlap {
    double value = 0.0;
    bool sector_mismatch = false;
    int sector1 = -1, sector2 = -1;
    std::vector<std::string> warnings;
};
EdOverlap ed_overlap(const ChainParams& p1, const ChainParams& p2, int cap = kEdCap);

}  // namespace xxz
