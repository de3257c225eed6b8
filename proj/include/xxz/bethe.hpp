#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xxz/model.hpp"

namespace xxz {

struct BoundaryRootInfo {
    Side side = Side::none;
    cplx anchor;           // -i(zeta/2 + xi) = delta pi/2 - i a
    cplx offset;           // root = anchor + offset, offset = -i epsilon
    cplx epsilon_corr;     // epsilon
    bool clamped = false;  // |epsilon| <= clamp floor
    cplx value() const { return anchor + offset; }
};

struct BetheRoots {
    std::vector<double> real_roots;
    std::optional<BoundaryRootInfo> boundary_root;
    double residual_max = 0.0;
    std::vector<int> quantum_numbers;
    Regime regime;
    ChainParams params;         // as requested
    ChainParams solved_params;  // spin-reversed image for case B'
    bool spin_reversed = false;
    int iterations = 0;
    std::vector<std::string> warnings;

    int N() const { return int(real_roots.size()) + (boundary_root ? 1 : 0); }
    std::vector<Root> roots() const;
};

struct SolverOptions {
    double tol = 1e-11;
    int max_iter = 200;
    double clamp_floor = 1e-13;
};

BetheRoots solve_ground_state(const ChainParams& params, const Regime& regime, const SolverOptions& opts = {});
BetheRoots solve_ground_state(const ChainParams& params, const SolverOptions& opts = {});

// Max |a(lambda_j) - 1| with an evaluator independent of the solver's linearization.
double bethe_residual(const std::vector<Root>& roots, const ChainParams& p);

double energy(const BetheRoots& roots, const ChainParams& params);
double energy(const std::vector<Root>& roots, const ChainParams& params);

double density_rho(double lambda, const Nome& nome);
// Cumulative density from 0 to lambda, trapezoid on a fine grid.
double density_integral(double lambda, const Nome& nome, int nodes = 4096);

// rho(lambda) + int K(lambda - b) rho(b) db - p'(lambda)/pi, periodic trapezoid on (-pi/2, pi/2)
double lieb_residual(double lambda, double zeta, int nodes = 512);

cplx transfer_eigenvalue(cplx nu, const std::vector<Root>& roots, const ChainParams& params);

}  // namespace xxz
