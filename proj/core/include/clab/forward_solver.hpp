#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "clab/field.hpp"
#include "clab/params.hpp"

namespace clab::ucp {

/// l1(t, y; grad) u = sum_j b_j(t, y) d_j u + c(t, y) u. Empty functions mean zero.
struct LowerOrder {
    std::function<double(double, std::span<const double>, std::size_t)> b;
    std::function<double(double, std::span<const double>)> c;
    bool time_dependent = false;
};

/// d_t^alpha u - Delta u = l1 u + f on the box [-l, l]^n, homogeneous Dirichlet data.
struct ForwardProblem {
    ProblemParams params;
    /// Intervals per axis; nodes are -l + i * 2l / cells, i = 0..cells.
    std::size_t cells = 64;
    LowerOrder l1;
    /// forcing[k][m] at step k and interior node m (row-major over the interior). Optional.
    std::vector<std::vector<double>> forcing;
    /// Used when the table is empty. Optional.
    std::function<double(double, std::span<const double>)> forcing_fn;
    /// Interior values at t = 0; empty means zero history.
    std::vector<double> initial;
};

/// Grid (t_0..t_K, y_1..y_n) with t_k = k dt, K = round(T / dt), boundary nodes included.
GridSpec forward_grid(const ForwardProblem& problem, double dt);

/// Number of interior nodes, (cells - 1)^n.
std::size_t interior_size(const ForwardProblem& problem);

/// L1 in time with backward-Euler coupling, centred second-order differences in
/// space. Throws SolveFailure if a step matrix cannot be factorized.
Field solve_forward(const ForwardProblem& problem, double dt);

/// Forcing table that makes the discrete scheme reproduce target exactly:
/// f^k = L1 history of target + (-Delta_h - l1_h) target^k at interior nodes.
std::vector<std::vector<double>> discrete_forcing(const ForwardProblem& problem, double dt, const Field& target);

}  // namespace clab::ucp
