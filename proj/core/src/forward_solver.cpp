#include "clab/forward_solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>
#include <string>

#include "clab/errors.hpp"
#include "clab/frac_ops.hpp"

namespace clab::ucp {

namespace {

// Long double keeps solve roundoff well below the 1e-12 support tolerance used downstream.
using Real = long double;
using SpMat = Eigen::SparseMatrix<Real>;
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

struct Mesh {
    std::size_t n = 1;
    std::size_t m = 0;      // interior nodes per axis
    std::size_t total = 0;  // m^n
    double h = 0.0;
    double lo = 0.0;

    void unflatten(std::size_t flat, std::vector<std::size_t>& idx) const {
        for (std::size_t a = n; a-- > 0;) {
            idx[a] = flat % m;
            flat /= m;
        }
    }
    // interior index i -> coordinate of node i + 1
    double coord(std::size_t i) const { return lo + h * static_cast<double>(i + 1); }
};

Mesh make_mesh(const ForwardProblem& p) {
    if (p.cells < 2) throw DomainError("forward solver needs at least two cells per axis");
    Mesh mesh;
    mesh.n = static_cast<std::size_t>(p.params.n);
    mesh.m = p.cells - 1;
    mesh.total = 1;
    for (std::size_t a = 0; a < mesh.n; ++a) mesh.total *= mesh.m;
    mesh.h = 2.0 * p.params.l / static_cast<double>(p.cells);
    mesh.lo = -p.params.l;
    return mesh;
}

std::size_t step_count(const ForwardProblem& p, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
    const double K = p.params.T / dt;
    const auto k = static_cast<std::size_t>(std::llround(K));
    if (k < 1 || std::abs(K - static_cast<double>(k)) > 1e-9 * K) {
        throw DomainError("T must be an integer multiple of dt");
    }
    return k;
}

// -Delta_h - l1_h(t) on the interior with Dirichlet data.
SpMat spatial_operator(const ForwardProblem& p, const Mesh& mesh, double t) {
    std::vector<Eigen::Triplet<Real>> trip;
    trip.reserve(mesh.total * (2 * mesh.n + 1));
    std::vector<std::size_t> idx(mesh.n);
    std::vector<double> y(mesh.n);
    const Real h = 2.0L * static_cast<Real>(p.params.l) / static_cast<Real>(p.cells);
    const Real h2 = h * h;
    std::vector<std::size_t> stride(mesh.n, 1);
    for (std::size_t a = mesh.n - 1; a > 0; --a) stride[a - 1] = stride[a] * mesh.m;
    for (std::size_t r = 0; r < mesh.total; ++r) {
        mesh.unflatten(r, idx);
        for (std::size_t a = 0; a < mesh.n; ++a) y[a] = mesh.coord(idx[a]);
        Real diag = 2.0L * static_cast<Real>(mesh.n) / h2;
        if (p.l1.c) diag -= p.l1.c(t, y);
        trip.emplace_back(static_cast<int>(r), static_cast<int>(r), diag);
        for (std::size_t a = 0; a < mesh.n; ++a) {
            const Real b = p.l1.b ? p.l1.b(t, y, a) : 0.0;
            if (idx[a] > 0) {
                trip.emplace_back(static_cast<int>(r), static_cast<int>(r - stride[a]), -1.0L / h2 + b / (2.0L * h));
            }
            if (idx[a] + 1 < mesh.m) {
                trip.emplace_back(static_cast<int>(r), static_cast<int>(r + stride[a]), -1.0L / h2 - b / (2.0L * h));
            }
        }
    }
    SpMat A(static_cast<int>(mesh.total), static_cast<int>(mesh.total));
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

// a0 * sum_{j=1}^{k-1} b_j (u^{k-j} - u^{k-j-1}) - a0 u^{k-1}, i.e. the known part of
// the L1 sum at step k moved to the right-hand side with a minus sign.
Vec history(const std::vector<Vec>& u, const std::vector<Real>& b, std::size_t k, Real a0) {
    Vec acc = -u[k - 1];
    for (std::size_t j = 1; j < k; ++j) acc += b[j] * (u[k - j] - u[k - j - 1]);
    return a0 * acc;
}

double forcing_at(const ForwardProblem& p, const Mesh& mesh, std::size_t k, double t, std::size_t r,
                  std::vector<std::size_t>& idx, std::vector<double>& y) {
    if (!p.forcing.empty()) return p.forcing[k][r];
    if (!p.forcing_fn) return 0.0;
    mesh.unflatten(r, idx);
    for (std::size_t a = 0; a < mesh.n; ++a) y[a] = mesh.coord(idx[a]);
    return p.forcing_fn(t, y);
}

Field assemble(const ForwardProblem& p, const Mesh& mesh, double dt, const std::vector<Vec>& u) {
    const GridSpec grid = forward_grid(p, dt);
    Field out(grid);
    std::vector<std::size_t> idx(mesh.n);
    const std::size_t per_step = grid.stride(0);
    for (std::size_t k = 0; k < u.size(); ++k) {
        for (std::size_t r = 0; r < mesh.total; ++r) {
            mesh.unflatten(r, idx);
            std::size_t flat = k * per_step;
            for (std::size_t a = 0; a < mesh.n; ++a) flat += (idx[a] + 1) * grid.stride(1 + a);
            out[flat] = static_cast<double>(u[k][static_cast<Eigen::Index>(r)]);
        }
    }
    return out;
}

std::vector<Real> weights(double alpha, std::size_t count) {
    const auto w = frac::l1_weights(alpha, count);
    return {w.begin(), w.end()};
}

}  // namespace

GridSpec forward_grid(const ForwardProblem& problem, double dt) {
    const std::size_t K = step_count(problem, dt);
    std::vector<Axis> axes{Axis::time(K + 1, dt)};
    const double h = 2.0 * problem.params.l / static_cast<double>(problem.cells);
    for (int a = 0; a < problem.params.n; ++a) axes.push_back(Axis::space(problem.cells + 1, h, -problem.params.l));
    return GridSpec(axes);
}

std::size_t interior_size(const ForwardProblem& problem) { return make_mesh(problem).total; }

Field solve_forward(const ForwardProblem& problem, double dt) {
    problem.params.validate();
    const Mesh mesh = make_mesh(problem);
    const std::size_t K = step_count(problem, dt);
    if (!problem.forcing.empty()) {
        if (problem.forcing.size() != K + 1) throw DomainError("forcing table needs one row per time level");
        for (const auto& row : problem.forcing) {
            if (row.size() != mesh.total) throw DomainError("forcing row size does not match the interior");
        }
    }
    if (!problem.initial.empty() && problem.initial.size() != mesh.total) {
        throw DomainError("initial state size does not match the interior");
    }
    const double alpha = problem.params.alpha;
    const Real a0 = std::pow(static_cast<Real>(dt), static_cast<Real>(-alpha)) / std::tgamma(2.0L - alpha);
    const auto b = weights(alpha, K + 1);

    SpMat I(static_cast<int>(mesh.total), static_cast<int>(mesh.total));
    I.setIdentity();
    Eigen::SparseLU<SpMat> lu;
    auto factor = [&](double t) {
        SpMat A = spatial_operator(problem, mesh, t) + a0 * I;
        A.makeCompressed();
        lu.compute(A);
        if (lu.info() != Eigen::Success) {
            throw SolveFailure("step matrix factorization failed at t = " + std::to_string(t));
        }
    };
    if (!problem.l1.time_dependent) factor(0.0);

    std::vector<Vec> u(K + 1, Vec::Zero(static_cast<Eigen::Index>(mesh.total)));
    if (!problem.initial.empty()) {
        for (std::size_t r = 0; r < mesh.total; ++r) u[0][static_cast<Eigen::Index>(r)] = problem.initial[r];
    }
    std::vector<std::size_t> idx(mesh.n);
    std::vector<double> y(mesh.n);
    for (std::size_t k = 1; k <= K; ++k) {
        const double t = dt * static_cast<double>(k);
        if (problem.l1.time_dependent) factor(t);
        Vec rhs = -history(u, b, k, a0);
        for (std::size_t r = 0; r < mesh.total; ++r) {
            rhs[static_cast<Eigen::Index>(r)] += forcing_at(problem, mesh, k, t, r, idx, y);
        }
        u[k] = lu.solve(rhs);
        if (lu.info() != Eigen::Success || !u[k].allFinite()) {
            throw SolveFailure("linear solve failed at step " + std::to_string(k));
        }
    }
    return assemble(problem, mesh, dt, u);
}

std::vector<std::vector<double>> discrete_forcing(const ForwardProblem& problem, double dt, const Field& target) {
    const Mesh mesh = make_mesh(problem);
    const std::size_t K = step_count(problem, dt);
    const GridSpec grid = forward_grid(problem, dt);
    if (!(target.grid() == grid)) throw DomainError("target must live on forward_grid(problem, dt)");
    const double alpha = problem.params.alpha;
    const Real a0 = std::pow(static_cast<Real>(dt), static_cast<Real>(-alpha)) / std::tgamma(2.0L - alpha);
    const auto b = weights(alpha, K + 1);

    std::vector<Vec> u(K + 1, Vec::Zero(static_cast<Eigen::Index>(mesh.total)));
    std::vector<std::size_t> idx(mesh.n);
    for (std::size_t k = 0; k <= K; ++k) {
        for (std::size_t r = 0; r < mesh.total; ++r) {
            mesh.unflatten(r, idx);
            std::size_t flat = k * grid.stride(0);
            for (std::size_t a = 0; a < mesh.n; ++a) flat += (idx[a] + 1) * grid.stride(1 + a);
            u[k][static_cast<Eigen::Index>(r)] = target[flat].real();
        }
    }
    std::vector<std::vector<double>> f(K + 1, std::vector<double>(mesh.total, 0.0));
    SpMat A = spatial_operator(problem, mesh, 0.0);
    for (std::size_t k = 1; k <= K; ++k) {
        const double t = dt * static_cast<double>(k);
        if (problem.l1.time_dependent) A = spatial_operator(problem, mesh, t);
        const Vec r = a0 * u[k] + history(u, b, k, a0) + A * u[k];
        for (std::size_t m = 0; m < mesh.total; ++m) f[k][m] = static_cast<double>(r[static_cast<Eigen::Index>(m)]);
    }
    return f;
}

}  // namespace clab::ucp
