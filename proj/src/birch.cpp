#include "gmas/birch.hpp"

#include "gmas/balance.hpp"
#include "gmas/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gmas {

namespace {

std::string fmt(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

Eigen::MatrixXd orthonormalize_rows(const Eigen::MatrixXd& m, const char* what) {
    const Eigen::Index k = m.rows();
    const Eigen::Index n = m.cols();
    if (k == 0) return Eigen::MatrixXd(0, n);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m.transpose());
    qr.setThreshold(1e-12);
    if (qr.rank() != k) throw SolverError(SolverError::Kind::DimensionMismatch, std::string(what) + " rows are dependent");
    Eigen::HouseholderQR<Eigen::MatrixXd> thin(m.transpose());
    return (thin.householderQ() * Eigen::MatrixXd::Identity(n, k)).transpose();
}

BirchProblem make_problem(Eigen::MatrixXd w, Eigen::MatrixXd wt, std::span<const double> x0,
                          std::span<const double> x_star) {
    if (x0.size() != x_star.size())
        throw SolverError(SolverError::Kind::DimensionMismatch, "x0 and x* have different lengths");
    if (w.cols() != static_cast<Eigen::Index>(x0.size()) || wt.cols() != static_cast<Eigen::Index>(x0.size()))
        throw SolverError(SolverError::Kind::DimensionMismatch, "basis width does not match the state dimension");
    BirchProblem p{std::move(w), std::move(wt), to_eigen(x0), to_eigen(x_star)};
    require_positive(p.x0, "x0");
    require_positive(p.x_star, "x*");
    return p;
}

Eigen::VectorXd exponents(const BirchProblem& p, const Eigen::VectorXd& lambda) {
    if (lambda.size() != p.Wt.rows())
        throw SolverError(SolverError::Kind::DimensionMismatch, "lambda has the wrong length");
    return p.x_star.array().log().matrix() + p.Wt.transpose() * lambda;
}

double inf_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

bool in_box(const Eigen::VectorXd& x) {
    return (x.array() >= kBoxLow).all() && (x.array() <= kBoxHigh).all();
}

enum class NewtonStatus { Converged, Stalled, Singular };

struct NewtonRun {
    NewtonStatus status = NewtonStatus::Stalled;
    std::size_t iterations = 0;
};

// W and Wt have orthonormal rows, so |J| <= max x; that bound is the scale.
bool singular(const BirchProblem& p, const Eigen::MatrixXd& j, const Eigen::VectorXd& lambda) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
    const auto& s = svd.singularValues();
    const double scale = point_on_manifold(p, lambda).maxCoeff();
    return !(s(s.size() - 1) > 1e-13 * scale);
}

// A few undamped steps below the tolerance, kept only while the residual shrinks.
void polish(const BirchProblem& p, Eigen::VectorXd& lambda, const Eigen::VectorXd& target, Eigen::VectorXd& g) {
    for (int i = 0; i < 3; ++i) {
        const Eigen::MatrixXd j = jacobian_F(p, lambda);
        const Eigen::VectorXd trial = lambda + j.fullPivLu().solve(-g);
        const FEval ft = eval_F(p, trial);
        if (ft.saturated) return;
        const Eigen::VectorXd gt = ft.value - target;
        if (!(inf_norm(gt) < inf_norm(g))) return;
        lambda = trial;
        g = gt;
    }
}

// Damped Newton on F(λ) - target; λ is updated in place.
NewtonRun newton(const BirchProblem& p, Eigen::VectorXd& lambda, const Eigen::VectorXd& target, double tol,
                 std::size_t max_iter) {
    NewtonRun run;
    FEval f = eval_F(p, lambda);
    if (f.saturated) return run;
    Eigen::VectorXd g = f.value - target;
    double phi = g.squaredNorm();
    for (; run.iterations <= max_iter; ++run.iterations) {
        if (inf_norm(g) <= tol) {
            run.status = NewtonStatus::Converged;
            polish(p, lambda, target, g);
            return run;
        }
        if (run.iterations == max_iter) break;
        const Eigen::MatrixXd j = jacobian_F(p, lambda);
        if (singular(p, j, lambda)) {
            run.status = NewtonStatus::Singular;
            return run;
        }
        const Eigen::VectorXd step = j.fullPivLu().solve(-g);

        double alpha = 1.0;
        bool accepted = false;
        for (int halving = 0; halving <= 40; ++halving, alpha *= 0.5) {
            const Eigen::VectorXd trial = lambda + alpha * step;
            const FEval ft = eval_F(p, trial);
            if (ft.saturated) continue;
            const Eigen::VectorXd gt = ft.value - target;
            const double phi_t = gt.squaredNorm();
            if (phi_t <= (1.0 - 2e-4 * alpha) * phi) {
                lambda = trial;
                g = gt;
                phi = phi_t;
                accepted = true;
                break;
            }
        }
        if (!accepted) return run;
    }
    return run;
}

}  // namespace

BirchProblem BirchProblem::from_subspaces(const SubspaceBasis& s, const SubspaceBasis& s_tilde,
                                          std::span<const double> x0, std::span<const double> x_star) {
    return make_problem(orthonormal_rows(orth_complement(s)), orthonormal_rows(orth_complement(s_tilde)), x0,
                        x_star);
}

BirchProblem BirchProblem::from_matrices(const Eigen::MatrixXd& w, const Eigen::MatrixXd& wt,
                                         std::span<const double> x0, std::span<const double> x_star) {
    return make_problem(orthonormalize_rows(w, "W"), orthonormalize_rows(wt, "Wt"), x0, x_star);
}

FEval eval_F(const BirchProblem& p, const Eigen::VectorXd& lambda) {
    Eigen::VectorXd e = exponents(p, lambda);
    FEval out;
    for (Eigen::Index i = 0; i < e.size(); ++i) {
        if (!std::isfinite(e(i)) || std::abs(e(i)) > kExponentClamp) {
            out.saturated = true;
            e(i) = std::isnan(e(i)) ? 0.0 : std::clamp(e(i), -kExponentClamp, kExponentClamp);
        }
    }
    out.value = p.W * e.array().exp().matrix();
    return out;
}

FEval eval_f(const BirchProblem& p, const Eigen::VectorXd& xi) {
    require_positive(xi, "xi");
    return eval_F(p, xi.array().log().matrix());
}

Eigen::VectorXd point_on_manifold(const BirchProblem& p, const Eigen::VectorXd& lambda) {
    return exponents(p, lambda).array().exp().matrix();
}

Eigen::MatrixXd jacobian_F(const BirchProblem& p, const Eigen::VectorXd& lambda) {
    const Eigen::VectorXd x = point_on_manifold(p, lambda);
    return p.W * x.asDiagonal() * p.Wt.transpose();
}

std::string kind_name(SolverError::Kind kind) {
    switch (kind) {
        case SolverError::Kind::DimensionMismatch: return "DimensionMismatch";
        case SolverError::Kind::JacobianSingular: return "JacobianSingular";
        case SolverError::Kind::StepFloorReached: return "StepFloorReached";
        case SolverError::Kind::Saturation: return "Saturation";
        case SolverError::Kind::BoxExit: return "BoxExit";
        case SolverError::Kind::NotVertexBalanced: return "NotVertexBalanced";
        case SolverError::Kind::VerificationFailed: return "VerificationFailed";
    }
    return "Unknown";
}

BirchSolution solve(const BirchProblem& p, const SolveOptions& opts) {
    using Kind = SolverError::Kind;
    if (p.x_star.size() != p.x0.size() || p.W.cols() != p.x0.size() || p.Wt.cols() != p.x0.size())
        throw SolverError(Kind::DimensionMismatch, "inconsistent problem dimensions");
    if (p.d() != p.d_tilde())
        throw SolverError(Kind::DimensionMismatch, "dim S (" + std::to_string(p.n() - p.d()) + ") != dim S~ (" +
                                                       std::to_string(p.n() - p.d_tilde()) + ")");

    const Eigen::VectorXd target = p.W * p.x0;
    const double tol = opts.tol * std::max({inf_norm(target), inf_norm(p.x0), 1e-300});

    BirchSolution sol;
    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.d_tilde()));

    const auto finish = [&](const Eigen::VectorXd& lam) {
        const FEval f = eval_F(p, lam);
        if (f.saturated) throw SolverError(Kind::Saturation, "exponent left the representable range at the solution");
        sol.lambda = lam;
        sol.x = point_on_manifold(p, lam);
        sol.residual_affine = inf_norm(p.W * (sol.x - p.x0));
        const Eigen::VectorXd shift = p.Wt.transpose() * lam;
        sol.residual_manifold =
            inf_norm((sol.x.array() / p.x_star.array()).log().matrix() - shift);
        sol.manifold_exact = sol.residual_manifold <= 1e-12 * std::max(1.0, inf_norm(shift));
        if (!(sol.residual_affine <= tol))
            throw SolverError(Kind::VerificationFailed,
                              "affine residual " + fmt(sol.residual_affine) + " exceeds tolerance");
        return sol;
    };

    if (p.d() == 0 || inf_norm(target - p.W * p.x_star) <= tol) return finish(lambda);

    if (opts.initial_lambda) {
        if (opts.initial_lambda->size() != lambda.size())
            throw SolverError(Kind::DimensionMismatch, "initial lambda has the wrong length");
        lambda = *opts.initial_lambda;
    }
    const NewtonRun direct = newton(p, lambda, target, tol, opts.max_newton_iterations);
    sol.newton_iterations += direct.iterations;
    if (direct.status == NewtonStatus::Converged) return finish(lambda);

    // Continuation from λ = 0 at δ = 0, where F(0) = W x* exactly.
    sol.used_homotopy = true;
    lambda.setZero();
    const Eigen::VectorXd w_gap = p.W * (p.x0 - p.x_star);
    double delta = 0.0;
    double h = opts.initial_step;
    while (delta < 1.0) {
        const Eigen::MatrixXd j = jacobian_F(p, lambda);
        if (singular(p, j, lambda))
            throw SolverError(Kind::JacobianSingular,
                              "Jacobian singular at delta = " + fmt(delta) +
                                  " (the sign condition is likely violated)");
        const Eigen::VectorXd tangent = j.fullPivLu().solve(w_gap);

        const double next = std::min(1.0, delta + h);
        Eigen::VectorXd trial = lambda + (next - delta) * tangent;
        const Eigen::VectorXd step_target = p.W * (next * p.x0 + (1.0 - next) * p.x_star);
        const double step_tol = next < 1.0 ? std::max(tol, 1e-8 * std::max(1.0, inf_norm(step_target))) : tol;
        const NewtonRun corr = newton(p, trial, step_target, step_tol, 20);
        sol.newton_iterations += corr.iterations;

        if (corr.status != NewtonStatus::Converged) {
            h *= 0.5;
            if (h < opts.step_floor)
                throw SolverError(Kind::StepFloorReached,
                                  "continuation step fell below " + fmt(opts.step_floor) +
                                      " at delta = " + fmt(delta));
            continue;
        }
        if (!in_box(point_on_manifold(p, trial)))
            throw SolverError(Kind::BoxExit, "iterate left [1e-12, 1e12]^n at delta = " + fmt(next));
        lambda = trial;
        delta = next;
        ++sol.homotopy_steps;
        h = std::min(opts.initial_step, 2.0 * h);
    }
    return finish(lambda);
}

BirchSolution intersect_class_with_balanced_set(const GeneralizedNetwork& net, std::span<const double> rates,
                                                std::span<const double> x_star, std::span<const double> x0,
                                                const SolveOptions& opts) {
    constexpr double kVerifyTol = 1e-7;
    if (!is_vertex_balanced(net, rates, x_star, kVerifyTol).balanced)
        throw SolverError(SolverError::Kind::NotVertexBalanced, "x* is not a vertex-balanced steady state");
    const auto p = BirchProblem::from_subspaces(stoich_subspace(net), kinetic_subspace(net), x0, x_star);
    auto sol = solve(p, opts);
    const auto x = to_std(sol.x);
    if (!is_vertex_balanced(net, rates, x, kVerifyTol).balanced)
        throw SolverError(SolverError::Kind::VerificationFailed, "solution is not vertex-balanced");
    return sol;
}

}  // namespace gmas
