#ifndef GMAS_BIRCH_HPP
#define GMAS_BIRCH_HPP

#include "gmas/linalg.hpp"
#include "gmas/network.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace gmas {

/// Intersection problem (x0 + S) ∩ (x* ∘ exp S~⊥) with S = Ker W and S~⊥ = Img Wt^T.
/// Both W and Wt are stored with orthonormal rows.
struct BirchProblem {
    Eigen::MatrixXd W;   // d x n
    Eigen::MatrixXd Wt;  // d~ x n
    Eigen::VectorXd x0;
    Eigen::VectorXd x_star;

    std::size_t n() const { return static_cast<std::size_t>(x0.size()); }
    std::size_t d() const { return static_cast<std::size_t>(W.rows()); }
    std::size_t d_tilde() const { return static_cast<std::size_t>(Wt.rows()); }

    static BirchProblem from_subspaces(const SubspaceBasis& s, const SubspaceBasis& s_tilde,
                                       std::span<const double> x0, std::span<const double> x_star);
    /// Rows of w and wt span S⊥ and S~⊥; they must be independent but need not be orthonormal.
    static BirchProblem from_matrices(const Eigen::MatrixXd& w, const Eigen::MatrixXd& wt,
                                      std::span<const double> x0, std::span<const double> x_star);
};

inline constexpr double kExponentClamp = 700.0;
inline constexpr double kBoxLow = 1e-12;
inline constexpr double kBoxHigh = 1e12;

struct FEval {
    Eigen::VectorXd value;
    bool saturated = false;  // some exponent was clamped at ±700
};

/// W (x* ∘ exp(Wt^T λ)), evaluated with exponents log x*_i + <wt^i, λ>.
FEval eval_F(const BirchProblem& p, const Eigen::VectorXd& lambda);
/// eval_F at λ = log ξ; ξ must be positive.
FEval eval_f(const BirchProblem& p, const Eigen::VectorXd& xi);
/// W diag(x(λ)) Wt^T.
Eigen::MatrixXd jacobian_F(const BirchProblem& p, const Eigen::VectorXd& lambda);
/// x* ∘ exp(Wt^T λ), unclamped.
Eigen::VectorXd point_on_manifold(const BirchProblem& p, const Eigen::VectorXd& lambda);

class SolverError : public std::runtime_error {
public:
    enum class Kind {
        DimensionMismatch,
        JacobianSingular,
        StepFloorReached,
        Saturation,
        BoxExit,
        NotVertexBalanced,
        VerificationFailed,
    };
    SolverError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

std::string kind_name(SolverError::Kind kind);

struct SolveOptions {
    double tol = 1e-10;  // relative to max(|W x0|_inf, |x0|_inf)
    std::optional<Eigen::VectorXd> initial_lambda;
    std::size_t max_newton_iterations = 100;
    double initial_step = 0.1;
    double step_floor = 1e-6;
};

struct BirchSolution {
    Eigen::VectorXd x;
    Eigen::VectorXd lambda;
    double residual_affine = 0.0;    // |W (x - x0)|_inf
    double residual_manifold = 0.0;  // |log(x / x*) - Wt^T λ|_inf
    bool manifold_exact = false;
    std::size_t homotopy_steps = 0;
    std::size_t newton_iterations = 0;
    bool used_homotopy = false;
};

/// Damped Newton on F(λ) = W x0 from the initial λ (default 0); falls back to
/// continuation along δ ↦ δ x0 + (1 - δ) x* when Newton stalls. Assumes
/// dim S = dim S~ and σ(S) ⊆ cl σ(S~); the sign condition is not re-checked.
BirchSolution solve(const BirchProblem& p, const SolveOptions& opts = {});

/// The vertex-balanced steady state in x0 + S, given one vertex-balanced point x*.
BirchSolution intersect_class_with_balanced_set(const GeneralizedNetwork& net, std::span<const double> rates,
                                                std::span<const double> x_star, std::span<const double> x0,
                                                const SolveOptions& opts = {});

}  // namespace gmas

#endif  // GMAS_BIRCH_HPP
