#ifndef GMAS_DYNAMICS_HPP
#define GMAS_DYNAMICS_HPP

#include "gmas/network.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmas {

/// Cached matrices for repeated evaluation of dx/dt = Σ_{i→j} k_ij x^{y~_i} (y_j - y_i).
class RhsEvaluator {
public:
    RhsEvaluator(const GeneralizedNetwork& net, std::span<const double> rates);

    std::size_t dim() const { return static_cast<std::size_t>(y_.rows()); }
    /// Edge sum, cross-checked against Y A_k x^Y~ (1e-12 relative to the largest term).
    Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;
    Eigen::VectorXd edge_sum(const Eigen::VectorXd& x) const;
    Eigen::VectorXd matrix_form(const Eigen::VectorXd& x) const;
    /// Largest |k_ij x^{y~_i} (y_j - y_i)_s| over edges and species.
    double term_scale(const Eigen::VectorXd& x) const;

private:
    Eigen::MatrixXd y_;
    Eigen::MatrixXd y_kin_;
    Eigen::MatrixXd a_;
    Eigen::MatrixXd reactions_;  // n x |E|, columns y_j - y_i
    std::vector<std::size_t> sources_;
    std::vector<double> rates_;
};

std::vector<double> rhs(const GeneralizedNetwork& net, std::span<const double> rates, std::span<const double> x);
std::vector<double> rhs_matrix_form(const GeneralizedNetwork& net, std::span<const double> rates,
                                    std::span<const double> x);

struct IntegrateOptions {
    double rtol = 1e-8;
    double atol = 1e-12;
    double positivity_floor = 1e-12;
    double divergence_bound = 1e12;
    std::size_t max_steps = 1'000'000;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;

    const std::vector<double>& final_state() const { return states.back(); }
};

class IntegrationError : public std::runtime_error {
public:
    enum class Kind { StateCollapse, Divergence, StepLimit };
    IntegrationError(Kind kind, const std::string& message, Trajectory partial)
        : std::runtime_error(message), kind_(kind), partial_(std::move(partial)) {}
    Kind kind() const { return kind_; }
    /// Everything accepted before the failure; the last state is the last good one.
    const Trajectory& partial() const { return partial_; }

private:
    Kind kind_;
    Trajectory partial_;
};

std::string kind_name(IntegrationError::Kind kind);

/// Dormand-Prince 5(4) with step-size control. A step is rejected whenever a
/// stage or the result has a coordinate <= positivity_floor; states are never clipped.
Trajectory integrate(const GeneralizedNetwork& net, std::span<const double> rates, std::span<const double> x0,
                     double t_end, const IntegrateOptions& opts = {});

/// max_t |W (x(t) - x(0))|_inf with W an orthonormal basis of S⊥.
double conservation_residual(const GeneralizedNetwork& net, const Trajectory& traj);

/// Header "t,<species...>", one row per stored state, 17 significant digits.
void write_csv(std::ostream& out, const std::vector<std::string>& species, const Trajectory& traj);

}  // namespace gmas

#endif  // GMAS_DYNAMICS_HPP
