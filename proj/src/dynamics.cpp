#include "gmas/dynamics.hpp"

#include "gmas/graph.hpp"
#include "gmas/linalg.hpp"
#include "gmas/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace gmas {

namespace {

std::string fmt(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

}  // namespace

RhsEvaluator::RhsEvaluator(const GeneralizedNetwork& net, std::span<const double> rates)
    : y_(to_eigen(stoich_matrix(net))),
      y_kin_(to_eigen(kinetic_matrix(net))),
      a_(laplacian(net, rates)),
      reactions_(y_.rows(), static_cast<Eigen::Index>(net.edge_count())),
      rates_(rates.begin(), rates.end()) {
    for (std::size_t k = 0; k < net.edge_count(); ++k) {
        const auto& e = net.edges()[k];
        reactions_.col(static_cast<Eigen::Index>(k)) =
            y_.col(static_cast<Eigen::Index>(e.tgt)) - y_.col(static_cast<Eigen::Index>(e.src));
        sources_.push_back(e.src);
    }
}

Eigen::VectorXd RhsEvaluator::edge_sum(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd mono = monomials(y_kin_, x);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(y_.rows());
    for (std::size_t k = 0; k < rates_.size(); ++k)
        out += rates_[k] * mono(static_cast<Eigen::Index>(sources_[k])) * reactions_.col(static_cast<Eigen::Index>(k));
    return out;
}

Eigen::VectorXd RhsEvaluator::matrix_form(const Eigen::VectorXd& x) const {
    return y_ * (a_ * monomials(y_kin_, x));
}

double RhsEvaluator::term_scale(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd mono = monomials(y_kin_, x);
    double scale = 0.0;
    for (std::size_t k = 0; k < rates_.size(); ++k) {
        const auto col = reactions_.col(static_cast<Eigen::Index>(k));
        if (col.size() == 0) continue;
        scale = std::max(scale, rates_[k] * mono(static_cast<Eigen::Index>(sources_[k])) * col.cwiseAbs().maxCoeff());
    }
    return scale;
}

Eigen::VectorXd RhsEvaluator::operator()(const Eigen::VectorXd& x) const {
    require_positive(x, "state");
    const Eigen::VectorXd a = edge_sum(x);
    const Eigen::VectorXd b = matrix_form(x);
    const double diff = a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
    if (diff > 1e-12 * term_scale(x) && diff > std::numeric_limits<double>::min())
        throw std::logic_error("edge-sum and matrix forms of the right-hand side disagree");
    return a;
}

namespace {

void check_state_length(const GeneralizedNetwork& net, std::span<const double> x) {
    if (x.size() != net.species_count())
        throw std::invalid_argument("state has " + std::to_string(x.size()) + " entries, expected " +
                                    std::to_string(net.species_count()));
}

}  // namespace

std::vector<double> rhs(const GeneralizedNetwork& net, std::span<const double> rates, std::span<const double> x) {
    check_rates(net, rates);
    check_state_length(net, x);
    return to_std(RhsEvaluator(net, rates)(to_eigen(x)));
}

std::vector<double> rhs_matrix_form(const GeneralizedNetwork& net, std::span<const double> rates,
                                    std::span<const double> x) {
    check_rates(net, rates);
    check_state_length(net, x);
    const Eigen::VectorXd v = to_eigen(x);
    require_positive(v, "state");
    return to_std(RhsEvaluator(net, rates).matrix_form(v));
}

std::string kind_name(IntegrationError::Kind kind) {
    switch (kind) {
        case IntegrationError::Kind::StateCollapse: return "StateCollapse";
        case IntegrationError::Kind::Divergence: return "Divergence";
        case IntegrationError::Kind::StepLimit: return "StepLimit";
    }
    return "Unknown";
}

namespace {

// Dormand-Prince 5(4).
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr std::array<double, 7> kB5{35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr std::array<double, 7> kB4{5179.0 / 57600,    0.0,          7571.0 / 16695, 393.0 / 640,
                                    -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

bool above_floor(const Eigen::VectorXd& x, double floor) {
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (!(x(i) > floor)) return false;
    return true;
}

}  // namespace

Trajectory integrate(const GeneralizedNetwork& net, std::span<const double> rates, std::span<const double> x0,
                     double t_end, const IntegrateOptions& opts) {
    using Kind = IntegrationError::Kind;
    check_rates(net, rates);
    check_state_length(net, x0);
    if (!(t_end > 0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be positive and finite");
    if (!(opts.rtol > 0) || !(opts.atol > 0)) throw std::invalid_argument("tolerances must be positive");

    const RhsEvaluator f(net, rates);
    Eigen::VectorXd x = to_eigen(x0);
    require_positive(x, "x0");

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(to_std(x));
    if (x.size() == 0) {
        traj.times.push_back(t_end);
        traj.states.push_back({});
        return traj;
    }

    double t = 0.0;
    std::array<Eigen::VectorXd, 7> k;
    k[0] = f(x);
    double h = std::min(t_end, 1e-3 * std::max(1.0, t_end));
    const double fnorm = k[0].cwiseAbs().maxCoeff();
    if (fnorm > 0) h = std::min(h, 0.01 * std::max(x.cwiseAbs().maxCoeff(), opts.atol) / fnorm);

    while (t < t_end) {
        if (traj.accepted_steps + traj.rejected_steps >= opts.max_steps)
            throw IntegrationError(Kind::StepLimit, "step limit reached at t = " + fmt(t), traj);
        h = std::min(h, t_end - t);
        const double h_min = 1e-14 * std::max(1.0, std::abs(t));
        if (h < h_min) {
            throw IntegrationError(Kind::StateCollapse,
                                   "step size underflow at t = " + fmt(t) +
                                       ": trajectory approaches the boundary of the positive orthant",
                                   traj);
        }

        bool positive = true;
        Eigen::VectorXd stage;
        for (int s = 1; s < 7 && positive; ++s) {
            stage = x;
            for (int j = 0; j < s; ++j)
                if (kA[s][j] != 0.0) stage += h * kA[s][j] * k[static_cast<std::size_t>(j)];
            if (!above_floor(stage, opts.positivity_floor)) {
                positive = false;
                break;
            }
            k[static_cast<std::size_t>(s)] = f(stage);
        }
        if (!positive) {
            ++traj.rejected_steps;
            h *= 0.5;
            continue;
        }
        const Eigen::VectorXd x_new = stage;  // the seventh stage is the 5th-order solution (FSAL)
        Eigen::VectorXd err = Eigen::VectorXd::Zero(x.size());
        for (std::size_t s = 0; s < 7; ++s) err += h * (kB5[s] - kB4[s]) * k[s];
        const Eigen::ArrayXd scale = opts.atol + opts.rtol * x.cwiseAbs().cwiseMax(x_new.cwiseAbs()).array();
        const double e = std::sqrt((err.array() / scale).square().mean());

        if (!std::isfinite(e) || e > 1.0) {
            ++traj.rejected_steps;
            h *= std::isfinite(e) ? std::clamp(0.9 * std::pow(e, -0.2), 0.1, 0.9) : 0.1;
            continue;
        }
        t = (t_end - (t + h) <= 1e-15 * t_end) ? t_end : t + h;
        x = x_new;
        k[0] = k[6];
        ++traj.accepted_steps;
        traj.times.push_back(t);
        traj.states.push_back(to_std(x));
        if (!(x.cwiseAbs().maxCoeff() <= opts.divergence_bound))
            throw IntegrationError(Kind::Divergence, "state exceeded " + fmt(opts.divergence_bound) +
                                                         " at t = " + fmt(t),
                                   traj);
        h *= e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
    }
    return traj;
}

double conservation_residual(const GeneralizedNetwork& net, const Trajectory& traj) {
    if (traj.states.empty()) throw std::invalid_argument("empty trajectory");
    const Eigen::MatrixXd w = orthonormal_rows(orth_complement(stoich_subspace(net)));
    if (w.rows() == 0) return 0.0;
    const Eigen::VectorXd start = to_eigen(traj.states.front());
    double worst = 0.0;
    for (const auto& s : traj.states) worst = std::max(worst, (w * (to_eigen(s) - start)).cwiseAbs().maxCoeff());
    return worst;
}

void write_csv(std::ostream& out, const std::vector<std::string>& species, const Trajectory& traj) {
    std::ostringstream buf;
    buf << std::setprecision(17);
    buf << 't';
    for (const auto& s : species) buf << ',' << s;
    buf << '\n';
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        buf << traj.times[i];
        for (double v : traj.states[i]) buf << ',' << v;
        buf << '\n';
    }
    out << buf.str();
}

}  // namespace gmas
