#include "gmas/balance.hpp"

#include "gmas/graph.hpp"
#include "gmas/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace gmas {

std::size_t deficiency_via_incidence(const GeneralizedNetwork& net) {
    const auto ker_y = kernel_basis(stoich_matrix(net));
    const auto img_inc = column_space(incidence_matrix(net));
    return intersect_subspaces(ker_y, img_inc).dim();
}

std::size_t stoichiometric_deficiency(const GeneralizedNetwork& net) {
    const auto comps = connected_components(net);
    const std::size_t dim_s = stoich_subspace(net).dim();
    const std::size_t delta = net.vertex_count() - comps.count - dim_s;
    if (delta != deficiency_via_incidence(net))
        throw std::logic_error("stoichiometric deficiency formulas disagree");
    return delta;
}

std::size_t kinetic_deficiency(const GeneralizedNetwork& net) {
    const std::size_t dim_st = kinetic_subspace(net).dim();
    return net.vertex_count() - connected_components(net).count - dim_st;
}

Deficiencies deficiencies(const GeneralizedNetwork& net) {
    return {stoichiometric_deficiency(net), kinetic_deficiency(net)};
}

namespace {

std::size_t numeric_rank(const Eigen::MatrixXd& m, double tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol * s(0)) ++r;
    return r;
}

// Outflow rate of every edge: k_e x^{y~_src}.
Eigen::VectorXd edge_fluxes(const GeneralizedNetwork& net, std::span<const double> rates, const Eigen::VectorXd& x) {
    const Eigen::MatrixXd yt = to_eigen(kinetic_matrix(net));
    const Eigen::VectorXd mono = monomials(yt, x);
    Eigen::VectorXd flux(static_cast<Eigen::Index>(net.edge_count()));
    for (std::size_t k = 0; k < net.edge_count(); ++k)
        flux(static_cast<Eigen::Index>(k)) = rates[k] * mono(static_cast<Eigen::Index>(net.edges()[k].src));
    return flux;
}

Eigen::VectorXd checked_state(const GeneralizedNetwork& net, std::span<const double> x) {
    if (x.size() != net.species_count())
        throw std::invalid_argument("state has " + std::to_string(x.size()) + " entries, expected " +
                                    std::to_string(net.species_count()));
    Eigen::VectorXd v = to_eigen(x);
    require_positive(v, "state");
    return v;
}

}  // namespace

std::size_t deficiency_via_laplacian(const GeneralizedNetwork& net, std::span<const double> rates, double rank_tol) {
    const Eigen::MatrixXd a = laplacian(net, rates);
    const Eigen::MatrixXd y = to_eigen(stoich_matrix(net));
    return numeric_rank(a, rank_tol) - numeric_rank(y * a, rank_tol);
}

VertexBalanceCheck is_vertex_balanced(const GeneralizedNetwork& net, std::span<const double> rates,
                                      std::span<const double> x, double tol) {
    check_rates(net, rates);
    const Eigen::VectorXd state = checked_state(net, x);
    const Eigen::VectorXd flux = edge_fluxes(net, rates, state);

    std::vector<double> in(net.vertex_count(), 0.0), out(net.vertex_count(), 0.0);
    for (std::size_t k = 0; k < net.edge_count(); ++k) {
        out[net.edges()[k].src] += flux(static_cast<Eigen::Index>(k));
        in[net.edges()[k].tgt] += flux(static_cast<Eigen::Index>(k));
    }
    VertexBalanceCheck res{true, std::vector<double>(net.vertex_count())};
    for (std::size_t v = 0; v < net.vertex_count(); ++v) {
        res.residuals[v] = in[v] - out[v];
        if (std::abs(res.residuals[v]) > tol * (in[v] + out[v])) res.balanced = false;
    }
    return res;
}

double vertex_imbalance(const GeneralizedNetwork& net, std::span<const double> rates, std::span<const double> x) {
    check_rates(net, rates);
    const Eigen::VectorXd flux = edge_fluxes(net, rates, checked_state(net, x));
    std::vector<double> in(net.vertex_count(), 0.0), out(net.vertex_count(), 0.0);
    for (std::size_t k = 0; k < net.edge_count(); ++k) {
        out[net.edges()[k].src] += flux(static_cast<Eigen::Index>(k));
        in[net.edges()[k].tgt] += flux(static_cast<Eigen::Index>(k));
    }
    double worst = 0.0;
    for (std::size_t v = 0; v < net.vertex_count(); ++v)
        if (in[v] + out[v] > 0) worst = std::max(worst, std::abs(in[v] - out[v]) / (in[v] + out[v]));
    return worst;
}

SteadyStateCheck is_steady_state(const GeneralizedNetwork& net, std::span<const double> rates,
                                 std::span<const double> x, double tol) {
    check_rates(net, rates);
    const Eigen::VectorXd state = checked_state(net, x);
    const Eigen::MatrixXd y = to_eigen(stoich_matrix(net));
    const Eigen::MatrixXd a = laplacian(net, rates);
    const Eigen::VectorXd mono = monomials(to_eigen(kinetic_matrix(net)), state);
    const Eigen::VectorXd r = y * (a * mono);

    const Eigen::VectorXd flux = edge_fluxes(net, rates, state);
    double scale = 0.0;
    for (std::size_t k = 0; k < net.edge_count(); ++k) {
        const auto& e = net.edges()[k];
        const double reach = (y.col(static_cast<Eigen::Index>(e.tgt)) - y.col(static_cast<Eigen::Index>(e.src)))
                                 .cwiseAbs()
                                 .maxCoeff();
        scale = std::max(scale, flux(static_cast<Eigen::Index>(k)) * reach);
    }
    SteadyStateCheck res;
    res.residual = to_std(r);
    res.scale = scale;
    res.steady = r.size() == 0 || r.cwiseAbs().maxCoeff() <= tol * scale;
    return res;
}

std::optional<BalancedPoint> find_vertex_balanced(const GeneralizedNetwork& net, std::span<const double> rates) {
    check_rates(net, rates);
    if (!is_weakly_reversible(net)) throw NotWeaklyReversible();

    const auto kernels = positive_kernel(net, rates);
    const auto comps = connected_components(net);
    const auto n = static_cast<Eigen::Index>(net.species_count());
    const auto m = static_cast<Eigen::Index>(net.vertex_count());
    const auto l = static_cast<Eigen::Index>(comps.count);

    Eigen::VectorXd chi = Eigen::VectorXd::Zero(m);
    for (const auto& k : kernels) chi += k;

    // Unknowns (log x, c): y~_v . log x - c_{comp(v)} = log chi_v.
    Eigen::MatrixXd system = Eigen::MatrixXd::Zero(m, n + l);
    system.leftCols(n) = to_eigen(kinetic_matrix(net)).transpose();
    for (Eigen::Index v = 0; v < m; ++v) system(v, n + static_cast<Eigen::Index>(comps.component_of[v])) = -1.0;
    const Eigen::VectorXd rhs = chi.array().log().matrix();

    const Eigen::VectorXd z = system.completeOrthogonalDecomposition().solve(rhs);
    const double consistency = (system * z - rhs).cwiseAbs().maxCoeff();
    const double rhs_scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
    if (!(consistency <= 1e-8 * rhs_scale)) return std::nullopt;

    BalancedPoint p;
    p.x = to_std(z.head(n).array().exp().matrix());
    p.consistency_residual = consistency;

    if (!is_vertex_balanced(net, rates, p.x, kDefaultBalanceTol).balanced) return std::nullopt;
    p.balance_residual = vertex_imbalance(net, rates, p.x);
    return p;
}

bool balanced_set_membership(const GeneralizedNetwork& net, std::span<const double> x_star,
                             std::span<const double> x) {
    const Eigen::VectorXd xs = checked_state(net, x_star);
    const Eigen::VectorXd xv = checked_state(net, x);
    const Eigen::VectorXd d = (xv.array().log() - xs.array().log()).matrix();
    const Eigen::MatrixXd q = orthonormal_rows(kinetic_subspace(net));
    if (q.rows() == 0) return true;
    const double along_s_tilde = (q * d).cwiseAbs().maxCoeff();
    return along_s_tilde <= 1e-9 * std::max(1.0, d.cwiseAbs().maxCoeff());
}

std::string verdict_id(Verdict v) {
    switch (v) {
        case Verdict::UniquePositiveSteadyStateAllKappa: return "unique_positive_steady_state_all_kappa";
        case Verdict::UniqueAndExistsAllKappa: return "unique_and_exists_all_kappa";
        case Verdict::UniquePerClassIfExists: return "unique_per_class_if_exists";
        case Verdict::AtMostOnePerClass: return "at_most_one_per_class";
        case Verdict::NoConclusion: return "no_conclusion";
    }
    return "no_conclusion";
}

std::string verdict_description(Verdict v) {
    switch (v) {
        case Verdict::UniquePositiveSteadyStateAllKappa:
            return "unique positive steady state per class, vertex-balanced, for all rate constants";
        case Verdict::UniqueAndExistsAllKappa:
            return "exactly one vertex-balanced steady state per class for all rate constants";
        case Verdict::UniquePerClassIfExists:
            return "exactly one vertex-balanced steady state per class whenever one exists";
        case Verdict::AtMostOnePerClass:
            return "at most one vertex-balanced steady state per class";
        case Verdict::NoConclusion:
            return "no conclusion from sign conditions";
    }
    return {};
}

AnalysisReport analyze(const GeneralizedNetwork& net, std::size_t cap) {
    AnalysisReport r;
    r.species = net.species_count();
    r.vertices = net.vertex_count();
    r.edges = net.edge_count();
    r.components = connected_components(net).count;
    r.weakly_reversible = is_weakly_reversible(net);
    r.all_vertices_are_sources = net.all_vertices_are_sources();

    const auto s = stoich_subspace(net);
    r.dim_s = s.dim();
    r.deficiency = stoichiometric_deficiency(net);

    if (!r.all_vertices_are_sources) return r;

    const auto st = kinetic_subspace(net);
    r.dim_s_tilde = st.dim();
    r.kinetic_deficiency = kinetic_deficiency(net);
    r.equal_dims = r.dim_s == st.dim();
    r.sign_condition = check_sigma_subset_closure(s, st);

    if (net.species_count() <= cap) {
        r.uniqueness_condition = check_uniqueness_condition(s, st, cap);
        r.uniqueness_checked_directly = true;
    } else if (r.sign_condition->holds) {
        r.uniqueness_condition = ConditionResult{true, std::nullopt};
    }

    const bool base = r.weakly_reversible && r.equal_dims && r.sign_condition->holds;
    if (base && r.deficiency == 0 && *r.kinetic_deficiency == 0)
        r.verdict = Verdict::UniquePositiveSteadyStateAllKappa;
    else if (base && *r.kinetic_deficiency == 0)
        r.verdict = Verdict::UniqueAndExistsAllKappa;
    else if (base)
        r.verdict = Verdict::UniquePerClassIfExists;
    else if (r.uniqueness_condition && r.uniqueness_condition->holds)
        r.verdict = Verdict::AtMostOnePerClass;
    return r;
}

namespace {

nlohmann::ordered_json condition_json(const std::optional<ConditionResult>& c) {
    if (!c) return nullptr;
    nlohmann::ordered_json j;
    j["holds"] = c->holds;
    j["witness"] = c->witness ? nlohmann::ordered_json(c->witness->str()) : nlohmann::ordered_json(nullptr);
    return j;
}

template <typename T>
nlohmann::ordered_json optional_json(const std::optional<T>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

nlohmann::ordered_json to_json(const AnalysisReport& r) {
    nlohmann::ordered_json j;
    j["species"] = r.species;
    j["vertices"] = r.vertices;
    j["edges"] = r.edges;
    j["components"] = r.components;
    j["weakly_reversible"] = r.weakly_reversible;
    j["all_vertices_are_sources"] = r.all_vertices_are_sources;
    j["dim_s"] = r.dim_s;
    j["dim_s_tilde"] = optional_json(r.dim_s_tilde);
    j["deficiency"] = r.deficiency;
    j["kinetic_deficiency"] = optional_json(r.kinetic_deficiency);
    j["equal_dims"] = r.equal_dims;
    j["sign_condition"] = condition_json(r.sign_condition);
    j["uniqueness_condition"] = condition_json(r.uniqueness_condition);
    j["uniqueness_checked_directly"] = r.uniqueness_checked_directly;
    j["verdict"] = verdict_id(r.verdict);
    return j;
}

}  // namespace gmas
