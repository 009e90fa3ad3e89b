#ifndef GMAS_BALANCE_HPP
#define GMAS_BALANCE_HPP

#include "gmas/network.hpp"
#include "gmas/signs.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmas {

class NotWeaklyReversible : public std::domain_error {
public:
    NotWeaklyReversible()
        : std::domain_error(
              "network is not weakly reversible: vertex-balanced steady states require every connected component "
              "to be strongly connected") {}
};

struct Deficiencies {
    std::size_t delta = 0;
    std::size_t delta_tilde = 0;
};

/// |V| - l - dim S, cross-checked against dim(Ker Y ∩ Img I_E).
std::size_t stoichiometric_deficiency(const GeneralizedNetwork& net);
/// |V| - l - dim S~. Requires every vertex to be a source.
std::size_t kinetic_deficiency(const GeneralizedNetwork& net);
Deficiencies deficiencies(const GeneralizedNetwork& net);

/// dim(Ker Y ∩ Img I_E), computed by exact subspace intersection.
std::size_t deficiency_via_incidence(const GeneralizedNetwork& net);
/// dim(Ker Y ∩ Img A_k) = rank(A_k) - rank(Y A_k), numerically.
std::size_t deficiency_via_laplacian(const GeneralizedNetwork& net, std::span<const double> rates,
                                     double rank_tol = 1e-9);

inline constexpr double kDefaultBalanceTol = 1e-8;

struct VertexBalanceCheck {
    bool balanced = false;
    std::vector<double> residuals;  // inflow - outflow at each vertex
};

/// Flux balance at every vertex of the abstract graph: |in - out| <= tol (in + out).
VertexBalanceCheck is_vertex_balanced(const GeneralizedNetwork& net, std::span<const double> rates,
                                      std::span<const double> x, double tol = kDefaultBalanceTol);

/// max over vertices of |in - out| / (in + out); vertices without flux are skipped.
double vertex_imbalance(const GeneralizedNetwork& net, std::span<const double> rates, std::span<const double> x);

struct SteadyStateCheck {
    bool steady = false;
    std::vector<double> residual;  // Y A_k x^Y~
    double scale = 0.0;            // largest single reaction term
};

SteadyStateCheck is_steady_state(const GeneralizedNetwork& net, std::span<const double> rates,
                                 std::span<const double> x, double tol = kDefaultBalanceTol);

struct BalancedPoint {
    std::vector<double> x;
    double consistency_residual = 0.0;  // least-squares residual of the log-linear system
    double balance_residual = 0.0;      // max relative vertex imbalance at x
};

/// Solves Y~^T log x - (per-component constants) = log chi in the least-squares
/// sense, chi being the positive kernel of A_k. Returns nullopt when that
/// system is inconsistent, i.e. no vertex-balanced steady state exists for
/// these rates. Throws NotWeaklyReversible.
std::optional<BalancedPoint> find_vertex_balanced(const GeneralizedNetwork& net, std::span<const double> rates);

/// log x - log x* ∈ S~⊥ (within 1e-9). The caller guarantees x* is vertex-balanced;
/// then this is membership of x in the set of vertex-balanced steady states.
bool balanced_set_membership(const GeneralizedNetwork& net, std::span<const double> x_star,
                             std::span<const double> x);

enum class Verdict {
    UniquePositiveSteadyStateAllKappa,
    UniqueAndExistsAllKappa,
    UniquePerClassIfExists,
    AtMostOnePerClass,
    NoConclusion,
};

/// Stable identifier used in JSON output.
std::string verdict_id(Verdict v);
/// One-line human description.
std::string verdict_description(Verdict v);

struct AnalysisReport {
    std::size_t species = 0;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t components = 0;
    bool weakly_reversible = false;
    bool all_vertices_are_sources = false;
    std::size_t dim_s = 0;
    std::optional<std::size_t> dim_s_tilde;
    std::size_t deficiency = 0;
    std::optional<std::size_t> kinetic_deficiency;
    bool equal_dims = false;
    /// Absent when S~ is undefined (some vertex is not a source).
    std::optional<ConditionResult> sign_condition;
    /// Absent when S~ is undefined, or when the dimension exceeds the
    /// enumeration cap and the sign condition does not already imply it.
    std::optional<ConditionResult> uniqueness_condition;
    bool uniqueness_checked_directly = false;
    Verdict verdict = Verdict::NoConclusion;
};

AnalysisReport analyze(const GeneralizedNetwork& net, std::size_t cap = kDefaultEnumerationCap);

nlohmann::ordered_json to_json(const AnalysisReport& r);

}  // namespace gmas

#endif  // GMAS_BALANCE_HPP
