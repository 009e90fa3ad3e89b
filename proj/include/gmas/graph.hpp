#ifndef GMAS_GRAPH_HPP
#define GMAS_GRAPH_HPP

#include "gmas/network.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace gmas {

/// Weakly connected components of the underlying digraph.
struct ComponentDecomposition {
    std::vector<std::size_t> component_of;  // vertex -> component index
    std::size_t count = 0;

    std::vector<std::size_t> members(std::size_t component) const;
};

ComponentDecomposition connected_components(const GeneralizedNetwork& net);

/// Every weakly connected component is strongly connected.
bool is_weakly_reversible(const GeneralizedNetwork& net);

/// Indices of vertices with out-degree >= 1, ascending.
std::vector<std::size_t> source_vertices(const GeneralizedNetwork& net);

/// Negative transpose of the weighted graph Laplacian:
///   A(i, j) = k_ji for an edge j -> i, A(j, j) = -(sum of rates leaving j).
/// Columns sum to zero.
Eigen::MatrixXd laplacian(const GeneralizedNetwork& net, std::span<const double> rates);
/// Uses the rates stored on the network; throws NetworkError if any is missing.
Eigen::MatrixXd laplacian(const GeneralizedNetwork& net);

/// m x |E| matrix with -1 at the source row and +1 at the target row of each edge.
RationalMatrix incidence_matrix(const GeneralizedNetwork& net);

/// Components with at most this many vertices use the Matrix-Tree formula.
inline constexpr std::size_t kMatrixTreeLimit = 10;

/// One vector per component spanning Ker A_k: strictly positive on the
/// component, zero elsewhere, entries summing to one. Requires a weakly
/// reversible network.
///
/// Small components use the directed Matrix-Tree theorem: entry i is the
/// total weight of spanning trees directed towards i, evaluated as the
/// principal minor of -A_k with row and column i removed. Larger ones fall
/// back to a numerical null vector with a positivity check.
std::vector<Eigen::VectorXd> positive_kernel(const GeneralizedNetwork& net, std::span<const double> rates);

}  // namespace gmas

#endif  // GMAS_GRAPH_HPP
