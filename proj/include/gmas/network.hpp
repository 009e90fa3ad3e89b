#ifndef GMAS_NETWORK_HPP
#define GMAS_NETWORK_HPP

#include "gmas/linalg.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gmas {

class NetworkError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Error in the network text format; line() is 1-based.
class ParseError : public NetworkError {
public:
    ParseError(std::size_t line, const std::string& message)
        : NetworkError("line " + std::to_string(line) + ": " + message), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Complexes are rational vectors over the species, in declaration order.
using Complex = RationalVector;

struct Vertex {
    std::string id;
    Complex stoich;
    std::optional<Complex> kinetic;

    bool operator==(const Vertex&) const = default;
};

struct Edge {
    std::size_t src = 0;
    std::size_t tgt = 0;
    std::optional<double> rate;

    bool operator==(const Edge&) const = default;
};

/// A simple digraph whose vertices carry a stoichiometric complex and, on
/// source vertices, a kinetic-order complex. Neither assignment needs to be
/// injective: vertices with equal complexes stay distinct.
class GeneralizedNetwork {
public:
    /// Validates every invariant and throws NetworkError on violation.
    GeneralizedNetwork(std::vector<std::string> species, std::vector<Vertex> vertices, std::vector<Edge> edges);

    const std::vector<std::string>& species() const { return species_; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }

    std::size_t species_count() const { return species_.size(); }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    std::optional<std::size_t> vertex_index(std::string_view id) const;

    bool is_source(std::size_t v) const { return out_degree_[v] > 0; }
    /// True when every vertex has an outgoing edge (V_s = V).
    bool all_vertices_are_sources() const;

    bool has_all_rates() const;

    /// Same network with every edge rate replaced.
    GeneralizedNetwork with_rates(std::span<const double> rates) const;

    bool operator==(const GeneralizedNetwork& other) const {
        return species_ == other.species_ && vertices_ == other.vertices_ && edges_ == other.edges_;
    }

private:
    std::vector<std::string> species_;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> out_degree_;
};

/// Line-based format:
///   species X1 X2 ...
///   vertex <id> stoich <q1 .. qn> [kinetic <q1 .. qn>]
///   edge <id> -> <id> [rate <positive number>]
/// with '#' starting a comment. Numbers are "p/q" or decimals.
GeneralizedNetwork parse_network(std::string_view text);
GeneralizedNetwork read_network_file(const std::string& path);

std::string serialize(const GeneralizedNetwork& net);

/// n x m matrix whose j-th column is the stoichiometric complex of vertex j.
RationalMatrix stoich_matrix(const GeneralizedNetwork& net);
/// n x m matrix of kinetic-order complexes; columns of non-source vertices are zero.
RationalMatrix kinetic_matrix(const GeneralizedNetwork& net);

/// Span of y_j - y_i over edges i -> j.
SubspaceBasis stoich_subspace(const GeneralizedNetwork& net);
/// Span of kinetic differences over edges. Requires every vertex to be a source.
SubspaceBasis kinetic_subspace(const GeneralizedNetwork& net);

/// Edge rates with missing entries defaulted to 1.
std::vector<double> effective_rates(const GeneralizedNetwork& net);

/// Rates stored on the network; throws NetworkError if any edge lacks one.
std::vector<double> required_rates(const GeneralizedNetwork& net);

/// Throws NetworkError unless rates has one positive finite entry per edge.
void check_rates(const GeneralizedNetwork& net, std::span<const double> rates);

}  // namespace gmas

#endif  // GMAS_NETWORK_HPP
