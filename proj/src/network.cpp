#include "gmas/network.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace gmas {

GeneralizedNetwork::GeneralizedNetwork(std::vector<std::string> species, std::vector<Vertex> vertices,
                                       std::vector<Edge> edges)
    : species_(std::move(species)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
    if (species_.empty()) throw NetworkError("network declares no species");
    {
        std::set<std::string> seen;
        for (const auto& s : species_)
            if (!seen.insert(s).second) throw NetworkError("duplicate species '" + s + "'");
    }

    const std::size_t n = species_.size();
    std::set<std::string> ids;
    for (const auto& v : vertices_) {
        if (!ids.insert(v.id).second) throw NetworkError("duplicate vertex '" + v.id + "'");
        if (v.stoich.size() != n)
            throw NetworkError("vertex '" + v.id + "': stoichiometric complex has " + std::to_string(v.stoich.size()) +
                               " entries, expected " + std::to_string(n));
        if (v.kinetic && v.kinetic->size() != n)
            throw NetworkError("vertex '" + v.id + "': kinetic-order complex has " + std::to_string(v.kinetic->size()) +
                               " entries, expected " + std::to_string(n));
    }

    out_degree_.assign(vertices_.size(), 0);
    std::set<std::pair<std::size_t, std::size_t>> seen_edges;
    for (const auto& e : edges_) {
        if (e.src >= vertices_.size() || e.tgt >= vertices_.size()) throw NetworkError("edge endpoint out of range");
        const auto& a = vertices_[e.src].id;
        const auto& b = vertices_[e.tgt].id;
        if (e.src == e.tgt) throw NetworkError("self-loop on vertex '" + a + "'");
        if (!seen_edges.insert({e.src, e.tgt}).second) throw NetworkError("duplicate edge " + a + " -> " + b);
        if (e.rate && !(std::isfinite(*e.rate) && *e.rate > 0))
            throw NetworkError("edge " + a + " -> " + b + ": rate must be positive");
        ++out_degree_[e.src];
    }

    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (out_degree_[i] > 0 && !vertices_[i].kinetic)
            throw NetworkError("source vertex '" + vertices_[i].id + "' has no kinetic-order complex");
}

std::optional<std::size_t> GeneralizedNetwork::vertex_index(std::string_view id) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].id == id) return i;
    return std::nullopt;
}

bool GeneralizedNetwork::all_vertices_are_sources() const {
    for (auto d : out_degree_)
        if (d == 0) return false;
    return true;
}

bool GeneralizedNetwork::has_all_rates() const {
    for (const auto& e : edges_)
        if (!e.rate) return false;
    return true;
}

GeneralizedNetwork GeneralizedNetwork::with_rates(std::span<const double> rates) const {
    check_rates(*this, rates);
    auto edges = edges_;
    for (std::size_t k = 0; k < edges.size(); ++k) edges[k].rate = rates[k];
    return GeneralizedNetwork(species_, vertices_, std::move(edges));
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

Rational parse_number(std::string_view token, std::size_t line) {
    try {
        return parse_rational(token);
    } catch (const RationalParseError& e) {
        throw ParseError(line, e.what());
    }
}

// mpq get_d truncates; decimals go through strtod so serialize/parse round-trips.
double nearest_double(std::string_view token, const Rational& q) {
    if (token.find('/') == std::string_view::npos) return std::strtod(std::string(token).c_str(), nullptr);
    return q.get_num().get_d() / q.get_den().get_d();
}

std::string format_rate(double r) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, r);
    return std::string(buf, res.ptr);
}

}  // namespace

GeneralizedNetwork parse_network(std::string_view text) {
    std::vector<std::string> species;
    std::vector<Vertex> vertices;
    std::vector<std::size_t> vertex_line;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<Edge> edges;
    std::set<std::pair<std::size_t, std::size_t>> seen_edges;
    bool have_species = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto tok = tokenize(line);
        if (tok.empty()) continue;

        const auto& kw = tok[0];
        if (kw == "species") {
            if (have_species) throw ParseError(line_no, "species declared twice");
            if (!vertices.empty() || !edges.empty())
                throw ParseError(line_no, "species must be the first declaration");
            if (tok.size() < 2) throw ParseError(line_no, "empty species list");
            std::set<std::string_view> seen;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                if (!seen.insert(tok[i]).second) throw ParseError(line_no, "duplicate species '" + std::string(tok[i]) + "'");
                species.emplace_back(tok[i]);
            }
            have_species = true;
        } else if (kw == "vertex") {
            if (!have_species) throw ParseError(line_no, "vertex before species declaration");
            const std::size_t n = species.size();
            if (tok.size() < 3 || tok[2] != "stoich") throw ParseError(line_no, "expected: vertex <id> stoich <coefficients>");
            std::string id(tok[1]);
            if (index.count(id)) throw ParseError(line_no, "duplicate vertex '" + id + "'");

            Vertex v{id, {}, std::nullopt};
            std::size_t i = 3;
            while (i < tok.size() && tok[i] != "kinetic") v.stoich.push_back(parse_number(tok[i++], line_no));
            if (v.stoich.size() != n)
                throw ParseError(line_no, "vertex '" + id + "': expected " + std::to_string(n) +
                                              " stoichiometric coefficients, got " + std::to_string(v.stoich.size()));
            if (i < tok.size()) {
                ++i;
                Complex k;
                while (i < tok.size()) k.push_back(parse_number(tok[i++], line_no));
                if (k.size() != n)
                    throw ParseError(line_no, "vertex '" + id + "': expected " + std::to_string(n) +
                                                  " kinetic-order coefficients, got " + std::to_string(k.size()));
                v.kinetic = std::move(k);
            }
            index.emplace(id, vertices.size());
            vertices.push_back(std::move(v));
            vertex_line.push_back(line_no);
        } else if (kw == "edge") {
            if (!have_species) throw ParseError(line_no, "edge before species declaration");
            if (tok.size() != 4 && tok.size() != 6) throw ParseError(line_no, "expected: edge <id> -> <id> [rate <value>]");
            if (tok[2] != "->") throw ParseError(line_no, "expected '->' between edge endpoints");
            auto a = index.find(std::string(tok[1]));
            if (a == index.end()) throw ParseError(line_no, "undeclared vertex '" + std::string(tok[1]) + "'");
            auto b = index.find(std::string(tok[3]));
            if (b == index.end()) throw ParseError(line_no, "undeclared vertex '" + std::string(tok[3]) + "'");
            if (a->second == b->second) throw ParseError(line_no, "self-loop on vertex '" + a->first + "'");
            if (!seen_edges.insert({a->second, b->second}).second)
                throw ParseError(line_no, "duplicate edge " + a->first + " -> " + b->first);

            Edge e{a->second, b->second, std::nullopt};
            if (tok.size() == 6) {
                if (tok[4] != "rate") throw ParseError(line_no, "expected 'rate' clause");
                const Rational q = parse_number(tok[5], line_no);
                if (q <= 0) throw ParseError(line_no, "rate must be positive, got " + std::string(tok[5]));
                e.rate = nearest_double(tok[5], q);
            }
            edges.push_back(e);
        } else {
            throw ParseError(line_no, "unknown declaration '" + std::string(kw) + "'");
        }
    }

    if (!have_species) throw ParseError(line_no, "missing species declaration");

    std::vector<bool> is_source(vertices.size(), false);
    for (const auto& e : edges) is_source[e.src] = true;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (is_source[i] && !vertices[i].kinetic)
            throw ParseError(vertex_line[i], "source vertex '" + vertices[i].id + "' needs a kinetic-order complex");

    return GeneralizedNetwork(std::move(species), std::move(vertices), std::move(edges));
}

GeneralizedNetwork read_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open network file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_network(ss.str());
}

std::string serialize(const GeneralizedNetwork& net) {
    std::ostringstream out;
    out << "species";
    for (const auto& s : net.species()) out << ' ' << s;
    out << '\n';
    for (const auto& v : net.vertices()) {
        out << "vertex " << v.id << " stoich";
        for (const auto& q : v.stoich) out << ' ' << to_string(q);
        if (v.kinetic) {
            out << " kinetic";
            for (const auto& q : *v.kinetic) out << ' ' << to_string(q);
        }
        out << '\n';
    }
    for (const auto& e : net.edges()) {
        out << "edge " << net.vertices()[e.src].id << " -> " << net.vertices()[e.tgt].id;
        if (e.rate) out << " rate " << format_rate(*e.rate);
        out << '\n';
    }
    return out.str();
}

RationalMatrix stoich_matrix(const GeneralizedNetwork& net) {
    RationalMatrix y(net.species_count(), net.vertex_count());
    for (std::size_t j = 0; j < net.vertex_count(); ++j)
        for (std::size_t i = 0; i < net.species_count(); ++i) y(i, j) = net.vertices()[j].stoich[i];
    return y;
}

RationalMatrix kinetic_matrix(const GeneralizedNetwork& net) {
    RationalMatrix y(net.species_count(), net.vertex_count());
    for (std::size_t j = 0; j < net.vertex_count(); ++j) {
        if (!net.is_source(j)) continue;
        for (std::size_t i = 0; i < net.species_count(); ++i) y(i, j) = (*net.vertices()[j].kinetic)[i];
    }
    return y;
}

namespace {

SubspaceBasis difference_span(const GeneralizedNetwork& net, const RationalMatrix& y) {
    const std::size_t n = net.species_count();
    std::vector<RationalVector> diffs;
    diffs.reserve(net.edge_count());
    for (const auto& e : net.edges()) {
        RationalVector d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = y(i, e.tgt) - y(i, e.src);
        diffs.push_back(std::move(d));
    }
    return SubspaceBasis::span_of(n, diffs);
}

}  // namespace

SubspaceBasis stoich_subspace(const GeneralizedNetwork& net) { return difference_span(net, stoich_matrix(net)); }

SubspaceBasis kinetic_subspace(const GeneralizedNetwork& net) {
    if (!net.all_vertices_are_sources())
        throw NetworkError("kinetic-order subspace is defined only when every vertex is a source");
    return difference_span(net, kinetic_matrix(net));
}

std::vector<double> effective_rates(const GeneralizedNetwork& net) {
    std::vector<double> r;
    r.reserve(net.edge_count());
    for (const auto& e : net.edges()) r.push_back(e.rate.value_or(1.0));
    return r;
}

std::vector<double> required_rates(const GeneralizedNetwork& net) {
    std::vector<double> r;
    r.reserve(net.edge_count());
    for (const auto& e : net.edges()) {
        if (!e.rate)
            throw NetworkError("edge " + net.vertices()[e.src].id + " -> " + net.vertices()[e.tgt].id + " has no rate");
        r.push_back(*e.rate);
    }
    return r;
}

void check_rates(const GeneralizedNetwork& net, std::span<const double> rates) {
    if (rates.size() != net.edge_count())
        throw NetworkError("expected " + std::to_string(net.edge_count()) + " rates, got " + std::to_string(rates.size()));
    for (double r : rates)
        if (!(std::isfinite(r) && r > 0)) throw NetworkError("rate constants must be positive and finite");
}

}  // namespace gmas
