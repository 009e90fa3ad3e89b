#include "gmas/graph.hpp"

#include <numeric>
#include <stdexcept>

namespace gmas {

std::vector<std::size_t> ComponentDecomposition::members(std::size_t component) const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < component_of.size(); ++v)
        if (component_of[v] == component) out.push_back(v);
    return out;
}

ComponentDecomposition connected_components(const GeneralizedNetwork& net) {
    const std::size_t m = net.vertex_count();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : net.edges()) {
        auto a = find(e.src), b = find(e.tgt);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

    // Components are numbered by their lowest vertex index.
    ComponentDecomposition d;
    d.component_of.assign(m, 0);
    std::vector<std::size_t> label(m, m);
    for (std::size_t v = 0; v < m; ++v) {
        auto r = find(v);
        if (label[r] == m) label[r] = d.count++;
        d.component_of[v] = label[r];
    }
    return d;
}

namespace {

std::vector<std::vector<std::size_t>> adjacency(const GeneralizedNetwork& net) {
    std::vector<std::vector<std::size_t>> out(net.vertex_count());
    for (const auto& e : net.edges()) out[e.src].push_back(e.tgt);
    return out;
}

std::vector<bool> reachable_from(const std::vector<std::vector<std::size_t>>& adj, std::size_t start) {
    std::vector<bool> seen(adj.size(), false);
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    return seen;
}

}  // namespace

bool is_weakly_reversible(const GeneralizedNetwork& net) {
    // Each edge u -> v must close into a cycle, i.e. v reaches u.
    const auto adj = adjacency(net);
    std::vector<std::vector<bool>> cache(net.vertex_count());
    for (const auto& e : net.edges()) {
        if (cache[e.tgt].empty()) cache[e.tgt] = reachable_from(adj, e.tgt);
        if (!cache[e.tgt][e.src]) return false;
    }
    return true;
}

std::vector<std::size_t> source_vertices(const GeneralizedNetwork& net) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < net.vertex_count(); ++v)
        if (net.is_source(v)) out.push_back(v);
    return out;
}

Eigen::MatrixXd laplacian(const GeneralizedNetwork& net, std::span<const double> rates) {
    check_rates(net, rates);
    const auto m = static_cast<Eigen::Index>(net.vertex_count());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t k = 0; k < net.edge_count(); ++k) {
        const auto& e = net.edges()[k];
        const auto i = static_cast<Eigen::Index>(e.tgt);
        const auto j = static_cast<Eigen::Index>(e.src);
        a(i, j) += rates[k];
        a(j, j) -= rates[k];
    }
    return a;
}

Eigen::MatrixXd laplacian(const GeneralizedNetwork& net) { return laplacian(net, required_rates(net)); }

RationalMatrix incidence_matrix(const GeneralizedNetwork& net) {
    RationalMatrix inc(net.vertex_count(), net.edge_count());
    for (std::size_t k = 0; k < net.edge_count(); ++k) {
        inc(net.edges()[k].src, k) = -1;
        inc(net.edges()[k].tgt, k) = 1;
    }
    return inc;
}

std::vector<Eigen::VectorXd> positive_kernel(const GeneralizedNetwork& net, std::span<const double> rates) {
    if (!is_weakly_reversible(net))
        throw NetworkError("positive kernel requires a weakly reversible network");
    const Eigen::MatrixXd a = laplacian(net, rates);
    const auto comps = connected_components(net);
    const auto m = static_cast<Eigen::Index>(net.vertex_count());

    std::vector<Eigen::VectorXd> out;
    for (std::size_t c = 0; c < comps.count; ++c) {
        const auto members = comps.members(c);
        const auto size = static_cast<Eigen::Index>(members.size());

        // -A restricted to the component.
        Eigen::MatrixXd block(size, size);
        for (Eigen::Index r = 0; r < size; ++r)
            for (Eigen::Index s = 0; s < size; ++s)
                block(r, s) = -a(static_cast<Eigen::Index>(members[r]), static_cast<Eigen::Index>(members[s]));

        Eigen::VectorXd local(size);
        if (size == 1) {
            local(0) = 1.0;
        } else if (members.size() <= kMatrixTreeLimit) {
            for (Eigen::Index i = 0; i < size; ++i) {
                Eigen::MatrixXd minor(size - 1, size - 1);
                for (Eigen::Index r = 0, rr = 0; r < size; ++r) {
                    if (r == i) continue;
                    for (Eigen::Index s = 0, ss = 0; s < size; ++s) {
                        if (s == i) continue;
                        minor(rr, ss++) = block(r, s);
                    }
                    ++rr;
                }
                local(i) = minor.partialPivLu().determinant();
            }
        } else {
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(block, Eigen::ComputeFullV);
            local = svd.matrixV().col(size - 1);
            if (local.sum() < 0) local = -local;
        }

        const double total = local.sum();
        if (!(total > 0)) throw std::runtime_error("positive_kernel: degenerate kernel vector");
        local /= total;
        for (Eigen::Index i = 0; i < size; ++i)
            if (!(local(i) > 0)) throw std::runtime_error("positive_kernel: kernel vector is not strictly positive");

        Eigen::VectorXd chi = Eigen::VectorXd::Zero(m);
        for (Eigen::Index i = 0; i < size; ++i) chi(static_cast<Eigen::Index>(members[i])) = local(i);
        out.push_back(std::move(chi));
    }
    return out;
}

}  // namespace gmas
