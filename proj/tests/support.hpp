#ifndef GMAS_TESTS_SUPPORT_HPP
#define GMAS_TESTS_SUPPORT_HPP

#include "gmas/linalg.hpp"
#include "gmas/network.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace gmas::test {

inline std::string fixture_path(const std::string& name) { return std::string(GMAS_FIXTURE_DIR) + "/" + name; }

inline GeneralizedNetwork fixture(const std::string& name) { return read_network_file(fixture_path(name)); }

inline RationalVector qv(std::initializer_list<long> xs) {
    RationalVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline SubspaceBasis span(std::size_t n, const std::vector<RationalVector>& vs) { return SubspaceBasis::span_of(n, vs); }

/// Root of f on [a, b] by bisection; f(a) and f(b) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
    double fa = f(a);
    for (int i = 0; i < 200 && b - a > tol; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

/// Small integer entries in [-k, k].
inline RationalVector random_int_vector(std::mt19937_64& rng, std::size_t n, int k) {
    std::uniform_int_distribution<int> d(-k, k);
    RationalVector v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

/// Span of `count` random integer vectors; may have lower dimension than count.
inline SubspaceBasis random_subspace(std::mt19937_64& rng, std::size_t n, std::size_t count, int k = 2) {
    std::vector<RationalVector> vs;
    for (std::size_t i = 0; i < count; ++i) vs.push_back(random_int_vector(rng, n, k));
    return SubspaceBasis::span_of(n, vs);
}

/// Random subspace of exactly dimension d.
inline SubspaceBasis random_subspace_of_dim(std::mt19937_64& rng, std::size_t n, std::size_t d, int k = 2) {
    for (;;) {
        auto b = random_subspace(rng, n, d, k);
        if (b.dim() == d) return b;
    }
}

inline std::vector<double> random_positive(std::mt19937_64& rng, std::size_t n, double lo = 0.1, double hi = 10.0) {
    std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
    std::vector<double> v(n);
    for (auto& x : v) x = std::exp(d(rng));
    return v;
}

inline double rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num = std::max(num, std::abs(a[i] - b[i]));
        den = std::max(den, std::max(std::abs(a[i]), std::abs(b[i])));
    }
    return den == 0.0 ? num : num / den;
}

}  // namespace gmas::test

#endif  // GMAS_TESTS_SUPPORT_HPP
