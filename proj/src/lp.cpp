#include "gmas/lp.hpp"

#include <stdexcept>

namespace gmas {

LpResult maximize(const RationalMatrix& A, const RationalVector& b, const RationalVector& c) {
    const std::size_t m = A.rows();
    const std::size_t n = A.cols();
    if (b.size() != m || c.size() != n) throw std::invalid_argument("maximize: dimension mismatch");
    for (const auto& bi : b)
        if (bi < 0) throw std::invalid_argument("maximize: right-hand side must be non-negative");

    // Tableau columns: n structural, m slack, 1 rhs. Row m is the objective
    // row holding reduced costs (negated c), so entering columns are negative.
    const std::size_t width = n + m + 1;
    RationalMatrix t(m + 1, width);
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t(i, j) = A(i, j);
        t(i, n + i) = 1;
        t(i, width - 1) = b[i];
        basis[i] = n + i;
    }
    for (std::size_t j = 0; j < n; ++j) t(m, j) = -c[j];

    LpResult result;
    for (;;) {
        // Bland: lowest-index column with negative reduced cost enters.
        std::size_t enter = width;
        for (std::size_t j = 0; j + 1 < width; ++j)
            if (t(m, j) < 0) {
                enter = j;
                break;
            }
        if (enter == width) break;

        // Ratio test; ties broken by lowest basic variable index.
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t(i, enter) <= 0) continue;
            Rational ratio = t(i, width - 1) / t(i, enter);
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) {
            result.status = LpResult::Status::Unbounded;
            return result;
        }

        const Rational inv = 1 / t(leave, enter);
        for (std::size_t k = 0; k < width; ++k)
            if (t(leave, k) != 0) t(leave, k) *= inv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave || t(i, enter) == 0) continue;
            const Rational f = t(i, enter);
            for (std::size_t k = 0; k < width; ++k)
                if (t(leave, k) != 0) t(i, k) -= f * t(leave, k);
        }
        basis[leave] = enter;
    }

    result.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) result.x[basis[i]] = t(i, width - 1);
    result.value = t(m, width - 1);
    return result;
}

SubspaceBasis restrict_to_zeros(const SubspaceBasis& b, const std::vector<bool>& zero_mask) {
    const std::size_t n = b.ambient_dim();
    if (zero_mask.size() != n) throw std::invalid_argument("restrict_to_zeros: mask length mismatch");
    const std::size_t k = b.dim();

    std::vector<RationalVector> pinned_rows;
    for (std::size_t i = 0; i < n; ++i) {
        if (!zero_mask[i]) continue;
        RationalVector row(k);
        for (std::size_t j = 0; j < k; ++j) row[j] = b.vectors()[j][i];
        pinned_rows.push_back(std::move(row));
    }
    if (pinned_rows.empty()) return b;

    // Coefficient vectors c with (B c)_i = 0 on the pinned coordinates.
    const auto coeffs = kernel_basis(RationalMatrix::from_rows(k, pinned_rows));
    std::vector<RationalVector> vecs;
    for (const auto& c : coeffs.vectors()) {
        RationalVector v(n);
        for (std::size_t j = 0; j < k; ++j)
            if (c[j] != 0)
                for (std::size_t i = 0; i < n; ++i) v[i] += c[j] * b.vectors()[j][i];
        vecs.push_back(std::move(v));
    }
    return SubspaceBasis(n, std::move(vecs));
}

namespace {

bool realizes(const RationalVector& v, const SignVector& constraint, bool zeros_are_free) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        const int s = sgn(v[i]);
        switch (constraint[i]) {
            case Sign::Plus:
                if (s <= 0) return false;
                break;
            case Sign::Minus:
                if (s >= 0) return false;
                break;
            case Sign::Zero:
                if (!zeros_are_free && s != 0) return false;
                break;
        }
    }
    return true;
}

}  // namespace

SignFeasibility strict_sign_feasible(const SubspaceBasis& b, const SignVector& constraint, bool zeros_are_free) {
    const std::size_t n = b.ambient_dim();
    if (constraint.size() != n) throw std::invalid_argument("strict_sign_feasible: constraint length != ambient dimension");

    std::vector<bool> zero_mask(n);
    std::vector<std::size_t> strict;
    for (std::size_t i = 0; i < n; ++i) {
        zero_mask[i] = constraint[i] == Sign::Zero;
        if (!zero_mask[i]) strict.push_back(i);
    }
    if (strict.empty()) return {true, RationalVector(n)};

    const SubspaceBasis sub = zeros_are_free ? b : restrict_to_zeros(b, zero_mask);
    const std::size_t k = sub.dim();
    if (k == 0) return {};

    // One-dimensional subspaces: the pattern is realized by ±v or not at all.
    if (k == 1) {
        const auto& v = sub.vectors().front();
        if (realizes(v, constraint, zeros_are_free)) return {true, v};
        RationalVector neg(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
        if (realizes(neg, constraint, zeros_are_free)) return {true, neg};
        return {};
    }

    // Variables: c+ (k), c- (k), t. Constraint rows: one per strict coordinate
    // (-s_i (V c)_i + t <= 0), then c+_j <= 1, c-_j <= 1, t <= 1.
    const std::size_t nvars = 2 * k + 1;
    const std::size_t nrows = strict.size() + nvars;
    RationalMatrix A(nrows, nvars);
    RationalVector rhs(nrows);
    for (std::size_t r = 0; r < strict.size(); ++r) {
        const std::size_t i = strict[r];
        const int s = static_cast<int>(constraint[i]);
        for (std::size_t j = 0; j < k; ++j) {
            const Rational& vij = sub.vectors()[j][i];
            A(r, j) = -s * vij;
            A(r, k + j) = s * vij;
        }
        A(r, 2 * k) = 1;
    }
    for (std::size_t j = 0; j < nvars; ++j) {
        A(strict.size() + j, j) = 1;
        rhs[strict.size() + j] = 1;
    }
    RationalVector objective(nvars);
    objective[2 * k] = 1;

    const auto lp = maximize(A, rhs, objective);
    if (lp.status != LpResult::Status::Optimal || lp.value <= 0) return {};

    RationalVector w(n);
    for (std::size_t j = 0; j < k; ++j) {
        const Rational cj = lp.x[j] - lp.x[k + j];
        if (cj == 0) continue;
        for (std::size_t i = 0; i < n; ++i) w[i] += cj * sub.vectors()[j][i];
    }
    if (!realizes(w, constraint, zeros_are_free))
        throw std::logic_error("strict_sign_feasible: LP optimum does not realize the pattern");
    return {true, std::move(w)};
}

}  // namespace gmas
