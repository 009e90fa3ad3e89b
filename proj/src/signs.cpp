#include "gmas/signs.hpp"

#include "gmas/lp.hpp"

#include <cstdint>
#include <functional>

namespace gmas {

SignVector sign_of(std::span<const Rational> v) {
    SignVector s(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) s[i] = static_cast<Sign>(sgn(v[i]));
    return s;
}

bool leq(const SignVector& a, const SignVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("leq: length mismatch");
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] != Sign::Zero && a[j] != b[j]) return false;
    return true;
}

bool orthogonal(const SignVector& a, const SignVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("orthogonal: length mismatch");
    bool plus = false, minus = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const Sign p = a[j] * b[j];
        plus |= p == Sign::Plus;
        minus |= p == Sign::Minus;
    }
    return plus == minus;
}

namespace {

using ZeroMask = std::vector<bool>;

ZeroMask mask_from_bits(std::uint64_t bits, std::size_t n) {
    ZeroMask m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = (bits >> i) & 1U;
    return m;
}

// Coordinates on which the subspace is not identically zero.
std::vector<std::size_t> support(const SubspaceBasis& b) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < b.ambient_dim(); ++i)
        for (const auto& v : b.vectors())
            if (v[i] != 0) {
                out.push_back(i);
                break;
            }
    return out;
}

// Calls visit(tau) for every sign pattern that is nonzero exactly on `coords`
// with tau[coords.front()] = '+'. Stops early when visit returns false.
bool for_each_half_pattern(std::size_t n, const std::vector<std::size_t>& coords,
                           const std::function<bool(const SignVector&)>& visit) {
    if (coords.empty()) return true;
    const std::size_t free_bits = coords.size() - 1;
    SignVector tau(n);
    tau[coords.front()] = Sign::Plus;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free_bits); ++bits) {
        for (std::size_t k = 0; k < free_bits; ++k)
            tau[coords[k + 1]] = ((bits >> k) & 1U) ? Sign::Minus : Sign::Plus;
        if (!visit(tau)) return false;
    }
    return true;
}

// Subspace restricted to the zero set together with its nonzero coordinates,
// or nullopt when no vector of the subspace has exactly that zero set.
struct Stratum {
    SubspaceBasis basis;
    std::vector<std::size_t> nonzero;
};

std::optional<Stratum> stratum(const SubspaceBasis& b, const ZeroMask& zeros) {
    auto restricted = restrict_to_zeros(b, zeros);
    if (restricted.empty()) return std::nullopt;
    std::vector<std::size_t> nonzero;
    for (std::size_t i = 0; i < zeros.size(); ++i)
        if (!zeros[i]) nonzero.push_back(i);
    if (support(restricted).size() != nonzero.size()) return std::nullopt;
    return Stratum{std::move(restricted), std::move(nonzero)};
}

}  // namespace

SignSet enumerate_sign_vectors(const SubspaceBasis& b, std::size_t cap) {
    const std::size_t n = b.ambient_dim();
    if (n > cap || n >= 63) throw DimensionCapExceeded(n, cap);

    SignSet out;
    out.insert(SignVector(n));
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t zbits = 0; zbits < all; ++zbits) {
        const auto st = stratum(b, mask_from_bits(zbits, n));
        if (!st) continue;
        if (st->basis.dim() == 1) {
            const auto tau = sign_of(st->basis.vectors().front());
            out.insert(tau);
            out.insert(-tau);
            continue;
        }
        for_each_half_pattern(n, st->nonzero, [&](const SignVector& tau) {
            if (strict_sign_feasible(st->basis, tau, true).feasible) {
                out.insert(tau);
                out.insert(-tau);
            }
            return true;
        });
    }
    return out;
}

SignSet closure(const SignSet& s) {
    SignSet out;
    for (const auto& tau : s) {
        std::vector<std::size_t> nz;
        for (std::size_t i = 0; i < tau.size(); ++i)
            if (tau[i] != Sign::Zero) nz.push_back(i);
        // Every subset of the support may be zeroed.
        for (std::uint64_t keep = 0; keep < (std::uint64_t{1} << nz.size()); ++keep) {
            SignVector low(tau.size());
            for (std::size_t k = 0; k < nz.size(); ++k)
                if ((keep >> k) & 1U) low[nz[k]] = tau[nz[k]];
            out.insert(std::move(low));
        }
    }
    return out;
}

SignSet maximal_sign_vectors(const SubspaceBasis& b) {
    const std::size_t n = b.ambient_dim();
    SignSet out;
    const auto supp = support(b);
    if (supp.empty()) {
        out.insert(SignVector(n));
        return out;
    }
    for_each_half_pattern(n, supp, [&](const SignVector& tau) {
        if (strict_sign_feasible(b, tau, true).feasible) {
            out.insert(tau);
            out.insert(-tau);
        }
        return true;
    });
    return out;
}

ConditionResult check_sigma_subset_closure(const SubspaceBasis& s, const SubspaceBasis& s_tilde) {
    if (s.ambient_dim() != s_tilde.ambient_dim())
        throw std::invalid_argument("check_sigma_subset_closure: ambient dimension mismatch");
    const std::size_t n = s.ambient_dim();

    // S~ is closed under negation, so one member of each ± pair suffices.
    ConditionResult result{true, std::nullopt};
    for_each_half_pattern(n, support(s), [&](const SignVector& tau) {
        if (!strict_sign_feasible(s, tau, true).feasible) return true;
        if (strict_sign_feasible(s_tilde, tau, true).feasible) return true;
        result = {false, tau};
        return false;
    });
    return result;
}

ConditionResult check_uniqueness_condition(const SubspaceBasis& s, const SubspaceBasis& s_tilde, std::size_t cap) {
    if (s.ambient_dim() != s_tilde.ambient_dim())
        throw std::invalid_argument("check_uniqueness_condition: ambient dimension mismatch");
    const std::size_t n = s.ambient_dim();
    if (n > cap || n >= 63) throw DimensionCapExceeded(n, cap);

    const SubspaceBasis perp = orth_complement(s_tilde);
    ConditionResult result{true, std::nullopt};
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t zbits = 0; zbits < all && result.holds; ++zbits) {
        const auto zeros = mask_from_bits(zbits, n);
        const auto a = stratum(s, zeros);
        if (!a) continue;
        const auto b = stratum(perp, zeros);
        if (!b) continue;
        for_each_half_pattern(n, a->nonzero, [&](const SignVector& tau) {
            if (!strict_sign_feasible(a->basis, tau, true).feasible) return true;
            if (!strict_sign_feasible(b->basis, tau, true).feasible) return true;
            result = {false, tau};
            return false;
        });
    }
    return result;
}

}  // namespace gmas
