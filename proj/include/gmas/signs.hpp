#ifndef GMAS_SIGNS_HPP
#define GMAS_SIGNS_HPP

#include "gmas/linalg.hpp"
#include "gmas/sign_vector.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>

namespace gmas {

using SignSet = std::set<SignVector>;

SignVector sign_of(std::span<const Rational> v);

/// Componentwise partial order with 0 < - and 0 < +.
bool leq(const SignVector& a, const SignVector& b);

/// Either every product a_j b_j is zero, or both a positive and a negative
/// product occur.
bool orthogonal(const SignVector& a, const SignVector& b);

inline constexpr std::size_t kDefaultEnumerationCap = 14;

class DimensionCapExceeded : public std::length_error {
public:
    DimensionCapExceeded(std::size_t n, std::size_t cap)
        : std::length_error("sign vector enumeration in dimension " + std::to_string(n) + " exceeds cap " +
                            std::to_string(cap)) {}
};

/// sigma(S): every sign vector realized by some vector of the subspace.
SignSet enumerate_sign_vectors(const SubspaceBasis& b, std::size_t cap = kDefaultEnumerationCap);

/// All sign vectors lying below some member.
SignSet closure(const SignSet& s);

/// Sign vectors of the subspace with maximal support (its topes).
SignSet maximal_sign_vectors(const SubspaceBasis& b);

struct ConditionResult {
    bool holds = false;
    std::optional<SignVector> witness;
};

/// sigma(S) ⊆ cl(sigma(S~)). Only the maximal sign vectors of S are checked,
/// each against S~ with zeros left free; every other member of sigma(S) lies
/// below one of them. The witness is a violating sign vector of S.
ConditionResult check_sigma_subset_closure(const SubspaceBasis& s, const SubspaceBasis& s_tilde);

/// sigma(S) ∩ sigma(S~⊥) = {0}. The witness is a common nonzero sign vector.
ConditionResult check_uniqueness_condition(const SubspaceBasis& s, const SubspaceBasis& s_tilde,
                                           std::size_t cap = kDefaultEnumerationCap);

}  // namespace gmas

#endif  // GMAS_SIGNS_HPP
