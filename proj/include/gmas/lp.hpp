#ifndef GMAS_LP_HPP
#define GMAS_LP_HPP

#include "gmas/linalg.hpp"
#include "gmas/sign_vector.hpp"

#include <optional>

namespace gmas {

struct LpResult {
    enum class Status { Optimal, Unbounded };
    Status status = Status::Optimal;
    Rational value;
    RationalVector x;
};

/// Exact primal simplex with Bland's rule for
///   maximize c^T x  subject to  A x <= b,  x >= 0,
/// where b >= 0 so that the origin is a feasible starting vertex.
LpResult maximize(const RationalMatrix& A, const RationalVector& b, const RationalVector& c);

struct SignFeasibility {
    bool feasible = false;
    std::optional<RationalVector> witness;
};

/// Decides whether some v in span(b) has v_i > 0 where constraint_i = '+',
/// v_i < 0 where constraint_i = '-', and v_i = 0 where constraint_i = '0'
/// (unconstrained there instead when zeros_are_free). A feasible answer
/// carries an exact witness vector.
///
/// Coordinates pinned to zero are eliminated by restricting the basis first;
/// the remaining strict inequalities are decided by maximizing a margin t
/// with |coefficients| <= 1 and t <= 1. The pattern is realizable iff t* > 0.
SignFeasibility strict_sign_feasible(const SubspaceBasis& b, const SignVector& constraint, bool zeros_are_free);

/// Basis of span(b) ∩ {x : x_i = 0 for all i with zero_mask[i]}.
SubspaceBasis restrict_to_zeros(const SubspaceBasis& b, const std::vector<bool>& zero_mask);

}  // namespace gmas

#endif  // GMAS_LP_HPP
