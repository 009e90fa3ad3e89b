#ifndef GMAS_SIGN_VECTOR_HPP
#define GMAS_SIGN_VECTOR_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace gmas {

enum class Sign : std::int8_t { Minus = -1, Zero = 0, Plus = 1 };

inline Sign negate(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }
inline Sign operator*(Sign a, Sign b) { return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b)); }

/// An element of {-,0,+}^n. Renders as a string such as "+-0+".
class SignVector {
public:
    SignVector() = default;
    explicit SignVector(std::size_t n) : entries_(n, Sign::Zero) {}
    explicit SignVector(std::vector<Sign> entries) : entries_(std::move(entries)) {}
    SignVector(std::initializer_list<Sign> entries) : entries_(entries) {}

    /// Accepts '+', '-', '0'. Throws std::invalid_argument on anything else.
    static SignVector parse(std::string_view text);

    std::size_t size() const { return entries_.size(); }
    Sign operator[](std::size_t i) const { return entries_[i]; }
    Sign& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<Sign>& entries() const { return entries_; }

    bool is_zero() const;
    std::size_t support_size() const;
    SignVector operator-() const;

    std::string str() const;

    auto operator<=>(const SignVector&) const = default;

private:
    std::vector<Sign> entries_;
};

}  // namespace gmas

#endif  // GMAS_SIGN_VECTOR_HPP
