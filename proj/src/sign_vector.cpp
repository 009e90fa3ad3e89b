#include "gmas/sign_vector.hpp"

#include <algorithm>
#include <stdexcept>

namespace gmas {

SignVector SignVector::parse(std::string_view text) {
    std::vector<Sign> e;
    e.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '+': e.push_back(Sign::Plus); break;
            case '-': e.push_back(Sign::Minus); break;
            case '0': e.push_back(Sign::Zero); break;
            default: throw std::invalid_argument("SignVector::parse: unexpected character '" + std::string(1, c) + "'");
        }
    }
    return SignVector(std::move(e));
}

bool SignVector::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](Sign s) { return s == Sign::Zero; });
}

std::size_t SignVector::support_size() const {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(), [](Sign s) { return s != Sign::Zero; }));
}

SignVector SignVector::operator-() const {
    SignVector out(*this);
    for (auto& s : out.entries_) s = negate(s);
    return out;
}

std::string SignVector::str() const {
    std::string s;
    s.reserve(entries_.size());
    for (Sign x : entries_) s.push_back(x == Sign::Plus ? '+' : x == Sign::Minus ? '-' : '0');
    return s;
}

}  // namespace gmas
