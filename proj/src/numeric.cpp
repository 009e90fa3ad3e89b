#include "gmas/numeric.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gmas {

Eigen::MatrixXd to_eigen(const RationalMatrix& m) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c).get_d();
    return out;
}

Eigen::VectorXd to_eigen(std::span<const double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::MatrixXd orthonormal_rows(const SubspaceBasis& b) {
    const auto n = static_cast<Eigen::Index>(b.ambient_dim());
    const auto k = static_cast<Eigen::Index>(b.dim());
    if (k == 0) return Eigen::MatrixXd(0, n);
    const Eigen::MatrixXd cols = to_eigen(b.as_columns());
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(cols);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
    return q.transpose();
}

Eigen::VectorXd monomials(const Eigen::MatrixXd& exponents, const Eigen::VectorXd& x) {
    return (exponents.transpose() * x.array().log().matrix()).array().exp().matrix();
}

void require_positive(const Eigen::VectorXd& x, const char* what) {
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (!(std::isfinite(x(i)) && x(i) > 0))
            throw std::invalid_argument(std::string(what) + " must be strictly positive");
}

}  // namespace gmas
