#ifndef GMAS_NUMERIC_HPP
#define GMAS_NUMERIC_HPP

#include "gmas/linalg.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace gmas {

Eigen::MatrixXd to_eigen(const RationalMatrix& m);
Eigen::VectorXd to_eigen(std::span<const double> v);
std::vector<double> to_std(const Eigen::VectorXd& v);

/// Rows form an orthonormal basis of span(b) (thin Householder QR).
Eigen::MatrixXd orthonormal_rows(const SubspaceBasis& b);

/// x^Y for every column y of the exponent matrix, computed as exp(Y^T log x).
Eigen::VectorXd monomials(const Eigen::MatrixXd& exponents, const Eigen::VectorXd& x);

/// Throws std::invalid_argument unless every entry is finite and > 0.
void require_positive(const Eigen::VectorXd& x, const char* what);

}  // namespace gmas

#endif  // GMAS_NUMERIC_HPP
