#ifndef QDISCORD_COMMON_HPP
#define QDISCORD_COMMON_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <complex>
#include <stdexcept>
#include <string>

namespace qdiscord {

inline constexpr const char* kVersion = "1.0.0";

using Complex = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using MatrixXr = Eigen::MatrixXd;
using VectorXc = Eigen::VectorXcd;
using VectorXr = Eigen::VectorXd;

// Thrown when an input violates a documented precondition.
class precondition_error : public std::invalid_argument {
public:
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when an internal identity that must hold by construction fails.
class contract_error : public std::logic_error {
public:
    explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

// tr[A B] without forming the product.
inline Complex trace_product(const MatrixXc& a, const MatrixXc& b) {
    return a.cwiseProduct(b.transpose()).sum();
}

inline double trace_product(const MatrixXr& a, const MatrixXr& b) {
    return a.cwiseProduct(b.transpose()).sum();
}

inline MatrixXc kron(const MatrixXc& a, const MatrixXc& b) {
    return Eigen::kroneckerProduct(a, b);
}

inline double hermiticity_deviation(const MatrixXc& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace qdiscord

#endif
