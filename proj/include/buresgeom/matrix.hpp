#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace buresgeom {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Error taxonomy shared by the library and the CLI exit-code mapping.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct PositivityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;

inline void require_square(const Matrix& a, const char* what) {
    if (a.rows() != a.cols() || a.rows() < 1)
        throw DimensionError(std::string(what) + ": matrix must be square and nonempty");
}

inline void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError(std::string(what) + ": dimension mismatch (" +
                             std::to_string(a.rows()) + " vs " + std::to_string(b.rows()) + ")");
}

inline bool is_hermitian(const Matrix& a, double tol = kHermitianTol) {
    if (a.rows() != a.cols()) return false;
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, a.cwiseAbs().maxCoeff());
}

// Symmetrize away floating-point asymmetry; inputs must already be Hermitian up to tolerance.
inline Matrix hermitize(const Matrix& a) {
    return 0.5 * (a + a.adjoint());
}

inline bool is_unitary(const Matrix& u, double tol = kUnitaryTol) {
    if (u.rows() != u.cols()) return false;
    const auto d = static_cast<double>(u.rows());
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm() <= tol * d;
}

class HermitianMatrix {
  public:
    explicit HermitianMatrix(Matrix entries) : m_(std::move(entries)) {
        require_square(m_, "HermitianMatrix");
        if (!is_hermitian(m_))
            throw std::invalid_argument("HermitianMatrix: input is not Hermitian");
        m_ = hermitize(m_);
    }

    Eigen::Index dim() const { return m_.rows(); }
    const Matrix& m() const { return m_; }

  private:
    Matrix m_;
};

// Strictly positive definite matrix. Construction rejects lambda_min <= floor,
// where the default floor is 1e-12 * lambda_max.
class PositiveMatrix {
  public:
    explicit PositiveMatrix(Matrix entries, double min_eig_floor = -1.0)
        : m_(std::move(entries)) {
        require_square(m_, "PositiveMatrix");
        if (!is_hermitian(m_))
            throw PositivityError("PositiveMatrix: input is not Hermitian");
        m_ = hermitize(m_);
        Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw ConvergenceError("PositiveMatrix: eigensolver failed");
        const double lmin = es.eigenvalues().minCoeff();
        const double lmax = es.eigenvalues().maxCoeff();
        const double floor = (min_eig_floor >= 0.0) ? min_eig_floor : 1e-12 * std::max(lmax, 0.0);
        if (lmin <= floor)
            throw PositivityError("PositiveMatrix: smallest eigenvalue " + std::to_string(lmin) +
                                  " is not above the floor " + std::to_string(floor));
        floor_ = floor;
    }

    Eigen::Index dim() const { return m_.rows(); }
    const Matrix& m() const { return m_; }
    double min_eig_floor() const { return floor_; }

  private:
    Matrix m_;
    double floor_ = 0.0;
};

class UnitaryMatrix {
  public:
    explicit UnitaryMatrix(Matrix entries) : m_(std::move(entries)) {
        require_square(m_, "UnitaryMatrix");
        if (!is_unitary(m_))
            throw std::invalid_argument("UnitaryMatrix: U*U deviates from identity");
    }

    Eigen::Index dim() const { return m_.rows(); }
    const Matrix& m() const { return m_; }

  private:
    Matrix m_;
};

}  // namespace buresgeom
