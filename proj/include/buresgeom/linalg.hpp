#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <functional>

#include "matrix.hpp"
#include "rng.hpp"

namespace buresgeom {

struct SpectralDecomposition {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // unitary, columns
};

inline SpectralDecomposition spectral_decompose(const Matrix& h) {
    require_square(h, "spectral_decompose");
    if (!is_hermitian(h, 1e-10))
        throw std::invalid_argument("spectral_decompose: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(h));
    if (es.info() != Eigen::Success)
        throw ConvergenceError("spectral_decompose: eigen-iteration did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

// V f(diag(lambda)) V* for a scalar function applied on the spectrum.
inline Matrix spectral_map(const Matrix& h, const std::function<double(double)>& fn) {
    auto sd = spectral_decompose(h);
    RealVector mapped(sd.eigenvalues.size());
    for (Eigen::Index i = 0; i < mapped.size(); ++i) mapped[i] = fn(sd.eigenvalues[i]);
    return hermitize(sd.eigenvectors * mapped.asDiagonal().toDenseMatrix().cast<Cplx>() *
                     sd.eigenvectors.adjoint());
}

inline void require_pd(const Matrix& a, const char* what) {
    require_square(a, what);
    if (!is_hermitian(a, 1e-10))
        throw PositivityError(std::string(what) + ": matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(a), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw PositivityError(std::string(what) + ": matrix is not positive definite");
}

inline Matrix mat_sqrt(const Matrix& p) {
    return spectral_map(p, [](double x) { return std::sqrt(x); });
}

// Principal square root for PSD inputs. Eigenvalues below the noise floor are
// clipped to zero before the root; otherwise rank-deficient inputs turn
// O(eps) eigenvalue noise into O(sqrt(eps)) output noise.
inline Matrix psd_sqrt(const Matrix& p) {
    auto sd = spectral_decompose(p);
    const double floor = 1e-13 * std::max(sd.eigenvalues.cwiseAbs().maxCoeff(), 0.0);
    RealVector mapped(sd.eigenvalues.size());
    for (Eigen::Index i = 0; i < mapped.size(); ++i)
        mapped[i] = sd.eigenvalues[i] <= floor ? 0.0 : std::sqrt(sd.eigenvalues[i]);
    return hermitize(sd.eigenvectors * mapped.asDiagonal().toDenseMatrix().cast<Cplx>() *
                     sd.eigenvectors.adjoint());
}

inline Matrix mat_inv_sqrt(const Matrix& p) {
    return spectral_map(p, [](double x) { return 1.0 / std::sqrt(x); });
}

inline Matrix mat_log(const Matrix& p) {
    return spectral_map(p, [](double x) { return std::log(x); });
}

inline Matrix mat_exp(const Matrix& h) {
    return spectral_map(h, [](double x) { return std::exp(x); });
}

inline Matrix mat_pow(const Matrix& p, double s) {
    if (!std::isfinite(s)) throw std::invalid_argument("mat_pow: exponent must be finite");
    return spectral_map(p, [s](double x) { return std::pow(x, s); });
}

inline Matrix mat_inv(const Matrix& p) {
    return spectral_map(p, [](double x) { return 1.0 / x; });
}

// Pol(A) = A (A*A)^{-1/2}, computed from the SVD for stability.
inline Matrix polar_factor(const Matrix& a, double sv_tol = 1e-12) {
    require_square(a, "polar_factor");
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin <= sv_tol * std::max(1.0, smax))
        throw PositivityError("polar_factor: matrix is singular to working precision");
    return svd.matrixU() * svd.matrixV().adjoint();
}

// A # B = A^{1/2} sqrt(A^{-1/2} B A^{-1/2}) A^{1/2}
inline Matrix geometric_mean(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b, "geometric_mean");
    const Matrix rt = mat_sqrt(a);
    const Matrix irt = mat_inv_sqrt(a);
    return hermitize(rt * mat_sqrt(hermitize(irt * b * irt)) * rt);
}

// A #_alpha B = A^{1/2} (A^{-1/2} B A^{-1/2})^alpha A^{1/2}
inline Matrix weighted_geometric_mean(const Matrix& a, const Matrix& b, double alpha) {
    require_same_dim(a, b, "weighted_geometric_mean");
    if (!std::isfinite(alpha))
        throw std::invalid_argument("weighted_geometric_mean: alpha must be finite");
    const Matrix rt = mat_sqrt(a);
    const Matrix irt = mat_inv_sqrt(a);
    return hermitize(rt * mat_pow(hermitize(irt * b * irt), alpha) * rt);
}

// B^{-1/2} A B^{-1/2}
inline Matrix symmetrized_division(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b, "symmetrized_division");
    const Matrix irt = mat_inv_sqrt(b);
    return hermitize(irt * a * irt);
}

// Solve Y P + P Y = X in P's eigenbasis: Yij = Xij / (li + lj).
inline Matrix lyapunov_solve(const Matrix& p, const Matrix& x) {
    require_same_dim(p, x, "lyapunov_solve");
    auto sd = spectral_decompose(p);
    Matrix xt = sd.eigenvectors.adjoint() * x * sd.eigenvectors;
    for (Eigen::Index i = 0; i < xt.rows(); ++i)
        for (Eigen::Index j = 0; j < xt.cols(); ++j)
            xt(i, j) /= sd.eigenvalues[i] + sd.eigenvalues[j];
    return hermitize(sd.eigenvectors * xt * sd.eigenvectors.adjoint());
}

inline Matrix random_ginibre(Eigen::Index d, Rng& rng) {
    Matrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            const double re = rng.next_normal();
            const double im = rng.next_normal();
            g(i, j) = Cplx(re, im) / std::sqrt(2.0);
        }
    return g;
}

// P = G G* + eps I with eps chosen so cond(P) <= cond_cap.
inline PositiveMatrix random_positive(Eigen::Index d, std::uint64_t seed, double cond_cap = 1e6,
                                      std::uint64_t stream = 0) {
    if (d < 1) throw DimensionError("random_positive: d must be >= 1");
    if (cond_cap < 1.0) throw std::invalid_argument("random_positive: cond_cap must be >= 1");
    Rng rng(seed, stream);
    const Matrix g = random_ginibre(d, rng);
    Matrix p = hermitize(g * g.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(p, Eigen::EigenvaluesOnly);
    const double lmin = std::max(es.eigenvalues().minCoeff(), 0.0);
    const double lmax = es.eigenvalues().maxCoeff();
    if (lmin <= 0.0 || lmax / lmin > cond_cap) {
        const double eps = std::max((lmax - cond_cap * lmin) / (cond_cap - 1.0), 1e-14 * lmax);
        p += eps * Matrix::Identity(d, d);
    }
    return PositiveMatrix(p, 0.0);
}

inline PositiveMatrix random_density(Eigen::Index d, std::uint64_t seed,
                                     std::uint64_t stream = 0) {
    PositiveMatrix p = random_positive(d, seed, 1e6, stream);
    return PositiveMatrix(p.m() / p.m().trace().real(), 0.0);
}

inline Matrix random_unitary(Eigen::Index d, std::uint64_t seed, std::uint64_t stream = 0) {
    Rng rng(seed, stream);
    return polar_factor(random_ginibre(d, rng));
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
    Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

}  // namespace buresgeom
