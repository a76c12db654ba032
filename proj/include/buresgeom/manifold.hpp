#pragma once

#include "linalg.hpp"
#include "matrix.hpp"

namespace buresgeom {

enum class MetricKind { BuresWasserstein, AffineInvariant, Euclidean };

inline const char* metric_name(MetricKind m) {
    switch (m) {
        case MetricKind::BuresWasserstein: return "bures-wasserstein";
        case MetricKind::AffineInvariant: return "affine-invariant";
        case MetricKind::Euclidean: return "euclidean";
    }
    return "?";
}

struct TangentVector {
    Matrix base;       // the point P
    Matrix direction;  // Hermitian X in T_P
    MetricKind metric;
};

// BW: Tr[L_P(X) P L_P(Y)], AI: Tr[P^-1 X P^-1 Y], Euc: Tr[XY]
inline double inner_product(MetricKind metric, const Matrix& p, const Matrix& x,
                            const Matrix& y) {
    require_same_dim(p, x, "inner_product");
    require_same_dim(p, y, "inner_product");
    switch (metric) {
        case MetricKind::BuresWasserstein: {
            const Matrix lx = lyapunov_solve(p, x);
            const Matrix ly = lyapunov_solve(p, y);
            return (lx * p * ly).trace().real();
        }
        case MetricKind::AffineInvariant: {
            const Matrix pinv = mat_inv(p);
            return (pinv * x * pinv * y).trace().real();
        }
        case MetricKind::Euclidean:
            return (x * y).trace().real();
    }
    throw std::logic_error("inner_product: unreachable");
}

inline Matrix exp_map(MetricKind metric, const Matrix& p, const Matrix& x) {
    require_same_dim(p, x, "exp_map");
    switch (metric) {
        case MetricKind::BuresWasserstein: {
            const Matrix m = Matrix::Identity(p.rows(), p.cols()) + lyapunov_solve(p, x);
            Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m), Eigen::EigenvaluesOnly);
            // The BW exponential is only locally defined: I + L_P(X) must stay PD.
            if (es.eigenvalues().minCoeff() <= 1e-12)
                throw PositivityError("exp_map: tangent vector outside bures-wasserstein domain");
            return hermitize(m * p * m);
        }
        case MetricKind::AffineInvariant: {
            const Matrix rt = mat_sqrt(p);
            return hermitize(rt * mat_exp(symmetrized_division(x, p)) * rt);
        }
        case MetricKind::Euclidean: {
            Matrix q = hermitize(p + x);
            Eigen::SelfAdjointEigenSolver<Matrix> es(q, Eigen::EigenvaluesOnly);
            if (es.eigenvalues().minCoeff() <= 1e-12)
                throw PositivityError("exp_map: tangent vector outside euclidean domain");
            return q;
        }
    }
    throw std::logic_error("exp_map: unreachable");
}

inline TangentVector log_map(MetricKind metric, const Matrix& p, const Matrix& q) {
    require_same_dim(p, q, "log_map");
    switch (metric) {
        case MetricKind::BuresWasserstein: {
            // L_P^{-1}(P^{-1} # Q - I) with L_P^{-1}(Y) = YP + PY
            const Matrix y = geometric_mean(mat_inv(p), q) - Matrix::Identity(p.rows(), p.cols());
            return {p, hermitize(y * p + p * y), metric};
        }
        case MetricKind::AffineInvariant: {
            const Matrix rt = mat_sqrt(p);
            return {p, hermitize(rt * mat_log(symmetrized_division(q, p)) * rt), metric};
        }
        case MetricKind::Euclidean:
            return {p, q - p, metric};
    }
    throw std::logic_error("log_map: unreachable");
}

inline Matrix geodesic_point(MetricKind metric, const Matrix& p, const Matrix& q, double t) {
    require_same_dim(p, q, "geodesic_point");
    switch (metric) {
        case MetricKind::BuresWasserstein: {
            const Matrix s = geometric_mean(mat_inv(p), q);
            const Matrix m = (1.0 - t) * Matrix::Identity(p.rows(), p.cols()) + t * s;
            const Matrix c = hermitize(m * p * m);
            if (t < 0.0 || t > 1.0) {
                Eigen::SelfAdjointEigenSolver<Matrix> es(c, Eigen::EigenvaluesOnly);
                if (es.eigenvalues().minCoeff() <= 1e-12)
                    throw PositivityError("geodesic_point: bures-wasserstein extension left P_d");
            }
            return c;
        }
        case MetricKind::AffineInvariant: {
            const Matrix rt = mat_sqrt(p);
            return hermitize(rt * mat_pow(symmetrized_division(q, p), t) * rt);
        }
        case MetricKind::Euclidean: {
            Matrix c = hermitize((1.0 - t) * p + t * q);
            if (t < 0.0 || t > 1.0) {
                Eigen::SelfAdjointEigenSolver<Matrix> es(c, Eigen::EigenvaluesOnly);
                if (es.eigenvalues().minCoeff() <= 1e-12)
                    throw PositivityError("geodesic_point: euclidean extension left P_d");
            }
            return c;
        }
    }
    throw std::logic_error("geodesic_point: unreachable");
}

inline double squared_distance(MetricKind metric, const Matrix& p, const Matrix& q) {
    require_same_dim(p, q, "squared_distance");
    switch (metric) {
        case MetricKind::BuresWasserstein: {
            const Matrix rt = mat_sqrt(p);
            const double fid = psd_sqrt(hermitize(rt * q * rt)).trace().real();
            return std::max((p + q).trace().real() - 2.0 * fid, 0.0);
        }
        case MetricKind::AffineInvariant:
            return mat_log(symmetrized_division(p, q)).squaredNorm();
        case MetricKind::Euclidean:
            return (p - q).squaredNorm();
    }
    throw std::logic_error("squared_distance: unreachable");
}

}  // namespace buresgeom
