#pragma once

#include <cmath>
#include <limits>

#include "fidelity.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace buresgeom {

// All divergences report in bits by default (the max-relative entropy is defined
// through 2^lambda); natural-log output is available behind the flag.
enum class LogBase { Two, Natural };

namespace detail {

inline double div_log(double x, LogBase base) {
    return base == LogBase::Two ? std::log2(x) : std::log(x);
}

inline void check_alpha(double alpha) {
    if (!(alpha > 0.0) || alpha == 1.0)
        throw std::invalid_argument("divergence: alpha must lie in (0,1) or (1,inf)");
}

}  // namespace detail

inline double classical_renyi(const RealVector& p, const RealVector& q, double alpha,
                              LogBase base = LogBase::Two) {
    if (p.size() != q.size()) throw DimensionError("classical_renyi: length mismatch");
    detail::check_alpha(alpha);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0 || q[i] < 0.0)
            throw std::invalid_argument("classical_renyi: entries must be nonnegative");
        if (p[i] == 0.0) continue;
        if (q[i] == 0.0) {
            if (alpha > 1.0) return std::numeric_limits<double>::infinity();
            continue;
        }
        sum += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
    }
    return detail::div_log(sum, base) / (alpha - 1.0);
}

// D_{alpha,z}(P||Q) = (1/(alpha-1)) log Tr[(P^{a/2z} Q^{(1-a)/z} P^{a/2z})^z]
inline double alpha_z_divergence(const Matrix& p, const Matrix& q, double alpha, double z,
                                 LogBase base = LogBase::Two) {
    require_same_dim(p, q, "alpha_z_divergence");
    detail::check_alpha(alpha);
    if (!(z > 0.0)) throw std::invalid_argument("alpha_z_divergence: z must be > 0");
    const Matrix pa = mat_pow(p, alpha / (2.0 * z));
    const Matrix qa = mat_pow(q, (1.0 - alpha) / z);
    const double tr = mat_pow(hermitize(pa * qa * pa), z).trace().real();
    return detail::div_log(tr, base) / (alpha - 1.0);
}

inline double petz(const Matrix& p, const Matrix& q, double alpha,
                   LogBase base = LogBase::Two) {
    detail::check_alpha(alpha);
    const double tr = (mat_pow(p, alpha) * mat_pow(q, 1.0 - alpha)).trace().real();
    return detail::div_log(tr, base) / (alpha - 1.0);
}

inline double sandwich(const Matrix& p, const Matrix& q, double alpha,
                       LogBase base = LogBase::Two) {
    detail::check_alpha(alpha);
    const Matrix qa = mat_pow(q, (1.0 - alpha) / (2.0 * alpha));
    const double tr = mat_pow(hermitize(qa * p * qa), alpha).trace().real();
    return detail::div_log(tr, base) / (alpha - 1.0);
}

inline double reverse_sandwich(const Matrix& p, const Matrix& q, double alpha,
                               LogBase base = LogBase::Two) {
    detail::check_alpha(alpha);
    const Matrix pa = mat_pow(p, alpha / (2.0 * (1.0 - alpha)));
    const double tr = mat_pow(hermitize(pa * q * pa), 1.0 - alpha).trace().real();
    return detail::div_log(tr, base) / (alpha - 1.0);
}

// (1/(alpha-1)) log Tr[Q #_alpha P]
inline double geometric_renyi(const Matrix& p, const Matrix& q, double alpha,
                              LogBase base = LogBase::Two) {
    detail::check_alpha(alpha);
    const double tr = weighted_geometric_mean(q, p, alpha).trace().real();
    return detail::div_log(tr, base) / (alpha - 1.0);
}

inline double umegaki(const Matrix& p, const Matrix& q, LogBase base = LogBase::Two) {
    require_same_dim(p, q, "umegaki");
    const double nats = (p * (mat_log(p) - mat_log(q))).trace().real();
    return base == LogBase::Two ? nats / std::log(2.0) : nats;
}

inline double belavkin_staszewski(const Matrix& p, const Matrix& q,
                                  LogBase base = LogBase::Two) {
    require_same_dim(p, q, "belavkin_staszewski");
    const Matrix rt = mat_sqrt(p);
    const double nats = (p * mat_log(hermitize(rt * mat_inv(q) * rt))).trace().real();
    return base == LogBase::Two ? nats / std::log(2.0) : nats;
}

// D^max = log2 lambda_max(Q^{-1/2} P Q^{-1/2})
inline double max_relative(const Matrix& p, const Matrix& q, LogBase base = LogBase::Two) {
    require_same_dim(p, q, "max_relative");
    const auto sd = spectral_decompose(symmetrized_division(p, q));
    return detail::div_log(sd.eigenvalues.maxCoeff(), base);
}

// F_R^alpha(P,Q) = Tr[(R^{1/2} P R^{1/2})^alpha R^{-1} (R^{1/2} Q R^{1/2})^{1-alpha}]
inline Cplx generalized_trace_functional(const Matrix& p, const Matrix& q, const Matrix& r,
                                         double alpha) {
    require_same_dim(p, q, "generalized_trace_functional");
    require_same_dim(p, r, "generalized_trace_functional");
    require_pd(r, "generalized_trace_functional: base");
    const Matrix rt = mat_sqrt(r);
    const Matrix lhs = mat_pow(hermitize(rt * p * rt), alpha);
    const Matrix rhs = mat_pow(hermitize(rt * q * rt), 1.0 - alpha);
    return (lhs * mat_inv(r) * rhs).trace();
}

// D-hat_{alpha,R}(P||Q) = (1/(alpha-1)) log Re F_R^alpha(P,Q). The paper defines
// the divergence only through the real part; a nonpositive real part is a
// domain error, not a complex logarithm.
inline double generalized_renyi(const Matrix& p, const Matrix& q, const Matrix& r, double alpha,
                                LogBase base = LogBase::Two) {
    detail::check_alpha(alpha);
    const double re = generalized_trace_functional(p, q, r, alpha).real();
    if (!(re > 0.0))
        throw std::domain_error("generalized_renyi: Re F_R^alpha is nonpositive, value undefined");
    return detail::div_log(re, base) / (alpha - 1.0);
}

}  // namespace buresgeom
