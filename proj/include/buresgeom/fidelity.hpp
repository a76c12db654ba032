#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "matrix.hpp"

namespace buresgeom {

enum class FidelityForm { Definition, PolarUnitary, GeometricMean };

struct FidelityValue {
    Cplx value;
    FidelityForm form;
    std::optional<std::string> base_tag;
};

inline double classical_fidelity(const RealVector& p, const RealVector& q) {
    if (p.size() != q.size()) throw DimensionError("classical_fidelity: length mismatch");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0 || q[i] < 0.0)
            throw std::invalid_argument("classical_fidelity: entries must be nonnegative");
        sum += std::sqrt(p[i] * q[i]);
    }
    return sum;
}

// F^U(P,Q) = Tr[sqrt(P^{1/2} Q P^{1/2})]; PSD inputs handled by clipping.
inline double uhlmann(const Matrix& p, const Matrix& q) {
    require_same_dim(p, q, "uhlmann");
    const Matrix rt = psd_sqrt(p);
    return psd_sqrt(hermitize(rt * q * rt)).trace().real();
}

inline double holevo(const Matrix& p, const Matrix& q) {
    require_same_dim(p, q, "holevo");
    return (psd_sqrt(p) * psd_sqrt(q)).trace().real();
}

inline double matsumoto(const Matrix& p, const Matrix& q) {
    require_same_dim(p, q, "matsumoto");
    return geometric_mean(p, q).trace().real();
}

inline double log_euclidean(const Matrix& p, const Matrix& q) {
    require_same_dim(p, q, "log_euclidean");
    return mat_exp(0.5 * (mat_log(p) + mat_log(q))).trace().real();
}

// Tr[(P^{1/(2z)} Q^{1/(2z)})^z], evaluated as Tr[(P^{1/(4z)} Q^{1/(2z)} P^{1/(4z)})^z]
// so only PSD powers appear.
inline double z_fidelity(const Matrix& p, const Matrix& q, double z) {
    require_same_dim(p, q, "z_fidelity");
    if (!(z > 0.0)) throw std::invalid_argument("z_fidelity: z must be > 0");
    const Matrix pq = mat_pow(p, 1.0 / (4.0 * z));
    const Matrix qz = mat_pow(q, 1.0 / (2.0 * z));
    return mat_pow(hermitize(pq * qz * pq), z).trace().real();
}

template <typename FidelityFn>
double hellinger_quantity(const Matrix& p, const Matrix& q, FidelityFn&& fid) {
    return (p + q).trace().real() - 2.0 * fid(p, q);
}

namespace detail {

inline Cplx gen_fid_definition(const Matrix& p, const Matrix& q, const Matrix& r) {
    const Matrix rt = mat_sqrt(r);
    const Matrix rinv = mat_inv(r);
    const Matrix sp = psd_sqrt(hermitize(rt * p * rt));
    const Matrix sq = psd_sqrt(hermitize(rt * q * rt));
    return (sp * rinv * sq).trace();
}

inline Cplx gen_fid_polar(const Matrix& p, const Matrix& q, const Matrix& r) {
    const Matrix rt = mat_sqrt(r);
    const Matrix up = polar_factor(psd_sqrt(p) * rt);
    const Matrix uq = polar_factor(psd_sqrt(q) * rt);
    return (psd_sqrt(q) * uq * up.adjoint() * psd_sqrt(p)).trace();
}

inline Cplx gen_fid_geometric_mean(const Matrix& p, const Matrix& q, const Matrix& r) {
    const Matrix rinv = mat_inv(r);
    return (geometric_mean(rinv, q) * r * geometric_mean(rinv, p)).trace();
}

}  // namespace detail

// F_R(P,Q): P, Q may be PSD only through the Definition form; the polar and
// geometric-mean forms need strictly PD P and Q.
inline FidelityValue generalized_fidelity(const Matrix& p, const Matrix& q, const Matrix& r,
                                          FidelityForm form = FidelityForm::Definition) {
    require_same_dim(p, q, "generalized_fidelity");
    require_same_dim(p, r, "generalized_fidelity");
    require_pd(r, "generalized_fidelity: base");
    switch (form) {
        case FidelityForm::Definition:
            return {detail::gen_fid_definition(p, q, r), form, std::nullopt};
        case FidelityForm::PolarUnitary:
            return {detail::gen_fid_polar(p, q, r), form, std::nullopt};
        case FidelityForm::GeometricMean:
            return {detail::gen_fid_geometric_mean(p, q, r), form, std::nullopt};
    }
    throw std::logic_error("generalized_fidelity: unreachable");
}

// Pure-state simplification: <psi,phi><phi,R psi> / (F^U(P,R) F^U(Q,R)).
inline Cplx generalized_fidelity_pure(const Vector& psi, const Vector& phi, const Matrix& r) {
    if (psi.size() != phi.size() || psi.size() != r.rows())
        throw DimensionError("generalized_fidelity_pure: dimension mismatch");
    if (std::abs(psi.norm() - 1.0) > 1e-10 || std::abs(phi.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("generalized_fidelity_pure: vectors must be unit norm");
    const Cplx overlap = psi.dot(phi);  // <psi, phi>
    const Cplx phi_r_psi = phi.dot(r * psi);
    const double fu_pr = std::sqrt(psi.dot(r * psi).real());
    const double fu_qr = std::sqrt(phi.dot(r * phi).real());
    return overlap * phi_r_psi / (fu_pr * fu_qr);
}

inline double generalized_bures_sq(const Matrix& p, const Matrix& q, const Matrix& r) {
    const Cplx f = generalized_fidelity(p, q, r).value;
    return (p + q).trace().real() - 2.0 * f.real();
}

inline double generalized_bures(const Matrix& p, const Matrix& q, const Matrix& r) {
    return std::sqrt(std::max(generalized_bures_sq(p, q, r), 0.0));
}

// The unitary U_Q U_P^* with U_P = Pol(P^{1/2} R^{1/2}), U_Q = Pol(Q^{1/2} R^{1/2}).
inline Matrix unitary_factor(const Matrix& p, const Matrix& q, const Matrix& r) {
    require_same_dim(p, q, "unitary_factor");
    require_same_dim(p, r, "unitary_factor");
    const Matrix rt = mat_sqrt(r);
    const Matrix up = polar_factor(mat_sqrt(p) * rt);
    const Matrix uq = polar_factor(mat_sqrt(q) * rt);
    return uq * up.adjoint();
}

// F_{P^x}(P,Q) = Tr[P^{(1-x)/2} sqrt(P^{x/2} Q P^{x/2})]; real for all x.
inline double base_power_fidelity_p(const Matrix& p, const Matrix& q, double x) {
    const Matrix px = mat_pow(p, 0.5 * x);
    return (mat_pow(p, 0.5 * (1.0 - x)) * psd_sqrt(hermitize(px * q * px))).trace().real();
}

inline double base_power_fidelity_q(const Matrix& p, const Matrix& q, double x) {
    return base_power_fidelity_p(q, p, x);
}

// x-Polar fidelity: (F_{P^x} + F_{Q^x}) / 2. Recovers Uhlmann, Holevo, Matsumoto
// at x = 1, 0, -1.
inline double polar_fidelity(const Matrix& p, const Matrix& q, double x) {
    require_same_dim(p, q, "polar_fidelity");
    if (!std::isfinite(x)) throw std::invalid_argument("polar_fidelity: x must be finite");
    return 0.5 * (base_power_fidelity_p(p, q, x) + base_power_fidelity_q(p, q, x));
}

struct BaseEnsemble {
    std::vector<Matrix> bases;
    RealVector weights;

    void validate() const {
        if (static_cast<Eigen::Index>(bases.size()) != weights.size())
            throw DimensionError("BaseEnsemble: bases/weights length mismatch");
        if (bases.empty()) throw std::invalid_argument("BaseEnsemble: empty ensemble");
        if (weights.minCoeff() < 0.0)
            throw std::invalid_argument("BaseEnsemble: negative weight");
        if (std::abs(weights.sum() - 1.0) > 1e-12)
            throw std::invalid_argument("BaseEnsemble: weights must sum to 1");
    }
};

inline Cplx interior_fidelity(const Matrix& p, const Matrix& q, const BaseEnsemble& ensemble) {
    ensemble.validate();
    Cplx sum = 0.0;
    for (size_t i = 0; i < ensemble.bases.size(); ++i)
        sum += ensemble.weights[static_cast<Eigen::Index>(i)] *
               generalized_fidelity(p, q, ensemble.bases[i]).value;
    return sum;
}

// Mean unitary factor V-bar; an interior point of the spectral-norm unit ball.
inline Matrix mean_unitary_factor(const Matrix& p, const Matrix& q,
                                  const BaseEnsemble& ensemble) {
    ensemble.validate();
    Matrix vbar = Matrix::Zero(p.rows(), p.cols());
    for (size_t i = 0; i < ensemble.bases.size(); ++i)
        vbar += ensemble.weights[static_cast<Eigen::Index>(i)] *
                unitary_factor(p, q, ensemble.bases[i]);
    return vbar;
}

}  // namespace buresgeom
