#pragma once

#include <vector>

#include "fidelity.hpp"
#include "linalg.hpp"
#include "manifold.hpp"
#include "matrix.hpp"

namespace buresgeom {

struct StateEnsemble {
    std::vector<Matrix> states;
    RealVector weights;

    void validate() const {
        if (static_cast<Eigen::Index>(states.size()) != weights.size())
            throw DimensionError("StateEnsemble: states/weights length mismatch");
        if (states.empty()) throw std::invalid_argument("StateEnsemble: empty ensemble");
        for (const auto& s : states) require_same_dim(states.front(), s, "StateEnsemble");
        if (weights.minCoeff() < 0.0)
            throw std::invalid_argument("StateEnsemble: negative weight");
        if (std::abs(weights.sum() - 1.0) > 1e-12)
            throw std::invalid_argument("StateEnsemble: weights must sum to 1");
    }

    static StateEnsemble uniform(std::vector<Matrix> states) {
        const auto n = static_cast<Eigen::Index>(states.size());
        return {std::move(states), RealVector::Constant(n, 1.0 / static_cast<double>(n))};
    }
};

// f(sigma) = sum_i F^U(rho_i, sigma), unweighted.
inline double total_fidelity(const Matrix& sigma, const StateEnsemble& ensemble) {
    ensemble.validate();
    double sum = 0.0;
    for (const auto& rho : ensemble.states) sum += uhlmann(rho, sigma);
    return sum;
}

enum class BarycenterNormalization {
    Weighted,          // P_mu = sum_i mu_i sqrt(P_mu^{1/2} P_i P_mu^{1/2})
    FidelityMaximizer  // sigma = (1/f(sigma)) sum_i sqrt(sigma^{1/2} rho_i sigma^{1/2})
};

struct BarycenterResult {
    Matrix sigma;
    int iterations = 0;
    double residual = 0.0;
    double total_fidelity = 0.0;
    bool converged = false;
};

inline BarycenterResult bw_barycenter(
    const StateEnsemble& ensemble, double tol = 1e-10, int max_iter = 10000,
    BarycenterNormalization norm = BarycenterNormalization::Weighted) {
    ensemble.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("bw_barycenter: tol must be > 0");
    const auto n = ensemble.states.size();
    const auto d = ensemble.states.front().rows();

    // Euclidean mixture start: PD and cheap.
    Matrix sigma = Matrix::Zero(d, d);
    for (size_t i = 0; i < n; ++i)
        sigma += ensemble.weights[static_cast<Eigen::Index>(i)] * ensemble.states[i];
    sigma = hermitize(sigma);

    BarycenterResult result;
    for (int k = 1; k <= max_iter; ++k) {
        const Matrix rt = mat_sqrt(sigma);
        Matrix next = Matrix::Zero(d, d);
        if (norm == BarycenterNormalization::Weighted) {
            for (size_t i = 0; i < n; ++i)
                next += ensemble.weights[static_cast<Eigen::Index>(i)] *
                        psd_sqrt(hermitize(rt * ensemble.states[i] * rt));
        } else {
            for (size_t i = 0; i < n; ++i)
                next += psd_sqrt(hermitize(rt * ensemble.states[i] * rt));
            next /= next.trace().real();
        }
        next = hermitize(next);
        const double defect = (next - sigma).norm() / sigma.norm();
        sigma = next;
        result.iterations = k;
        result.residual = defect;
        if (defect <= tol) {
            result.converged = true;
            break;
        }
    }
    result.sigma = sigma;
    result.total_fidelity = total_fidelity(sigma, ensemble);
    if (!result.converged)
        throw ConvergenceError("bw_barycenter: max_iter exceeded, last residual " +
                               std::to_string(result.residual));
    return result;
}

// (1/(n(n-1))) sum_{i != j} F^U(rho_i, rho_j)
inline double multivariate_fidelity(const std::vector<Matrix>& states) {
    const auto n = states.size();
    if (n < 2) throw std::invalid_argument("multivariate_fidelity: need n >= 2 states");
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j) sum += uhlmann(states[i], states[j]);
    return sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

// (1/(n(n-1))) sum_{i != j} F_sigma(rho_i, rho_j)
inline Cplx generalized_multivariate_fidelity(const std::vector<Matrix>& states,
                                              const Matrix& sigma) {
    const auto n = states.size();
    if (n < 2)
        throw std::invalid_argument("generalized_multivariate_fidelity: need n >= 2 states");
    Cplx sum = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j) sum += generalized_fidelity(states[i], states[j], sigma).value;
    return sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

struct BarycenterIdentityReport {
    BarycenterResult barycenter;
    double f_sigma = 0.0;
    Cplx double_sum;   // sum_{i,j} F_sigma(rho_i, rho_j), diagonal included
    double residual = 0.0;       // |f^2 - Re double_sum| / f^2
    double imag_residual = 0.0;  // |Im double_sum|
    bool pass = false;
};

// Verifies f(sigma)^2 = sum_{i,j} F_sigma(rho_i, rho_j) at the fidelity-maximizer
// fixed point.
inline BarycenterIdentityReport check_barycenter_identity(const std::vector<Matrix>& states,
                                                          double tol = 1e-6) {
    BarycenterIdentityReport rep;
    auto ensemble = StateEnsemble::uniform(states);
    rep.barycenter = bw_barycenter(ensemble, 1e-12, 10000,
                                   BarycenterNormalization::FidelityMaximizer);
    rep.f_sigma = rep.barycenter.total_fidelity;
    Cplx sum = 0.0;
    for (const auto& a : states)
        for (const auto& b : states)
            sum += generalized_fidelity(a, b, rep.barycenter.sigma).value;
    rep.double_sum = sum;
    const double f2 = rep.f_sigma * rep.f_sigma;
    rep.residual = std::abs(f2 - sum.real()) / f2;
    rep.imag_residual = std::abs(sum.imag());
    rep.pass = rep.residual <= tol && rep.imag_residual <= tol * f2;
    return rep;
}

}  // namespace buresgeom
