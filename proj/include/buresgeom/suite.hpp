#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "barycenter.hpp"
#include "divergence.hpp"
#include "fidelity.hpp"
#include "linalg.hpp"
#include "manifold.hpp"
#include "matrix.hpp"
#include "verify.hpp"

namespace buresgeom {

struct SuiteConfig {
    std::vector<Eigen::Index> dims{2, 3, 4, 6, 8};
    int trials = 200;
    std::uint64_t seed = 42;
    double tol = 1e-8;       // relative, unless a check states otherwise
    double imag_tol = 1e-10; // absolute, for imaginary-part-zero checks
    double cond_cap = 1e6;
};

struct CheckResult {
    std::string name;
    int trials = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool asserted = true;
    bool pass = true;
    std::string note;
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (c.asserted && !c.pass) return false;
        return true;
    }
};

namespace detail {

// Deterministic per-trial sample source: every matrix drawn inside one trial
// gets its own (seed, stream) pair, so trials are order-independent.
struct TrialCtx {
    Eigen::Index d;
    std::uint64_t seed;
    std::uint64_t base_stream;
    double cond_cap;
    std::uint64_t next = 0;

    Matrix pd() { return random_positive(d, seed, cond_cap, base_stream + next++).m(); }
    Matrix density() { return random_density(d, seed, base_stream + next++).m(); }
    Matrix unitary() { return random_unitary(d, seed, base_stream + next++); }
    double uniform() { return Rng(seed, base_stream + next++).next_double(); }

    RealVector simplex_point(Eigen::Index n) {
        Rng rng(seed, base_stream + next++);
        RealVector v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = -std::log(1.0 - rng.next_double());
        return v / v.sum();
    }

    Vector unit_vector() {
        Rng rng(seed, base_stream + next++);
        Vector v(d);
        for (Eigen::Index i = 0; i < d; ++i) v[i] = Cplx(rng.next_normal(), rng.next_normal());
        return v / v.norm();
    }
};

inline double rel_residual(Cplx got, Cplx want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

inline double rel_residual(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace detail

// Runs the whole harness: the fidelity property catalogue, the eleven path
// theorems, the block-matrix characterization, purification, SU(d), divergence
// recoveries, barycenter identities, and the stored contour witnesses.
inline SuiteReport run_suite(const SuiteConfig& cfg) {
    SuiteReport report;
    report.config = cfg;
    if (cfg.trials <= 0 || cfg.dims.empty()) return report;

    std::uint64_t check_id = 0;

    // body(ctx) -> residual for one trial
    auto add = [&](const std::string& name, double tol, int trials, auto&& body,
                   bool asserted = true, std::string note = "") {
        CheckResult res;
        res.name = name;
        res.trials = trials;
        res.tolerance = tol;
        res.asserted = asserted;
        res.note = std::move(note);
        const std::uint64_t id = check_id++;
        for (int k = 0; k < trials; ++k) {
            detail::TrialCtx ctx{cfg.dims[static_cast<size_t>(k) % cfg.dims.size()], cfg.seed,
                                 (id << 32) + static_cast<std::uint64_t>(k) * 256, cfg.cond_cap};
            res.max_residual = std::max(res.max_residual, body(ctx));
        }
        res.pass = res.max_residual <= res.tolerance;
        report.checks.push_back(std::move(res));
    };

    using detail::rel_residual;
    using detail::TrialCtx;

    // --- fidelity property catalogue -------------------------------------

    add("forms-agree", 1e-9, cfg.trials, [](TrialCtx& c) {
        const Matrix p = c.pd(), q = c.pd(), r = c.pd();
        const Cplx f0 = generalized_fidelity(p, q, r, FidelityForm::Definition).value;
        const Cplx f1 = generalized_fidelity(p, q, r, FidelityForm::PolarUnitary).value;
        const Cplx f2 = generalized_fidelity(p, q, r, FidelityForm::GeometricMean).value;
        return std::max(rel_residual(f1, f0), rel_residual(f2, f0));
    });

    add("named-reductions", 1e-9, cfg.trials, [](TrialCtx& c) {
        const Matrix p = c.pd(), q = c.pd();
        const Matrix id = Matrix::Identity(p.rows(), p.cols());
        double res = 0.0;
        const double fu = uhlmann(p, q), fm = matsumoto(p, q);
        res = std::max(res, rel_residual(generalized_fidelity(p, q, p).value, Cplx(fu)));
        res = std::max(res, rel_residual(generalized_fidelity(p, q, q).value, Cplx(fu)));
        res = std::max(res, rel_residual(generalized_fidelity(p, q, id).value, Cplx(holevo(p, q))));
        res = std::max(res, rel_residual(generalized_fidelity(p, q, mat_inv(p)).value, Cplx(fm)));
        res = std::max(res, rel_residual(generalized_fidelity(p, q, mat_inv(q)).value, Cplx(fm)));
        return res;
    });

    add("self-fidelity", 1e-10, cfg.trials, [](TrialCtx& c) {
        const Matrix p = c.pd(), r = c.pd();
        return rel_residual(generalized_fidelity(p, p, r).value, Cplx(p.trace().real()));
    });

    add("conjugate-symmetry", 1e-9, cfg.trials, [](TrialCtx& c) {
        const Matrix p = c.pd(), q = c.pd(), r = c.pd();
        return rel_residual(generalized_fidelity(p, q, r).value,
                            std::conj(generalized_fidelity(q, p, r).value));
    });

    add("quantization", cfg.tol, cfg.trials, [](TrialCtx& c) {
        // simultaneously diagonalizable triple collapses to the classical value
        const Matrix v = c.unitary();
        RealVector a(c.d), b(c.d), w(c.d);
        for (Eigen::Index i = 0; i < c.d; ++i) {
            a[i] = 0.05 + c.uniform();
            b[i] = 0.05 + c.uniform();
            w[i] = 0.05 + c.uniform();
        }
        auto embed = [&](const RealVector& x) {
            return hermitize(v * x.asDiagonal().toDenseMatrix().cast<Cplx>() * v.adjoint());
        };
        const Cplx f = generalized_fidelity(embed(a), embed(b), embed(w)).value;
        return rel_residual(f, Cplx(classical_fidelity(a, b)));
    });

    add("commuting-base-reality", cfg.imag_tol, cfg.trials, [](TrialCtx& c) {
        // [R, P] = 0 forces a real value
        const Matrix v = c.unitary();
        RealVector a(c.d), w(c.d);
        for (Eigen::Index i = 0; i < c.d; ++i) {
            a[i] = 0.05 + c.uniform();
            w[i] = 0.05 + c.uniform();
        }
        auto embed = [&](const RealVector& x) {
            return hermitize(v * x.asDiagonal().toDenseMatrix().cast<Cplx>() * v.adjoint());
        };
        const Matrix q = c.pd();
        return std::abs(generalized_fidelity(embed(a), q, embed(w)).value.imag());
    });

    add("gamma-commuting-collapse", cfg.tol, cfg.trials, [](TrialCtx& c) {
        // PRQ = QRP by construction: R^{1/2}PR^{1/2} and R^{1/2}QR^{1/2} share
        // an eigenbasis
        const Matrix r = c.pd();
        const Matrix v = c.unitary();
        const Matrix irt = mat_inv_sqrt(r);
        RealVector a(c.d), b(c.d);
        for (Eigen::Index i = 0; i < c.d; ++i) {
            a[i] = 0.05 + c.uniform();
            b[i] = 0.05 + c.uniform();
        }
        auto pull = [&](const RealVector& x) {
            return hermitize(irt * v * x.asDiagonal().toDenseMatrix().cast<Cplx>() * v.adjoint() *
                             irt);
        };
        const Matrix p = pull(a), q = pull(b);
        return rel_residual(generalized_fidelity(p, q, r).value, Cplx(matsumoto(p, q)));
    });

    add("multiplicativity", cfg.tol, cfg.trials, [](TrialCtx& c) {
        TrialCtx c2{std::min<Eigen::Index>(c.d, 3), c.seed, c.base_stream + 128, c.cond_cap};
        const Matrix p1 = c.pd(), q1 = c.pd(), r1 = c.pd();
        const Matrix p2 = c2.pd(), q2 = c2.pd(), r2 = c2.pd();
        const Cplx lhs = generalized_fidelity(kron(p1, p2), kron(q1, q2), kron(r1, r2)).value;
        const Cplx rhs =
            generalized_fidelity(p1, q1, r1).value * generalized_fidelity(p2, q2, r2).value;
        return rel_residual(lhs, rhs);
    });

    add("additivity", cfg.tol, cfg.trials, [](TrialCtx& c) {
        TrialCtx c2{std::min<Eigen::Index>(c.d, 4), c.seed, c.base_stream + 128, c.cond_cap};
        const Matrix p1 = c.pd(), q1 = c.pd(), r1 = c.pd();
        const Matrix p2 = c2.pd(), q2 = c2.pd(), r2 = c2.pd();
        const Cplx lhs =
            generalized_fidelity(direct_sum(p1, p2), direct_sum(q1, q2), direct_sum(r1, r2)).value;
        const Cplx rhs =
            generalized_fidelity(p1, q1, r1).value + generalized_fidelity(p2, q2, r2).value;
        return rel_residual(lhs, rhs);
    });

    add("unitary-invariance", cfg.tol, cfg.trials, [](TrialCtx& c) {
        const Matrix p = c.pd(), q = c.pd(), r = c.pd(), u = c.unitary();
        const Cplx lhs = generalized_fidelity(hermitize(u * p * u.adjoint()),
                                              hermitize(u * q * u.adjoint()),
                                              hermitize(u * r * u.adjoint()))
                             .value;
        return rel_residual(lhs, generalized_fidelity(p, q, r).value);
    });

    add("unitary-contravariance", cfg.tol, cfg.trials, [](TrialCtx& c) {
        const Matrix p = c.pd(), q = c.pd(), r = c.pd(), u = c.unitary();
        const Cplx lhs = generalized_fidelity(p, q, hermitize(u * r * u.adjoint())).value;
        const Cplx rhs = generalized_fidelity(hermitize(u.adjoint() * p * u),
                                              hermitize(u.adjoint() * q * u), r)
                             .value;
        return rel_residual(lhs, rhs);
    });

    add("scaling", cfg.tol, cfg.trials, [](TrialCtx& c) {
        const Matrix p = c.pd(), q = c.pd(), r = c.pd();
        const double a = 0.25 + 2.0 * c.uniform();
        const double b = 0.25 + 2.0 * c.uniform();
        const double s = 0.25 + 2.0 * c.uniform();
        const Cplx lhs = generalized_fidelity(a * p, b * q, s * r).value;
        const Cplx rhs = std::sqrt(a * b) * generalized_fidelity(p, q, r).value;
        return rel_residual(lhs, rhs);
    });

    add("uhlmann-bound", cfg.tol, cfg.trials, [](TrialCtx& c) {
        const Matrix p = c.pd(), q = c.pd(), r = c.pd();
        const double excess = std::abs(generalized_fidelity(p, q, r).value) - uhlmann(p, q);
        return std::max(excess, 0.0) / std::max(1.0, uhlmann(p, q));
    });

    add("fidelity-ordering", cfg.tol, cfg.trials, [](TrialCtx& c) {
        const Matrix p = c.pd(), q = c.pd();
        const double fm = matsumoto(p, q), fh = holevo(p, q), fu = uhlmann(p, q);
        return std::max({fm - fh, fh - fu, 0.0}) / std::max(1.0, fu);
    });

    add("orthogonal-support-zero", cfg.tol, cfg.trials, [](TrialCtx& c) {
        const Matrix a = c.density(), b = c.density();
        const Matrix zero = Matrix::Zero(c.d, c.d);
        const Matrix p = direct_sum(a, zero);
        const Matrix q = direct_sum(zero, b);
        const Matrix r = random_positive(2 * c.d, c.seed, c.cond_cap, c.base_stream + 64).m();
        return std::abs(generalized_fidelity(p, q, r).value);
    });

    add("pure-state-simplification", 1e-9, cfg.trials, [](TrialCtx& c) {
        const Vector psi = c.unit_vector(), phi = c.unit_vector();
        const Matrix r = c.pd();
        const Matrix p = psi * psi.adjoint(), q = phi * phi.adjoint();
        return rel_residual(generalized_fidelity(p, q, r).value,
                            generalized_fidelity_pure(psi, phi, r));
    });

    // --- distance structure ----------------------------------------------

    add("tangent-identity", cfg.tol, cfg.trials, [](TrialCtx& c) {
        const Matrix p = c.pd(), q = c.pd(), r = c.pd();
        const Matrix x = log_map(MetricKind::BuresWasserstein, r, p).direction;
        const Matrix y = log_map(MetricKind::BuresWasserstein, r, q).direction;
        const Matrix diff = x - y;
        const double norm_sq = inner_product(MetricKind::BuresWasserstein, r, diff, diff);
        return rel_residual(generalized_bures_sq(p, q, r), norm_sq);
    });

    add("bures-polar-form", cfg.tol, cfg.trials, [](TrialCtx& c) {
        const Matrix p = c.pd(), q = c.pd(), r = c.pd();
        const Matrix rt = mat_sqrt(r);
        const Matrix up = polar_factor(mat_sqrt(p) * rt);
        const Matrix uq = polar_factor(mat_sqrt(q) * rt);
        const double frob = (up.adjoint() * mat_sqrt(p) - uq.adjoint() * mat_sqrt(q)).squaredNorm();
        return rel_residual(generalized_bures_sq(p, q, r), frob);
    });

    add("distance-symmetry", 1e-12, cfg.trials, [](TrialCtx& c) {
        const Matrix p = c.pd(), q = c.pd(), r = c.pd();
        return std::abs(generalized_bures(p, q, r) - generalized_bures(q, p, r)) /
               std::max(1.0, generalized_bures(p, q, r));
    });

    add("distance-identity", cfg.tol, cfg.trials, [](TrialCtx& c) {
        const Matrix p = c.pd(), r = c.pd();
        // b_R(P,P) = 0 up to cancellation in Tr[P+Q] - 2 Re F, relative to scale
        double res = std::abs(generalized_bures_sq(p, p, r)) / (2.0 * p.trace().real());
        // nonnegativity on a random pair
        res = std::max(res, -generalized_bures_sq(p, c.pd(), r));
        // separation: a visible perturbation must give a clearly nonzero distance
        Matrix h = Matrix::Zero(c.d, c.d);
        h(0, 0) = 1e-3;
        if (generalized_bures(p, hermitize(p + h), r) <= 1e-7) res = std::max(res, 1.0);
        return res;
    });

    add("distance-triangle", 1e-10, cfg.trials, [](TrialCtx& c) {
        const Matrix p = c.pd(), q = c.pd(), s = c.pd(), r = c.pd();
        const double slack = generalized_bures(p, s, r) + generalized_bures(s, q, r) -
                             generalized_bures(p, q, r);
        return std::max(-slack, 0.0);
    });

    // --- the eleven path theorems ------------------------------------------

    for (int path = 1; path <= 11; ++path) {
        add("path-" + std::to_string(path), cfg.tol, cfg.trials, [path](TrialCtx& c) {
            const Matrix p = c.pd(), q = c.pd();
            return check_path(PathId(path), p, q, 9).max_residual;
        });
    }

    add("path-5-6-reality", cfg.imag_tol, cfg.trials, [](TrialCtx& c) {
        const Matrix p = c.pd(), q = c.pd();
        double res = 0.0;
        for (int k = 0; k <= 8; ++k) {
            const double t = k / 8.0;
            res = std::max(res,
                           std::abs(generalized_fidelity(p, q, path_base(PathId(5), p, q, t))
                                        .value.imag()));
            res = std::max(res,
                           std::abs(generalized_fidelity(p, q, path_base(PathId(6), p, q, t))
                                        .value.imag()));
        }
        return res;
    });

    // --- block-matrix characterization --------------------------------------

    add("block-system", 1e-9, cfg.trials, [](TrialCtx& c) {
        const Matrix p = c.pd(), q = c.pd(), r = c.pd();
        const BlockSystem sys = build_block_system(p, q, r);
        double res = block_feasibility_defect(sys) / std::max(1.0, sys.b.norm());
        res = std::max(res, std::max(-block_min_eigenvalue(sys) - 1e-10, 0.0));
        res = std::max(res,
                       rel_residual(block_objective(sys), uhlmann(p, r) + uhlmann(q, r)));
        const auto ext = extract_from_block(sys);
        const Cplx f = generalized_fidelity(p, q, r).value;
        res = std::max(res, rel_residual(ext.fidelity, f));
        res = std::max(res, rel_residual(ext.re_fidelity, f.real()));
        res = std::max(res, rel_residual(ext.bures_sq, generalized_bures_sq(p, q, r)));
        return res;
    });

    add("purification", 1e-9, cfg.trials, [](TrialCtx& c) {
        const Matrix p = c.pd(), q = c.pd(), r = c.pd();
        return check_purification(p, q, r) / std::max(1.0, (p + q).trace().real());
    });

    add("special-unitary-factor", cfg.tol, cfg.trials, [](TrialCtx& c) {
        const Matrix p = c.pd(), q = c.pd(), r = c.pd();
        return check_su_d(p, q, r);
    });

    // --- divergence recoveries -----------------------------------------------

    add("renyi-recovery", cfg.tol, cfg.trials, [](TrialCtx& c) {
        // Smoothed densities: the base choices raise the states to powers up to
        // |alpha/(1-alpha)|, so raw Ginibre conditioning would swamp the
        // comparison with rounding error.
        const Matrix id = Matrix::Identity(c.d, c.d);
        const Matrix p = hermitize(0.5 * c.density() + 0.5 / static_cast<double>(c.d) * id);
        const Matrix q = hermitize(0.5 * c.density() + 0.5 / static_cast<double>(c.d) * id);
        double res = 0.0;
        for (double alpha : {0.3, 0.7, 2.0, 3.0}) {
            res = std::max(res, rel_residual(generalized_renyi(p, q, id, alpha),
                                             petz(p, q, alpha)));
            res = std::max(res,
                           rel_residual(generalized_renyi(
                                            p, q, mat_pow(q, (1.0 - alpha) / alpha), alpha),
                                        sandwich(p, q, alpha)));
            res = std::max(res,
                           rel_residual(generalized_renyi(
                                            p, q, mat_pow(p, alpha / (1.0 - alpha)), alpha),
                                        reverse_sandwich(p, q, alpha)));
            res = std::max(res, rel_residual(generalized_renyi(p, q, mat_inv(q), alpha),
                                             geometric_renyi(p, q, alpha)));
        }
        return res;
    });

    add("renyi-classical-collapse", 1e-10, cfg.trials, [](TrialCtx& c) {
        RealVector a(c.d), b(c.d);
        for (Eigen::Index i = 0; i < c.d; ++i) {
            a[i] = 0.05 + c.uniform();
            b[i] = 0.05 + c.uniform();
        }
        a /= a.sum();
        b /= b.sum();
        Matrix p = Matrix::Zero(c.d, c.d), q = Matrix::Zero(c.d, c.d), r = Matrix::Zero(c.d, c.d);
        for (Eigen::Index i = 0; i < c.d; ++i) {
            p(i, i) = a[i];
            q(i, i) = b[i];
            r(i, i) = 0.05 + c.uniform();
        }
        double res = 0.0;
        for (double alpha : {0.3, 0.7, 2.0, 3.0})
            res = std::max(res, std::abs(generalized_renyi(p, q, r, alpha) -
                                         classical_renyi(a, b, alpha)));
        return res;
    });

    // --- barycenters -----------------------------------------------------------

    add("barycenter-identity", 1e-6, std::max(1, cfg.trials / 20), [](TrialCtx& c) {
        double res = 0.0;
        for (int n : {2, 3, 5}) {
            std::vector<Matrix> states;
            for (int i = 0; i < n; ++i) states.push_back(c.density());
            const auto rep = check_barycenter_identity(states, 1e-6);
            res = std::max(res, rep.residual);
            res = std::max(res, rep.imag_residual / (rep.f_sigma * rep.f_sigma));
        }
        return res;
    });

    add("barycenter-two-point", 1e-7, std::max(1, cfg.trials / 20), [](TrialCtx& c) {
        const Matrix p = c.pd(), q = c.pd();
        const double t = 0.1 + 0.8 * c.uniform();
        RealVector w(2);
        w << 1.0 - t, t;
        const auto result = bw_barycenter({{p, q}, w}, 1e-13, 20000);
        const Matrix expected = geodesic_point(MetricKind::BuresWasserstein, p, q, t);
        return (result.sigma - expected).norm() / std::max(1.0, expected.norm());
    });

    // --- stored contour witnesses ------------------------------------------------

    const FigureWitnesses w = figure_witnesses();

    add("witness-commuting-gap", 0.0, 1, [&w](TrialCtx&) {
        RealVector a(2), b(2);
        a << w.commuting_p(0, 0).real(), w.commuting_p(1, 1).real();
        b << w.commuting_q(0, 0).real(), w.commuting_q(1, 1).real();
        const double gap = std::abs(
            generalized_fidelity(w.commuting_p, w.commuting_q, w.commuting_base).value -
            Cplx(classical_fidelity(a, b)));
        return 1e-3 - gap;  // pass iff gap >= 1e-3
    });

    add("witness-negative-real", 0.0, 1, [&w](TrialCtx&) {
        const double re =
            generalized_fidelity(w.negative_p, w.negative_q, w.negative_base).value.real();
        return re + 1e-3;  // pass iff re <= -1e-3
    });

    add("witness-geodesic-constant", cfg.tol, 1, [&w](TrialCtx&) {
        return check_path(PathId(2), w.negative_p, w.negative_q, 11).max_residual;
    });

    // --- monotonicity scan (open problem: reported, never asserted) ---------------

    {
        CheckResult res;
        res.name = "monotonicity-scan";
        res.trials = cfg.trials;
        res.tolerance = 0.0;
        res.asserted = false;
        res.pass = true;
        const std::uint64_t id = check_id++;
        std::vector<double> grid;
        for (int k = 0; k <= 20; ++k) grid.push_back(-1.0 + 0.1 * k);
        int violations = 0;
        for (int k = 0; k < cfg.trials; ++k) {
            detail::TrialCtx ctx{cfg.dims[static_cast<size_t>(k) % cfg.dims.size()], cfg.seed,
                                 (id << 32) + static_cast<std::uint64_t>(k) * 256, cfg.cond_cap};
            const auto scan = monotonicity_scan(ctx.pd(), ctx.pd(), grid);
            if (scan.violation) {
                ++violations;
                res.max_residual = std::max(res.max_residual, scan.worst_drop);
            }
        }
        res.note = violations == 0 ? "no decrease observed on [-1,1]"
                                   : std::to_string(violations) + " trials showed a decrease";
        report.checks.push_back(std::move(res));
    }

    return report;
}

}  // namespace buresgeom
