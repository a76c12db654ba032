#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "barycenter.hpp"
#include "divergence.hpp"
#include "fidelity.hpp"
#include "linalg.hpp"
#include "manifold.hpp"
#include "matrix.hpp"

namespace buresgeom {

// ---------------------------------------------------------------------------
// Geodesic-path theorems
// ---------------------------------------------------------------------------

enum class PathExpectation {
    UhlmannInvariant,
    MatsumotoInvariant,
    CovariantPair,
    NamedRecoveryAtAnchors
};

struct PathId {
    int id;  // 1..11
    explicit PathId(int v) : id(v) {
        if (v < 1 || v > 11) throw std::invalid_argument("PathId: must be in 1..11");
    }
};

inline PathExpectation path_expectation(PathId path) {
    switch (path.id) {
        case 1:
        case 2: return PathExpectation::UhlmannInvariant;
        case 3:
        case 4:
        case 7:
        case 8: return PathExpectation::CovariantPair;
        case 5:
        case 6: return PathExpectation::NamedRecoveryAtAnchors;
        default: return PathExpectation::MatsumotoInvariant;
    }
}

// Base point R for each of the eleven Fig-style paths.
inline Matrix path_base(PathId path, const Matrix& p, const Matrix& q, double t) {
    using MK = MetricKind;
    const Matrix pinv = mat_inv(p);
    const Matrix qinv = mat_inv(q);
    switch (path.id) {
        case 1: return mat_inv(geodesic_point(MK::BuresWasserstein, pinv, qinv, t));
        case 2: return geodesic_point(MK::BuresWasserstein, p, q, t);
        case 3: return mat_inv(geodesic_point(MK::BuresWasserstein, pinv, q, t));
        case 4: return geodesic_point(MK::BuresWasserstein, p, qinv, t);
        case 5: return mat_pow(p, 1.0 - 2.0 * t);
        case 6: return mat_pow(q, 1.0 - 2.0 * t);
        case 7: return geodesic_point(MK::BuresWasserstein, q, pinv, t);
        case 8: return mat_inv(geodesic_point(MK::BuresWasserstein, qinv, p, t));
        case 9: return geodesic_point(MK::AffineInvariant, pinv, qinv, t);
        case 10: return geodesic_point(MK::Euclidean, pinv, qinv, t);
        case 11: return mat_inv(geodesic_point(MK::Euclidean, p, q, t));
    }
    throw std::logic_error("path_base: unreachable");
}

struct PathReport {
    PathId path;
    std::vector<std::pair<double, Cplx>> samples;
    double max_residual = 0.0;
    bool pass = false;
    PathExpectation expected;
};

inline int covariant_partner(int id) {
    switch (id) {
        case 3: return 8;
        case 4: return 7;
        case 7: return 4;
        case 8: return 3;
        default: throw std::invalid_argument("covariant_partner: path has no partner");
    }
}

inline PathReport check_path(PathId path, const Matrix& p, const Matrix& q, int n_points = 9,
                             double tol = 1e-8) {
    if (n_points < 3) throw std::invalid_argument("check_path: need n_points >= 3");
    PathReport rep{path, {}, 0.0, false, path_expectation(path)};
    const double scale = std::max(1.0, uhlmann(p, q));
    for (int k = 0; k < n_points; ++k) {
        const double t = static_cast<double>(k) / (n_points - 1);
        const Matrix r = path_base(path, p, q, t);
        const Cplx f = generalized_fidelity(p, q, r).value;
        rep.samples.emplace_back(t, f);
        double res = 0.0;
        switch (rep.expected) {
            case PathExpectation::UhlmannInvariant:
                res = std::abs(f - uhlmann(p, q)) / scale;
                break;
            case PathExpectation::MatsumotoInvariant:
                res = std::abs(f - matsumoto(p, q)) / scale;
                break;
            case PathExpectation::CovariantPair: {
                const Matrix r2 = path_base(PathId(covariant_partner(path.id)), p, q, t);
                res = std::abs(f - generalized_fidelity(p, q, r2).value) / scale;
                break;
            }
            case PathExpectation::NamedRecoveryAtAnchors: {
                // t in {0, 1/2, 1} recovers Uhlmann / Holevo / Matsumoto; elsewhere
                // only reality is guaranteed.
                res = std::abs(f.imag());
                if (std::abs(t - 0.0) < 1e-15) res = std::max(res, std::abs(f - uhlmann(p, q)) / scale);
                if (std::abs(t - 0.5) < 1e-15) res = std::max(res, std::abs(f - holevo(p, q)) / scale);
                if (std::abs(t - 1.0) < 1e-15) res = std::max(res, std::abs(f - matsumoto(p, q)) / scale);
                break;
            }
        }
        rep.max_residual = std::max(rep.max_residual, res);
    }
    rep.pass = rep.max_residual <= tol;
    return rep;
}

// ---------------------------------------------------------------------------
// Block-matrix characterization
// ---------------------------------------------------------------------------

struct BlockSystem {
    Matrix a;       // objective
    Matrix b;       // diagonal target of the block projector
    Matrix k;       // fidelity extractor
    Matrix j;       // distance extractor
    Matrix x_star;  // closed-form optimal feasible point
    Eigen::Index d = 0;
};

inline BlockSystem build_block_system(const Matrix& p, const Matrix& q, const Matrix& r) {
    require_same_dim(p, q, "build_block_system");
    require_same_dim(p, r, "build_block_system");
    const Eigen::Index d = p.rows();
    const Matrix id = Matrix::Identity(d, d);
    const Matrix zero = Matrix::Zero(d, d);

    BlockSystem sys;
    sys.d = d;
    sys.a = Matrix::Zero(3 * d, 3 * d);
    sys.a.block(0, 2 * d, d, d) = 0.5 * id;
    sys.a.block(d, 2 * d, d, d) = 0.5 * id;
    sys.a.block(2 * d, 0, d, d) = 0.5 * id;
    sys.a.block(2 * d, d, d, d) = 0.5 * id;

    sys.b = Matrix::Zero(3 * d, 3 * d);
    sys.b.block(0, 0, d, d) = p;
    sys.b.block(d, d, d, d) = q;
    sys.b.block(2 * d, 2 * d, d, d) = r;

    sys.k = Matrix::Zero(3 * d, 3 * d);
    sys.k.block(0, d, d, d) = id;

    sys.j = Matrix::Zero(3 * d, 3 * d);
    sys.j.block(0, 0, d, d) = id;
    sys.j.block(0, d, d, d) = -id;
    sys.j.block(d, 0, d, d) = -id;
    sys.j.block(d, d, d, d) = id;

    const Matrix rt = mat_sqrt(r);
    const Matrix up = polar_factor(mat_sqrt(p) * rt);
    const Matrix uq = polar_factor(mat_sqrt(q) * rt);
    Matrix t(3 * d, d);
    t.block(0, 0, d, d) = mat_sqrt(p) * up;
    t.block(d, 0, d, d) = mat_sqrt(q) * uq;
    t.block(2 * d, 0, d, d) = rt;
    sys.x_star = t * t.adjoint();
    (void)zero;
    return sys;
}

// Block-diagonal projector feasibility defect: ||Phi(X_star) - B||_F.
inline double block_feasibility_defect(const BlockSystem& sys) {
    const Eigen::Index d = sys.d;
    double defect = 0.0;
    for (int blk = 0; blk < 3; ++blk)
        defect += (sys.x_star.block(blk * d, blk * d, d, d) -
                   sys.b.block(blk * d, blk * d, d, d))
                      .squaredNorm();
    return std::sqrt(defect);
}

inline double block_min_eigenvalue(const BlockSystem& sys) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(sys.x_star), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

inline double block_objective(const BlockSystem& sys) {
    return (sys.a * sys.x_star).trace().real();
}

struct BlockExtraction {
    Cplx fidelity;
    double re_fidelity;
    double bures_sq;
};

inline BlockExtraction extract_from_block(const BlockSystem& sys) {
    const Cplx f = (sys.k * sys.x_star).trace();
    const double re = (0.5 * (sys.k + sys.k.adjoint()) * sys.x_star).trace().real();
    const double b = (sys.j * sys.x_star).trace().real();
    return {f, re, b};
}

// ---------------------------------------------------------------------------
// Purification theorem
// ---------------------------------------------------------------------------

// (P^{1/2} (x) U^T)|Omega> with |Omega> = sum_i |i,i>, laid out row-major in d^2.
inline Vector purification_vector(const Matrix& p, const Matrix& u) {
    require_same_dim(p, u, "purification_vector");
    const Eigen::Index d = p.rows();
    const Matrix m = psd_sqrt(p) * u;  // ((A (x) U^T)|Omega>)_{(i,j)} = (A U)_{ij}
    Vector v(d * d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) v[i * d + j] = m(i, j);
    return v;
}

inline Matrix partial_trace_second(const Vector& v, Eigen::Index d) {
    if (v.size() != d * d) throw DimensionError("partial_trace_second: bad vector length");
    Matrix out(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index k = 0; k < d; ++k) {
            Cplx s = 0.0;
            for (Eigen::Index j = 0; j < d; ++j) s += v[i * d + j] * std::conj(v[k * d + j]);
            out(i, k) = s;
        }
    return out;
}

// |<P-purification, Q-purification> - F_R(P,Q)| plus the partial-trace defects.
inline double check_purification(const Matrix& p, const Matrix& q, const Matrix& r) {
    const Matrix rt = mat_sqrt(r);
    const Matrix up = polar_factor(mat_sqrt(p) * rt);
    const Matrix uq = polar_factor(mat_sqrt(q) * rt);
    const Vector vp = purification_vector(p, up);
    const Vector vq = purification_vector(q, uq);
    const Cplx overlap = vp.dot(vq);  // <vp, vq>
    const Cplx f = generalized_fidelity(p, q, r).value;
    double res = std::abs(overlap - f);
    res = std::max(res, (partial_trace_second(vp, p.rows()) - p).norm());
    res = std::max(res, (partial_trace_second(vq, q.rows()) - q).norm());
    return res;
}

// ---------------------------------------------------------------------------
// SU(d) determinant property
// ---------------------------------------------------------------------------

inline double check_su_d(const Matrix& p, const Matrix& q, const Matrix& r) {
    const Matrix u = unitary_factor(p, q, r);
    Cplx det(1.0, 0.0);
    Eigen::ComplexEigenSolver<Matrix> es(u);
    for (Eigen::Index i = 0; i < u.rows(); ++i) det *= es.eigenvalues()[i];
    return std::abs(det - Cplx(1.0, 0.0));
}

// ---------------------------------------------------------------------------
// Monotonicity scan (open problem; reporting only, never asserted)
// ---------------------------------------------------------------------------

struct MonotonicityScan {
    std::vector<double> grid;
    std::vector<double> f_px;   // F_{P^x}(P,Q)
    std::vector<double> f_qx;   // F_{Q^x}(P,Q)
    std::vector<double> f_bar;  // x-Polar fidelity
    bool violation = false;
    double worst_drop = 0.0;  // largest decrease observed as x increases
};

inline MonotonicityScan monotonicity_scan(const Matrix& p, const Matrix& q,
                                          const std::vector<double>& grid) {
    MonotonicityScan scan;
    scan.grid = grid;
    for (double x : grid) {
        scan.f_px.push_back(base_power_fidelity_p(p, q, x));
        scan.f_qx.push_back(base_power_fidelity_q(p, q, x));
        scan.f_bar.push_back(polar_fidelity(p, q, x));
    }
    for (size_t i = 1; i < grid.size(); ++i) {
        for (const auto* seq : {&scan.f_px, &scan.f_qx, &scan.f_bar}) {
            const double drop = (*seq)[i - 1] - (*seq)[i];
            if (drop > 1e-12) {
                scan.violation = true;
                scan.worst_drop = std::max(scan.worst_drop, drop);
            }
        }
    }
    return scan;
}

// ---------------------------------------------------------------------------
// Stored witnesses behind the qualitative contour claims
// ---------------------------------------------------------------------------

// Rebit state with Bloch vector (x, 0, z): (I + x X + z Z) / 2.
inline Matrix rebit_state(double x, double z) {
    if (x * x + z * z >= 1.0)
        throw PositivityError("rebit_state: Bloch vector must lie strictly inside the disk");
    Matrix r(2, 2);
    r << Cplx(0.5 * (1.0 + z)), Cplx(0.5 * x), Cplx(0.5 * x), Cplx(0.5 * (1.0 - z));
    return r;
}

struct FigureWitnesses {
    // (a) commuting pair whose generalized fidelity differs from the classical one
    Matrix commuting_p, commuting_q, commuting_base;
    // (b) pair and base where Re F_R < 0
    Matrix negative_p, negative_q, negative_base;
};

inline FigureWitnesses figure_witnesses() {
    FigureWitnesses w;
    w.commuting_p = Matrix::Zero(2, 2);
    w.commuting_p.diagonal() << Cplx(0.75), Cplx(0.25);
    w.commuting_q = Matrix::Zero(2, 2);
    w.commuting_q.diagonal() << Cplx(0.25), Cplx(0.75);
    w.commuting_base = rebit_state(0.8, 0.0);

    // Nearly pure rebits with a base pulled toward the -x, -z corner; found by
    // grid search (Re F_R ~ -0.44) and frozen here.
    const auto rebit_pure_mix = [](double theta, double purity) {
        return hermitize(purity * rebit_state(std::sin(theta) * 0.9999,
                                              std::cos(theta) * 0.9999) +
                         (1.0 - purity) * 0.5 * Matrix::Identity(2, 2));
    };
    w.negative_p = rebit_pure_mix(0.35, 0.999);
    w.negative_q = rebit_pure_mix(2.10, 0.999);
    w.negative_base = rebit_state(-0.9, -0.3);
    return w;
}

}  // namespace buresgeom
