#include <catch2/catch_amalgamated.hpp>

#include "buresgeom/manifold.hpp"

using namespace buresgeom;

namespace {

Matrix pd(Eigen::Index d, std::uint64_t stream) {
    return random_positive(d, 11, 1e6, stream).m();
}

// Closed-form qubit oracle: F^U(P,Q)^2 = Tr[PQ] + 2 sqrt(det P det Q),
// independent of any eigendecomposition.
double qubit_uhlmann(const Matrix& p, const Matrix& q) {
    const double tr_pq = (p * q).trace().real();
    const double dets = (p.determinant() * q.determinant()).real();
    return std::sqrt(tr_pq + 2.0 * std::sqrt(std::max(dets, 0.0)));
}

const std::vector<MetricKind> kMetrics = {MetricKind::BuresWasserstein,
                                          MetricKind::AffineInvariant, MetricKind::Euclidean};

}  // namespace

TEST_CASE("log then exp returns to the target point") {
    for (auto metric : kMetrics) {
        for (Eigen::Index d : {2, 3, 5}) {
            const Matrix p = pd(d, 20 + d), q = pd(d, 30 + d);
            const TangentVector v = log_map(metric, p, q);
            const Matrix back = exp_map(metric, p, v.direction);
            INFO(metric_name(metric) << " d=" << d);
            CHECK((back - q).norm() < 1e-9 * q.norm());
        }
    }
}

TEST_CASE("log at the base point vanishes") {
    const Matrix p = pd(3, 1);
    for (auto metric : kMetrics)
        CHECK(log_map(metric, p, p).direction.norm() < 1e-10 * p.norm());
}

TEST_CASE("geodesics hit their endpoints") {
    const Matrix p = pd(4, 2), q = pd(4, 3);
    for (auto metric : kMetrics) {
        CHECK((geodesic_point(metric, p, q, 0.0) - p).norm() < 1e-10 * p.norm());
        CHECK((geodesic_point(metric, p, q, 1.0) - q).norm() < 1e-9 * q.norm());
    }
}

TEST_CASE("affine-invariant midpoint is the geometric mean") {
    const Matrix p = pd(3, 4), q = pd(3, 5);
    const Matrix mid = geodesic_point(MetricKind::AffineInvariant, p, q, 0.5);
    CHECK((mid - geometric_mean(p, q)).norm() < 1e-10 * mid.norm());
}

TEST_CASE("geodesic agrees with exp of the scaled log") {
    for (auto metric : kMetrics) {
        const Matrix p = pd(3, 6), q = pd(3, 7);
        const TangentVector v = log_map(metric, p, q);
        for (double t : {0.25, 0.5, 0.75}) {
            const Matrix via_exp = exp_map(metric, p, t * v.direction);
            CHECK((geodesic_point(metric, p, q, t) - via_exp).norm() < 1e-9);
        }
    }
}

TEST_CASE("inner product is symmetric and positive") {
    const Matrix p = pd(4, 8);
    const Matrix x = hermitize(pd(4, 9) - pd(4, 10));
    const Matrix y = hermitize(pd(4, 11) - pd(4, 12));
    for (auto metric : kMetrics) {
        CHECK(inner_product(metric, p, x, y) ==
              Catch::Approx(inner_product(metric, p, y, x)).margin(1e-10));
        CHECK(inner_product(metric, p, x, x) > 0.0);
    }
}

TEST_CASE("squared distance matches the geodesic speed") {
    // d(P,Q)^2 = <Log_P Q, Log_P Q>_P for a geodesic metric
    for (auto metric : kMetrics) {
        const Matrix p = pd(3, 13), q = pd(3, 14);
        const TangentVector v = log_map(metric, p, q);
        const double via_log = inner_product(metric, p, v.direction, v.direction);
        CHECK(squared_distance(metric, p, q) == Catch::Approx(via_log).epsilon(1e-8));
    }
}

TEST_CASE("bures-wasserstein distance matches the qubit closed form") {
    Matrix p0 = Matrix::Zero(2, 2);
    p0.diagonal() << Cplx(0.75), Cplx(0.25);
    Matrix q0(2, 2);
    q0 << Cplx(0.5), Cplx(0.25), Cplx(0.25), Cplx(0.5);
    const double expected = 2.0 - 2.0 * qubit_uhlmann(p0, q0);
    CHECK(squared_distance(MetricKind::BuresWasserstein, p0, q0) ==
          Catch::Approx(expected).margin(1e-12));
    // frozen value: 2 - 2 sqrt(7/8)
    CHECK(squared_distance(MetricKind::BuresWasserstein, p0, q0) ==
          Catch::Approx(2.0 - 2.0 * std::sqrt(0.875)).margin(1e-13));

    const Matrix p = pd(2, 15), q = pd(2, 16);
    const double exp_rand = (p + q).trace().real() - 2.0 * qubit_uhlmann(p, q);
    CHECK(squared_distance(MetricKind::BuresWasserstein, p, q) ==
          Catch::Approx(exp_rand).margin(1e-10));
}

TEST_CASE("affine-invariant geometry is congruence invariant") {
    const Matrix a = pd(3, 17), b = pd(3, 18);
    const Matrix x = pd(3, 19) * random_unitary(3, 11, 20);  // invertible, not normal
    auto push = [&](const Matrix& m) { return hermitize(x * m * x.adjoint()); };
    for (double t : {0.3, 0.7}) {
        const Matrix lhs = push(geodesic_point(MetricKind::AffineInvariant, a, b, t));
        const Matrix rhs = geodesic_point(MetricKind::AffineInvariant, push(a), push(b), t);
        CHECK((lhs - rhs).norm() < 1e-8 * rhs.norm());
    }
    CHECK(squared_distance(MetricKind::AffineInvariant, a, b) ==
          Catch::Approx(squared_distance(MetricKind::AffineInvariant, push(a), push(b)))
              .epsilon(1e-9));
}

TEST_CASE("euclidean geometry is flat") {
    const Matrix p = pd(3, 21), q = pd(3, 22);
    CHECK((geodesic_point(MetricKind::Euclidean, p, q, 0.5) - 0.5 * (p + q)).norm() < 1e-13);
    CHECK(squared_distance(MetricKind::Euclidean, p, q) ==
          Catch::Approx((p - q).squaredNorm()).epsilon(1e-12));
}

TEST_CASE("bures-wasserstein exponential rejects departures from the cone") {
    const Matrix p = Matrix::Identity(2, 2);
    Matrix x = Matrix::Zero(2, 2);
    x(0, 0) = -4.0;  // I + L_P(X) = I + X/2 has eigenvalue -1
    CHECK_THROWS_AS(exp_map(MetricKind::BuresWasserstein, p, x), PositivityError);
    CHECK_THROWS_AS(exp_map(MetricKind::Euclidean, p, x), PositivityError);
}

TEST_CASE("geodesic extension beyond [0,1]") {
    const Matrix p = pd(3, 23), q = pd(3, 24);
    // AI extension is globally defined
    CHECK_NOTHROW(geodesic_point(MetricKind::AffineInvariant, p, q, 2.5));
    CHECK_NOTHROW(geodesic_point(MetricKind::AffineInvariant, p, q, -1.5));
    // Euclidean extension leaves the cone eventually
    Matrix a = Matrix::Identity(2, 2), b = Matrix::Identity(2, 2);
    b(0, 0) = 0.1;
    CHECK_THROWS_AS(geodesic_point(MetricKind::Euclidean, a, b, 3.0), PositivityError);
    // BW: extrapolating I -> 0.01 I collapses to zero at t = 10/9
    CHECK_THROWS_AS(geodesic_point(MetricKind::BuresWasserstein, a, 0.01 * a, 10.0 / 9.0),
                    PositivityError);
}

TEST_CASE("dimension mismatches are rejected") {
    const Matrix p = pd(2, 25), q = pd(3, 26);
    CHECK_THROWS_AS(squared_distance(MetricKind::Euclidean, p, q), DimensionError);
    CHECK_THROWS_AS(log_map(MetricKind::BuresWasserstein, p, q), DimensionError);
}
