#include <catch2/catch_amalgamated.hpp>

#include "buresgeom/linalg.hpp"

using namespace buresgeom;

namespace {

Matrix pd(Eigen::Index d, std::uint64_t stream) {
    return random_positive(d, 7, 1e6, stream).m();
}

}  // namespace

TEST_CASE("spectral decomposition reconstructs and orders eigenvalues") {
    const Matrix p = pd(5, 1);
    const auto sd = spectral_decompose(p);
    const Matrix rebuilt = sd.eigenvectors *
                           sd.eigenvalues.asDiagonal().toDenseMatrix().cast<Cplx>() *
                           sd.eigenvectors.adjoint();
    CHECK((rebuilt - p).norm() < 1e-12 * p.norm());
    for (Eigen::Index i = 1; i < sd.eigenvalues.size(); ++i)
        CHECK(sd.eigenvalues[i] >= sd.eigenvalues[i - 1]);
    CHECK(is_unitary(sd.eigenvectors));
}

TEST_CASE("spectral decomposition rejects non-Hermitian input") {
    Matrix a(2, 2);
    a << Cplx(1.0), Cplx(2.0), Cplx(0.0), Cplx(1.0);
    CHECK_THROWS_AS(spectral_decompose(a), std::invalid_argument);
}

TEST_CASE("matrix functions invert each other") {
    const Matrix p = pd(4, 2);
    CHECK((mat_sqrt(p) * mat_sqrt(p) - p).norm() < 1e-12 * p.norm());
    CHECK((mat_exp(mat_log(p)) - p).norm() < 1e-11 * p.norm());
    CHECK((mat_pow(p, 2.0) - p * p).norm() < 1e-11 * (p * p).norm());
    CHECK((mat_inv(p) * p - Matrix::Identity(4, 4)).norm() < 1e-9);
    CHECK((mat_inv_sqrt(p) - mat_inv(mat_sqrt(p))).norm() < 1e-9);
}

TEST_CASE("psd square root handles rank deficiency") {
    Matrix p = Matrix::Zero(2, 2);
    p(0, 0) = 4.0;
    const Matrix s = psd_sqrt(p);
    CHECK(std::abs(s(0, 0).real() - 2.0) < 1e-14);
    CHECK(std::abs(s(1, 1)) < 1e-14);
    // tiny negative noise is clipped, not propagated as sqrt(eps)
    p(1, 1) = -1e-16;
    CHECK(std::abs(psd_sqrt(p)(1, 1)) < 1e-14);
}

TEST_CASE("polar factor is the unitary part") {
    const Matrix a = pd(3, 3) * random_unitary(3, 7, 4);
    const Matrix u = polar_factor(a);
    CHECK(is_unitary(u));
    // A = U |A| with |A| = (A*A)^{1/2}
    const Matrix abs_a = psd_sqrt(hermitize(a.adjoint() * a));
    CHECK((u * abs_a - a).norm() < 1e-10 * a.norm());
    // polar factor of a unitary is itself
    const Matrix v = random_unitary(4, 7, 5);
    CHECK((polar_factor(v) - v).norm() < 1e-12);
}

TEST_CASE("polar factor rejects singular input") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 1.0;
    CHECK_THROWS_AS(polar_factor(a), PositivityError);
}

TEST_CASE("polar factor of sqrt(P) sqrt(Q) satisfies the exchange identities") {
    const Matrix p = pd(4, 6), q = pd(4, 7);
    const Matrix ph = mat_sqrt(p), qh = mat_sqrt(q);
    const Matrix u = polar_factor(ph * qh);
    const Matrix sq_qpq = psd_sqrt(hermitize(qh * p * qh));
    const Matrix sq_pqp = psd_sqrt(hermitize(ph * q * ph));
    const double scale = std::max(1.0, sq_qpq.norm());

    CHECK((u.adjoint() * ph * qh - sq_qpq).norm() < 1e-10 * scale);
    CHECK((qh * ph * u - sq_qpq).norm() < 1e-10 * scale);
    CHECK((u * sq_qpq * u.adjoint() - sq_pqp).norm() < 1e-10 * scale);
    CHECK((polar_factor(qh * ph) - u.adjoint()).norm() < 1e-10);
    CHECK((polar_factor(mat_inv_sqrt(p) * mat_inv_sqrt(q)) - u).norm() < 1e-9);

    const Matrix mean = geometric_mean(mat_inv(p), q);
    CHECK((p * mean - ph * u * qh).norm() < 1e-9 * scale);
    CHECK((mean * p - qh * u.adjoint() * ph).norm() < 1e-9 * scale);
}

TEST_CASE("geometric mean solves the Riccati equation") {
    const Matrix a = pd(4, 8), b = pd(4, 9);
    const Matrix x = geometric_mean(a, b);
    CHECK((x * mat_inv(a) * x - b).norm() < 1e-9 * b.norm());
    CHECK((geometric_mean(a, b) - geometric_mean(b, a)).norm() < 1e-9 * x.norm());
    CHECK((geometric_mean(a, a) - a).norm() < 1e-11 * a.norm());
}

TEST_CASE("weighted geometric mean interpolates") {
    const Matrix a = pd(3, 10), b = pd(3, 11);
    CHECK((weighted_geometric_mean(a, b, 0.5) - geometric_mean(a, b)).norm() < 1e-10);
    CHECK((weighted_geometric_mean(a, b, 0.0) - a).norm() < 1e-10 * a.norm());
    CHECK((weighted_geometric_mean(a, b, 1.0) - b).norm() < 1e-9 * b.norm());
}

TEST_CASE("lyapunov solve satisfies YP + PY = X") {
    const Matrix p = pd(5, 12);
    const Matrix x = hermitize(pd(5, 13) - pd(5, 14));
    const Matrix y = lyapunov_solve(p, x);
    CHECK((y * p + p * y - x).norm() < 1e-10 * std::max(1.0, x.norm()));
}

TEST_CASE("random draws are deterministic and well conditioned") {
    const Matrix a = random_positive(4, 42, 1e6, 3).m();
    const Matrix b = random_positive(4, 42, 1e6, 3).m();
    const Matrix c = random_positive(4, 42, 1e6, 4).m();
    CHECK((a - b).norm() == 0.0);
    CHECK((a - c).norm() > 1e-8);

    const Matrix tight = random_positive(6, 5, 10.0, 0).m();
    const auto sd = spectral_decompose(tight);
    CHECK(sd.eigenvalues.minCoeff() > 0.0);
    CHECK(sd.eigenvalues.maxCoeff() / sd.eigenvalues.minCoeff() <= 10.0 * (1.0 + 1e-10));

    const Matrix rho = random_density(3, 9).m();
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-13);
}

TEST_CASE("rng streams are independent and platform-stable") {
    Rng a(1, 0), b(1, 0), c(1, 1);
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() != c.next_u64());
    double mean = 0.0;
    Rng r(123, 0);
    for (int i = 0; i < 10000; ++i) mean += r.next_normal();
    CHECK(std::abs(mean / 10000.0) < 0.05);
}

TEST_CASE("kron and direct sum") {
    Matrix a(2, 2), b(2, 2);
    a << Cplx(1.0), Cplx(2.0), Cplx(3.0), Cplx(4.0);
    b = Matrix::Identity(2, 2);
    const Matrix k = kron(a, b);
    CHECK(k.rows() == 4);
    CHECK(std::abs(k(0, 0) - Cplx(1.0)) < 1e-15);
    CHECK(std::abs(k(2, 2) - Cplx(4.0)) < 1e-15);
    CHECK(std::abs(k(0, 1)) < 1e-15);
    const Matrix s = direct_sum(a, b);
    CHECK(s.rows() == 4);
    CHECK(std::abs(s(1, 0) - Cplx(3.0)) < 1e-15);
    CHECK(std::abs(s(2, 0)) < 1e-15);
    CHECK(std::abs(s(3, 3) - Cplx(1.0)) < 1e-15);
}

TEST_CASE("positive matrix construction guards") {
    Matrix nd = Matrix::Identity(2, 2);
    nd(1, 1) = -0.5;
    CHECK_THROWS_AS(PositiveMatrix(nd), PositivityError);
    Matrix nh(2, 2);
    nh << Cplx(1.0), Cplx(0.5), Cplx(0.0), Cplx(1.0);
    CHECK_THROWS_AS(PositiveMatrix(nh), PositivityError);
    CHECK_NOTHROW(PositiveMatrix(Matrix::Identity(3, 3)));
    CHECK_THROWS_AS(require_same_dim(Matrix::Identity(2, 2), Matrix::Identity(3, 3), "t"),
                    DimensionError);
}
