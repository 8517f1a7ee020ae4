#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qle/errors.hpp"
#include "qle/scattering.hpp"

using namespace qle;
using namespace qle::scattering;

namespace {

CMatrix circulator() {
    CMatrix c = CMatrix::Zero(3, 3);
    c(0, 2) = c(1, 0) = c(2, 1) = 1.0;
    return c;
}

CMatrix isolator() {
    CMatrix c = CMatrix::Zero(2, 2);
    c(1, 0) = 1.0;
    return c;
}

CMatrix random_unitary(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> nd;
    CMatrix a(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) a(j, k) = Complex(nd(rng), nd(rng));
    }
    Eigen::HouseholderQR<CMatrix> qr(a);
    return qr.householderQ() * CMatrix::Identity(n, n);
}

// Passive matrix with a mix of unit, zero and interior singular values.
CMatrix random_passive(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RVector sv(n);
    for (int i = 0; i < n; ++i) {
        const double r = u(rng);
        sv(i) = r < 0.2 ? 1.0 : r < 0.3 ? 0.0 : u(rng) * (1.0 - 1e-6);
    }
    return random_unitary(rng, n) * sv.cast<Complex>().asDiagonal() * random_unitary(rng, n).adjoint();
}

double unitarity_error(const CMatrix& m) {
    return (m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("classify examples") {
    auto c = classify(ScatteringMatrix(circulator()));
    CHECK(c.unitary);
    CHECK_FALSE(c.reciprocal);
    CHECK(c.passive);

    c = classify(ScatteringMatrix(CMatrix::Identity(4, 4)));
    CHECK(c.unitary);
    CHECK(c.reciprocal);
    CHECK(c.passive);

    c = classify(ScatteringMatrix(isolator()));
    CHECK_FALSE(c.unitary);
    CHECK_FALSE(c.reciprocal);
    CHECK(c.passive);

    c = classify(ScatteringMatrix(CMatrix::Identity(2, 2) * 1.5));
    CHECK_FALSE(c.passive);

    CHECK(classification_csv(classify(ScatteringMatrix(isolator()))) == "unitary,reciprocal,passive\nfalse,false,true\n");
    CHECK_THROWS_AS(ScatteringMatrix(CMatrix(2, 3)), Error);
}

TEST_CASE("dilate the isolator into a three-port") {
    const ScatteringMatrix s(isolator());
    CHECK(defect_rank(s) == 1);
    const auto big = dilate_to_unitary(s);
    REQUIRE(big.dim() == 3);
    CHECK(big.entries().topLeftCorner(2, 2) == isolator());
    CHECK(unitarity_error(big.entries()) <= 1e-8);
    const auto c = classify(big);
    CHECK(c.unitary);
    CHECK_FALSE(c.reciprocal);
    // every completion is a phased permutation like the circulator
    CHECK((big.entries().cwiseAbs() - circulator().cwiseAbs()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dilation of a unitary adds no ports") {
    std::mt19937_64 rng(1);
    const CMatrix u = random_unitary(rng, 4);
    const auto big = dilate_to_unitary(ScatteringMatrix(u));
    CHECK(big.dim() == 4);
    CHECK(big.entries() == u);
}

TEST_CASE("dilation of a one-port attenuator") {
    CMatrix a(1, 1);
    a(0, 0) = 0.5;
    const auto big = dilate_to_unitary(ScatteringMatrix(a));
    REQUIRE(big.dim() == 2);
    const double d = std::sqrt(3.0) / 2.0;
    CHECK(std::abs(big(0, 0)) == doctest::Approx(0.5));
    CHECK(std::abs(big(0, 1)) == doctest::Approx(d));
    CHECK(std::abs(big(1, 0)) == doctest::Approx(d));
    CHECK(std::abs(big(1, 1)) == doctest::Approx(0.5));
    CHECK(unitarity_error(big.entries()) < 1e-14);
}

TEST_CASE("dilation rejects gain") {
    try {
        dilate_to_unitary(ScatteringMatrix(CMatrix::Identity(2, 2) * 1.01));
        FAIL("expected NotPassive");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotPassive);
    }
}

TEST_CASE("dilation property: random passive matrices") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + trial % 6;
        const CMatrix m = random_passive(rng, n);
        const ScatteringMatrix s(m);
        const auto big = dilate_to_unitary(s);
        Eigen::JacobiSVD<CMatrix> svd(m);
        const auto below = (svd.singularValues().array() < 1.0 - kTolRank).count();
        CHECK(big.dim() - n == below);
        CHECK(classify(big).unitary);
        CHECK((big.entries().topLeftCorner(n, n) - m).cwiseAbs().maxCoeff() <= 10 * kTolS);
    }
}

TEST_CASE("closing a circulator port with a mirror equalizes the magnitudes") {
    const ScatteringMatrix c(circulator());
    const auto red = two_port_closure_check(c, 2, 0.0);
    CHECK(std::abs(red(0, 1)) == doctest::Approx(1.0));
    CHECK(std::abs(red(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(red(0, 0)) < 1e-15);
    for (int i = 0; i < 64; ++i) {
        const double phi = 2 * std::numbers::pi * i / 64;
        for (Eigen::Index port = 0; port < 3; ++port) {
            const auto r = two_port_closure_check(c, port, phi);
            CHECK(std::abs(std::abs(r(0, 1)) - std::abs(r(1, 0))) <= kTolS);
        }
    }
}

TEST_CASE("closure of random unitary three-ports") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
    for (int trial = 0; trial < 200; ++trial) {
        const ScatteringMatrix s(random_unitary(rng, 3));
        const auto r = two_port_closure_check(s, trial % 3, u(rng));
        CHECK(std::abs(std::abs(r(0, 1)) - std::abs(r(1, 0))) <= kTolS);
        CHECK(classify(r).unitary);
    }
}

TEST_CASE("reciprocal three-port stays reciprocal after closure") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
    for (int trial = 0; trial < 50; ++trial) {
        // symmetric unitary: O diag(e^{i theta}) O^T with O real orthogonal
        Eigen::MatrixXd a = Eigen::MatrixXd::Random(3, 3);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
        const Eigen::MatrixXd o = qr.householderQ() * Eigen::MatrixXd::Identity(3, 3);
        CVector ph(3);
        for (int i = 0; i < 3; ++i) ph(i) = std::polar(1.0, u(rng));
        const CMatrix sym = o.cast<Complex>() * ph.asDiagonal() * o.transpose().cast<Complex>();
        const ScatteringMatrix s(sym);
        REQUIRE(classify(s).reciprocal);
        const auto r = two_port_closure_check(s, trial % 3, u(rng));
        CHECK(classify(r).reciprocal);
    }
}

TEST_CASE("closure errors") {
    // a perfect in-phase reflector on the closed port makes the loop resonant
    try {
        two_port_closure_check(ScatteringMatrix(CMatrix::Identity(3, 3)), 2, 0.0);
        FAIL("expected SingularClosure");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SingularClosure);
    }
    CHECK_THROWS_AS(two_port_closure_check(ScatteringMatrix(CMatrix::Identity(2, 2)), 0, 0.0), Error);
    CHECK_THROWS_AS(two_port_closure_check(ScatteringMatrix(circulator()), 3, 0.0), Error);
    CHECK_THROWS_AS(two_port_closure_check(ScatteringMatrix(CMatrix::Identity(3, 3) * 0.5), 0, 0.0), Error);
}
