#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "doctest.h"
#include "qle/errors.hpp"
#include "qle/network.hpp"

using namespace qle;
using namespace qle::network;

namespace {

constexpr double pi = std::numbers::pi;
constexpr Complex I{0.0, 1.0};

CMatrix random_hermitian(std::mt19937_64& rng, int n, bool real_only = false) {
    std::normal_distribution<double> nd;
    CMatrix a(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) a(j, k) = Complex(nd(rng), real_only ? 0.0 : nd(rng));
    }
    return CMatrix(0.5 * (a + a.adjoint()));
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("validate_coupling accepts Hermitian and rejects anti-Hermitian input") {
    CMatrix id = CMatrix::Identity(2, 2);
    CHECK(validate_coupling(id).entries() == id);

    CMatrix pauli_y(2, 2);
    pauli_y << 0.0, I, -I, 0.0;
    CHECK(validate_coupling(pauli_y).dim() == 2);

    CMatrix bad(2, 2);
    bad << 0.0, I, I, 0.0;
    CHECK(kind_of([&] { validate_coupling(bad); }) == ErrorKind::NotHermitian);

    CHECK(kind_of([] { validate_coupling(CMatrix(2, 3)); }) == ErrorKind::NotSquare);
    CHECK(kind_of([] { validate_coupling(CMatrix(0, 0)); }) == ErrorKind::NotSquare);
}

TEST_CASE("validate_coupling symmetrizes small Hermiticity errors") {
    CMatrix g(2, 2);
    g << 1.0, Complex(0.5, 0.25), Complex(0.5, -0.25 + 1e-12), 2.0;
    const auto c = validate_coupling(g);
    CHECK((c.entries() - c.entries().adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("decompose_reservoir on small fixed cases") {
    SUBCASE("single reservoir mode diagonalizes itself") {
        CMatrix g(2, 2);
        g << 3.0, 0.7, 0.7, -1.5;
        const auto d = decompose_reservoir(validate_coupling(g));
        CHECK(d.detuning == doctest::Approx(3.0));
        CHECK(d.reservoir_frequencies(0) == doctest::Approx(-1.5));
        CHECK(std::abs(d.transform(0, 0)) == doctest::Approx(1.0));
        // eta is g01 up to the eigenvector's phase
        CHECK(std::abs(d.eta(0)) == doctest::Approx(0.7));
        CHECK(std::abs(d.eta(0) - 0.7 * std::conj(d.transform(0, 0))) < 1e-14);
    }
    SUBCASE("exchange-coupled pair splits to -1, +1") {
        CMatrix g = CMatrix::Zero(3, 3);
        g(0, 1) = g(1, 0) = 0.3;
        g(1, 2) = g(2, 1) = 1.0;
        const auto d = decompose_reservoir(validate_coupling(g));
        CHECK(d.reservoir_frequencies(0) == doctest::Approx(-1.0));
        CHECK(d.reservoir_frequencies(1) == doctest::Approx(1.0));
    }
    SUBCASE("dim 1 is rejected") {
        CHECK(kind_of([] { decompose_reservoir(validate_coupling(CMatrix::Ones(1, 1))); }) ==
              ErrorKind::DimensionTooSmall);
    }
}

TEST_CASE("decompose_reservoir invariants on random 6x6 couplings") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = validate_coupling(random_hermitian(rng, 6));
        const auto d = decompose_reservoir(g);
        const CMatrix block = g.reservoir_block();
        const auto n = block.rows();

        CHECK((d.transform * d.transform.adjoint() - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < kTolUnit);
        CMatrix diag = d.transform * block * d.transform.adjoint();
        CMatrix off = diag;
        off.diagonal().setZero();
        CHECK(off.cwiseAbs().maxCoeff() < kTolUnit);
        for (Eigen::Index j = 0; j < n; ++j) {
            CHECK(std::abs(diag(j, j) - d.reservoir_frequencies(j)) < kTolUnit);
        }
        CHECK(std::is_sorted(d.reservoir_frequencies.begin(), d.reservoir_frequencies.end()));

        // round trip G' = V^dag D V
        const CMatrix rebuilt =
            d.transform.adjoint() * d.reservoir_frequencies.cast<Complex>().asDiagonal() * d.transform;
        CHECK((rebuilt - block).cwiseAbs().maxCoeff() < kTolUnit);

        // trace and coupling-row norm
        CHECK(std::abs(d.reservoir_frequencies.sum() - block.trace().real()) < kTolUnit);
        const double row_norm = g.entries().row(0).tail(n).squaredNorm();
        CHECK(std::abs(d.eta.squaredNorm() - row_norm) < 1e-10);

        // eta reproduces its definition entry by entry
        for (Eigen::Index j = 0; j < n; ++j) {
            Complex eta{};
            for (Eigen::Index k = 0; k < n; ++k) eta += g.entries()(0, k + 1) * std::conj(d.transform(j, k));
            CHECK(std::abs(eta - d.eta(j)) < kTolUnit);
        }

        // Shuffling reservoir labels must not change the spectrum or |eta| multiset.
        std::vector<int> perm(static_cast<std::size_t>(g.dim()));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin() + 1, perm.end(), rng);
        CMatrix shuffled(g.dim(), g.dim());
        for (Eigen::Index j = 0; j < g.dim(); ++j) {
            for (Eigen::Index k = 0; k < g.dim(); ++k) shuffled(j, k) = g.entries()(perm[j], perm[k]);
        }
        const auto d2 = decompose_reservoir(validate_coupling(shuffled));
        CHECK((d2.reservoir_frequencies - d.reservoir_frequencies).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(std::abs(d2.eta.squaredNorm() - d.eta.squaredNorm()) < 1e-10);
        for (Eigen::Index j = 0; j < n; ++j) {
            CHECK(std::abs(std::abs(d2.eta(j)) - std::abs(d.eta(j))) < 1e-8);
        }
    }
}

TEST_CASE("solve_gauge on the fixed examples") {
    SUBCASE("real symmetric: trivial gauge") {
        std::mt19937_64 rng(3);
        const auto sol = solve_gauge(validate_coupling(random_hermitian(rng, 5, true)));
        CHECK(sol.exists);
        for (double p : sol.phases) CHECK(p == 0.0);
    }
    SUBCASE("three-mode imaginary ring breaks time reversal") {
        CMatrix g = CMatrix::Zero(3, 3);
        g(0, 1) = g(1, 2) = g(2, 0) = I;
        g(1, 0) = g(2, 1) = g(0, 2) = -I;
        const auto sol = solve_gauge(validate_coupling(g));
        CHECK_FALSE(sol.exists);
        CHECK(sol.phases.empty());
        CHECK(std::abs(sol.worst_cycle_defect - pi) < 1e-8);
    }
    SUBCASE("single complex edge is always gauge-able") {
        CMatrix g = CMatrix::Zero(2, 2);
        g(0, 1) = std::polar(1.0, pi / 3);
        g(1, 0) = std::conj(g(0, 1));
        const auto sol = solve_gauge(validate_coupling(g));
        REQUIRE(sol.exists);
        CHECK(sol.phases[0] == 0.0);
        CHECK(sol.phases[1] == doctest::Approx(4.0 * pi / 3.0));
    }
    SUBCASE("diagonal matrix has no constraints") {
        CMatrix g = CMatrix::Zero(4, 4);
        g.diagonal() << 1.0, 2.0, 3.0, 4.0;
        const auto sol = solve_gauge(validate_coupling(g));
        CHECK(sol.exists);
        CHECK(sol.worst_cycle_defect == 0.0);
        CHECK(sol.phases == std::vector<double>(4, 0.0));
    }
    SUBCASE("disconnected components each get root phase 0") {
        CMatrix g = CMatrix::Zero(4, 4);
        g(0, 1) = I;
        g(1, 0) = -I;
        g(2, 3) = std::polar(2.0, 0.4);
        g(3, 2) = std::conj(g(2, 3));
        const auto sol = solve_gauge(validate_coupling(g));
        REQUIRE(sol.exists);
        CHECK(sol.phases[0] == 0.0);
        CHECK(sol.phases[2] == 0.0);
        CHECK(sol.phases[1] == doctest::Approx(pi));
        CHECK(sol.phases[3] == doctest::Approx(2 * pi - 0.8));
    }
}

TEST_CASE("solve_gauge phases satisfy the symmetry condition edge by edge") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ud(0.0, 2 * pi);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 6;
        // A gauge-transformed real matrix always admits a solution.
        CMatrix w = CMatrix::Zero(n, n);
        for (int j = 0; j < n; ++j) w(j, j) = std::polar(1.0, ud(rng));
        const CMatrix g = w * random_hermitian(rng, n, true) * w.adjoint();
        const auto cm = validate_coupling(g);
        const auto sol = solve_gauge(cm);
        REQUIRE(sol.exists);
        for (int j = 0; j < n; ++j) {
            CHECK(sol.phases[j] >= 0.0);
            CHECK(sol.phases[j] < 2 * pi);
            for (int k = 0; k < n; ++k) {
                const Complex lhs = std::exp(I * (sol.phases[j] - sol.phases[k])) * std::conj(cm.entries()(j, k));
                CHECK(std::abs(lhs - cm.entries()(j, k)) < 1e-8 * std::max(1.0, std::abs(cm.entries()(j, k))));
            }
        }
    }
}

TEST_CASE("solve_gauge verdict is invariant under gauge transforms and relabeling") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ud(0.0, 2 * pi);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + trial % 5;
        const bool real = trial % 2 == 0;
        const CMatrix g = random_hermitian(rng, n, real);
        const auto base = solve_gauge(validate_coupling(g));
        CHECK(base.exists == real);  // dense complex couplings generically break symmetry

        CMatrix w = CMatrix::Zero(n, n);
        for (int j = 0; j < n; ++j) w(j, j) = std::polar(1.0, ud(rng));
        CHECK(solve_gauge(validate_coupling(w * g * w.adjoint())).exists == base.exists);

        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin() + 1, perm.end(), rng);
        CMatrix p(n, n);
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) p(j, k) = g(perm[j], perm[k]);
        }
        CHECK(solve_gauge(validate_coupling(p)).exists == base.exists);
    }
}

TEST_CASE("wrap_angle maps into (-pi, pi]") {
    CHECK(wrap_angle(pi) == doctest::Approx(pi));
    CHECK(wrap_angle(-pi) == doctest::Approx(pi));
    CHECK(wrap_angle(3 * pi) == doctest::Approx(pi));
    CHECK(wrap_angle(0.5) == doctest::Approx(0.5));
    CHECK(wrap_angle(2 * pi + 0.5) == doctest::Approx(0.5));
}
