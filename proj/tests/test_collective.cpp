#include "tc/collective.hpp"
#include "tc/dicke.hpp"
#include "tc/errors.hpp"
#include "tc/measures.hpp"
#include "tc/oracle.hpp"
#include "tc/two_qubit.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

using namespace tc;
using cd = std::complex<double>;

namespace {

// Test-local dense Dicke (x) Fock evolver that can start from a single
// |1> (x) |J, m> component; independent of the sector machinery.
struct DenseSymmetric {
    int N, nph;
    Eigen::MatrixXd V;
    Eigen::VectorXd w;

    DenseSymmetric(int n_qubits, int n_max) : N(n_qubits), nph(n_max + 1) {
        const int dim = (N + 1) * nph;
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
        for (int k = 0; k < N; ++k) {
            const double wgt = std::sqrt(double(N - k) * (k + 1));
            for (int n = 1; n < nph; ++n) {
                h(idx(k + 1, n - 1), idx(k, n)) += wgt * std::sqrt(double(n));
            }
        }
        h = (h + h.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        V = es.eigenvectors();
        w = es.eigenvalues();
    }

    int idx(int k, int n) const { return k * nph + n; }

    Eigen::VectorXcd evolve_component(int k0, double t) const {
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(V.rows());
        psi0(idx(k0, 1)) = 1.0;
        const Eigen::VectorXcd coef = V.transpose() * psi0;
        Eigen::VectorXcd phased(coef.size());
        for (Eigen::Index i = 0; i < coef.size(); ++i) {
            phased(i) = coef(i) * std::polar(1.0, -w(i) * t);
        }
        return V * phased;
    }

    Eigen::VectorXcd apply_jplus(const Eigen::VectorXcd& psi) const {
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
        for (int k = 0; k + 1 <= N; ++k) {
            const double wgt = std::sqrt(double(N - k) * (k + 1));
            for (int n = 0; n < nph; ++n) {
                out(idx(k + 1, n)) += wgt * psi(idx(k, n));
            }
        }
        return out;
    }
};

} // namespace

TEST_CASE("dicke coefficients at the degenerate angles") {
    const SpinCoherentExpansion all_ground = dicke_coefficients(4, M_PI);
    CHECK(all_ground.coefficients[0] == 1.0);
    for (int k = 1; k <= 4; ++k) CHECK(all_ground.coefficients[size_t(k)] == 0.0);

    const SpinCoherentExpansion all_excited = dicke_coefficients(4, 0.0);
    CHECK(all_excited.coefficients[4] == 1.0);
    CHECK(all_excited.coefficients[0] == 0.0);
}

TEST_CASE("dicke coefficients N=2 at theta_tilde = pi/2") {
    const SpinCoherentExpansion e = dicke_coefficients(2, M_PI / 2);
    // (d_{-1}, d_0, d_1) from the direct tensor expansion of ((|e>+|g>)/sqrt2)^(x2)
    CHECK(e.coefficients[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(e.coefficients[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(e.coefficients[2] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("dicke coefficients stay normalized for large N and all angles") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    for (int N : {3, 17, 200, 1000}) {
        for (int rep = 0; rep < 5; ++rep) {
            const SpinCoherentExpansion e = dicke_coefficients(N, ang(rng));
            double s = 0.0;
            for (double d : e.coefficients) s += d * d;
            CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    const SpinCoherentExpansion big = dicke_coefficients(1000, 1.9);
    double s = 0.0;
    for (double d : big.coefficients) s += d * d;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(dicke_coefficients(0, 1.0), DomainError);
}

TEST_CASE("sector bases enumerate the excitation-constrained states") {
    const SectorBasis b1 = sector_basis(2, 1);
    REQUIRE(b1.K() == 2);
    CHECK(b1.states[0].n == 1);
    CHECK(b1.states[0].k == 0);
    CHECK(b1.states[1].n == 0);
    CHECK(b1.states[1].k == 1);

    const SectorBasis b3 = sector_basis(2, 3);
    REQUIRE(b3.K() == 3);
    CHECK(b3.states[0].n == 3);
    CHECK(b3.states[2].n == 1);
    CHECK(b3.states[2].k == 2);

    const SectorBasis b0 = sector_basis(10, 0);
    REQUIRE(b0.K() == 1);
    CHECK(b0.states[0].n == 0);
    CHECK(b0.states[0].k == 0);

    for (const auto& b : {b1, b3, b0}) {
        for (const auto& s : b.states) CHECK(s.n + s.k == b.M);
    }
}

TEST_CASE("sector eigensystems reproduce the known splittings") {
    const SectorEigensystem e11 = sector_eigensystem(sector_basis(1, 1));
    REQUIRE(e11.eigenvalues.size() == 2);
    CHECK(e11.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(e11.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));

    const SectorEigensystem e21 = sector_eigensystem(sector_basis(2, 1));
    CHECK(e21.eigenvalues(0) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
    CHECK(e21.eigenvalues(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    // N=2, M=2: couplings (2, sqrt 2), spectrum {0, +-sqrt 6}
    const SectorEigensystem e22 = sector_eigensystem(sector_basis(2, 2));
    REQUIRE(e22.eigenvalues.size() == 3);
    CHECK(e22.eigenvalues(0) == doctest::Approx(-std::sqrt(6.0)).epsilon(1e-12));
    CHECK(e22.eigenvalues(1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(e22.eigenvalues(2) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));
}

TEST_CASE("sector eigensystems are orthogonal and reconstruct the tridiagonal") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> ns(1, 40);
    for (int rep = 0; rep < 25; ++rep) {
        const int N = ns(rng);
        const long long M = std::uniform_int_distribution<long long>(0, N + 1)(rng);
        const SectorEigensystem e = sector_eigensystem(sector_basis(N, M));
        const int K = e.basis.K();
        const Eigen::MatrixXd vtv = e.eigenvectors.transpose() * e.eigenvectors;
        CHECK((vtv - Eigen::MatrixXd::Identity(K, K)).cwiseAbs().maxCoeff() < 1e-10);

        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(K, K);
        for (int i = 0; i + 1 < K; ++i) h(i, i + 1) = h(i + 1, i) = e.offdiag(i);
        const Eigen::MatrixXd rebuilt =
            e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors.transpose();
        CHECK((h - rebuilt).cwiseAbs().maxCoeff() < 1e-10);

        // spectrum of a zero-diagonal tridiagonal is symmetric about 0
        for (int i = 0; i < K; ++i) {
            CHECK(e.eigenvalues(i) == doctest::Approx(-e.eigenvalues(K - 1 - i)).epsilon(1e-10));
        }
    }
}

TEST_CASE("evolve_component basics") {
    const SectorEigensystem single = sector_eigensystem(sector_basis(10, 0));
    const Eigen::VectorXcd v = evolve_component(single, 0, 3.7);
    CHECK(std::abs(std::abs(v(0)) - 1.0) < 1e-14);

    // N=2, M=1 vacuum Rabi: population of (n=0, k=1) is sin^2(sqrt2 t)
    const SectorEigensystem rabi = sector_eigensystem(sector_basis(2, 1));
    for (double t : {0.3, 1.1, 2.9}) {
        const Eigen::VectorXcd u = evolve_component(rabi, 0, t);
        CHECK(std::norm(u(1)) ==
              doctest::Approx(std::pow(std::sin(std::sqrt(2.0) * t), 2)).epsilon(1e-12));
    }

    const SectorEigensystem e = sector_eigensystem(sector_basis(5, 4));
    const Eigen::VectorXcd at0 = evolve_component(e, 2, 0.0);
    for (int i = 0; i < e.basis.K(); ++i) {
        CHECK(std::abs(at0(i) - (i == 2 ? cd{1.0, 0.0} : cd{0.0, 0.0})) < 1e-13);
    }
    CHECK_THROWS_AS(evolve_component(e, 99, 1.0), DomainError);
}

TEST_CASE("sector evolution preserves the norm") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ts(0.0, 50.0);
    for (int rep = 0; rep < 50; ++rep) {
        const int N = std::uniform_int_distribution<int>(1, 30)(rng);
        const long long M = std::uniform_int_distribution<long long>(1, N + 1)(rng);
        const SectorEigensystem e = sector_eigensystem(sector_basis(N, M));
        const Eigen::VectorXcd v = evolve_component(e, static_cast<int>(M - 1), ts(rng));
        CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
    }
}

TEST_CASE("moments at t=0 match the product-state values") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    for (int N : {2, 7, 23}) {
        for (int rep = 0; rep < 5; ++rep) {
            const double tt = ang(rng);
            const CollectiveMoments m = collective_moments(dicke_coefficients(N, tt), 0.0, 0.0);
            CHECK(m.jz_over_n == doctest::Approx(std::cos(tt) / 2.0).epsilon(1e-12));
            const double expect_jz2 =
                (1.0 / N + (1.0 - 1.0 / N) * std::pow(std::cos(tt), 2)) / 4.0;
            CHECK(m.jz2_over_n2 == doctest::Approx(expect_jz2).epsilon(1e-12));
        }
    }
}

TEST_CASE("moment bounds hold over random samples") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> ts(0.0, 30.0);
    std::uniform_int_distribution<int> ns(1, 50);
    for (int rep = 0; rep < 1000; ++rep) {
        const int N = ns(rng);
        const CollectiveMoments m =
            collective_moments(dicke_coefficients(N, ang(rng)), ts(rng), 1e-10);
        CHECK(std::abs(m.jz_over_n) <= 0.5 + 1e-12);
        CHECK(m.jz2_over_n2 >= -1e-12);
        CHECK(m.jz2_over_n2 <= 0.25 + 1e-12);
        CHECK(std::abs(m.jp_over_n) <= 0.5 + 1e-12);
    }
}

TEST_CASE("sector moments match the dense symmetric oracle at N=10") {
    for (double tt : {M_PI, 2.0}) {
        const SpinCoherentExpansion exp = dicke_coefficients(10, tt);
        for (double t : {0.0, 1.3, 7.7, 19.9}) {
            const CollectiveMoments a = collective_moments(exp, t, 0.0);
            const CollectiveMoments b = dense_symmetric_evolve(10, tt, t).moments;
            CHECK(std::abs(a.jz_over_n - b.jz_over_n) <= 1e-8);
            CHECK(std::abs(a.jz2_over_n2 - b.jz2_over_n2) <= 1e-8);
            CHECK(std::abs(a.jp_over_n - b.jp_over_n) <= 1e-8);
            CHECK(std::abs(a.jpjz_anticomm - b.jpjz_anticomm) <= 1e-8);
            CHECK(std::abs(a.jp2_over_n2 - b.jp2_over_n2) <= 1e-8);
        }
    }
}

TEST_CASE("selection rules: cross-sector matrix elements vanish off the raising pattern") {
    const int N = 6;
    DenseSymmetric dense(N, N + 2);
    const double t = 4.2;
    std::vector<Eigen::VectorXcd> comp;
    for (int k = 0; k <= N; ++k) comp.push_back(dense.evolve_component(k, t));

    for (int k = 0; k <= N; ++k) {
        const Eigen::VectorXcd jp = dense.apply_jplus(comp[size_t(k)]);
        const Eigen::VectorXcd jp2 = dense.apply_jplus(jp);
        for (int kp = 0; kp <= N; ++kp) {
            const cd m1 = comp[size_t(kp)].dot(jp);   // <Phi_{kp} | J+ | Phi_k>
            const cd m2 = comp[size_t(kp)].dot(jp2);  // <Phi_{kp} | J+^2 | Phi_k>
            if (kp != k + 1) CHECK(std::abs(m1) <= 1e-12);
            if (kp != k + 2) CHECK(std::abs(m2) <= 1e-12);
        }
    }
}

TEST_CASE("pairwise elements of the all-ground moments collapse to |gg><gg|") {
    CollectiveMoments m;
    m.jz_over_n = -0.5;
    m.jz2_over_n2 = 0.25;
    const DensityMatrix rho = pairwise_density(m, 100);
    Eigen::Matrix4cd gg = Eigen::Matrix4cd::Zero();
    gg(3, 3) = 1.0;
    CHECK((rho.matrix() - gg).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pairwise trace identity and w = p by construction") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> ts(0.0, 20.0);
    for (int rep = 0; rep < 50; ++rep) {
        const int N = std::uniform_int_distribution<int>(2, 40)(rng);
        const CollectiveMoments m =
            collective_moments(dicke_coefficients(N, ang(rng)), ts(rng), 1e-12);
        const PairwiseElements e = pairwise_elements(m, N);
        CHECK(e.w == e.p);
        CHECK(e.v_plus + e.v_minus + 2.0 * e.w == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("all-ground initial state: coherence channels vanish, w stays at the 1/N floor") {
    for (int N : {100, 1000}) {
        const SpinCoherentExpansion exp = dicke_coefficients(N, M_PI);
        for (double t : {0.4, 5.0, 17.3}) {
            const CollectiveMoments m = collective_moments(exp, t, 1e-10);
            const PairwiseElements e = pairwise_elements(m, N);
            CHECK(std::abs(e.h_plus) == 0.0);
            CHECK(std::abs(e.h_minus) == 0.0);
            CHECK(std::abs(e.mu) == 0.0);
            CHECK(e.w >= -1e-14);
            CHECK(e.w <= 1.0 / N + 1e-12);
            const double c = concurrence(pairwise_density(m, N));
            CHECK(c <= 2.0 / N + 1e-10);
        }
    }
}

TEST_CASE("N=2 pairwise matrix equals the identical-pair closed form") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> ts(0.0, 20.0);
    for (int rep = 0; rep < 25; ++rep) {
        const double theta = ang(rng);
        const double t = ts(rng);
        const CollectiveMoments m =
            collective_moments(dicke_coefficients(2, 2.0 * theta), t, 0.0);
        const DensityMatrix a = pairwise_density(m, 2);
        const DensityMatrix b = reduced_density_case(TwoQubitCase::identical_pair, theta, t);
        CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("pairwise matrix matches the distinguishable-qubit partial trace for N in 2..6") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> ts(0.0, 20.0);
    for (int N = 2; N <= 6; ++N) {
        for (int rep = 0; rep < 2; ++rep) {
            const double tt = ang(rng);
            const double t = ts(rng);
            const DensityMatrix a =
                pairwise_density(collective_moments(dicke_coefficients(N, tt), t, 0.0), N);
            const DensityMatrix b = distinguishable_pair_density(N, tt, t);
            CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() <= 1e-8);
        }
    }
}

TEST_CASE("large-N second moment stays within 2/N of 1/4 at theta_tilde = pi") {
    for (int N : {100, 1000, 2000}) {
        const auto ms = moments_series(dicke_coefficients(N, M_PI), 20.0, 0.1, 1e-10);
        for (const auto& m : ms) {
            CHECK(std::abs(m.jz2_over_n2 - 0.25) <= 2.0 / N);
        }
    }
}

TEST_CASE("retained set and cutoff behavior") {
    const SpinCoherentExpansion exp = dicke_coefficients(40, 1.9);
    const auto all = retained_excited_counts(exp, 0.0);
    CHECK(all.size() == 41);
    const auto some = retained_excited_counts(exp, 1e-6);
    CHECK(some.size() < all.size());
    CHECK(!some.empty());
    double kept = 0.0;
    for (int k : some) kept += exp.coefficients[size_t(k)] * exp.coefficients[size_t(k)];
    CHECK(kept >= 1.0 - 1e-6);
    CHECK_THROWS_AS(retained_excited_counts(exp, 1.5), DomainError);
    CHECK_THROWS_AS(retained_excited_counts(exp, -0.1), DomainError);
}

TEST_CASE("cutoff stability of the pairwise maximum at N=500") {
    const PairwiseMaxPoint a = pairwise_max_concurrence(500, 1.9, 50.0, 0.05, 1e-10);
    const PairwiseMaxPoint b = pairwise_max_concurrence(500, 1.9, 50.0, 0.05, 1e-12);
    CHECK(std::abs(a.c_max - b.c_max) <= 1e-6);
}

TEST_CASE("kernel table memory budget is enforced") {
    CHECK_THROWS_AS(
        [] {
            std::vector<double> grid(1001);
            for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 0.05 * double(i);
            MomentKernelTable table(400, grid, 1024);  // 1 KiB budget
            table.ensure({200});
        }(),
        DomainError);
}

TEST_CASE("collective moments validate their inputs") {
    const SpinCoherentExpansion exp = dicke_coefficients(5, 1.0);
    CHECK_THROWS_AS(collective_moments(exp, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(pairwise_elements(CollectiveMoments{}, 1), DomainError);
    CHECK_THROWS_AS(moments_series(exp, -1.0, 0.1, 0.0), DomainError);
}
