#include "tc/errors.hpp"
#include "tc/measures.hpp"
#include "tc/oracle.hpp"
#include "tc/two_qubit.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace tc;
using cd = std::complex<double>;

namespace {

QubitAmplitudes random_qubit(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    cd a{gauss(rng), gauss(rng)}, b{gauss(rng), gauss(rng)};
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    return {a / n, b / n};
}

Eigen::Matrix4cd projector(const TwoQubitInitialState& init) {
    Eigen::Vector4cd v;
    v << init.qubit1.alpha * init.qubit2.alpha, init.qubit1.alpha * init.qubit2.beta,
        init.qubit1.beta * init.qubit2.alpha, init.qubit1.beta * init.qubit2.beta;
    return v * v.adjoint();
}

} // namespace

TEST_CASE("time kernel values") {
    const TimeKernels k0 = time_kernels(0.0);
    CHECK(k0.f1 == 1.0);
    CHECK(k0.f2 == 1.0);
    CHECK(k0.f3 == 0.0);
    CHECK(k0.g2 == 0.0);
    CHECK(k0.g6 == 0.0);
    CHECK(k0.g10 == 0.0);

    const TimeKernels k1 = time_kernels(M_PI / std::sqrt(6.0));
    CHECK(k1.f2 == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(k1.f3 == doctest::Approx(-1.0).epsilon(1e-15));

    const TimeKernels k2 = time_kernels(M_PI / (2.0 * std::sqrt(2.0)));
    CHECK(k2.g2 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("time kernel ranges and the f2+f3 identity") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> gts(-30.0, 30.0);
    for (int rep = 0; rep < 500; ++rep) {
        const double gt = gts(rng);
        const TimeKernels k = time_kernels(gt);
        CHECK(k.f1 >= 0.2);
        CHECK(k.f1 <= 1.0);
        CHECK(k.f2 >= 0.0);
        CHECK(k.f2 <= 1.0);
        CHECK(k.f3 >= -1.0);
        CHECK(k.f3 <= 0.0);
        CHECK(k.f2 + k.f3 == doctest::Approx(std::cos(gt * std::sqrt(6.0))).epsilon(1e-12));
        CHECK(std::abs(k.g2) <= 1.0 / std::sqrt(2.0) + 1e-15);
        CHECK(std::abs(k.g6) <= 1.0 / std::sqrt(6.0) + 1e-15);
        CHECK(std::abs(k.g10) <= 1.0 / std::sqrt(10.0) + 1e-15);
    }
}

TEST_CASE("gg initial state reaches the Bell matrix at gt = pi/(2 sqrt 2)") {
    const TwoQubitInitialState gg{{0.0, 1.0}, {0.0, 1.0}};
    const double gt = M_PI / (2.0 * std::sqrt(2.0));
    const DensityMatrix rho = reduced_density_general(gg, gt);
    Eigen::Matrix4cd bell = Eigen::Matrix4cd::Zero();
    bell(1, 1) = bell(1, 2) = bell(2, 1) = bell(2, 2) = 0.5;
    CHECK((rho.matrix() - bell).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(concurrence(rho) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("gt = 0 returns the projector onto the initial product state") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 20; ++rep) {
        const TwoQubitInitialState init{random_qubit(rng), random_qubit(rng)};
        const DensityMatrix rho = reduced_density_general(init, 0.0);
        CHECK((rho.matrix() - projector(init)).cwiseAbs().maxCoeff() < 1e-12);
        const double purity = (rho.matrix() * rho.matrix()).trace().real();
        CHECK(purity == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("closed form matches the dense oracle entrywise") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> gts(0.0, 20.0);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const TwoQubitInitialState init{random_qubit(rng), random_qubit(rng)};
        const double gt = gts(rng);
        const DensityMatrix a = reduced_density_general(init, gt);
        const DensityMatrix b = dense_two_qubit_evolve(init, gt, FockTruncation{3});
        worst = std::max(worst, (a.matrix() - b.matrix()).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-9);

    const TwoQubitInitialState ee{{1.0, 0.0}, {1.0, 0.0}};
    const DensityMatrix a = reduced_density_general(ee, 0.7);
    const DensityMatrix b = dense_two_qubit_evolve(ee, 0.7, FockTruncation{3});
    CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("trace, hermiticity and PSD hold over random samples") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> gts(0.0, 40.0);
    for (int rep = 0; rep < 500; ++rep) {
        const TwoQubitInitialState init{random_qubit(rng), random_qubit(rng)};
        const DensityMatrix rho = reduced_density_general(init, gts(rng));
        CHECK(rho.trace_deviation() <= 1e-10);
        CHECK(rho.hermiticity_deviation() <= 1e-10);
        CHECK(rho.min_eigenvalue() >= -1e-9);
    }
}

TEST_CASE("case families equal the general formula under the amplitude mapping") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> angles(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> gts(0.0, 20.0);
    for (TwoQubitCase c : {TwoQubitCase::ground_partner, TwoQubitCase::excited_partner,
                           TwoQubitCase::identical_pair, TwoQubitCase::mirrored_pair}) {
        double worst = 0.0;
        for (int rep = 0; rep < 50; ++rep) {
            const double theta = angles(rng);
            const double gt = gts(rng);
            const DensityMatrix spec = reduced_density_case(c, theta, gt);
            const DensityMatrix gen = reduced_density_general(case_initial_state(c, theta), gt);
            worst = std::max(worst, (spec.matrix() - gen.matrix()).cwiseAbs().maxCoeff());
        }
        INFO(to_string(c));
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("ground partner at theta = pi/2 follows the closed Bell-family matrix") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> gts(0.0, 30.0);
    for (int rep = 0; rep < 30; ++rep) {
        const double gt = gts(rng);
        const DensityMatrix rho = reduced_density_case(TwoQubitCase::ground_partner, M_PI / 2, gt);
        const double s2 = std::pow(std::sin(gt * std::sqrt(2.0)), 2);
        Eigen::Matrix4cd expect = Eigen::Matrix4cd::Zero();
        expect(1, 1) = expect(1, 2) = expect(2, 1) = expect(2, 2) = s2 / 2.0;
        expect(3, 3) = 1.0 - s2;
        CHECK((rho.matrix() - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("Bell events for the ground partner at odd multiples of pi/(2 sqrt 2)") {
    for (int k : {1, 3, 5}) {
        const double gt = k * M_PI / (2.0 * std::sqrt(2.0));
        const DensityMatrix rho = reduced_density_case(TwoQubitCase::ground_partner, M_PI / 2, gt);
        CHECK(concurrence(rho) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("exchange symmetry of the identical pair") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> angles(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> gts(0.0, 20.0);
    for (int rep = 0; rep < 100; ++rep) {
        const DensityMatrix rho =
            reduced_density_case(TwoQubitCase::identical_pair, angles(rng), gts(rng));
        CHECK(std::abs(rho(1, 1) - rho(2, 2)) <= 1e-12);
        CHECK(std::abs(rho(1, 3) - rho(2, 3)) <= 1e-12);
    }
}

TEST_CASE("excited partner with theta = 0 never entangles") {
    const ConcurrenceSeries s =
        concurrence_series(case_initial_state(TwoQubitCase::excited_partner, 0.0), 300.0, 0.05);
    for (double v : s.values) CHECK(v <= 1e-9);
}

TEST_CASE("concurrence series of |gg> peaks at odd multiples of pi/(2 sqrt 2)") {
    const TwoQubitInitialState gg{{0.0, 1.0}, {0.0, 1.0}};
    const double step = M_PI / (2.0 * std::sqrt(2.0));
    const ConcurrenceSeries s = concurrence_series(gg, 3.0 * step - 1e-12, step);
    REQUIRE(s.values.size() >= 3);
    CHECK(s.values[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.values[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.values[2] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("max concurrence of |gg> sits near pi/(2 sqrt 2)") {
    const TwoQubitInitialState gg{{0.0, 1.0}, {0.0, 1.0}};
    const MaxConcurrencePoint p = max_concurrence(gg, 3.0, 1e-3);
    CHECK(p.c_max == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(p.gt_star == doctest::Approx(M_PI / (2.0 * std::sqrt(2.0))).epsilon(1e-3));
}

TEST_CASE("max concurrence ties break to the smallest gt") {
    const TwoQubitInitialState ee{{1.0, 0.0}, {1.0, 0.0}};
    const MaxConcurrencePoint p = max_concurrence(ee, 5.0, 0.1);  // all zeros
    CHECK(p.c_max == 0.0);
    CHECK(p.gt_star == 0.0);
}

TEST_CASE("series validates its window arguments") {
    const TwoQubitInitialState gg{{0.0, 1.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(concurrence_series(gg, -1.0, 0.1), DomainError);
    CHECK_THROWS_AS(concurrence_series(gg, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(concurrence_series(gg, 1.0, 2.0), DomainError);
}

TEST_CASE("unnormalized initial states are rejected") {
    TwoQubitInitialState bad{{0.5, 0.5}, {0.0, 1.0}};
    CHECK_THROWS_AS(reduced_density_general(bad, 1.0), DomainError);
}

TEST_CASE("literal q44 transcriptions break the density-matrix contract") {
    const Eigen::Matrix4cd lit48 = detail::excited_partner_literal_q44_matrix(0.9, 1.3);
    CHECK(std::abs(lit48.trace() - cd{1.0, 0.0}) > 1e-3);

    const TwoQubitInitialState init = case_initial_state(TwoQubitCase::identical_pair, 0.4);
    const Eigen::Matrix4cd lit19 = detail::general_literal_q44_matrix(init, 0.7);
    CHECK(std::abs(lit19.trace() - cd{1.0, 0.0}) > 1e-3);
}
