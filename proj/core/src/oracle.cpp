#include "tc/oracle.hpp"

#include "tc/errors.hpp"
#include "tc/measures.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace tc {

namespace {

using cd = std::complex<double>;
const cd kI{0.0, 1.0};

// Qubit excitation of each two_qubit_fock config, ordering |ee>,|eg>,|ge>,|gg>.
constexpr int kTwoQubitExcitation[4] = {2, 1, 1, 0};

double big_c(double n) { return 2.0 * (2.0 * n + 1.0); }
double big_a(double n, double gt) { return std::cos(gt * std::sqrt(big_c(n))); }
double big_b(double n, double gt) { return std::sin(gt * std::sqrt(big_c(n))); }

} // namespace

int FullState::config_count() const {
    switch (layout) {
        case Layout::two_qubit_fock: return 4;
        case Layout::dicke_fock: return n_qubits + 1;
        case Layout::distinguishable_fock: return 1 << n_qubits;
    }
    return 0;
}

FullState two_qubit_single_photon_state(const TwoQubitInitialState& init, FockTruncation trunc) {
    check_normalized(init);
    if (trunc.n_max < 3) {
        throw DomainError("two-qubit single-photon runs need n_max >= 3");
    }
    FullState s;
    s.layout = FullState::Layout::two_qubit_fock;
    s.n_qubits = 2;
    s.n_max = trunc.n_max;
    s.amplitudes = Eigen::VectorXcd::Zero(4 * (trunc.n_max + 1));
    const cd a1 = init.qubit1.alpha, b1 = init.qubit1.beta;
    const cd a2 = init.qubit2.alpha, b2 = init.qubit2.beta;
    s.amplitudes(s.index(0, 1)) = a1 * a2;
    s.amplitudes(s.index(1, 1)) = a1 * b2;
    s.amplitudes(s.index(2, 1)) = b1 * a2;
    s.amplitudes(s.index(3, 1)) = b1 * b2;
    return s;
}

namespace {

void check_two_qubit_layout(const FullState& state, FockTruncation trunc, const char* what) {
    if (state.layout != FullState::Layout::two_qubit_fock) {
        throw DomainError(std::string(what) + " requires a two_qubit_fock state");
    }
    if (state.n_max != trunc.n_max) {
        throw DomainError(std::string(what) + ": truncation does not match the state layout");
    }
    // Exactness rule: every populated component must satisfy excitation + n <= n_max,
    // so conservation keeps the evolution inside the truncated space.
    for (int q = 0; q < 4; ++q) {
        for (int n = 0; n <= state.n_max; ++n) {
            if (std::abs(state.amplitudes(state.index(q, n))) > 0.0 &&
                kTwoQubitExcitation[q] + n > state.n_max) {
                std::ostringstream os;
                os << what << ": amplitude at config " << q << ", n=" << n
                   << " has total excitation " << kTwoQubitExcitation[q] + n
                   << " > n_max=" << state.n_max << " and would leak past the truncation";
                throw TruncationError(os.str());
            }
        }
    }
}

// H_int = g sum_i (a^dag sigma_-^i + sigma_+^i a) on the two_qubit_fock layout, g = 1.
Eigen::MatrixXcd two_qubit_hamiltonian(int n_max) {
    const int dim = 4 * (n_max + 1);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    auto idx = [n_max](int q, int n) { return q * (n_max + 1) + n; };
    // sigma_-^1: ee->ge, eg->gg ; sigma_-^2: ee->eg, ge->gg (with a^dag)
    const int lower1[4] = {2, 3, -1, -1};
    const int lower2[4] = {1, -1, 3, -1};
    for (int n = 0; n < n_max; ++n) {
        const double amp = std::sqrt(n + 1.0);
        for (int q = 0; q < 4; ++q) {
            if (lower1[q] >= 0) h(idx(lower1[q], n + 1), idx(q, n)) += amp;
            if (lower2[q] >= 0) h(idx(lower2[q], n + 1), idx(q, n)) += amp;
        }
    }
    return h + h.adjoint().eval();
}

} // namespace

FullState appendix_a_unitary_apply(const FullState& state, double gt, FockTruncation trunc) {
    check_two_qubit_layout(state, trunc, "appendix_a_unitary_apply");
    const int n_max = state.n_max;
    FullState out = state;
    out.amplitudes.setZero();
    auto in = [&](int q, int n) { return state.amplitudes(state.index(q, n)); };
    auto add = [&](int q, int n, cd v) { out.amplitudes(out.index(q, n)) += v; };

    for (int n = 0; n <= n_max; ++n) {
        // diagonal blocks
        const double u11 = 1.0 + 2.0 * (big_a(n + 1.0, gt) - 1.0) / big_c(n + 1.0) * (n + 1.0);
        const double u44 = n == 0 ? 1.0
                                  : 1.0 + 2.0 * (big_a(n - 1.0, gt) - 1.0) / big_c(n - 1.0) * n;
        const double u22 = (big_a(n, gt) + 1.0) / 2.0;
        const double u23 = (big_a(n, gt) - 1.0) / 2.0;
        add(0, n, u11 * in(0, n));
        add(1, n, u22 * in(1, n) + u23 * in(2, n));
        add(2, n, u23 * in(1, n) + u22 * in(2, n));
        add(3, n, u44 * in(3, n));

        // U14 = 2 (A(nh+1)-1)/C(nh+1) a^2 : |n> -> |n-2>, number functions act after the shift
        if (n >= 2) {
            const double c = 2.0 * (big_a(n - 1.0, gt) - 1.0) / big_c(n - 1.0) *
                             std::sqrt(n * (n - 1.0));
            add(0, n - 2, c * in(3, n));
        }
        // U41 = 2 (A(nh-1)-1)/C(nh-1) adag^2 : |n> -> |n+2>
        if (n + 2 <= n_max) {
            const double c = 2.0 * (big_a(n + 1.0, gt) - 1.0) / big_c(n + 1.0) *
                             std::sqrt((n + 1.0) * (n + 2.0));
            add(3, n + 2, c * in(0, n));
        }
        // U12 = U13 = -i B(nh+1)/sqrt(C(nh+1)) a : |n> -> |n-1>
        if (n >= 1) {
            const cd c = -kI * big_b(n, gt) / std::sqrt(big_c(n)) * std::sqrt(double(n));
            add(0, n - 1, c * (in(1, n) + in(2, n)));
        }
        // U21 = U31 = -i B(nh)/sqrt(C(nh)) adag : |n> -> |n+1>
        if (n + 1 <= n_max) {
            const cd c = -kI * big_b(n + 1.0, gt) / std::sqrt(big_c(n + 1.0)) *
                         std::sqrt(n + 1.0);
            add(1, n + 1, c * in(0, n));
            add(2, n + 1, c * in(0, n));
        }
        // U42 = U43 = -i B(nh-1)/sqrt(C(nh-1)) adag
        if (n + 1 <= n_max) {
            const cd c = -kI * big_b(n, gt) / std::sqrt(big_c(n)) * std::sqrt(n + 1.0);
            add(3, n + 1, c * (in(1, n) + in(2, n)));
        }
        // U24 = U34 = -i B(nh)/sqrt(C(nh)) a
        if (n >= 1) {
            const cd c = -kI * big_b(n - 1.0, gt) / std::sqrt(big_c(n - 1.0)) *
                         std::sqrt(double(n));
            add(1, n - 1, c * in(3, n));
            add(2, n - 1, c * in(3, n));
        }
    }

    const double drift = std::abs(out.norm() - state.norm());
    if (drift > 1e-10) {
        throw NumericalFailure("appendix_a_unitary_apply: norm drift " + std::to_string(drift));
    }
    return out;
}

FullState dense_two_qubit_unitary_apply(const FullState& state, double gt,
                                        FockTruncation trunc) {
    check_two_qubit_layout(state, trunc, "dense_two_qubit_unitary_apply");
    const Eigen::MatrixXcd h = two_qubit_hamiltonian(state.n_max);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) {
        throw NumericalFailure("dense two-qubit eigendecomposition failed");
    }
    const Eigen::VectorXcd coef = es.eigenvectors().adjoint() * state.amplitudes;
    Eigen::VectorXcd phased(coef.size());
    for (Eigen::Index i = 0; i < coef.size(); ++i) {
        phased(i) = coef(i) * std::polar(1.0, -es.eigenvalues()(i) * gt);
    }
    FullState out = state;
    out.amplitudes = es.eigenvectors() * phased;
    return out;
}

DensityMatrix dense_two_qubit_evolve(const TwoQubitInitialState& init, double gt,
                                     FockTruncation trunc) {
    if (trunc.n_max < 3) {
        throw DomainError("dense_two_qubit_evolve requires n_max >= 3");
    }
    const FullState evolved =
        dense_two_qubit_unitary_apply(two_qubit_single_photon_state(init, trunc), gt, trunc);
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            cd acc{};
            for (int n = 0; n <= trunc.n_max; ++n) {
                acc += evolved.amplitudes(evolved.index(i, n)) *
                       std::conj(evolved.amplitudes(evolved.index(j, n)));
            }
            rho(i, j) = acc;
        }
    }
    return DensityMatrix::trusted(rho);
}

namespace {

struct SymmetricEvolved {
    int n_qubits;
    int n_max;
    Eigen::VectorXcd psi;  // dicke_fock layout
};

SymmetricEvolved evolve_symmetric(int n_qubits, double theta_tilde, double t,
                                  FockTruncation trunc) {
    if (n_qubits < 1 || n_qubits > 60) {
        throw DomainError("dense_symmetric_evolve supports 1 <= N <= 60");
    }
    if (trunc.n_max < n_qubits + 1) {
        throw DomainError("dense_symmetric_evolve requires n_max >= 2J + 1");
    }
    const int N = n_qubits;
    const int nph = trunc.n_max + 1;
    const int dim = (N + 1) * nph;
    auto idx = [nph](int k, int n) { return k * nph + n; };

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k < N; ++k) {
        const double wgt = std::sqrt(static_cast<double>(N - k) * (k + 1.0));
        for (int n = 1; n < nph; ++n) {
            h(idx(k + 1, n - 1), idx(k, n)) += wgt * std::sqrt(static_cast<double>(n));
        }
    }
    h = (h + h.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) {
        throw NumericalFailure("dense symmetric eigendecomposition failed");
    }

    const SpinCoherentExpansion d = dicke_coefficients(N, theta_tilde);
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(dim);
    for (int k = 0; k <= N; ++k) {
        psi0(idx(k, 1)) = d.coefficients[static_cast<std::size_t>(k)];
    }
    const Eigen::VectorXcd coef = es.eigenvectors().transpose() * psi0;
    Eigen::VectorXcd phased(dim);
    for (int i = 0; i < dim; ++i) {
        phased(i) = coef(i) * std::polar(1.0, -es.eigenvalues()(i) * t);
    }
    return {N, trunc.n_max, es.eigenvectors() * phased};
}

CollectiveMoments moments_of_symmetric(const SymmetricEvolved& ev, double t) {
    const int N = ev.n_qubits;
    const int nph = ev.n_max + 1;
    const double J = N / 2.0;
    auto idx = [nph](int k, int n) { return k * nph + n; };

    CollectiveMoments m;
    m.t = t;
    for (int k = 0; k <= N; ++k) {
        double pop = 0.0;
        for (int n = 0; n < nph; ++n) pop += std::norm(ev.psi(idx(k, n)));
        const double mz = (k - J) / N;
        m.jz_over_n += mz * pop;
        m.jz2_over_n2 += mz * mz * pop;
    }
    for (int k = 0; k + 1 <= N; ++k) {
        const double wgt = std::sqrt(static_cast<double>(N - k) * (k + 1.0));
        cd ov{};
        for (int n = 0; n < nph; ++n) {
            ov += std::conj(ev.psi(idx(k + 1, n))) * ev.psi(idx(k, n));
        }
        m.jp_over_n += wgt * ov / static_cast<double>(N);
        m.jpjz_anticomm +=
            wgt * (2.0 * (k - J) + 1.0) * ov / (static_cast<double>(N) * N);
    }
    for (int k = 0; k + 2 <= N; ++k) {
        const double wgt = std::sqrt(static_cast<double>(N - k) * (k + 1.0)) *
                           std::sqrt(static_cast<double>(N - k - 1) * (k + 2.0));
        cd ov{};
        for (int n = 0; n < nph; ++n) {
            ov += std::conj(ev.psi(idx(k + 2, n))) * ev.psi(idx(k, n));
        }
        m.jp2_over_n2 += wgt * ov / (static_cast<double>(N) * N);
    }
    return m;
}

} // namespace

SymmetricOracleResult dense_symmetric_evolve(int n_qubits, double theta_tilde, double t,
                                             FockTruncation trunc) {
    const SymmetricEvolved ev = evolve_symmetric(n_qubits, theta_tilde, t, trunc);
    const double drift = std::abs(ev.psi.norm() - 1.0);
    if (drift > 1e-12) {
        throw NumericalFailure("dense_symmetric_evolve: norm drift " + std::to_string(drift));
    }
    const CollectiveMoments m = moments_of_symmetric(ev, t);
    return {m, pairwise_density(m, n_qubits)};
}

SymmetricOracleResult dense_symmetric_evolve(int n_qubits, double theta_tilde, double t) {
    return dense_symmetric_evolve(n_qubits, theta_tilde, t, FockTruncation{n_qubits + 2});
}

DensityMatrix distinguishable_pair_density(int n_qubits, double theta_tilde, double t,
                                           FockTruncation trunc) {
    if (n_qubits < 2 || n_qubits > 6) {
        throw DomainError("distinguishable_pair_density supports 2 <= N <= 6");
    }
    if (trunc.n_max < n_qubits + 1) {
        throw DomainError("distinguishable_pair_density requires n_max >= N + 1");
    }
    const int N = n_qubits;
    const int nph = trunc.n_max + 1;
    const int nconf = 1 << N;
    const int dim = nconf * nph;
    auto idx = [nph](int q, int n) { return q * nph + n; };

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int q = 0; q < nconf; ++q) {
        for (int i = 0; i < N; ++i) {
            if ((q >> i) & 1) {
                const int q2 = q & ~(1 << i);
                for (int n = 1; n < nph; ++n) {
                    h(idx(q2, n), idx(q, n - 1)) += std::sqrt(static_cast<double>(n));
                }
            }
        }
    }
    h = (h + h.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) {
        throw NumericalFailure("distinguishable eigendecomposition failed");
    }

    const double c = std::cos(theta_tilde / 2.0), s = std::sin(theta_tilde / 2.0);
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(dim);
    for (int q = 0; q < nconf; ++q) {
        double amp = 1.0;
        for (int i = 0; i < N; ++i) amp *= ((q >> i) & 1) ? c : s;
        psi0(idx(q, 1)) = amp;
    }
    const Eigen::VectorXcd coef = es.eigenvectors().transpose() * psi0;
    Eigen::VectorXcd phased(dim);
    for (int i = 0; i < dim; ++i) {
        phased(i) = coef(i) * std::polar(1.0, -es.eigenvalues()(i) * t);
    }
    const Eigen::VectorXcd psi = es.eigenvectors() * phased;

    // trace out the field and qubits 2..N-1, keep qubits (0,1)
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    const int nrest = 1 << (N - 2);
    // bitmask pair values in |ee>,|eg>,|ge>,|gg> order: qubit 0 is the first qubit
    constexpr int pairmask[4] = {3, 1, 2, 0};
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            cd acc{};
            for (int rest = 0; rest < nrest; ++rest) {
                const int qa = pairmask[a] | (rest << 2);
                const int qb = pairmask[b] | (rest << 2);
                for (int n = 0; n < nph; ++n) {
                    acc += psi(idx(qa, n)) * std::conj(psi(idx(qb, n)));
                }
            }
            rho(a, b) = acc;
        }
    }
    return DensityMatrix::trusted(rho);
}

DensityMatrix distinguishable_pair_density(int n_qubits, double theta_tilde, double t) {
    return distinguishable_pair_density(n_qubits, theta_tilde, t,
                                        FockTruncation{n_qubits + 2});
}

bool CheckReport::all_pass() const {
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

namespace {

CheckResult make_check(std::string name, double dev, double tol, bool must_exceed,
                       std::string note = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.max_abs_deviation = dev;
    r.tolerance = tol;
    r.must_exceed = must_exceed;
    r.pass = must_exceed ? dev > tol : dev <= tol;
    r.note = std::move(note);
    return r;
}

// A throwing check is a failed report entry, never an aborted report.
template <typename Fn>
void run_check(CheckReport& report, std::string name, double tol, bool must_exceed,
               std::string note, Fn&& deviation) {
    try {
        report.checks.push_back(
            make_check(std::move(name), deviation(), tol, must_exceed, std::move(note)));
    } catch (const std::exception& e) {
        CheckResult r;
        r.name = std::move(name);
        r.max_abs_deviation = std::numeric_limits<double>::infinity();
        r.tolerance = tol;
        r.must_exceed = must_exceed;
        r.pass = false;
        r.note = std::string("check aborted: ") + e.what();
        report.checks.push_back(std::move(r));
    }
}

QubitAmplitudes random_qubit(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    cd a{gauss(rng), gauss(rng)};
    cd b{gauss(rng), gauss(rng)};
    const double nrm = std::sqrt(std::norm(a) + std::norm(b));
    return {a / nrm, b / nrm};
}

double matrix_dev(const Eigen::Matrix4cd& a, const Eigen::Matrix4cd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace

CheckReport cross_check_report(const CrossCheckOptions& options) {
    CheckReport report;
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> gt20(0.0, 20.0);
    std::uniform_real_distribution<double> gt10(0.0, 10.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);

    run_check(report, "appendix_a_vs_dense_exponential", 1e-9, false,
              "50 random truncation-exact states, gt in [0,10]", [&] {
                  const FockTruncation trunc{12};
                  std::normal_distribution<double> gauss;
                  double dev = 0.0;
                  for (int rep = 0; rep < 50; ++rep) {
                      FullState s;
                      s.layout = FullState::Layout::two_qubit_fock;
                      s.n_qubits = 2;
                      s.n_max = trunc.n_max;
                      s.amplitudes = Eigen::VectorXcd::Zero(4 * (trunc.n_max + 1));
                      for (int q = 0; q < 4; ++q) {
                          for (int n = 0; n + kTwoQubitExcitation[q] <= trunc.n_max - 1; ++n) {
                              s.amplitudes(s.index(q, n)) = cd{gauss(rng), gauss(rng)};
                          }
                      }
                      s.amplitudes.normalize();
                      const double gt = gt10(rng);
                      const FullState a = appendix_a_unitary_apply(s, gt, trunc);
                      const FullState b = dense_two_qubit_unitary_apply(s, gt, trunc);
                      dev = std::max(dev, (a.amplitudes - b.amplitudes).cwiseAbs().maxCoeff());
                  }
                  return dev;
              });

    run_check(report, "closed_form_vs_dense_oracle", 1e-9, false,
              "100 random (init, gt in [0,20])", [&] {
                  double dev = 0.0;
                  for (int rep = 0; rep < 100; ++rep) {
                      const TwoQubitInitialState init{random_qubit(rng), random_qubit(rng)};
                      const double gt = gt20(rng);
                      const DensityMatrix a = reduced_density_general(init, gt);
                      const DensityMatrix b = dense_two_qubit_evolve(init, gt, FockTruncation{3});
                      dev = std::max(dev, matrix_dev(a.matrix(), b.matrix()));
                  }
                  return dev;
              });

    const TwoQubitCase cases[] = {TwoQubitCase::ground_partner, TwoQubitCase::excited_partner,
                                  TwoQubitCase::identical_pair, TwoQubitCase::mirrored_pair};
    auto case_matrix = [&options](TwoQubitCase c, double theta, double gt) {
        if (options.inject_literal_eq48 && c == TwoQubitCase::excited_partner) {
            return detail::excited_partner_literal_q44_matrix(theta, gt);
        }
        return Eigen::Matrix4cd(reduced_density_case(c, theta, gt).matrix());
    };

    run_check(report, "case_families_vs_general", 1e-12, false,
              "4 families x 50 random (theta, gt)", [&] {
                  double dev = 0.0;
                  for (TwoQubitCase c : cases) {
                      for (int rep = 0; rep < 50; ++rep) {
                          const double theta = angle(rng);
                          const double gt = gt20(rng);
                          const Eigen::Matrix4cd gen =
                              reduced_density_general(case_initial_state(c, theta), gt).matrix();
                          dev = std::max(dev, matrix_dev(case_matrix(c, theta, gt), gen));
                      }
                  }
                  return dev;
              });

    run_check(report, "case_family_unit_trace", 1e-10, false,
              "trace of every specialized family matrix", [&] {
                  double dev = 0.0;
                  for (TwoQubitCase c : cases) {
                      for (int rep = 0; rep < 50; ++rep) {
                          const double theta = angle(rng);
                          const double gt = gt20(rng);
                          dev = std::max(
                              dev, std::abs(case_matrix(c, theta, gt).trace() - cd{1.0, 0.0}));
                      }
                  }
                  return dev;
              });

    run_check(report, "sector_moments_vs_dense_symmetric", 1e-9, false,
              "N=6, 10 random (theta_tilde, t)", [&] {
                  double dev = 0.0;
                  for (int rep = 0; rep < 10; ++rep) {
                      const double tt = angle(rng);
                      const double t = gt20(rng);
                      const SpinCoherentExpansion exp = dicke_coefficients(6, tt);
                      const CollectiveMoments a = collective_moments(exp, t, 0.0);
                      const CollectiveMoments b = dense_symmetric_evolve(6, tt, t).moments;
                      dev = std::max({dev, std::abs(a.jz_over_n - b.jz_over_n),
                                      std::abs(a.jz2_over_n2 - b.jz2_over_n2),
                                      std::abs(a.jp_over_n - b.jp_over_n),
                                      std::abs(a.jpjz_anticomm - b.jpjz_anticomm),
                                      std::abs(a.jp2_over_n2 - b.jp2_over_n2)});
                  }
                  return dev;
              });

    run_check(report, "collective_pairwise_vs_distinguishable", 1e-8, false,
              "N in 2..6, 3 random (theta_tilde, t) each", [&] {
                  double dev = 0.0;
                  for (int N = 2; N <= 6; ++N) {
                      for (int rep = 0; rep < 3; ++rep) {
                          const double tt = angle(rng);
                          const double t = gt20(rng);
                          const SpinCoherentExpansion exp = dicke_coefficients(N, tt);
                          const DensityMatrix a =
                              pairwise_density(collective_moments(exp, t, 0.0), N);
                          const DensityMatrix b = distinguishable_pair_density(N, tt, t);
                          dev = std::max(dev, matrix_dev(a.matrix(), b.matrix()));
                      }
                  }
                  return dev;
              });

    run_check(report, "eq48_literal_trace_violation", 1e-3, true,
              "unsquared g(6,gt) in q44 at theta=0.9, gt=1.3; deviation must exceed", [&] {
                  const Eigen::Matrix4cd lit = detail::excited_partner_literal_q44_matrix(0.9, 1.3);
                  return std::abs(lit.trace() - cd{1.0, 0.0});
              });

    run_check(report, "eq19_literal_q44_vs_oracle", 1e-3, true,
              "printed q44 drops the (3/2)(1-f1)^2|a1 a2|^2 population; deviation must exceed",
              [&] {
                  const TwoQubitInitialState init =
                      case_initial_state(TwoQubitCase::identical_pair, 0.4);
                  const double gt = 0.7;
                  const Eigen::Matrix4cd lit = detail::general_literal_q44_matrix(init, gt);
                  const Eigen::Matrix4cd orc =
                      dense_two_qubit_evolve(init, gt, FockTruncation{3}).matrix();
                  return matrix_dev(lit, orc);
              });

    return report;
}

} // namespace tc
