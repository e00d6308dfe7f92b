#include "tc/collective.hpp"

#include "tc/errors.hpp"
#include "tc/measures.hpp"

#include <algorithm>
#include <cblas.h>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace tc {

namespace {

using cd = std::complex<double>;

double sqrt_jplus_weight(int n_qubits, int k) {
    return std::sqrt(static_cast<double>(n_qubits - k) * static_cast<double>(k + 1));
}

// C = A (KxK) * B (KxT), all column-major.
void dgemm_kkt(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, Eigen::MatrixXd& C) {
    const auto K = static_cast<int>(A.rows());
    const auto T = static_cast<int>(B.cols());
    C.resize(K, T);
    cblas_dgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, K, T, K, 1.0, A.data(), K,
                B.data(), K, 0.0, C.data(), K);
}

struct EvolvedSector {
    long long M = -1;
    int K = 0;
    Eigen::MatrixXd re, im;  // K x T
};

} // namespace

PairwiseElements pairwise_elements(const CollectiveMoments& m, int n_qubits) {
    if (n_qubits < 2) {
        throw DomainError("pairwise_elements requires at least two qubits");
    }
    const double N = n_qubits;
    const double denom = 1.0 - 1.0 / N;
    const double x = (4.0 * m.jz2_over_n2 - 1.0 / N) / (4.0 * denom);
    PairwiseElements e;
    e.v_plus = 0.25 + m.jz_over_n + x;
    e.v_minus = 0.25 - m.jz_over_n + x;
    e.w = 0.25 - x;
    e.p = e.w;
    e.h_plus = 0.5 * m.jp_over_n + m.jpjz_anticomm / (2.0 * denom);
    e.h_minus = 0.5 * m.jp_over_n - m.jpjz_anticomm / (2.0 * denom);
    e.mu = m.jp2_over_n2 / denom;
    return e;
}

DensityMatrix pairwise_density(const CollectiveMoments& m, int n_qubits) {
    const PairwiseElements e = pairwise_elements(m, n_qubits);
    Eigen::Matrix4cd rho;
    rho << cd(e.v_plus), std::conj(e.h_plus), std::conj(e.h_plus), std::conj(e.mu),
           e.h_plus, cd(e.w), cd(e.p), std::conj(e.h_minus),
           e.h_plus, cd(e.p), cd(e.w), std::conj(e.h_minus),
           e.mu, e.h_minus, e.h_minus, cd(e.v_minus);
    DensityTolerances band;
    band.hermitian = 1e-8;
    band.trace = 1e-8;
    band.psd_floor = -1e-8;
    try {
        return DensityMatrix::validated(rho, band);
    } catch (const InvariantViolation& err) {
        throw NumericalFailure(std::string("pairwise_density: ") + err.what());
    }
}

std::vector<int> retained_excited_counts(const SpinCoherentExpansion& exp,
                                         double weight_cutoff) {
    if (!(weight_cutoff >= 0.0 && weight_cutoff < 1.0)) {
        throw DomainError("weight_cutoff must lie in [0, 1)");
    }
    const auto& d = exp.coefficients;
    std::vector<int> order(d.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double wa = d[static_cast<std::size_t>(a)] * d[static_cast<std::size_t>(a)];
        const double wb = d[static_cast<std::size_t>(b)] * d[static_cast<std::size_t>(b)];
        if (wa != wb) return wa > wb;
        return a < b;
    });
    std::vector<int> keep;
    double cum = 0.0;
    for (int k : order) {
        const double w = d[static_cast<std::size_t>(k)] * d[static_cast<std::size_t>(k)];
        if (w == 0.0) break;
        keep.push_back(k);
        cum += w;
        if (cum >= 1.0 - weight_cutoff) break;
    }
    if (keep.empty()) {
        throw DomainError("weight cutoff retains no sectors");
    }
    std::sort(keep.begin(), keep.end());
    return keep;
}

MomentKernelTable::MomentKernelTable(int n_qubits, std::vector<double> t_grid,
                                     std::size_t memory_budget)
    : n_(n_qubits), t_(std::move(t_grid)), budget_(memory_budget) {
    if (n_ < 1) throw DomainError("MomentKernelTable requires at least one qubit");
    if (t_.empty()) throw DomainError("MomentKernelTable requires a non-empty time grid");
}

void MomentKernelTable::ensure(const std::vector<int>& excited_counts) {
    std::vector<long long> missing;
    for (int k : excited_counts) {
        if (k < 0 || k > n_) throw DomainError("excited count out of range");
        if (fz_.find(k) == fz_.end()) missing.push_back(k + 1);
    }
    if (!missing.empty()) build_rows(missing);
}

void MomentKernelTable::build_rows(const std::vector<long long>& sectors) {
    const std::size_t T = t_.size();

    std::set<long long> evolve;
    for (long long M : sectors) {
        evolve.insert(M);
        if (M <= n_) evolve.insert(M + 1);      // upper partner for J+
        if (M + 1 <= n_) evolve.insert(M + 2);  // upper partner for J+^2
    }
    const std::set<long long> own(sectors.begin(), sectors.end());

    // Budget: 64*T bytes of kernel rows per sector plus the streaming window
    // (three evolved sectors, eigenvectors, phase workspace).
    long long k_max = 0;
    for (long long M : evolve) k_max = std::max<long long>(k_max, std::min<long long>(n_, M) + 1);
    const std::size_t kmax = static_cast<std::size_t>(k_max);
    const std::size_t needed = used_bytes_ + sectors.size() * 64 * T +
                               5 * kmax * T * sizeof(double) + 3 * kmax * kmax * sizeof(double);
    if (needed > budget_) {
        std::ostringstream os;
        os << "moment kernel table would need about " << needed
           << " bytes, exceeding the memory budget of " << budget_
           << "; raise memory_budget or shorten the time grid";
        throw DomainError(os.str());
    }

    const double J = n_ / 2.0;
    EvolvedSector window[3];
    int head = 0;
    auto find_in_window = [&](long long M) -> const EvolvedSector* {
        for (const auto& s : window) {
            if (s.M == M) return &s;
        }
        return nullptr;
    };

    Eigen::MatrixXd ere, eim;
    for (long long M : evolve) {
        const SectorBasis basis = sector_basis(n_, M);
        const SectorEigensystem eig = sector_eigensystem(basis);
        const int K = basis.K();
        const int i0 = static_cast<int>(M - 1);  // basis position of (n=1, k=M-1)

        const Eigen::VectorXd u = eig.eigenvectors.row(i0).transpose();
        ere.resize(K, static_cast<Eigen::Index>(T));
        eim.resize(K, static_cast<Eigen::Index>(T));
        for (std::size_t j = 0; j < T; ++j) {
            for (int s = 0; s < K; ++s) {
                const double ph = eig.eigenvalues(s) * t_[j];
                ere(s, static_cast<Eigen::Index>(j)) = u(s) * std::cos(ph);
                eim(s, static_cast<Eigen::Index>(j)) = -u(s) * std::sin(ph);
            }
        }
        EvolvedSector& slot = window[head];
        head = (head + 1) % 3;
        slot.M = M;
        slot.K = K;
        dgemm_kkt(eig.eigenvectors, ere, slot.re);
        dgemm_kkt(eig.eigenvectors, eim, slot.im);

        const EvolvedSector& cur = slot;

        if (own.count(M)) {
            const int k_row = static_cast<int>(M - 1);
            std::vector<double> fz(T, 0.0), fz2(T, 0.0);
            for (std::size_t j = 0; j < T; ++j) {
                const auto col = static_cast<Eigen::Index>(j);
                double az = 0.0, az2 = 0.0;
                for (int i = 0; i < K; ++i) {
                    const double pop = cur.re(i, col) * cur.re(i, col) +
                                       cur.im(i, col) * cur.im(i, col);
                    const double mz = (static_cast<double>(i) - J) / n_;
                    az += mz * pop;
                    az2 += mz * mz * pop;
                }
                fz[j] = az;
                fz2[j] = az2;
            }
            fz_[k_row] = std::move(fz);
            fz2_[k_row] = std::move(fz2);
            used_bytes_ += 2 * T * sizeof(double);
        }

        if (own.count(M - 1) && M - 1 >= 1) {
            if (const EvolvedSector* lo = find_in_window(M - 1)) {
                const int k_row = static_cast<int>(M - 2);
                std::vector<cd> fp(T, cd{}), fpjz(T, cd{});
                const int top = std::min(lo->K, cur.K - 1);
                for (std::size_t j = 0; j < T; ++j) {
                    const auto col = static_cast<Eigen::Index>(j);
                    cd accp{}, accz{};
                    for (int i = 0; i < top; ++i) {
                        const double wgt = sqrt_jplus_weight(n_, i);
                        const double a = cur.re(i + 1, col), b = cur.im(i + 1, col);
                        const double c = lo->re(i, col), d = lo->im(i, col);
                        const cd prod(a * c + b * d, a * d - b * c);  // conj(up)*lo
                        accp += wgt * prod;
                        accz += wgt * (2.0 * (static_cast<double>(i) - J) + 1.0) * prod;
                    }
                    fp[j] = accp / static_cast<double>(n_);
                    fpjz[j] = accz / (static_cast<double>(n_) * n_);
                }
                fp_[k_row] = std::move(fp);
                fpjz_[k_row] = std::move(fpjz);
                used_bytes_ += 4 * T * sizeof(double);
            }
        }

        if (own.count(M - 2) && M - 2 >= 1) {
            if (const EvolvedSector* lo = find_in_window(M - 2)) {
                const int k_row = static_cast<int>(M - 3);
                std::vector<cd> fp2(T, cd{});
                const int top = std::min(lo->K, cur.K - 2);
                for (std::size_t j = 0; j < T; ++j) {
                    const auto col = static_cast<Eigen::Index>(j);
                    cd acc{};
                    for (int i = 0; i < top; ++i) {
                        const double wgt =
                            sqrt_jplus_weight(n_, i) * sqrt_jplus_weight(n_, i + 1);
                        const double a = cur.re(i + 2, col), b = cur.im(i + 2, col);
                        const double c = lo->re(i, col), d = lo->im(i, col);
                        acc += wgt * cd(a * c + b * d, a * d - b * c);
                    }
                    fp2[j] = acc / (static_cast<double>(n_) * n_);
                }
                fp2_[k_row] = std::move(fp2);
                used_bytes_ += 2 * T * sizeof(double);
            }
        }
    }
}

std::vector<CollectiveMoments> MomentKernelTable::moments(const SpinCoherentExpansion& exp,
                                                          double weight_cutoff) const {
    if (exp.n_qubits != n_) {
        throw DomainError("expansion qubit count does not match the kernel table");
    }
    const std::vector<int> keep = retained_excited_counts(exp, weight_cutoff);
    for (int k : keep) {
        if (fz_.find(k) == fz_.end()) {
            throw DomainError("kernel row missing; call ensure() with the retained set first");
        }
    }
    std::vector<bool> kept(static_cast<std::size_t>(n_) + 1, false);
    for (int k : keep) kept[static_cast<std::size_t>(k)] = true;

    const std::size_t T = t_.size();
    std::vector<CollectiveMoments> out(T);
    for (std::size_t j = 0; j < T; ++j) out[j].t = t_[j];

    const auto& d = exp.coefficients;
    for (int k : keep) {
        const double w2 = d[static_cast<std::size_t>(k)] * d[static_cast<std::size_t>(k)];
        const auto& fz = fz_.at(k);
        const auto& fz2 = fz2_.at(k);
        for (std::size_t j = 0; j < T; ++j) {
            out[j].jz_over_n += w2 * fz[j];
            out[j].jz2_over_n2 += w2 * fz2[j];
        }
        if (k + 1 <= n_ && kept[static_cast<std::size_t>(k) + 1]) {
            const double dd = d[static_cast<std::size_t>(k) + 1] * d[static_cast<std::size_t>(k)];
            const auto& fp = fp_.at(k);
            const auto& fpjz = fpjz_.at(k);
            for (std::size_t j = 0; j < T; ++j) {
                out[j].jp_over_n += dd * fp[j];
                out[j].jpjz_anticomm += dd * fpjz[j];
            }
        }
        if (k + 2 <= n_ && kept[static_cast<std::size_t>(k) + 2]) {
            const double dd = d[static_cast<std::size_t>(k) + 2] * d[static_cast<std::size_t>(k)];
            const auto& fp2 = fp2_.at(k);
            for (std::size_t j = 0; j < T; ++j) {
                out[j].jp2_over_n2 += dd * fp2[j];
            }
        }
    }
    return out;
}

CollectiveMoments collective_moments(const SpinCoherentExpansion& exp, double t,
                                     double weight_cutoff) {
    MomentKernelTable table(exp.n_qubits, {t});
    table.ensure(retained_excited_counts(exp, weight_cutoff));
    return table.moments(exp, weight_cutoff).front();
}

std::vector<CollectiveMoments> moments_series(const SpinCoherentExpansion& exp, double t_max,
                                              double t_step, double weight_cutoff,
                                              std::size_t memory_budget) {
    if (!(t_max > 0.0) || !(t_step > 0.0) || t_step > t_max) {
        throw DomainError("moments_series requires t_max > 0 and 0 < t_step <= t_max");
    }
    const auto npts = static_cast<std::size_t>(std::floor(t_max / t_step + 0.5)) + 1;
    std::vector<double> grid(npts);
    for (std::size_t i = 0; i < npts; ++i) grid[i] = static_cast<double>(i) * t_step;
    MomentKernelTable table(exp.n_qubits, std::move(grid), memory_budget);
    table.ensure(retained_excited_counts(exp, weight_cutoff));
    return table.moments(exp, weight_cutoff);
}

PairwiseMaxPoint pairwise_max_concurrence(const MomentKernelTable& table,
                                          const SpinCoherentExpansion& exp,
                                          double weight_cutoff) {
    const auto ms = table.moments(exp, weight_cutoff);
    PairwiseMaxPoint best{0.0, -1.0};
    for (const auto& m : ms) {
        const double c = concurrence(pairwise_density(m, exp.n_qubits));
        if (c > best.c_max) {
            best = {m.t, c};
        }
    }
    return best;
}

PairwiseMaxPoint pairwise_max_concurrence(int n_qubits, double theta_tilde, double t_max,
                                          double t_step, double weight_cutoff,
                                          std::size_t memory_budget) {
    if (!(t_max > 0.0) || !(t_step > 0.0) || t_step > t_max) {
        throw DomainError("pairwise_max_concurrence requires t_max > 0 and 0 < t_step <= t_max");
    }
    const SpinCoherentExpansion exp = dicke_coefficients(n_qubits, theta_tilde);
    const auto npts = static_cast<std::size_t>(std::floor(t_max / t_step + 0.5)) + 1;
    std::vector<double> grid(npts);
    for (std::size_t i = 0; i < npts; ++i) grid[i] = static_cast<double>(i) * t_step;
    MomentKernelTable table(n_qubits, std::move(grid), memory_budget);
    table.ensure(retained_excited_counts(exp, weight_cutoff));
    return pairwise_max_concurrence(table, exp, weight_cutoff);
}

} // namespace tc
