#pragma once

#include "tc/density_matrix.hpp"
#include "tc/dicke.hpp"

#include <complex>
#include <cstddef>
#include <map>
#include <vector>

namespace tc {

/// The five normalized collective expectation values at one time.
struct CollectiveMoments {
    double jz_over_n = 0.0;                       ///< <Jz>/N
    double jz2_over_n2 = 0.0;                     ///< <Jz^2>/N^2
    std::complex<double> jp_over_n;               ///< <J+>/N
    std::complex<double> jpjz_anticomm;           ///< <J+ Jz + Jz J+>/N^2
    std::complex<double> jp2_over_n2;             ///< <J+^2>/N^2
    double t = 0.0;
};

/// The seven independent entries of the exchange-symmetric pairwise matrix.
struct PairwiseElements {
    double v_plus = 0.0;
    double v_minus = 0.0;
    double w = 0.0;
    double p = 0.0;  // equals w
    std::complex<double> h_plus;
    std::complex<double> h_minus;
    std::complex<double> mu;
};

PairwiseElements pairwise_elements(const CollectiveMoments& m, int n_qubits);

/// Assembles the 4x4 pairwise reduced density matrix from the moments
/// (|ee>,|eg>,|ge>,|gg> ordering) and validates its invariants within 1e-8.
DensityMatrix pairwise_density(const CollectiveMoments& m, int n_qubits);

/// Smallest set of excited-counts k whose cumulative weight |d_k|^2 reaches
/// 1 - weight_cutoff, sorted ascending. Throws DomainError if nothing can be
/// retained.
std::vector<int> retained_excited_counts(const SpinCoherentExpansion& exp,
                                         double weight_cutoff);

/// Per-sector moment kernels on a fixed time grid: the time-dependent factors
/// of the sector sums, which depend on (N, M, t) but not on theta_tilde. Rows
/// are built by streaming sectors in ascending M with a three-sector window of
/// evolved states; eigendecompositions are never stored.
class MomentKernelTable {
public:
    /// memory_budget (bytes) caps kernel rows plus the transient evolved-state
    /// window; exceeding it throws DomainError before any allocation.
    MomentKernelTable(int n_qubits, std::vector<double> t_grid,
                      std::size_t memory_budget = std::size_t{1} << 30);

    /// Ensure kernel rows exist for every sector M = k+1, k in excited_counts.
    void ensure(const std::vector<int>& excited_counts);

    /// Combine kernel rows with the expansion weights; one CollectiveMoments
    /// per grid time. Summation runs in ascending-k order (deterministic).
    std::vector<CollectiveMoments> moments(const SpinCoherentExpansion& exp,
                                           double weight_cutoff) const;

    int n_qubits() const { return n_; }
    const std::vector<double>& t_grid() const { return t_; }

private:
    void build_rows(const std::vector<long long>& sectors);

    int n_;
    std::vector<double> t_;
    std::size_t budget_;
    std::size_t used_bytes_ = 0;
    // key: excited-count k of the initial component (sector M = k+1)
    std::map<int, std::vector<double>> fz_, fz2_;
    std::map<int, std::vector<std::complex<double>>> fp_, fpjz_, fp2_;

    friend class MomentKernelTableTestPeer;
};

/// Moments of the evolved state at a single time (convenience wrapper over a
/// one-point kernel table).
CollectiveMoments collective_moments(const SpinCoherentExpansion& exp, double t,
                                     double weight_cutoff);

/// Moment series on a grid 0..t_max (step t_step) reusing one kernel table.
std::vector<CollectiveMoments> moments_series(const SpinCoherentExpansion& exp,
                                              double t_max, double t_step,
                                              double weight_cutoff,
                                              std::size_t memory_budget = std::size_t{1} << 30);

struct PairwiseMaxPoint {
    double t_star;
    double c_max;
};

/// Maximum pairwise concurrence over the time grid, ties to the smallest t.
PairwiseMaxPoint pairwise_max_concurrence(int n_qubits, double theta_tilde, double t_max,
                                          double t_step, double weight_cutoff,
                                          std::size_t memory_budget = std::size_t{1} << 30);

/// Same scan evaluated against a prebuilt kernel table (used by sweeps that
/// share the table across many theta_tilde values).
PairwiseMaxPoint pairwise_max_concurrence(const MomentKernelTable& table,
                                          const SpinCoherentExpansion& exp,
                                          double weight_cutoff);

} // namespace tc
