#pragma once

#include "tc/density_matrix.hpp"
#include "tc/time_kernels.hpp"

#include <complex>
#include <string>
#include <vector>

namespace tc {

/// Single-qubit amplitudes alpha|e> + beta|g>, normalized to 1 within 1e-12.
struct QubitAmplitudes {
    std::complex<double> alpha;
    std::complex<double> beta;
};

/// Product initial state (qubit1 x qubit2); the field is fixed to the
/// single-photon number state |1>.
struct TwoQubitInitialState {
    QubitAmplitudes qubit1;
    QubitAmplitudes qubit2;
};

/// The four case-study families. theta parametrizes |theta> = cos(theta)|e> + sin(theta)|g>.
enum class TwoQubitCase {
    ground_partner,   ///< |theta> x |g>
    excited_partner,  ///< |theta> x |e>
    identical_pair,   ///< |theta> x |theta>
    mirrored_pair,    ///< |theta> x |-theta>
};

const char* to_string(TwoQubitCase c);
TwoQubitCase parse_two_qubit_case(const std::string& name);

/// Amplitude mapping of a case family into the general initial state.
TwoQubitInitialState case_initial_state(TwoQubitCase c, double theta);

/// Throws DomainError if either qubit is not normalized within 1e-12.
void check_normalized(const TwoQubitInitialState& init);

/// Closed-form reduced density matrix of the two qubits at time gt,
/// basis |ee>,|eg>,|ge>,|gg>. The assembled matrix is checked against the
/// DensityMatrix invariants within a 1e-8 band; a violation throws
/// NumericalFailure (transcription tripwire).
DensityMatrix reduced_density_general(const TwoQubitInitialState& init, double gt);

/// Case-specialized closed forms, transcribed independently of the general
/// formula; agrees with reduced_density_general under the amplitude mapping.
DensityMatrix reduced_density_case(TwoQubitCase c, double theta, double gt);

struct ConcurrenceSeries {
    std::vector<double> times;
    std::vector<double> values;
};

/// Concurrence of reduced_density_general on the grid 0, step, ..., gt_max (inclusive).
ConcurrenceSeries concurrence_series(const TwoQubitInitialState& init, double gt_max,
                                     double gt_step);

struct MaxConcurrencePoint {
    double gt_star;
    double c_max;
};

/// Grid point with the largest concurrence; ties break to the smallest gt.
MaxConcurrencePoint max_concurrence(const TwoQubitInitialState& init, double gt_max,
                                    double gt_step);

namespace detail {
/// Literal Eq.-48-style q44 (unsquared g(6,gt), no |alpha1 alpha2|^2 term) for the
/// excited-partner family. Exists only so the verification battery can
/// demonstrate that the literal form breaks unit trace.
Eigen::Matrix4cd excited_partner_literal_q44_matrix(double theta, double gt);
/// General matrix with q44 transcribed literally (missing the
/// (3/2)(1-f1)^2 |a1 a2|^2 population); used by the verification battery.
Eigen::Matrix4cd general_literal_q44_matrix(const TwoQubitInitialState& init, double gt);
} // namespace detail

} // namespace tc
