#include "tc/two_qubit.hpp"

#include "tc/errors.hpp"
#include "tc/measures.hpp"

#include <cmath>
#include <sstream>

namespace tc {

namespace {

using cd = std::complex<double>;

constexpr double kNormTol = 1e-12;
constexpr double kAssemblyBand = 1e-8;

double norm2(const QubitAmplitudes& q) {
    return std::norm(q.alpha) + std::norm(q.beta);
}

// Mirrors the upper triangle and validates trace/PSD within the assembly band.
DensityMatrix finish_matrix(Eigen::Matrix4cd q, const char* what) {
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < i; ++j) {
            q(i, j) = std::conj(q(j, i));
        }
    }
    DensityTolerances band;
    band.hermitian = kAssemblyBand;
    band.trace = kAssemblyBand;
    band.psd_floor = -kAssemblyBand;
    try {
        return DensityMatrix::validated(q, band);
    } catch (const InvariantViolation& e) {
        std::ostringstream os;
        os << what << ": assembled matrix fails invariants: " << e.what();
        throw NumericalFailure(os.str());
    }
}

} // namespace

const char* to_string(TwoQubitCase c) {
    switch (c) {
        case TwoQubitCase::ground_partner: return "ground_partner";
        case TwoQubitCase::excited_partner: return "excited_partner";
        case TwoQubitCase::identical_pair: return "identical_pair";
        case TwoQubitCase::mirrored_pair: return "mirrored_pair";
    }
    return "?";
}

TwoQubitCase parse_two_qubit_case(const std::string& name) {
    if (name == "ground_partner") return TwoQubitCase::ground_partner;
    if (name == "excited_partner") return TwoQubitCase::excited_partner;
    if (name == "identical_pair") return TwoQubitCase::identical_pair;
    if (name == "mirrored_pair") return TwoQubitCase::mirrored_pair;
    throw DomainError("unknown two-qubit case: " + name);
}

TwoQubitInitialState case_initial_state(TwoQubitCase c, double theta) {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    switch (c) {
        case TwoQubitCase::ground_partner: return {{ct, st}, {0.0, 1.0}};
        case TwoQubitCase::excited_partner: return {{ct, st}, {1.0, 0.0}};
        case TwoQubitCase::identical_pair: return {{ct, st}, {ct, st}};
        case TwoQubitCase::mirrored_pair: return {{ct, st}, {ct, -st}};
    }
    throw DomainError("invalid case label");
}

void check_normalized(const TwoQubitInitialState& init) {
    if (std::abs(norm2(init.qubit1) - 1.0) > kNormTol ||
        std::abs(norm2(init.qubit2) - 1.0) > kNormTol) {
        throw DomainError("two-qubit initial state is not normalized per qubit");
    }
}

namespace {

// Upper triangle of the general reduced density matrix. The q44 entry carries
// the (3/2)(1-f1)^2 |a1 a2|^2 population that the a-dag^2 block feeds into
// |gg> x |n+2>; dropping it breaks unit trace whenever both qubits start with
// excited weight (see the verification battery).
Eigen::Matrix4cd assemble_general(const TwoQubitInitialState& init, double gt,
                                  bool literal_q44) {
    const TimeKernels k = time_kernels(gt);
    const double c2 = std::cos(gt * std::sqrt(2.0));
    const cd a1 = init.qubit1.alpha, b1 = init.qubit1.beta;
    const cd a2 = init.qubit2.alpha, b2 = init.qubit2.beta;

    const double A1 = std::norm(a1), B1 = std::norm(b1);
    const double A2 = std::norm(a2), B2 = std::norm(b2);
    const double cross = 2.0 * std::real(b1 * a2 * std::conj(a1) * std::conj(b2));

    Eigen::Matrix4cd q = Eigen::Matrix4cd::Zero();
    q(0, 0) = A1 * A2 * k.f1 * k.f1 + (A1 * B2 + cross + B1 * A2) * k.g6 * k.g6;
    q(0, 1) = A1 * a2 * std::conj(b2) * k.f1 * k.f2 + a1 * std::conj(b1) * A2 * k.f1 * k.f3 +
              (a1 * std::conj(b1) * B2 + a2 * std::conj(b2) * B1) * k.g6 * k.g2;
    q(0, 2) = A1 * a2 * std::conj(b2) * k.f1 * k.f3 + a1 * std::conj(b1) * A2 * k.f1 * k.f2 +
              (a1 * std::conj(b1) * B2 + a2 * std::conj(b2) * B1) * k.g6 * k.g2;
    q(0, 3) = a1 * a2 * std::conj(b1) * std::conj(b2) * k.f1 * c2;
    q(1, 1) = 2.0 * A1 * A2 * k.g10 * k.g10 + A1 * B2 * k.f2 * k.f2 + cross * k.f2 * k.f3 +
              B1 * A2 * k.f3 * k.f3 + B1 * B2 * k.g2 * k.g2;
    q(1, 2) = 2.0 * A1 * A2 * k.g10 * k.g10 +
              b1 * a2 * std::conj(a1) * std::conj(b2) * k.f3 * k.f3 +
              a1 * b2 * std::conj(b1) * std::conj(a2) * k.f2 * k.f2 + B1 * B2 * k.g2 * k.g2 +
              (A1 * B2 + B1 * A2) * k.f2 * k.f3;
    q(1, 3) = 2.0 * (A1 * a2 * std::conj(b2) + a1 * std::conj(b1) * A2) * k.g6 * k.g10 +
              (a1 * std::conj(b1) * B2 * k.f2 + a2 * std::conj(b2) * B1 * k.f3) * c2;
    q(2, 2) = 2.0 * A1 * A2 * k.g10 * k.g10 + A1 * B2 * k.f3 * k.f3 + cross * k.f2 * k.f3 +
              B1 * A2 * k.f2 * k.f2 + B1 * B2 * k.g2 * k.g2;
    q(2, 3) = 2.0 * (a2 * std::conj(b2) * A1 + a1 * std::conj(b1) * A2) * k.g6 * k.g10 +
              (a1 * std::conj(b1) * B2 * k.f3 + a2 * std::conj(b2) * B1 * k.f2) * c2;
    q(3, 3) = 2.0 * (A1 * B2 + cross + B1 * A2) * k.g6 * k.g6 + B1 * B2 * c2 * c2;
    if (!literal_q44) {
        const double u = 1.0 - k.f1;
        q(3, 3) += 1.5 * u * u * A1 * A2;
    }
    return q;
}

} // namespace

DensityMatrix reduced_density_general(const TwoQubitInitialState& init, double gt) {
    check_normalized(init);
    return finish_matrix(assemble_general(init, gt, false), "reduced_density_general");
}

DensityMatrix reduced_density_case(TwoQubitCase c, double theta, double gt) {
    const TimeKernels k = time_kernels(gt);
    const double c2 = std::cos(gt * std::sqrt(2.0));
    const double ct = std::cos(theta), st = std::sin(theta);
    Eigen::Matrix4cd q = Eigen::Matrix4cd::Zero();

    switch (c) {
        case TwoQubitCase::ground_partner: {
            q(0, 0) = k.g6 * k.g6 * ct * ct;
            q(0, 1) = st * ct * k.g6 * k.g2;
            q(0, 2) = st * ct * k.g6 * k.g2;
            q(0, 3) = 0.0;
            q(1, 1) = ct * ct * k.f2 * k.f2 + st * st * k.g2 * k.g2;
            q(1, 2) = st * st * k.g2 * k.g2 + ct * ct * k.f2 * k.f3;
            q(1, 3) = st * ct * k.f2 * c2;
            q(2, 2) = ct * ct * k.f3 * k.f3 + st * st * k.g2 * k.g2;
            q(2, 3) = st * ct * k.f3 * c2;
            q(3, 3) = 2.0 * ct * ct * k.g6 * k.g6 + st * st * c2 * c2;
            break;
        }
        case TwoQubitCase::excited_partner: {
            const double u = 1.0 - k.f1;
            q(0, 0) = ct * ct * k.f1 * k.f1 + st * st * k.g6 * k.g6;
            q(0, 1) = st * ct * k.f1 * k.f3;
            q(0, 2) = st * ct * k.f1 * k.f2;
            q(0, 3) = 0.0;
            q(1, 1) = 2.0 * ct * ct * k.g10 * k.g10 + st * st * k.f3 * k.f3;
            q(1, 2) = 2.0 * ct * ct * k.g10 * k.g10 + st * st * k.f2 * k.f3;
            q(1, 3) = 2.0 * st * ct * k.g6 * k.g10;
            q(2, 2) = 2.0 * ct * ct * k.g10 * k.g10 + st * st * k.f2 * k.f2;
            q(2, 3) = 2.0 * st * ct * k.g6 * k.g10;
            // squared g6 (the printed form is unsquared and breaks the trace),
            // plus the returning |ee,1> -> |gg,3> population.
            q(3, 3) = 2.0 * st * st * k.g6 * k.g6 + 1.5 * u * u * ct * ct;
            break;
        }
        case TwoQubitCase::identical_pair: {
            const double u = 1.0 - k.f1;
            const double s2t = std::sin(2.0 * theta);
            const double f23 = k.f2 + k.f3;
            q(0, 0) = std::pow(ct, 4) * k.f1 * k.f1 + s2t * s2t * k.g6 * k.g6;
            q(0, 1) = std::pow(ct, 3) * st * k.f1 * f23 + s2t * st * st * k.g2 * k.g6;
            q(0, 2) = q(0, 1);
            q(0, 3) = st * st * ct * ct * k.f1 * c2;
            q(1, 1) = 2.0 * std::pow(ct, 4) * k.g10 * k.g10 + st * st * ct * ct * f23 * f23 +
                      std::pow(st, 4) * k.g2 * k.g2;
            q(1, 2) = q(1, 1);
            q(1, 3) = 2.0 * ct * ct * s2t * k.g6 * k.g10 + ct * std::pow(st, 3) * f23 * c2;
            q(2, 2) = q(1, 1);
            q(2, 3) = q(1, 3);
            q(3, 3) = 2.0 * s2t * s2t * k.g6 * k.g6 + std::pow(st, 4) * c2 * c2 +
                      1.5 * u * u * std::pow(ct, 4);
            break;
        }
        case TwoQubitCase::mirrored_pair: {
            const double u = 1.0 - k.f1;
            const double d23 = k.f2 - k.f3;  // identically 1
            q(0, 0) = std::pow(ct, 4) * k.f1 * k.f1;
            // sign fixed against the general formula (the printed pair q12/q13
            // carries the opposite, qubit-swapped sign and breaks PSD together
            // with the printed q24/q34)
            q(0, 1) = -std::pow(ct, 3) * st * k.f1 * d23;
            q(0, 2) = -q(0, 1);
            q(0, 3) = -st * st * ct * ct * k.f1 * c2;
            q(1, 1) = 2.0 * std::pow(ct, 4) * k.g10 * k.g10 + st * st * ct * ct * d23 * d23 +
                      std::pow(st, 4) * k.g2 * k.g2;
            q(1, 2) = 2.0 * std::pow(ct, 4) * k.g10 * k.g10 - st * st * ct * ct * d23 * d23 +
                      std::pow(st, 4) * k.g2 * k.g2;
            q(1, 3) = ct * std::pow(st, 3) * d23 * c2;
            q(2, 2) = q(1, 1);
            q(2, 3) = -q(1, 3);
            q(3, 3) = std::pow(st, 4) * c2 * c2 + 1.5 * u * u * std::pow(ct, 4);
            break;
        }
    }
    return finish_matrix(q, "reduced_density_case");
}

ConcurrenceSeries concurrence_series(const TwoQubitInitialState& init, double gt_max,
                                     double gt_step) {
    if (!(gt_max > 0.0) || !(gt_step > 0.0) || gt_step > gt_max) {
        throw DomainError("concurrence_series requires gt_max > 0 and 0 < gt_step <= gt_max");
    }
    check_normalized(init);
    ConcurrenceSeries out;
    const auto npts = static_cast<std::size_t>(std::floor(gt_max / gt_step + 0.5)) + 1;
    out.times.reserve(npts);
    out.values.reserve(npts);
    for (std::size_t i = 0; i < npts; ++i) {
        const double gt = static_cast<double>(i) * gt_step;
        out.times.push_back(gt);
        out.values.push_back(concurrence(reduced_density_general(init, gt)));
    }
    return out;
}

MaxConcurrencePoint max_concurrence(const TwoQubitInitialState& init, double gt_max,
                                    double gt_step) {
    const ConcurrenceSeries s = concurrence_series(init, gt_max, gt_step);
    std::size_t best = 0;
    for (std::size_t i = 1; i < s.values.size(); ++i) {
        if (s.values[i] > s.values[best]) best = i;
    }
    return {s.times[best], s.values[best]};
}

namespace detail {

Eigen::Matrix4cd excited_partner_literal_q44_matrix(double theta, double gt) {
    TwoQubitInitialState init = case_initial_state(TwoQubitCase::excited_partner, theta);
    Eigen::Matrix4cd q = assemble_general(init, gt, true);
    const TimeKernels k = time_kernels(gt);
    const double st = std::sin(theta);
    q(3, 3) = 2.0 * st * st * k.g6;  // Eq. 48 exactly as printed
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j) q(i, j) = std::conj(q(j, i));
    return q;
}

Eigen::Matrix4cd general_literal_q44_matrix(const TwoQubitInitialState& init, double gt) {
    Eigen::Matrix4cd q = assemble_general(init, gt, true);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j) q(i, j) = std::conj(q(j, i));
    return q;
}

} // namespace detail

} // namespace tc
