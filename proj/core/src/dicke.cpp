#include "tc/dicke.hpp"

#include "tc/errors.hpp"

#include <cmath>
#include <lapacke.h>

namespace tc {

SpinCoherentExpansion dicke_coefficients(int n_qubits, double theta_tilde) {
    if (n_qubits < 1) {
        throw DomainError("dicke_coefficients requires at least one qubit");
    }
    const int N = n_qubits;
    double c = std::cos(theta_tilde / 2.0);
    double s = std::sin(theta_tilde / 2.0);
    // Snap the exactly-degenerate angles (theta_tilde = 0, pi, 2pi, ...) so the
    // all-ground / all-excited states come out with a single nonzero coefficient.
    if (std::abs(c) < 1e-14) c = 0.0;
    if (std::abs(s) < 1e-14) s = 0.0;

    SpinCoherentExpansion out;
    out.n_qubits = N;
    out.theta_tilde = theta_tilde;
    out.coefficients.assign(static_cast<std::size_t>(N) + 1, 0.0);

    const double log_c = c == 0.0 ? 0.0 : std::log(std::abs(c));
    const double log_s = s == 0.0 ? 0.0 : std::log(std::abs(s));
    const double lgN = std::lgamma(static_cast<double>(N) + 1.0);
    for (int k = 0; k <= N; ++k) {
        if ((c == 0.0 && k > 0) || (s == 0.0 && k < N)) continue;
        const double log_binom_half =
            0.5 * (lgN - std::lgamma(static_cast<double>(k) + 1.0) -
                   std::lgamma(static_cast<double>(N - k) + 1.0));
        const double mag = std::exp(log_binom_half + k * log_c + (N - k) * log_s);
        double sign = 1.0;
        if (c < 0.0 && (k % 2 != 0)) sign = -sign;
        if (s < 0.0 && ((N - k) % 2 != 0)) sign = -sign;
        out.coefficients[static_cast<std::size_t>(k)] = sign * mag;
    }
    return out;
}

SectorBasis sector_basis(int n_qubits, long long M) {
    if (n_qubits < 1) throw DomainError("sector_basis requires at least one qubit");
    if (M < 0) throw DomainError("sector_basis requires M >= 0");
    SectorBasis b;
    b.n_qubits = n_qubits;
    b.M = M;
    const int k_top = static_cast<int>(std::min<long long>(n_qubits, M));
    b.states.reserve(static_cast<std::size_t>(k_top) + 1);
    for (int k = 0; k <= k_top; ++k) {
        b.states.push_back({M - k, k});
    }
    return b;
}

SectorEigensystem sector_eigensystem(const SectorBasis& basis) {
    const int K = basis.K();
    const int N = basis.n_qubits;
    SectorEigensystem eig;
    eig.basis = basis;
    eig.offdiag.resize(std::max(K - 1, 0));
    for (int i = 0; i + 1 < K; ++i) {
        const auto& lo = basis.states[static_cast<std::size_t>(i)];
        // J+ a coupling between (n, k) and (n-1, k+1)
        const double amp = static_cast<double>(lo.n) *
                           static_cast<double>(N - lo.k) * static_cast<double>(lo.k + 1);
        eig.offdiag(i) = std::sqrt(amp);
    }

    eig.eigenvalues = Eigen::VectorXd::Zero(K);
    eig.eigenvectors = Eigen::MatrixXd::Identity(K, K);
    if (K > 1) {
        Eigen::VectorXd d = Eigen::VectorXd::Zero(K);
        Eigen::VectorXd e = eig.offdiag;
        const lapack_int info = LAPACKE_dstedc(LAPACK_COL_MAJOR, 'I', K, d.data(), e.data(),
                                               eig.eigenvectors.data(), K);
        if (info != 0) {
            throw NumericalFailure("LAPACK dstedc failed on sector M=" +
                                   std::to_string(basis.M) +
                                   " (info=" + std::to_string(info) + ")");
        }
        eig.eigenvalues = d;
    }
    return eig;
}

Eigen::VectorXcd evolve_component(const SectorEigensystem& eig, int initial_index, double t) {
    const int K = eig.basis.K();
    if (initial_index < 0 || initial_index >= K) {
        throw DomainError("evolve_component: initial_index out of range");
    }
    const Eigen::VectorXd u = eig.eigenvectors.row(initial_index).transpose();
    Eigen::VectorXcd phases(K);
    for (int s = 0; s < K; ++s) {
        phases(s) = std::polar(u(s), -eig.eigenvalues(s) * t);
    }
    return eig.eigenvectors * phases;
}

} // namespace tc
