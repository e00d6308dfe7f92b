#pragma once

#include <Eigen/Dense>
#include <vector>

namespace tc {

/// Dicke-basis expansion of the N-qubit spin coherent state
/// (cos(tt/2)|e> + sin(tt/2)|g>)^(x N).
///
/// coefficients[k] is d_m for m = k - J with J = N/2, i.e. k counts excited
/// qubits. All coefficients are real; sum of squares is 1.
struct SpinCoherentExpansion {
    int n_qubits = 0;
    double theta_tilde = 0.0;
    std::vector<double> coefficients;  // size N+1, index k = m + J

    double coefficient_for_excited(int k) const { return coefficients[static_cast<std::size_t>(k)]; }
};

/// Computed stably in log space (log-binomial + log-trig), so N in the
/// thousands is exact to roundoff. Throws DomainError for N < 1.
SpinCoherentExpansion dicke_coefficients(int n_qubits, double theta_tilde);

/// One basis state of a conserved-excitation sector: photon number n and
/// excited-qubit count k (Dicke index m = k - J), with n + k = M.
struct SectorBasisState {
    long long n;
    int k;
};

/// Ordered basis (ascending m) of the excitation-M sector; K = min(2J, M) + 1.
struct SectorBasis {
    int n_qubits = 0;
    long long M = 0;
    std::vector<SectorBasisState> states;

    int K() const { return static_cast<int>(states.size()); }
};

SectorBasis sector_basis(int n_qubits, long long M);

/// Eigendecomposition of the resonant interaction-picture block: a real
/// symmetric tridiagonal matrix with zero diagonal and off-diagonal elements
/// sqrt(n) * sqrt((J-m)(J+m+1)) between (n, m) and (n-1, m+1).
struct SectorEigensystem {
    SectorBasis basis;
    Eigen::VectorXd offdiag;       // K-1 couplings
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // columns; orthogonal
};

/// Throws NumericalFailure if the LAPACK solver does not converge.
SectorEigensystem sector_eigensystem(const SectorBasis& basis);

/// exp(-i H t) applied to the basis vector at initial_index; unit norm.
Eigen::VectorXcd evolve_component(const SectorEigensystem& eig, int initial_index, double t);

} // namespace tc
