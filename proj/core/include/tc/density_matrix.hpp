#pragma once

#include <Eigen/Dense>
#include <complex>

namespace tc {

/// Validation bands for the DensityMatrix invariants.
struct DensityTolerances {
    double hermitian = 1e-10;  ///< max |rho_ij - conj(rho_ji)|
    double trace = 1e-10;      ///< max |tr(rho) - 1|
    double psd_floor = -1e-9;  ///< min eigenvalue must stay above this
};

/// A d x d complex Hermitian unit-trace positive-semidefinite matrix.
///
/// Rows/columns of the two-qubit case (d=4) are ordered |ee>, |eg>, |ge>, |gg>
/// with |e> = (1,0), |g> = (0,1).
class DensityMatrix {
public:
    /// Validates all three invariants and throws InvariantViolation naming the
    /// failed check. The optional bands widen or tighten the default ones.
    static DensityMatrix validated(Eigen::MatrixXcd m, const DensityTolerances& tol = {});

    /// Wraps a matrix that is known-good by construction. No checks.
    static DensityMatrix trusted(Eigen::MatrixXcd m);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return m_; }
    std::complex<double> operator()(int i, int j) const { return m_(i, j); }

    double trace_deviation() const;
    double hermiticity_deviation() const;
    double min_eigenvalue() const;

private:
    explicit DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {}
    Eigen::MatrixXcd m_;
};

} // namespace tc
