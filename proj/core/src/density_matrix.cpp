#include "tc/density_matrix.hpp"

#include "tc/errors.hpp"

#include <Eigen/Eigenvalues>
#include <sstream>

namespace tc {

namespace {

double herm_dev(const Eigen::MatrixXcd& m, int* bi = nullptr, int* bj = nullptr) {
    double worst = 0.0;
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j <= i; ++j) {
            const double d = std::abs(m(i, j) - std::conj(m(j, i)));
            if (d > worst) {
                worst = d;
                if (bi) *bi = i;
                if (bj) *bj = j;
            }
        }
    }
    return worst;
}

} // namespace

DensityMatrix DensityMatrix::validated(Eigen::MatrixXcd m, const DensityTolerances& tol) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw DomainError("density matrix must be square and non-empty");
    }
    int bi = 0, bj = 0;
    const double hd = herm_dev(m, &bi, &bj);
    if (hd > tol.hermitian) {
        std::ostringstream os;
        os << "density matrix invariant failed: hermitian, |m(" << bi << "," << bj
           << ") - conj(m(" << bj << "," << bi << "))| = " << hd << " > " << tol.hermitian;
        throw InvariantViolation(os.str());
    }
    const double td = std::abs(m.trace() - std::complex<double>(1.0, 0.0));
    if (td > tol.trace) {
        std::ostringstream os;
        os << "density matrix invariant failed: unit trace, |tr - 1| = " << td << " > "
           << tol.trace;
        throw InvariantViolation(os.str());
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    const double mineig = es.eigenvalues().minCoeff();
    if (mineig < tol.psd_floor) {
        std::ostringstream os;
        os << "density matrix invariant failed: positive semidefinite, min eigenvalue = "
           << mineig << " < " << tol.psd_floor;
        throw InvariantViolation(os.str());
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::trusted(Eigen::MatrixXcd m) {
    return DensityMatrix(std::move(m));
}

double DensityMatrix::trace_deviation() const {
    return std::abs(m_.trace() - std::complex<double>(1.0, 0.0));
}

double DensityMatrix::hermiticity_deviation() const {
    return herm_dev(m_);
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

} // namespace tc
