#include "tc/measures.hpp"

#include "tc/errors.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace tc {

double l1_coherence(const DensityMatrix& rho) {
    const auto& m = rho.matrix();
    double sum = 0.0;
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (i != j) sum += std::abs(m(i, j));
        }
    }
    return sum;
}

namespace {

// sigma_y x sigma_y in the |ee>,|eg>,|ge>,|gg> ordering: antidiagonal(-1, 1, 1, -1).
Eigen::Matrix4cd spin_flip_matrix() {
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    return yy;
}

} // namespace

DensityMatrix spin_flip(const DensityMatrix& rho) {
    if (rho.dim() != 4) {
        throw DomainError("spin_flip requires a 4x4 density matrix");
    }
    const Eigen::Matrix4cd yy = spin_flip_matrix();
    Eigen::MatrixXcd out = yy * rho.matrix().conjugate() * yy;
    return DensityMatrix::trusted(std::move(out));
}

double concurrence(const DensityMatrix& rho, double clip_band, double hard_band) {
    if (rho.dim() != 4) {
        throw DomainError("concurrence requires a 4x4 density matrix");
    }
    const Eigen::Matrix4cd yy = spin_flip_matrix();
    const Eigen::Matrix4cd r = rho.matrix();
    const Eigen::Matrix4cd prod = r * yy * r.conjugate() * yy;

    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(prod, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) {
        throw NumericalFailure("complex eigensolver failed on rho * spin_flip(rho)");
    }

    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) {
        const std::complex<double> ev = es.eigenvalues()(i);
        if (std::abs(ev.imag()) > hard_band || ev.real() < -hard_band) {
            std::ostringstream os;
            os << "eigenvalue of rho * spin_flip(rho) off the real nonnegative axis: ("
               << ev.real() << ", " << ev.imag() << ")";
            throw NumericalFailure(os.str());
        }
        double re = ev.real();
        if (re < 0.0 && re >= -clip_band) re = 0.0;
        if (re < 0.0 && std::abs(ev.imag()) <= clip_band) re = std::max(re, 0.0);
        lam[i] = std::sqrt(std::max(re, 0.0));
    }
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double entanglement_of_formation(double c) {
    if (!(c >= 0.0 && c <= 1.0)) {
        throw DomainError("entanglement_of_formation requires concurrence in [0,1]");
    }
    const double x = (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))) / 2.0;
    auto plogp = [](double p) { return p <= 0.0 ? 0.0 : p * std::log2(p); };
    return -plogp(x) - plogp(1.0 - x);
}

} // namespace tc
