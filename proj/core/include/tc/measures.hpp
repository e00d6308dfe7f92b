#pragma once

#include "tc/density_matrix.hpp"

namespace tc {

/// l1 coherence: sum of |rho_ij| over all off-diagonal elements.
double l1_coherence(const DensityMatrix& rho);

/// Spin-flipped matrix (sigma_y x sigma_y) rho* (sigma_y x sigma_y). Requires dim 4.
DensityMatrix spin_flip(const DensityMatrix& rho);

/// Wootters concurrence max{0, l1-l2-l3-l4} from the descending square roots of
/// the eigenvalues of rho * spin_flip(rho). Requires dim 4.
///
/// The product is non-Hermitian, so its spectrum is computed with a general
/// complex eigensolver; theory guarantees it is real and nonnegative. Parts
/// within clip_band of the real nonnegative axis are clipped; anything beyond
/// hard_band throws NumericalFailure.
double concurrence(const DensityMatrix& rho, double clip_band = 1e-9, double hard_band = 1e-6);

/// Entanglement of formation h((1+sqrt(1-c^2))/2) with h the binary entropy,
/// continuously extended so h(0)=h(1)=0. Requires c in [0,1].
double entanglement_of_formation(double concurrence_value);

} // namespace tc
