#pragma once

namespace tc {

/// The four closed-form time functions of the single-photon two-qubit dynamics,
/// evaluated at one dimensionless time gt (coupling g = 1).
struct TimeKernels {
    double f1;   ///< (3 + 2 cos(gt sqrt(10))) / 5
    double f2;   ///< (cos(gt sqrt(6)) + 1) / 2
    double f3;   ///< (cos(gt sqrt(6)) - 1) / 2
    double g2;   ///< g(2, gt)
    double g6;   ///< g(6, gt)
    double g10;  ///< g(10, gt)
    double gt;
};

/// g(x, gt) = sin(gt sqrt(x)) / sqrt(x)
double g_kernel(double x, double gt);

TimeKernels time_kernels(double gt);

} // namespace tc
