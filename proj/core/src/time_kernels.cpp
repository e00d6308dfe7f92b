#include "tc/time_kernels.hpp"

#include <cmath>

namespace tc {

double g_kernel(double x, double gt) {
    const double r = std::sqrt(x);
    return std::sin(gt * r) / r;
}

TimeKernels time_kernels(double gt) {
    TimeKernels k{};
    k.gt = gt;
    k.f1 = (3.0 + 2.0 * std::cos(gt * std::sqrt(10.0))) / 5.0;
    const double c6 = std::cos(gt * std::sqrt(6.0));
    k.f2 = (c6 + 1.0) / 2.0;
    k.f3 = (c6 - 1.0) / 2.0;
    k.g2 = g_kernel(2.0, gt);
    k.g6 = g_kernel(6.0, gt);
    k.g10 = g_kernel(10.0, gt);
    return k;
}

} // namespace tc
