#pragma once

// Deliberately wrong components. The verification battery must reject them;
// they exist so that its sensitivity can be demonstrated.

namespace northpole::fixtures {

/// U_2 kernel with the xi1^2 term dropped: (1 - xi1^2) xi2.
inline double u2_kernel_without_xi1_squared(double xi1, double xi2) {
  return (1.0 - xi1 * xi1) * xi2;
}

}  // namespace northpole::fixtures
