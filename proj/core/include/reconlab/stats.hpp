#pragma once

#include <cstdint>

namespace reconlab {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Exact binomial interval for k successes in n trials at the given
/// two-sided confidence. Throws InputError when k > n, n = 0 or the
/// confidence is outside (0,1).
Interval clopper_pearson(std::uint64_t k, std::uint64_t n, double confidence = 0.95);

}  // namespace reconlab
