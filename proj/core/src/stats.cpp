#include "reconlab/stats.hpp"

#include <boost/math/distributions/beta.hpp>

#include "reconlab/error.hpp"

namespace reconlab {

Interval clopper_pearson(std::uint64_t k, std::uint64_t n, double confidence) {
  if (n == 0) throw InputError("clopper_pearson: no trials");
  if (k > n) throw InputError("clopper_pearson: more successes than trials");
  if (!(confidence > 0 && confidence < 1)) throw InputError("clopper_pearson: confidence must lie in (0,1)");
  const double a = 1 - confidence;
  const auto kd = static_cast<double>(k);
  const auto nd = static_cast<double>(n);
  Interval r;
  r.lo = k == 0 ? 0.0 : boost::math::quantile(boost::math::beta_distribution<double>(kd, nd - kd + 1), a / 2);
  r.hi = k == n ? 1.0 : boost::math::quantile(boost::math::beta_distribution<double>(kd + 1, nd - kd), 1 - a / 2);
  return r;
}

}  // namespace reconlab
