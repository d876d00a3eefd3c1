#include "jitlab/stats/distributions.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "jitlab/core/error.hpp"

namespace jitlab::stats {

double chi2_upper_tail(double x, double df) {
  if (!(df > 0.0)) throw DataError("chi-square degrees of freedom must be positive");
  if (std::isnan(x)) throw DataError("chi-square statistic is NaN");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(df / 2.0, x / 2.0);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace jitlab::stats
