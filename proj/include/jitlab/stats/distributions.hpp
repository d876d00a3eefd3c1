#pragma once

namespace jitlab::stats {

// P(X >= x) for X ~ chi-square(df). x <= 0 gives 1.
double chi2_upper_tail(double x, double df);

// Standard normal CDF.
double normal_cdf(double z);

}  // namespace jitlab::stats
