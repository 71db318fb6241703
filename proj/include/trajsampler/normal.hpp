#pragma once

namespace trajsampler {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile for u in (0, 1). Acklam's rational approximation
/// followed by one Halley step against erfc, which brings the absolute error
/// to a few ulps over the usable range.
double inverse_normal_cdf(double u);

}  // namespace trajsampler
