#pragma once

#include <functional>
#include <vector>

namespace varjacobi {

struct ZeroScanOptions {
  // Zeros are only reported strictly inside (lo, hi]; lo = a + delta is the
  // caller's exclusion window around the forced zero at the left endpoint.
  double refine_tol = 1e-9;
  // A local minimum of |w| below tangential_threshold * max|w| that does not
  // change sign is reported as a tangential (touch) zero candidate.
  double tangential_threshold = 1e-8;
};

struct DetectedZero {
  double t;
  bool sign_change;  // false: tangential candidate
};

// Scans the samples (ts[i], ws[i]) for zeros of a continuous function on
// (lo, hi]. Sign changes are refined by bisection on eval to refine_tol;
// tangential candidates by golden-section minimization of |eval|. The right
// endpoint is tested by value.
std::vector<DetectedZero> scan_zeros(const std::vector<double>& ts,
                                     const std::vector<double>& ws, double lo,
                                     double hi, const ZeroScanOptions& opts,
                                     const std::function<double(double)>& eval);

}  // namespace varjacobi
