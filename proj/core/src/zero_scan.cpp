#include "varjacobi/zero_scan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace varjacobi {

namespace {

double bisect(const std::function<double(double)>& eval, double lo, double hi,
              double w_lo, double tol) {
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    double mid = 0.5 * (lo + hi);
    double w = eval(mid);
    if (w == 0.0) return mid;
    if ((w < 0.0) == (w_lo < 0.0)) {
      lo = mid;
      w_lo = w;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// golden-section minimization of |eval|, returns (argmin, min value)
std::pair<double, double> golden_min(const std::function<double(double)>& eval,
                                     double lo, double hi, double tol) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = std::abs(eval(x1));
  double f2 = std::abs(eval(x2));
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = std::abs(eval(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = std::abs(eval(x2));
    }
  }
  double xm = 0.5 * (lo + hi);
  return {xm, std::abs(eval(xm))};
}

}  // namespace

std::vector<DetectedZero> scan_zeros(const std::vector<double>& ts,
                                     const std::vector<double>& ws, double lo,
                                     double hi, const ZeroScanOptions& opts,
                                     const std::function<double(double)>& eval) {
  if (ts.size() != ws.size())
    throw std::invalid_argument("sample arrays must have equal length");

  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] > lo && ts[i] <= hi) idx.push_back(i);
  }
  std::vector<DetectedZero> zeros;
  if (idx.size() < 2) return zeros;

  double max_w = 0.0;
  for (std::size_t i : idx) max_w = std::max(max_w, std::abs(ws[i]));
  if (max_w == 0.0) {
    // degenerate sample set; flag the front of the window as unresolved
    zeros.push_back({ts[idx.front()], false});
    return zeros;
  }
  const double small = opts.tangential_threshold * max_w;

  for (std::size_t m = 0; m + 1 < idx.size(); ++m) {
    std::size_t i = idx[m], j = idx[m + 1];
    if (ws[i] == 0.0) {
      // exact hit on a sample; classify by the neighbors' signs
      double before = (m > 0) ? ws[idx[m - 1]] : 0.0;
      bool change = before * ws[j] < 0.0;
      zeros.push_back({ts[i], change});
      continue;
    }
    if (ws[i] * ws[j] < 0.0) {
      double t0 = bisect(eval, ts[i], ts[j], ws[i], opts.refine_tol);
      zeros.push_back({t0, true});
    }
  }

  // interior dips of |w| that stay on one side: tangential candidates
  for (std::size_t m = 1; m + 1 < idx.size(); ++m) {
    std::size_t p = idx[m - 1], i = idx[m], j = idx[m + 1];
    if (ws[i] == 0.0) continue;  // already handled
    if (std::abs(ws[i]) <= std::abs(ws[p]) &&
        std::abs(ws[i]) <= std::abs(ws[j]) && std::abs(ws[i]) < small &&
        ws[p] * ws[j] > 0.0) {
      auto [t0, v0] = golden_min(eval, ts[p], ts[j], opts.refine_tol);
      if (v0 < small) zeros.push_back({t0, false});
    }
  }

  // right endpoint by value
  std::size_t last = idx.back();
  if (ws[last] != 0.0 && std::abs(ws[last]) < small) {
    bool near_existing = false;
    for (const auto& z : zeros) {
      if (std::abs(z.t - ts[last]) < 2.0 * opts.refine_tol) near_existing = true;
    }
    if (!near_existing) zeros.push_back({ts[last], false});
  }

  std::sort(zeros.begin(), zeros.end(),
            [](const DetectedZero& a, const DetectedZero& b) { return a.t < b.t; });
  std::vector<DetectedZero> dedup;
  const double merge = std::max(10.0 * opts.refine_tol, 1e-12);
  for (const auto& z : zeros) {
    if (!dedup.empty() && std::abs(z.t - dedup.back().t) < merge) {
      dedup.back().sign_change = dedup.back().sign_change || z.sign_change;
    } else {
      dedup.push_back(z);
    }
  }
  return dedup;
}

}  // namespace varjacobi
