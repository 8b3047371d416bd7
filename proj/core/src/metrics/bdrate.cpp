#include "vcmbench/metrics/bdrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vcmbench/error.hpp"

namespace vcmbench {

namespace {

int sign(double v) { return (v > 0.0) - (v < 0.0); }

double end_slope(double h0, double h1, double m0, double m1) {
  double d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
  if (sign(d) != sign(m0)) {
    d = 0.0;
  } else if (sign(m0) != sign(m1) && std::abs(d) > 3.0 * std::abs(m0)) {
    d = 3.0 * m0;
  }
  return d;
}

std::string describe(const RatePoint& p) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(qp %d, rate %.6g, accuracy %.6g)", p.qp, p.rate, p.accuracy);
  return buf;
}

MonotoneCubic interpolant(const RateAccuracyCurve& curve) {
  if (curve.points.size() < kBdMinPoints) {
    fail(ErrorKind::kValidation, "curve '" + curve.label + "' has " +
                                     std::to_string(curve.points.size()) +
                                     " points; BD-rate needs at least 4");
  }
  std::vector<RatePoint> pts = curve.points;
  for (const auto& p : pts) {
    if (!(p.rate > 0.0) || !std::isfinite(p.rate) || !std::isfinite(p.accuracy)) {
      fail(ErrorKind::kValidation,
           "curve '" + curve.label + "' has an invalid point " + describe(p));
    }
  }
  std::stable_sort(pts.begin(), pts.end(),
                   [](const RatePoint& a, const RatePoint& b) { return a.accuracy < b.accuracy; });
  std::vector<double> x, y;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0 && !(pts[i].accuracy > pts[i - 1].accuracy)) {
      fail(ErrorKind::kMonotonicity, "curve '" + curve.label + "' repeats accuracy at " +
                                         describe(pts[i - 1]) + " and " + describe(pts[i]));
    }
    x.push_back(pts[i].accuracy);
    y.push_back(std::log10(pts[i].rate));
  }
  return MonotoneCubic(std::move(x), std::move(y));
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) {
    fail(ErrorKind::kValidation, "interpolation needs at least two matching knots");
  }
  std::vector<double> h(n - 1), m(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x_[k + 1] - x_[k];
    if (!(h[k] > 0.0)) fail(ErrorKind::kMonotonicity, "knots must be strictly increasing");
    m[k] = (y_[k + 1] - y_[k]) / h[k];
  }
  d_.assign(n, 0.0);
  if (n == 2) {
    d_[0] = d_[1] = m[0];
    return;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (sign(m[k - 1]) * sign(m[k]) <= 0) continue;
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    d_[k] = (w1 + w2) / (w1 / m[k - 1] + w2 / m[k]);
  }
  d_[0] = end_slope(h[0], h[1], m[0], m[1]);
  d_[n - 1] = end_slope(h[n - 2], h[n - 3], m[n - 2], m[n - 3]);
}

double MonotoneCubic::operator()(double t) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t k = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  k = std::min(k, x_.size() - 2);
  const double h = x_[k + 1] - x_[k];
  const double s = (t - x_[k]) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y_[k] + (s3 - 2 * s2 + s) * h * d_[k] +
         (-2 * s3 + 3 * s2) * y_[k + 1] + (s3 - s2) * h * d_[k + 1];
}

double trapezoid(const MonotoneCubic& f, double a, double b, int intervals) {
  const double step = (b - a) / intervals;
  double sum = 0.5 * (f(a) + f(b));
  for (int i = 1; i < intervals; ++i) sum += f(a + step * i);
  return sum * step;
}

BdRateResult bd_rate(const RateAccuracyCurve& anchor, const RateAccuracyCurve& test,
                     int intervals) {
  const MonotoneCubic fa = interpolant(anchor);
  const MonotoneCubic ft = interpolant(test);
  BdRateResult r;
  r.low = std::max(fa.lower(), ft.lower());
  r.high = std::min(fa.upper(), ft.upper());
  if (!(r.high > r.low)) {
    fail(ErrorKind::kOverlap, "curves '" + anchor.label + "' and '" + test.label +
                                  "' share no accuracy interval");
  }
  const double ia = trapezoid(fa, r.low, r.high, intervals);
  const double it = trapezoid(ft, r.low, r.high, intervals);
  r.percent = (std::pow(10.0, (it - ia) / (r.high - r.low)) - 1.0) * 100.0;
  return r;
}

}  // namespace vcmbench
