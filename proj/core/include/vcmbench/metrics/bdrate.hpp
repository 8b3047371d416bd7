#pragma once

#include <string>
#include <vector>

namespace vcmbench {

struct RatePoint {
  std::string label;
  int qp = 0;
  double rate = 0.0;      // bpp or kbps
  double accuracy = 0.0;  // mAP in [0, 1], or MOTA
};

struct RateAccuracyCurve {
  std::string label;
  std::vector<RatePoint> points;  // descending qp
};

inline constexpr int kBdMinPoints = 4;
inline constexpr int kBdTrapezoidIntervals = 1000;

// Monotone piecewise cubic Hermite interpolant through strictly increasing
// knots. Slopes are the weighted harmonic mean of neighbouring secants
// (zero at sign changes) with the three-point end condition, as in SciPy's
// PchipInterpolator.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double t) const;
  double lower() const { return x_.front(); }
  double upper() const { return x_.back(); }
  const std::vector<double>& slopes() const { return d_; }

 private:
  std::vector<double> x_, y_, d_;
};

// Composite trapezoid over [a, b] with `intervals` equal steps.
double trapezoid(const MonotoneCubic& f, double a, double b, int intervals);

struct BdRateResult {
  double percent = 0.0;
  double low = 0.0;   // common accuracy interval
  double high = 0.0;
};

// Average rate difference of `test` against `anchor` at equal accuracy, in
// percent. log10(rate) is interpolated over accuracy and both interpolants
// are integrated over the common accuracy interval.
// Errors: fewer than 4 points or a non-positive/non-finite rate
// (kValidation); repeated accuracies (kMonotonicity); no common interval
// (kOverlap).
BdRateResult bd_rate(const RateAccuracyCurve& anchor, const RateAccuracyCurve& test,
                     int intervals = kBdTrapezoidIntervals);

}  // namespace vcmbench
