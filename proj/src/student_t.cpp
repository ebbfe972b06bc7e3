// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#include "tension/student_t.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tension/error.hpp"

namespace tension::stats {
namespace {

constexpr int kMaxIterations = 10000;
constexpr double kTiny = 1e-300;
constexpr double kEpsilon = 1e-15;

double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEpsilon) return h;
  }
  throw Error(ErrorKind::kContract, "incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw Error(ErrorKind::kContract, "incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::kContract, "incomplete beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  return regularized_incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

double student_t_cdf(double t, double df) {
  const double tail = 0.5 * student_t_two_sided_p(t, df);
  return t >= 0.0 ? 1.0 - tail : tail;
}

TTestResult paired_t_test(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::kContract, "paired samples differ in length (" +
                                          std::to_string(x.size()) + " vs " +
                                          std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) throw Error(ErrorKind::kContract, "paired t-test needs at least two pairs");

  const auto n = static_cast<double>(x.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] - y[i];
  const double mean = sum / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dev = (x[i] - y[i]) - mean;
    ss += dev * dev;
  }

  TTestResult r;
  r.df = static_cast<int>(x.size()) - 1;
  if (ss == 0.0) {
    if (mean == 0.0) return {0.0, r.df, 1.0};
    return {std::copysign(std::numeric_limits<double>::infinity(), mean), r.df, 0.0};
  }
  const double sd = std::sqrt(ss / (n - 1.0));
  r.t = mean / (sd / std::sqrt(n));
  r.p_two_sided = student_t_two_sided_p(r.t, r.df);
  return r;
}

}  // namespace tension::stats
