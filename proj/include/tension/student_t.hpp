// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TENSION_STUDENT_T_HPP
#define TENSION_STUDENT_T_HPP

#include <span>

namespace tension::stats {

/// I_x(a, b) by the Lentz continued fraction, using the symmetry
/// I_x(a, b) = 1 - I_{1-x}(b, a) where the fraction converges slowly.
double regularized_incomplete_beta(double a, double b, double x);

/// P(T <= t) for Student's t with `df` degrees of freedom.
double student_t_cdf(double t, double df);

/// P(|T| >= |t|).
double student_t_two_sided_p(double t, double df);

struct TTestResult {
  double t = 0.0;
  int df = 0;
  double p_two_sided = 1.0;
};

/// Paired t-test on x - y. When the differences have zero variance, p is 1
/// if their mean is 0 and 0 otherwise (t is then 0 or +-infinity).
/// Throws Error(kContract) on a length mismatch or fewer than two pairs.
TTestResult paired_t_test(std::span<const double> x, std::span<const double> y);

}  // namespace tension::stats

#endif  // TENSION_STUDENT_T_HPP
