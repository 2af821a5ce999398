// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors
//
// Shared helpers for gradient checking against central finite differences.

#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace veriphrase::testutil {

/// Central finite difference of f at theta[idx].
inline double fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> theta, size_t idx, double h = 1e-5) {
  theta[idx] += h;
  const double up = f(theta);
  theta[idx] -= 2.0 * h;
  const double down = f(theta);
  return (up - down) / (2.0 * h);
}

/// Relative error with a small absolute floor in the denominator.
inline double rel_err(double analytic, double numeric) {
  const double denom = std::max({std::fabs(analytic), std::fabs(numeric), 1e-4});
  return std::fabs(analytic - numeric) / denom;
}

struct GradCheckReport {
  double max_rel_err = 0.0;
  size_t worst_index = 0;
  double analytic_at_worst = 0.0;
  double numeric_at_worst = 0.0;
};

/// Checks every parameter of `loss` against central differences.
/// `analytic` must hold d loss / d theta at the unperturbed point.
inline GradCheckReport gradcheck_all(
    const std::function<double(const std::vector<double>&)>& loss,
    const std::vector<double>& theta, const std::vector<double>& analytic,
    double h = 1e-5) {
  GradCheckReport report;
  for (size_t i = 0; i < theta.size(); ++i) {
    const double numeric = fd_gradient(loss, theta, i, h);
    const double err = rel_err(analytic[i], numeric);
    if (err > report.max_rel_err) {
      report.max_rel_err = err;
      report.worst_index = i;
      report.analytic_at_worst = analytic[i];
      report.numeric_at_worst = numeric;
    }
  }
  return report;
}

}  // namespace veriphrase::testutil
