// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include "veriphrase/veracity.hpp"

#include <algorithm>
#include <cmath>

#include "veriphrase/errors.hpp"

namespace veriphrase {

std::string to_string(Veracity v) {
  switch (v) {
    case Veracity::Sup: return "SUP";
    case Veracity::Ref: return "REF";
    default: return "NEI";
  }
}

Veracity veracity_from_string(const std::string& s) {
  if (s == "SUP") return Veracity::Sup;
  if (s == "REF") return Veracity::Ref;
  if (s == "NEI") return Veracity::Nei;
  throw ValidationError("unknown veracity label: '" + s + "'");
}

bool Distribution3::is_valid(double tol) const {
  auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  return in_unit(sup) && in_unit(ref) && in_unit(nei) &&
         std::fabs(sup + ref + nei - 1.0) <= tol;
}

Veracity hard_aggregate(std::span<const Veracity> labels) {
  if (labels.empty()) throw ValidationError("hard_aggregate: empty label list");
  bool all_sup = true;
  for (Veracity v : labels) {
    if (v == Veracity::Ref) return Veracity::Ref;
    if (v != Veracity::Sup) all_sup = false;
  }
  return all_sup ? Veracity::Sup : Veracity::Nei;
}

namespace {

// Product over factors in a canonical (sorted) order so that reordering
// the inputs cannot change the rounding sequence.
double ordered_product(std::vector<double>& factors) {
  std::sort(factors.begin(), factors.end());
  double p = 1.0;
  for (double f : factors) p *= f;
  return p;
}

}  // namespace

Distribution3 soft_aggregate(std::span<const Distribution3> dists) {
  if (dists.empty()) throw ValidationError("soft_aggregate: empty distribution list");
  std::vector<double> sup_factors, not_ref_factors;
  sup_factors.reserve(dists.size());
  not_ref_factors.reserve(dists.size());
  for (const Distribution3& d : dists) {
    sup_factors.push_back(d.sup);
    not_ref_factors.push_back(1.0 - d.ref);
  }
  const double sup = ordered_product(sup_factors);
  const double ref = 1.0 - ordered_product(not_ref_factors);
  return normalize_guard(sup, ref, 1.0 - sup - ref);
}

Distribution3 normalize_guard(double sup, double ref, double nei) {
  constexpr double kClamp = 1e-9;
  constexpr double kSumTol = 1e-6;
  double c[3] = {sup, ref, nei};
  for (double& x : c) {
    if (x < -kClamp) {
      throw NumericError("normalize_guard: component " + std::to_string(x) +
                         " below -1e-9");
    }
    if (x < 0.0) x = 0.0;
  }
  const double sum = c[0] + c[1] + c[2];
  if (std::fabs(sum - 1.0) > kSumTol) {
    throw NumericError("normalize_guard: sum " + std::to_string(sum) +
                       " deviates from 1 by more than 1e-6");
  }
  return {c[0] / sum, c[1] / sum, c[2] / sum};
}

}  // namespace veriphrase
