// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors
//
// Three-valued veracity algebra. A claim or claim phrase is supported,
// refuted, or unverifiable; distributions over the three values are
// aggregated either with hard rules (refutation wins, support needs
// unanimity) or with their product t-norm softening.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace veriphrase {

enum class Veracity : uint8_t { Sup = 0, Ref = 1, Nei = 2 };

/// Stable wire names: "SUP" / "REF" / "NEI".
std::string to_string(Veracity v);
Veracity veracity_from_string(const std::string& s);

/// Probability simplex over {SUP, REF, NEI}.
struct Distribution3 {
  double sup = 0.0;
  double ref = 0.0;
  double nei = 0.0;

  double operator[](Veracity v) const {
    switch (v) {
      case Veracity::Sup: return sup;
      case Veracity::Ref: return ref;
      default: return nei;
    }
  }

  Veracity argmax() const {
    if (ref > sup && ref >= nei) return Veracity::Ref;
    if (nei > sup && nei > ref) return Veracity::Nei;
    return Veracity::Sup;
  }

  static Distribution3 one_hot(Veracity v) {
    Distribution3 d;
    (v == Veracity::Sup ? d.sup : v == Veracity::Ref ? d.ref : d.nei) = 1.0;
    return d;
  }

  static Distribution3 uniform() { return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}; }

  bool is_valid(double tol = 1e-9) const;
};

/// Hard aggregation of phrase verdicts into a claim verdict:
/// any REF refutes the claim; unanimous SUP supports it; otherwise NEI.
/// Throws ValidationError on an empty list.
Veracity hard_aggregate(std::span<const Veracity> labels);

/// Product t-norm softening of hard_aggregate:
///   sup = prod_i q_i(SUP)
///   ref = 1 - prod_i (1 - q_i(REF))
///   nei = 1 - sup - ref
/// The complement form keeps the output on the simplex; the result is
/// passed through normalize_guard. Throws ValidationError on empty input.
Distribution3 soft_aggregate(std::span<const Distribution3> dists);

/// Floating-point hygiene for aggregated triples: clamps components in
/// [-1e-9, 0) to zero and renormalizes to an exact simplex. Components
/// below -1e-9 or a sum off by more than 1e-6 raise NumericError.
Distribution3 normalize_guard(double sup, double ref, double nei);

}  // namespace veriphrase
