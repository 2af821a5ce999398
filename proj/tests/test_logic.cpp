// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include <doctest.h>

#include <array>
#include <vector>

#include "veriphrase/errors.hpp"
#include "veriphrase/rng.hpp"
#include "veriphrase/veracity.hpp"

using namespace veriphrase;

namespace {

Distribution3 random_simplex(Rng& rng) {
  const auto p = rng.simplex3();
  return {p[0], p[1], p[2]};
}

}  // namespace

TEST_SUITE("logic") {

TEST_CASE("veracity serialization is stable") {
  for (Veracity v : {Veracity::Sup, Veracity::Ref, Veracity::Nei}) {
    CHECK(veracity_from_string(to_string(v)) == v);
  }
  CHECK_THROWS_AS(veracity_from_string("MAYBE"), ValidationError);
}

TEST_CASE("hard aggregation") {
  using V = Veracity;
  CHECK(hard_aggregate(std::vector<V>{V::Sup, V::Sup, V::Sup}) == V::Sup);
  CHECK(hard_aggregate(std::vector<V>{V::Sup, V::Ref, V::Nei}) == V::Ref);
  CHECK(hard_aggregate(std::vector<V>{V::Sup, V::Nei}) == V::Nei);
  CHECK(hard_aggregate(std::vector<V>{V::Nei}) == V::Nei);
  CHECK_THROWS_AS(hard_aggregate(std::vector<V>{}), ValidationError);
}

TEST_CASE("soft aggregation hand-evaluated cases") {
  {
    const std::vector<Distribution3> in = {{1, 0, 0}, {1, 0, 0}};
    const Distribution3 out = soft_aggregate(in);
    CHECK(out.sup == doctest::Approx(1.0));
    CHECK(out.ref == doctest::Approx(0.0));
    CHECK(out.nei == doctest::Approx(0.0));
  }
  {
    const std::vector<Distribution3> in = {{0.5, 0.5, 0.0}, {1, 0, 0}};
    const Distribution3 out = soft_aggregate(in);
    CHECK(out.sup == doctest::Approx(0.5));
    CHECK(out.ref == doctest::Approx(0.5));
    CHECK(out.nei == doctest::Approx(0.0));
  }
  {
    const std::vector<Distribution3> in = {{0.6, 0.2, 0.2}, {0.9, 0.0, 0.1}};
    const Distribution3 out = soft_aggregate(in);
    CHECK(out.sup == doctest::Approx(0.54));
    CHECK(out.ref == doctest::Approx(0.20));
    CHECK(out.nei == doctest::Approx(0.26));
  }
  CHECK_THROWS_AS(soft_aggregate(std::vector<Distribution3>{}), ValidationError);
}

TEST_CASE("singleton identity") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const Distribution3 d = random_simplex(rng);
    const Distribution3 out = soft_aggregate(std::vector<Distribution3>{d});
    CHECK(out.sup == doctest::Approx(d.sup).epsilon(1e-12));
    CHECK(out.ref == doctest::Approx(d.ref).epsilon(1e-12));
    CHECK(out.nei == doctest::Approx(d.nei).epsilon(1e-12));
  }
  for (Veracity v : {Veracity::Sup, Veracity::Ref, Veracity::Nei}) {
    CHECK(hard_aggregate(std::vector<Veracity>{v}) == v);
  }
}

TEST_CASE("one-hot soft aggregation equals hard aggregation, exhaustive n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
      int c = code;
      std::vector<Veracity> labels(n);
      std::vector<Distribution3> dists(n);
      for (int i = 0; i < n; ++i) {
        labels[i] = static_cast<Veracity>(c % 3);
        dists[i] = Distribution3::one_hot(labels[i]);
        c /= 3;
      }
      const Veracity hard = hard_aggregate(labels);
      const Distribution3 soft = soft_aggregate(dists);
      // Products of exact zeros and ones stay exact.
      CHECK(soft.sup == (hard == Veracity::Sup ? 1.0 : 0.0));
      CHECK(soft.ref == (hard == Veracity::Ref ? 1.0 : 0.0));
      CHECK(soft.nei == (hard == Veracity::Nei ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("simplex closure, permutation invariance, monotonicity on random inputs") {
  Rng rng(42);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 8);
    std::vector<Distribution3> dists(n);
    for (int i = 0; i < n; ++i) dists[i] = random_simplex(rng);

    const Distribution3 out = soft_aggregate(dists);
    CHECK(out.is_valid(1e-9));

    std::vector<Distribution3> shuffled = dists;
    rng.shuffle(shuffled);
    const Distribution3 out2 = soft_aggregate(shuffled);
    CHECK(out2.sup == out.sup);
    CHECK(out2.ref == out.ref);
    CHECK(out2.nei == out.nei);

    // Moving NEI mass to REF on one input cannot decrease aggregate REF.
    std::vector<Distribution3> more_ref = dists;
    const size_t k = rng.next_u64() % n;
    const double delta = more_ref[k].nei * rng.uniform01();
    more_ref[k].ref += delta;
    more_ref[k].nei -= delta;
    CHECK(soft_aggregate(more_ref).ref >= out.ref - 1e-12);

    // Moving NEI mass to SUP on one input cannot decrease aggregate SUP.
    std::vector<Distribution3> more_sup = dists;
    const double delta2 = more_sup[k].nei * rng.uniform01();
    more_sup[k].sup += delta2;
    more_sup[k].nei -= delta2;
    CHECK(soft_aggregate(more_sup).sup >= out.sup - 1e-12);
  }
}

TEST_CASE("normalize_guard") {
  {
    const Distribution3 d = normalize_guard(0.5, 0.5, 0.0);
    CHECK(d.sup == 0.5);
    CHECK(d.ref == 0.5);
    CHECK(d.nei == 0.0);
  }
  {
    const Distribution3 d = normalize_guard(0.5, 0.5, -1e-12);
    CHECK(d.nei == 0.0);
    CHECK(d.sup + d.ref + d.nei == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(normalize_guard(0.2, 0.2, 0.2), NumericError);
  CHECK_THROWS_AS(normalize_guard(0.6, 0.6, -0.2), NumericError);
}

}  // TEST_SUITE
