#include "blockleague/relabel.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "blockleague/errors.hpp"
#include "blockleague/rng.hpp"
#include "doctest.h"
#include "expected/expected_values.hpp"
#include "helpers.hpp"

using namespace blockleague;

namespace {

Trace make_trace(int n, std::vector<TraceSample> samples) {
  Trace t;
  t.n = n;
  t.rng_seed = 0;
  t.rng_stream = 0;
  t.samples = std::move(samples);
  return t;
}

// Multiset of non-empty block sizes, sorted.
std::vector<int> size_multiset(const TraceSample& s) {
  std::vector<int> counts(s.k, 0);
  for (int zi : s.z) ++counts[zi - 1];
  std::sort(counts.begin(), counts.end());
  counts.erase(counts.begin(),
               std::find_if(counts.begin(), counts.end(),
                            [](int c) { return c > 0; }));
  return counts;
}

std::int64_t assignment_value(const std::vector<std::vector<std::int64_t>>& w,
                              const Permutation& sigma) {
  std::int64_t v = 0;
  for (int a = 1; a <= sigma.size(); ++a) v += w[a - 1][sigma.apply(a) - 1];
  return v;
}

Permutation random_permutation(int k, Rng& rng) {
  Permutation sigma = Permutation::identity(k);
  for (int i = k - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(i + 1)));
    std::swap(sigma.mapping[i], sigma.mapping[j]);
  }
  return sigma;
}

double mean_pairwise_distance(const std::vector<TraceSample>& samples) {
  double total = 0.0;
  int pairs = 0;
  for (std::size_t a = 0; a < samples.size(); ++a)
    for (std::size_t b = a + 1; b < samples.size(); ++b) {
      total += allocation_distance(samples[a].z, samples[b].z);
      ++pairs;
    }
  return pairs ? total / pairs : 0.0;
}

}  // namespace

TEST_CASE("permutation basics") {
  Permutation id = Permutation::identity(3);
  CHECK(id.apply(1) == 1);
  CHECK(id.apply(3) == 3);

  Permutation sigma{{2, 3, 1}};
  sigma.validate();
  Permutation inv = sigma.inverse();
  for (int a = 1; a <= 3; ++a) CHECK(inv.apply(sigma.apply(a)) == a);

  Permutation bad{{1, 1, 2}};
  CHECK_THROWS_AS(bad.validate(), InvalidStateError);

  std::vector<int> z{1, 1, 2, 3};
  permute_labels(z, sigma);
  CHECK(z == std::vector<int>{2, 2, 3, 1});
}

TEST_CASE("allocation distance") {
  CHECK(allocation_distance({1, 1, 2}, {1, 2, 2}) == 1);
  CHECK(allocation_distance({1, 2, 3}, {1, 2, 3}) == 0);
  CHECK(allocation_distance({1, 1}, {2, 2}) == 2);
  CHECK_THROWS_AS(allocation_distance({1}, {1, 2}), InvalidInputError);
}

TEST_CASE("assignment solver agrees with the exhaustive oracle") {
  Rng rng(404);
  for (int k = 1; k <= 8; ++k) {
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<std::vector<std::int64_t>> w(
          k, std::vector<std::int64_t>(k, 0));
      for (auto& row : w)
        for (auto& cell : row)
          cell = static_cast<std::int64_t>(rng.uniform_int(1001)) - 400;
      const Permutation fast = max_weight_assignment(w);
      const Permutation slow = max_weight_assignment_exhaustive(w);
      fast.validate();
      CHECK(assignment_value(w, fast) == assignment_value(w, slow));
      if (k <= 4) CHECK(fast.mapping == slow.mapping);
    }
  }
}

TEST_CASE("two mirrored samples collapse onto one labelling") {
  Trace t = make_trace(4, {TraceSample{1, 2, {1, 1, 2, 2}},
                           TraceSample{2, 2, {2, 2, 1, 1}}});
  RelabeledTrace out = relabel_trace(t);
  REQUIRE(out.samples.size() == 2);
  CHECK(out.samples[0].z == std::vector<int>{1, 1, 2, 2});
  CHECK(out.samples[1].z == std::vector<int>{1, 1, 2, 2});
  CHECK(out.samples[1].iteration == 2);
}

TEST_CASE("a K=1 trace passes through unchanged") {
  Trace t = make_trace(3, {TraceSample{1, 1, {1, 1, 1}},
                           TraceSample{2, 1, {1, 1, 1}}});
  RelabeledTrace out = relabel_trace(t);
  for (const auto& s : out.samples) CHECK(s.z == std::vector<int>{1, 1, 1});
}

TEST_CASE("samples with fewer occupied blocks anchor the labelling") {
  // The one-occupied-block sample is processed first even though it comes
  // later in iteration order, so the mirrored pair still aligns.
  Trace t = make_trace(4, {TraceSample{1, 2, {2, 2, 1, 1}},
                           TraceSample{2, 2, {1, 1, 2, 2}},
                           TraceSample{3, 2, {2, 2, 2, 2}}});
  RelabeledTrace out = relabel_trace(t);
  REQUIRE(out.samples.size() == 3);
  CHECK(out.samples[2].z == std::vector<int>{2, 2, 2, 2});
  CHECK(out.samples[0].z == out.samples[1].z);
  CHECK(out.samples[0].iteration == 1);
  CHECK(out.samples[1].iteration == 2);
  CHECK(out.samples[2].iteration == 3);
}

TEST_CASE("relabelling scrambled copies of one partition aligns them all") {
  // Every sample is a random relabelling of the same 3-block partition.
  const std::vector<int> base{1, 1, 2, 2, 3, 3, 1, 2};
  Rng rng(2024);
  std::vector<TraceSample> samples;
  for (int s = 0; s < 60; ++s) {
    Permutation sigma = random_permutation(3, rng);
    std::vector<int> z = base;
    permute_labels(z, sigma);
    samples.push_back(TraceSample{s + 1, 3, z});
  }
  Trace t = make_trace(8, samples);
  const double before = mean_pairwise_distance(t.samples);
  RelabeledTrace out = relabel_trace(t);
  const double after = mean_pairwise_distance(out.samples);
  CHECK(before > 0.0);
  CHECK(after == 0.0);  // perfect alignment: identical partitions
  for (const auto& s : out.samples) CHECK(s.z == out.samples[0].z);
}

TEST_CASE("relabelling reduces label ambiguity on a real chain") {
  ResultsMatrix r =
      testutil::matrix_from_codes(expected::kI3N, expected::kI3Cells);
  PriorConfig prior;
  prior.k_prior = KPrior::kTruncatedPoisson1;
  prior.k_max = 3;
  SamplerConfig cfg;
  cfg.iterations = 30000;
  cfg.burn_in = 5000;
  cfg.thinning = 25;
  cfg.rng_seed = 8;
  Trace t = run_sampler(r, prior, cfg);
  RelabeledTrace out = relabel_trace(t);
  REQUIRE(out.samples.size() == t.samples.size());
  CHECK(mean_pairwise_distance(out.samples) <=
        mean_pairwise_distance(t.samples) + 1e-12);

  SUBCASE("per-sample structure is preserved") {
    for (std::size_t i = 0; i < t.samples.size(); ++i) {
      CHECK(out.samples[i].iteration == t.samples[i].iteration);
      CHECK(out.samples[i].k == t.samples[i].k);
      CHECK(size_multiset(out.samples[i]) == size_multiset(t.samples[i]));
      // Same partition: teams sharing a block before share one after.
      const auto& a = t.samples[i].z;
      const auto& b = out.samples[i].z;
      for (std::size_t p = 0; p < a.size(); ++p)
        for (std::size_t q = p + 1; q < a.size(); ++q)
          CHECK((a[p] == a[q]) == (b[p] == b[q]));
    }
  }

  SUBCASE("the correction is idempotent") {
    Trace again = t;
    again.samples = out.samples;
    RelabeledTrace twice = relabel_trace(again);
    for (std::size_t i = 0; i < out.samples.size(); ++i)
      CHECK(twice.samples[i].z == out.samples[i].z);
  }

  SUBCASE("running-count formulation matches the direct reference") {
    Trace prefix = t;
    prefix.samples.assign(t.samples.begin(),
                          t.samples.begin() +
                              std::min<std::size_t>(t.samples.size(), 300));
    RelabeledTrace fast = relabel_trace(prefix);
    RelabeledTrace slow = relabel_trace_reference(prefix);
    REQUIRE(fast.samples.size() == slow.samples.size());
    for (std::size_t i = 0; i < fast.samples.size(); ++i)
      CHECK(fast.samples[i].z == slow.samples[i].z);
  }
}

TEST_CASE("running-count and reference agree on random small traces") {
  Rng rng(606);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 5;
    const int k = 2 + static_cast<int>(rng.uniform_int(3));  // 2..4
    std::vector<TraceSample> samples;
    for (int s = 0; s < 120; ++s) {
      std::vector<int> z;
      int kk = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(k)));
      for (int i = 0; i < n; ++i)
        z.push_back(1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(kk))));
      samples.push_back(TraceSample{s + 1, kk, z});
    }
    Trace t = make_trace(n, samples);
    RelabeledTrace fast = relabel_trace(t);
    RelabeledTrace slow = relabel_trace_reference(t);
    REQUIRE(fast.samples.size() == slow.samples.size());
    for (std::size_t i = 0; i < fast.samples.size(); ++i)
      CHECK(fast.samples[i].z == slow.samples[i].z);
  }
}

TEST_CASE("degenerate relabel inputs are rejected") {
  Trace t = make_trace(4, {});
  CHECK_THROWS_AS(relabel_trace(t), InvalidInputError);
  CHECK_THROWS_AS(max_weight_assignment({}), InvalidInputError);
  CHECK_THROWS_AS(max_weight_assignment({{1, 2}, {3, 4}, {5, 6}}),
                  InvalidInputError);
}
