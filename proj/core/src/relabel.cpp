#include "blockleague/relabel.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <numeric>

#include "blockleague/errors.hpp"

namespace blockleague {

Permutation Permutation::identity(int k) {
  Permutation p;
  p.mapping.resize(k);
  std::iota(p.mapping.begin(), p.mapping.end(), 1);
  return p;
}

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.mapping.assign(mapping.size(), 0);
  for (std::size_t a = 0; a < mapping.size(); ++a)
    inv.mapping[mapping[a] - 1] = static_cast<int>(a) + 1;
  return inv;
}

void Permutation::validate() const {
  const int k = size();
  std::vector<bool> seen(k, false);
  for (int v : mapping) {
    if (v < 1 || v > k || seen[v - 1])
      throw InvalidStateError("mapping is not a bijection on {1.." +
                              std::to_string(k) + "}");
    seen[v - 1] = true;
  }
}

void permute_labels(std::vector<int>& z, const Permutation& sigma) {
  for (int& label : z) label = sigma.apply(label);
}

int allocation_distance(const std::vector<int>& z,
                        const std::vector<int>& z_prime) {
  if (z.size() != z_prime.size())
    throw InvalidInputError("allocation vectors differ in length: " +
                            std::to_string(z.size()) + " vs " +
                            std::to_string(z_prime.size()));
  int d = 0;
  for (std::size_t i = 0; i < z.size(); ++i) d += (z[i] != z_prime[i]);
  return d;
}

Permutation max_weight_assignment_exhaustive(
    const std::vector<std::vector<std::int64_t>>& weight) {
  const int k = static_cast<int>(weight.size());
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<int> best = perm;
  std::int64_t best_value = std::numeric_limits<std::int64_t>::min();
  do {
    std::int64_t value = 0;
    for (int a = 0; a < k; ++a) value += weight[a][perm[a] - 1];
    if (value > best_value) {
      best_value = value;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  Permutation out;
  out.mapping = best;
  return out;
}

namespace {

// Hungarian method (shortest augmenting path with potentials) minimizing
// total cost; costs are negated weights, so the result maximizes weight.
Permutation hungarian_max(const std::vector<std::vector<std::int64_t>>& w) {
  const int k = static_cast<int>(w.size());
  const std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  // 1-based arrays; p[j] = row matched to column j.
  std::vector<std::int64_t> u(k + 1, 0), v(k + 1, 0);
  std::vector<int> p(k + 1, 0), way(k + 1, 0);
  for (int i = 1; i <= k; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<std::int64_t> minv(k + 1, kInf);
    std::vector<bool> used(k + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      std::int64_t delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = -w[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= k; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Permutation out;
  out.mapping.assign(k, 0);
  for (int j = 1; j <= k; ++j) out.mapping[p[j] - 1] = j;
  return out;
}

int non_empty_blocks(const TraceSample& s) {
  std::vector<bool> seen(s.k, false);
  int count = 0;
  for (int label : s.z) {
    if (!seen[label - 1]) {
      seen[label - 1] = true;
      ++count;
    }
  }
  return count;
}

// Processing order: ascending count of non-empty blocks, ties by original
// position.  The earliest processed sample anchors the labelling.
std::vector<std::size_t> processing_order(const Trace& trace) {
  std::vector<std::size_t> order(trace.samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return non_empty_blocks(trace.samples[a]) <
                            non_empty_blocks(trace.samples[b]);
                   });
  return order;
}

}  // namespace

Permutation max_weight_assignment(
    const std::vector<std::vector<std::int64_t>>& weight) {
  if (weight.empty()) throw InvalidInputError("empty weight matrix");
  for (const auto& row : weight)
    if (row.size() != weight.size())
      throw InvalidInputError("weight matrix must be square");
  if (weight.size() <= 4) return max_weight_assignment_exhaustive(weight);
  return hungarian_max(weight);
}

RelabeledTrace relabel_trace(const Trace& trace) {
  if (trace.samples.empty()) throw InvalidInputError("empty trace");
  const int n = trace.n;

  int k_global = 1;
  for (const auto& s : trace.samples) k_global = std::max(k_global, s.k);

  RelabeledTrace out;
  out.n = n;
  out.samples = trace.samples;

  // counts[i][b-1]: how often team i has carried relabelled label b so far.
  // Minimizing the summed distance to all processed samples is equivalent
  // to maximizing sum_i counts[i][sigma(z_i)], an assignment problem on the
  // per-block column sums of `counts`.
  std::vector<std::vector<std::int64_t>> counts(
      n, std::vector<std::int64_t>(k_global, 0));

  bool first = true;
  for (std::size_t idx : processing_order(trace)) {
    TraceSample& s = out.samples[idx];
    if (!first && s.k > 1) {
      std::vector<std::vector<std::int64_t>> weight(
          s.k, std::vector<std::int64_t>(s.k, 0));
      for (int i = 0; i < n; ++i) {
        const int a = s.z[i];
        for (int b = 1; b <= s.k; ++b) weight[a - 1][b - 1] += counts[i][b - 1];
      }
      Permutation sigma = max_weight_assignment(weight);
      // Prefer the identity whenever it ties the optimum: this keeps the
      // procedure idempotent (re-relabelling an aligned trace is a no-op)
      // independent of the solver's tie-breaking.
      std::int64_t best_value = 0, identity_value = 0;
      for (int a = 1; a <= s.k; ++a) {
        best_value += weight[a - 1][sigma.apply(a) - 1];
        identity_value += weight[a - 1][a - 1];
      }
      if (identity_value < best_value) permute_labels(s.z, sigma);
    }
    first = false;
    for (int i = 0; i < n; ++i) counts[i][s.z[i] - 1]++;
  }
  return out;
}

RelabeledTrace relabel_trace_reference(const Trace& trace) {
  if (trace.samples.empty()) throw InvalidInputError("empty trace");
  const int n = trace.n;

  RelabeledTrace out;
  out.n = n;
  out.samples = trace.samples;

  std::vector<const std::vector<int>*> processed;
  bool first = true;
  for (std::size_t idx : processing_order(trace)) {
    TraceSample& s = out.samples[idx];
    if (!first && s.k > 1) {
      // Try every permutation of {1..K}; keep the one minimizing the summed
      // distance to all previously relabelled samples.
      std::vector<int> perm(s.k);
      std::iota(perm.begin(), perm.end(), 1);
      std::vector<int> best_z = s.z;
      long long best_total = std::numeric_limits<long long>::max();
      do {
        Permutation sigma;
        sigma.mapping = perm;
        std::vector<int> candidate = s.z;
        permute_labels(candidate, sigma);
        long long total = 0;
        for (const auto* prev : processed)
          total += allocation_distance(candidate, *prev);
        if (total < best_total) {
          best_total = total;
          best_z = candidate;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      s.z = best_z;
    }
    first = false;
    processed.push_back(&s.z);
  }
  return out;
}

}  // namespace blockleague
