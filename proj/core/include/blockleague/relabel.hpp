#pragma once

#include <cstdint>
#include <vector>

#include "blockleague/sampler.hpp"

namespace blockleague {

// Bijection on {1..K}: label a maps to mapping[a-1].
struct Permutation {
  std::vector<int> mapping;

  int size() const { return static_cast<int>(mapping.size()); }
  int apply(int label) const { return mapping[label - 1]; }
  Permutation inverse() const;
  static Permutation identity(int k);
  // Throws InvalidState unless mapping is a bijection on {1..K}.
  void validate() const;
};

// Applies a permutation to every entry of z in place.
void permute_labels(std::vector<int>& z, const Permutation& sigma);

// Number of positions where z and z_prime differ.  Throws InvalidInput on
// length mismatch.
int allocation_distance(const std::vector<int>& z,
                        const std::vector<int>& z_prime);

// Trace after label-switching correction.  samples[s] is a label
// permutation of the input trace's sample with the same index (original
// iteration order is preserved in the output).
struct RelabeledTrace {
  std::vector<TraceSample> samples;
  int n = 0;
};

// Online relabelling: processes samples ordered by ascending number of
// non-empty blocks (ties by original iteration order), assigns the first
// processed sample the identity permutation, and gives each later sample
// the permutation minimizing the summed allocation distance to all
// previously relabelled samples.  The argmin is solved as a linear
// assignment over running per-team label counts (Hungarian method, with an
// exhaustive K! search for K <= 4).  Output order matches input order.
RelabeledTrace relabel_trace(const Trace& trace);

// Direct quadratic-cost reference implementation (recomputes the summed
// distance against every processed sample).  Used by tests to validate the
// running-count formulation on short prefixes.
RelabeledTrace relabel_trace_reference(const Trace& trace);

// Solves max-total-weight assignment on a k x k matrix of int64 weights;
// returns sigma with sigma[a-1] = assigned column label for row a.
// Exhaustive for k <= 4; Hungarian O(k^3) above.
Permutation max_weight_assignment(
    const std::vector<std::vector<std::int64_t>>& weight);

// Exhaustive argmax over all k! permutations; test oracle for the solver.
Permutation max_weight_assignment_exhaustive(
    const std::vector<std::vector<std::int64_t>>& weight);

}  // namespace blockleague
