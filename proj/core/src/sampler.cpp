#include "blockleague/sampler.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

#include "blockleague/errors.hpp"

namespace blockleague {

namespace {

// Probability of proposing an ejection at the current block count.
double eject_probability(int k, int k_max) {
  if (k == k_max) return 0.0;  // ejection impossible at the ceiling
  if (k == 1) return 1.0;      // absorption impossible with one block
  return 0.5;
}

}  // namespace

double log_mk_insert_alpha(int k, int n, const PriorConfig& prior) {
  double v = std::log(static_cast<double>(k)) -
             std::log(static_cast<double>(n + k));
  if (prior.k_prior == KPrior::kTruncatedPoisson1)
    v -= std::log(static_cast<double>(k + 1));
  return v;
}

double log_mk_delete_alpha(int k, int n, const PriorConfig& prior) {
  // Deleting from k inverts inserting from k-1; negating keeps the
  // reciprocity alpha_insert * alpha_delete = 1 exact in floating point.
  return -log_mk_insert_alpha(k - 1, n, prior);
}

namespace {

// Sum of the per-cell outcome terms over all cells whose row or column is
// k0 or k1 — exactly the cells a single-team move between k0 and k1 can
// change.  Default-hyperparameter fast path only; the general path takes
// full posterior differences instead.
double cross_cell_sum(const SufficientStats& stats, int k0, int k1) {
  const int k = stats.k();
  const double lg3 = log_gamma_int(3);
  double sum = 0.0;
  auto cell = [&](int a, int b) {
    const auto& c = stats.counts(a, b);
    const std::int64_t tot = c[0] + c[1] + c[2];
    if (tot == 0) return;
    sum += lg3 + log_gamma_int(c[0] + 1) + log_gamma_int(c[1] + 1) +
           log_gamma_int(c[2] + 1) - log_gamma_int(tot + 3);
  };
  for (int b = 1; b <= k; ++b) {
    cell(k0, b);
    cell(k1, b);
  }
  for (int a = 1; a <= k; ++a) {
    if (a == k0 || a == k1) continue;
    cell(a, k0);
    cell(a, k1);
  }
  return sum;
}

void swap_labels(std::vector<int>& z, int a, int b) {
  for (int& label : z) {
    if (label == a)
      label = b;
    else if (label == b)
      label = a;
  }
}

}  // namespace

void SamplerConfig::validate() const {
  if (iterations <= 0)
    throw InvalidConfigError("iterations must be positive");
  if (burn_in < 0 || burn_in >= iterations)
    throw InvalidConfigError("burn-in must lie in [0, iterations)");
  if (thinning < 1) throw InvalidConfigError("thinning must be >= 1");
  double sum = 0.0;
  for (double p : move_probabilities) {
    if (p < 0.0) throw InvalidConfigError("move probabilities must be >= 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw InvalidConfigError("move probabilities must sum to 1");
}

bool move_mk(BlockState& state, SufficientStats& stats,
             const PriorConfig& prior, Rng& rng) {
  const int k = state.k;
  const int n = state.n();
  const bool insert = rng.uniform01() < 0.5;
  if (insert) {
    if (k == prior.k_max) return false;
    double log_alpha;
    if (prior.default_hyperparameters()) {
      log_alpha = log_mk_insert_alpha(k, n, prior);
    } else {
      SufficientStats plus = stats;
      plus.add_empty_block();
      log_alpha = log_collapsed_posterior_general(plus, k + 1, prior, n) -
                  log_collapsed_posterior_general(stats, k, prior, n);
    }
    if (std::log(rng.uniform01()) < log_alpha) {
      stats.add_empty_block();
      state.k = k + 1;
      return true;
    }
    return false;
  }
  // Delete: only the highest-labelled block may be removed, and only when
  // empty; this mirrors insertion (which always appends label K+1), so the
  // pair is reversible.  Interior empty labels are reachable and removable
  // through the absorb/eject move instead.
  if (k == 1) return false;
  if (stats.size_of(k) != 0) return false;
  double log_alpha;
  if (prior.default_hyperparameters()) {
    log_alpha = log_mk_delete_alpha(k, n, prior);
  } else {
    SufficientStats minus = stats;
    minus.remove_last_block();
    log_alpha = log_collapsed_posterior_general(minus, k - 1, prior, n) -
                log_collapsed_posterior_general(stats, k, prior, n);
  }
  if (std::log(rng.uniform01()) < log_alpha) {
    stats.remove_last_block();
    state.k = k - 1;
    return true;
  }
  return false;
}

int move_gibbs_sweep(BlockState& state, SufficientStats& stats,
                     const ResultsMatrix& r, const PriorConfig& prior,
                     Rng& rng, MoveCounters* counters) {
  const int k = state.k;
  if (k == 1) return 0;  // no alternative label exists
  const int n = state.n();
  const bool fast = prior.default_hyperparameters();
  const double gamma0 = prior.gamma0;
  int accepted = 0;
  for (int i = 0; i < n; ++i) {
    if (counters) counters->gs_site_attempts++;
    const int k0 = state.z[i];
    int k1 = static_cast<int>(rng.uniform_int(k - 1)) + 1;
    if (k1 >= k0) ++k1;  // uniform over {1..k} \ {k0}

    const std::int64_t n0 = stats.size_of(k0);
    const std::int64_t n1 = stats.size_of(k1);
    double delta;
    if (fast) {
      // Unordered-partition weighting: a move that empties its source block
      // or fills an empty target changes the occupied-block count, and with
      // it the 1/occupied! state weight.
      int occ = 0;
      for (int a = 1; a <= k; ++a)
        if (stats.size_of(a) > 0) ++occ;
      const int occ_new = occ - (n0 == 1 ? 1 : 0) + (n1 == 0 ? 1 : 0);
      const double before = cross_cell_sum(stats, k0, k1);
      stats.move_team(r, state.z, i, k0, k1);
      const double after = cross_cell_sum(stats, k0, k1);
      delta = after - before +
              std::log(static_cast<double>(n1) + 1.0) -
              std::log(static_cast<double>(n0)) +
              log_gamma_int(occ + 1) - log_gamma_int(occ_new + 1);
    } else {
      const double before =
          log_collapsed_posterior_general(stats, k, prior, n);
      stats.move_team(r, state.z, i, k0, k1);
      const double after = log_collapsed_posterior_general(stats, k, prior, n);
      // The allocation-size ratio is part of the full difference already;
      // nothing further to add.  (At gamma0 = 1 the fast branch's size term
      // log((n1 + 1) / n0) is that same ratio pulled out of the Gammas.)
      delta = after - before;
      (void)gamma0;
    }

    if (std::log(rng.uniform01()) < delta) {
      state.z[i] = k1;
      ++accepted;
      if (counters) counters->gs_site_accepts++;
    } else {
      stats.move_team(r, state.z, i, k1, k0);  // z[i] still reads k0's games
    }
  }
  return accepted;
}

bool move_absorb_eject(BlockState& state, SufficientStats& stats,
                       const ResultsMatrix& r, const PriorConfig& prior,
                       Rng& rng) {
  const int k = state.k;
  const int k_max = prior.k_max;
  if (k_max == 1) return false;  // neither direction exists
  const int n = state.n();
  const double pe = eject_probability(k, k_max);

  if (rng.uniform01() < pe) {
    // Ejection: split block j1 by an integrated-out Bernoulli(p_E) draw.
    const int j1 = 1 + static_cast<int>(rng.uniform_int(k));
    const double p_split = rng.uniform01();
    std::vector<int> z_new = state.z;
    SufficientStats stats_new = stats;
    stats_new.add_empty_block();
    std::int64_t moved = 0, stayed = 0;
    for (int i = 0; i < n; ++i) {
      if (state.z[i] != j1) continue;
      if (rng.uniform01() < p_split) {
        stats_new.move_team(r, z_new, i, j1, k + 1);
        z_new[i] = k + 1;
        ++moved;
      } else {
        ++stayed;
      }
    }
    // Reverse move is an absorption at K+1; the proposal ratio carries the
    // inverse probability of this exact member split, (n1+n2+1)!/(n1!n2!),
    // from integrating p_E over [0,1].
    const double log_prop =
        std::log1p(-eject_probability(k + 1, k_max)) - std::log(pe) +
        log_gamma_int(stayed + moved + 2) - log_gamma_int(stayed + 1) -
        log_gamma_int(moved + 1);
    const double log_post_delta =
        log_collapsed_posterior(stats_new, k + 1, prior, n) -
        log_collapsed_posterior(stats, k, prior, n);
    if (std::log(rng.uniform01()) < log_prop + log_post_delta) {
      // Reversibility fix: the fresh block sits at label K+1; swap it with
      // a uniformly chosen label so every labelling is reachable.
      const int m = 1 + static_cast<int>(rng.uniform_int(k + 1));
      if (m != k + 1) {
        stats_new.swap_blocks(m, k + 1);
        swap_labels(z_new, m, k + 1);
      }
      state.z = std::move(z_new);
      state.k = k + 1;
      stats = std::move(stats_new);
      return true;
    }
    return false;
  }

  // Absorption: merge block j2 into block j1 (ordered distinct pair), then
  // move the top label K into the vacated slot so labels stay contiguous.
  // This exactly inverts "eject then swap", which is why the accepted state
  // needs no further relabelling.
  const int j1 = 1 + static_cast<int>(rng.uniform_int(k));
  int j2 = 1 + static_cast<int>(rng.uniform_int(k - 1));
  if (j2 >= j1) ++j2;
  const std::int64_t n1 = stats.size_of(j1);
  const std::int64_t n2 = stats.size_of(j2);

  SufficientStats stats_new = stats;
  stats_new.merge_block_into(j1, j2);
  std::vector<int> z_new = state.z;
  for (int& label : z_new)
    if (label == j2) label = j1;
  if (j2 != k) {
    stats_new.swap_blocks(j2, k);
    for (int& label : z_new)
      if (label == k) label = j2;
  }
  stats_new.remove_last_block();

  const double pe_back = eject_probability(k - 1, k_max);
  const double log_prop =
      std::log(pe_back) - std::log1p(-pe) -
      (log_gamma_int(n1 + n2 + 2) - log_gamma_int(n1 + 1) -
       log_gamma_int(n2 + 1));
  const double log_post_delta =
      log_collapsed_posterior(stats_new, k - 1, prior, n) -
      log_collapsed_posterior(stats, k, prior, n);
  if (std::log(rng.uniform01()) < log_prop + log_post_delta) {
    state.z = std::move(z_new);
    state.k = k - 1;
    stats = std::move(stats_new);
    return true;
  }
  return false;
}

void sampler_step(SamplerState& s, const ResultsMatrix& r,
                  const PriorConfig& prior, const SamplerConfig& cfg) {
  const auto& p = cfg.move_probabilities;
  // One move-type draw per iteration, no-op moves included.
  const double u = s.rng.uniform01();
  if (u < p[0]) {
    s.counters.mk_attempts++;
    if (move_mk(s.state, s.stats, prior, s.rng)) s.counters.mk_accepts++;
  } else if (u < p[0] + p[1]) {
    move_gibbs_sweep(s.state, s.stats, r, prior, s.rng, &s.counters);
  } else {
    s.counters.ae_attempts++;
    if (move_absorb_eject(s.state, s.stats, r, prior, s.rng))
      s.counters.ae_accepts++;
  }
}

Trace run_sampler(const ResultsMatrix& r, const PriorConfig& prior,
                  const SamplerConfig& cfg) {
  prior.validate();
  cfg.validate();
  const int n = r.team_count();

  SamplerState st{BlockState{std::vector<int>(n, 1), 1},
                  compute_stats(r, BlockState{std::vector<int>(n, 1), 1}),
                  Rng(cfg.rng_seed, cfg.rng_stream),
                  MoveCounters{}};

  Trace trace;
  trace.rng_seed = cfg.rng_seed;
  trace.rng_stream = cfg.rng_stream;
  trace.n = n;
  trace.samples.reserve(
      static_cast<std::size_t>((cfg.iterations - cfg.burn_in) / cfg.thinning));

  for (std::int64_t it = 1; it <= cfg.iterations; ++it) {
    sampler_step(st, r, prior, cfg);
    if (it > cfg.burn_in && (it - cfg.burn_in) % cfg.thinning == 0)
      trace.samples.push_back(TraceSample{it, st.state.k, st.state.z});
  }
  trace.counters = st.counters;
  return trace;
}

std::string write_trace(const Trace& trace, const std::string& manifest_hash) {
  std::ostringstream out;
  out << "# trace v1 seed=" << trace.rng_seed << " stream=" << trace.rng_stream
      << " n=" << trace.n << '\n';
  if (!manifest_hash.empty()) out << "# manifest_hash=" << manifest_hash << '\n';
  out << "iteration,k,z\n";
  for (const auto& s : trace.samples) {
    out << s.iteration << ',' << s.k << ',';
    for (std::size_t i = 0; i < s.z.size(); ++i) {
      if (i) out << ' ';
      out << s.z[i];
    }
    out << '\n';
  }
  return out.str();
}

Trace parse_trace(const std::string& text) {
  Trace trace;
  std::istringstream in(text);
  std::string line;
  bool header_done = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string tok;
      while (hs >> tok) {
        if (tok.rfind("seed=", 0) == 0)
          trace.rng_seed = std::stoull(tok.substr(5));
        else if (tok.rfind("stream=", 0) == 0)
          trace.rng_stream = std::stoull(tok.substr(7));
        else if (tok.rfind("n=", 0) == 0)
          trace.n = std::stoi(tok.substr(2));
      }
      continue;
    }
    if (!header_done) {  // the "iteration,k,z" column row
      header_done = true;
      if (line.rfind("iteration", 0) == 0) continue;
    }
    std::size_t c1 = line.find(',');
    std::size_t c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw ParseError("malformed trace row: " + line);
    TraceSample s;
    s.iteration = std::stoll(line.substr(0, c1));
    s.k = std::stoi(line.substr(c1 + 1, c2 - c1 - 1));
    std::istringstream zs(line.substr(c2 + 1));
    int label;
    while (zs >> label) s.z.push_back(label);
    if (trace.n == 0) trace.n = static_cast<int>(s.z.size());
    if (static_cast<int>(s.z.size()) != trace.n)
      throw ParseError("trace row with inconsistent team count: " + line);
    trace.samples.push_back(std::move(s));
  }
  if (trace.samples.empty()) throw InvalidInputError("empty trace");
  return trace;
}

}  // namespace blockleague
