#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entb/criteria.hpp"
#include "entb/loo.hpp"
#include "entb/qstate.hpp"

namespace entb {

// min(max(raw, 0), sqrt(2(m-1)/m))
double clamp_concurrence(double raw, int m);

// sqrt(2/(M(M-1))) (max(||T_A rho||, ||R rho||) - 1)
double caf_bound(const DensityMatrix& rho);
// The two halves of caf_bound, for per-criterion reporting.
double ppt_bound(const DensityMatrix& rho);
double ccnr_bound(const DensityMatrix& rho);

// (M + N - 2 - sum_i Var(A_i ⊗ I + I ⊗ B_i)) / sqrt(2M(M-1))
double lurs_bound(const DensityMatrix& rho, const LooPair& pair);

// sqrt(8/(M^3 N^2 (M-1))) (||T|| - K_MN)
double cm_bound(const DensityMatrix& rho);

// sum_{j<k} mu_j mu_k >= 2/(M(M-1)) (sum_{j<k} sqrt(mu_j mu_k))^2, M = mu.size().
bool schmidt_inequality_check(const std::vector<double>& mu);

struct OptimizerConfig {
  int restarts = 32;
  int steps_per_restart = 500;
  double initial_step = 0.3;
  double decay = 0.95;
  std::uint64_t seed = 42;
  // Worker threads; 0 means ENTB_THREADS or hardware concurrency.
  int threads = 0;
};

void validate(const OptimizerConfig& cfg);

struct RestartSummary {
  int index = 0;
  std::string start;  // name of the seed pair the restart began from
  double start_bound = 0.0;
  double best_bound = 0.0;
  int accepted = 0;
};

struct OptimizationResult {
  LooPair pair;
  double bound = 0.0;       // raw lurs_bound of `pair`
  double seed_bound = 0.0;  // best raw bound among the seed pairs
  std::string seed_name;    // which seed pair seed_bound came from
  std::vector<RestartSummary> restarts;
};

// Seed pairs the optimizer starts from, with names. Always contains the
// lemma1 pair of the dominant eigenvector and the standard pairs; adds the
// isotropic pair when m == n.
std::vector<std::pair<std::string, LooPair>> optimizer_seed_pairs(const DensityMatrix& rho);

// Stochastic hill climbing of lurs_bound over O(m^2) x O(n^2) acting on the
// seed pairs. Deterministic for a given (state, cfg.seed) independent of the
// number of threads; never returns less than the best seed pair.
OptimizationResult optimize_loos(const DensityMatrix& rho, const OptimizerConfig& cfg = {});

enum class LooStrategy {
  Standard,   // lemma1 sign pattern in the computational bases
  Lemma1,     // lemma1 pair of the dominant eigenvector
  Isotropic,  // isotropic_pair, m == n only
  Optimize,
  Explicit,
};

struct BoundOptions {
  LooStrategy strategy = LooStrategy::Lemma1;
  std::optional<LooPair> pair;  // for Explicit
  OptimizerConfig optimizer;
};

LooPair standard_pair(BipartiteDims dims);
LooPair dominant_lemma1_pair(const DensityMatrix& rho);
LooPair select_pair(const DensityMatrix& rho, const BoundOptions& options);

struct BoundReport {
  BipartiteDims dims;
  double ppt_value = 0.0;
  double ccnr_value = 0.0;
  double caf_raw = 0.0, caf = 0.0;
  double lurs_value = 0.0, lurs_threshold = 0.0;
  double lurs_raw = 0.0, lurs = 0.0;
  std::optional<LooPair> lurs_pair;
  double cm_norm = 0.0, cm_threshold = 0.0;
  double cm_raw = 0.0, cm = 0.0;
  double best = 0.0;
  std::vector<std::string> notes;
};

BoundReport best_bound(const DensityMatrix& rho, const BoundOptions& options = {});

// min over random ensembles {p_i, psi_i} realizing rho of sum p_i C(psi_i);
// an upper bound on the convex-roof concurrence. Trial 0 is the eigen-ensemble.
double upper_estimate(const DensityMatrix& rho, int trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Parameter sweeps over a family.

struct SweepRow {
  double param = 0.0;
  double ccnr_bound = 0.0;
  double ppt_bound = 0.0;
  double lurs_bound = 0.0;
  double cm_bound = 0.0;
  double best = 0.0;
};

std::vector<SweepRow> sweep_family(const std::string& family, const FamilyParams& base,
                                   const std::string& param, double from, double to, int steps,
                                   const BoundOptions& options);

// Header `param,ccnr_bound,ppt_bound,lurs_bound,cm_bound,best`, 9 significant
// digits, LF endings.
std::string format_sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace entb
