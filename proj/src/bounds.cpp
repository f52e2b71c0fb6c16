#include "entb/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <unsupported/Eigen/MatrixFunctions>

#include "entb/rearrange.hpp"

namespace entb {

namespace {

double caf_prefactor(int m) { return std::sqrt(2.0 / (m * (m - 1.0))); }
double lurs_denominator(int m) { return std::sqrt(2.0 * m * (m - 1.0)); }

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

double clamp_concurrence(double raw, int m) { return std::min(std::max(raw, 0.0), max_concurrence(m)); }

double ppt_bound(const DensityMatrix& rho) { return caf_prefactor(rho.dims().m) * (ppt_value(rho) - 1.0); }

double ccnr_bound(const DensityMatrix& rho) { return caf_prefactor(rho.dims().m) * (ccnr_value(rho) - 1.0); }

double caf_bound(const DensityMatrix& rho) {
  return caf_prefactor(rho.dims().m) * (std::max(ppt_value(rho), ccnr_value(rho)) - 1.0);
}

double lurs_bound(const DensityMatrix& rho, const LooPair& pair) {
  const CriterionResult res = lurs_value(rho, pair);
  return (res.threshold - res.value) / lurs_denominator(rho.dims().m);
}

double cm_bound(const DensityMatrix& rho) {
  const double m = rho.dims().m, n = rho.dims().n;
  const CriterionResult res = cm_value(rho);
  return std::sqrt(8.0 / (m * m * m * n * n * (m - 1.0))) * (res.value - res.threshold);
}

bool schmidt_inequality_check(const std::vector<double>& mu) {
  const std::size_t m = mu.size();
  if (m < 2) return true;
  double products = 0.0, roots = 0.0;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = j + 1; k < m; ++k) {
      products += mu[j] * mu[k];
      roots += std::sqrt(mu[j] * mu[k]);
    }
  const double rhs = 2.0 / (m * (m - 1.0)) * roots * roots;
  return products >= rhs - 1e-12;
}

// ---------------------------------------------------------------------------
// LOO optimizer.
//
// Every LOO set is standard_loos(d) rotated by some orthogonal matrix, so the
// search runs on the coordinate matrices (O_A, O_B) against correlations that
// are computed once in the standard basis:
//   C_jk = <g_j ⊗ g_k>,  a_j = <g_j ⊗ I>,  b_k = <I ⊗ g_k>.
// ---------------------------------------------------------------------------

namespace {

class LursObjective {
 public:
  explicit LursObjective(const DensityMatrix& rho) : dims_(rho.dims()) {
    const LooSet sa = standard_loos(dims_.m);
    const LooSet sb = standard_loos(dims_.n);
    corr_ = correlations(rho, sa.observables, sb.observables);
    const ComplexMatrix rho_a = partial_trace_b(rho);
    const ComplexMatrix rho_b = partial_trace_a(rho);
    mean_a_.resize(dims_.m * dims_.m);
    mean_b_.resize(dims_.n * dims_.n);
    for (int j = 0; j < mean_a_.size(); ++j) mean_a_(j) = (rho_a.array() * sa.observables[j].transpose().array()).sum().real();
    for (int k = 0; k < mean_b_.size(); ++k) mean_b_(k) = (rho_b.array() * sb.observables[k].transpose().array()).sum().real();
  }

  double bound(const RealMatrix& oa, const RealMatrix& ob) const {
    const Eigen::Index ma = oa.rows();
    const double joint = (oa * corr_ * ob.topRows(ma).transpose()).trace();
    RealVector means = ob * mean_b_;
    means.head(ma) += oa * mean_a_;
    const double value = dims_.m + dims_.n + 2.0 * joint - means.squaredNorm();
    return (dims_.m + dims_.n - 2.0 - value) / lurs_denominator(dims_.m);
  }

 private:
  BipartiteDims dims_;
  RealMatrix corr_;
  RealVector mean_a_, mean_b_;
};

RealMatrix random_rotation(int dim, double angle, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealMatrix k = RealMatrix::Zero(dim, dim);
  double norm2 = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      k(i, j) = normal(rng);
      k(j, i) = -k(i, j);
      norm2 += k(i, j) * k(i, j);
    }
  if (norm2 == 0.0) return RealMatrix::Identity(dim, dim);
  k *= angle / std::sqrt(norm2);
  return k.exp();
}

// Pulls accumulated round-off back onto O(d) without changing the component.
RealMatrix reorthonormalize(const RealMatrix& o) {
  Eigen::HouseholderQR<RealMatrix> qr(o);
  RealMatrix q = qr.householderQ();
  for (Eigen::Index j = 0; j < q.cols(); ++j)
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

struct SeedCoordinates {
  std::string name;
  RealMatrix oa, ob;
};

struct RestartOutcome {
  RestartSummary summary;
  RealMatrix oa, ob;
};

RestartOutcome run_restart(const LursObjective& objective, const std::vector<SeedCoordinates>& seeds,
                           const OptimizerConfig& cfg, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  Rng rng(seq);

  const auto& seed = seeds[static_cast<std::size_t>(index) % seeds.size()];
  RealMatrix oa = seed.oa, ob = seed.ob;
  const int da = static_cast<int>(oa.rows()), db = static_cast<int>(ob.rows());
  if (static_cast<std::size_t>(index) >= seeds.size()) {
    oa = random_rotation(da, cfg.initial_step, rng) * oa;
    ob = random_rotation(db, cfg.initial_step, rng) * ob;
  }

  constexpr int kPatience = 6;
  double current = objective.bound(oa, ob);
  RestartOutcome out{{index, seed.name, current, current, 0}, oa, ob};
  double step = cfg.initial_step;
  int streak = 0;
  for (int t = 0; t < cfg.steps_per_restart; ++t) {
    RealMatrix ca = random_rotation(da, step, rng) * oa;
    RealMatrix cb = random_rotation(db, step, rng) * ob;
    const double value = objective.bound(ca, cb);
    if (value > current) {
      oa = std::move(ca);
      ob = std::move(cb);
      current = value;
      ++out.summary.accepted;
      streak = 0;
    } else if (++streak >= kPatience) {
      step *= cfg.decay;
      streak = 0;
    }
  }
  out.oa = reorthonormalize(oa);
  out.ob = reorthonormalize(ob);
  out.summary.best_bound = objective.bound(out.oa, out.ob);
  return out;
}

int worker_count(const OptimizerConfig& cfg) {
  int threads = cfg.threads;
  if (threads <= 0) {
    if (const char* env = std::getenv("ENTB_THREADS")) threads = std::atoi(env);
  }
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return std::clamp(threads, 1, cfg.restarts);
}

}  // namespace

void validate(const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) throw Error(ErrorKind::BadParams, "restarts must be >= 1");
  if (cfg.steps_per_restart < 1) throw Error(ErrorKind::BadParams, "steps must be >= 1");
  if (!(cfg.decay > 0.0 && cfg.decay < 1.0)) throw Error(ErrorKind::BadParams, "decay must lie in (0, 1)");
  if (!(cfg.initial_step > 0.0) || !std::isfinite(cfg.initial_step))
    throw Error(ErrorKind::BadParams, "initial step must be positive");
}

LooPair standard_pair(BipartiteDims dims) {
  SchmidtDecomposition sd;
  sd.dims = dims;
  sd.coefficients.assign(dims.m, 1.0 / dims.m);
  sd.basis_a = ComplexMatrix::Identity(dims.m, dims.m);
  sd.basis_b = ComplexMatrix::Identity(dims.n, dims.m);
  return lemma1_pair(sd);
}

LooPair dominant_lemma1_pair(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
  const Eigen::Index top = es.eigenvalues().size() - 1;
  ComplexVector v = es.eigenvectors().col(top);
  v.normalize();
  return lemma1_pair(schmidt(make_pure_state(v, rho.dims())));
}

std::vector<std::pair<std::string, LooPair>> optimizer_seed_pairs(const DensityMatrix& rho) {
  const BipartiteDims dims = rho.dims();
  std::vector<std::pair<std::string, LooPair>> seeds;
  seeds.emplace_back("lemma1-dominant", dominant_lemma1_pair(rho));
  seeds.emplace_back("standard", standard_pair(dims));
  if (dims.m == dims.n) seeds.emplace_back("isotropic", isotropic_pair(dims.m, dims.n));

  const LooSet sa = standard_loos(dims.m);
  const LooSet sb = standard_loos(dims.n);
  LooSet neg_b = sb;
  for (auto& g : neg_b.observables) g = -g;
  seeds.emplace_back("standard-plain", LooPair(sa, sb));
  seeds.emplace_back("standard-negated", LooPair(sa, neg_b));
  return seeds;
}

OptimizationResult optimize_loos(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  validate(cfg);
  const BipartiteDims dims = rho.dims();
  const LursObjective objective(rho);

  const auto seed_pairs = optimizer_seed_pairs(rho);
  std::vector<SeedCoordinates> seeds;
  std::size_t best_seed = 0;
  double seed_bound = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < seed_pairs.size(); ++s) {
    const auto& [name, pair] = seed_pairs[s];
    seeds.push_back({name, loo_coordinates(pair.set_a()), loo_coordinates(pair.set_b())});
    const double b = lurs_bound(rho, pair);
    if (b > seed_bound) {
      seed_bound = b;
      best_seed = s;
    }
  }

  std::vector<RestartOutcome> outcomes(cfg.restarts);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < cfg.restarts; r = next++) outcomes[r] = run_restart(objective, seeds, cfg, r);
  };
  const int threads = worker_count(cfg);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r)
    if (outcomes[r].summary.best_bound > outcomes[best].summary.best_bound) best = r;

  OptimizationResult result{seed_pairs[best_seed].second, seed_bound, seed_bound, seed_pairs[best_seed].first, {}};
  for (const auto& o : outcomes) result.restarts.push_back(o.summary);

  if (outcomes[best].summary.best_bound > seed_bound) {
    LooPair candidate(rotate(standard_loos(dims.m), outcomes[best].oa),
                      rotate(standard_loos(dims.n), outcomes[best].ob));
    const double b = lurs_bound(rho, candidate);
    if (b > seed_bound) {
      result.pair = std::move(candidate);
      result.bound = b;
    }
  }
  return result;
}

LooPair select_pair(const DensityMatrix& rho, const BoundOptions& options) {
  switch (options.strategy) {
    case LooStrategy::Standard: return standard_pair(rho.dims());
    case LooStrategy::Lemma1: return dominant_lemma1_pair(rho);
    case LooStrategy::Isotropic: return isotropic_pair(rho.dims().m, rho.dims().n);
    case LooStrategy::Optimize: return optimize_loos(rho, options.optimizer).pair;
    case LooStrategy::Explicit:
      if (!options.pair) throw Error(ErrorKind::BadParams, "explicit LOO strategy without a pair");
      if (options.pair->dims() != rho.dims())
        throw Error(ErrorKind::DimensionMismatch, "explicit LOO pair dims do not match the state");
      return *options.pair;
  }
  throw Error(ErrorKind::BadParams, "unknown LOO strategy");
}

BoundReport best_bound(const DensityMatrix& rho, const BoundOptions& options) {
  const BipartiteDims dims = rho.dims();
  BoundReport rep;
  rep.dims = dims;

  rep.ppt_value = ppt_value(rho);
  rep.ccnr_value = ccnr_value(rho);
  rep.caf_raw = caf_prefactor(dims.m) * (std::max(rep.ppt_value, rep.ccnr_value) - 1.0);
  rep.caf = clamp_concurrence(rep.caf_raw, dims.m);
  rep.notes.push_back(std::string("caf: driven by ") + (rep.ppt_value >= rep.ccnr_value ? "PPT" : "CCNR") +
                      " trace norm");

  LooPair pair = [&] {
    if (options.strategy != LooStrategy::Optimize) return select_pair(rho, options);
    OptimizationResult opt = optimize_loos(rho, options.optimizer);
    rep.notes.push_back("lurs: optimizer over " + std::to_string(opt.restarts.size()) + " restarts, best seed '" +
                        opt.seed_name + "' at " + fmt(opt.seed_bound));
    return opt.pair;
  }();
  const CriterionResult lur = lurs_value(rho, pair);
  rep.lurs_value = lur.value;
  rep.lurs_threshold = lur.threshold;
  rep.lurs_raw = (lur.threshold - lur.value) / lurs_denominator(dims.m);
  rep.lurs = clamp_concurrence(rep.lurs_raw, dims.m);
  rep.lurs_pair = std::move(pair);

  const CriterionResult cm = cm_value(rho);
  rep.cm_norm = cm.value;
  rep.cm_threshold = cm.threshold;
  rep.cm_raw = std::sqrt(8.0 / (std::pow(dims.m, 3) * dims.n * dims.n * (dims.m - 1.0))) * (cm.value - cm.threshold);
  rep.cm = clamp_concurrence(rep.cm_raw, dims.m);

  rep.best = std::max({rep.caf, rep.lurs, rep.cm});
  if (rho.swapped()) rep.notes.push_back("input had m > n; subsystems relabelled");
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

double unnormalized_concurrence(const ComplexVector& v, BipartiteDims dims, double weight) {
  ComplexMatrix a(dims.m, dims.n);
  for (int i = 0; i < dims.m; ++i)
    for (int k = 0; k < dims.n; ++k) a(i, k) = v(i * dims.n + k);
  a /= std::sqrt(weight);
  const double purity = (a * a.adjoint()).squaredNorm();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

}  // namespace

double upper_estimate(const DensityMatrix& rho, int trials, std::uint64_t seed) {
  const BipartiteDims dims = rho.dims();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
  std::vector<Eigen::Index> support;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    if (es.eigenvalues()(k) > 1e-12) support.push_back(k);

  const auto rank = static_cast<Eigen::Index>(support.size());
  ComplexMatrix w(dims.total(), rank);  // columns sqrt(lambda_k)|e_k>
  for (Eigen::Index c = 0; c < rank; ++c)
    w.col(c) = std::sqrt(es.eigenvalues()(support[c])) * es.eigenvectors().col(support[c]);

  auto average = [&](const ComplexMatrix& vectors) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < vectors.cols(); ++i) {
      const double p = vectors.col(i).squaredNorm();
      if (p > 1e-15) total += p * unnormalized_concurrence(vectors.col(i), dims, p);
    }
    return total;
  };

  double best = average(w);
  if (rank <= 1) return best;

  Rng rng(seed);
  std::uniform_int_distribution<int> extra(0, 2);
  for (int t = 0; t < trials; ++t) {
    const int length = static_cast<int>(rank) + extra(rng);
    const ComplexMatrix u = random_unitary(length, rng);
    // |psi~_i> = sum_k U_ik sqrt(lambda_k)|e_k>
    best = std::min(best, average(w * u.leftCols(rank).transpose()));
  }
  return best;
}

// ---------------------------------------------------------------------------

std::vector<SweepRow> sweep_family(const std::string& family, const FamilyParams& base, const std::string& param,
                                   double from, double to, int steps, const BoundOptions& options) {
  const auto names = family_parameter_names(family);
  if (std::find(names.begin(), names.end(), param) == names.end())
    throw Error(ErrorKind::UnknownParam, "family '" + family + "' has no parameter '" + param + "'");
  if (steps < 2 || !std::isfinite(from) || !std::isfinite(to) || from == to)
    throw Error(ErrorKind::BadRange, "need steps >= 2 and distinct finite endpoints");

  std::vector<SweepRow> rows;
  rows.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    const double x = i == steps - 1 ? to : from + (to - from) * i / (steps - 1.0);
    FamilyParams params = base;
    params[param] = x;
    const DensityMatrix rho = make_family(family, params);
    const int m = rho.dims().m;

    SweepRow row;
    row.param = x;
    row.ccnr_bound = clamp_concurrence(ccnr_bound(rho), m);
    row.ppt_bound = clamp_concurrence(ppt_bound(rho), m);
    row.lurs_bound = clamp_concurrence(lurs_bound(rho, select_pair(rho, options)), m);
    row.cm_bound = clamp_concurrence(cm_bound(rho), m);
    row.best = std::max({row.ccnr_bound, row.ppt_bound, row.lurs_bound, row.cm_bound});
    rows.push_back(row);
  }
  return rows;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  auto num = [](double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::string(buf);
  };
  std::string out = "param,ccnr_bound,ppt_bound,lurs_bound,cm_bound,best\n";
  for (const auto& r : rows) {
    out += num(r.param) + ',' + num(r.ccnr_bound) + ',' + num(r.ppt_bound) + ',' + num(r.lurs_bound) + ',' +
           num(r.cm_bound) + ',' + num(r.best) + '\n';
  }
  return out;
}

}  // namespace entb
