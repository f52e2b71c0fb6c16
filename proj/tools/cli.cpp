#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "entb/entb.hpp"

namespace entb::cli {

namespace {

std::string num(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string sci(double v) { return format_magnitude(v); }

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SourceFlags {
  std::string state_path;
  std::string family;
};

struct LoadedState {
  DensityMatrix rho;
  std::string label;
  std::optional<FamilySpec> family;
};

LoadedState load_state(const SourceFlags& src) {
  if (src.state_path.empty() == src.family.empty())
    throw UsageError("exactly one of --state or --family is required");
  if (!src.family.empty()) {
    FamilySpec spec = parse_family_spec(src.family);
    return {make_family(spec), "family " + src.family, spec};
  }
  const StateFile sf = read_state_file(src.state_path);
  return {validate_density(sf.matrix, sf.dims), "file " + src.state_path, std::nullopt};
}

void add_optimizer_flags(CLI::App* cmd, OptimizerConfig& cfg, bool with_steps) {
  cmd->add_option("--seed", cfg.seed, "optimizer seed")->capture_default_str();
  cmd->add_option("--restarts", cfg.restarts, "optimizer restarts")->capture_default_str();
  if (with_steps) cmd->add_option("--steps", cfg.steps_per_restart, "steps per restart")->capture_default_str();
  cmd->add_option("--initial-step", cfg.initial_step, "initial rotation angle")->capture_default_str();
  cmd->add_option("--decay", cfg.decay, "step decay on rejection streaks")->capture_default_str();
}

// --loo {standard|lemma1|lemma1-psi|isotropic|optimize|file=<path>}
BoundOptions resolve_loo(const std::string& loo, const OptimizerConfig& cfg, const std::optional<FamilySpec>& family) {
  BoundOptions opts;
  opts.optimizer = cfg;
  if (loo == "standard") {
    opts.strategy = LooStrategy::Standard;
  } else if (loo == "lemma1") {
    opts.strategy = LooStrategy::Lemma1;
  } else if (loo == "isotropic") {
    opts.strategy = LooStrategy::Isotropic;
  } else if (loo == "optimize") {
    opts.strategy = LooStrategy::Optimize;
  } else if (loo == "lemma1-psi") {
    if (!family) throw UsageError("--loo lemma1-psi needs --family");
    auto psi = reference_pure_state(family->name, family->params);
    if (!psi) throw UsageError("family '" + family->name + "' has no reference pure state for lemma1-psi");
    opts.strategy = LooStrategy::Explicit;
    opts.pair = lemma1_pair(schmidt(*psi));
  } else if (loo.rfind("file=", 0) == 0) {
    opts.strategy = LooStrategy::Explicit;
    opts.pair = read_loo_pair_file(loo.substr(5));
  } else {
    throw UsageError("unknown --loo strategy '" + loo + "'");
  }
  return opts;
}

const char* verdict(bool detected) { return detected ? "entangled" : "not detected"; }

int cmd_info(const SourceFlags& src, const std::string& loo, const OptimizerConfig& cfg, std::ostream& out) {
  const LoadedState st = load_state(src);
  const DensityMatrix& rho = st.rho;
  const DensityDiagnostics diag = diagnose_density(rho.matrix(), rho.dims());
  const BoundOptions opts = resolve_loo(loo, cfg, st.family);
  const BoundReport rep = best_bound(rho, opts);

  out << "state: " << st.label << "\n";
  out << "dims: " << rep.dims.m << "x" << rep.dims.n << (rho.swapped() ? " (relabelled from input m > n)" : "") << "\n";
  out << "validation: ok (hermiticity " << sci(diag.hermiticity_error) << ", trace " << sci(diag.trace_error)
      << ", min eigenvalue " << num(diag.min_eigenvalue) << ")\n";
  out << "ppt_value: " << num(rep.ppt_value) << " [" << verdict(ppt_detects(rep.ppt_value)) << "]\n";
  out << "ccnr_value: " << num(rep.ccnr_value) << " [" << verdict(ccnr_detects(rep.ccnr_value)) << "]\n";
  out << "cm_norm: " << num(rep.cm_norm) << " K_MN: " << num(rep.cm_threshold) << " ["
      << verdict(rep.cm_norm > rep.cm_threshold + tol::detect) << "]\n";
  out << "loo: " << loo << "\n";
  out << "lurs_value: " << num(rep.lurs_value) << " threshold: " << num(rep.lurs_threshold) << " ["
      << verdict(rep.lurs_value < rep.lurs_threshold - tol::detect) << "]\n";
  out << "caf_bound: raw " << num(rep.caf_raw) << " clamped " << num(rep.caf) << "\n";
  out << "lurs_bound: raw " << num(rep.lurs_raw) << " clamped " << num(rep.lurs) << "\n";
  out << "cm_bound: raw " << num(rep.cm_raw) << " clamped " << num(rep.cm) << "\n";
  out << "best: " << num(rep.best) << "\n";
  for (const auto& note : rep.notes) out << "note: " << note << "\n";
  return kOk;
}

struct SweepFlags {
  std::string family;
  std::string param;
  double from = 0.0;
  double to = 1.0;
  int steps = 101;
  std::string out;
};

int cmd_sweep(const SweepFlags& f, const std::string& loo, const OptimizerConfig& cfg, std::ostream& out) {
  if (f.family.empty()) throw UsageError("--family is required");
  if (f.param.empty()) throw UsageError("--param is required");
  const FamilySpec spec = parse_family_spec(f.family);
  const BoundOptions opts = resolve_loo(loo, cfg, spec);
  const auto rows = sweep_family(spec.name, spec.params, f.param, f.from, f.to, f.steps, opts);
  const std::string csv = format_sweep_csv(rows);
  if (f.out.empty()) {
    out << csv;
  } else {
    std::ofstream file(f.out, std::ios::binary);
    if (!file) throw Error(ErrorKind::Io, "cannot write '" + f.out + "'");
    file << csv;
    out << "wrote " << rows.size() << " rows to " << f.out << "\n";
  }
  return kOk;
}

int cmd_optimize(const SourceFlags& src, const OptimizerConfig& cfg, const std::string& dump, std::ostream& out) {
  const LoadedState st = load_state(src);
  const OptimizationResult res = optimize_loos(st.rho, cfg);
  const int m = st.rho.dims().m;

  out << "state: " << st.label << "\n";
  out << "best seed: " << res.seed_name << " raw " << num(res.seed_bound) << "\n";
  for (const auto& r : res.restarts) {
    out << "restart " << r.index + 1 << ": start " << r.start << " " << num(r.start_bound) << " -> best "
        << num(r.best_bound) << " (" << r.accepted << " accepted)\n";
  }
  out << "global best: raw " << num(res.bound) << " clamped " << num(clamp_concurrence(res.bound, m)) << "\n";
  if (!dump.empty()) {
    write_loo_pair_file(dump, res.pair);
    out << "wrote LOO pair to " << dump << "\n";
  }
  return kOk;
}

int cmd_validate(const std::string& path, std::ostream& out) {
  if (path.empty()) throw UsageError("a state file is required");
  const StateFile sf = read_state_file(path);
  const DensityDiagnostics d = diagnose_density(sf.matrix, sf.dims);
  auto line = [&](const char* name, ErrorKind kind, const std::string& detail) {
    bool failed = false;
    double mag = 0.0;
    for (const auto& v : d.violations)
      if (v.kind == kind) {
        failed = true;
        mag = v.magnitude;
      }
    out << name << ": " << (failed ? "FAIL " + std::string(to_string(kind)) + " " + sci(mag) : "pass " + detail)
        << "\n";
  };
  const bool dims_ok = sf.dims.m >= 2 && sf.dims.n >= 2;
  out << "dims: " << sf.dims.m << "x" << sf.dims.n << (dims_ok ? "" : " FAIL (each must be >= 2)") << "\n";
  line("size", ErrorKind::DimensionMismatch, "");
  line("hermitian", ErrorKind::NotHermitian, "(" + sci(d.hermiticity_error) + ")");
  line("trace", ErrorKind::TraceNotOne, "(" + sci(d.trace_error) + ")");
  line("psd", ErrorKind::NotPSD, "(min eigenvalue " + num(d.min_eigenvalue) + ")");
  const bool valid = dims_ok && d.ok();
  out << "valid: " << (valid ? "yes" : "no") << "\n";
  return valid ? kOk : kInvalid;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Concurrence lower bounds from separability criteria", "entb"};
  app.require_subcommand(1);

  SourceFlags src;
  std::string loo = "lemma1";
  OptimizerConfig cfg;
  SweepFlags sweep;
  std::string dump;
  std::string validate_path;

  auto* info = app.add_subcommand("info", "criteria values and concurrence bounds for one state");
  info->add_option("--state", src.state_path, "state file (JSON)");
  info->add_option("--family", src.family, "family spec, e.g. figure1:p=0.5");
  info->add_option("--loo", loo, "standard|lemma1|lemma1-psi|isotropic|optimize|file=<path>")->capture_default_str();
  add_optimizer_flags(info, cfg, true);

  auto* sw = app.add_subcommand("sweep", "sweep a family parameter and write CSV");
  sw->add_option("--family", sweep.family, "family spec")->required();
  sw->add_option("--param", sweep.param, "parameter to sweep")->required();
  sw->add_option("--from", sweep.from, "first grid value")->capture_default_str();
  sw->add_option("--to", sweep.to, "last grid value")->capture_default_str();
  sw->add_option("--steps", sweep.steps, "number of grid points")->capture_default_str();
  sw->add_option("--loo", loo, "LOO strategy")->capture_default_str();
  sw->add_option("--out", sweep.out, "CSV output path (stdout if omitted)");
  add_optimizer_flags(sw, cfg, false);

  auto* opt = app.add_subcommand("optimize", "search LOO pairs maximizing the LUR bound");
  opt->add_option("--state", src.state_path, "state file (JSON)");
  opt->add_option("--family", src.family, "family spec");
  opt->add_option("--out", dump, "write the winning LOO pair here");
  add_optimizer_flags(opt, cfg, true);

  auto* val = app.add_subcommand("validate", "check a state file against the density-matrix invariants");
  val->add_option("--state,state", validate_path, "state file (JSON)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*info) return cmd_info(src, loo, cfg, out);
    if (*sw) return cmd_sweep(sweep, loo, cfg, out);
    if (*opt) return cmd_optimize(src, cfg, dump, out);
    if (*val) return cmd_validate(validate_path, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_domain_error(e.kind()) ? kInvalid : kUsage;
  }
  return kUsage;
}

}  // namespace entb::cli
