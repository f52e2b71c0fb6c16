#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "entb/entb.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace entb;

namespace {

using Dims = std::pair<int, int>;

BipartiteDims to_dims(Dims d) { return {d.first, d.second}; }
Dims from_dims(BipartiteDims d) { return {d.m, d.n}; }

FamilyParams to_params(const py::kwargs& kwargs) {
  FamilyParams params;
  for (const auto& [key, value] : kwargs) params[py::cast<std::string>(key)] = py::cast<double>(value);
  return params;
}

OptimizerConfig make_config(int restarts, int steps, double initial_step, double decay, std::uint64_t seed,
                            int threads) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.steps_per_restart = steps;
  cfg.initial_step = initial_step;
  cfg.decay = decay;
  cfg.seed = seed;
  cfg.threads = threads;
  return cfg;
}

// loo: a LooPair, or one of "standard", "lemma1", "isotropic", "optimize".
BoundOptions make_options(const py::object& loo, const OptimizerConfig& cfg) {
  BoundOptions opts;
  opts.optimizer = cfg;
  if (py::isinstance<LooPair>(loo)) {
    opts.strategy = LooStrategy::Explicit;
    opts.pair = py::cast<LooPair>(loo);
    return opts;
  }
  const auto name = py::cast<std::string>(loo);
  if (name == "standard") {
    opts.strategy = LooStrategy::Standard;
  } else if (name == "lemma1") {
    opts.strategy = LooStrategy::Lemma1;
  } else if (name == "isotropic") {
    opts.strategy = LooStrategy::Isotropic;
  } else if (name == "optimize") {
    opts.strategy = LooStrategy::Optimize;
  } else {
    throw py::value_error("unknown LOO strategy '" + name + "'");
  }
  return opts;
}

py::dict report_dict(const BoundReport& r) {
  py::dict d;
  d["dims"] = from_dims(r.dims);
  d["ppt_value"] = r.ppt_value;
  d["ccnr_value"] = r.ccnr_value;
  d["caf_raw"] = r.caf_raw;
  d["caf"] = r.caf;
  d["lurs_value"] = r.lurs_value;
  d["lurs_threshold"] = r.lurs_threshold;
  d["lurs_raw"] = r.lurs_raw;
  d["lurs"] = r.lurs;
  d["cm_norm"] = r.cm_norm;
  d["cm_threshold"] = r.cm_threshold;
  d["cm_raw"] = r.cm_raw;
  d["cm"] = r.cm;
  d["best"] = r.best;
  d["notes"] = r.notes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_entb, m) {
  m.doc() = "Concurrence lower bounds from separability criteria";

  // The module attribute keeps the type alive.
  static py::handle error_type;
  error_type = py::exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error_type)(e.what());
      inst.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error_type.ptr(), inst.ptr());
    }
  });

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def_property_readonly("dims", [](const DensityMatrix& r) { return from_dims(r.dims()); })
      .def_property_readonly("matrix", [](const DensityMatrix& r) { return r.matrix(); })
      .def_property_readonly("swapped", &DensityMatrix::swapped)
      .def("__repr__", [](const DensityMatrix& r) {
        return "<DensityMatrix " + std::to_string(r.dims().m) + "x" + std::to_string(r.dims().n) + ">";
      });

  m.def("validate_density", [](const ComplexMatrix& mat, Dims dims) { return validate_density(mat, to_dims(dims)); },
        "matrix"_a, "dims"_a);
  m.def("diagnose_density", [](const ComplexMatrix& mat, Dims dims) {
    const DensityDiagnostics d = diagnose_density(mat, to_dims(dims));
    py::list violations;
    for (const auto& v : d.violations) violations.append(py::make_tuple(std::string(to_string(v.kind)), v.magnitude));
    return py::dict("hermiticity_error"_a = d.hermiticity_error, "trace_error"_a = d.trace_error,
                    "min_eigenvalue"_a = d.min_eigenvalue, "violations"_a = violations);
  }, "matrix"_a, "dims"_a);
  m.def("family_names", &family_names);
  m.def("make_family", [](const std::string& name, const py::kwargs& kw) { return make_family(name, to_params(kw)); },
        "name"_a);
  m.def("mix", [](const std::vector<std::pair<double, DensityMatrix>>& parts) { return mix(parts); }, "components"_a);
  m.def("partial_trace_b", &partial_trace_b, "rho"_a);
  m.def("partial_trace_a", &partial_trace_a, "rho"_a);

  m.def("pure_concurrence", [](const ComplexVector& amps, Dims dims) {
    return pure_concurrence(make_pure_state(amps, to_dims(dims)));
  }, "amplitudes"_a, "dims"_a);
  m.def("schmidt_coefficients", [](const ComplexVector& amps, Dims dims) {
    return schmidt(make_pure_state(amps, to_dims(dims))).coefficients;
  }, "amplitudes"_a, "dims"_a);

  m.def("partial_transpose", [](const DensityMatrix& r) { return partial_transpose(r).mat; }, "rho"_a);
  m.def("realign", [](const DensityMatrix& r) { return realign(r).mat; }, "rho"_a);
  m.def("trace_norm", py::overload_cast<const ComplexMatrix&>(&trace_norm), "matrix"_a);
  m.def("ppt_value", &ppt_value, "rho"_a);
  m.def("ccnr_value", &ccnr_value, "rho"_a);

  py::class_<LooPair>(m, "LooPair")
      .def_property_readonly("dims", [](const LooPair& p) { return from_dims(p.dims()); })
      .def_property_readonly("set_a", [](const LooPair& p) { return p.set_a().observables; })
      .def_property_readonly("set_b", [](const LooPair& p) { return p.set_b().observables; })
      .def("__len__", &LooPair::size);

  m.def("make_loo_pair", [](std::vector<ComplexMatrix> a, std::vector<ComplexMatrix> b, Dims dims) {
    return LooPair(make_loo_set(std::move(a), dims.first), make_loo_set(std::move(b), dims.second));
  }, "set_a"_a, "set_b"_a, "dims"_a);
  m.def("standard_pair", [](Dims dims) { return standard_pair(to_dims(dims)); }, "dims"_a);
  m.def("lemma1_pair", [](const ComplexVector& amps, Dims dims) {
    return lemma1_pair(schmidt(make_pure_state(amps, to_dims(dims))));
  }, "amplitudes"_a, "dims"_a);
  m.def("isotropic_pair", &isotropic_pair, "m"_a, "n"_a);
  m.def("read_loo_pair", &read_loo_pair_file, "path"_a);
  m.def("write_loo_pair", &write_loo_pair_file, "path"_a, "pair"_a);

  m.def("lurs_value", [](const DensityMatrix& r, const LooPair& p) { return lurs_value(r, p).value; }, "rho"_a,
        "pair"_a);
  m.def("cm_value", [](const DensityMatrix& r) {
    const CriterionResult c = cm_value(r);
    return py::make_tuple(c.value, c.threshold);
  }, "rho"_a);

  m.def("caf_bound", &caf_bound, "rho"_a);
  m.def("ppt_bound", &ppt_bound, "rho"_a);
  m.def("ccnr_bound", &ccnr_bound, "rho"_a);
  m.def("lurs_bound", &lurs_bound, "rho"_a, "pair"_a);
  m.def("cm_bound", &cm_bound, "rho"_a);
  m.def("clamp_concurrence", &clamp_concurrence, "raw"_a, "m"_a);

  py::class_<OptimizationResult>(m, "OptimizationResult")
      .def_readonly("pair", &OptimizationResult::pair)
      .def_readonly("bound", &OptimizationResult::bound)
      .def_readonly("seed_bound", &OptimizationResult::seed_bound)
      .def_readonly("seed_name", &OptimizationResult::seed_name)
      .def_property_readonly("restarts", [](const OptimizationResult& r) {
        py::list out;
        for (const auto& s : r.restarts)
          out.append(py::dict("index"_a = s.index, "start"_a = s.start, "start_bound"_a = s.start_bound,
                              "best_bound"_a = s.best_bound, "accepted"_a = s.accepted));
        return out;
      });

  m.def("optimize_loos",
        [](const DensityMatrix& r, int restarts, int steps, double initial_step, double decay, std::uint64_t seed,
           int threads) {
          const OptimizerConfig cfg = make_config(restarts, steps, initial_step, decay, seed, threads);
          py::gil_scoped_release release;
          return optimize_loos(r, cfg);
        },
        "rho"_a, "restarts"_a = 32, "steps"_a = 500, "initial_step"_a = 0.3, "decay"_a = 0.95, "seed"_a = 42,
        "threads"_a = 0);

  m.def("best_bound",
        [](const DensityMatrix& r, const py::object& loo, int restarts, int steps, std::uint64_t seed) {
          const OptimizerConfig cfg = make_config(restarts, steps, 0.3, 0.95, seed, 0);
          return report_dict(best_bound(r, make_options(loo, cfg)));
        },
        "rho"_a, "loo"_a = "lemma1", "restarts"_a = 32, "steps"_a = 500, "seed"_a = 42);

  m.def("upper_estimate", &upper_estimate, "rho"_a, "trials"_a = 200, "seed"_a = 0);

  m.def("sweep",
        [](const std::string& family, const std::string& param, double start, double stop, int steps,
           const py::object& loo, const py::dict& base) {
          FamilyParams params;
          for (const auto& [k, v] : base) params[py::cast<std::string>(k)] = py::cast<double>(v);
          const auto rows = sweep_family(family, params, param, start, stop, steps, make_options(loo, {}));
          py::list out;
          for (const auto& row : rows)
            out.append(py::dict("param"_a = row.param, "ccnr_bound"_a = row.ccnr_bound, "ppt_bound"_a = row.ppt_bound,
                                "lurs_bound"_a = row.lurs_bound, "cm_bound"_a = row.cm_bound, "best"_a = row.best));
          return out;
        },
        "family"_a, "param"_a, "start"_a = 0.0, "stop"_a = 1.0, "steps"_a = 101, "loo"_a = "lemma1",
        "base"_a = py::dict());

  m.def("read_state", [](const std::filesystem::path& path) {
    const StateFile sf = read_state_file(path);
    return validate_density(sf.matrix, sf.dims);
  }, "path"_a);
  m.def("write_state", &write_state_file, "path"_a, "rho"_a);
}
