#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hierfix/config.hpp"
#include "hierfix/diagnostics.hpp"
#include "hierfix/harness.hpp"
#include "hierfix/random.hpp"
#include "hierfix/registry.hpp"

namespace py = pybind11;
using namespace hierfix;

namespace {

Vector to_vector(const std::vector<double>& v) { return Vector(v); }
std::vector<double> to_list(const Vector& v) { return v.values(); }

std::vector<Vector> to_vectors(const std::vector<std::vector<double>>& vs) {
  std::vector<Vector> out;
  for (const auto& v : vs) out.emplace_back(v);
  return out;
}

py::dict trace_columns(const IterationTrace& trace) {
  std::vector<std::size_t> n;
  std::vector<double> alpha, beta, a_n, step_norm, fp_residual;
  std::vector<std::optional<double>> vi, dist;
  for (const auto& r : trace.rows) {
    n.push_back(r.n);
    alpha.push_back(r.alpha);
    beta.push_back(r.beta);
    a_n.push_back(r.a_n);
    step_norm.push_back(r.step_norm);
    fp_residual.push_back(r.fp_residual);
    vi.push_back(r.vi_residual);
    dist.push_back(r.dist_oracle);
  }
  py::dict d;
  d["n"] = n;
  d["alpha"] = alpha;
  d["beta"] = beta;
  d["a_n"] = a_n;
  d["step_norm"] = step_norm;
  d["fp_residual"] = fp_residual;
  d["vi_residual"] = vi;
  d["dist_oracle"] = dist;
  return d;
}

py::dict report_dict(const ConstantsReport& r) {
  py::dict d;
  d["ok"] = r.ok();
  d["nu"] = r.nu;
  d["mu_upper"] = r.mu_upper;
  d["mu_ok"] = r.mu_ok;
  d["rho_gamma_ok"] = r.rho_gamma_ok;
  d["failures"] = r.failures;
  return d;
}

py::dict schedule_report_dict(const ScheduleReport& rep) {
  py::list items;
  for (const auto& v : rep.items) {
    py::dict item;
    item["condition"] = v.condition;
    item["clause"] = v.clause;
    item["verdict"] = to_string(v.verdict);
    item["analytic"] = v.analytic ? py::object(py::str(to_string(*v.analytic))) : py::object(py::none());
    item["note"] = v.note;
    items.append(item);
  }
  py::dict d;
  d["horizon"] = rep.horizon;
  d["overall"] = to_string(rep.overall());
  d["items"] = items;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "C++ core of the hierarchical fixed-point solver";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  py::register_exception<ProjectionError>(m, "ProjectionError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<OracleError>(m, "OracleError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());

  py::class_<ConvexSet>(m, "ConvexSet")
      .def_static("box", [](const std::vector<double>& lo, const std::vector<double>& hi) {
        return ConvexSet::box(to_vector(lo), to_vector(hi));
      })
      .def_static("ball", [](const std::vector<double>& c, double r) { return ConvexSet::ball(to_vector(c), r); })
      .def_static("halfspace", [](const std::vector<double>& a, double b) { return ConvexSet::halfspace(to_vector(a), b); })
      .def_static("hyperplane", [](const std::vector<double>& a, double b) { return ConvexSet::hyperplane(to_vector(a), b); })
      .def_static("affine", [](const std::vector<double>& offset, const std::vector<std::vector<double>>& basis) {
        return ConvexSet::affine(to_vector(offset), to_vectors(basis));
      })
      .def_static("point", [](const std::vector<double>& p) { return ConvexSet::point(to_vector(p)); })
      .def_static("simplex", &ConvexSet::simplex)
      .def_static("whole", &ConvexSet::whole)
      .def_static("intersection", &ConvexSet::intersection)
      .def_property_readonly("kind", &ConvexSet::kind)
      .def_property_readonly("dimension", &ConvexSet::dimension)
      .def("project", [](const ConvexSet& s, const std::vector<double>& x) { return to_list(s.project(to_vector(x))); })
      .def("contains", [](const ConvexSet& s, const std::vector<double>& x, double tol) {
        return s.contains(to_vector(x), tol);
      }, py::arg("x"), py::arg("tol") = 1e-9)
      .def("__repr__", [](const ConvexSet& s) { return "<ConvexSet " + s.kind() + " dim=" + std::to_string(s.dimension()) + ">"; });

  m.def("compute_nu", &compute_nu, py::arg("mu"), py::arg("eta"), py::arg("lip"));
  m.def("validate_constants", [](double mu, double rho, double gamma, double lip, double eta) {
    return report_dict(validate_constants(Constants::make(mu, rho, gamma, lip, eta)));
  }, py::arg("mu"), py::arg("rho"), py::arg("gamma"), py::arg("lip"), py::arg("eta"));

  m.def("validate_schedule",
        [](double s, double t, const std::function<double(std::size_t)>& a_seq,
           const std::function<double(std::size_t)>& deviation, std::size_t horizon) {
          return schedule_report_dict(validate_schedule(power_schedule_unchecked(s, t), a_seq, deviation, horizon));
        },
        py::arg("s"), py::arg("t"), py::arg("a_seq"), py::arg("deviation"), py::arg("horizon") = 10000,
        "Check the parameter conditions for alpha_n = n^-s, beta_n = n^-t.");

  m.def("xu_recurrence", &xu_recurrence, py::arg("x1"), py::arg("alpha"), py::arg("beta"), py::arg("steps"));

  m.def("registry", [] {
    std::vector<std::string> names;
    for (const auto& e : problem_registry()) names.push_back(e.problem.name);
    return names;
  });

  py::class_<ExperimentSpec>(m, "Experiment")
      .def(py::init([](const std::string& config) { return parse_config(config); }), py::arg("config"),
           "Build from a JSON config document.")
      .def_static("from_registry", &default_experiment, py::arg("name"))
      .def_property_readonly("name", [](const ExperimentSpec& s) { return s.problem.name; })
      .def_property_readonly("dimension", [](const ExperimentSpec& s) { return s.problem.set.dimension(); })
      .def_readwrite("seed", &ExperimentSpec::seed)
      .def_readwrite("certify", &ExperimentSpec::certify)
      .def_property("max_steps", [](const ExperimentSpec& s) { return s.stop.max_steps; },
                    [](ExperimentSpec& s, std::size_t v) { s.stop.max_steps = v; })
      .def_property("variant", [](const ExperimentSpec& s) { return to_string(s.variant); },
                    [](ExperimentSpec& s, const std::string& v) { s.variant = parse_variant(v); })
      .def("to_json", &emit_config)
      .def("solve", [](const ExperimentSpec& spec) {
        SolveOutcome o;
        {
          py::gil_scoped_release release;
          o = solve_experiment(spec);
        }
        py::dict d;
        d["x"] = to_list(o.result.x);
        d["steps"] = o.result.steps;
        d["converged"] = o.result.converged;
        d["trace"] = trace_columns(o.result.trace);
        d["oracle"] = o.oracle ? py::object(py::cast(to_list(o.oracle->solution))) : py::object(py::none());
        return d;
      })
      .def("oracle", [](const ExperimentSpec& spec) {
        const auto a = assemble(spec.problem, spec.constants);
        const auto r = oracle_solve(a.problem);
        py::dict d;
        d["solution"] = to_list(r.solution);
        d["iterations"] = r.iterations;
        d["final_change"] = r.final_residual;
        return d;
      })
      .def("vi_residual", [](const ExperimentSpec& spec, const std::vector<double>& x, std::size_t samples) {
        const auto a = assemble(spec.problem, spec.constants);
        return vi_residual(to_vector(x), a.problem, samples, derive_seed(spec.seed, "vi_residual"));
      }, py::arg("x"), py::arg("samples") = 1000)
      .def("__eq__", [](const ExperimentSpec& a, const ExperimentSpec& b) { return a == b; });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Run the command-line front end; returns (exit_code, stdout, stderr).");
}
