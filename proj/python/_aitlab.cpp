#include "aitlab/lab.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace aitlab;

namespace {

py::object code_length(const CodeLength& c) { return c.is_finite() ? py::object(py::int_(c.bits())) : py::object(py::none()); }

BitString bits(const std::string& s) { return BitString::parse(s.empty() ? "-" : s); }

py::dict outcome(const ExecOutcome& r) {
  py::dict d;
  static const char* kStatus[] = {"halted", "budget", "error"};
  d["status"] = kStatus[static_cast<int>(r.status)];
  d["output"] = r.output.raw();
  d["bits_read"] = r.bits_read;
  d["steps"] = r.steps;
  return d;
}

MachineConfig machine(std::uint32_t n, std::uint64_t steps, std::uint32_t max_bits, const std::string& condition) {
  MachineConfig c;
  c.length_param = n;
  c.max_steps = steps;
  c.max_program_bits = max_bits;
  c.condition = bits(condition);
  return c;
}

}  // namespace

PYBIND11_MODULE(_aitlab, m) {
  m.doc() = "Budget-relativized algorithmic information lab";
  m.attr("MACHINE") = std::string(kMachineVersion);

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<MissingDomain>(m, "MissingDomain", PyExc_RuntimeError);

  m.def("nat_encode", [](const std::string& w) { return static_cast<std::uint64_t>(nat_encode(bits(w))); });
  m.def("nat_decode", [](std::uint64_t v) { return nat_decode(v).raw(); });
  m.def("assemble", [](const std::string& s) { return assemble(s).str(); });
  m.def("disassemble", [](const std::string& b) { return disassemble(bits(b)); });
  m.def("slog", [](std::uint64_t v) { return slog(BigInt(v)); });

  m.def(
      "run_prefix",
      [](const std::string& program, std::uint32_t n, std::uint64_t steps, std::uint32_t max_bits, const std::string& condition) {
        return outcome(run_prefix(bits(program), machine(n, steps, max_bits, condition)));
      },
      py::arg("program"), py::arg("n") = 0, py::arg("steps") = 4096, py::arg("max_bits") = 24, py::arg("condition") = "");
  m.def(
      "run_plain",
      [](const std::string& program, std::uint32_t n, std::uint64_t steps, const std::string& condition) {
        return outcome(run_plain(bits(program), machine(n, steps, 24, condition)));
      },
      py::arg("program"), py::arg("n") = 0, py::arg("steps") = 4096, py::arg("condition") = "");

  m.def(
      "enumerate_domain",
      [](std::uint32_t n, std::uint64_t steps, std::uint32_t max_bits, const std::string& condition, unsigned workers) {
        const HaltingDB db = enumerate_domain(n, bits(condition), Budgets{steps, max_bits}, workers);
        py::list out;
        for (const HaltRecord& r : db.records)
          out.append(py::make_tuple(r.program.str(), r.steps, r.output.raw()));
        return out;
      },
      py::arg("n"), py::arg("steps") = 4096, py::arg("max_bits") = 24, py::arg("condition") = "", py::arg("workers") = 1);

  py::class_<Lab>(m, "Lab")
      .def(py::init([](const std::string& config_json, const std::string& cache_dir, unsigned workers) {
             LabConfig c = config_json.empty() ? LabConfig{} : LabConfig::from_json_text(config_json);
             c.cache_dir = cache_dir;
             if (workers) c.workers = workers;
             return std::make_unique<Lab>(c);
           }),
           py::arg("config_json") = "", py::arg("cache_dir") = "", py::arg("workers") = 0)
      .def_property_readonly("config_hash", [](const Lab& l) { return l.config().hash(); })
      .def("enumerate", [](Lab& l) { return l.cmd_enumerate(); }, py::call_guard<py::gil_scoped_release>())
      .def(
          "report",
          [](Lab& l, const std::vector<std::string>& claims, const std::string& format) {
            ReportBundle b;
            {
              py::gil_scoped_release release;
              b = l.cmd_report(claims);
            }
            py::dict summary;
            for (const ClaimTable& t : b.claims)
              summary[py::str(t.id)] = py::make_tuple(to_string(t.status), t.min_slack ? py::object(py::int_(*t.min_slack)) : py::object(py::none()));
            return py::make_tuple(summary, format == "json" ? b.to_json() : b.to_csv());
          },
          py::arg("claims") = std::vector<std::string>{}, py::arg("format") = "csv")
      .def("inspect", [](Lab& l, const std::string& x) { return l.cmd_inspect(bits(x)); })
      .def("bb_table", &Lab::cmd_bb)
      .def("depth_table", &Lab::cmd_depth)
      .def("k", [](Lab& l, const std::string& x, const std::string& condition) { return code_length(k_budget(l.universe(), bits(x), bits(condition)).k); },
           py::arg("x"), py::arg("condition") = "")
      .def("c", [](Lab& l, const std::string& x) { return code_length(c_plain(l.universe(), bits(x))); })
      .def("bb", [](Lab& l, std::uint32_t n, std::uint32_t k) { return bb(l.universe(), n, k).str(); })
      .def("m_depth", [](Lab& l, const std::string& x, std::int64_t s) { return m_depth(l.universe(), bits(x), s).k_x; })
      .def("bb_depth", [](Lab& l, const std::string& x, std::int64_t s) { return bb_depth(l.universe(), bits(x), s).kprime_x; });

  m.def("claim_ids", [] {
    std::vector<std::string> ids;
    for (const ClaimInfo& c : claim_catalog()) ids.push_back(c.id);
    return ids;
  });
}
