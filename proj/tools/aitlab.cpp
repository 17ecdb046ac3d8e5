// aitlab command line: enumerate | report | inspect | bb | depth
#include "aitlab/lab.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

struct Flags {
  std::string config;
  std::string n;
  std::uint64_t steps = 0;
  std::uint32_t bits = 0;
  std::string slack;
  std::string claims;
  bool claims_given = false;
  std::string out;
  unsigned workers = 0;
  std::string format;
  std::string cache;
  std::string x;
  bool quiet = false;
};

aitlab::LabConfig build_config(const Flags& f) {
  aitlab::LabConfig c = f.config.empty() ? aitlab::LabConfig{} : aitlab::LabConfig::from_file(f.config);
  if (!f.n.empty()) {
    const auto [lo, hi] = aitlab::parse_range(f.n);
    if (lo < 0) throw aitlab::ConfigError("n must be non-negative");
    c.n_min = static_cast<std::uint32_t>(lo);
    c.n_max = static_cast<std::uint32_t>(hi);
    if (c.deep_n < c.n_min || c.deep_n > c.n_max) c.deep_n = c.n_min;
  }
  if (f.steps) {
    c.budgets.max_steps = f.steps;
    c.plain.max_steps = f.steps;
  }
  if (f.bits) {
    c.budgets.max_program_bits = f.bits;
    c.plain.max_bits = f.bits;
    c.plain.bb_cap = std::min(c.plain.bb_cap, f.bits);
  }
  if (!f.slack.empty()) std::tie(c.slack_min, c.slack_max) = aitlab::parse_range(f.slack);
  if (f.claims_given) c.claims = f.claims == "none" ? std::vector<std::string>{} : aitlab::split_list(f.claims);
  if (f.workers) c.workers = f.workers;
  if (!f.format.empty()) {
    if (f.format == "csv") c.format = aitlab::ReportFormat::Csv;
    else if (f.format == "json") c.format = aitlab::ReportFormat::Json;
    else throw aitlab::ConfigError("--format must be csv or json");
  }
  if (!f.cache.empty()) c.cache_dir = f.cache;
  c.validate();
  return c;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream o(out, std::ios::binary);
  if (!o) throw std::runtime_error("cannot write " + out);
  o << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budget-relativized algorithmic information lab"};
  app.require_subcommand(1, 1);
  Flags f;
  const auto common = [&](CLI::App* s) {
    s->add_option("--config", f.config, "JSON config file");
    s->add_option("--n", f.n, "string length range, a..b");
    s->add_option("--steps", f.steps, "step budget");
    s->add_option("--bits", f.bits, "program length budget (multiple of 3)");
    s->add_option("--slack", f.slack, "slack sweep range, a..b");
    s->add_option("--out", f.out, "output file (default stdout)");
    s->add_option("--workers", f.workers, "worker threads");
    s->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--cache", f.cache, "cache directory");
    s->add_flag("--quiet,-q", f.quiet, "no progress log");
  };
  auto* enumerate = app.add_subcommand("enumerate", "enumerate and cache halting domains");
  auto* report = app.add_subcommand("report", "run claim suites and write a report bundle");
  auto* inspect = app.add_subcommand("inspect", "dossier for one string");
  auto* bbc = app.add_subcommand("bb", "busy beaver table");
  auto* depth = app.add_subcommand("depth", "m-depth and bb-depth table");
  for (auto* s : {enumerate, report, inspect, bbc, depth}) common(s);
  report->add_option("--claims", f.claims, "comma-separated claim ids, or none")->each([&](const std::string&) { f.claims_given = true; });
  inspect->add_option("x", f.x, "binary string")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::unique_ptr<aitlab::Lab> lab;
  try {
    lab = std::make_unique<aitlab::Lab>(build_config(f), f.quiet ? nullptr : &std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "aitlab: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*enumerate) {
      for (const auto& p : lab->cmd_enumerate()) std::cout << p.string() << "\n";
      return 0;
    }
    if (*report) {
      std::vector<std::string> ids = lab->config().claims;
      aitlab::ReportBundle b;
      if (f.claims_given && ids.empty()) {
        b.config_hash = lab->config().hash();
      } else {
        b = lab->cmd_report(ids);
      }
      if (f.out.empty() || f.out == "-") std::cout << (lab->config().format == aitlab::ReportFormat::Json ? b.to_json() : b.to_csv());
      else aitlab::write_bundle(b, lab->config().format, f.out);
      for (const auto& t : b.claims) std::cerr << aitlab::to_string(t.status) << " " << t.id << "\n";
      return b.any_fail() ? 1 : 0;
    }
    if (*inspect) {
      emit(lab->cmd_inspect(aitlab::BitString::parse(f.x)), f.out);
      return 0;
    }
    if (*bbc) {
      emit(lab->cmd_bb(), f.out);
      return 0;
    }
    emit(lab->cmd_depth(), f.out);
    return 0;
  } catch (const aitlab::ConfigError& e) {
    std::cerr << "aitlab: " << e.what() << "\n";
    return 2;
  } catch (const aitlab::MissingDomain& e) {
    std::cerr << "aitlab: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "aitlab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "aitlab: " << e.what() << "\n";
    return 1;
  }
}
