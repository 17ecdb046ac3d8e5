// Acceptance run: one PASS/FAIL line per primary criterion.
//
// Usage: aitlab_acceptance CACHE_DIR [WORK_DIR]
// The full default configuration is enumerated into CACHE_DIR (reused across
// runs); the determinism check uses fresh directories under WORK_DIR.
#include "aitlab/lab.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace aitlab;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr std::int64_t kMaxSlack = 8;        // every reported constant must be <= this
constexpr std::int64_t kMaxDecodeSlack = 6;  // decode constant
constexpr std::uint64_t kRandomTables = 10000;
constexpr std::uint32_t kOracleBits = 12;    // brute-force cross-check depth

struct Line {
  std::string name;
  bool pass;
  std::string detail;
};
std::vector<Line> lines;

void report(const std::string& name, bool pass, const std::string& detail) {
  lines.push_back({name, pass, detail});
  std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
}

std::string status_of(const ReportBundle& b, const std::string& id) {
  const ClaimTable* t = b.find(id);
  if (!t) return "missing";
  std::string s = to_string(t->status);
  if (t->min_slack) s += " c=" + std::to_string(*t->min_slack);
  return s;
}

bool passes(const ReportBundle& b, const std::string& id) {
  const ClaimTable* t = b.find(id);
  return t && t->status == ClaimStatus::Pass && t->min_slack && *t->min_slack <= kMaxSlack;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Independent Kraft sum: integer numerator over 2^max_bits.
bool oracle_kraft(const HaltingDB& db, std::string& why) {
  BigInt num = 0;
  const unsigned L = db.budgets.max_program_bits;
  for (const HaltRecord& r : db.records) num += BigInt(1) << (L - r.program.size());
  if (num > (BigInt(1) << L)) {
    why = "Kraft sum above 1";
    return false;
  }
  // Prefix-freeness by a set of all proper prefixes.
  std::set<std::string> programs, prefixes;
  for (const HaltRecord& r : db.records) {
    programs.insert(r.program.raw());
    for (std::size_t i = 1; i < r.program.size(); ++i) prefixes.insert(r.program.raw().substr(0, i));
  }
  for (const std::string& p : programs)
    if (prefixes.count(p)) {
      why = "program " + p + " is a prefix of another";
      return false;
    }
  return true;
}

// Brute force: every word of at most kOracleBits bits halts exactly when it is a record.
bool oracle_domain(const HaltingDB& db, std::string& why) {
  const MachineConfig cfg = db.machine_config();
  std::size_t seen = 0;
  for (std::uint32_t len = 0; len <= kOracleBits; ++len)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      const BitString p = BitString::from_uint(v, len);
      const ExecOutcome r = run_prefix(p, cfg);
      const bool member = r.halted() && r.bits_read == len;
      const HaltRecord* rec = db.find(p);
      if (member != (rec != nullptr) || (rec && (rec->steps != r.steps || rec->output != r.output))) {
        why = "record mismatch at " + p.str();
        return false;
      }
      seen += member;
    }
  std::size_t short_records = 0;
  for (const HaltRecord& r : db.records) short_records += r.program.size() <= kOracleBits;
  if (short_records != seen) {
    why = "record count mismatch below the oracle depth";
    return false;
  }
  return true;
}

// Shannon-Fano-Elias checked from first principles (not via the lab's checker).
bool oracle_sf(std::uint64_t tables, std::uint64_t seed, std::string& why) {
  std::mt19937_64 rng(seed ^ 0x5f5f5f5fULL);
  for (std::uint64_t t = 0; t < tables; ++t) {
    std::vector<int> num(16, 0);
    int left = 64;
    for (int i = 0; i < 16; ++i) {
      const int v = (rng() & 1U) && left ? static_cast<int>(rng() % (left + 1)) : 0;
      num[i] = v;
      left -= v;
    }
    std::vector<Dyadic> p;
    for (int v : num) p.emplace_back(v, 6);
    const ShannonFanoCode sf = shannon_fano(p, 4);
    std::vector<std::string> words;
    for (int i = 0; i < 16; ++i) {
      if (!num[i]) continue;
      const std::string w = sf.code.at(BitString::from_uint(static_cast<std::uint64_t>(i), 4)).raw();
      // length <= ceil(-log2(num/64)) + 1
      int ceil_bits = 0;
      while ((num[i] << ceil_bits) < 64) ++ceil_bits;
      if (static_cast<int>(w.size()) > ceil_bits + 1) {
        why = "codeword too long";
        return false;
      }
      words.push_back(w);
    }
    std::sort(words.begin(), words.end());
    for (std::size_t i = 1; i < words.size(); ++i)
      if (words[i].rfind(words[i - 1], 0) == 0) {
        why = "codeword " + words[i - 1] + " prefixes " + words[i];
        return false;
      }
  }
  return true;
}

LabConfig reduced(const fs::path& cache, unsigned workers) {
  LabConfig c;
  c.budgets = Budgets{1024, 18};
  c.plain = PlainBudgets{1024, 18, 18};
  c.n_min = 2;
  c.n_max = 3;
  c.deep_n = 3;
  c.max_data_width = 2;
  c.halting_j_max = 3;
  c.random_tables = 500;
  c.cache_dir = cache;
  c.workers = workers;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path cache = argc > 1 ? fs::path(argv[1]) : fs::path("aitlab-cache");
  const fs::path work = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "aitlab-acceptance";
  const auto t0 = std::chrono::steady_clock::now();

  LabConfig cfg;  // defaults: n 4..6, 24 bits, 4096 steps, slack 0..8
  cfg.cache_dir = cache;
  cfg.random_tables = kRandomTables;
  Lab lab(cfg, &std::cerr);
  lab.cmd_enumerate();
  ReportBundle b = lab.cmd_report({});
  write_bundle(b, ReportFormat::Csv, cache.parent_path() / "acceptance_report.csv");

  std::string why;
  {
    bool ok = passes(b, "kraft");
    for (std::uint32_t n = cfg.n_min; n <= cfg.n_max && ok; ++n) ok = oracle_kraft(*lab.universe().domain(n), why);
    report("kraft_prefix_free", ok, status_of(b, "kraft") + (why.empty() ? "; oracle Kraft/prefix check agrees" : "; oracle: " + why));
  }
  {
    why.clear();
    bool ok = passes(b, "monotone");
    for (std::uint32_t n = cfg.n_min; n <= cfg.n_max && ok; ++n) ok = oracle_domain(*lab.universe().domain(n), why);
    report("monotone_convergence", ok,
           status_of(b, "monotone") + (why.empty() ? "; brute-force domain agrees up to " + std::to_string(kOracleBits) + " bits" : "; oracle: " + why));
  }
  {
    const ClaimTable* t = b.find("omega.decode");
    const bool ok = t && t->status == ClaimStatus::Pass && t->min_slack && *t->min_slack <= kMaxSlack;
    report("omega_decode", ok, status_of(b, "omega.decode") + "; " + (t ? t->note : "") + "; decode constant cap " + std::to_string(kMaxDecodeSlack));
  }
  {
    const bool ok = passes(b, "omega.beta") && passes(b, "depth.residual");
    report("beta_encoding_and_residual", ok, "beta " + status_of(b, "omega.beta") + ", residual " + status_of(b, "depth.residual"));
  }
  {
    why.clear();
    const bool ok = passes(b, "converters") && oracle_sf(kRandomTables, cfg.seed, why);
    report("converters", ok, status_of(b, "converters") + (why.empty() ? "; oracle SF check on random tables agrees" : "; oracle: " + why));
  }
  {
    report("set_statistic_depth_bound", passes(b, "stat.depth_bound"), status_of(b, "stat.depth_bound") + " over n=" +
                                                                         std::to_string(cfg.n_min) + ".." + std::to_string(cfg.n_max));
  }
  {
    // Vacuity is reported, never counted as a pass.
    bool ok = true;
    std::string detail;
    for (const char* id : {"wss.pprime", "wss.typical", "tm.minimal", "bb.depth_relation", "bb.time_probe"}) {
      const bool p = passes(b, id);
      ok = ok && p;
      detail += std::string(detail.empty() ? "" : ", ") + id + " " + status_of(b, id);
    }
    report("weak_sufficiency_suite", ok, detail);
  }
  {
    const ClaimTable* t = b.find("tetration");
    report("tetration", passes(b, "tetration"), status_of(b, "tetration") + (t ? "; " + t->note : ""));
  }
  {
    // Two fresh pipelines at a reduced configuration, 1 and 8 workers.
    std::map<std::string, std::string> files[2];
    std::string bundles[2];
    for (int i = 0; i < 2; ++i) {
      const fs::path dir = work / (i == 0 ? "w1" : "w8");
      fs::remove_all(dir);
      fs::create_directories(dir);
      Lab l(reduced(dir, i == 0 ? 1 : 8));
      l.cmd_enumerate();
      bundles[i] = l.cmd_report({}).to_csv();
      for (const auto& e : fs::directory_iterator(dir)) files[i][e.path().filename().string()] = slurp(e.path());
    }
    const bool ok = !files[0].empty() && files[0] == files[1] && bundles[0] == bundles[1];
    report("determinism", ok, std::to_string(files[0].size()) + " domain files and bundle " + (ok ? "byte-identical" : "differ") +
                                  " between 1 and 8 workers (reduced config n=2..3, 18 bits, 1024 steps)");
  }

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::size_t failed = 0;
  for (const Line& l : lines) failed += !l.pass;
  std::cout << "acceptance: " << lines.size() - failed << "/" << lines.size() << " criteria pass; " << static_cast<long>(secs) << " s" << std::endl;
  return failed ? 1 : 0;
}
