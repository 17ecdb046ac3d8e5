#include "aitlab/lab.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

namespace aitlab {

using json = nlohmann::ordered_json;

namespace {

std::string str(const CodeLength& c) { return c.str(); }
std::string str(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : "-"; }
std::string str(std::int64_t v) { return std::to_string(v); }
std::string str(std::uint64_t v) { return std::to_string(v); }
std::string str(std::uint32_t v) { return std::to_string(v); }
std::string str(bool b) { return b ? "yes" : "no"; }

/// log k as the length of the word associated with k.
std::int64_t log_len(std::int64_t k) { return k <= 0 ? 0 : static_cast<std::int64_t>(nat_length(static_cast<std::uint64_t>(k))); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string join_csv(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += csv_field(fields[i]);
  }
  return line;
}

std::vector<BitString> all_strings(std::uint32_t n) {
  std::vector<BitString> xs;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) xs.push_back(BitString::from_uint(i, n));
  return xs;
}

struct SweepPoint {
  bool holds = false;
  bool vacuous = false;
  std::vector<std::vector<std::string>> rows;
  std::string detail;
};

}  // namespace

// ---------------------------------------------------------------------------
// Config

void LabConfig::validate() const {
  if (machine != kMachineVersion) throw ConfigError("unsupported machine: " + machine);
  if (budgets.max_program_bits % kOpcodeBits != 0 || budgets.max_program_bits == 0 || budgets.max_program_bits > kMaxProgramBitsCap)
    throw ConfigError("bits must be a positive multiple of 3 and at most " + std::to_string(kMaxProgramBitsCap));
  if (budgets.max_steps == 0 || budgets.max_steps > kMaxStepsCap) throw ConfigError("steps must be in 1.." + std::to_string(kMaxStepsCap));
  if (plain.max_bits > kMaxProgramBitsCap || plain.bb_cap > plain.max_bits)
    throw ConfigError("plain sweep cap must be at most " + std::to_string(kMaxProgramBitsCap) + " and at least the bb cap");
  if (plain.max_steps == 0 || plain.max_steps > kMaxStepsCap) throw ConfigError("plain steps out of range");
  if (n_min > n_max || n_max > 12) throw ConfigError("n range must satisfy n_min <= n_max <= 12");
  if (deep_n > 12) throw ConfigError("deep_n must be at most 12");
  if (slack_min < 0 || slack_min > slack_max) throw ConfigError("slack range must satisfy 0 <= min <= max");
  if (max_data_width > 8) throw ConfigError("max_data_width must be at most 8");
  if (halting_j_max > 10) throw ConfigError("halting_j_max must be at most 10");
  if (workers == 0) throw ConfigError("workers must be positive");
  for (const std::string& c : claims) {
    const auto& cat = claim_catalog();
    if (std::none_of(cat.begin(), cat.end(), [&](const ClaimInfo& i) { return i.id == c; })) throw ConfigError("unknown claim id: " + c);
  }
}

std::string LabConfig::canonical_json() const {
  json j;
  j["machine"] = machine;
  j["max_steps"] = budgets.max_steps;
  j["max_program_bits"] = budgets.max_program_bits;
  j["plain_max_steps"] = plain.max_steps;
  j["plain_max_bits"] = plain.max_bits;
  j["bb_cap"] = plain.bb_cap;
  j["n_min"] = n_min;
  j["n_max"] = n_max;
  j["deep_n"] = deep_n;
  j["slack_min"] = slack_min;
  j["slack_max"] = slack_max;
  j["width_extra"] = width_extra;
  j["max_data_width"] = max_data_width;
  j["halting_j_max"] = halting_j_max;
  j["random_tables"] = random_tables;
  j["seed"] = seed;
  j["claims"] = claims;
  return j.dump();
}

std::string LabConfig::hash() const {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
  for (unsigned char c : canonical_json()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  std::string t = text;
  std::size_t sep = t.find("..");
  std::size_t skip = 2;
  if (sep == std::string::npos) {
    sep = t.find('-', 1);
    skip = 1;
  }
  try {
    std::size_t used = 0;
    if (sep == std::string::npos) {
      const std::int64_t v = std::stoll(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return {v, v};
    }
    const std::string a = t.substr(0, sep), b = t.substr(sep + skip);
    const std::int64_t lo = std::stoll(a, &used);
    if (used != a.size()) throw std::invalid_argument(t);
    const std::int64_t hi = std::stoll(b, &used);
    if (used != b.size()) throw std::invalid_argument(t);
    if (lo > hi) throw std::invalid_argument(t);
    return {lo, hi};
  } catch (const std::exception&) {
    throw ConfigError("malformed range: " + text);
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

LabConfig LabConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  LabConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "machine") c.machine = v.get<std::string>();
      else if (key == "max_steps") c.budgets.max_steps = v.get<std::uint64_t>();
      else if (key == "max_program_bits") c.budgets.max_program_bits = v.get<std::uint32_t>();
      else if (key == "plain_max_steps") c.plain.max_steps = v.get<std::uint64_t>();
      else if (key == "plain_max_bits") c.plain.max_bits = v.get<std::uint32_t>();
      else if (key == "bb_cap") c.plain.bb_cap = v.get<std::uint32_t>();
      else if (key == "n") {
        const auto [lo, hi] = v.is_string() ? parse_range(v.get<std::string>()) : std::pair{v.get<std::int64_t>(), v.get<std::int64_t>()};
        if (lo < 0) throw ConfigError("n must be non-negative");
        c.n_min = static_cast<std::uint32_t>(lo);
        c.n_max = static_cast<std::uint32_t>(hi);
      } else if (key == "n_min") c.n_min = v.get<std::uint32_t>();
      else if (key == "n_max") c.n_max = v.get<std::uint32_t>();
      else if (key == "deep_n") c.deep_n = v.get<std::uint32_t>();
      else if (key == "slack") {
        const auto [lo, hi] = v.is_string() ? parse_range(v.get<std::string>()) : std::pair{v.get<std::int64_t>(), v.get<std::int64_t>()};
        c.slack_min = lo;
        c.slack_max = hi;
      } else if (key == "slack_min") c.slack_min = v.get<std::int64_t>();
      else if (key == "slack_max") c.slack_max = v.get<std::int64_t>();
      else if (key == "width_extra") c.width_extra = v.get<std::uint32_t>();
      else if (key == "max_data_width") c.max_data_width = v.get<std::uint32_t>();
      else if (key == "halting_j_max") c.halting_j_max = v.get<std::uint32_t>();
      else if (key == "random_tables") c.random_tables = v.get<std::uint64_t>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "claims") c.claims = v.is_string() ? split_list(v.get<std::string>()) : v.get<std::vector<std::string>>();
      else if (key == "cache_dir") c.cache_dir = v.get<std::string>();
      else if (key == "workers") c.workers = v.get<unsigned>();
      else if (key == "format") {
        const auto f = v.get<std::string>();
        if (f == "csv") c.format = ReportFormat::Csv;
        else if (f == "json") c.format = ReportFormat::Json;
        else throw ConfigError("format must be csv or json");
      } else {
        throw ConfigError("unknown config key: " + key);
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config value of the wrong type: ") + e.what());
  }
  return c;
}

LabConfig LabConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

// ---------------------------------------------------------------------------
// Bundles

std::string to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Pass: return "PASS";
    case ClaimStatus::Fail: return "FAIL";
    case ClaimStatus::Vacuous: return "VACUOUS";
    case ClaimStatus::Info: return "INFO";
  }
  return "?";
}

const ClaimTable* ReportBundle::find(const std::string& id) const {
  for (const ClaimTable& t : claims)
    if (t.id == id) return &t;
  return nullptr;
}

bool ReportBundle::any_fail() const {
  return std::any_of(claims.begin(), claims.end(), [](const ClaimTable& t) { return t.status == ClaimStatus::Fail; });
}

std::string ReportBundle::to_csv() const {
  std::ostringstream os;
  os << "# aitlab report\n# machine=" << kMachineVersion << "\n# config_hash=" << config_hash << "\n";
  os << "summary\nclaim,status,min_slack,label\n";
  for (const ClaimTable& t : claims) os << join_csv({t.id, to_string(t.status), str(t.min_slack), t.label}) << '\n';
  for (const ClaimTable& t : claims) {
    os << "\nclaim," << t.id << "\nstatus," << to_string(t.status) << "\nnote," << csv_field(t.note) << '\n';
    os << join_csv(t.columns) << '\n';
    for (const auto& r : t.rows) os << join_csv(r) << '\n';
  }
  return os.str();
}

std::string ReportBundle::to_json() const {
  json j;
  j["machine"] = std::string(kMachineVersion);
  j["config_hash"] = config_hash;
  json summary = json::object();
  for (const ClaimTable& t : claims) {
    summary[t.id] = {{"status", to_string(t.status)}, {"min_slack", t.min_slack ? json(*t.min_slack) : json(nullptr)}, {"label", t.label}};
  }
  j["summary"] = summary;
  json tables = json::object();
  for (const ClaimTable& t : claims) tables[t.id] = {{"note", t.note}, {"columns", t.columns}, {"rows", t.rows}};
  j["claims"] = tables;
  return j.dump(2) + "\n";
}

void write_bundle(const ReportBundle& b, ReportFormat f, const std::filesystem::path& path) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << (f == ReportFormat::Json ? b.to_json() : b.to_csv());
  }
  std::filesystem::rename(tmp, path);
}

const std::vector<ClaimInfo>& claim_catalog() {
  static const std::vector<ClaimInfo> kCatalog = {
      {"kraft", "halting domains are prefix-free with exact Kraft sum at most 1"},
      {"monotone", "K_t and the halting mass converge monotonically; smaller budgets are restrictions"},
      {"omega.decode", "halting mass prefixes decide halting of short programs and are incompressible"},
      {"omega.beta", "halting-time code beta is prefix-free and bijective over the domain"},
      {"depth.residual", "|K(x) - k_x - K(x | Omega^{n,k_x})| within 2 log k_x + c"},
      {"depth.halting", "I(x;H) against k_x - 2 log k_x (informational)"},
      {"converters", "Shannon-Fano-Elias and function-to-semimeasure converters"},
      {"stat.depth_bound", "minimal set statistic complexity at least k_x - 2 log k_x - c"},
      {"stat.set_vs_others", "set statistic versus semimeasure and function statistics when K(x) = n/2"},
      {"wss.census", "cylinder sets passing weak sufficiency (informational count)"},
      {"wss.pprime", "P'_x is a semimeasure and a weak sufficient statistic"},
      {"wss.typical", "every weak sufficient statistic found is also typical"},
      {"tm.minimal", "typical probabilistic models have C(P) >= k'_x - c"},
      {"bb.depth_relation", "|k'_x - k_{x|k'_x}| <= c"},
      {"bb.time_probe", "bb(k - c) steps expose the bb(k) maximum for k <= 12"},
      {"wss.bb_equivalence", "P'_x with k'_x recovers bb(k'_x - c) (informational)"},
      {"tetration", "tetration trace length within slog(x) + c and fixpoint within c of C(x)"},
      {"additivity", "K(x,y) - K(x) - K(y|x*) over all pairs (informational)"},
      {"census", "witness census sizes near K(w) (informational)"},
  };
  return kCatalog;
}

// ---------------------------------------------------------------------------
// Lab

namespace {

std::optional<std::filesystem::path> cache_path(const LabConfig& cfg) {
  if (cfg.cache_dir.empty()) return std::nullopt;
  std::filesystem::create_directories(cfg.cache_dir);
  return cfg.cache_dir;
}

}  // namespace

Lab::Lab(LabConfig cfg, std::ostream* log)
    : cfg_((cfg.validate(), std::move(cfg))),
      log_(log),
      universe_(cfg_.budgets, cfg_.plain, cfg_.workers, cache_path(cfg_)),
      models_(universe_, cfg_.width_extra, cfg_.max_data_width) {}

void Lab::say(const std::string& msg) {
  if (log_) *log_ << "[aitlab] " << msg << std::endl;
}

std::vector<BitString> Lab::covered(std::uint32_t n) {
  std::vector<BitString> xs;
  const OutputIndex& idx = universe_.index(n, BitString());
  for (const BitString& x : all_strings(n))
    if (idx.k(x).is_finite()) xs.push_back(x);
  return xs;
}

void Lab::require_base_domains() {
  if (cfg_.cache_dir.empty()) return;
  for (std::uint32_t n = cfg_.n_min; n <= cfg_.n_max; ++n) {
    const auto p = cfg_.cache_dir / DomainCache::cache_key(n, BitString(), cfg_.budgets);
    if (!std::filesystem::exists(p))
      throw MissingDomain("domain for n=" + std::to_string(n) + " is not cached at these budgets; run `aitlab enumerate` with the same config first");
  }
}

std::vector<std::filesystem::path> Lab::cmd_enumerate() {
  std::vector<std::pair<std::uint32_t, BitString>> wanted;
  for (std::uint32_t n = cfg_.n_min; n <= cfg_.n_max; ++n) {
    wanted.emplace_back(n, BitString());
    for (std::uint32_t m = 1; m <= cfg_.max_data_width; ++m) wanted.emplace_back(n, BitString::repeat(false, m));
  }
  for (std::uint32_t k = 0; k <= cfg_.plain.bb_cap; ++k) wanted.emplace_back(cfg_.deep_n, nat_decode(std::uint64_t{k}));
  std::vector<std::filesystem::path> paths;
  std::set<std::pair<std::uint32_t, std::string>> seen;
  for (const auto& [n, c] : wanted) {
    if (!seen.emplace(n, c.raw()).second) continue;
    say("domain n=" + std::to_string(n) + " cond=" + c.str());
    universe_.index(n, c);
    if (!cfg_.cache_dir.empty()) paths.push_back(cfg_.cache_dir / DomainCache::cache_key(n, c, cfg_.budgets));
  }
  return paths;
}

ReportBundle Lab::cmd_report(const std::vector<std::string>& claims) {
  require_base_domains();
  std::vector<std::string> ids = claims.empty() ? cfg_.claims : claims;
  if (claims.empty() && cfg_.claims.empty())
    for (const ClaimInfo& c : claim_catalog()) ids.push_back(c.id);
  for (const std::string& id : ids) {
    const auto& cat = claim_catalog();
    if (std::none_of(cat.begin(), cat.end(), [&](const ClaimInfo& i) { return i.id == id; })) throw ConfigError("unknown claim id: " + id);
  }
  ReportBundle b;
  b.config_hash = cfg_.hash();
  // Catalog order; the Kraft audit covers every cached domain, so it runs last.
  std::map<std::string, ClaimTable> done;
  for (const ClaimInfo& c : claim_catalog())
    if (c.id != "kraft" && std::find(ids.begin(), ids.end(), c.id) != ids.end()) done[c.id] = run_claim(c.id);
  if (std::find(ids.begin(), ids.end(), "kraft") != ids.end()) done["kraft"] = run_claim("kraft");
  for (const ClaimInfo& c : claim_catalog())
    if (done.count(c.id)) b.claims.push_back(std::move(done[c.id]));
  return b;
}

namespace {

ClaimTable sweep_claim(ClaimTable t, std::int64_t lo, std::int64_t hi, const std::function<SweepPoint(std::int64_t)>& eval) {
  std::string trace;
  SweepPoint last;
  bool all_vacuous = true;
  for (std::int64_t s = lo; s <= hi; ++s) {
    SweepPoint p = eval(s);
    trace += (trace.empty() ? "" : " ") + std::to_string(s) + ":" + (p.vacuous ? "vacuous" : (p.holds ? "holds" : "fails"));
    if (!p.vacuous) all_vacuous = false;
    if (p.holds && !p.vacuous) {
      t.status = ClaimStatus::Pass;
      t.min_slack = s;
      t.rows = std::move(p.rows);
      t.note = "slack sweep " + trace + (p.detail.empty() ? "" : "; " + p.detail);
      return t;
    }
    last = std::move(p);
  }
  t.status = all_vacuous ? ClaimStatus::Vacuous : ClaimStatus::Fail;
  t.rows = std::move(last.rows);
  t.note = "slack sweep " + trace + (last.detail.empty() ? "" : "; " + last.detail);
  return t;
}

}  // namespace

ClaimTable Lab::run_claim(const std::string& id) {
  ClaimTable t;
  t.id = id;
  for (const ClaimInfo& c : claim_catalog())
    if (c.id == id) t.label = c.label;
  say("claim " + id);
  const std::uint32_t dn = cfg_.deep_n;
  const std::int64_t s_lo = cfg_.slack_min, s_hi = cfg_.slack_max;

  if (id == "kraft") {
    t.columns = {"n", "condition", "records", "kraft_sum", "omega_n", "prefix_violations"};
    std::vector<HaltingDB> dbs;
    std::vector<std::filesystem::path> files;
    if (!cfg_.cache_dir.empty() && std::filesystem::exists(cfg_.cache_dir)) {
      const std::string suffix = "_s" + std::to_string(cfg_.budgets.max_steps) + "_b" + std::to_string(cfg_.budgets.max_program_bits) + ".hdb";
      for (const auto& e : std::filesystem::directory_iterator(cfg_.cache_dir)) {
        const std::string name = e.path().filename().string();
        if (name.rfind(std::string(kMachineVersion) + "_", 0) == 0 && name.size() > suffix.size() &&
            name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
          files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
    }
    std::size_t bad = 0;
    const auto audit = [&](const HaltingDB& db) {
      std::vector<BitString> programs;
      programs.reserve(db.records.size());
      for (const HaltRecord& r : db.records) programs.push_back(r.program);
      const bool pf = !prefix_violation(programs).has_value();
      const Dyadic k = db.kraft_sum();
      const bool ok = pf && k <= Dyadic::from_int(1);
      if (!ok) ++bad;
      t.rows.push_back({str(db.n), db.condition.str(), str(static_cast<std::uint64_t>(db.records.size())), k.str(), omega_final(db).str(), pf ? "0" : "1"});
    };
    if (files.empty()) {
      for (std::uint32_t n = cfg_.n_min; n <= cfg_.n_max; ++n) audit(*universe_.domain(n));
    } else {
      for (const auto& f : files) audit(load(f));
    }
    t.status = bad == 0 ? ClaimStatus::Pass : ClaimStatus::Fail;
    t.min_slack = 0;
    t.note = std::to_string(t.rows.size()) + " domains audited; kraft_sum counts every halting program, omega_n only those with an n-bit output";
    return t;
  }

  if (id == "monotone") {
    t.columns = {"n", "check", "cases", "violations"};
    std::size_t total_bad = 0;
    for (std::uint32_t n = cfg_.n_min; n <= cfg_.n_max; ++n) {
      const auto db = universe_.domain(n);
      const OutputIndex& idx = universe_.index(n, BitString());
      // K_t recomputed from the raw records at every distinct halting time.
      std::size_t cases = 0, bad = 0;
      std::map<BitString, std::uint32_t> running;
      std::map<BitString, std::uint32_t> previous;
      const auto compare_at = [&](std::uint64_t t) {
        for (const auto& [x, len] : running) {
          ++cases;
          if (idx.k(x, t) != CodeLength(len)) ++bad;
          auto it = previous.find(x);
          if (it != previous.end() && it->second < len) ++bad;
          previous[x] = len;
        }
      };
      for (std::size_t i = 0; i < db->records.size(); ++i) {
        const HaltRecord& r = db->records[i];
        auto [it, fresh] = running.try_emplace(r.output, static_cast<std::uint32_t>(r.program.size()));
        if (!fresh) it->second = std::min<std::uint32_t>(it->second, static_cast<std::uint32_t>(r.program.size()));
        if (i + 1 == db->records.size() || db->records[i + 1].steps != r.steps) compare_at(r.steps);
      }
      t.rows.push_back({str(n), "K_t non-increasing and equal to the record minimum", str(static_cast<std::uint64_t>(cases)), str(static_cast<std::uint64_t>(bad))});
      total_bad += bad;

      std::size_t ocases = 0, obad = 0;
      Dyadic prev;
      std::set<std::uint64_t> times;
      for (const HaltRecord& r : db->records) times.insert(r.steps);
      for (std::uint64_t tt : times) {
        ++ocases;
        const Dyadic o = omega_t(*db, tt);
        if (o < prev || o != idx.omega_t(tt)) ++obad;
        prev = o;
      }
      t.rows.push_back({str(n), "Omega_t non-decreasing", str(static_cast<std::uint64_t>(ocases)), str(static_cast<std::uint64_t>(obad))});
      total_bad += obad;

      const std::uint32_t small_bits = cfg_.budgets.max_program_bits > 6 ? cfg_.budgets.max_program_bits - 6 : cfg_.budgets.max_program_bits;
      const std::uint64_t small_steps = std::max<std::uint64_t>(1, cfg_.budgets.max_steps / 4);
      for (const Budgets& small : {Budgets{small_steps, cfg_.budgets.max_program_bits}, Budgets{cfg_.budgets.max_steps, small_bits},
                                   Budgets{small_steps, small_bits}}) {
        const HaltingDB sub = enumerate_domain(n, BitString(), small, cfg_.workers);
        std::vector<HaltRecord> filtered;
        for (const HaltRecord& r : db->records)
          if (r.steps <= small.max_steps && r.program.size() <= small.max_program_bits) filtered.push_back(r);
        const bool same = filtered == sub.records;
        total_bad += same ? 0 : 1;
        t.rows.push_back({str(n), "restriction to steps=" + std::to_string(small.max_steps) + " bits=" + std::to_string(small.max_program_bits),
                          str(static_cast<std::uint64_t>(sub.records.size())), same ? "0" : "1"});
      }
    }
    t.status = total_bad == 0 ? ClaimStatus::Pass : ClaimStatus::Fail;
    t.min_slack = 0;
    return t;
  }

  if (id == "omega.decode") {
    t.columns = {"n", "j", "in_range", "slack_needed", "omega_prefix", "K(prefix|n)", "j_minus_K"};
    std::int64_t c_decode = 0, c_incompressible = 0;
    for (std::uint32_t n = cfg_.n_min; n <= cfg_.n_max; ++n) {
      const auto db = universe_.domain(n);
      for (std::uint32_t j = 1; j <= cfg_.budgets.max_program_bits; ++j) {
        const bool in_range = j <= n;
        const auto need = static_cast<std::int64_t>(decode_slack_needed(*db, j));
        const BitString w = omega_prefix(*db, j);
        const CodeLength k = k_budget(universe_, w, BitString(), cfg_.budgets.max_steps, n).k;
        const std::optional<std::int64_t> gap = k.is_finite() ? std::optional<std::int64_t>(j - k.bits()) : std::nullopt;
        if (in_range) {
          c_decode = std::max(c_decode, need);
          if (gap) c_incompressible = std::max(c_incompressible, *gap);
        }
        t.rows.push_back({str(n), str(j), str(in_range), str(need), w.str(), str(k), str(gap)});
      }
    }
    const bool ok = c_decode <= 6 && c_incompressible <= s_hi;
    t.status = ok ? ClaimStatus::Pass : ClaimStatus::Fail;
    t.min_slack = std::max(c_decode, c_incompressible);
    t.note = "decode constant c_emp=" + std::to_string(c_decode) + " (must be <= 6) over j <= n; incompressibility constant c=" +
             std::to_string(c_incompressible) + "; rows with j > n are informational";
    return t;
  }

  if (id == "omega.beta") {
    t.columns = {"n", "code", "records", "distinct_codewords", "prefix_free", "example_violation"};
    bool ok = true;
    for (std::uint32_t n = cfg_.n_min; n <= cfg_.n_max; ++n) {
      const auto db = universe_.domain(n);
      const auto beta = beta_encoding(*db);
      std::vector<BitString> words;
      for (const auto& [p, b] : beta) words.push_back(b);
      std::set<BitString> distinct(words.begin(), words.end());
      const auto v = prefix_violation(words);
      std::string example = "-";
      if (v) {
        for (const auto& [p, b] : beta) {
          if (b == v->first) example = "beta(" + p.str() + ")=" + b.str() + example.substr(1);
          if (b == v->second) example += " beta(" + p.str() + ")=" + b.str();
        }
      }
      const bool bijective = distinct.size() == beta.size() && beta.size() == db->records.size();
      ok = ok && bijective && !v;
      t.rows.push_back({str(n), "first l(p) bits of alpha_p", str(static_cast<std::uint64_t>(beta.size())),
                        str(static_cast<std::uint64_t>(distinct.size())), str(!v), example});
      // Elias variant: l(p) + 1 bits of the cumulative mass before p, rounded up.
      std::vector<BitString> elias;
      Dyadic before;
      for (const HaltRecord& r : db->records) {
        const auto len = static_cast<std::int64_t>(r.program.size()) + 1;
        const BigInt word = before.ceil_scaled(len);
        BitString code;
        for (std::int64_t b = len; b-- > 0;) code.push_back(boost::multiprecision::bit_test(word, static_cast<unsigned>(b)));
        elias.push_back(code);
        before += Dyadic::pow2_neg(static_cast<std::int64_t>(r.program.size()));
      }
      std::set<BitString> ed(elias.begin(), elias.end());
      t.rows.push_back({str(n), "informational: l(p)+1 bits of the preceding mass, rounded up", str(static_cast<std::uint64_t>(elias.size())),
                        str(static_cast<std::uint64_t>(ed.size())), str(!prefix_violation(elias)), "-"});
    }
    t.status = ok ? ClaimStatus::Pass : ClaimStatus::Fail;
    t.min_slack = ok ? std::optional<std::int64_t>(0) : std::nullopt;
    t.note = "bijectivity and prefix-freeness of the literal code over every record of the empty-condition domain";
    return t;
  }

  if (id == "depth.residual") {
    t.columns = {"n", "x", "K", "k_x", "K(x|Omega)", "residual", "2log_k_x", "upper_residual", "lower_residual"};
    return sweep_claim(std::move(t), s_lo, s_hi, [&](std::int64_t s) {
      SweepPoint p;
      p.holds = true;
      std::int64_t worst = 0;
      std::size_t undefined = 0;
      for (std::uint32_t n = cfg_.n_min; n <= cfg_.n_max; ++n) {
        const auto db = universe_.domain(n);
        for (const BitString& x : covered(n)) {
          const CodeLength k = universe_.index(n, BitString()).k(x);
          const std::int64_t kx = *m_depth(universe_, x, s).k_x;
          const BitString w = omega_prefix(*db, static_cast<std::size_t>(kx));
          const CodeLength kc = universe_.index(n, w).k(x);
          const std::int64_t two_log = 2 * log_len(kx);
          std::vector<std::string> row{str(n), x.str(), str(k), str(kx), str(kc)};
          if (!kc.is_finite()) {
            ++undefined;
            p.holds = false;
            row.insert(row.end(), {"-", str(two_log), "-", "-"});
          } else {
            const std::int64_t r = k.bits() - kx - kc.bits();
            worst = std::max(worst, std::abs(r) - two_log);
            if (std::abs(r) > two_log + s) p.holds = false;
            row.insert(row.end(), {str(r), str(two_log), str(kc.bits() - (k.bits() - kx)), str(k.bits() - kx - two_log - kc.bits())});
          }
          p.rows.push_back(std::move(row));
        }
      }
      p.detail = "max(|residual| - 2 log k_x)=" + std::to_string(worst) + ", undefined=" + std::to_string(undefined);
      return p;
    });
  }

  if (id == "depth.halting") {
    t.columns = {"n", "j", "x", "K", "K(x|H)", "I(x;H)", "k_x", "k_x-2log_k_x", "gap"};
    std::map<std::uint32_t, std::int64_t> min_gap;
    for (std::uint32_t j = 0; j <= cfg_.halting_j_max; ++j) {
      for (const BitString& x : covered(dn)) {
        const CodeLength k = universe_.index(dn, BitString()).k(x);
        const CodeLength kh = k_given_halting(universe_, x, j);
        const std::int64_t kx = *m_depth(universe_, x, s_lo).k_x;
        const std::int64_t bound = kx - 2 * log_len(kx);
        std::optional<std::int64_t> info, gap;
        if (kh.is_finite()) {
          info = k.bits() - kh.bits();
          gap = *info - bound;
          auto [it, fresh] = min_gap.try_emplace(j, *gap);
          if (!fresh) it->second = std::min(it->second, *gap);
        }
        t.rows.push_back({str(dn), str(j), x.str(), str(k), str(kh), str(info), str(kx), str(bound), str(gap)});
      }
    }
    for (const auto& [j, g] : min_gap) t.note += (t.note.empty() ? "" : "; ") + std::string("j=") + std::to_string(j) + " min gap " + std::to_string(g);
    t.status = ClaimStatus::Info;
    return t;
  }

  if (id == "converters") {
    t.columns = {"check", "n", "cases", "violations"};
    std::size_t bad_total = 0;
    const auto check_sf = [](const std::vector<Dyadic>& p, std::uint32_t n) -> bool {
      const ShannonFanoCode sf = shannon_fano(p, n);
      std::vector<BitString> words;
      std::size_t support = 0;
      for (std::uint64_t i = 0; i < p.size(); ++i) {
        if (p[i].is_zero()) continue;
        ++support;
        const BitString y = BitString::from_uint(i, n);
        const auto it = sf.code.find(y);
        if (it == sf.code.end()) return false;
        // Length bound: 2^{-(len-1)} <= P(y), i.e. len <= ceil(-log P) + 1.
        if (Dyadic::pow2_neg(static_cast<std::int64_t>(it->second.size()) - 1) > p[i]) return false;
        const auto back = sf.decode.find(it->second);
        if (back == sf.decode.end() || back->second != y) return false;
        words.push_back(it->second);
      }
      return sf.code.size() == support && sf.decode.size() == support && !prefix_violation(words);
    };
    const std::uint32_t w = 6;
    {
      // Every width-6 table over 2^2.
      std::size_t cases = 0, bad = 0;
      for (int a = 0; a <= 64; ++a)
        for (int b = 0; a + b <= 64; ++b)
          for (int c = 0; a + b + c <= 64; ++c)
            for (int d = 0; a + b + c + d <= 64; ++d) {
              ++cases;
              const std::vector<Dyadic> p{Dyadic(a, w), Dyadic(b, w), Dyadic(c, w), Dyadic(d, w)};
              if (!check_sf(p, 2)) ++bad;
            }
      t.rows.push_back({"shannon-fano round trip, every width-6 table", "2", str(static_cast<std::uint64_t>(cases)), str(static_cast<std::uint64_t>(bad))});
      bad_total += bad;
    }
    std::mt19937_64 rng(cfg_.seed);
    const auto scaled_table = [&](std::uint32_t n, std::uint64_t support_mask) {
      std::vector<std::int64_t> num(std::size_t{1} << n, 0);
      std::uniform_int_distribution<std::int64_t> dist(1, 64);
      std::int64_t total = 0;
      for (std::size_t i = 0; i < num.size(); ++i)
        if (support_mask >> i & 1U) total += (num[i] = dist(rng));
      if (total > 64) {
        const std::int64_t old = total;
        total = 0;
        for (auto& v : num)
          if (v) total += (v = std::max<std::int64_t>(1, v * 64 / old));
        while (total > 64) {
          auto it = std::max_element(num.begin(), num.end());
          --*it;
          --total;
        }
      }
      std::vector<Dyadic> p;
      for (auto v : num) p.emplace_back(v, w);
      return p;
    };
    {
      // Every support pattern over 2^3, several random tables each.
      std::size_t cases = 0, bad = 0;
      for (std::uint64_t mask = 1; mask < 256; ++mask)
        for (int r = 0; r < 40; ++r) {
          ++cases;
          if (!check_sf(scaled_table(3, mask), 3)) ++bad;
        }
      t.rows.push_back({"shannon-fano round trip, every support pattern, random width-6 tables", "3", str(static_cast<std::uint64_t>(cases)),
                        str(static_cast<std::uint64_t>(bad))});
      bad_total += bad;
    }
    {
      std::size_t cases = 0, bad = 0;
      std::uniform_int_distribution<std::uint64_t> masks(1, 65535);
      for (std::uint64_t r = 0; r < cfg_.random_tables; ++r) {
        ++cases;
        if (!check_sf(scaled_table(4, masks(rng)), 4)) ++bad;
      }
      t.rows.push_back({"shannon-fano round trip, random width-6 tables", "4", str(static_cast<std::uint64_t>(cases)), str(static_cast<std::uint64_t>(bad))});
      bad_total += bad;
    }
    for (std::uint32_t n = cfg_.n_min; n <= cfg_.n_max; ++n) {
      for (MachineMode mode : {MachineMode::Prefix, MachineMode::Plain}) {
        std::size_t cases = 0, bad = 0;
        for (std::uint32_t m = 0; m <= cfg_.max_data_width; ++m) {
          for (const Model* f : models_.index(n, mode, ModelKind::Function, m).ordered()) {
            ++cases;
            const Model p = func_to_measure(*f, models_.width(n));
            bool ok = p.mass() <= Dyadic::from_int(1);
            for (const auto& [d, y] : f->function) ok = ok && p.measure.at(y.to_uint()) >= Dyadic::pow2_neg(static_cast<std::int64_t>(d.size()) + 1);
            ok = ok && check_sf(p.measure, n);
            if (!ok) ++bad;
          }
        }
        t.rows.push_back({"function models to semimeasures: mass <= 1, preimage weights, code round trip (" + to_string(mode) + ", m <= " +
                              std::to_string(cfg_.max_data_width) + ")",
                          str(n), str(static_cast<std::uint64_t>(cases)), str(static_cast<std::uint64_t>(bad))});
        bad_total += bad;
      }
    }
    t.status = bad_total == 0 ? ClaimStatus::Pass : ClaimStatus::Fail;
    t.min_slack = 0;
    return t;
  }

  if (id == "stat.depth_bound") {
    t.columns = {"n", "x", "K", "l_S", "k_x", "k_x-2log_k_x", "margin"};
    return sweep_claim(std::move(t), s_lo, s_hi, [&](std::int64_t s) {
      SweepPoint p;
      p.holds = true;
      std::size_t total = 0, missing = 0, violations = 0;
      for (std::uint32_t n = cfg_.n_min; n <= cfg_.n_max; ++n) {
        for (const BitString& x : covered(n)) {
          ++total;
          const CodeLength k = universe_.index(n, BitString()).k(x);
          const SearchResult r = models_.search_minimal(x, ModelKind::Set, Definition::SS, s);
          const std::int64_t kx = *m_depth(universe_, x, s).k_x;
          const std::int64_t bound = kx - 2 * log_len(kx);
          std::optional<std::int64_t> margin;
          if (!r.verdict) {
            ++missing;
            p.holds = false;
          } else {
            margin = r.l_value().bits() - (bound - s);
            if (*margin < 0) {
              ++violations;
              p.holds = false;
            }
          }
          p.rows.push_back({str(n), x.str(), str(k), str(r.l_value()), str(kx), str(bound), str(margin)});
        }
      }
      p.detail = std::to_string(total) + " strings with finite K; " + std::to_string(missing) + " without a set statistic; " +
                 std::to_string(violations) + " violations";
      return p;
    });
  }

  if (id == "stat.set_vs_others") {
    t.columns = {"n", "x", "K", "l_S", "l_P", "l_F", "log|S^F|", "n/2-l_F"};
    return sweep_claim(std::move(t), s_lo, s_hi, [&](std::int64_t s) {
      SweepPoint p;
      p.holds = true;
      p.vacuous = true;
      for (std::uint32_t n = cfg_.n_min; n <= cfg_.n_max; ++n) {
        if (n % 2 != 0) continue;
        for (const BitString& x : covered(n)) {
          const CodeLength k = universe_.index(n, BitString()).k(x);
          if (std::abs(k.bits() - static_cast<std::int64_t>(n / 2)) > s) continue;
          p.vacuous = false;
          const SearchResult rs = models_.search_minimal(x, ModelKind::Set, Definition::SS, s);
          const SearchResult rp = models_.search_minimal(x, ModelKind::Semimeasure, Definition::SS, s);
          const SearchResult rf = models_.search_minimal(x, ModelKind::Function, Definition::SS, s);
          std::optional<std::int64_t> log_sf, rhs;
          if (rs.verdict && rp.verdict && rp.l_value().bits() < rs.l_value().bits() - s) p.holds = false;
          if (rs.verdict && rf.verdict && rf.l_value().bits() < rs.l_value().bits() - s) p.holds = false;
          if (rf.model) {
            const Model sf = func_to_set(*rf.model);
            log_sf = *sf.log_term(x);
            rhs = static_cast<std::int64_t>(n / 2) - rf.l_value().bits();
            if (*log_sf > *rhs + s) p.holds = false;
          }
          p.rows.push_back({str(n), x.str(), str(k), str(rs.l_value()), str(rp.l_value()), str(rf.l_value()), str(log_sf), str(rhs)});
        }
      }
      if (p.vacuous) p.detail = "no string with K(x) within slack of n/2 at this budget";
      return p;
    });
  }

  if (id == "wss.census") {
    t.columns = {"n", "x", "K", "passing_i", "count", "count/n"};
    for (std::uint32_t n = cfg_.n_min; n <= cfg_.n_max; ++n) {
      for (const BitString& x : covered(n)) {
        const auto rows = models_.wss_census(x, s_hi);
        std::string passing;
        std::size_t count = 0;
        for (const CensusRow& r : rows)
          if (r.verdict.passed()) {
            ++count;
            passing += (passing.empty() ? "" : " ") + std::to_string(r.i);
          }
        std::ostringstream ratio;
        ratio << std::fixed << std::setprecision(3) << (n ? static_cast<double>(count) / n : 0.0);
        t.rows.push_back({str(n), x.str(), str(universe_.index(n, BitString()).k(x)), passing.empty() ? "-" : passing,
                          str(static_cast<std::uint64_t>(count)), ratio.str()});
      }
    }
    t.status = ClaimStatus::Info;
    t.note = "cylinder sets at slack " + std::to_string(s_hi) + "; a cylinder without a plain program in the sweep is out of budget";
    return t;
  }

  if (id == "wss.pprime") {
    t.columns = {"x", "k'_x", "c", "mass", "P(x)", "complexity", "logterm", "rhs", "verdict", "deficiency"};
    std::size_t mass_violations = 0;
    ClaimTable out = sweep_claim(std::move(t), s_lo, s_hi, [&](std::int64_t s) {
      SweepPoint p;
      p.holds = true;
      for (const BitString& x : covered(dn)) {
        const auto pp = models_.construct_p_prime(x, s);
        if (!pp) {
          p.holds = false;
          p.rows.push_back({x.str(), "-", "-", "-", "-", "-", "-", "-", "no k'_x within the bb cap", "-"});
          continue;
        }
        const Dyadic mass = pp->model.mass();
        if (mass > Dyadic::from_int(1)) {
          ++mass_violations;
          p.holds = false;
        }
        const Verdict v = models_.is_weak_sufficient(x, pp->model, s);
        if (!v.passed()) p.holds = false;
        p.rows.push_back({x.str(), str(*pp->kprime), str(pp->c), mass.str(), pp->model.measure.at(x.to_uint()).str(), str(v.complexity),
                          str(v.log_term), str(v.rhs), to_string(v.state), str(v.deficiency)});
      }
      return p;
    });
    out.note += "; mass above 1 in " + std::to_string(mass_violations) + " constructions";
    return out;
  }

  if (id == "wss.typical" || id == "tm.minimal") {
    // Verdict deficiencies do not depend on the slack, so each model is judged
    // once at the top of the sweep and re-thresholded. P'_x is rebuilt per slack.
    struct Judged {
      Verdict wss;
      std::optional<Verdict> tm;
      bool probabilistic;
    };
    std::map<BitString, std::vector<Judged>> judged;
    for (const BitString& x : covered(dn)) {
      auto& list = judged[x];
      for (ModelKind kind : {ModelKind::Set, ModelKind::Semimeasure, ModelKind::Function}) {
        for (const Model* z : models_.candidates(dn, MachineMode::Plain, kind)) {
          if (!z->in_support(x)) continue;
          Judged j{models_.is_weak_sufficient(x, *z, s_hi), std::nullopt, kind == ModelKind::Semimeasure};
          if (j.wss.passed() || j.probabilistic) j.tm = models_.is_typical(x, *z, s_hi);
          list.push_back(std::move(j));
        }
      }
    }
    const auto within = [](const Verdict& v, std::int64_t s) { return v.deficiency && std::abs(*v.deficiency) <= s; };
    if (id == "wss.typical") {
      t.columns = {"x", "wss_found", "c_emp", "pprime_wss", "pprime_tm_deficiency"};
      return sweep_claim(std::move(t), s_lo, s_hi, [&](std::int64_t s) {
        SweepPoint p;
        p.holds = true;
        p.vacuous = true;
        for (const BitString& x : covered(dn)) {
          std::size_t found = 0;
          std::optional<std::int64_t> c_emp = 0;
          const auto account = [&](const Verdict& tm) {
            ++found;
            if (!tm.deficiency) c_emp.reset();
            else if (c_emp) c_emp = std::max(*c_emp, std::abs(*tm.deficiency) - s);
          };
          for (const Judged& j : judged[x])
            if (within(j.wss, s)) account(*j.tm);
          const auto pp = models_.construct_p_prime(x, s);
          std::string pw = "-", pt = "-";
          if (pp) {
            const Verdict w = models_.is_weak_sufficient(x, pp->model, s);
            const Verdict tm = models_.is_typical(x, pp->model, s);
            pw = to_string(w.state);
            pt = str(tm.deficiency);
            if (w.passed()) account(tm);
          }
          if (found) {
            p.vacuous = false;
            if (!c_emp || *c_emp < 0) c_emp = c_emp ? std::optional<std::int64_t>(0) : std::nullopt;
            if (!c_emp || *c_emp > s_hi) p.holds = false;
          }
          p.rows.push_back({x.str(), str(static_cast<std::uint64_t>(found)), found ? str(c_emp) : "-", pw, pt});
        }
        p.detail = "c_emp is the extra slack needed for every weak sufficient statistic to be typical; it must not exceed " + std::to_string(s_hi);
        if (p.vacuous) p.detail += "; no weak sufficient statistic found at this budget";
        return p;
      });
    }
    t.columns = {"x", "k'_x", "typical_probabilistic_found", "min_C(P)", "k'_x-min_C(P)"};
    return sweep_claim(std::move(t), s_lo, s_hi, [&](std::int64_t s) {
      SweepPoint p;
      p.holds = true;
      p.vacuous = true;
      for (const BitString& x : covered(dn)) {
        const auto pp = models_.construct_p_prime(x, s);
        const std::optional<std::int64_t> kp = pp ? pp->kprime : std::nullopt;
        std::vector<std::int64_t> complexities;
        for (const Judged& j : judged[x])
          if (j.probabilistic && j.tm && within(*j.tm, s)) complexities.push_back(j.tm->complexity.bits());
        if (pp) {
          const Verdict tm = models_.is_typical(x, pp->model, s);
          if (tm.passed()) complexities.push_back(tm.complexity.bits());
        }
        std::optional<std::int64_t> least;
        if (!complexities.empty()) least = *std::min_element(complexities.begin(), complexities.end());
        if (least) {
          p.vacuous = false;
          if (!kp || *least < *kp - s) p.holds = false;
        }
        p.rows.push_back({x.str(), str(kp), str(static_cast<std::uint64_t>(complexities.size())), str(least),
                          least && kp ? str(*kp - *least) : "-"});
      }
      if (p.vacuous) p.detail = "no typical probabilistic model found at this budget";
      return p;
    });
  }

  if (id == "bb.depth_relation") {
    t.columns = {"x", "k'_x", "k_{x|k'_x}", "difference"};
    return sweep_claim(std::move(t), s_lo, s_hi, [&](std::int64_t s) {
      SweepPoint p;
      p.holds = true;
      for (const BitString& x : covered(dn)) {
        const DepthProfile bd = bb_depth(universe_, x, s);
        if (!bd.kprime_x) {
          p.holds = false;
          p.rows.push_back({x.str(), "-", "-", "-"});
          continue;
        }
        const DepthProfile md = m_depth(universe_, x, s, nat_decode(static_cast<std::uint64_t>(*bd.kprime_x)));
        if (!md.k_x) {
          p.holds = false;
          p.rows.push_back({x.str(), str(*bd.kprime_x), "-", "-"});
          continue;
        }
        const std::int64_t diff = *bd.kprime_x - *md.k_x;
        if (std::abs(diff) > s) p.holds = false;
        p.rows.push_back({x.str(), str(*bd.kprime_x), str(*md.k_x), str(diff)});
      }
      return p;
    });
  }

  if (id == "bb.time_probe") {
    t.columns = {"n", "k", "bb", "champion", "champion_steps", "largest_c"};
    bool ok = true;
    const std::uint32_t k_max = std::min<std::uint32_t>(12, cfg_.plain.bb_cap);
    for (std::uint32_t k = 0; k <= k_max; ++k) {
      const auto c = bb_time_probe(universe_, dn, k);
      ok = ok && c.has_value();
      const BusyBeaverEntry& e = universe_.plain(dn).bb_entry(k);
      t.rows.push_back({str(dn), str(k), bb(universe_, dn, k).str(), e.champion.str(), str(e.champion_steps), str(c)});
    }
    t.status = ok ? ClaimStatus::Pass : ClaimStatus::Fail;
    t.min_slack = 0;
    t.note = "largest c with bb(k - c) steps still exposing the bb(k) champion; finite for every k <= " + std::to_string(k_max) + " required";
    return t;
  }

  if (id == "wss.bb_equivalence") {
    t.columns = {"x", "k'_x", "support", "slowest_stabilization", "bb(k'_x)", "c_emp"};
    for (const BitString& x : covered(dn)) {
      const auto pp = models_.construct_p_prime(x, s_lo);
      if (!pp) {
        t.rows.push_back({x.str(), "-", "-", "-", "-", "-"});
        continue;
      }
      const std::int64_t k = *pp->kprime;
      const OutputIndex& idx = universe_.index(dn, static_cast<std::uint64_t>(k));
      const std::uint64_t t_now = bb_time(universe_, dn, k);
      std::uint64_t slowest = 0;
      std::size_t support = 0;
      for (std::uint64_t i = 0; i < pp->model.measure.size(); ++i) {
        if (pp->model.measure[i].is_zero()) continue;
        ++support;
        if (const HistoryPoint* hp = idx.best(BitString::from_uint(i, dn), t_now)) slowest = std::max(slowest, hp->steps);
      }
      std::optional<std::int64_t> c_emp;
      for (std::int64_t c = 0; c <= k + 1; ++c)
        if (bb_time(universe_, dn, k - c) <= slowest) {
          c_emp = c;
          break;
        }
      t.rows.push_back({x.str(), str(k), str(static_cast<std::uint64_t>(support)), str(slowest), bb(universe_, dn, static_cast<std::uint32_t>(k)).str(), str(c_emp)});
    }
    t.status = ClaimStatus::Info;
    t.note = "c_emp: least c with bb(k'_x - c) at most the slowest stabilization time in the support of P'_x (slack " + std::to_string(s_lo) + ")";
    return t;
  }

  if (id == "tetration") {
    t.columns = {"x", "trace", "converged", "fixpoint", "slog(x)", "C(x)", "length_excess", "fixpoint_minus_C"};
    return sweep_claim(std::move(t), s_lo, s_hi, [&](std::int64_t s) {
      SweepPoint p;
      p.holds = true;
      std::int64_t c_len = 0, c_fix = 0;
      for (const BitString& x : covered(dn)) {
        const TetrationTrace tr = tetration_iterate(universe_, x, s);
        const BigInt v = nat_encode(x);
        const std::int64_t sl = slog(v < 1 ? BigInt(1) : v);
        const CodeLength c = c_plain(universe_, x);
        std::string trace;
        for (const CodeLength& k : tr.trace) trace += (trace.empty() ? "" : " ") + k.str();
        const std::int64_t excess = static_cast<std::int64_t>(tr.trace.size()) - sl;
        std::optional<std::int64_t> fix_gap;
        if (tr.fixpoint && c.is_finite()) fix_gap = *tr.fixpoint - c.bits();
        if (!tr.converged || !fix_gap || excess > s || std::abs(*fix_gap) > s) p.holds = false;
        c_len = std::max(c_len, excess);
        if (fix_gap) c_fix = std::max(c_fix, std::abs(*fix_gap));
        p.rows.push_back({x.str(), trace, str(tr.converged), str(tr.fixpoint), str(sl), str(c), str(excess), str(fix_gap)});
      }
      p.detail = "c=" + std::to_string(c_len) + " c'=" + std::to_string(c_fix);
      return p;
    });
  }

  if (id == "additivity") {
    t.columns = {"x", "y", "K(x,y)", "K(x)", "K(y|x*)", "deficiency"};
    std::optional<std::int64_t> worst;
    for (const BitString& x : covered(dn)) {
      for (const BitString& y : all_strings(dn)) {
        const Additivity a = additivity_check(universe_, x, y);
        if (a.deficiency && (!worst || std::abs(*a.deficiency) > *worst)) worst = std::abs(*a.deficiency);
        t.rows.push_back({x.str(), y.str(), str(a.k_pair), str(a.k_x), str(a.k_y_given_xstar), str(a.deficiency)});
      }
    }
    t.status = ClaimStatus::Info;
    t.note = "max |deficiency| = " + str(worst) + "; pairs are 2n-bit concatenations in the length-n domain";
    return t;
  }

  if (id == "census") {
    t.columns = {"n", "w", "K", "slack", "programs"};
    std::size_t biggest = 0;
    for (std::uint32_t n = cfg_.n_min; n <= cfg_.n_max; ++n)
      for (const BitString& x : covered(n))
        for (std::int64_t s = 0; s <= std::min<std::int64_t>(2, s_hi); ++s) {
          const auto progs = witness_census(universe_, x, s);
          biggest = std::max(biggest, progs.size());
          t.rows.push_back({str(n), x.str(), str(universe_.index(n, BitString()).k(x)), str(s), str(static_cast<std::uint64_t>(progs.size()))});
        }
    t.status = ClaimStatus::Info;
    t.note = "largest census at slack <= 2: " + std::to_string(biggest);
    return t;
  }

  throw ConfigError("unknown claim id: " + id);
}

// ---------------------------------------------------------------------------

std::string Lab::cmd_inspect(const BitString& x) {
  const auto n = static_cast<std::uint32_t>(x.size());
  if (n < cfg_.n_min || n > cfg_.n_max) throw ConfigError("length of x outside the configured n range");
  require_base_domains();
  std::ostringstream os;
  const OutputIndex& idx = universe_.index(n, BitString());
  os << "x=" << x.str() << " n=" << n << " config_hash=" << cfg_.hash() << "\n";
  os << "K_t history (steps,length,witness):\n";
  for (const HistoryPoint& h : idx.history(x)) os << "  " << h.steps << "," << h.length << "," << h.program.str() << " " << disassemble(h.program) << "\n";
  const KResult k = k_budget(universe_, x);
  os << "K=" << k.k.str() << " witness=" << (k.witness ? k.witness->str() : "-") << " C=" << c_plain(universe_, x).str() << "\n";
  os << "slack,k_x,k'_x\n";
  for (std::int64_t s = cfg_.slack_min; s <= cfg_.slack_max; ++s) {
    const DepthProfile m = m_depth(universe_, x, s);
    std::optional<std::int64_t> kp;
    if (n == cfg_.deep_n || !cfg_.cache_dir.empty()) kp = bb_depth(universe_, x, s).kprime_x;
    os << s << "," << str(m.k_x) << "," << str(kp) << "\n";
  }
  os << "structure sweep (alpha,h_x):";
  for (const auto& [a, h] : models_.structure_sweep(x)) os << " " << a << ":" << str(h);
  os << "\n";
  const std::int64_t s0 = cfg_.slack_min;
  for (ModelKind kind : {ModelKind::Set, ModelKind::Semimeasure, ModelKind::Function})
    for (Definition d : {Definition::SS, Definition::WSS, Definition::TM}) {
      const SearchResult r = models_.search_minimal(x, kind, d, s0);
      os << "minimal " << to_string(d) << " " << to_string(kind) << ": "
         << (r.verdict ? to_csv_row(*r.verdict) + " program=" + r.verdict->program.str() : "none after " + std::to_string(r.examined) + " candidates")
         << "\n";
    }
  if (const auto pp = models_.construct_p_prime(x, s0)) {
    os << "P'_x: k'=" << str(pp->kprime) << " c=" << pp->c << " mass=" << pp->model.mass().str() << "\n";
    for (std::uint64_t i = 0; i < pp->model.measure.size(); ++i)
      if (!pp->model.measure[i].is_zero()) os << "  " << BitString::from_uint(i, n).str() << " " << pp->model.measure[i].str() << "\n";
  } else {
    os << "P'_x: no k'_x within the bb cap\n";
  }
  const TetrationTrace tr = tetration_iterate(universe_, x, s0);
  os << "tetration:";
  for (const CodeLength& c : tr.trace) os << " " << c.str();
  os << (tr.converged ? " (converged)" : " (not converged)") << "\n";
  return os.str();
}

std::string Lab::cmd_bb() {
  std::ostringstream os;
  os << "n,k,bb,champion,champion_steps,probe_c\n";
  for (std::uint32_t n = cfg_.n_min; n <= cfg_.n_max; ++n)
    for (std::uint32_t k = 0; k <= cfg_.plain.bb_cap; ++k) {
      const BusyBeaverEntry& e = universe_.plain(n).bb_entry(k);
      os << n << "," << k << "," << bb(universe_, n, k).str() << "," << e.champion.str() << "," << e.champion_steps << ","
         << str(bb_time_probe(universe_, n, k)) << "\n";
    }
  return os.str();
}

std::string Lab::cmd_depth() {
  require_base_domains();
  std::ostringstream os;
  os << "n,x,slack,K,k_x,k'_x\n";
  for (std::uint32_t n = cfg_.n_min; n <= cfg_.n_max; ++n)
    for (const BitString& x : covered(n))
      for (std::int64_t s = cfg_.slack_min; s <= cfg_.slack_max; ++s) {
        const DepthProfile m = m_depth(universe_, x, s);
        const DepthProfile b = bb_depth(universe_, x, s);
        os << n << "," << x.str() << "," << s << "," << universe_.index(n, BitString()).k(x).str() << "," << str(m.k_x) << ","
           << str(b.kprime_x) << "\n";
      }
  return os.str();
}

}  // namespace aitlab
