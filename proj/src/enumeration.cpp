#include "aitlab/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

namespace aitlab {

bool canonical_less(const HaltRecord& a, const HaltRecord& b) {
  if (a.steps != b.steps) return a.steps < b.steps;
  return shortlex_less(a.program, b.program);
}

MachineConfig HaltingDB::machine_config() const {
  MachineConfig cfg;
  cfg.max_steps = budgets.max_steps;
  cfg.max_program_bits = budgets.max_program_bits;
  cfg.condition = condition;
  cfg.length_param = n;
  return cfg;
}

Dyadic HaltingDB::kraft_sum() const {
  // Accumulate on a common denominator, normalize once.
  const std::int64_t exp = budgets.max_program_bits;
  BigInt total = 0;
  for (const HaltRecord& r : records) total += BigInt(1) << static_cast<unsigned>(exp - static_cast<std::int64_t>(r.program.size()));
  return Dyadic(total, exp);
}

const HaltRecord* HaltingDB::find(const BitString& program) const {
  for (const HaltRecord& r : records)
    if (r.program == program) return &r;
  return nullptr;
}

BitString program_bits(const Machine::Program& ops) {
  BitString bits;
  bits.reserve(ops.size() * kOpcodeBits);
  for (Opcode op : ops) bits.append(opcode_bits(op));
  return bits;
}

namespace {

constexpr Opcode kAllOpcodes[] = {Opcode::Right, Opcode::Left, Opcode::Inc,  Opcode::Dec,
                                  Opcode::Open,  Opcode::Close, Opcode::Emit, Opcode::Halt};

struct DomainWalker {
  std::uint32_t max_opcodes;
  std::vector<HaltRecord>* out;

  // Runs m to its next block and either records it, drops it, or returns it for forking.
  bool settle(Machine& m) const {
    const Machine::State s = m.run();
    if (s == Machine::State::Halted) {
      out->push_back(HaltRecord{m.program_bits(), m.steps(), m.output()});
      return false;
    }
    if (s != Machine::State::NeedOpcode) return false;
    if (m.opcodes_read() >= max_opcodes) return false;
    return m.steps() < m.max_steps();  // otherwise every child runs out of steps
  }

  void walk(Machine m) const {
    if (!settle(m)) return;
    for (Opcode op : kAllOpcodes) {
      Machine child = m;
      child.feed(op);
      walk(std::move(child));
    }
  }
};

}  // namespace

HaltingDB enumerate_domain(std::uint32_t n, const BitString& condition, const Budgets& budgets, unsigned workers) {
  if (budgets.max_program_bits % kOpcodeBits != 0) throw ConfigError("max_program_bits must be a multiple of 3");
  if (budgets.max_program_bits > kMaxProgramBitsCap) throw ConfigError("max_program_bits above hard cap");
  if (budgets.max_steps > kMaxStepsCap) throw ConfigError("max_steps above hard cap");
  workers = std::max(1U, workers);

  HaltingDB db;
  db.n = n;
  db.condition = condition;
  db.budgets = budgets;
  const MachineConfig cfg = db.machine_config();
  const std::uint32_t max_opcodes = budgets.max_program_bits / kOpcodeBits;

  std::vector<HaltRecord> shallow;
  DomainWalker shallow_walker{max_opcodes, &shallow};
  std::vector<Machine> frontier;
  {
    Machine root(cfg);
    if (shallow_walker.settle(root)) frontier.push_back(std::move(root));
  }
  // Expand breadth-first until there is enough independent work to share.
  const std::size_t target = workers == 1 ? 1 : 64 * static_cast<std::size_t>(workers);
  while (!frontier.empty() && frontier.size() < target) {
    std::vector<Machine> next;
    for (const Machine& m : frontier) {
      for (Opcode op : kAllOpcodes) {
        Machine child = m;
        child.feed(op);
        if (shallow_walker.settle(child)) next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }

  std::vector<std::vector<HaltRecord>> per_node(frontier.size());
  std::atomic<std::size_t> cursor{0};
  const auto work = [&] {
    for (std::size_t i; (i = cursor.fetch_add(1)) < frontier.size();) {
      DomainWalker w{max_opcodes, &per_node[i]};
      for (Opcode op : kAllOpcodes) {
        Machine child = frontier[i];
        child.feed(op);
        w.walk(std::move(child));
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  db.records = std::move(shallow);
  for (auto& chunk : per_node) std::move(chunk.begin(), chunk.end(), std::back_inserter(db.records));
  std::sort(db.records.begin(), db.records.end(), canonical_less);
  return db;
}

namespace {

// (steps, cumulative mass) after each record with an n-bit output.
std::vector<std::pair<std::uint64_t, Dyadic>> mass_curve(const HaltingDB& db) {
  const std::int64_t exp = db.budgets.max_program_bits;
  std::vector<std::pair<std::uint64_t, Dyadic>> curve;
  BigInt total = 0;
  for (const HaltRecord& r : db.records) {
    if (r.output.size() != db.n) continue;
    total += BigInt(1) << static_cast<unsigned>(exp - static_cast<std::int64_t>(r.program.size()));
    if (!curve.empty() && curve.back().first == r.steps) curve.pop_back();
    curve.emplace_back(r.steps, Dyadic(total, exp));
  }
  return curve;
}

}  // namespace

Dyadic omega_t(const HaltingDB& db, std::uint64_t t) {
  if (t > db.budgets.max_steps) throw std::out_of_range("omega_t: t beyond the step budget");
  const std::int64_t exp = db.budgets.max_program_bits;
  BigInt total = 0;
  for (const HaltRecord& r : db.records) {
    if (r.steps > t) break;
    if (r.output.size() == db.n)
      total += BigInt(1) << static_cast<unsigned>(exp - static_cast<std::int64_t>(r.program.size()));
  }
  return Dyadic(total, exp);
}

Dyadic omega_final(const HaltingDB& db) { return omega_t(db, db.budgets.max_steps); }

BitString omega_prefix(const HaltingDB& db, std::size_t j) {
  if (j < 1) throw std::invalid_argument("omega_prefix: j must be at least 1");
  return omega_final(db).leading_bits(j);
}

std::optional<std::uint64_t> time_to_reach(const HaltingDB& db, const Dyadic& target) {
  if (target <= Dyadic()) return 0;
  for (const auto& [steps, mass] : mass_curve(db))
    if (mass >= target) return steps;
  return std::nullopt;
}

std::uint64_t t_k(const HaltingDB& db, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("t_k: k must be non-negative");
  const Dyadic slack = Dyadic::pow2_neg(k);
  const Dyadic final_mass = omega_final(db);
  if (final_mass <= slack) return 0;
  // omega_final - omega_t <= 2^-k  <=>  omega_t >= omega_final - 2^-k
  return *time_to_reach(db, final_mass - slack);
}

BitString halting_sequence(const MachineConfig& cfg, std::uint64_t i_max) {
  BitString h;
  h.reserve(i_max);
  for (std::uint64_t i = 0; i < i_max; ++i) {
    const BitString word = nat_decode(i);
    const ExecOutcome out = run_prefix(word, cfg);
    h.push_back(out.halted() && out.bits_read == word.size());
  }
  return h;
}

std::map<BitString, BitString> beta_encoding(const HaltingDB& db) {
  if (db.records.empty()) throw std::invalid_argument("beta_encoding: empty domain");
  std::map<BitString, BitString> beta;
  const std::int64_t exp = db.budgets.max_program_bits;
  BigInt alpha = 0;
  for (const HaltRecord& r : db.records) {
    alpha += BigInt(1) << static_cast<unsigned>(exp - static_cast<std::int64_t>(r.program.size()));
    beta.emplace(r.program, Dyadic(alpha, exp).leading_bits(r.program.size()));
  }
  return beta;
}

namespace {
Dyadic value_of_bits(const BitString& bits) {
  BigInt v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) v = (v << 1) | (bits[i] ? 1 : 0);
  return Dyadic(v, static_cast<std::int64_t>(bits.size()));
}
}  // namespace

HaltingDecode omega_to_halting(const BitString& omega_bits, const HaltingDB& db, std::size_t slack) {
  const Dyadic target = value_of_bits(omega_bits);
  const std::optional<std::uint64_t> t = time_to_reach(db, target);
  if (!t) throw InvalidPrefix("omega_to_halting: prefix exceeds the final halting mass");
  HaltingDecode out;
  out.time = *t;
  out.length_bound = omega_bits.size() > slack ? omega_bits.size() - slack : 0;
  for (const HaltRecord& r : db.records)
    if (r.program.size() < out.length_bound && r.steps <= out.time) out.halting.push_back(r.program);
  std::sort(out.halting.begin(), out.halting.end(), shortlex_less);
  return out;
}

std::size_t decode_slack_needed(const HaltingDB& db, std::size_t j) {
  const std::uint64_t t = *time_to_reach(db, value_of_bits(omega_prefix(db, j)));
  std::size_t need = 0;
  for (const HaltRecord& r : db.records)
    if (r.steps > t && r.program.size() < j) need = std::max(need, j - r.program.size());
  return need;
}

// ---------------------------------------------------------------------------
// Persistence

std::string serialize(const HaltingDB& db) {
  std::string s;
  s.reserve(64 + db.records.size() * 40);
  s += "AITLAB-HDB v1\n";
  s += "machine=" + db.machine_version + "\n";
  s += "n=" + std::to_string(db.n) + "\n";
  s += "cond=" + db.condition.str() + "\n";
  s += "steps=" + std::to_string(db.budgets.max_steps) + "\n";
  s += "bits=" + std::to_string(db.budgets.max_program_bits) + "\n";
  s += "kraft=" + db.kraft_sum().str() + "\n";
  for (const HaltRecord& r : db.records) {
    s += r.program.str();
    s += ' ';
    s += std::to_string(r.steps);
    s += ' ';
    s += r.output.str();
    s += '\n';
  }
  return s;
}

namespace {

std::string expect_field(std::istream& in, const std::string& key) {
  std::string line;
  if (!std::getline(in, line) || line.rfind(key + "=", 0) != 0) throw FormatError("expected header field '" + key + "'");
  return line.substr(key.size() + 1);
}

std::uint64_t parse_uint(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used);
    if (used != text.size()) throw FormatError("malformed " + what);
    return v;
  } catch (const std::logic_error&) {
    throw FormatError("malformed " + what + ": '" + text + "'");
  }
}

}  // namespace

HaltingDB deserialize(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "AITLAB-HDB v1") throw FormatError("not an AITLAB-HDB v1 file");
  HaltingDB db;
  db.machine_version = expect_field(in, "machine");
  if (db.machine_version != kMachineVersion)
    throw FormatError("machine version mismatch: file has " + db.machine_version + ", expected " + std::string(kMachineVersion));
  db.n = static_cast<std::uint32_t>(parse_uint(expect_field(in, "n"), "n"));
  try {
    db.condition = BitString::parse(expect_field(in, "cond"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  db.budgets.max_steps = parse_uint(expect_field(in, "steps"), "steps");
  db.budgets.max_program_bits = static_cast<std::uint32_t>(parse_uint(expect_field(in, "bits"), "bits"));
  Dyadic kraft;
  try {
    kraft = Dyadic::parse(expect_field(in, "kraft"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string prog, steps, output, extra;
    if (!(fields >> prog >> steps >> output) || (fields >> extra)) throw FormatError("malformed record: '" + line + "'");
    try {
      HaltRecord r{BitString::parse(prog), parse_uint(steps, "steps"), BitString::parse(output)};
      if (r.program.empty() || r.program.size() > db.budgets.max_program_bits) throw FormatError("malformed record: '" + line + "'");
      db.records.push_back(std::move(r));
    } catch (const std::invalid_argument&) {
      throw FormatError("malformed record: '" + line + "'");
    }
  }
  if (db.kraft_sum() != kraft) throw FormatError("checksum mismatch: kraft sum " + db.kraft_sum().str() + " != " + kraft.str());
  if (!std::is_sorted(db.records.begin(), db.records.end(), canonical_less))
    throw FormatError("records are not in canonical order");
  return db;
}

void store(const HaltingDB& db, const std::filesystem::path& path) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << serialize(db);
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

HaltingDB load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

// ---------------------------------------------------------------------------

DomainCache::DomainCache(Budgets budgets, unsigned workers, std::optional<std::filesystem::path> dir)
    : budgets_(budgets), workers_(workers), dir_(std::move(dir)) {
  if (dir_) std::filesystem::create_directories(*dir_);
}

std::string DomainCache::cache_key(std::uint32_t n, const BitString& condition, const Budgets& b) {
  return std::string(kMachineVersion) + "_n" + std::to_string(n) + "_c" + (condition.empty() ? "e" : condition.raw()) + "_s" +
         std::to_string(b.max_steps) + "_b" + std::to_string(b.max_program_bits) + ".hdb";
}

HaltingDB DomainCache::fetch(std::uint32_t n, const BitString& condition) const {
  if (!dir_) return enumerate_domain(n, condition, budgets_, workers_);
  const auto path = *dir_ / cache_key(n, condition, budgets_);
  if (std::filesystem::exists(path)) return load(path);
  HaltingDB db = enumerate_domain(n, condition, budgets_, workers_);
  store(db, path);
  return db;
}

std::shared_ptr<const HaltingDB> DomainCache::get(std::uint32_t n, const BitString& condition) {
  std::lock_guard lock(mu_);
  const auto key = std::make_pair(n, condition.raw());
  if (auto it = dbs_.find(key); it != dbs_.end()) return it->second;
  auto db = std::make_shared<const HaltingDB>(fetch(n, condition));
  dbs_.emplace(key, db);
  return db;
}

std::size_t DomainCache::size() const {
  std::lock_guard lock(mu_);
  return dbs_.size();
}

// ---------------------------------------------------------------------------

namespace {

struct PlainWalker {
  std::uint32_t max_opcodes;
  const std::function<void(const PlainRun&)>* visit;

  void walk(Machine m) const {
    const Machine::State s = m.run();
    if (s == Machine::State::Halted) {
      (*visit)(PlainRun{&m.program(), &m.output(), m.steps(), true});
      return;
    }
    if (s != Machine::State::NeedOpcode) return;
    (*visit)(PlainRun{&m.program(), &m.output(), m.steps(), false});
    if (m.opcodes_read() >= max_opcodes || m.steps() >= m.max_steps()) return;
    for (Opcode op : kAllOpcodes) {
      Machine child = m;
      child.feed(op);
      walk(std::move(child));
    }
  }
};

}  // namespace

void enumerate_plain(const MachineConfig& cfg, std::uint32_t max_opcodes, const std::function<void(const PlainRun&)>& visit) {
  PlainWalker{max_opcodes, &visit}.walk(Machine(cfg));
}

}  // namespace aitlab
