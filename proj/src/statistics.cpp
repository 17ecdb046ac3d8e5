#include "aitlab/statistics.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace aitlab {

namespace {

constexpr std::uint32_t kMaxModelN = 16;

void check_n(std::uint32_t n) {
  if (n > kMaxModelN) throw std::invalid_argument("model length parameter above " + std::to_string(kMaxModelN));
}

std::uint64_t strings_of_length(std::uint32_t n) { return std::uint64_t{1} << n; }

/// ceil(log2 v) for v >= 1.
std::int64_t ceil_log2_int(std::uint64_t v) {
  if (v <= 1) return 0;
  std::int64_t r = 0;
  while ((std::uint64_t{1} << r) < v) ++r;
  return r;
}

bool better(const Model& a, const Model& b) {
  if (a.complexity != b.complexity) return a.complexity < b.complexity;
  return shortlex_less(a.program, b.program);
}

}  // namespace

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Set: return "set";
    case ModelKind::Semimeasure: return "semimeasure";
    case ModelKind::Function: return "function";
  }
  return "?";
}

std::string to_string(MachineMode m) { return m == MachineMode::Prefix ? "prefix" : "plain"; }

std::string to_string(Definition d) {
  switch (d) {
    case Definition::SS: return "SS";
    case Definition::WSS: return "WSS";
    case Definition::TM: return "TM";
  }
  return "?";
}

std::string to_string(VerdictState v) {
  switch (v) {
    case VerdictState::Pass: return "pass";
    case VerdictState::Fail: return "fail";
    case VerdictState::NotInSupport: return "not-in-support";
    case VerdictState::OutOfBudget: return "out-of-budget";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string& s) {
  if (s == "set") return ModelKind::Set;
  if (s == "semimeasure") return ModelKind::Semimeasure;
  if (s == "function") return ModelKind::Function;
  throw std::invalid_argument("unknown model kind: " + s);
}

MachineMode parse_machine_mode(const std::string& s) {
  if (s == "prefix") return MachineMode::Prefix;
  if (s == "plain") return MachineMode::Plain;
  throw std::invalid_argument("unknown machine mode: " + s);
}

// ---------------------------------------------------------------------------
// Model

BitString Model::key() const {
  BitString k;
  switch (kind) {
    case ModelKind::Set:
      for (bool b : members) k.push_back(b);
      break;
    case ModelKind::Semimeasure:
      // One spare bit per entry so that an entry equal to 1 is representable.
      for (const Dyadic& p : measure) {
        const BigInt num = p.floor_scaled(width);
        if (Dyadic(num, width) != p) throw std::logic_error("semimeasure entry not representable at its width");
        for (std::uint32_t i = width + 1; i-- > 0;) k.push_back(boost::multiprecision::bit_test(num, i));
      }
      break;
    case ModelKind::Function:
      if (function.size() != strings_of_length(data_width)) throw std::logic_error("function model without a fixed-width domain");
      for (const auto& [d, y] : function) {
        if (d.size() != data_width) throw std::logic_error("function model without a fixed-width domain");
        k.append(y);
      }
      break;
  }
  return k;
}

std::size_t Model::set_size() const { return static_cast<std::size_t>(std::count(members.begin(), members.end(), true)); }

Dyadic Model::mass() const {
  Dyadic m;
  for (const Dyadic& p : measure) m += p;
  return m;
}

bool Model::in_support(const BitString& x) const { return log_term(x).has_value(); }

std::optional<std::int64_t> Model::log_term(const BitString& x) const {
  if (x.size() != n) return std::nullopt;
  switch (kind) {
    case ModelKind::Set:
      if (!members.at(x.to_uint())) return std::nullopt;
      return ceil_log2_int(set_size());
    case ModelKind::Semimeasure: {
      const Dyadic& p = measure.at(x.to_uint());
      if (p.is_zero()) return std::nullopt;
      return -p.floor_log2();  // ceil(-log2 p)
    }
    case ModelKind::Function: {
      std::optional<std::int64_t> best;
      for (const auto& [d, y] : function)
        if (y == x && (!best || static_cast<std::int64_t>(d.size()) < *best)) best = static_cast<std::int64_t>(d.size());
      return best;
    }
  }
  return std::nullopt;
}

Model make_set_model(std::uint32_t n, const std::vector<BitString>& elements) {
  check_n(n);
  Model z;
  z.kind = ModelKind::Set;
  z.n = n;
  z.members.assign(strings_of_length(n), false);
  for (const BitString& e : elements) {
    if (e.size() != n) throw ModelError("set element of the wrong length: " + e.str());
    z.members[e.to_uint()] = true;
  }
  if (z.set_size() == 0) throw ModelError("empty set model");
  return z;
}

Model make_semimeasure_model(std::uint32_t n, std::vector<Dyadic> p) {
  check_n(n);
  if (p.size() != strings_of_length(n)) throw ModelError("semimeasure table of the wrong size");
  Model z;
  z.kind = ModelKind::Semimeasure;
  z.n = n;
  std::int64_t width = 0;
  for (const Dyadic& v : p) {
    if (v.is_negative()) throw ModelError("negative semimeasure entry");
    width = std::max(width, v.exponent());
  }
  z.width = static_cast<std::uint32_t>(width);
  z.measure = std::move(p);
  if (z.mass() > Dyadic::from_int(1)) throw ModelError("semimeasure mass above 1");
  return z;
}

Model decode_set_output(const BitString& output, std::uint32_t n) {
  if (n == 0 || output.empty() || output.size() % n != 0) throw ModelError("output length is not a positive multiple of n");
  std::vector<BitString> blocks;
  for (std::size_t i = 0; i < output.size(); i += n) blocks.push_back(output.substr(i, n));
  return make_set_model(n, blocks);
}

Model decode_semimeasure_output(const BitString& output, std::uint32_t n, std::uint32_t width) {
  check_n(n);
  const std::uint64_t entries = strings_of_length(n);
  if (width == 0 || output.size() != width * entries) throw ModelError("output length is not width * 2^n");
  std::vector<Dyadic> p;
  p.reserve(entries);
  BigInt total = 0;
  for (std::uint64_t i = 0; i < entries; ++i) {
    BigInt num = 0;
    for (std::uint32_t b = 0; b < width; ++b) num = (num << 1) | (output[i * width + b] ? 1 : 0);
    total += num;
    p.emplace_back(num, width);
  }
  if (total > (BigInt(1) << width)) throw ModelError("semimeasure mass above 1");
  Model z = make_semimeasure_model(n, std::move(p));
  z.width = width;
  return z;
}

std::optional<BitString> run_model_program(const BitString& program, std::uint32_t n, const BitString& condition,
                                           MachineMode mode, const Budgets& budgets) {
  MachineConfig cfg;
  cfg.max_steps = budgets.max_steps;
  cfg.max_program_bits = budgets.max_program_bits - budgets.max_program_bits % kOpcodeBits;
  cfg.condition = condition;
  cfg.length_param = n;
  if (mode == MachineMode::Prefix) {
    const ExecOutcome out = run_prefix(program, cfg);
    if (!out.halted() || out.bits_read != program.size()) return std::nullopt;
    return out.output;
  }
  const ExecOutcome out = run_plain(program, cfg);
  if (!out.halted()) return std::nullopt;
  return out.output;
}

Model decode_set_model(const BitString& program, std::uint32_t n, MachineMode mode, const Budgets& budgets) {
  const auto out = run_model_program(program, n, {}, mode, budgets);
  if (!out) throw ModelError("program does not halt within budget");
  Model z = decode_set_output(*out, n);
  z.mode = mode;
  z.program = program;
  return z;
}

Model decode_semimeasure_model(const BitString& program, std::uint32_t n, std::uint32_t width, MachineMode mode,
                               const Budgets& budgets) {
  const auto out = run_model_program(program, n, {}, mode, budgets);
  if (!out) throw ModelError("program does not halt within budget");
  Model z = decode_semimeasure_output(*out, n, width);
  z.mode = mode;
  z.program = program;
  return z;
}

Model decode_function_model(const BitString& program, std::uint32_t n, std::uint32_t m, MachineMode mode,
                            const Budgets& budgets) {
  if (m > 16) throw std::invalid_argument("data width above 16");
  Model z;
  z.kind = ModelKind::Function;
  z.mode = mode;
  z.n = n;
  z.data_width = m;
  z.program = program;
  for (std::uint64_t i = 0; i < strings_of_length(m); ++i) {
    const BitString d = BitString::from_uint(i, m);
    const auto out = run_model_program(program, n, d, mode, budgets);
    if (!out) throw FunctionRejected("no halt within budget on d = " + d.str(), d);
    if (out->size() != n) throw FunctionRejected("output of the wrong length on d = " + d.str(), d);
    z.function.emplace(d, *out);
  }
  return z;
}

// ---------------------------------------------------------------------------
// Converters

ShannonFanoCode shannon_fano(const std::vector<Dyadic>& p, std::uint32_t n) {
  if (p.size() != strings_of_length(n)) throw std::invalid_argument("shannon_fano: table size is not 2^n");
  ShannonFanoCode sf;
  Dyadic below;  // sum of P(z) over z < y
  for (std::uint64_t i = 0; i < p.size(); ++i) {
    if (!p[i].is_zero()) {
      const std::int64_t len = -p[i].floor_log2() + 1;
      const BigInt word = below.ceil_scaled(len);
      BitString code;
      for (std::int64_t b = len; b-- > 0;) code.push_back(boost::multiprecision::bit_test(word, static_cast<unsigned>(b)));
      const BitString y = BitString::from_uint(i, n);
      sf.code.emplace(y, code);
      sf.decode.emplace(code, y);
    }
    below += p[i];
  }
  return sf;
}

Model shannon_fano_convert(const Model& semimeasure) {
  if (semimeasure.kind != ModelKind::Semimeasure) throw std::invalid_argument("shannon_fano_convert: not a semimeasure model");
  const ShannonFanoCode sf = shannon_fano(semimeasure.measure, semimeasure.n);
  Model f;
  f.kind = ModelKind::Function;
  f.mode = semimeasure.mode;
  f.n = semimeasure.n;
  f.function = sf.decode;
  return f;
}

Model func_to_measure(const Model& function, std::uint32_t width) {
  if (function.kind != ModelKind::Function) throw std::invalid_argument("func_to_measure: not a function model");
  const std::uint32_t n = function.n;
  check_n(n);
  std::vector<std::optional<std::size_t>> shortest(strings_of_length(n));
  std::uint32_t needed = width;
  for (const auto& [d, y] : function.function) {
    auto& s = shortest.at(y.to_uint());
    if (!s || d.size() < *s) s = d.size();
    needed = std::max(needed, static_cast<std::uint32_t>(d.size()) + 1);
  }
  std::vector<Dyadic> p;
  p.reserve(shortest.size());
  for (std::uint64_t i = 0; i < shortest.size(); ++i) {
    if (shortest[i]) {
      p.push_back(Dyadic::pow2_neg(static_cast<std::int64_t>(*shortest[i]) + 1));
    } else {
      const BigInt y1 = nat_encode(BitString::from_uint(i, n)) + 1;
      // floor(2^width / (4 (y+1)^2)) / 2^width
      p.emplace_back((BigInt(1) << width) / (4 * y1 * y1), width);
    }
  }
  Dyadic total;
  for (const Dyadic& v : p) total += v;
  if (total > Dyadic::from_int(1)) throw std::logic_error("func_to_measure: mass above 1");
  Model z = make_semimeasure_model(n, std::move(p));
  z.width = needed;
  z.mode = function.mode;
  return z;
}

Model func_to_set(const Model& function) {
  if (function.kind != ModelKind::Function) throw std::invalid_argument("func_to_set: not a function model");
  std::vector<BitString> image;
  for (const auto& [d, y] : function.function) image.push_back(y);
  Model z = make_set_model(function.n, image);
  z.mode = function.mode;
  return z;
}

// ---------------------------------------------------------------------------
// ModelIndex

ModelIndex::ModelIndex(ModelKind kind, MachineMode mode, std::uint32_t n, std::uint32_t param)
    : kind_(kind), mode_(mode), n_(n), param_(param) {}

void ModelIndex::offer(Model model) {
  BitString key = model.key();
  auto it = models_.find(key);
  if (it == models_.end()) {
    models_.emplace(std::move(key), std::move(model));
  } else if (better(model, it->second)) {
    it->second = std::move(model);
  }
}

void ModelIndex::finish() {
  ordered_.clear();
  for (const auto& [k, z] : models_) ordered_.push_back(&z);
  std::sort(ordered_.begin(), ordered_.end(), [](const Model* a, const Model* b) { return better(*a, *b); });
}

const Model* ModelIndex::find(const BitString& key) const {
  const auto it = models_.find(key);
  return it == models_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Verdicts

std::string verdict_csv_header() { return "defn,kind,n,x,slack,complexity,logterm,rhs,verdict,deficiency"; }

std::string to_csv_row(const Verdict& v) {
  std::ostringstream os;
  os << to_string(v.defn) << ',' << to_string(v.kind) << ',' << v.n << ',' << v.x.str() << ',' << v.slack << ','
     << v.complexity.str() << ',' << (v.log_term ? std::to_string(*v.log_term) : "-") << ',' << v.rhs.str() << ','
     << to_string(v.state) << ',' << (v.deficiency ? std::to_string(*v.deficiency) : "-");
  return os.str();
}

// ---------------------------------------------------------------------------
// ModelLibrary

ModelLibrary::ModelLibrary(Universe& u, std::uint32_t width_extra, std::uint32_t max_data_width)
    : u_(u), width_extra_(width_extra), max_data_width_(max_data_width) {}

const ModelIndex& ModelLibrary::index(std::uint32_t n, MachineMode mode, ModelKind kind, std::uint32_t m) {
  check_n(n);
  if (kind != ModelKind::Function) m = 0;
  const std::uint32_t param = kind == ModelKind::Semimeasure ? width(n) : (kind == ModelKind::Function ? m : 0);
  const auto key = std::make_tuple(n, static_cast<int>(mode), static_cast<int>(kind), param);
  if (auto it = indexes_.find(key); it != indexes_.end()) return *it->second;

  // Set, semimeasure and constant-function models share the unconditioned
  // enumeration; build all three at once.
  const bool shared = kind != ModelKind::Function || m == 0;
  auto set_idx = std::make_unique<ModelIndex>(ModelKind::Set, mode, n, 0);
  auto sm_idx = std::make_unique<ModelIndex>(ModelKind::Semimeasure, mode, n, width(n));
  auto fn_idx = std::make_unique<ModelIndex>(ModelKind::Function, mode, n, m);
  const std::uint32_t w = width(n);
  const Budgets& budgets = u_.budgets();
  const Budgets plain_budgets{u_.plain_budgets().max_steps, u_.plain_budgets().max_bits};

  const auto consider = [&](const BitString& program, const BitString& output) {
    const auto complexity = CodeLength(static_cast<std::int64_t>(program.size()));
    if (shared) {
      if (n > 0 && !output.empty() && output.size() % n == 0) {
        Model z = decode_set_output(output, n);
        z.mode = mode;
        z.program = program;
        z.complexity = complexity;
        set_idx->offer(std::move(z));
      }
      if (output.size() == w * strings_of_length(n)) {
        try {
          Model z = decode_semimeasure_output(output, n, w);
          z.mode = mode;
          z.program = program;
          z.complexity = complexity;
          sm_idx->offer(std::move(z));
        } catch (const ModelError&) {
        }
      }
    }
    if (output.size() != n) return;
    Model f;
    if (m == 0) {
      f.kind = ModelKind::Function;
      f.mode = mode;
      f.n = n;
      f.program = program;
      f.function.emplace(BitString(), output);
    } else {
      try {
        f = decode_function_model(program, n, m, mode, mode == MachineMode::Prefix ? budgets : plain_budgets);
      } catch (const ModelError&) {
        return;
      }
    }
    f.complexity = complexity;
    fn_idx->offer(std::move(f));
  };

  const BitString condition = m == 0 ? BitString() : BitString::repeat(false, m);
  if (mode == MachineMode::Prefix) {
    if (m == 0) {
      for (const HaltRecord& r : u_.domain(n)->records) consider(r.program, r.output);
    } else {
      const HaltingDB db = u_.cache().fetch(n, condition);
      for (const HaltRecord& r : db.records) consider(r.program, r.output);
    }
  } else {
    MachineConfig cfg;
    cfg.max_steps = plain_budgets.max_steps;
    cfg.max_program_bits = plain_budgets.max_program_bits - plain_budgets.max_program_bits % kOpcodeBits;
    cfg.condition = condition;
    cfg.length_param = n;
    enumerate_plain(cfg, plain_budgets.max_program_bits / kOpcodeBits,
                    [&](const PlainRun& run) { consider(program_bits(*run.program), *run.output); });
  }

  set_idx->finish();
  sm_idx->finish();
  fn_idx->finish();
  if (shared) {
    indexes_[std::make_tuple(n, static_cast<int>(mode), static_cast<int>(ModelKind::Set), 0U)] = std::move(set_idx);
    indexes_[std::make_tuple(n, static_cast<int>(mode), static_cast<int>(ModelKind::Semimeasure), w)] = std::move(sm_idx);
  }
  indexes_[std::make_tuple(n, static_cast<int>(mode), static_cast<int>(ModelKind::Function), m)] = std::move(fn_idx);
  return *indexes_.at(key);
}

std::vector<const Model*> ModelLibrary::candidates(std::uint32_t n, MachineMode mode, ModelKind kind) {
  std::vector<const Model*> out;
  if (kind != ModelKind::Function) {
    out = index(n, mode, kind).ordered();
  } else {
    for (std::uint32_t m = 0; m <= max_data_width_; ++m) {
      const auto& o = index(n, mode, kind, m).ordered();
      out.insert(out.end(), o.begin(), o.end());
    }
    std::stable_sort(out.begin(), out.end(), [](const Model* a, const Model* b) { return better(*a, *b); });
  }
  return out;
}

namespace {

bool indexable(const Model& z, std::uint32_t table_width, std::uint32_t max_m) {
  switch (z.kind) {
    case ModelKind::Set: return true;
    case ModelKind::Semimeasure: return z.width == table_width;
    case ModelKind::Function:
      return z.data_width <= max_m && z.function.size() == (std::uint64_t{1} << z.data_width) &&
             std::all_of(z.function.begin(), z.function.end(), [&](const auto& e) { return e.first.size() == z.data_width; });
  }
  return false;
}

}  // namespace

CodeLength ModelLibrary::complexity(const Model& z, MachineMode mode) {
  if (z.mode == mode && z.complexity.is_finite()) return z.complexity;
  if (!indexable(z, width(z.n), max_data_width_)) return CodeLength::infinite();
  const Model* found = index(z.n, mode, z.kind, z.data_width).find(z.key());
  return found ? found->complexity : CodeLength::infinite();
}

std::optional<BitString> ModelLibrary::shortest_plain(const Model& z) {
  if (z.mode == MachineMode::Plain && z.complexity.is_finite()) return z.program;
  if (!indexable(z, width(z.n), max_data_width_)) return std::nullopt;
  const Model* found = index(z.n, MachineMode::Plain, z.kind, z.data_width).find(z.key());
  if (!found) return std::nullopt;
  return found->program;
}

Verdict ModelLibrary::judge(const BitString& x, const Model& z, Definition defn, std::int64_t slack) {
  Verdict v;
  v.defn = defn;
  v.kind = z.kind;
  v.n = z.n;
  v.x = x;
  v.slack = slack;
  v.program = z.program;
  if (x.size() != z.n) throw std::invalid_argument("judge: x does not have the model's length");
  v.log_term = z.log_term(x);
  if (!v.log_term) {
    v.state = VerdictState::NotInSupport;
    return v;
  }
  CodeLength lhs = CodeLength::infinite();
  switch (defn) {
    case Definition::SS:
      v.complexity = complexity(z, MachineMode::Prefix);
      if (v.complexity.is_finite()) v.rhs = u_.index(z.n, BitString()).k(x);
      lhs = v.complexity + CodeLength(*v.log_term);
      break;
    case Definition::WSS:
      v.complexity = complexity(z, MachineMode::Plain);
      if (v.complexity.is_finite()) v.rhs = u_.index(z.n, static_cast<std::uint64_t>(v.complexity.bits())).k(x);
      lhs = v.complexity + CodeLength(*v.log_term);
      break;
    case Definition::TM: {
      const auto star = shortest_plain(z);
      if (star) {
        v.program = *star;
        v.complexity = CodeLength(static_cast<std::int64_t>(star->size()));
        v.rhs = u_.index(z.n, *star).k(x);
      }
      lhs = CodeLength(*v.log_term);
      break;
    }
  }
  if (!v.complexity.is_finite() || !v.rhs.is_finite()) {
    v.state = VerdictState::OutOfBudget;
    return v;
  }
  v.deficiency = lhs.bits() - v.rhs.bits();
  v.state = std::abs(*v.deficiency) <= slack ? VerdictState::Pass : VerdictState::Fail;
  return v;
}

SearchResult ModelLibrary::search_minimal(const BitString& x, ModelKind kind, Definition defn, std::int64_t slack) {
  const MachineMode mode = defn == Definition::SS ? MachineMode::Prefix : MachineMode::Plain;
  SearchResult r;
  for (const Model* z : candidates(static_cast<std::uint32_t>(x.size()), mode, kind)) {
    if (!z->in_support(x)) continue;
    ++r.examined;
    r.frontier = z->complexity;
    Verdict v = judge(x, *z, defn, slack);
    if (v.passed()) {
      r.model = *z;
      r.verdict = std::move(v);
      break;
    }
  }
  return r;
}

std::optional<PPrime> ModelLibrary::construct_p_prime(const BitString& x, std::int64_t slack) {
  const auto n = static_cast<std::uint32_t>(x.size());
  check_n(n);
  const DepthProfile prof = bb_depth(u_, x, slack);
  if (!prof.kprime_x) return std::nullopt;
  PPrime pp;
  pp.x = x;
  pp.slack = slack;
  pp.kprime = prof.kprime_x;
  const std::int64_t k = *prof.kprime_x;
  const OutputIndex& idx = u_.index(n, static_cast<std::uint64_t>(k));
  const std::uint64_t t_now = bb_time(u_, n, k);
  const std::uint64_t t_prev = bb_time(u_, n, k - 1);

  std::vector<std::optional<std::int64_t>> exponent(strings_of_length(n));
  Dyadic sum;
  for (std::uint64_t i = 0; i < exponent.size(); ++i) {
    const BitString y = BitString::from_uint(i, n);
    const CodeLength now = idx.k(y, t_now);
    const CodeLength prev = idx.k(y, t_prev);
    pp.k_now.insert_or_assign(y, now);
    pp.k_prev.insert_or_assign(y, prev);
    if (!now.is_finite()) continue;
    if (prev.is_finite() && prev.bits() - now.bits() <= slack) continue;
    exponent[i] = now.bits();
    sum += Dyadic::pow2_neg(now.bits());
  }
  // Smallest c with 2^{k-c} * sum <= 1.
  pp.c = sum.is_zero() ? 0 : k + sum.ceil_log2();
  std::vector<Dyadic> p;
  for (const auto& e : exponent) p.push_back(e ? Dyadic::pow2_neg(*e - k + pp.c) : Dyadic());
  pp.model = make_semimeasure_model(n, std::move(p));
  pp.model.mode = MachineMode::Plain;
  // Its plain description is the Busy Beaver champion of length k'.
  BitString champion = u_.plain(n).bb_entry(static_cast<std::uint32_t>(k)).champion;
  champion.append(BitString::repeat(false, static_cast<std::size_t>(k) - champion.size()));
  pp.model.program = champion;
  pp.model.complexity = CodeLength(k);
  return pp;
}

Model cylinder_set(const BitString& x, std::uint32_t i) {
  const auto n = static_cast<std::uint32_t>(x.size());
  if (i > n) throw std::invalid_argument("cylinder_set: i above l(x)");
  std::vector<BitString> elements;
  const BitString head = x.prefix(i);
  for (std::uint64_t v = 0; v < strings_of_length(n - i); ++v) elements.push_back(head + BitString::from_uint(v, n - i));
  Model z = make_set_model(n, elements);
  z.mode = MachineMode::Plain;
  return z;
}

std::vector<CensusRow> ModelLibrary::wss_census(const BitString& x, std::int64_t slack) {
  std::vector<CensusRow> rows;
  for (std::uint32_t i = 0; i <= x.size(); ++i) {
    Model z = cylinder_set(x, i);
    if (const auto star = shortest_plain(z)) {
      z.program = *star;
      z.complexity = CodeLength(static_cast<std::int64_t>(star->size()));
    }
    Verdict v = judge(x, z, Definition::WSS, slack);
    rows.push_back(CensusRow{i, std::move(z), std::move(v)});
  }
  return rows;
}

TypicalityReport ModelLibrary::check_wss_is_tm(const BitString& x, std::int64_t slack) {
  const auto n = static_cast<std::uint32_t>(x.size());
  TypicalityReport rep;
  rep.x = x;
  rep.slack = slack;
  const auto pp = construct_p_prime(x, slack);
  if (pp) rep.kprime = pp->kprime;

  const auto record_wss = [&](const Model& z, const Verdict& w) {
    rep.wss.push_back(w);
    rep.tm_of_wss.push_back(judge(x, z, Definition::TM, slack));
  };
  for (ModelKind kind : {ModelKind::Set, ModelKind::Semimeasure, ModelKind::Function}) {
    for (const Model* z : candidates(n, MachineMode::Plain, kind)) {
      if (!z->in_support(x)) continue;
      const Verdict w = judge(x, *z, Definition::WSS, slack);
      if (w.passed()) record_wss(*z, w);
      if (kind == ModelKind::Semimeasure) {
        Verdict t = judge(x, *z, Definition::TM, slack);
        if (t.passed()) rep.typical_probabilistic.push_back(std::move(t));
      }
    }
  }
  if (pp) {
    rep.pprime_wss = judge(x, pp->model, Definition::WSS, slack);
    rep.pprime_tm = judge(x, pp->model, Definition::TM, slack);
    if (rep.pprime_wss->passed()) record_wss(pp->model, *rep.pprime_wss);
    if (rep.pprime_tm->passed()) rep.typical_probabilistic.push_back(*rep.pprime_tm);
  }

  if (!rep.wss.empty()) {
    std::int64_t c = 0;
    bool all_finite = true;
    for (const Verdict& t : rep.tm_of_wss) {
      if (!t.deficiency) {
        all_finite = false;
        break;
      }
      c = std::max(c, std::abs(*t.deficiency) - slack);
    }
    if (all_finite) rep.c_emp = c;
  }
  if (rep.kprime && !rep.typical_probabilistic.empty()) {
    std::int64_t c = 0;
    for (const Verdict& t : rep.typical_probabilistic) c = std::max(c, *rep.kprime - t.complexity.bits());
    rep.c_minimal = c;
  }
  return rep;
}

std::vector<std::pair<std::int64_t, std::optional<std::int64_t>>> ModelLibrary::structure_sweep(const BitString& x) {
  const auto n = static_cast<std::uint32_t>(x.size());
  const std::int64_t max_alpha = u_.budgets().max_program_bits;
  std::vector<std::pair<std::int64_t, std::optional<std::int64_t>>> sweep;
  const auto& models = index(n, MachineMode::Prefix, ModelKind::Set).ordered();
  std::optional<std::int64_t> best;
  std::size_t next = 0;
  for (std::int64_t alpha = 0; alpha <= max_alpha; ++alpha) {
    for (; next < models.size() && models[next]->complexity.bits() <= alpha; ++next) {
      const auto lt = models[next]->log_term(x);
      if (lt && (!best || *lt < *best)) best = lt;
    }
    sweep.emplace_back(alpha, best);
  }
  return sweep;
}

std::optional<std::int64_t> bb_time_probe(Universe& u, std::uint32_t n, std::uint32_t k) {
  const BusyBeaverEntry& e = u.plain(n).bb_entry(k);
  if (!e.any) return 0;
  for (std::int64_t c = k; c >= 0; --c)
    if (bb_time(u, n, static_cast<std::int64_t>(k) - c) >= e.champion_steps) return c;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Model files

std::string serialize_model(const Model& z) {
  std::ostringstream os;
  os << "AITLAB-MODEL v1\n"
     << "machine=" << kMachineVersion << '\n'
     << "kind=" << to_string(z.kind) << '\n'
     << "mode=" << to_string(z.mode) << '\n'
     << "n=" << z.n << '\n'
     << "program=" << z.program.str() << '\n'
     << "complexity=" << z.complexity.str() << '\n'
     << "width=" << z.width << '\n'
     << "data_width=" << z.data_width << '\n';
  switch (z.kind) {
    case ModelKind::Set:
      for (std::uint64_t i = 0; i < z.members.size(); ++i)
        if (z.members[i]) os << BitString::from_uint(i, z.n).str() << '\n';
      break;
    case ModelKind::Semimeasure:
      for (std::uint64_t i = 0; i < z.measure.size(); ++i) os << BitString::from_uint(i, z.n).str() << ' ' << z.measure[i].str() << '\n';
      break;
    case ModelKind::Function:
      for (const auto& [d, y] : z.function) os << d.str() << ' ' << y.str() << '\n';
      break;
  }
  return os.str();
}

Model deserialize_model(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "AITLAB-MODEL v1") throw FormatError("not a model file");
  std::map<std::string, std::string> header;
  for (const char* field : {"machine", "kind", "mode", "n", "program", "complexity", "width", "data_width"}) {
    if (!std::getline(is, line)) throw FormatError("truncated model header");
    const auto eq = line.find('=');
    if (eq == std::string::npos || line.substr(0, eq) != field) throw FormatError(std::string("expected header field ") + field);
    header[field] = line.substr(eq + 1);
  }
  if (header["machine"] != kMachineVersion) throw FormatError("model written for machine " + header["machine"]);
  try {
    Model z;
    z.kind = parse_model_kind(header["kind"]);
    z.mode = parse_machine_mode(header["mode"]);
    z.n = static_cast<std::uint32_t>(std::stoul(header["n"]));
    check_n(z.n);
    z.program = BitString::parse(header["program"]);
    z.complexity = header["complexity"] == "inf" ? CodeLength::infinite() : CodeLength(std::stoll(header["complexity"]));
    z.width = static_cast<std::uint32_t>(std::stoul(header["width"]));
    z.data_width = static_cast<std::uint32_t>(std::stoul(header["data_width"]));
    std::vector<BitString> elements;
    std::vector<Dyadic> p(z.kind == ModelKind::Semimeasure ? strings_of_length(z.n) : 0);
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string a, b;
      ls >> a >> b;
      switch (z.kind) {
        case ModelKind::Set: elements.push_back(BitString::parse(a)); break;
        case ModelKind::Semimeasure: p.at(BitString::parse(a).to_uint()) = Dyadic::parse(b); break;
        case ModelKind::Function: z.function.emplace(BitString::parse(a), BitString::parse(b)); break;
      }
    }
    if (z.kind == ModelKind::Set) {
      Model s = make_set_model(z.n, elements);
      z.members = std::move(s.members);
    } else if (z.kind == ModelKind::Semimeasure) {
      const std::uint32_t width = z.width;
      Model s = make_semimeasure_model(z.n, std::move(p));
      z.measure = std::move(s.measure);
      z.width = width;
    }
    return z;
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(std::string("malformed model file: ") + e.what());
  }
}

void store_model(const Model& z, const std::filesystem::path& path) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << serialize_model(z);
  }
  std::filesystem::rename(tmp, path);
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_model(ss.str());
}

}  // namespace aitlab
