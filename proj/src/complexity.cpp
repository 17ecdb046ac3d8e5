#include "aitlab/complexity.hpp"

#include <algorithm>
#include <stdexcept>

namespace aitlab {

std::int64_t CodeLength::bits() const {
  if (!is_finite()) throw std::logic_error("CodeLength::bits on +inf");
  return bits_;
}

std::optional<std::int64_t> difference(CodeLength a, CodeLength b) {
  if (!a.is_finite() || !b.is_finite()) return std::nullopt;
  return a.bits() - b.bits();
}

// ---------------------------------------------------------------------------
// OutputIndex

OutputIndex::OutputIndex(const HaltingDB& db) : n_(db.n), condition_(db.condition), budgets_(db.budgets) {
  const std::int64_t exp = budgets_.max_program_bits;
  std::map<BitString, BigInt> mass;
  BigInt omega = 0;
  for (const HaltRecord& r : db.records) {
    const auto len = static_cast<std::uint32_t>(r.program.size());
    auto& h = history_[r.output];
    // Records arrive by steps, then length: the first one at a time is the shortest.
    if (h.empty() || h.back().length > len) h.push_back(HistoryPoint{r.steps, len, r.program});
    const BigInt weight = BigInt(1) << static_cast<unsigned>(exp - len);
    mass[r.output] += weight;
    if (r.output.size() == n_) {
      omega += weight;
      if (!omega_curve_.empty() && omega_curve_.back().first == r.steps) omega_curve_.pop_back();
      omega_curve_.emplace_back(r.steps, Dyadic(omega, exp));
    }
  }
  for (auto& [out, m] : mass) mass_.emplace(out, Dyadic(m, exp));
}

const HistoryPoint* OutputIndex::best(const BitString& x, std::uint64_t t) const {
  const auto it = history_.find(x);
  if (it == history_.end()) return nullptr;
  const HistoryPoint* found = nullptr;
  for (const HistoryPoint& p : it->second) {
    if (p.steps > t) break;
    found = &p;
  }
  return found;
}

CodeLength OutputIndex::k(const BitString& x, std::uint64_t t) const {
  const HistoryPoint* p = best(x, t);
  return p ? CodeLength(p->length) : CodeLength::infinite();
}

const std::vector<HistoryPoint>& OutputIndex::history(const BitString& x) const {
  static const std::vector<HistoryPoint> kEmpty;
  const auto it = history_.find(x);
  return it == history_.end() ? kEmpty : it->second;
}

Dyadic OutputIndex::mass(const BitString& x) const {
  const auto it = mass_.find(x);
  return it == mass_.end() ? Dyadic() : it->second;
}

Dyadic OutputIndex::omega_t(std::uint64_t t) const {
  Dyadic m;
  for (const auto& [steps, mass] : omega_curve_) {
    if (steps > t) break;
    m = mass;
  }
  return m;
}

std::uint64_t OutputIndex::t_k(std::int64_t k) const {
  if (k < 0) throw std::invalid_argument("t_k: k must be non-negative");
  const Dyadic final_mass = omega_final();
  const Dyadic target = final_mass - Dyadic::pow2_neg(k);
  if (target <= Dyadic()) return 0;
  for (const auto& [steps, mass] : omega_curve_)
    if (mass >= target) return steps;
  return budgets_.max_steps;  // unreachable: the last point equals the final mass
}

// ---------------------------------------------------------------------------
// PlainIndex

PlainIndex::PlainIndex(std::uint32_t n, const BitString& condition, std::uint64_t max_steps, std::uint32_t max_bits)
    : n_(n), max_steps_(max_steps), max_bits_(max_bits) {
  MachineConfig cfg;
  cfg.max_steps = max_steps;
  cfg.max_program_bits = max_bits - max_bits % kOpcodeBits;
  cfg.condition = condition;
  cfg.length_param = n;
  const std::uint32_t max_ops = max_bits / kOpcodeBits;

  struct Candidate {
    bool any = false;
    BitString output;
    std::uint64_t steps = 0;
    BitString program;
  };
  // Prefer the larger output, then fewer steps, then the shortlex-first program.
  const auto offer = [](Candidate& c, const BitString& out, std::uint64_t steps, const BitString& prog) {
    if (!c.any || shortlex_less(c.output, out) ||
        (c.output == out && (steps < c.steps || (steps == c.steps && shortlex_less(prog, c.program))))) {
      c = Candidate{true, out, steps, prog};
    }
  };
  std::vector<Candidate> by_end(max_ops + 1), by_halt(max_ops + 1);

  enumerate_plain(cfg, max_ops, [&](const PlainRun& run) {
    const BitString prog = program_bits(*run.program);
    const auto len = static_cast<std::uint32_t>(prog.size());
    auto [it, inserted] = shortest_.try_emplace(*run.output, PlainEntry{len, prog, run.steps});
    if (!inserted && (len < it->second.length || (len == it->second.length && prog < it->second.program)))
      it->second = PlainEntry{len, prog, run.steps};
    offer(run.by_halt_opcode ? by_halt[run.program->size()] : by_end[run.program->size()], *run.output, run.steps, prog);
  });

  bb_.resize(max_ops + 1);
  Candidate halted_so_far;
  for (std::uint32_t j = 0; j <= max_ops; ++j) {
    if (by_halt[j].any) {
      // A program stopping on H at j opcodes stands for all of its extensions; pad with zeros.
      Candidate padded = by_halt[j];
      offer(halted_so_far, padded.output, padded.steps, padded.program);
    }
    Candidate best = by_end[j];
    if (halted_so_far.any) {
      BitString prog = halted_so_far.program;
      prog.append(BitString::repeat(false, j * kOpcodeBits - prog.size()));
      offer(best, halted_so_far.output, halted_so_far.steps, prog);
    }
    bb_[j] = BusyBeaverEntry{best.any, best.output, best.program, best.steps};
  }
}

CodeLength PlainIndex::c(const BitString& x) const {
  const PlainEntry* e = shortest(x);
  return e ? CodeLength(e->length) : CodeLength::infinite();
}

const PlainEntry* PlainIndex::shortest(const BitString& x) const {
  const auto it = shortest_.find(x);
  return it == shortest_.end() ? nullptr : &it->second;
}

const BusyBeaverEntry& PlainIndex::bb_entry(std::uint32_t bits) const {
  if (bits > max_bits_) throw std::out_of_range("bb: k above the plain sweep cap");
  return bb_[bits / kOpcodeBits];
}

// ---------------------------------------------------------------------------
// Universe

Universe::Universe(Budgets budgets, PlainBudgets plain, unsigned workers, std::optional<std::filesystem::path> cache_dir)
    : cache_(budgets, workers, std::move(cache_dir)), plain_(plain) {
  if (plain_.bb_cap > plain_.max_bits) throw ConfigError("bb cap above the plain sweep cap");
}

std::shared_ptr<const HaltingDB> Universe::domain(std::uint32_t n) {
  index(n, BitString());
  std::lock_guard lock(mu_);
  return unconditional_.at(n);
}

const OutputIndex& Universe::index(std::uint32_t n, const BitString& condition) {
  std::lock_guard lock(mu_);
  const auto key = std::make_pair(n, condition.raw());
  if (auto it = indexes_.find(key); it != indexes_.end()) return *it->second;
  if (condition.empty()) {
    auto db = cache_.get(n, condition);
    unconditional_[n] = db;
    return *indexes_.emplace(key, std::make_unique<OutputIndex>(*db)).first->second;
  }
  const HaltingDB db = cache_.fetch(n, condition);
  return *indexes_.emplace(key, std::make_unique<OutputIndex>(db)).first->second;
}

const PlainIndex& Universe::plain(std::uint32_t n, const BitString& condition) {
  std::lock_guard lock(mu_);
  const auto key = std::make_pair(n, condition.raw());
  if (auto it = plains_.find(key); it != plains_.end()) return *it->second;
  return *plains_.emplace(key, std::make_unique<PlainIndex>(n, condition, plain_.max_steps, plain_.max_bits)).first->second;
}

std::size_t Universe::domains_built() const {
  std::lock_guard lock(mu_);
  return indexes_.size();
}

// ---------------------------------------------------------------------------

KResult k_budget(Universe& u, const BitString& x, const BitString& condition, std::uint64_t t, std::optional<std::uint32_t> n) {
  const OutputIndex& idx = u.index(n.value_or(static_cast<std::uint32_t>(x.size())), condition);
  KResult r;
  if (const HistoryPoint* p = idx.best(x, t)) {
    r.k = p->length;
    r.witness = p->program;
    r.witness_steps = p->steps;
  }
  return r;
}

KResult k_budget(Universe& u, const BitString& x, const BitString& condition) {
  return k_budget(u, x, condition, u.budgets().max_steps);
}

CodeLength c_plain(Universe& u, const BitString& x, const BitString& condition, std::optional<std::uint32_t> n) {
  return u.plain(n.value_or(static_cast<std::uint32_t>(x.size())), condition).c(x);
}

BigInt bb(Universe& u, std::uint32_t n, std::uint32_t k) {
  if (k > u.plain_budgets().bb_cap) throw std::out_of_range("bb: k above the configured cap");
  const BusyBeaverEntry& e = u.plain(n).bb_entry(k);
  return e.any ? nat_encode(e.best_output) : BigInt(0);
}

std::uint64_t bb_time(Universe& u, std::uint32_t n, std::int64_t k) {
  if (k < 0) return 0;
  const BigInt v = bb(u, n, static_cast<std::uint32_t>(k));
  const std::uint64_t cap = u.budgets().max_steps;
  return v >= cap ? cap : v.convert_to<std::uint64_t>();
}

DepthProfile m_depth(Universe& u, const BitString& x, std::int64_t slack_c, const BitString& condition) {
  const OutputIndex& idx = u.index(static_cast<std::uint32_t>(x.size()), condition);
  DepthProfile prof;
  prof.x = x;
  prof.slack_c = slack_c;
  const CodeLength k_final = idx.k(x);
  if (!k_final.is_finite()) return prof;
  // Past max_program_bits + 1 bits of precision, t_k is the final convergence time.
  const std::int64_t k_max = static_cast<std::int64_t>(idx.budgets().max_program_bits) + 1;
  for (std::int64_t k = 0; k <= k_max; ++k) {
    const std::uint64_t t = idx.t_k(k);
    prof.t_k_list[k] = t;
    if (idx.k(x, t) <= k_final + CodeLength(slack_c)) {
      prof.k_x = k;
      break;
    }
  }
  return prof;
}

DepthProfile bb_depth(Universe& u, const BitString& x, std::int64_t slack_c) {
  const auto n = static_cast<std::uint32_t>(x.size());
  DepthProfile prof;
  prof.x = x;
  prof.slack_c = slack_c;
  for (std::uint32_t k = 0; k <= u.plain_budgets().bb_cap; ++k) {
    prof.bb_values[k] = bb(u, n, k);
    const OutputIndex& idx = u.index(n, static_cast<std::uint64_t>(k));
    const CodeLength k_final = idx.k(x);
    if (!k_final.is_finite()) continue;
    if (idx.k(x, bb_time(u, n, k)) <= k_final + CodeLength(slack_c)) {
      prof.kprime_x = k;
      break;
    }
  }
  return prof;
}

std::vector<BitString> witness_census(Universe& u, const BitString& w, std::int64_t slack, std::optional<std::uint32_t> n) {
  const std::uint32_t len = n.value_or(static_cast<std::uint32_t>(w.size()));
  const CodeLength k = u.index(len, BitString()).k(w);
  std::vector<BitString> programs;
  if (!k.is_finite()) return programs;
  for (const HaltRecord& r : u.domain(len)->records)
    if (r.output == w && static_cast<std::int64_t>(r.program.size()) <= k.bits() + slack) programs.push_back(r.program);
  std::sort(programs.begin(), programs.end(), shortlex_less);
  return programs;
}

Additivity additivity_check(Universe& u, const BitString& x, const BitString& y) {
  if (x.size() != y.size()) throw std::invalid_argument("additivity_check: x and y must have equal length");
  const auto n = static_cast<std::uint32_t>(x.size());
  Additivity a;
  const OutputIndex& base = u.index(n, BitString());
  a.k_pair = base.k(x + y);
  const HistoryPoint* xstar = base.best(x);
  if (!xstar) return a;
  a.k_x = xstar->length;
  a.k_y_given_xstar = u.index(n, xstar->program).k(y);
  if (a.k_pair.is_finite() && a.k_y_given_xstar.is_finite())
    a.deficiency = a.k_pair.bits() - a.k_x.bits() - a.k_y_given_xstar.bits();
  return a;
}

BitString halting_prefix(Universe& u, std::uint32_t n, std::uint32_t j) {
  MachineConfig cfg;
  cfg.max_steps = u.budgets().max_steps;
  cfg.max_program_bits = u.budgets().max_program_bits;
  cfg.length_param = n;
  return halting_sequence(cfg, std::uint64_t{1} << j);
}

CodeLength k_given_halting(Universe& u, const BitString& x, std::uint32_t j) {
  const auto n = static_cast<std::uint32_t>(x.size());
  return u.index(n, halting_prefix(u, n, j)).k(x);
}

TetrationTrace tetration_iterate(Universe& u, const BitString& x, std::int64_t fixpoint_slack, std::size_t max_iterations) {
  const auto n = static_cast<std::uint32_t>(x.size());
  TetrationTrace tr;
  CodeLength current = u.index(n, BitString()).k(x);
  tr.trace.push_back(current);
  while (current.is_finite() && tr.trace.size() <= max_iterations) {
    const CodeLength next = u.index(n, static_cast<std::uint64_t>(current.bits())).k(x);
    if (!next.is_finite()) break;
    if (std::abs(next.bits() - current.bits()) <= fixpoint_slack) {
      tr.converged = true;
      tr.fixpoint = current.bits();
      break;
    }
    tr.trace.push_back(next);
    current = next;
  }
  return tr;
}

std::int64_t slog(const BigInt& v) {
  if (v < 1) throw std::domain_error("slog: argument must be at least 1");
  const auto top = static_cast<std::uint64_t>(boost::multiprecision::msb(v));  // floor(log2 v)
  std::int64_t k = 0;
  std::uint64_t tower = 1;  // ^k 2
  // ^(k+1) 2 = 2^tower <= v  iff  floor(log2 v) >= tower
  while (top >= tower) {
    ++k;
    if (tower >= 63) break;  // the next tower exceeds any representable v
    tower = std::uint64_t{1} << tower;
  }
  return k;
}

}  // namespace aitlab
