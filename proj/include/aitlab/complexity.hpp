// Budgeted complexity measures over enumerated domains.
#pragma once

#include "aitlab/bitstring.hpp"
#include "aitlab/enumeration.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace aitlab {

/// A code length in bits, or +∞ when no program is found within budget.
class CodeLength {
 public:
  static constexpr CodeLength infinite() { return CodeLength(); }
  constexpr CodeLength(std::int64_t bits) : bits_(bits) {}  // NOLINT: bit counts convert freely

  constexpr bool is_finite() const noexcept { return bits_ != kInf; }
  std::int64_t bits() const;

  friend constexpr bool operator==(const CodeLength&, const CodeLength&) = default;
  friend constexpr std::strong_ordering operator<=>(const CodeLength& a, const CodeLength& b) { return a.bits_ <=> b.bits_; }
  /// Saturating: anything plus +∞ is +∞.
  friend CodeLength operator+(CodeLength a, CodeLength b) {
    return (a.is_finite() && b.is_finite()) ? CodeLength(a.bits_ + b.bits_) : infinite();
  }

  std::string str() const { return is_finite() ? std::to_string(bits_) : "inf"; }

 private:
  static constexpr std::int64_t kInf = INT64_MAX;
  constexpr CodeLength() : bits_(kInf) {}
  std::int64_t bits_;
};

/// `a - b` when both are finite.
std::optional<std::int64_t> difference(CodeLength a, CodeLength b);

/// One improvement of K_t(x): from `steps` on, the shortest known program has `length` bits.
struct HistoryPoint {
  std::uint64_t steps = 0;
  std::uint32_t length = 0;
  BitString program;
};

/// Per-output view of a domain: the full improvement history of K_t for every
/// output string. Small enough to keep for many conditions at once.
class OutputIndex {
 public:
  explicit OutputIndex(const HaltingDB& db);

  std::uint32_t n() const noexcept { return n_; }
  const BitString& condition() const noexcept { return condition_; }
  const Budgets& budgets() const noexcept { return budgets_; }

  /// K_t(x): shortest program with output x halting within t steps.
  CodeLength k(const BitString& x, std::uint64_t t) const;
  CodeLength k(const BitString& x) const { return k(x, budgets_.max_steps); }
  /// The history point realizing K_t(x), if any.
  const HistoryPoint* best(const BitString& x, std::uint64_t t) const;
  const HistoryPoint* best(const BitString& x) const { return best(x, budgets_.max_steps); }
  /// Non-increasing K_t checkpoints for x (empty when x is never output).
  const std::vector<HistoryPoint>& history(const BitString& x) const;
  /// Σ 2^-l(p) over programs with output x (the budgeted a-priori mass of x).
  Dyadic mass(const BitString& x) const;
  /// Halting mass of n-bit outputs after t steps, and the convergence time t_k.
  Dyadic omega_t(std::uint64_t t) const;
  Dyadic omega_final() const { return omega_t(budgets_.max_steps); }
  std::uint64_t t_k(std::int64_t k) const;

  const std::map<BitString, std::vector<HistoryPoint>>& outputs() const noexcept { return history_; }

 private:
  std::uint32_t n_;
  BitString condition_;
  Budgets budgets_;
  std::map<BitString, std::vector<HistoryPoint>> history_;
  std::map<BitString, Dyadic> mass_;
  std::vector<std::pair<std::uint64_t, Dyadic>> omega_curve_;
};

/// Shortest plain program for an output, and its running time.
struct PlainEntry {
  std::uint32_t length = 0;  ///< bits
  BitString program;
  std::uint64_t steps = 0;
};

/// Per-length Busy Beaver data over plain programs of exactly `opcodes` opcodes.
struct BusyBeaverEntry {
  bool any = false;          ///< some program of this length halts
  BitString best_output;     ///< shortlex-largest output, i.e. largest nat_encode
  BitString champion;        ///< a program achieving it (shortlex-first)
  std::uint64_t champion_steps = 0;  ///< fewest steps among programs achieving it
};

/// Summary of one plain enumeration (length parameter n, a fixed condition).
class PlainIndex {
 public:
  PlainIndex(std::uint32_t n, const BitString& condition, std::uint64_t max_steps, std::uint32_t max_bits);

  std::uint32_t n() const noexcept { return n_; }
  std::uint64_t max_steps() const noexcept { return max_steps_; }
  std::uint32_t max_bits() const noexcept { return max_bits_; }

  /// C(x) within the sweep.
  CodeLength c(const BitString& x) const;
  const PlainEntry* shortest(const BitString& x) const;
  /// Busy Beaver entry for programs of exactly `bits` bits (only floor(bits/3) opcodes are read).
  const BusyBeaverEntry& bb_entry(std::uint32_t bits) const;
  const std::map<BitString, PlainEntry>& outputs() const noexcept { return shortest_; }

 private:
  std::uint32_t n_;
  std::uint64_t max_steps_;
  std::uint32_t max_bits_;
  std::map<BitString, PlainEntry> shortest_;
  std::vector<BusyBeaverEntry> bb_;  ///< indexed by opcode count
};

struct PlainBudgets {
  std::uint64_t max_steps = 4096;
  std::uint32_t max_bits = 24;  ///< plain sweep cap
  std::uint32_t bb_cap = 24;    ///< largest k for bb(k)
};

/// The lab's shared state: domains and indexes for every (n, condition) asked
/// for, built on first use. Full domains are kept only for the empty condition.
class Universe {
 public:
  Universe(Budgets budgets, PlainBudgets plain = {}, unsigned workers = 1, std::optional<std::filesystem::path> cache_dir = std::nullopt);

  const Budgets& budgets() const noexcept { return cache_.budgets(); }
  const PlainBudgets& plain_budgets() const noexcept { return plain_; }

  std::shared_ptr<const HaltingDB> domain(std::uint32_t n);
  const OutputIndex& index(std::uint32_t n, const BitString& condition);
  const OutputIndex& index(std::uint32_t n, std::uint64_t k) { return index(n, nat_decode(k)); }
  const PlainIndex& plain(std::uint32_t n, const BitString& condition = {});
  /// Number of distinct conditioned domains built so far.
  std::size_t domains_built() const;

  DomainCache& cache() noexcept { return cache_; }

 private:
  DomainCache cache_;
  PlainBudgets plain_;
  mutable std::mutex mu_;
  std::map<std::pair<std::uint32_t, std::string>, std::unique_ptr<OutputIndex>> indexes_;
  std::map<std::pair<std::uint32_t, std::string>, std::unique_ptr<PlainIndex>> plains_;
  std::map<std::uint32_t, std::shared_ptr<const HaltingDB>> unconditional_;
};

// ---------------------------------------------------------------------------

struct KResult {
  CodeLength k = CodeLength::infinite();
  std::optional<BitString> witness;
  std::uint64_t witness_steps = 0;
};

/// K_t(x | condition) with length parameter n (defaults to l(x)).
KResult k_budget(Universe& u, const BitString& x, const BitString& condition, std::uint64_t t, std::optional<std::uint32_t> n = std::nullopt);
KResult k_budget(Universe& u, const BitString& x, const BitString& condition = {});

/// C(x | condition): shortest plain program over the sweep.
CodeLength c_plain(Universe& u, const BitString& x, const BitString& condition = {}, std::optional<std::uint32_t> n = std::nullopt);

/// Busy Beaver over k-bit plain programs, budget-relativized: the largest
/// nat_encode(output) among those halting within the plain step budget.
BigInt bb(Universe& u, std::uint32_t n, std::uint32_t k);
/// bb(k) as a step bound, clamped to the step budget; bb(-1) is read as 0.
std::uint64_t bb_time(Universe& u, std::uint32_t n, std::int64_t k);

struct DepthProfile {
  BitString x;
  std::int64_t slack_c = 0;
  std::optional<std::int64_t> k_x;         ///< m-depth; empty when K(x) is +∞
  std::map<std::int64_t, std::uint64_t> t_k_list;
  std::optional<std::int64_t> kprime_x;    ///< BB-depth; empty when not reached within bb_cap
  std::map<std::int64_t, BigInt> bb_values;
};

/// m-depth relative to the domain for (l(x), condition).
DepthProfile m_depth(Universe& u, const BitString& x, std::int64_t slack_c, const BitString& condition = {});
/// BB-depth: least k with K_{bb(k)}(x|k) within slack of K(x|k).
DepthProfile bb_depth(Universe& u, const BitString& x, std::int64_t slack_c);

/// Every program with output w of length at most K(w) + slack.
std::vector<BitString> witness_census(Universe& u, const BitString& w, std::int64_t slack, std::optional<std::uint32_t> n = std::nullopt);

struct Additivity {
  CodeLength k_pair = CodeLength::infinite();   ///< K(x,y), pair = concatenation
  CodeLength k_x = CodeLength::infinite();
  CodeLength k_y_given_xstar = CodeLength::infinite();
  std::optional<std::int64_t> deficiency;       ///< K(x,y) - K(x) - K(y|x*)
};
Additivity additivity_check(Universe& u, const BitString& x, const BitString& y);

/// K(x | H^{n,2^j}) with the halting-sequence prefix on the condition tape.
CodeLength k_given_halting(Universe& u, const BitString& x, std::uint32_t j);
BitString halting_prefix(Universe& u, std::uint32_t n, std::uint32_t j);

struct TetrationTrace {
  std::vector<CodeLength> trace;  ///< k_1 = K(x), k_i = K(x | k_{i-1})
  bool converged = false;
  std::optional<std::int64_t> fixpoint;
};
TetrationTrace tetration_iterate(Universe& u, const BitString& x, std::int64_t fixpoint_slack = 0, std::size_t max_iterations = 16);

/// max{k : ^k 2 <= v}, with ^0 2 = 1.
std::int64_t slog(const BigInt& v);

}  // namespace aitlab
