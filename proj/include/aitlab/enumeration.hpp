// Exhaustive enumeration of the prefix-free halting domain and the quantities
// read off it: halting mass, convergence times, halting-sequence prefixes and
// the halting-time code.
#pragma once

#include "aitlab/bitstring.hpp"
#include "aitlab/dyadic.hpp"
#include "aitlab/machine.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace aitlab {

struct Budgets {
  std::uint64_t max_steps = 4096;
  std::uint32_t max_program_bits = 24;
  friend bool operator==(const Budgets&, const Budgets&) = default;
};

/// Hard caps on what enumerate_domain will accept.
inline constexpr std::uint32_t kMaxProgramBitsCap = 30;
inline constexpr std::uint64_t kMaxStepsCap = 1U << 20;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HaltRecord {
  BitString program;
  std::uint64_t steps = 0;
  BitString output;
  friend bool operator==(const HaltRecord&, const HaltRecord&) = default;
};

/// Canonical halting-time order: steps, then program length, then program bits.
bool canonical_less(const HaltRecord& a, const HaltRecord& b);

struct HaltingDB {
  std::string machine_version{kMachineVersion};
  std::uint32_t n = 0;
  BitString condition;
  Budgets budgets;
  std::vector<HaltRecord> records;  ///< canonical order

  MachineConfig machine_config() const;
  /// Σ 2^-l(p) over every record.
  Dyadic kraft_sum() const;
  /// Record for an exact program, if it is in the domain.
  const HaltRecord* find(const BitString& program) const;

  friend bool operator==(const HaltingDB&, const HaltingDB&) = default;
};

/// All demand-read bit sequences on which the prefix machine halts within
/// budget, for length parameter n and the given condition. The result does not
/// depend on `workers`.
HaltingDB enumerate_domain(std::uint32_t n, const BitString& condition, const Budgets& budgets, unsigned workers = 1);

/// Halting mass after t steps: Σ 2^-l(p) over records with steps <= t and an n-bit output.
Dyadic omega_t(const HaltingDB& db, std::uint64_t t);
/// Halting mass at the final budget.
Dyadic omega_final(const HaltingDB& db);
/// First j bits of the final halting mass.
BitString omega_prefix(const HaltingDB& db, std::size_t j);
/// Smallest t with omega_final - omega_t(t) <= 2^-k.
std::uint64_t t_k(const HaltingDB& db, std::int64_t k);
/// Smallest t with omega_t(t) >= target, or nullopt when the final mass is below it.
std::optional<std::uint64_t> time_to_reach(const HaltingDB& db, const Dyadic& target);

/// Bit i is 1 iff the word nat_decode(i), offered as the whole bit supply,
/// makes the prefix machine halt after consuming all of it.
BitString halting_sequence(const MachineConfig& cfg, std::uint64_t i_max);

/// β_p: the first l(p) bits of α_p, the cumulative mass up to and including p
/// in halting-time order.
std::map<BitString, BitString> beta_encoding(const HaltingDB& db);

struct HaltingDecode {
  std::uint64_t time = 0;             ///< smallest t with omega_t >= value(prefix)
  std::size_t length_bound = 0;       ///< verdicts cover programs shorter than this
  std::vector<BitString> halting;     ///< programs declared halting, shortlex order
};

struct InvalidPrefix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Decides halting for every program shorter than j - slack from the j-bit
/// prefix of the halting mass. Throws InvalidPrefix when the prefix exceeds
/// the final mass.
HaltingDecode omega_to_halting(const BitString& omega_bits, const HaltingDB& db, std::size_t slack);

/// Smallest slack at which omega_to_halting agrees with the domain for j.
std::size_t decode_slack_needed(const HaltingDB& db, std::size_t j);

void store(const HaltingDB& db, const std::filesystem::path& path);
HaltingDB load(const std::filesystem::path& path);
std::string serialize(const HaltingDB& db);
HaltingDB deserialize(const std::string& text);

/// Memoized domains keyed by (n, condition) at fixed budgets, optionally
/// persisted under a cache directory. Safe to share between threads.
class DomainCache {
 public:
  DomainCache(Budgets budgets, unsigned workers = 1, std::optional<std::filesystem::path> dir = std::nullopt);

  std::shared_ptr<const HaltingDB> get(std::uint32_t n, const BitString& condition);
  /// Loads or enumerates (and persists) a domain without keeping it in memory.
  HaltingDB fetch(std::uint32_t n, const BitString& condition) const;
  /// Integer conditions go through the natural association.
  std::shared_ptr<const HaltingDB> get(std::uint32_t n, std::uint64_t k) { return get(n, nat_decode(k)); }

  const Budgets& budgets() const noexcept { return budgets_; }
  std::size_t size() const;
  /// File name used for a cached domain.
  static std::string cache_key(std::uint32_t n, const BitString& condition, const Budgets& b);

 private:
  Budgets budgets_;
  unsigned workers_;
  std::optional<std::filesystem::path> dir_;
  mutable std::mutex mu_;
  std::map<std::pair<std::uint32_t, std::string>, std::shared_ptr<const HaltingDB>> dbs_;
};

/// One plain program visited by enumerate_plain.
struct PlainRun {
  const Machine::Program* program;
  const BitString* output;
  std::uint64_t steps;
  bool by_halt_opcode;  ///< halted on H; otherwise halted at end of program
};

/// Visits every plain program of at most `max_opcodes` opcodes that halts
/// within `max_steps`. A program halting on H is visited once at its shortest
/// length; every extension of it behaves the same. Programs are visited in
/// depth-first order (deterministic).
void enumerate_plain(const MachineConfig& cfg, std::uint32_t max_opcodes, const std::function<void(const PlainRun&)>& visit);

BitString program_bits(const Machine::Program& ops);

}  // namespace aitlab
