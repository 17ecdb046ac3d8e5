// Brute-force reference computations for the unit tests. They only use the
// interpreter entry points, never the enumerator or the indexes.
#pragma once

#include "aitlab/enumeration.hpp"

#include <map>
#include <optional>
#include <vector>

namespace oracle {

using aitlab::BitString;

inline std::vector<BitString> words_up_to(std::uint32_t max_len) {
  std::vector<BitString> out;
  for (std::uint32_t len = 0; len <= max_len; ++len)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) out.push_back(BitString::from_uint(v, len));
  return out;
}

/// Every bit string consumed exactly by a halting prefix run.
inline std::map<BitString, aitlab::ExecOutcome> prefix_domain(const aitlab::MachineConfig& cfg) {
  std::map<BitString, aitlab::ExecOutcome> dom;
  for (const BitString& p : words_up_to(cfg.max_program_bits)) {
    const aitlab::ExecOutcome r = aitlab::run_prefix(p, cfg);
    if (r.halted() && r.bits_read == p.size()) dom.emplace(p, r);
  }
  return dom;
}

/// Shortest prefix program for x within t steps.
inline std::optional<std::size_t> k(const std::map<BitString, aitlab::ExecOutcome>& dom, const BitString& x, std::uint64_t t) {
  std::optional<std::size_t> best;
  for (const auto& [p, r] : dom)
    if (r.output == x && r.steps <= t && (!best || p.size() < *best)) best = p.size();
  return best;
}

/// Shortest plain program (whole opcodes) for x.
inline std::optional<std::size_t> c(const aitlab::MachineConfig& cfg, const BitString& x) {
  for (std::uint32_t len = 0; len <= cfg.max_program_bits; len += 3)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      const aitlab::ExecOutcome r = aitlab::run_plain(BitString::from_uint(v, len), cfg);
      if (r.halted() && r.output == x) return len;
    }
  return std::nullopt;
}

/// Largest nat_encode(output) over plain programs of exactly floor(k/3) opcodes.
inline aitlab::BigInt bb(const aitlab::MachineConfig& cfg, std::uint32_t k) {
  const std::uint32_t len = k / 3 * 3;
  aitlab::BigInt best = 0;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
    const aitlab::ExecOutcome r = aitlab::run_plain(BitString::from_uint(v, len), cfg);
    if (r.halted()) best = std::max(best, aitlab::nat_encode(r.output));
  }
  return best;
}

}  // namespace oracle
