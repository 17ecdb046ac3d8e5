// AITLAB-M1: the lab's reference machine.
//
// Eight opcodes, three bits each, acting on a bi-infinite tape of unbounded
// non-negative cells:
//
//   000 >  move head right        100 [  if cell == 0 jump past matching ]
//   001 <  move head left         101 ]  if cell != 0 jump after matching [
//   010 +  increment              110 O  append (cell mod 2) to output
//   011 -  saturating decrement   111 H  halt
//
// The tape starts at zero except cell[-1] = n and cell[-2-i] = 1 + y_i for the
// condition y (a zero cell terminates it). The head starts on cell 0.
//
// Every executed opcode costs one step; a taken jump additionally costs one
// step per opcode position it scans over. A `]` without a matching `[` is a
// machine error whenever it is executed.
//
// Prefix mode reads the program on demand, one opcode at a time, so the set of
// bit sequences consumed by halting runs is prefix-free. Plain mode is given the
// whole program and halts normally when it fetches past the end.
#pragma once

#include "aitlab/bitstring.hpp"

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace aitlab {

inline constexpr std::string_view kMachineVersion = "AITLAB-M1";
inline constexpr unsigned kOpcodeBits = 3;

enum class Opcode : std::uint8_t { Right = 0, Left = 1, Inc = 2, Dec = 3, Open = 4, Close = 5, Emit = 6, Halt = 7 };

struct MachineConfig {
  std::uint64_t max_steps = 4096;
  std::uint32_t max_program_bits = 24;  ///< multiple of 3
  BitString condition;
  std::uint32_t length_param = 0;  ///< n, always on the tape

  void validate() const;
};

enum class ExecStatus { Halted, BudgetExhausted, MachineError };

struct ExecOutcome {
  ExecStatus status = ExecStatus::BudgetExhausted;
  BitString output;
  std::uint32_t bits_read = 0;
  std::uint64_t steps = 0;

  bool halted() const noexcept { return status == ExecStatus::Halted; }
  friend bool operator==(const ExecOutcome&, const ExecOutcome&) = default;
};

/// Resumable interpreter core. `run()` executes until the machine stops or
/// needs the next opcode; the caller then `feed()`s one (prefix mode) or calls
/// `end_program()` (plain mode). Copying a Machine forks the computation, which
/// is how the enumerator explores the demand tree.
class Machine {
 public:
  enum class State { NeedOpcode, Halted, BudgetExhausted, MachineError };

  explicit Machine(const MachineConfig& cfg);

  State run();
  void feed(Opcode op);
  /// The next fetch runs past the end of a plain program: halt normally.
  State end_program();

  std::uint64_t steps() const noexcept { return steps_; }
  std::uint64_t max_steps() const noexcept { return max_steps_; }
  std::size_t opcodes_read() const noexcept { return program_.size(); }
  const BitString& output() const noexcept { return output_; }
  using Program = boost::container::small_vector<Opcode, 12>;
  const Program& program() const noexcept { return program_; }
  /// Program bits fetched so far.
  BitString program_bits() const;

 private:
  std::uint64_t& cell();

  std::uint64_t max_steps_;
  Program program_;
  boost::container::small_vector<std::int32_t, 12> match_;  ///< partner bracket index, -1 if none yet
  boost::container::small_vector<std::int32_t, 6> open_;    ///< unmatched '[' positions
  boost::container::small_vector<std::uint64_t, 24> tape_;
  std::int64_t origin_ = 0;  ///< vector index of cell 0
  std::int64_t head_ = 0;    ///< vector index of the head
  std::size_t ip_ = 0;
  bool scanning_ = false;    ///< forward scan for the ']' matching scan_from_
  std::size_t scan_from_ = 0;
  std::uint64_t steps_ = 0;
  BitString output_;
  State state_ = State::NeedOpcode;
};

/// Supplies program bits on demand; std::nullopt when no bit is available.
using BitSource = std::function<std::optional<bool>()>;

/// Runs the prefix interpreter, drawing bits from `oracle` one opcode at a time.
ExecOutcome run_prefix(const BitSource& oracle, const MachineConfig& cfg);
/// Prefix interpreter over a finite bit supply; demanding past its end is budget exhaustion.
ExecOutcome run_prefix(const BitString& bits, const MachineConfig& cfg);
/// Plain interpreter: the whole program is given; fetching past the end halts.
/// Trailing bits that do not fill an opcode are never fetched.
ExecOutcome run_plain(const BitString& program, const MachineConfig& cfg);

BitString opcode_bits(Opcode op);
/// Parses the mnemonic form, e.g. "<[-O]H".
BitString assemble(std::string_view mnemonics);
std::string disassemble(const BitString& bits);

}  // namespace aitlab
