#include "aitlab/machine.hpp"

#include <stdexcept>
#include <string>

namespace aitlab {

void MachineConfig::validate() const {
  if (max_program_bits % kOpcodeBits != 0)
    throw std::invalid_argument("max_program_bits must be a multiple of 3, got " + std::to_string(max_program_bits));
}

Machine::Machine(const MachineConfig& cfg) : max_steps_(cfg.max_steps) {
  const auto len = static_cast<std::int64_t>(cfg.condition.size());
  origin_ = len + 2;
  tape_.assign(static_cast<std::size_t>(origin_ + 1), 0);
  tape_[static_cast<std::size_t>(origin_ - 1)] = cfg.length_param;
  for (std::int64_t i = 0; i < len; ++i)
    tape_[static_cast<std::size_t>(origin_ - 2 - i)] = 1U + (cfg.condition[static_cast<std::size_t>(i)] ? 1U : 0U);
  head_ = origin_;
}

std::uint64_t& Machine::cell() { return tape_[static_cast<std::size_t>(head_)]; }

void Machine::feed(Opcode op) {
  const auto pos = static_cast<std::int32_t>(program_.size());
  program_.push_back(op);
  match_.push_back(-1);
  if (op == Opcode::Open) {
    open_.push_back(pos);
  } else if (op == Opcode::Close && !open_.empty()) {
    const std::int32_t partner = open_.back();
    open_.pop_back();
    match_[static_cast<std::size_t>(pos)] = partner;
    match_[static_cast<std::size_t>(partner)] = pos;
  }
  state_ = State::NeedOpcode;
}

Machine::State Machine::end_program() {
  if (state_ == State::NeedOpcode) state_ = State::Halted;
  return state_;
}

Machine::State Machine::run() {
  if (state_ != State::NeedOpcode) return state_;
  const auto charge = [this](std::uint64_t cost) {
    if (cost > max_steps_ - steps_) {
      steps_ = max_steps_;
      return false;
    }
    steps_ += cost;
    return true;
  };

  for (;;) {
    if (scanning_) {
      const std::int32_t target = match_[scan_from_];
      if (target < 0) {
        // Scan every known position, then demand more.
        if (!charge(program_.size() - ip_)) return state_ = State::BudgetExhausted;
        ip_ = program_.size();
        return state_ = State::NeedOpcode;
      }
      if (!charge(static_cast<std::uint64_t>(target) + 1 - ip_)) return state_ = State::BudgetExhausted;
      ip_ = static_cast<std::size_t>(target) + 1;
      scanning_ = false;
      continue;
    }
    if (ip_ == program_.size()) return state_ = State::NeedOpcode;
    if (!charge(1)) return state_ = State::BudgetExhausted;

    switch (program_[ip_]) {
      case Opcode::Right:
        if (++head_ == static_cast<std::int64_t>(tape_.size())) tape_.push_back(0);
        ++ip_;
        break;
      case Opcode::Left:
        if (head_ == 0) {
          constexpr std::int64_t kGrow = 16;
          tape_.insert(tape_.begin(), kGrow, 0);
          origin_ += kGrow;
          head_ += kGrow;
        }
        --head_;
        ++ip_;
        break;
      case Opcode::Inc:
        ++cell();
        ++ip_;
        break;
      case Opcode::Dec:
        if (cell() > 0) --cell();
        ++ip_;
        break;
      case Opcode::Open:
        if (cell() == 0) {
          scanning_ = true;
          scan_from_ = ip_;
        }
        ++ip_;
        break;
      case Opcode::Close: {
        const std::int32_t partner = match_[ip_];
        if (partner < 0) return state_ = State::MachineError;
        if (cell() != 0) {
          if (!charge(ip_ - static_cast<std::size_t>(partner))) return state_ = State::BudgetExhausted;
          ip_ = static_cast<std::size_t>(partner) + 1;
        } else {
          ++ip_;
        }
        break;
      }
      case Opcode::Emit:
        output_.push_back((cell() & 1U) != 0);
        ++ip_;
        break;
      case Opcode::Halt:
        return state_ = State::Halted;
    }
  }
}

BitString Machine::program_bits() const {
  BitString bits;
  bits.reserve(program_.size() * kOpcodeBits);
  for (Opcode op : program_) bits.append(opcode_bits(op));
  return bits;
}

namespace {

ExecOutcome finish(const Machine& m, Machine::State s) {
  ExecOutcome out;
  out.output = m.output();
  out.steps = m.steps();
  out.bits_read = static_cast<std::uint32_t>(m.opcodes_read() * kOpcodeBits);
  switch (s) {
    case Machine::State::Halted: out.status = ExecStatus::Halted; break;
    case Machine::State::MachineError: out.status = ExecStatus::MachineError; break;
    default: out.status = ExecStatus::BudgetExhausted; break;
  }
  return out;
}

}  // namespace

ExecOutcome run_prefix(const BitSource& oracle, const MachineConfig& cfg) {
  cfg.validate();
  Machine m(cfg);
  for (;;) {
    const Machine::State s = m.run();
    if (s != Machine::State::NeedOpcode) return finish(m, s);
    if ((m.opcodes_read() + 1) * kOpcodeBits > cfg.max_program_bits) return finish(m, Machine::State::BudgetExhausted);
    unsigned code = 0;
    for (unsigned i = 0; i < kOpcodeBits; ++i) {
      const std::optional<bool> bit = oracle();
      if (!bit) return finish(m, Machine::State::BudgetExhausted);
      code = (code << 1) | (*bit ? 1U : 0U);
    }
    m.feed(static_cast<Opcode>(code));
  }
}

ExecOutcome run_prefix(const BitString& bits, const MachineConfig& cfg) {
  std::size_t pos = 0;
  return run_prefix(
      [&]() -> std::optional<bool> {
        if (pos >= bits.size()) return std::nullopt;
        return bits[pos++];
      },
      cfg);
}

ExecOutcome run_plain(const BitString& program, const MachineConfig& cfg) {
  Machine m(cfg);
  std::size_t pos = 0;
  for (;;) {
    const Machine::State s = m.run();
    if (s != Machine::State::NeedOpcode) return finish(m, s);
    if (pos + kOpcodeBits > program.size()) return finish(m, m.end_program());
    unsigned code = 0;
    for (unsigned i = 0; i < kOpcodeBits; ++i) code = (code << 1) | (program[pos++] ? 1U : 0U);
    m.feed(static_cast<Opcode>(code));
  }
}

BitString opcode_bits(Opcode op) { return BitString::from_uint(static_cast<unsigned>(op), kOpcodeBits); }

BitString assemble(std::string_view mnemonics) {
  static constexpr std::string_view kSymbols = "><+-[]OH";
  BitString bits;
  for (char c : mnemonics) {
    const auto code = kSymbols.find(c);
    if (code == std::string_view::npos) throw std::invalid_argument(std::string("unknown mnemonic '") + c + "'");
    bits.append(opcode_bits(static_cast<Opcode>(code)));
  }
  return bits;
}

std::string disassemble(const BitString& bits) {
  static constexpr std::string_view kSymbols = "><+-[]OH";
  std::string text;
  for (std::size_t i = 0; i + kOpcodeBits <= bits.size(); i += kOpcodeBits)
    text.push_back(kSymbols[bits.substr(i, kOpcodeBits).to_uint()]);
  if (bits.size() % kOpcodeBits != 0) text += "~" + bits.substr(bits.size() - bits.size() % kOpcodeBits, kOpcodeBits).str();
  return text;
}

}  // namespace aitlab
