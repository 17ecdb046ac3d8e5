#include "doctest.h"

#include "aitlab/machine.hpp"

#include <random>

using namespace aitlab;

namespace {
MachineConfig cfg(std::uint32_t n = 0, std::uint64_t steps = 4096, std::uint32_t bits = 24) {
  MachineConfig c;
  c.max_steps = steps;
  c.max_program_bits = bits;
  c.length_param = n;
  return c;
}
}  // namespace

TEST_CASE("natural association") {
  CHECK(nat_encode(BitString()) == 0);
  CHECK(nat_encode(BitString::parse("0")) == 1);
  CHECK(nat_encode(BitString::parse("1")) == 2);
  CHECK(nat_encode(BitString::parse("00")) == 3);
  CHECK(nat_encode(BitString::parse("111")) == 14);
  CHECK(nat_decode(std::uint64_t{0}).empty());
  for (std::uint64_t v = 0; v < 2000; ++v) CHECK(nat_encode(nat_decode(v)) == v);
}

TEST_CASE("prefix runs") {
  auto r = run_prefix(BitString::parse("111"), cfg());
  CHECK(r.halted());
  CHECK(r.output.empty());
  CHECK(r.bits_read == 3);

  r = run_prefix(BitString::parse("110111"), cfg());
  CHECK(r.halted());
  CHECK(r.output.str() == "0");
  CHECK(r.bits_read == 6);

  r = run_prefix(BitString::parse("100"), cfg());
  CHECK_FALSE(r.halted());
}

TEST_CASE("plain runs") {
  auto r = run_plain(BitString::parse("110"), cfg());
  CHECK(r.halted());
  CHECK(r.output.str() == "0");
  CHECK(nat_encode(r.output) == 1);

  r = run_plain(BitString(), cfg());
  CHECK(r.halted());
  CHECK(r.output.empty());

  r = run_plain(BitString::parse("100101"), cfg());
  CHECK(r.halted());
  CHECK(r.output.empty());
}

TEST_CASE("trailing plain bits are never fetched") {
  const auto a = run_plain(assemble("+O"), cfg());
  const auto b = run_plain(assemble("+O") + BitString::parse("10"), cfg());
  CHECK(a.output == b.output);
  CHECK(a.steps == b.steps);
}

TEST_CASE("length parameter and condition are on the tape") {
  // cell[-1] = n: move left and emit its parity.
  CHECK(run_plain(assemble("<O"), cfg(3)).output.str() == "1");
  CHECK(run_plain(assemble("<O"), cfg(4)).output.str() == "0");
  // cell[-2] = 1 + y_0.
  MachineConfig c = cfg();
  c.condition = BitString::parse("1");
  CHECK(run_plain(assemble("<<O"), c).output.str() == "0");
  c.condition = BitString::parse("0");
  CHECK(run_plain(assemble("<<O"), c).output.str() == "1");
}

TEST_CASE("unmatched close bracket is a machine error when executed") {
  const auto r = run_plain(assemble("+]"), cfg());
  CHECK(r.status == ExecStatus::MachineError);
}

TEST_CASE("step budget is respected") {
  const auto r = run_plain(assemble("+[]"), cfg(0, 100));
  CHECK(r.status == ExecStatus::BudgetExhausted);
  CHECK(r.steps <= 100);
}

TEST_CASE("assemble and disassemble are inverse") {
  for (const char* m : {"", "H", "<[-O]H", "><+-[]OH"}) CHECK(disassemble(assemble(m)) == m);
}

TEST_CASE("prefix property: a halting run consumes exactly its program") {
  // Any extension of a halting program halts identically after the same number of bits.
  std::mt19937_64 rng(7);
  int halting = 0;
  for (int i = 0; i < 3000; ++i) {
    BitString p;
    const int len = 3 * static_cast<int>(rng() % 7);
    for (int b = 0; b < len; ++b) p.push_back(rng() & 1U);
    const auto r = run_prefix(p, cfg(2));
    if (!r.halted() || r.bits_read != p.size()) continue;
    ++halting;
    const auto ext = run_prefix(p + BitString::parse("101110"), cfg(2));
    CHECK(ext.halted());
    CHECK(ext.bits_read == p.size());
    CHECK(ext.output == r.output);
  }
  CHECK(halting > 0);
}
