#include "doctest.h"

#include "aitlab/complexity.hpp"
#include "oracle.hpp"

using namespace aitlab;

namespace {
const Budgets kB{512, 12};
const PlainBudgets kP{512, 12, 12};

MachineConfig mc(std::uint32_t n, std::uint64_t steps, std::uint32_t bits) {
  MachineConfig c;
  c.length_param = n;
  c.max_steps = steps;
  c.max_program_bits = bits;
  return c;
}
}  // namespace

TEST_CASE("K of a one-bit string") {
  Universe u(kB, kP);
  const KResult r = k_budget(u, BitString::parse("0"));
  CHECK(r.k.is_finite());
  CHECK(r.k.bits() <= 6);
  REQUIRE(r.witness);
  CHECK(run_prefix(*r.witness, mc(1, 512, 12)).output.str() == "0");
  const OutputIndex& idx = u.index(1, BitString());
  const std::uint64_t fastest = idx.history(BitString::parse("0")).front().steps;
  CHECK(fastest > 0);
  CHECK_FALSE(idx.k(BitString::parse("0"), fastest - 1).is_finite());
}

TEST_CASE("K_budget matches brute force for every x, every t") {
  Universe u(kB, kP);
  for (std::uint32_t n : {1U, 2U, 3U}) {
    const auto dom = oracle::prefix_domain(mc(n, 512, 12));
    for (std::uint64_t v = 0; v < (1U << n); ++v) {
      const BitString x = BitString::from_uint(v, n);
      for (std::uint64_t t : {5ULL, 20ULL, 60ULL, 200ULL, 512ULL}) {
        const auto want = oracle::k(dom, x, t);
        const CodeLength got = k_budget(u, x, BitString(), t).k;
        if (want) CHECK(got == CodeLength(static_cast<std::int64_t>(*want)));
        else CHECK_FALSE(got.is_finite());
      }
    }
  }
}

TEST_CASE("K_t is non-increasing in t") {
  Universe u(kB, kP);
  const OutputIndex& idx = u.index(3, BitString());
  for (const auto& [x, h] : idx.outputs()) {
    CodeLength prev = CodeLength::infinite();
    for (std::uint64_t t = 0; t <= 512; t += 16) {
      const CodeLength k = idx.k(x, t);
      CHECK(k <= prev);
      prev = k;
    }
  }
}

TEST_CASE("plain complexity") {
  Universe u(kB, kP);
  CHECK(c_plain(u, BitString()) == CodeLength(0));
  CHECK(c_plain(u, BitString::parse("0")).bits() <= 3);
  for (std::uint32_t n : {1U, 2U, 3U})
    for (std::uint64_t v = 0; v < (1U << n); ++v) {
      const BitString x = BitString::from_uint(v, n);
      const auto want = oracle::c(mc(n, 512, 12), x);
      const CodeLength got = c_plain(u, x);
      if (want) CHECK(got == CodeLength(static_cast<std::int64_t>(*want)));
      else CHECK_FALSE(got.is_finite());
    }
}

TEST_CASE("busy beaver") {
  Universe u(kB, kP);
  CHECK(bb(u, 4, 0) == 0);
  CHECK(bb(u, 4, 3) == 1);
  for (std::uint32_t k = 0; k <= 12; ++k) CHECK(bb(u, 4, k) == oracle::bb(mc(4, 512, 12), k));
  for (std::uint32_t k = 1; k <= 12; ++k) CHECK(bb(u, 4, k - 1) <= bb(u, 4, k));
  CHECK(bb_time(u, 4, -1) == 0);
  CHECK(bb_time(u, 4, 12) <= 512);
}

TEST_CASE("slog") {
  CHECK(slog(1) == 0);
  CHECK(slog(2) == 1);
  CHECK(slog(16) == 3);
  CHECK(slog(65535) == 3);
  CHECK(slog(65536) == 4);
}

TEST_CASE("m-depth") {
  Universe u(kB, kP);
  for (std::uint64_t v = 0; v < 8; ++v) {
    const BitString x = BitString::from_uint(v, 3);
    const CodeLength k = k_budget(u, x).k;
    if (!k.is_finite()) continue;
    for (std::int64_t s : {0, 2}) {
      const DepthProfile d = m_depth(u, x, s);
      REQUIRE(d.k_x);
      CHECK(*d.k_x >= 0);
      // At t_{k_x} the complexity is already within slack of its final value.
      const CodeLength at = u.index(3, BitString()).k(x, u.index(3, BitString()).t_k(*d.k_x));
      REQUIRE(at.is_finite());
      CHECK(at.bits() <= k.bits() + s);
    }
    CHECK(*m_depth(u, x, 2).k_x <= *m_depth(u, x, 0).k_x);
  }
}

TEST_CASE("witness census") {
  Universe u(kB, kP);
  const BitString w = BitString::parse("00");
  const KResult r = k_budget(u, w);
  REQUIRE(r.witness);
  const auto zero = witness_census(u, w, 0);
  CHECK(std::find(zero.begin(), zero.end(), *r.witness) != zero.end());
  CHECK(witness_census(u, w, 3).size() >= zero.size());
}

TEST_CASE("tetration trace") {
  Universe u(kB, kP);
  const TetrationTrace t = tetration_iterate(u, BitString::parse("01"), 2);
  REQUIRE_FALSE(t.trace.empty());
  CHECK(t.trace.front() == k_budget(u, BitString::parse("01")).k);
}

TEST_CASE("code length arithmetic") {
  CHECK((CodeLength(3) + CodeLength::infinite()) == CodeLength::infinite());
  CHECK(difference(CodeLength(5), CodeLength(2)) == 3);
  CHECK_FALSE(difference(CodeLength(5), CodeLength::infinite()).has_value());
  CHECK_THROWS(CodeLength::infinite().bits());
}
