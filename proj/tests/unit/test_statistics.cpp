#include "doctest.h"

#include "aitlab/statistics.hpp"

#include <filesystem>
#include <random>

using namespace aitlab;

namespace {
std::vector<Dyadic> table(std::initializer_list<int> nums, std::int64_t w) {
  std::vector<Dyadic> p;
  for (int v : nums) p.emplace_back(v, w);
  return p;
}
BitString bs(const char* s) { return BitString::parse(s); }
}  // namespace

TEST_CASE("set decoding") {
  Model s = decode_set_output(bs("0001"), 2);
  CHECK(s.set_size() == 2);
  CHECK(s.in_support(bs("00")));
  CHECK(s.in_support(bs("01")));
  CHECK_FALSE(s.in_support(bs("10")));
  CHECK(decode_set_output(bs("0000"), 2).set_size() == 1);
  CHECK_THROWS_AS(decode_set_output(bs("000"), 2), ModelError);
}

TEST_CASE("semimeasure decoding") {
  Model zero = decode_semimeasure_output(BitString::repeat(false, 12), 2, 3);
  CHECK(zero.mass().is_zero());
  // uniform: each entry 2^w / 2^n = 2 at w = 3, n = 2
  Model u = decode_semimeasure_output(bs("010010010010"), 2, 3);
  CHECK(u.mass() == Dyadic::from_int(1));
  CHECK_THROWS_AS(decode_semimeasure_output(bs("111111111111"), 2, 3), ModelError);
}

TEST_CASE("log terms") {
  const Model s = make_set_model(2, {bs("00"), bs("01"), bs("10")});
  CHECK(s.log_term(bs("00")) == 2);
  CHECK_FALSE(s.log_term(bs("11")).has_value());
  const Model p = make_semimeasure_model(2, table({3, 1, 0, 0}, 3));
  CHECK(p.log_term(bs("00")) == 2);  // ceil(-log 3/8)
  CHECK(p.log_term(bs("01")) == 3);
}

TEST_CASE("Shannon-Fano-Elias on uniform and point masses") {
  const ShannonFanoCode sf = shannon_fano(table({1, 1, 1, 1}, 2), 2);
  CHECK(sf.code.at(bs("00")).str() == "000");
  CHECK(sf.code.at(bs("01")).str() == "010");
  CHECK(sf.code.at(bs("10")).str() == "100");
  CHECK(sf.code.at(bs("11")).str() == "110");
  const ShannonFanoCode one = shannon_fano(table({0, 0, 1, 0}, 0), 2);
  CHECK(one.code.at(bs("10")).size() == 1);
}

TEST_CASE("Shannon-Fano-Elias is prefix-free on skewed tables") {
  // Truncating the cumulative sum would collide here; rounding up does not.
  const ShannonFanoCode sf = shannon_fano(table({1, 32, 0, 0}, 6), 2);
  std::vector<BitString> words;
  for (const auto& [y, c] : sf.code) words.push_back(c);
  CHECK_FALSE(prefix_violation(words).has_value());
}

TEST_CASE("Shannon-Fano-Elias property over random tables") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<Dyadic> p;
    int left = 64;
    for (int i = 0; i < 8; ++i) {
      const int v = left ? static_cast<int>(rng() % (left + 1)) : 0;
      left -= v;
      p.emplace_back(v, 6);
    }
    const ShannonFanoCode sf = shannon_fano(p, 3);
    std::vector<BitString> words;
    for (std::uint64_t i = 0; i < 8; ++i) {
      if (p[i].is_zero()) continue;
      const BitString& c = sf.code.at(BitString::from_uint(i, 3));
      CHECK(Dyadic::pow2_neg(static_cast<std::int64_t>(c.size()) - 1) <= p[i]);
      CHECK(sf.decode.at(c) == BitString::from_uint(i, 3));
      words.push_back(c);
    }
    CHECK_FALSE(prefix_violation(words).has_value());
  }
}

TEST_CASE("function converters") {
  Model f;
  f.kind = ModelKind::Function;
  f.n = 2;
  f.function = {{bs("01"), bs("10")}};
  CHECK(func_to_measure(f, 8).measure.at(2) == Dyadic::pow2_neg(3));
  f.function = {{bs("01"), bs("10")}, {bs("011"), bs("10")}};
  CHECK(func_to_measure(f, 8).measure.at(2) == Dyadic::pow2_neg(3));
  CHECK(func_to_measure(f, 8).mass() <= Dyadic::from_int(1));

  f.data_width = 2;
  f.function = {{bs("00"), bs("11")}, {bs("01"), bs("11")}, {bs("10"), bs("11")}, {bs("11"), bs("11")}};
  CHECK(func_to_set(f).set_size() == 1);
  f.function = {{bs("00"), bs("00")}, {bs("01"), bs("01")}, {bs("10"), bs("10")}, {bs("11"), bs("11")}};
  CHECK(func_to_set(f).set_size() == 4);
  CHECK(f.log_term(bs("10")) == 2);
}

TEST_CASE("cylinders") {
  const BitString x = bs("0110");
  CHECK(cylinder_set(x, 0).set_size() == 16);
  CHECK(cylinder_set(x, 4).set_size() == 1);
  CHECK(cylinder_set(x, 4).in_support(x));
  CHECK(cylinder_set(x, 2).set_size() == 4);
}

TEST_CASE("function models from programs") {
  const Budgets b{512, 24};
  // Ignores the condition: constant.
  Model c = decode_function_model(assemble("OOH"), 2, 2, MachineMode::Prefix, b);
  CHECK(func_to_set(c).set_size() == 1);
  // m = 0: a single point.
  Model single = decode_function_model(assemble("OOH"), 2, 0, MachineMode::Prefix, b);
  CHECK(single.function.size() == 1);
  // Loops forever when the first condition bit is 1 (cell[-2] = 2 stays non-zero).
  try {
    decode_function_model(assemble("<<-[]OOH"), 2, 1, MachineMode::Prefix, b);
    FAIL("expected a rejection");
  } catch (const FunctionRejected& e) {
    CHECK(e.condition.str() == "1");
  }
}

TEST_CASE("deciders on small universes") {
  Universe u(Budgets{512, 15}, PlainBudgets{512, 15, 15});
  ModelLibrary lib(u, 4, 1);
  const BitString x = bs("00");
  const Model outside = make_set_model(2, {bs("11")});
  CHECK(lib.judge(x, outside, Definition::SS, 0).state == VerdictState::NotInSupport);
  CHECK(lib.judge(x, outside, Definition::WSS, 0).state == VerdictState::NotInSupport);
  CHECK(lib.judge(x, outside, Definition::TM, 0).state == VerdictState::NotInSupport);

  // Verdicts are monotone in slack.
  for (const Model* z : lib.candidates(2, MachineMode::Prefix, ModelKind::Set)) {
    for (Definition d : {Definition::SS, Definition::WSS, Definition::TM}) {
      bool passed = false;
      for (std::int64_t s = 0; s <= 8; ++s) {
        const bool now = lib.judge(x, *z, d, s).passed();
        if (passed) CHECK(now);
        passed = now;
      }
    }
  }
  // The set-model index holds only valid, distinct sets.
  for (const Model* z : lib.index(2, MachineMode::Prefix, ModelKind::Set).ordered()) {
    CHECK(z->set_size() > 0);
    CHECK(decode_set_model(z->program, 2, MachineMode::Prefix, u.budgets()).key() == z->key());
  }
}

TEST_CASE("model files") {
  const auto dir = std::filesystem::temp_directory_path() / "aitlab_unit_models";
  std::filesystem::create_directories(dir);
  Model p = make_semimeasure_model(2, table({3, 1, 0, 2}, 3));
  p.program = assemble("OH");
  p.complexity = 6;
  store_model(p, dir / "p.model");
  const Model q = load_model(dir / "p.model");
  CHECK(q.key() == p.key());
  CHECK(q.complexity == p.complexity);
  CHECK(q.program == p.program);
  CHECK_THROWS(deserialize_model("AITLAB-MODEL v2\n"));
  std::filesystem::remove_all(dir);
}
