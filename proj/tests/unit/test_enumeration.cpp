#include "doctest.h"

#include "aitlab/enumeration.hpp"
#include "oracle.hpp"

#include <filesystem>

using namespace aitlab;

TEST_CASE("n=0 domain at L=3, T=10") {
  const HaltingDB db = enumerate_domain(0, BitString(), Budgets{10, 3});
  REQUIRE(db.records.size() == 1);
  CHECK(db.records[0].program.str() == "111");
  CHECK(db.kraft_sum() == Dyadic::pow2_neg(3));
  CHECK(omega_t(db, 0) == Dyadic());
  CHECK(omega_t(db, 10) == Dyadic::pow2_neg(3));
  CHECK(omega_prefix(db, 3).str() == "001");
  CHECK(omega_prefix(db, 5).str() == "00100");
  CHECK(omega_prefix(db, 1).str() == "0");
  CHECK(t_k(db, 3) == 0);  // 1/8 - 0 <= 2^-3 already
  CHECK(t_k(db, 4) == db.records[0].steps);
  CHECK(t_k(db, 9) == db.records[0].steps);
}

TEST_CASE("domain equals the brute-force prefix domain") {
  for (std::uint32_t n : {0U, 1U, 2U, 3U}) {
    const Budgets b{300, 12};
    const HaltingDB db = enumerate_domain(n, BitString(), b);
    MachineConfig c = db.machine_config();
    const auto dom = oracle::prefix_domain(c);
    REQUIRE(db.records.size() == dom.size());
    for (const HaltRecord& r : db.records) {
      const auto it = dom.find(r.program);
      REQUIRE(it != dom.end());
      CHECK(it->second.steps == r.steps);
      CHECK(it->second.output == r.output);
    }
  }
}

TEST_CASE("records are canonical, prefix-free and Kraft-bounded") {
  const HaltingDB db = enumerate_domain(2, BitString::parse("01"), Budgets{500, 15});
  for (std::size_t i = 1; i < db.records.size(); ++i) CHECK(canonical_less(db.records[i - 1], db.records[i]));
  std::vector<BitString> ps;
  for (const auto& r : db.records) ps.push_back(r.program);
  CHECK_FALSE(prefix_violation(ps).has_value());
  CHECK(db.kraft_sum() <= Dyadic::from_int(1));
}

TEST_CASE("budget monotonicity") {
  const HaltingDB small = enumerate_domain(1, BitString(), Budgets{10, 9});
  const HaltingDB big = enumerate_domain(1, BitString(), Budgets{100, 9});
  for (const HaltRecord& r : small.records) {
    const HaltRecord* q = big.find(r.program);
    REQUIRE(q != nullptr);
    CHECK(*q == r);
  }
  std::vector<HaltRecord> filtered;
  for (const HaltRecord& r : big.records)
    if (r.steps <= 10) filtered.push_back(r);
  CHECK(filtered == small.records);
}

TEST_CASE("workers do not change the result") {
  const Budgets b{400, 15};
  CHECK(serialize(enumerate_domain(3, BitString(), b, 1)) == serialize(enumerate_domain(3, BitString(), b, 6)));
}

TEST_CASE("omega_t is non-decreasing") {
  const HaltingDB db = enumerate_domain(2, BitString(), Budgets{300, 12});
  Dyadic prev;
  for (std::uint64_t t = 0; t <= 300; t += 7) {
    const Dyadic o = omega_t(db, t);
    CHECK(prev <= o);
    prev = o;
  }
  CHECK(omega_final(db) <= db.kraft_sum());
}

TEST_CASE("halting sequence") {
  MachineConfig c;
  c.max_steps = 200;
  c.max_program_bits = 12;
  const BitString h = halting_sequence(c, 40);
  CHECK(h[0] == false);                                    // ε
  CHECK(h[static_cast<std::size_t>(nat_encode(BitString::parse("111")))] == true);
  CHECK(h[static_cast<std::size_t>(nat_encode(BitString::parse("11")))] == false);
  CHECK(h[static_cast<std::size_t>(nat_encode(BitString::parse("1111")))] == false);
}

TEST_CASE("beta on two records") {
  HaltingDB db;
  db.budgets = Budgets{10, 3};
  db.records = {{BitString::parse("111"), 5, BitString()}, {BitString::parse("110"), 9, BitString()}};
  const auto beta = beta_encoding(db);
  CHECK(beta.at(BitString::parse("111")).str() == "001");
  CHECK(beta.at(BitString::parse("110")).str() == "010");
}

TEST_CASE("full-precision omega decodes the domain exactly") {
  const HaltingDB db = enumerate_domain(1, BitString(), Budgets{200, 9});
  const std::size_t j = 40;
  const HaltingDecode d = omega_to_halting(omega_prefix(db, j), db, 0);
  std::vector<BitString> expected;
  for (const HaltRecord& r : db.records)
    if (r.program.size() < d.length_bound) expected.push_back(r.program);
  std::sort(expected.begin(), expected.end(), shortlex_less);
  CHECK(d.halting == expected);
  CHECK(decode_slack_needed(db, j) == 0);
}

TEST_CASE("store and load") {
  const HaltingDB db = enumerate_domain(1, BitString::parse("1"), Budgets{100, 9});
  const auto dir = std::filesystem::temp_directory_path() / "aitlab_unit_store";
  std::filesystem::create_directories(dir);
  const auto p = dir / "db.hdb";
  store(db, p);
  CHECK(load(p) == db);

  std::string text = serialize(db);
  text.erase(text.rfind('\n', text.size() - 2) + 1);  // drop the last record
  CHECK_THROWS_AS(deserialize(text), FormatError);

  std::string other = serialize(db);
  other.replace(other.find("AITLAB-M1"), 9, "AITLAB-M9");
  CHECK_THROWS_AS(deserialize(other), FormatError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("budget caps") {
  CHECK_THROWS_AS(enumerate_domain(1, BitString(), Budgets{100, 10}), ConfigError);
  CHECK_THROWS_AS(enumerate_domain(1, BitString(), Budgets{100, 33}), ConfigError);
}
