#include "doctest.h"

#include "aitlab/lab.hpp"

#include <filesystem>

using namespace aitlab;

namespace {
LabConfig tiny(const std::filesystem::path& cache) {
  LabConfig c;
  c.budgets = Budgets{256, 12};
  c.plain = PlainBudgets{256, 12, 12};
  c.n_min = 2;
  c.n_max = 2;
  c.deep_n = 2;
  c.slack_max = 4;
  c.max_data_width = 1;
  c.halting_j_max = 2;
  c.random_tables = 200;
  c.cache_dir = cache;
  return c;
}
}  // namespace

TEST_CASE("ranges and lists") {
  CHECK(parse_range("4..6") == std::pair<std::int64_t, std::int64_t>{4, 6});
  CHECK(parse_range("2-5") == std::pair<std::int64_t, std::int64_t>{2, 5});
  CHECK(parse_range("3") == std::pair<std::int64_t, std::int64_t>{3, 3});
  CHECK_THROWS_AS(parse_range("6..4"), ConfigError);
  CHECK_THROWS_AS(parse_range("x"), ConfigError);
  CHECK(split_list("kraft, monotone,,tetration") == std::vector<std::string>{"kraft", "monotone", "tetration"});
}

TEST_CASE("config parsing and validation") {
  const LabConfig c = LabConfig::from_json_text(R"({"n": "2..3", "max_steps": 100, "max_program_bits": 9, "slack": "0..3"})");
  CHECK(c.n_min == 2);
  CHECK(c.n_max == 3);
  CHECK(c.budgets.max_steps == 100);
  CHECK(c.slack_max == 3);
  CHECK_THROWS_AS(LabConfig::from_json_text(R"({"bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(LabConfig::from_json_text("not json"), ConfigError);
  LabConfig bad;
  bad.budgets.max_program_bits = 10;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = LabConfig{};
  bad.claims = {"nope"};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("config hash ignores run-only fields") {
  LabConfig a, b;
  b.workers = 8;
  b.cache_dir = "elsewhere";
  b.format = ReportFormat::Json;
  CHECK(a.hash() == b.hash());
  b.budgets.max_steps = 100;
  CHECK(a.hash() != b.hash());
  CHECK(a.hash().size() == 16);
}

TEST_CASE("every claim id is listed once") {
  std::set<std::string> ids;
  for (const ClaimInfo& c : claim_catalog()) {
    CHECK(ids.insert(c.id).second);
    CHECK_FALSE(c.label.empty());
  }
}

TEST_CASE("bundle serialization") {
  ReportBundle b;
  b.config_hash = "00000000000000ff";
  CHECK(b.to_csv().find("config_hash=00000000000000ff") != std::string::npos);
  ClaimTable t;
  t.id = "x";
  t.label = "a, b";
  t.status = ClaimStatus::Fail;
  t.columns = {"c"};
  t.rows = {{"1,2"}};
  b.claims.push_back(t);
  CHECK(b.any_fail());
  CHECK(b.to_csv().find("\"a, b\"") != std::string::npos);
  CHECK(b.to_csv().find("\"1,2\"") != std::string::npos);
  CHECK(b.to_json().find("\"FAIL\"") != std::string::npos);
}

TEST_CASE("report needs enumerated domains") {
  const auto dir = std::filesystem::temp_directory_path() / "aitlab_unit_lab_missing";
  std::filesystem::remove_all(dir);
  Lab lab(tiny(dir));
  CHECK_THROWS_AS(lab.cmd_report({"kraft"}), MissingDomain);
  std::filesystem::remove_all(dir);
}

TEST_CASE("tiny end-to-end report is reproducible") {
  const auto dir = std::filesystem::temp_directory_path() / "aitlab_unit_lab";
  std::filesystem::remove_all(dir);
  std::string first;
  {
    Lab lab(tiny(dir));
    CHECK_FALSE(lab.cmd_enumerate().empty());
    const ReportBundle b = lab.cmd_report({"kraft", "monotone", "converters", "tetration"});
    REQUIRE(b.claims.size() == 4);
    CHECK(b.find("kraft")->status == ClaimStatus::Pass);
    CHECK(b.find("monotone")->status == ClaimStatus::Pass);
    CHECK(b.find("converters")->status == ClaimStatus::Pass);
    first = b.to_csv();
  }
  {
    LabConfig c = tiny(dir);
    c.workers = 4;
    Lab lab(c);
    CHECK(lab.cmd_report({"kraft", "monotone", "converters", "tetration"}).to_csv() == first);
    CHECK_THROWS_AS(lab.cmd_inspect(BitString::parse("000")), ConfigError);
    CHECK(lab.cmd_inspect(BitString::parse("00")).find("K=") != std::string::npos);
  }
  std::filesystem::remove_all(dir);
}
