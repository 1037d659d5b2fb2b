#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "report.hpp"

namespace cspi::report {
namespace {

ExperimentConfig make(Experiment e, nlohmann::json params = nlohmann::json::object()) { return {e, std::move(params)}; }

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (std::size_t pos = 0; (pos = text.find("\r\n", pos)) != std::string::npos; pos += 2) ++n;
  return n;
}

TEST(Polynomial, ParsesCoefficientsAndPowers) {
  EXPECT_EQ(parse_polynomial("Sz^2", "Sz"), (std::vector<double>{0, 0, 1}));
  EXPECT_EQ(parse_polynomial("0.3 - 2*Sz", "Sz"), (std::vector<double>{0.3, -2}));
  EXPECT_EQ(parse_polynomial(" -Sz + 4 Sz^3 + Sz ", "Sz"), (std::vector<double>{0, 0, 0, 4}));
  EXPECT_EQ(parse_polynomial("Sz^2/4 + 1e-1", "Sz"), (std::vector<double>{0.1, 0, 0.25}));
  EXPECT_EQ(parse_polynomial("0.5*n^2 - n", "n"), (std::vector<double>{0, -1, 0.5}));
}

TEST(Polynomial, RejectsMalformedInput) {
  for (const char* bad : {"", "Sz^", "Sz^-1", "2 Sy", "Sz Sz", "Sz^2 * 3", "x", "Sz/0", "n"}) {
    EXPECT_THROW(parse_polynomial(bad, "Sz"), ConfigError) << bad;
  }
  try {
    parse_polynomial("Sz^q", "Sz");
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "hamiltonian");
  }
}

TEST(Config, ErrorsNameTheField) {
  auto field_of = [](const ExperimentConfig& c) {
    try {
      run(c);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(field_of(make(Experiment::spin_z, {{"two_s", 0}})), "two_s");
  EXPECT_EQ(field_of(make(Experiment::spin_z, {{"s", 0.3}})), "s");
  EXPECT_EQ(field_of(make(Experiment::spin_z, {{"beta", {1.0, -1.0}}})), "beta");
  EXPECT_EQ(field_of(make(Experiment::bose_z, {{"ordering", "anti"}})), "ordering");
  EXPECT_EQ(field_of(make(Experiment::bose_z, {{"U", 0.0}})), "U");
  EXPECT_EQ(field_of(make(Experiment::semiclassics, {{"h", {0.5, 1.0}}})), "h");
  EXPECT_EQ(field_of(make(Experiment::discretize, {{"system", "rotor"}})), "system");
  EXPECT_EQ(field_of(make(Experiment::discretize, {{"modes", {"midpoint"}}})), "modes");
  EXPECT_EQ(field_of(make(Experiment::identity_check, {{"typo", 1}})), "typo");
  EXPECT_THROW(config_from_json({{"two_s", 2}}), ConfigError);
  EXPECT_THROW(config_from_json({{"experiment", "unknown"}}), ConfigError);
  EXPECT_THROW(parse_format("xml"), ConfigError);
}

TEST(Config, SpinMayBeGivenAsHalfInteger) {
  const auto r = run(make(Experiment::spin_z, {{"s", 1.5}}));
  EXPECT_EQ(r.config.at("two_s"), 3);
}

TEST(Report, SpinZCertifiedRow) {
  const auto r = run(make(Experiment::spin_z, {{"two_s", 2}, {"hamiltonian", "Sz^2"}, {"beta", 1.0}}));
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_NEAR(std::get<double>(r.rows[0][1]), 2.0 * std::exp(-1.0) + 1.0, 1e-12);
  EXPECT_NEAR(std::get<double>(r.rows[0][2]), 2.0 * std::exp(-1.0) + std::exp(-0.5), 1e-12);
  EXPECT_TRUE(r.summary.passed);
  EXPECT_EQ(r.experiment, "spin-z");
  EXPECT_EQ(r.schema_version, kSchemaVersion);
}

TEST(Report, SameConfigGivesIdenticalOutput) {
  for (auto e : {Experiment::spin_z, Experiment::bose_z, Experiment::identity_check, Experiment::semiclassics}) {
    EXPECT_EQ(to_json_text(run(make(e))), to_json_text(run(make(e)))) << to_string(e);
    EXPECT_EQ(to_csv(run(make(e))), to_csv(run(make(e)))) << to_string(e);
  }
}

TEST(Report, JsonRoundTripIsFieldForField) {
  for (auto e : {Experiment::spin_z, Experiment::bose_z, Experiment::semiclassics, Experiment::identity_check,
                 Experiment::winding_sum}) {
    const auto r = run(make(e));
    EXPECT_EQ(parse_json_text(to_json_text(r)), r) << to_string(e);
  }
  Report mixed;
  mixed.experiment = "spin-z";
  mixed.columns = {"a", "b", "c", "d", "e"};
  mixed.rows = {{std::monostate{}, true, std::int64_t{-3}, 0.1 + 0.2, std::string("x,\"y\"")},
                {std::monostate{}, false, std::int64_t{7}, 2.0, std::string("")}};
  mixed.summary = {false, {{"check", false, true, "detail"}}};
  EXPECT_EQ(parse_json_text(to_json_text(mixed)), mixed);
}

TEST(Report, CsvHasHeaderPlusOneLinePerRow) {
  const auto r = run(make(Experiment::spin_z, {{"beta", {0.5, 1.0, 2.0}}}));
  const auto csv = to_csv(r);
  EXPECT_EQ(count_lines(csv), r.rows.size() + 1);
  EXPECT_EQ(csv.substr(0, csv.find("\r\n")), "beta,Z_exact,Z_continuum,Z_substituted,abs_dev,rel_dev,substituted_rel_dev");
  EXPECT_NE(csv.find("1.7357588823428847"), std::string::npos);  // 17 significant digits
}

TEST(Report, CsvQuotesSpecialCharacters) {
  Report r;
  r.columns = {"label"};
  r.rows = {{std::string("a,b")}, {std::string("say \"hi\"")}};
  EXPECT_EQ(to_csv(r), "label\r\n\"a,b\"\r\n\"say \"\"hi\"\"\"\r\n");
}

TEST(Report, EmptyRowsStillEmitHeaderAndArray) {
  Report r;
  r.experiment = "winding-sum";
  r.columns = {"k_max", "Z_winding"};
  EXPECT_EQ(to_csv(r), "k_max,Z_winding\r\n");
  const auto doc = to_json(r);
  EXPECT_TRUE(doc.at("rows").is_array());
  EXPECT_TRUE(doc.at("rows").empty());
  EXPECT_EQ(doc.at("schema_version"), 1);
  EXPECT_EQ(parse_json_report(doc), r);
}

TEST(Report, EmitWritesFilesAndReportsBadPaths) {
  const auto dir = std::filesystem::temp_directory_path() / "cspi_report_test";
  std::filesystem::create_directories(dir);
  const auto r = run(make(Experiment::identity_check));
  emit(r, Format::json, dir / "out.json");
  std::ifstream in(dir / "out.json");
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(parse_json_text(buf.str()), r);
  try {
    emit(r, Format::csv, dir / "missing" / "out.csv");
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("missing"), std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST(Report, FailingCertifiedCheckMarksSummary) {
  // under-resolved grid: the identity check is not gating, everything else passes
  const auto loose = run(make(Experiment::identity_check, {{"two_s", 4}, {"n_theta", 2}}));
  EXPECT_FALSE(loose.summary.checks[0].passed);
  EXPECT_TRUE(loose.summary.passed);
  const auto bose = run(make(Experiment::bose_z, {{"mu", 1.0}, {"U", 3.0}, {"beta", {0.5, 1.0, 2.0}}}));
  EXPECT_TRUE(bose.summary.passed);
  EXPECT_EQ(bose.summary.checks.size(), 2u);
}

}  // namespace
}  // namespace cspi::report
