#include <doctest.h>

#include <sstream>

#include <cmath>
#include <vector>

#include "cpl/asymptotics.hpp"
#include "cpl/constants.hpp"
#include <json.hpp>

#include "cpl/records.hpp"
#include "cpl/run_config.hpp"

using namespace cpl;

namespace {

const char* kGoodConfig = R"(
# comment
[material]
epsilon0 = 4.0
mu0 = 2.0
conductivity.kind = constant
conductivity.sigma0 = 1.5e8

[atom]
alpha0_m3 = 1e-21
beta0_m3 = 3e-22

[geometry]
separation_m = 1e-6
temperature_K = 100.0
temperature_sweep.start_K = 10.0
temperature_sweep.stop_K = 100.0
temperature_sweep.points = 3
temperature_sweep.spacing = log

[numerics]
quad_rel_tol = 1e-9
series_tail_tol = 1e-11
max_terms = 50000

[output]
format = json
path = out.json
)";

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_run_config(in);
}

}  // namespace

TEST_CASE("run config: full round trip of every key") {
  const RunConfig cfg = parse(kGoodConfig);
  CHECK(cfg.material.epsilon0 == 4.0);
  CHECK(cfg.material.mu0 == 2.0);
  CHECK(cfg.material.conductivity.kind == ConductivityKind::constant);
  CHECK(cfg.material.conductivity.sigma0_rad_s == 1.5e8);
  CHECK(cfg.atom.alpha0_m3 == 1e-21);
  CHECK(cfg.atom.beta0_m3 == 3e-22);
  CHECK(cfg.separation_m == 1e-6);
  REQUIRE(cfg.temperature_K.has_value());
  CHECK(*cfg.temperature_K == 100.0);
  REQUIRE(cfg.sweep.has_value());
  CHECK(cfg.sweep->points == 3);
  CHECK(cfg.sweep->spacing == SweepSpacing::log);
  CHECK(cfg.quad.relative_tolerance == 1e-9);
  CHECK(cfg.series.relative_tail_tolerance == 1e-11);
  CHECK(cfg.series.max_terms == 50000);
  CHECK(cfg.format == OutputFormat::json);
  CHECK(cfg.out_path == "out.json");
  CHECK(cfg.with_conductivity());

  const auto grid = cfg.sweep->grid();
  REQUIRE(grid.size() == 3);
  CHECK(grid[0] == doctest::Approx(10.0));
  CHECK(grid[1] == doctest::Approx(31.6227766016838).epsilon(1e-12));
  CHECK(grid[2] == doctest::Approx(100.0));
}

TEST_CASE("run config: unknown keys are named in the error") {
  const std::string bad = R"(
[material]
epsilon0 = 3.0
mu0 = 1.0
epsilonn0 = 4.0
[atom]
alpha0_m3 = 1e-21
beta0_m3 = 0
[geometry]
separation_m = 1e-6
temperature_K = 10.0
)";
  try {
    parse(bad);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("epsilonn0") != std::string::npos);
  }
}

TEST_CASE("run config: rejections") {
  // missing temperature and sweep
  CHECK_THROWS_AS(parse("[material]\nepsilon0=3\nmu0=1\n[atom]\nalpha0_m3=0\nbeta0_m3=0\n"
                        "[geometry]\nseparation_m=1e-6\n"),
                  ValidationError);
  // malformed number
  CHECK_THROWS_AS(parse("[material]\nepsilon0=abc\nmu0=1\n[atom]\nalpha0_m3=0\nbeta0_m3=0\n"
                        "[geometry]\nseparation_m=1e-6\ntemperature_K=1\n"),
                  ValidationError);
  // physics invariant at load
  CHECK_THROWS_AS(parse("[material]\nepsilon0=0.5\nmu0=1\n[atom]\nalpha0_m3=0\nbeta0_m3=0\n"
                        "[geometry]\nseparation_m=1e-6\ntemperature_K=1\n"),
                  ValidationError);
  // duplicate key
  CHECK_THROWS_AS(parse("[material]\nepsilon0=3\nepsilon0=4\nmu0=1\n[atom]\nalpha0_m3=0\n"
                        "beta0_m3=0\n[geometry]\nseparation_m=1e-6\ntemperature_K=1\n"),
                  ValidationError);
  // key outside a section
  CHECK_THROWS_AS(parse("epsilon0=3\n"), ValidationError);
  // linear sweep grid
  const RunConfig lin = parse(
      "[material]\nepsilon0=3\nmu0=1\n[atom]\nalpha0_m3=0\nbeta0_m3=0\n"
      "[geometry]\nseparation_m=1e-6\ntemperature_sweep.start_K=10\n"
      "temperature_sweep.stop_K=30\ntemperature_sweep.points=3\n"
      "temperature_sweep.spacing=linear\n");
  const auto grid = lin.sweep->grid();
  CHECK(grid[1] == doctest::Approx(20.0));
}

TEST_CASE("atom plausibility warning surfaces in config warnings") {
  const RunConfig cfg = parse(
      "[material]\nepsilon0=3\nmu0=1\n[atom]\nalpha0_m3=1e-30\nbeta0_m3=5e-30\n"
      "[geometry]\nseparation_m=1e-6\ntemperature_K=10\n");
  REQUIRE(cfg.warnings.size() == 1);
  CHECK(cfg.warnings[0].find("beta0") != std::string::npos);
}

TEST_CASE("csv: fixed column order, 17-digit payloads, byte determinism") {
  CHECK(csv_header() ==
        "tau,T_K,a_m,F_J,dF_J,dF_asym_J,S_num_JK,S_asym_JK,S_residual_JK,terms_used,"
        "warnings\n");

  OutputRecord r;
  r.tau = 0.1;
  r.T_K = 11.0;
  r.a_m = 1e-6;
  r.F_J = -1.2345678901234567e-30;
  r.dF_J = -9.87e-40;
  r.S_num_JK = 1e-42;
  r.terms_used = 321;
  r.warnings = {"w1", "w2"};
  const std::string row = csv_row(r);
  CHECK(row == csv_row(r));  // deterministic
  CHECK(row.find("-1.2345678901234567e-30") != std::string::npos);
  CHECK(row.find(",,") != std::string::npos);  // null fields stay empty
  CHECK(row.find("\"w1; w2\"") != std::string::npos);
  CHECK(row.find("321") != std::string::npos);

  // a full double survives the round trip through the formatter
  const double v = -9.876543210987654e-21;
  CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("records: single point computation populates the record") {
  RunConfig cfg = parse(
      "[material]\nepsilon0=3\nmu0=1.5\n[atom]\nalpha0_m3=1e-21\nbeta0_m3=2e-22\n"
      "[geometry]\nseparation_m=1e-6\ntemperature_K=200\n");
  const OutputRecord rec = compute_record(cfg, 200.0);
  CHECK(rec.tau == doctest::Approx(1.0975549648).epsilon(1e-6));
  REQUIRE(rec.F_J.has_value());
  CHECK(*rec.F_J < 0.0);
  REQUIRE(rec.dF_J.has_value());
  REQUIRE(rec.dF_asym_J.has_value());
  REQUIRE(rec.S_num_JK.has_value());
  REQUIRE(rec.S_asym_JK.has_value());
  CHECK(!rec.S_residual_JK.has_value());  // no conductivity configured
  CHECK(rec.terms_used >= 1);

  const std::string csv = records_to_csv(cfg, {rec});
  CHECK(csv == records_to_csv(cfg, {rec}));
  CHECK(csv.find("# material.epsilon0 = 3") != std::string::npos);

  const std::string json = records_to_json(cfg, {rec});
  CHECK(json.find("\"records\"") != std::string::npos);
  CHECK(json.find("\"epsilon0\": 3.0") != std::string::npos);
}

TEST_CASE("coefficients dump: nonmagnetic material fills a_eps and b_alpha") {
  RunConfig cfg = parse(
      "[material]\nepsilon0=3\nmu0=1\n[atom]\nalpha0_m3=1e-21\nbeta0_m3=0\n"
      "[geometry]\nseparation_m=1e-6\ntemperature_K=10\n");
  std::ostringstream os;
  CHECK(run_coefficients(cfg, os) == 0);
  const std::string text = os.str();
  // a_eps = 2*3*2/16 + 0.5 = 1.25; b_alpha from the mu0 -> 1 limit form
  CHECK(text.find("1.25,1.5,") != std::string::npos);
  CHECK(text.find(format_double(b_alpha_nonmagnetic(3.0))) != std::string::npos);
  // b_beta has no closed form at mu0 = 1: empty field plus a warning
  CHECK(text.find("b_beta:") != std::string::npos);
}

TEST_CASE("sweep over tau in [0.005, 0.05]: one record per point, |dF| monotone") {
  const double t_lo = 0.005 * constants::hbar_c /
                      (4.0 * constants::pi * 1e-6 * constants::k_boltzmann);
  std::ostringstream cfg_text;
  cfg_text << "[material]\nepsilon0=4\nmu0=2\n[atom]\nalpha0_m3=1e-21\nbeta0_m3=3e-22\n"
           << "[geometry]\nseparation_m=1e-6\n"
           << "temperature_sweep.start_K=" << t_lo << "\n"
           << "temperature_sweep.stop_K=" << 10.0 * t_lo << "\n"
           << "temperature_sweep.points=8\ntemperature_sweep.spacing=log\n";
  RunConfig cfg = parse(cfg_text.str());
  std::vector<OutputRecord> recs;
  for (double T : cfg.sweep->grid()) recs.push_back(compute_record(cfg, T));
  REQUIRE(recs.size() == 8);
  for (std::size_t i = 1; i < recs.size(); ++i) {
    REQUIRE(recs[i].dF_J.has_value());
    CHECK(std::abs(*recs[i].dF_J) > std::abs(*recs[i - 1].dF_J));
  }
}

TEST_CASE("records: b_beta gap becomes a null with a warning code") {
  RunConfig cfg = parse(
      "[material]\nepsilon0=3\nmu0=1\n[atom]\nalpha0_m3=1e-21\nbeta0_m3=2e-22\n"
      "[geometry]\nseparation_m=1e-6\ntemperature_K=300\n");
  const OutputRecord rec = compute_record(cfg, 300.0);
  CHECK(!rec.dF_asym_J.has_value());  // beta0 != 0 and mu0 = 1: coefficient undefined
  bool flagged = false;
  for (const auto& w : rec.warnings)
    if (w.find("dF_asym_J") != std::string::npos) flagged = true;
  CHECK(flagged);

  // the JSON emission carries the gap as an explicit null
  const auto j = nlohmann::json::parse(records_to_json(cfg, {rec}));
  REQUIRE(j["records"].size() == 1);
  CHECK(j["records"][0]["dF_asym_J"].is_null());
  CHECK(j["records"][0]["F_J"].is_number());
  CHECK(!j["records"][0]["warnings"].empty());
}
