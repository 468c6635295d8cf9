#include "nhforce/scenario.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

using nhforce::parse_run_config;
using nhforce::ParseError;
using nhforce::PhaseState;
using nhforce::RunConfig;
using nhforce::RunTreatment;
using nhforce::Trajectory;

const char kFullDocument[] = R"(# demo scenario
treatment = both
mass = 1.3
force = 0.3 0.7 0.2
x0 = 0.1 -0.2 0.3
v0 = 0.4 0.5 -0.6
t_end = 10
step = 0.001
output = out.csv

family_id = k2
family_kappa = 0.25
family_tau = inf

transform_a1 = 0
transform_a2 = 0
transform_v1 = 0
transform_v2 = 0
transform_b1 = -0.04375
transform_b2 = 0.01875
transform_c1 = 0
transform_c2 = 0
transform_tau = inf
)";

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_run_config(in);
}

TEST(ParseRunConfig, ReadsTheFullDocument) {
  const RunConfig cfg = parse(kFullDocument);
  EXPECT_EQ(cfg.treatment, RunTreatment::Both);
  EXPECT_EQ(cfg.scenario.mass, 1.3);
  EXPECT_EQ(cfg.scenario.force.x(), 0.3);
  EXPECT_EQ(cfg.scenario.force.z(), 0.2);
  EXPECT_EQ(cfg.scenario.x0.y(), -0.2);
  EXPECT_EQ(cfg.scenario.t0, 0.0);  // default
  EXPECT_EQ(cfg.scenario.t_end, 10.0);
  EXPECT_EQ(cfg.scenario.step, 0.001);
  EXPECT_EQ(cfg.output, "out.csv");

  ASSERT_TRUE(cfg.scenario.family.has_value());
  EXPECT_EQ(cfg.scenario.family->id, nhforce::Family::K2);
  EXPECT_EQ(cfg.scenario.family->kappa, 0.25);
  EXPECT_TRUE(cfg.scenario.family->tau.is_infinite());

  ASSERT_TRUE(cfg.transform.has_value());
  EXPECT_EQ(cfg.transform->accel.x(), -0.04375);
  EXPECT_EQ(cfg.transform->accel.y(), 0.01875);
  EXPECT_TRUE(cfg.transform->tau.is_infinite());
}

TEST(ParseRunConfig, MomentaDeriveFromVelocityAndMass) {
  const RunConfig cfg = parse(kFullDocument);
  EXPECT_EQ(cfg.scenario.p0.x(), 1.3 * 0.4);
  EXPECT_EQ(cfg.scenario.p0.y(), 1.3 * 0.5);
  EXPECT_EQ(cfg.scenario.p0.z(), 1.3 * -0.6);
}

TEST(ParseRunConfig, MinimalUndeformedDocument) {
  const RunConfig cfg = parse(
      "treatment = nc\nmass = 1\nforce = 0 0 1\nx0 = 0 0 0\nv0 = 0 0 0\n"
      "t_end = 1\nstep = 0.01\noutput = run.csv\n");
  EXPECT_EQ(cfg.treatment, RunTreatment::Noncommutative);
  EXPECT_FALSE(cfg.scenario.family.has_value());
  EXPECT_FALSE(cfg.transform.has_value());
}

TEST(ParseRunConfig, MissingKeyIsNamed) {
  try {
    (void)parse("treatment = nc\nforce = 0 0 1\nx0 = 0 0 0\nv0 = 0 0 0\n"
                "t_end = 1\nstep = 0.01\noutput = run.csv\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.key(), "mass");
  }
}

TEST(ParseRunConfig, MalformedNumberIsNamed) {
  try {
    (void)parse("treatment = nc\nmass = heavy\nforce = 0 0 1\nx0 = 0 0 0\n"
                "v0 = 0 0 0\nt_end = 1\nstep = 0.01\noutput = run.csv\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.key(), "mass");
  }
}

TEST(ParseRunConfig, DuplicateKeyRejected) {
  EXPECT_THROW(
      (void)parse("treatment = nc\nmass = 1\nmass = 2\nforce = 0 0 1\n"
                  "x0 = 0 0 0\nv0 = 0 0 0\nt_end = 1\nstep = 0.01\n"
                  "output = run.csv\n"),
      ParseError);
}

TEST(ParseRunConfig, UnknownKeyRejected) {
  try {
    (void)parse(std::string(kFullDocument) + "colour = blue\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.key(), "colour");
  }
}

TEST(ParseRunConfig, LineWithoutSeparatorRejected) {
  EXPECT_THROW((void)parse("treatment nc\n"), ParseError);
}

TEST(ParseRunConfig, VectorNeedsExactlyThreeComponents) {
  EXPECT_THROW(
      (void)parse("treatment = nc\nmass = 1\nforce = 0 0\nx0 = 0 0 0\n"
                  "v0 = 0 0 0\nt_end = 1\nstep = 0.01\noutput = run.csv\n"),
      ParseError);
}

TEST(ParseRunConfig, IncompleteFamilyBlockRejected) {
  EXPECT_THROW(
      (void)parse("treatment = nc\nmass = 1\nforce = 0 0 1\nx0 = 0 0 0\n"
                  "v0 = 0 0 0\nt_end = 1\nstep = 0.01\noutput = run.csv\n"
                  "family_id = k3\n"),
      ParseError);
}

TEST(ParseRunConfig, ClassicalTreatmentNeedsTransformBlock) {
  try {
    (void)parse("treatment = classical\nmass = 1\nforce = 0 0 1\n"
                "x0 = 0 0 0\nv0 = 0 0 0\nt_end = 1\nstep = 0.01\n"
                "output = run.csv\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_NE(err.key().find("transform"), std::string::npos);
  }
}

TEST(ParseRunConfig, BadFamilyIdRejected) {
  EXPECT_THROW(
      (void)parse("treatment = nc\nmass = 1\nforce = 0 0 1\nx0 = 0 0 0\n"
                  "v0 = 0 0 0\nt_end = 1\nstep = 0.01\noutput = run.csv\n"
                  "family_id = k9\nfamily_kappa = 1\nfamily_tau = inf\n"),
      ParseError);
}

TEST(ParseRunConfig, NonPositiveTauRejected) {
  EXPECT_THROW(
      (void)parse("treatment = nc\nmass = 1\nforce = 0 0 1\nx0 = 0 0 0\n"
                  "v0 = 0 0 0\nt_end = 1\nstep = 0.01\noutput = run.csv\n"
                  "family_id = k1\nfamily_kappa = 1\nfamily_tau = 0\n"),
      ParseError);
}

TEST(LoadRunConfig, MissingFileThrows) {
  EXPECT_THROW((void)nhforce::load_run_config("/nonexistent/path.cfg"),
               ParseError);
}

TEST(TrajectoryCsv, FormatsSeventeenSignificantDigits) {
  Trajectory traj;
  PhaseState a;
  a.t = 0.0;
  a.x << 0.1, 2.0, -1.0 / 3.0;
  a.p << 1.0, 0.0, 0.5;
  PhaseState b;
  b.t = 0.001;
  b.x << 1.0, 1.0, 1.0;
  b.p << -2.0, 3.0, -4.0;
  traj.samples = {a, b};
  const std::string expected =
      "t,x1,x2,x3,p1,p2,p3\n"
      "0,0.10000000000000001,2,-0.33333333333333331,1,0,0.5\n"
      "0.001,1,1,1,-2,3,-4\n";
  EXPECT_EQ(nhforce::trajectory_csv(traj), expected);
}

TEST(TrajectoryCsv, WriteProducesIdenticalBytesOnEveryCall) {
  Trajectory traj;
  PhaseState s;
  s.t = 0.25;
  s.x << 0.3, 0.7, 0.2;
  s.p << 0.1, 0.2, 0.3;
  traj.samples = {s};

  const auto dir = std::filesystem::temp_directory_path();
  const auto path_a = dir / "nhforce_csv_test_a.csv";
  const auto path_b = dir / "nhforce_csv_test_b.csv";
  nhforce::write_trajectory_csv(path_a.string(), traj);
  nhforce::write_trajectory_csv(path_b.string(), traj);

  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const std::string bytes_a = slurp(path_a);
  EXPECT_EQ(bytes_a, slurp(path_b));
  EXPECT_EQ(bytes_a, nhforce::trajectory_csv(traj));
  std::filesystem::remove(path_a);
  std::filesystem::remove(path_b);
}

}  // namespace
