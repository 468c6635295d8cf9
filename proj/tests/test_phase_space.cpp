#include "nhforce/phase_space.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

namespace {

using nhforce::bopp_map;
using nhforce::bopp_momentum;
using nhforce::bopp_position;
using nhforce::DeformationFamily;
using nhforce::Family;
using nhforce::jacobi_residual;
using nhforce::NCCoordinates;
using nhforce::NumericalError;
using nhforce::PhaseState;
using nhforce::poisson_bracket;
using nhforce::SampleBox;
using nhforce::ScalarObservable;
using nhforce::Tau;
using nhforce::verify_bracket_relations;

PhaseState make_state(double t, double x1, double x2, double x3, double p1,
                      double p2, double p3) {
  PhaseState s;
  s.t = t;
  s.x << x1, x2, x3;
  s.p << p1, p2, p3;
  return s;
}

TEST(BoppMap, ShiftsTransversePositionsByHalfProfile) {
  // Linear profile f(t) = t at t = 2 gives f/2 = 1, so the shift moves
  // x1 by -p2 and x2 by +p1.
  DeformationFamily fam{Family::K2, 1.0, Tau::infinity()};
  const PhaseState s = make_state(2.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0);
  const NCCoordinates nc = bopp_map(s, fam);
  EXPECT_EQ(nc.xbar.x(), -1.0);
  EXPECT_EQ(nc.xbar.y(), 1.0);
  EXPECT_EQ(nc.xbar.z(), 0.0);
  EXPECT_EQ(nc.pbar, s.p);
}

TEST(BoppMap, IdentityWhenKappaVanishes) {
  DeformationFamily fam{Family::K4, 0.0, Tau::finite(2.0)};
  const PhaseState s =
      make_state(1.3, 0.7, -2.1, 3.9, 0.25, -0.125, 5.5);
  const NCCoordinates nc = bopp_map(s, fam);
  EXPECT_EQ(nc.xbar, s.x);
  EXPECT_EQ(nc.pbar, s.p);
}

TEST(BoppMap, ThirdAxisAndMomentaPassThrough) {
  DeformationFamily fam{Family::K3, 0.8, Tau::finite(1.5)};
  const PhaseState s = make_state(0.9, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6);
  const NCCoordinates nc = bopp_map(s, fam);
  EXPECT_EQ(nc.xbar.z(), s.x.z());
  EXPECT_EQ(nc.pbar, s.p);
  EXPECT_NE(nc.xbar.x(), s.x.x());
}

TEST(PoissonBracket, TransversePositionsReproduceProfile) {
  // {xbar1, xbar2} = f(t). At kappa=1, tau=1, t=0.7 for the quadratic
  // family the profile is sinh(0.7)^2.
  DeformationFamily fam{Family::K3, 1.0, Tau::finite(1.0)};
  const PhaseState s = make_state(0.7, 0.4, -1.2, 2.0, 0.9, -0.3, 1.1);
  const double bracket =
      poisson_bracket(bopp_position(fam, 0), bopp_position(fam, 1), s);
  const double expected = 0.5754492326965702;
  EXPECT_NEAR(bracket, expected, 1e-8 * (1.0 + std::abs(expected)));
}

TEST(PoissonBracket, CanonicalPairsAreCleanAtRandomPoints) {
  DeformationFamily fam{Family::K5, 0.3, Tau::finite(2.0)};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  std::uniform_real_distribution<double> time(0.0, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    const PhaseState s = make_state(time(rng), coord(rng), coord(rng),
                                    coord(rng), coord(rng), coord(rng),
                                    coord(rng));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double xp =
            poisson_bracket(bopp_position(fam, i), bopp_momentum(j), s);
        const double expected = i == j ? 1.0 : 0.0;
        EXPECT_NEAR(xp, expected, 1e-8) << "i=" << i << " j=" << j;
        const double pp =
            poisson_bracket(bopp_momentum(i), bopp_momentum(j), s);
        EXPECT_NEAR(pp, 0.0, 1e-8) << "i=" << i << " j=" << j;
      }
    }
  }
}

TEST(PoissonBracket, AntisymmetricUnderSwap) {
  DeformationFamily fam{Family::K1, 0.6, Tau::finite(1.0)};
  const PhaseState s = make_state(0.5, 1.0, 2.0, -0.7, 0.3, -1.9, 0.8);
  const double ab =
      poisson_bracket(bopp_position(fam, 0), bopp_position(fam, 1), s);
  const double ba =
      poisson_bracket(bopp_position(fam, 1), bopp_position(fam, 0), s);
  EXPECT_EQ(ab, -ba);
}

TEST(PoissonBracket, ThirdAxisCommutesWithTransverse) {
  DeformationFamily fam{Family::K6, 0.9, Tau::finite(1.0)};
  const PhaseState s = make_state(1.1, 0.2, -0.4, 3.0, 1.5, 0.25, -2.0);
  EXPECT_NEAR(
      poisson_bracket(bopp_position(fam, 0), bopp_position(fam, 2), s), 0.0,
      1e-8);
  EXPECT_NEAR(
      poisson_bracket(bopp_position(fam, 1), bopp_position(fam, 2), s), 0.0,
      1e-8);
}

TEST(JacobiIdentity, HoldsOnPositionTriple) {
  DeformationFamily fam{Family::K2, 0.3, Tau::finite(1.0)};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  std::uniform_real_distribution<double> time(0.0, 2.0);
  for (int rep = 0; rep < 10; ++rep) {
    const PhaseState s = make_state(time(rng), coord(rng), coord(rng),
                                    coord(rng), coord(rng), coord(rng),
                                    coord(rng));
    const double r = jacobi_residual(bopp_position(fam, 0),
                                     bopp_position(fam, 1),
                                     bopp_position(fam, 2), s);
    EXPECT_NEAR(r, 0.0, 1e-4);
  }
}

TEST(JacobiIdentity, HoldsOnMixedTriple) {
  DeformationFamily fam{Family::K4, 0.3, Tau::finite(2.0)};
  const PhaseState s = make_state(1.7, 0.4, -2.2, 1.0, -0.6, 0.9, 2.5);
  const double r = jacobi_residual(bopp_position(fam, 0), bopp_momentum(1),
                                   bopp_position(fam, 1), s);
  EXPECT_NEAR(r, 0.0, 1e-4);
}

TEST(BracketSweep, AllRelationsWithinToleranceAcrossFamilies)
{
  const SampleBox box;
  const Family families[] = {Family::K1, Family::K2, Family::K3,
                             Family::K4, Family::K5, Family::K6};
  for (Family id : families) {
    DeformationFamily fam{id, 0.3, Tau::finite(1.0)};
    const auto report = verify_bracket_relations(fam, 50, box, 123);
    EXPECT_EQ(report.samples, 50);
    EXPECT_EQ(report.relations.size(), 15u);
    for (const auto& rel : report.relations) {
      if (rel.relation.find("f(t)") == std::string::npos) {
        EXPECT_LE(rel.max_abs_residual, 1e-8)
            << nhforce::family_name(id) << " " << rel.relation;
      }
    }
    // The profile-valued relation is checked relative to the profile size.
    EXPECT_LE(report.max_abs_residual(), 1e-6 * (1.0 + fam.value(box.t_max)))
        << nhforce::family_name(id);
  }
}

TEST(BracketSweep, DeterministicForFixedSeed) {
  DeformationFamily fam{Family::K3, 0.3, Tau::infinity()};
  const SampleBox box;
  const auto a = verify_bracket_relations(fam, 40, box, 999);
  const auto b = verify_bracket_relations(fam, 40, box, 999);
  ASSERT_EQ(a.relations.size(), b.relations.size());
  for (size_t i = 0; i < a.relations.size(); ++i) {
    EXPECT_EQ(a.relations[i].max_abs_residual,
              b.relations[i].max_abs_residual);
    EXPECT_EQ(a.relations[i].argmax.t, b.relations[i].argmax.t);
  }
  EXPECT_EQ(nhforce::to_string(a), nhforce::to_string(b));
}

TEST(BracketSweep, ReportPrintsEveryRelation) {
  DeformationFamily fam{Family::K1, 0.3, Tau::finite(1.0)};
  const auto report = verify_bracket_relations(fam, 10, SampleBox{}, 5);
  const std::string text = nhforce::to_string(report);
  EXPECT_NE(text.find("{xbar1,xbar2}"), std::string::npos);
  EXPECT_NE(text.find("{xbar1,pbar1}"), std::string::npos);
  EXPECT_NE(text.find("{pbar2,pbar3}"), std::string::npos);
}

TEST(PoissonBracket, ReportsOffendingCoordinateOnOverflow) {
  DeformationFamily fam{Family::K2, 0.5, Tau::finite(1.0)};
  const PhaseState s = make_state(0.4, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
  const ScalarObservable bad = [](const PhaseState&) {
    return std::numeric_limits<double>::infinity();
  };
  try {
    (void)poisson_bracket(bad, bopp_momentum(0), s);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& err) {
    EXPECT_GE(err.coordinate(), 0);
    EXPECT_LE(err.coordinate(), 5);
  }
}

}  // namespace
