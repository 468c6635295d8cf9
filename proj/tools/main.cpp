#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "nhforce/dynamics.hpp"
#include "nhforce/matching.hpp"
#include "nhforce/phase_space.hpp"
#include "nhforce/scenario.hpp"
#include "nhforce/transform.hpp"

namespace {

using namespace nhforce;

constexpr int kExitOk = 0;
constexpr int kExitNoMatch = 1;
constexpr int kExitParse = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitInvalidPhysics = 4;

void print_usage() {
  std::fputs(
      "usage:\n"
      "  nhforce run <scenario-file>\n"
      "  nhforce match <family> <kappa> <F1> <F2> <F3> <mass> [--tau "
      "<value|inf>]\n"
      "  nhforce sweep-tau <scenario-file> --taus <t1,t2,...>\n"
      "  nhforce verify\n",
      stderr);
}

double parse_double_arg(const std::string& text, const char* what) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw ParseError("argument '" + std::string(what) + "' is not a number: '" +
                         text + "'",
                     what);
  return v;
}

// Base path for the two CSVs of a "both" run: a trailing ".csv" is replaced,
// anything else just gets the suffix appended.
std::string suffixed_output(const std::string& output, const char* suffix) {
  const std::string ext = ".csv";
  if (output.size() > ext.size() &&
      output.compare(output.size() - ext.size(), ext.size(), ext) == 0)
    return output.substr(0, output.size() - ext.size()) + suffix;
  return output + suffix;
}

int cmd_run(const std::string& path) {
  const RunConfig config = load_run_config(path);
  validate(config.scenario);
  if (config.transform) validate(*config.transform);

  switch (config.treatment) {
    case RunTreatment::Noncommutative: {
      const Trajectory tr = integrate(config.scenario,
                                      Treatment::Noncommutative);
      write_trajectory_csv(config.output, tr);
      std::printf("wrote %s (%zu samples)\n", config.output.c_str(),
                  tr.samples.size());
      return kExitOk;
    }
    case RunTreatment::Classical: {
      const Trajectory tr =
          integrate_transformed(config.scenario, *config.transform);
      write_trajectory_csv(config.output, tr);
      std::printf("wrote %s (%zu samples)\n", config.output.c_str(),
                  tr.samples.size());
      return kExitOk;
    }
    case RunTreatment::Both: {
      const Trajectory nc = integrate(config.scenario,
                                      Treatment::Noncommutative);
      const Trajectory cl =
          integrate_transformed(config.scenario, *config.transform);
      const std::string nc_path = suffixed_output(config.output, ".nc.csv");
      const std::string cl_path = suffixed_output(config.output, ".cl.csv");
      write_trajectory_csv(nc_path, nc);
      write_trajectory_csv(cl_path, cl);
      std::printf("wrote %s and %s (%zu samples each)\n", nc_path.c_str(),
                  cl_path.c_str(), nc.samples.size());

      static const char* names[] = {"x1", "x2", "x3", "p1", "p2", "p3"};
      double dev[6] = {0, 0, 0, 0, 0, 0};
      for (std::size_t k = 0; k < nc.samples.size(); ++k) {
        const PhaseState& a = nc.samples[k];
        const PhaseState& b = cl.samples[k];
        for (int i = 0; i < 3; ++i) {
          dev[i] = std::max(dev[i], std::abs(a.x[i] - b.x[i]));
          dev[i + 3] = std::max(dev[i + 3], std::abs(a.p[i] - b.p[i]));
        }
      }
      std::printf("comparison, sup over the common grid:\n");
      double worst_pos = 0.0;
      for (int i = 0; i < 6; ++i) {
        std::printf("  max |%s_nc - %s_cl| = %.17g\n", names[i], names[i],
                    dev[i]);
        if (i < 3) worst_pos = std::max(worst_pos, dev[i]);
      }
      std::printf("  max position deviation = %.17g\n", worst_pos);
      return kExitOk;
    }
  }
  return kExitOk;
}

int cmd_match(const std::vector<std::string>& args) {
  if (args.size() != 6 && args.size() != 8) {
    print_usage();
    return kExitParse;
  }
  DeformationFamily family;
  family.id = parse_family(args[0]);
  family.kappa = parse_double_arg(args[1], "kappa");
  const Eigen::Vector3d force{parse_double_arg(args[2], "F1"),
                              parse_double_arg(args[3], "F2"),
                              parse_double_arg(args[4], "F3")};
  const double mass = parse_double_arg(args[5], "mass");
  family.tau = Tau::infinity();
  if (args.size() == 8) {
    if (args[6] != "--tau")
      throw ParseError("unexpected argument '" + args[6] + "'", args[6]);
    try {
      family.tau = parse_tau(args[7]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("argument '--tau': ") + e.what(), "--tau");
    }
  }
  const MatchResult result = solve_match(family, force, mass);
  std::fputs(to_string(result).c_str(), stdout);
  return result.exists ? kExitOk : kExitNoMatch;
}

int cmd_sweep_tau(const std::string& path, const std::string& taus_arg) {
  RunConfig config = load_run_config(path);
  if (!config.scenario.family)
    throw ParseError("sweep-tau requires the family block (family_id, "
                     "family_kappa, family_tau)",
                     "family_id");
  validate(config.scenario);

  std::vector<double> taus;
  std::size_t start = 0;
  while (start <= taus_arg.size()) {
    const std::size_t comma = taus_arg.find(',', start);
    const std::string part =
        taus_arg.substr(start, comma == std::string::npos ? std::string::npos
                                                          : comma - start);
    taus.push_back(parse_double_arg(part, "--taus"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  for (double tv : taus)
    if (!(std::isfinite(tv) && tv > 0.0))
      throw ParseError("--taus values must be finite and positive", "--taus");

  Scenario limit_scenario = config.scenario;
  limit_scenario.family = config.scenario.family->limit_form();
  const Trajectory limit = integrate(limit_scenario,
                                     Treatment::Noncommutative);

  std::printf("# tau  max|x_tau - x_limit|  ratio_vs_prev\n");
  std::vector<double> deviations;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    Scenario s = config.scenario;
    s.family->tau = Tau::finite(taus[i]);
    const Trajectory tr = integrate(s, Treatment::Noncommutative);
    double dev = 0.0;
    for (std::size_t k = 0; k < tr.samples.size(); ++k)
      dev = std::max(dev, (tr.samples[k].x - limit.samples[k].x)
                              .cwiseAbs()
                              .maxCoeff());
    deviations.push_back(dev);
    if (i > 0 && deviations[i] > 0.0)
      std::printf("%.17g  %.17g  %.17g\n", taus[i], dev,
                  deviations[i - 1] / dev);
    else
      std::printf("%.17g  %.17g  n/a\n", taus[i], dev);
  }

  // Fitted order p of dev ~ C tau^-p, least squares in log-log.
  bool fit_ok = taus.size() >= 2;
  for (double d : deviations) fit_ok = fit_ok && d > 0.0;
  if (fit_ok) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) {
      const double lx = std::log(taus[i]);
      const double ly = std::log(deviations[i]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    std::printf("fitted order = %.6g\n", -slope);
  } else {
    std::printf("fitted order = n/a\n");
  }
  return kExitOk;
}

int cmd_verify() {
  const double kappa = 0.3;
  const SampleBox box{-5.0, 5.0, 0.0, 2.0};
  const int bracket_samples = 100;
  const int jacobi_samples = 10;

  bool all_ok = true;
  std::printf("bracket and Jacobi sweep: kappa=%g, coords [%g, %g], t [%g, "
              "%g]\n",
              kappa, box.coord_min, box.coord_max, box.t_min, box.t_max);
  for (Family id : {Family::K1, Family::K2, Family::K3, Family::K4,
                    Family::K5, Family::K6}) {
    for (int variant = 0; variant < 3; ++variant) {
      DeformationFamily family{
          id, kappa,
          variant == 0 ? Tau::finite(1.0)
                       : (variant == 1 ? Tau::finite(10.0) : Tau::infinity())};
      const unsigned seed =
          1000u + 10u * static_cast<unsigned>(id) + static_cast<unsigned>(variant);
      const BracketReport report =
          verify_bracket_relations(family, bracket_samples, box, seed);

      double worst_f_rel = 0.0;
      double worst_canonical = 0.0;
      for (const auto& r : report.relations) {
        if (r.relation.find("- f(t)") != std::string::npos) {
          const double f = family.value(r.argmax.t);
          worst_f_rel = std::max(worst_f_rel,
                                 r.max_abs_residual / (1.0 + std::abs(f)));
        } else {
          worst_canonical = std::max(worst_canonical, r.max_abs_residual);
        }
      }

      std::array<ScalarObservable, 6> coord;
      for (int i = 0; i < 3; ++i) {
        coord[i] = bopp_position(family, i);
        coord[i + 3] = bopp_momentum(i);
      }
      std::mt19937_64 rng(seed ^ 0x9e3779b9u);
      std::uniform_real_distribution<double> cdist(box.coord_min,
                                                   box.coord_max);
      std::uniform_real_distribution<double> tdist(box.t_min, box.t_max);
      double worst_jacobi = 0.0;
      for (int s = 0; s < jacobi_samples; ++s) {
        PhaseState point;
        point.t = tdist(rng);
        for (int i = 0; i < 3; ++i) point.x[i] = cdist(rng);
        for (int i = 0; i < 3; ++i) point.p[i] = cdist(rng);
        for (int a = 0; a < 6; ++a)
          for (int b = a + 1; b < 6; ++b)
            for (int c = b + 1; c < 6; ++c)
              worst_jacobi = std::max(
                  worst_jacobi,
                  std::abs(jacobi_residual(coord[a], coord[b], coord[c],
                                           point)));
      }

      const bool ok =
          worst_f_rel <= 1e-6 && worst_canonical <= 1e-8 &&
          worst_jacobi <= 1e-4;
      all_ok = all_ok && ok;
      std::printf("  %s tau=%-4s  {x1,x2} rel %.2e  canonical %.2e  jacobi "
                  "%.2e  %s\n",
                  std::string(family_name(id)).c_str(),
                  format_tau(family.tau).c_str(), worst_f_rel,
                  worst_canonical, worst_jacobi, ok ? "ok" : "FAIL");
    }
  }

  std::printf("limit contraction at t=1, kappa=1, tau 100 -> 200:\n");
  for (Family id : {Family::K1, Family::K2, Family::K3, Family::K4,
                    Family::K5, Family::K6}) {
    const DeformationFamily lim{id, 1.0, Tau::infinity()};
    const double f_lim = lim.value(1.0);
    const double g100 =
        std::abs(DeformationFamily{id, 1.0, Tau::finite(100.0)}.value(1.0) -
                 f_lim);
    const double g200 =
        std::abs(DeformationFamily{id, 1.0, Tau::finite(200.0)}.value(1.0) -
                 f_lim);
    const double ratio = g100 / g200;
    const bool ok = ratio >= 3.5 && ratio <= 4.5;
    all_ok = all_ok && ok;
    std::printf("  %s gap ratio %.6f  %s\n",
                std::string(family_name(id)).c_str(), ratio,
                ok ? "ok" : "FAIL");
  }
  {
    TransformFamily tf;
    tf.translation = {0.3, -0.1};
    tf.boost = {-0.2, 0.4};
    tf.accel = {0.5, 0.2};
    tf.jerk = {0.1, -0.3};
    TransformFamily t100 = tf;
    t100.tau = Tau::finite(100.0);
    TransformFamily t200 = tf;
    t200.tau = Tau::finite(200.0);
    const Eigen::Vector2d lim = tf.limit_form().offset(1.0);
    const double g100 = (t100.offset(1.0) - lim).cwiseAbs().maxCoeff();
    const double g200 = (t200.offset(1.0) - lim).cwiseAbs().maxCoeff();
    const double ratio = g100 / g200;
    const bool ok = ratio >= 3.5 && ratio <= 4.5;
    all_ok = all_ok && ok;
    std::printf("  offset gap ratio %.6f  %s\n", ratio, ok ? "ok" : "FAIL");
  }

  std::printf(all_ok ? "verify: all checks passed\n"
                     : "verify: FAILURES above\n");
  return all_ok ? kExitOk : kExitNoMatch;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (args.empty()) {
      print_usage();
      return kExitParse;
    }
    const std::string& cmd = args[0];
    if (cmd == "run") {
      if (args.size() != 2) {
        print_usage();
        return kExitParse;
      }
      return cmd_run(args[1]);
    }
    if (cmd == "match") {
      return cmd_match({args.begin() + 1, args.end()});
    }
    if (cmd == "sweep-tau") {
      if (args.size() != 4 || args[2] != "--taus") {
        print_usage();
        return kExitParse;
      }
      return cmd_sweep_tau(args[1], args[3]);
    }
    if (cmd == "verify") {
      if (args.size() != 1) {
        print_usage();
        return kExitParse;
      }
      return cmd_verify();
    }
    print_usage();
    return kExitParse;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitParse;
  } catch (const DivergenceError& e) {
    std::fprintf(stderr, "divergence: %s\n", e.what());
    return kExitDivergence;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitDivergence;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid parameters: %s\n", e.what());
    return kExitInvalidPhysics;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "invalid parameters: %s\n", e.what());
    return kExitInvalidPhysics;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  }
}
