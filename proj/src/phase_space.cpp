#include "nhforce/phase_space.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>

namespace nhforce {

NCCoordinates bopp_map(const PhaseState& state,
                       const DeformationFamily& family) {
  const double half_f = 0.5 * family.value(state.t);
  NCCoordinates nc;
  nc.xbar.x() = state.x.x() - half_f * state.p.y();
  nc.xbar.y() = state.x.y() + half_f * state.p.x();
  nc.xbar.z() = state.x.z();
  nc.pbar = state.p;
  return nc;
}

ScalarObservable bopp_position(const DeformationFamily& family, int axis) {
  if (axis < 0 || axis > 2)
    throw std::invalid_argument("axis must be 0, 1 or 2");
  return [family, axis](const PhaseState& s) {
    switch (axis) {
      case 0: return s.x.x() - 0.5 * family.value(s.t) * s.p.y();
      case 1: return s.x.y() + 0.5 * family.value(s.t) * s.p.x();
      default: return s.x.z();
    }
  };
}

ScalarObservable bopp_momentum(int axis) {
  if (axis < 0 || axis > 2)
    throw std::invalid_argument("axis must be 0, 1 or 2");
  return [axis](const PhaseState& s) { return s.p[axis]; };
}

namespace {

double component(const PhaseState& s, int i) {
  return i < 3 ? s.x[i] : s.p[i - 3];
}

double& component(PhaseState& s, int i) {
  return i < 3 ? s.x[i] : s.p[i - 3];
}

double partial(const ScalarObservable& f, const PhaseState& at, int coord) {
  const double h = 1e-6 * (1.0 + std::abs(component(at, coord)));
  PhaseState hi = at;
  PhaseState lo = at;
  component(hi, coord) += h;
  component(lo, coord) -= h;
  const double fhi = f(hi);
  const double flo = f(lo);
  if (!std::isfinite(fhi) || !std::isfinite(flo))
    throw NumericalError("non-finite observable value in stencil for "
                         "coordinate " + std::to_string(coord), coord);
  return (fhi - flo) / (2.0 * h);
}

}  // namespace

double poisson_bracket(const ScalarObservable& a, const ScalarObservable& b,
                       const PhaseState& at) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    sum += partial(a, at, i) * partial(b, at, i + 3) -
           partial(a, at, i + 3) * partial(b, at, i);
  }
  return sum;
}

double jacobi_residual(const ScalarObservable& a, const ScalarObservable& b,
                       const ScalarObservable& c, const PhaseState& at) {
  const auto inner = [](const ScalarObservable& f, const ScalarObservable& g) {
    return [&f, &g](const PhaseState& s) { return poisson_bracket(f, g, s); };
  };
  return poisson_bracket(inner(a, b), c, at) +
         poisson_bracket(inner(b, c), a, at) +
         poisson_bracket(inner(c, a), b, at);
}

double BracketReport::max_abs_residual() const {
  double worst = 0.0;
  for (const auto& r : relations) worst = std::max(worst, r.max_abs_residual);
  return worst;
}

BracketReport verify_bracket_relations(const DeformationFamily& family,
                                       int samples, const SampleBox& box,
                                       unsigned seed) {
  if (samples <= 0) throw std::invalid_argument("samples must be positive");

  std::array<ScalarObservable, 6> coord;
  for (int i = 0; i < 3; ++i) {
    coord[i] = bopp_position(family, i);
    coord[i + 3] = bopp_momentum(i);
  }
  const auto name = [](int i) {
    static const char* names[] = {"xbar1", "xbar2", "xbar3",
                                  "pbar1", "pbar2", "pbar3"};
    return names[i];
  };

  BracketReport report;
  report.box = box;
  report.samples = samples;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      RelationResidual r;
      r.relation = "{" + std::string(name(i)) + "," + name(j) + "}";
      if (i == 0 && j == 1)
        r.relation += " - f(t)";
      else if (i < 3 && j == i + 3)
        r.relation += " - 1";
      report.relations.push_back(std::move(r));
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord_dist(box.coord_min,
                                                    box.coord_max);
  std::uniform_real_distribution<double> t_dist(box.t_min, box.t_max);

  for (int s = 0; s < samples; ++s) {
    PhaseState point;
    point.t = t_dist(rng);
    for (int i = 0; i < 6; ++i) component(point, i) = coord_dist(rng);

    int slot = 0;
    for (int i = 0; i < 6; ++i) {
      for (int j = i + 1; j < 6; ++j, ++slot) {
        double expected = 0.0;
        if (i == 0 && j == 1)
          expected = family.value(point.t);
        else if (i < 3 && j == i + 3)
          expected = 1.0;
        const double residual =
            std::abs(poisson_bracket(coord[i], coord[j], point) - expected);
        auto& rec = report.relations[slot];
        if (residual > rec.max_abs_residual) {
          rec.max_abs_residual = residual;
          rec.argmax = point;
        }
      }
    }
  }
  return report;
}

std::string to_string(const BracketReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line,
                "box coords [%g, %g]  t [%g, %g]  samples %d\n",
                report.box.coord_min, report.box.coord_max, report.box.t_min,
                report.box.t_max, report.samples);
  out += line;
  for (const auto& r : report.relations) {
    std::snprintf(line, sizeof line,
                  "%-22s max residual %.3e  at t=%.6g x=(%.4g, %.4g, %.4g) "
                  "p=(%.4g, %.4g, %.4g)\n",
                  r.relation.c_str(), r.max_abs_residual, r.argmax.t,
                  r.argmax.x.x(), r.argmax.x.y(), r.argmax.x.z(),
                  r.argmax.p.x(), r.argmax.p.y(), r.argmax.p.z());
    out += line;
  }
  return out;
}

}  // namespace nhforce
