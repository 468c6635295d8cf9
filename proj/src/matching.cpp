#include "nhforce/matching.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <cstdio>

namespace nhforce {

namespace {

constexpr double kGridEnd = 10.0;
constexpr double kGridStep = 0.01;

std::vector<double> probe_grid() {
  std::vector<double> ts;
  const int n = static_cast<int>(std::lround(kGridEnd / kGridStep));
  ts.reserve(n + 1);
  for (int i = 0; i <= n; ++i) ts.push_back(i * kGridStep);
  return ts;
}

void require_physical(const Eigen::Vector3d& force, double mass) {
  if (!force.allFinite())
    throw std::invalid_argument("force must be finite");
  if (!(std::isfinite(mass) && mass > 0.0))
    throw std::invalid_argument("mass must be positive");
}

TransformFamily zero_transform(Tau tau) {
  TransformFamily tf;
  tf.tau = tau;
  return tf;
}

double max_grid_residual(const DeformationFamily& family,
                         const TransformFamily& tf,
                         const Eigen::Vector3d& force, double mass) {
  double worst = 0.0;
  for (double t : probe_grid()) {
    const Eigen::Vector2d r = match_residual(family, tf, force, mass, t);
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  return worst;
}

// Least-squares fit of the offset's reachable second-derivative span to the
// target -(fdot/2) F_perp, per transverse axis. The span is {1, t} in the
// limit and {cosh u, sinh u} at finite tau; either way two columns. Returns
// the max-norm residual of the best fit and the fitted transform.
struct ProbeFit {
  double residual = 0.0;
  TransformFamily transform;
};

ProbeFit least_squares_probe(const DeformationFamily& family,
                             const Eigen::Vector3d& force) {
  const std::vector<double> ts = probe_grid();
  const int n = static_cast<int>(ts.size());
  Eigen::MatrixXd basis(n, 2);
  Eigen::MatrixXd target(n, 2);
  for (int i = 0; i < n; ++i) {
    const double t = ts[i];
    if (family.tau.is_infinite()) {
      basis(i, 0) = 1.0;
      basis(i, 1) = t;
    } else {
      const double u = t / family.tau.value();
      basis(i, 0) = std::cosh(u);
      basis(i, 1) = std::sinh(u);
    }
    const double half_fdot = 0.5 * family.derivative(t);
    target(i, 0) = -half_fdot * force.y();
    target(i, 1) = half_fdot * force.x();
  }
  const Eigen::Matrix2d coef =
      basis.colPivHouseholderQr().solve(target);

  ProbeFit fit;
  fit.residual = (basis * coef - target).cwiseAbs().maxCoeff();
  TransformFamily& tf = fit.transform;
  tf.tau = family.tau;
  if (family.tau.is_infinite()) {
    tf.accel = coef.row(0).transpose() / 2.0;
    tf.jerk = coef.row(1).transpose() / 6.0;
  } else {
    const double tv = family.tau.value();
    tf.accel = coef.row(0).transpose() / 2.0;
    tf.jerk = coef.row(1).transpose() / (6.0 * tv);
  }
  return fit;
}

}  // namespace

Eigen::Vector2d match_residual(const DeformationFamily& family,
                               const TransformFamily& tf,
                               const Eigen::Vector3d& force, double mass,
                               double t) {
  require_physical(force, mass);
  if (family.tau != tf.tau)
    throw std::invalid_argument(
        "family and transform must share the same tau variant");
  const double half_fdot = 0.5 * family.derivative(t);
  const Eigen::Vector2d addot = tf.offset_ddot(t);
  return {addot.x() + half_fdot * force.y(),
          addot.y() - half_fdot * force.x()};
}

MatchResult solve_match(const DeformationFamily& family,
                        const Eigen::Vector3d& force, double mass) {
  require_physical(force, mass);
  if (!std::isfinite(family.kappa))
    throw std::invalid_argument("kappa must be finite");

  MatchResult res;
  res.family = family;
  res.force = force;
  res.mass = mass;

  const auto accept = [&](TransformFamily tf, bool trivial,
                          const char* note) {
    res.exists = true;
    res.trivial = trivial;
    res.transform = std::move(tf);
    res.note = note;
    res.residual_bound =
        max_grid_residual(family, *res.transform, force, mass);
  };
  const auto reject = [&](double bound, const char* note) {
    res.exists = false;
    res.trivial = false;
    res.residual_bound = bound;
    res.note = note;
  };

  if (family.kappa == 0.0) {
    accept(zero_transform(family.tau), true,
           "undeformed bracket; the zero transform suffices");
    return res;
  }
  if (force.x() == 0.0 && force.y() == 0.0) {
    accept(zero_transform(family.tau), true,
           "no transverse force; the condition is vacuous");
    return res;
  }

  if (!family.tau.is_infinite()) {
    const ProbeFit fit = least_squares_probe(family, force);
    reject(fit.residual,
           "profile derivative carries double-frequency hyperbolics outside "
           "any offset's reach");
    return res;
  }

  const double kappa = family.kappa;
  TransformFamily tf = zero_transform(family.tau);
  switch (family.id) {
    case Family::K1:
      accept(std::move(tf), true,
             "constant profile leaves the Newton law undeformed");
      return res;
    case Family::K2:
      tf.accel = {-kappa * force.y() / 4.0, kappa * force.x() / 4.0};
      accept(std::move(tf), false, "constant force shift");
      return res;
    case Family::K3:
      tf.jerk = {-kappa * force.y() / 6.0, kappa * force.x() / 6.0};
      accept(std::move(tf), false, "force growing linearly in time");
      return res;
    case Family::K5:
      tf.jerk = {-kappa * force.y() / 12.0, kappa * force.x() / 12.0};
      accept(std::move(tf), false, "force growing linearly in time");
      return res;
    case Family::K4:
    case Family::K6: {
      const ProbeFit fit = least_squares_probe(family, force);
      reject(fit.residual,
             family.id == Family::K4
                 ? "profile derivative is cubic in time, beyond constant "
                   "acceleration and jerk"
                 : "profile derivative is quadratic in time, beyond constant "
                   "acceleration and jerk");
      return res;
    }
  }
  std::abort();
}

std::string to_string(const MatchResult& r) {
  std::string out;
  char buf[512];
  std::snprintf(buf, sizeof buf, "family_id=%s family_kappa=%.17g family_tau=%s\n",
                std::string(family_name(r.family.id)).c_str(), r.family.kappa,
                format_tau(r.family.tau).c_str());
  out += buf;
  std::snprintf(buf, sizeof buf, "force=%.17g %.17g %.17g mass=%.17g\n",
                r.force.x(), r.force.y(), r.force.z(), r.mass);
  out += buf;
  std::snprintf(buf, sizeof buf, "match=%s trivial=%s\n",
                r.exists ? "yes" : "no", r.trivial ? "yes" : "no");
  out += buf;
  if (r.transform) {
    const TransformFamily& tf = *r.transform;
    std::snprintf(buf, sizeof buf,
                  "transform_a1=%.17g transform_a2=%.17g transform_v1=%.17g "
                  "transform_v2=%.17g transform_b1=%.17g transform_b2=%.17g "
                  "transform_c1=%.17g transform_c2=%.17g transform_tau=%s\n",
                  tf.translation.x(), tf.translation.y(), tf.boost.x(),
                  tf.boost.y(), tf.accel.x(), tf.accel.y(), tf.jerk.x(),
                  tf.jerk.y(), format_tau(tf.tau).c_str());
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "residual_bound=%.17g\nnote=%s\n",
                r.residual_bound, r.note.c_str());
  out += buf;
  return out;
}

double EqualityReport::max_deviation() const {
  return std::max({max_deformation_vs_closed, max_transform_vs_closed,
                   max_cross});
}

EqualityReport verify_equalities(const DeformationFamily& family,
                                 const Eigen::Vector3d& force, double mass,
                                 const std::vector<double>& times) {
  const MatchResult match = solve_match(family, force, mass);
  if (!match.exists)
    throw std::invalid_argument(
        "verify_equalities requires a family with a matching transform");

  // fdot of the limit profiles, written out: c0 + c1 t. Trivial matches at
  // finite tau only occur when the transverse force vanishes, where the
  // closed form collapses to the input force and these coefficients are
  // multiplied by zero anyway.
  double c0 = 0.0;
  double c1 = 0.0;
  if (family.tau.is_infinite() && family.kappa != 0.0) {
    switch (family.id) {
      case Family::K2: c0 = family.kappa; break;
      case Family::K3: c1 = 2.0 * family.kappa; break;
      case Family::K5: c1 = family.kappa; break;
      default: break;
    }
  }

  Scenario probe;
  probe.mass = mass;
  probe.force = force;
  probe.family = family;

  EqualityReport report;
  for (double t : times) {
    const double half_mfdot = 0.5 * mass * (c0 + c1 * t);
    const Eigen::Vector3d closed{force.x() - half_mfdot * force.y(),
                                 force.y() + half_mfdot * force.x(),
                                 force.z()};
    const Eigen::Vector3d g = force_from_deformation(t, probe);
    const Eigen::Vector3d h =
        force_from_transform(t, *match.transform, force, mass);
    report.max_deformation_vs_closed =
        std::max(report.max_deformation_vs_closed,
                 (g - closed).cwiseAbs().maxCoeff());
    report.max_transform_vs_closed =
        std::max(report.max_transform_vs_closed,
                 (h - closed).cwiseAbs().maxCoeff());
    report.max_cross =
        std::max(report.max_cross, (g - h).cwiseAbs().maxCoeff());
  }
  return report;
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> zero_force_contrast(
    const DeformationFamily& family, const TransformFamily& tf, double mass,
    double t) {
  Scenario probe;
  probe.mass = mass;
  probe.force = Eigen::Vector3d::Zero();
  probe.family = family;
  return {force_from_deformation(t, probe),
          force_from_transform(t, tf, Eigen::Vector3d::Zero(), mass)};
}

Scenario aligned_transformed_scenario(const DeformationFamily& family,
                                      const TransformFamily& tf,
                                      const Scenario& scenario) {
  validate(scenario);
  if (scenario.t0 != 0.0)
    throw UnsupportedOrigin("alignment is anchored at t0 == 0");
  const Eigen::Vector2d a0 = tf.offset(0.0);
  const Eigen::Vector2d adot0 = tf.offset_dot(0.0);
  const double f0 = family.value(0.0);
  const double m = scenario.mass;
  Scenario out = scenario;
  out.x0.x() -= a0.x();
  out.x0.y() -= a0.y();
  out.p0.x() -= m * (adot0.x() + 0.5 * scenario.force.y() * f0);
  out.p0.y() -= m * (adot0.y() - 0.5 * scenario.force.x() * f0);
  return out;
}

}  // namespace nhforce
