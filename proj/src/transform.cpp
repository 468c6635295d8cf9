#include "nhforce/transform.hpp"

#include <cmath>

#include "rk4.hpp"

namespace nhforce {

namespace {

void require_finite(const Eigen::Vector2d& v, const char* what) {
  if (!v.allFinite())
    throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

void validate(const TransformFamily& tf) {
  require_finite(tf.translation, "translation");
  require_finite(tf.boost, "boost");
  require_finite(tf.accel, "accel");
  require_finite(tf.jerk, "jerk");
}

Eigen::Vector2d TransformFamily::offset(double t) const {
  if (!std::isfinite(t)) throw std::invalid_argument("t must be finite");
  if (tau.is_infinite())
    return translation + boost * t + accel * (t * t) + jerk * (t * t * t);
  const double tv = tau.value();
  const double u = t / tv;
  return translation * std::cosh(u) + boost * (tv * std::sinh(u)) +
         accel * (2.0 * tv * tv * detail::cosh_minus_one(u)) +
         jerk * (6.0 * tv * tv * tv * detail::sinh_minus_arg(u));
}

Eigen::Vector2d TransformFamily::offset_dot(double t) const {
  if (!std::isfinite(t)) throw std::invalid_argument("t must be finite");
  if (tau.is_infinite())
    return boost + accel * (2.0 * t) + jerk * (3.0 * t * t);
  const double tv = tau.value();
  const double u = t / tv;
  return translation * (std::sinh(u) / tv) + boost * std::cosh(u) +
         accel * (2.0 * tv * std::sinh(u)) +
         jerk * (6.0 * tv * tv * detail::cosh_minus_one(u));
}

Eigen::Vector2d TransformFamily::offset_ddot(double t) const {
  if (!std::isfinite(t)) throw std::invalid_argument("t must be finite");
  if (tau.is_infinite()) return accel * 2.0 + jerk * (6.0 * t);
  const double tv = tau.value();
  const double u = t / tv;
  return translation * (std::cosh(u) / (tv * tv)) +
         boost * (std::sinh(u) / tv) + accel * (2.0 * std::cosh(u)) +
         jerk * (6.0 * tv * std::sinh(u));
}

Eigen::Vector3d force_from_transform(double t, const TransformFamily& tf,
                                     const Eigen::Vector3d& force,
                                     double mass) {
  if (!(std::isfinite(mass) && mass > 0.0))
    throw std::invalid_argument("mass must be positive");
  const Eigen::Vector2d addot = tf.offset_ddot(t);
  return {force.x() + mass * addot.x(), force.y() + mass * addot.y(),
          force.z()};
}

PhaseState closed_form_state(double t, const TransformFamily& tf,
                             const Scenario& scenario) {
  validate(scenario);
  validate(tf);
  if (scenario.t0 != 0.0)
    throw UnsupportedOrigin("closed-form solution is anchored at t0 == 0");
  const Eigen::Vector2d a = tf.offset(t);
  const Eigen::Vector2d adot = tf.offset_dot(t);
  const Eigen::Vector3d v0 = scenario.v0();
  const double drift = t * t / (2.0 * scenario.mass);
  PhaseState out;
  out.t = t;
  out.x.x() = scenario.force.x() * drift + v0.x() * t + scenario.x0.x() + a.x();
  out.x.y() = scenario.force.y() * drift + v0.y() * t + scenario.x0.y() + a.y();
  out.x.z() = scenario.force.z() * drift + v0.z() * t + scenario.x0.z();
  out.p.x() = scenario.p0.x() + scenario.force.x() * t +
              scenario.mass * adot.x();
  out.p.y() = scenario.p0.y() + scenario.force.y() * t +
              scenario.mass * adot.y();
  out.p.z() = scenario.p0.z() + scenario.force.z() * t;
  return out;
}

Trajectory integrate_transformed(const Scenario& scenario,
                                 const TransformFamily& tf) {
  validate(scenario);
  validate(tf);
  const Eigen::Vector2d a0 = tf.offset(scenario.t0);
  const Eigen::Vector2d adot0 = tf.offset_dot(scenario.t0);
  PhaseState initial;
  initial.t = scenario.t0;
  initial.x = scenario.x0;
  initial.x.x() += a0.x();
  initial.x.y() += a0.y();
  initial.p = scenario.p0;
  initial.p.x() += scenario.mass * adot0.x();
  initial.p.y() += scenario.mass * adot0.y();
  const double mass = scenario.mass;
  const Eigen::Vector3d force = scenario.force;
  return detail::integrate_fixed_rk4(
      initial, scenario.t_end, scenario.step,
      [&tf, mass, force](const PhaseState& s) {
        const Eigen::Vector2d addot = tf.offset_ddot(s.t);
        PhaseDerivative d;
        d.dx.x() = s.p.x() / mass;
        d.dx.y() = s.p.y() / mass;
        d.dx.z() = s.p.z() / mass;
        d.dp.x() = force.x() + mass * addot.x();
        d.dp.y() = force.y() + mass * addot.y();
        d.dp.z() = force.z();
        return d;
      },
      "transformed");
}

}  // namespace nhforce
