#pragma once

#include <Eigen/Core>

#include "nhforce/deformation.hpp"
#include "nhforce/dynamics.hpp"

namespace nhforce {

/// Coordinate transformation x_i -> x_i + a_i(t) on the two transverse axes,
/// built from the doubly enlarged symmetry generators: translation (constant
/// term), boost (linear), constant acceleration and constant jerk. Component
/// 0 acts on axis 1, component 1 on axis 2; axis 3 is never transformed.
///
/// Finite tau, u = t/tau:
///   a_i(t) = translation_i cosh u + boost_i tau sinh u
///          + 2 accel_i tau^2 (cosh u - 1) + 6 jerk_i tau^3 (sinh u - u)
/// Limit:
///   a_i(t) = translation_i + boost_i t + accel_i t^2 + jerk_i t^3
struct TransformFamily {
  Eigen::Vector2d translation = Eigen::Vector2d::Zero();
  Eigen::Vector2d boost = Eigen::Vector2d::Zero();
  Eigen::Vector2d accel = Eigen::Vector2d::Zero();
  Eigen::Vector2d jerk = Eigen::Vector2d::Zero();
  Tau tau = Tau::infinity();

  /// a_i(t) for both transverse axes.
  [[nodiscard]] Eigen::Vector2d offset(double t) const;

  /// First time derivative of the offset.
  [[nodiscard]] Eigen::Vector2d offset_dot(double t) const;

  /// Second time derivative of the offset, analytic.
  [[nodiscard]] Eigen::Vector2d offset_ddot(double t) const;

  /// Same coefficients with tau -> inf. Idempotent.
  [[nodiscard]] TransformFamily limit_form() const noexcept {
    return {translation, boost, accel, jerk, Tau::infinity()};
  }

  /// Pure translation plus boost (accel and jerk exactly zero). Only the
  /// limit variant leaves the Newton law invariant under such a transform;
  /// at finite tau even a boost bends.
  [[nodiscard]] bool is_galilean() const noexcept {
    return accel.x() == 0.0 && accel.y() == 0.0 && jerk.x() == 0.0 &&
           jerk.y() == 0.0;
  }
};

/// Throws std::invalid_argument on non-finite coefficients.
void validate(const TransformFamily& tf);

/// Force the transformation generates when the motion in the new coordinates
/// is read as a Newton equation: H = (F1 + m addot1, F2 + m addot2, F3).
[[nodiscard]] Eigen::Vector3d force_from_transform(double t,
                                                   const TransformFamily& tf,
                                                   const Eigen::Vector3d& force,
                                                   double mass);

/// Exact transformed solution for constant force,
///   x_i(t) = F_i t^2/2m + v0_i t + x0_i + a_i(t)   (axes 1, 2)
///   x3(t)  = F3 t^2/2m + v03 t + x03
///   p_i(t) = p0_i + F_i t + m adot_i(t)            (axes 1, 2)
/// Requires scenario.t0 == 0 (throws UnsupportedOrigin). The scenario's
/// family is ignored here; only its mass, force and initial data enter.
[[nodiscard]] PhaseState closed_form_state(double t, const TransformFamily& tf,
                                           const Scenario& scenario);

/// RK4 trajectory of m xddot = H(t) started from the transformed initial
/// data x0 + a(t0), p0 + m adot(t0). Same stepping contract as the
/// noncommutative integrator, axis 3 untouched bit for bit.
[[nodiscard]] Trajectory integrate_transformed(const Scenario& scenario,
                                               const TransformFamily& tf);

}  // namespace nhforce
