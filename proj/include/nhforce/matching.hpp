#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "nhforce/deformation.hpp"
#include "nhforce/dynamics.hpp"
#include "nhforce/transform.hpp"

namespace nhforce {

/// Pointwise defect of the matching condition
///   addot1(t) = -(fdot(t)/2) F2,   addot2(t) = +(fdot(t)/2) F1,
/// returned as (addot1 + (fdot/2) F2, addot2 - (fdot/2) F1). Zero everywhere
/// exactly when the transformation reproduces the deformation-generated
/// force: H - G = mass * (residual, 0). The family and transform must live
/// on the same background (equal tau variant); mass must be positive.
[[nodiscard]] Eigen::Vector2d match_residual(const DeformationFamily& family,
                                             const TransformFamily& tf,
                                             const Eigen::Vector3d& force,
                                             double mass, double t);

struct MatchResult {
  DeformationFamily family;
  Eigen::Vector3d force = Eigen::Vector3d::Zero();
  double mass = 1.0;

  bool exists = false;
  /// True when the condition is vacuous (fdot == 0, kappa == 0, or both
  /// transverse force components zero) and the zero transform already works.
  bool trivial = false;
  std::optional<TransformFamily> transform;

  /// Max |match_residual| over the probe grid t in [0, 10], step 0.01: for a
  /// solved match, of the returned transform (rounding-level); otherwise of
  /// the least-squares best fit, i.e. a lower bound no transform can beat.
  double residual_bound = 0.0;

  /// Structure of the solution, e.g. "constant force shift".
  std::string note;
};

/// Decides whether some transformation generates exactly the force the
/// deformation does, and solves for it when one exists. In the limit the
/// profile derivative is polynomial and the solvable cases are degree <= 1:
///   K1  fdot = 0            trivial match
///   K2  fdot = kappa        accel = (-kappa F2/4, +kappa F1/4)
///   K3  fdot = 2 kappa t    jerk  = (-kappa F2/6, +kappa F1/6)
///   K5  fdot = kappa t      jerk  = (-kappa F2/12, +kappa F1/12)
///   K4, K6                  degree 3, 2: no match
/// At finite tau the derivative carries double-frequency hyperbolics outside
/// the span {cosh u, sinh u} of any offset's second derivative, so no family
/// matches; the verdict is confirmed by a least-squares probe whose best-fit
/// residual is reported.
[[nodiscard]] MatchResult solve_match(const DeformationFamily& family,
                                      const Eigen::Vector3d& force,
                                      double mass);

/// Flat text record: family, parameters, verdict, coefficients or absence,
/// residual bound, note.
[[nodiscard]] std::string to_string(const MatchResult& result);

/// Side-by-side deviation of the two generated forces and their common
/// closed form over the probe times, for a solved match.
struct EqualityReport {
  double max_deformation_vs_closed = 0.0;  // |G(t) - closed form|
  double max_transform_vs_closed = 0.0;    // |H(t) - closed form|
  double max_cross = 0.0;                  // |G(t) - H(t)|

  [[nodiscard]] double max_deviation() const;
};

/// Evaluates G from the deformation, H from the solved transformation, and
/// the expected closed form
///   (F1 - (m/2) fdot(t) F2,  F2 + (m/2) fdot(t) F1,  F3)
/// with fdot written out as the family's explicit polynomial, at the given
/// probe times. Requires a match to exist (throws std::invalid_argument
/// otherwise). K3 with kappa and K5 with 2 kappa produce identical reports
/// to the bit.
[[nodiscard]] EqualityReport verify_equalities(const DeformationFamily& family,
                                               const Eigen::Vector3d& force,
                                               double mass,
                                               const std::vector<double>& times);

/// The two mechanisms at zero external force: the deformation generates
/// nothing (G == 0 exactly, since G only dresses existing force components),
/// while a bending transformation still generates H = (m addot1, m addot2, 0).
/// Returns {G, H}.
[[nodiscard]] std::pair<Eigen::Vector3d, Eigen::Vector3d> zero_force_contrast(
    const DeformationFamily& family, const TransformFamily& tf, double mass,
    double t);

/// Initial data for the transformed treatment that makes its closed-form
/// positions coincide with the deformed treatment's, assuming the matching
/// condition holds:
///   x0' = x0 - (a1(0), a2(0), 0)
///   v0' = v0 - (adot1(0) + (F2/2) f(0),  adot2(0) - (F1/2) f(0),  0)
/// The f(0) terms absorb the Bopp shift of the initial velocity; they vanish
/// for profiles with f(0) = 0 but not for K1.
[[nodiscard]] Scenario aligned_transformed_scenario(
    const DeformationFamily& family, const TransformFamily& tf,
    const Scenario& scenario);

}  // namespace nhforce
