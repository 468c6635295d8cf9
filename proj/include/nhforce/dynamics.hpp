#pragma once

#include <Eigen/Core>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nhforce/deformation.hpp"
#include "nhforce/phase_space.hpp"

namespace nhforce {

/// One integration problem: a particle of constant mass under a constant
/// force, optionally on a deformed bracket. Momenta are primary; velocities
/// are always derived as p/mass so the two views cannot drift apart.
struct Scenario {
  double mass = 1.0;
  Eigen::Vector3d force = Eigen::Vector3d::Zero();
  std::optional<DeformationFamily> family;  // absent = undeformed bracket
  Eigen::Vector3d x0 = Eigen::Vector3d::Zero();
  Eigen::Vector3d p0 = Eigen::Vector3d::Zero();
  double t0 = 0.0;
  double t_end = 1.0;
  double step = 1e-3;

  [[nodiscard]] Eigen::Vector3d v0() const { return p0 / mass; }
  [[nodiscard]] PhaseState initial_state() const { return {t0, x0, p0}; }
};

/// Throws std::invalid_argument naming the offending parameter: mass and
/// step positive, t_end > t0, step no larger than the span, all values
/// finite.
void validate(const Scenario& scenario);

enum class Treatment { Noncommutative, Undeformed };

/// H = p^2/2m - F.x + (f(t)/2)(F1 p2 - F2 p1). The last term is what the
/// deformed bracket adds; it vanishes identically for kappa == 0.
[[nodiscard]] double hamiltonian(const PhaseState& state,
                                 const Scenario& scenario);

struct PhaseDerivative {
  Eigen::Vector3d dx = Eigen::Vector3d::Zero();
  Eigen::Vector3d dp = Eigen::Vector3d::Zero();
};

/// Equations of motion on the deformed bracket:
///   dx1 = p1/m - (f/2) F2,  dx2 = p2/m + (f/2) F1,  dx3 = p3/m,  dp = F.
/// Axis 3 and the momenta never see the deformation.
[[nodiscard]] PhaseDerivative eom_rhs(const PhaseState& state,
                                      const Scenario& scenario);

/// Effective time-dependent force the deformation generates when the motion
/// is read as a Newton equation m xddot = G(t):
///   G = (F1 - (m fdot/2) F2,  F2 + (m fdot/2) F1,  F3).
[[nodiscard]] Eigen::Vector3d force_from_deformation(double t,
                                                     const Scenario& scenario);

struct Trajectory {
  std::vector<PhaseState> samples;
  std::string label;
};

/// Integration produced a non-finite state component.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  [[nodiscard]] double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Classic fixed-step RK4 from t0 to t_end. Samples are strictly increasing
/// in t, the first equals the scenario's initial state, and the last lands
/// exactly on t_end (final step shortened when the span is not a multiple of
/// the step). State updates use compensated accumulation, so conserved
/// combinations hold to rounding regardless of step count. Treatment
/// Undeformed ignores the family. Throws DivergenceError on the first
/// non-finite component.
[[nodiscard]] Trajectory integrate(const Scenario& scenario,
                                   Treatment treatment);

/// The closed-form solution is anchored at t = 0.
class UnsupportedOrigin : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact solution of the deformed equations for constant force,
///   x1(t) = F1 t^2/2m + v01 t + x01 - (F2/2) I(t),
///   x2(t) = F2 t^2/2m + v02 t + x02 + (F1/2) I(t),
///   x3(t) = F3 t^2/2m + v03 t + x03,       p(t) = p0 + F t,
/// with I(t) the profile integral over [0, t]. Requires t0 == 0 (throws
/// UnsupportedOrigin otherwise). Absent family means I == 0.
[[nodiscard]] PhaseState closed_form_state(double t, const Scenario& scenario);

}  // namespace nhforce
