#include "nhforce/dynamics.hpp"

#include <cmath>

#include "rk4.hpp"

namespace nhforce {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void validate(const Scenario& s) {
  require(std::isfinite(s.mass) && s.mass > 0.0, "mass must be positive");
  require(s.force.allFinite(), "force must be finite");
  require(s.x0.allFinite(), "x0 must be finite");
  require(s.p0.allFinite(), "p0 must be finite");
  require(std::isfinite(s.t0), "t0 must be finite");
  require(std::isfinite(s.t_end) && s.t_end > s.t0,
          "t_end must exceed t0");
  require(std::isfinite(s.step) && s.step > 0.0, "step must be positive");
  require(s.step <= s.t_end - s.t0, "step must not exceed the time span");
  if (s.family) require(std::isfinite(s.family->kappa), "kappa must be finite");
}

double hamiltonian(const PhaseState& state, const Scenario& scenario) {
  const double half_f =
      scenario.family ? 0.5 * scenario.family->value(state.t) : 0.0;
  return state.p.squaredNorm() / (2.0 * scenario.mass) -
         scenario.force.dot(state.x) +
         half_f * (scenario.force.x() * state.p.y() -
                   scenario.force.y() * state.p.x());
}

PhaseDerivative eom_rhs(const PhaseState& state, const Scenario& scenario) {
  const double half_f =
      scenario.family ? 0.5 * scenario.family->value(state.t) : 0.0;
  PhaseDerivative d;
  d.dx.x() = state.p.x() / scenario.mass - half_f * scenario.force.y();
  d.dx.y() = state.p.y() / scenario.mass + half_f * scenario.force.x();
  d.dx.z() = state.p.z() / scenario.mass;
  d.dp = scenario.force;
  return d;
}

Eigen::Vector3d force_from_deformation(double t, const Scenario& scenario) {
  const double half_mfdot =
      scenario.family ? 0.5 * scenario.mass * scenario.family->derivative(t)
                      : 0.0;
  return {scenario.force.x() - half_mfdot * scenario.force.y(),
          scenario.force.y() + half_mfdot * scenario.force.x(),
          scenario.force.z()};
}

Trajectory integrate(const Scenario& scenario, Treatment treatment) {
  validate(scenario);
  Scenario effective = scenario;
  if (treatment == Treatment::Undeformed) effective.family.reset();
  const char* label =
      treatment == Treatment::Undeformed ? "undeformed" : "noncommutative";
  return detail::integrate_fixed_rk4(
      effective.initial_state(), effective.t_end, effective.step,
      [&effective](const PhaseState& s) { return eom_rhs(s, effective); },
      label);
}

PhaseState closed_form_state(double t, const Scenario& scenario) {
  validate(scenario);
  if (scenario.t0 != 0.0)
    throw UnsupportedOrigin("closed-form solution is anchored at t0 == 0");
  const double half_integral =
      scenario.family ? 0.5 * scenario.family->integral(t) : 0.0;
  const Eigen::Vector3d v0 = scenario.v0();
  PhaseState out;
  out.t = t;
  const double drift = t * t / (2.0 * scenario.mass);
  out.x.x() = scenario.force.x() * drift + v0.x() * t + scenario.x0.x() -
              scenario.force.y() * half_integral;
  out.x.y() = scenario.force.y() * drift + v0.y() * t + scenario.x0.y() +
              scenario.force.x() * half_integral;
  out.x.z() = scenario.force.z() * drift + v0.z() * t + scenario.x0.z();
  out.p = scenario.p0 + scenario.force * t;
  return out;
}

}  // namespace nhforce
