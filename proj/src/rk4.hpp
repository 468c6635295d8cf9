#pragma once

#include <cmath>
#include <utility>

#include "nhforce/dynamics.hpp"

namespace nhforce::detail {

// Per-component compensated accumulator for the six state variables. Keeps
// the residual of every addition, so a long run of small increments does not
// drift linearly in the step count.
struct CompensatedState {
  Eigen::Vector3d x, p;
  Eigen::Vector3d cx = Eigen::Vector3d::Zero();
  Eigen::Vector3d cp = Eigen::Vector3d::Zero();

  static void add(Eigen::Vector3d& sum, Eigen::Vector3d& comp,
                  const Eigen::Vector3d& inc) {
    for (int i = 0; i < 3; ++i) {
      const double y = inc[i] - comp[i];
      const double t = sum[i] + y;
      comp[i] = (t - sum[i]) - y;
      sum[i] = t;
    }
  }
};

// Classic RK4 with a fixed step; the final step is shortened to land exactly
// on t_end. Sample times come from t0 + k*step, never from accumulation, so
// they are strictly increasing and reproducible. Rhs is any callable
// (const PhaseState&) -> PhaseDerivative.
template <typename Rhs>
Trajectory integrate_fixed_rk4(const PhaseState& initial, double t_end,
                               double step, Rhs&& rhs, std::string label) {
  Trajectory out;
  out.label = std::move(label);
  out.samples.push_back(initial);

  CompensatedState state{initial.x, initial.p, Eigen::Vector3d::Zero(),
                         Eigen::Vector3d::Zero()};
  double t = initial.t;

  const auto advance = [&](double h) {
    const PhaseState y0{t, state.x, state.p};
    const PhaseDerivative k1 = rhs(y0);
    const PhaseState y1{t + h / 2, state.x + (h / 2) * k1.dx,
                        state.p + (h / 2) * k1.dp};
    const PhaseDerivative k2 = rhs(y1);
    const PhaseState y2{t + h / 2, state.x + (h / 2) * k2.dx,
                        state.p + (h / 2) * k2.dp};
    const PhaseDerivative k3 = rhs(y2);
    const PhaseState y3{t + h, state.x + h * k3.dx, state.p + h * k3.dp};
    const PhaseDerivative k4 = rhs(y3);

    CompensatedState::add(
        state.x, state.cx,
        (h / 6) * (k1.dx + 2 * k2.dx + 2 * k3.dx + k4.dx));
    CompensatedState::add(
        state.p, state.cp,
        (h / 6) * (k1.dp + 2 * k2.dp + 2 * k3.dp + k4.dp));
  };

  const auto emit = [&](double sample_t) {
    if (!state.x.allFinite() || !state.p.allFinite())
      throw DivergenceError("state diverged at t = " + std::to_string(sample_t),
                            sample_t);
    out.samples.push_back({sample_t, state.x, state.p});
  };

  const double span = t_end - initial.t;
  const long full_steps = static_cast<long>(std::floor(span / step));
  for (long k = 1; k <= full_steps; ++k) {
    advance(step);
    t = initial.t + static_cast<double>(k) * step;
    if (t >= t_end) {
      t = t_end;
      emit(t);
      return out;
    }
    emit(t);
  }
  if (t < t_end) {
    advance(t_end - t);
    t = t_end;
    emit(t);
  }
  return out;
}

}  // namespace nhforce::detail
