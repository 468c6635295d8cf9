#pragma once

#include <Eigen/Core>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nhforce/deformation.hpp"

namespace nhforce {

/// Commuting phase-space point. Time is an external parameter that commutes
/// with everything; it rides along so observables may depend on it.
struct PhaseState {
  double t = 0.0;
  Eigen::Vector3d x = Eigen::Vector3d::Zero();
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
};

/// Image of a commuting point under the Bopp shift.
struct NCCoordinates {
  Eigen::Vector3d xbar = Eigen::Vector3d::Zero();
  Eigen::Vector3d pbar = Eigen::Vector3d::Zero();
};

/// Bopp realization of the deformed bracket on commuting variables:
///   xbar1 = x1 - (f(t)/2) p2,  xbar2 = x2 + (f(t)/2) p1,  xbar3 = x3,
///   pbar  = p.
/// With kappa == 0 the map is the identity, bit for bit.
[[nodiscard]] NCCoordinates bopp_map(const PhaseState& state,
                                     const DeformationFamily& family);

using ScalarObservable = std::function<double(const PhaseState&)>;

/// Observable returning the Bopp-shifted position component, axis in {0,1,2}.
[[nodiscard]] ScalarObservable bopp_position(const DeformationFamily& family,
                                             int axis);

/// Observable returning the (unshifted) momentum component, axis in {0,1,2}.
[[nodiscard]] ScalarObservable bopp_momentum(int axis);

/// A finite-difference stencil produced a non-finite value. coordinate()
/// identifies the offending direction: 0..2 the positions, 3..5 the momenta.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, int coordinate)
      : std::runtime_error(what), coordinate_(coordinate) {}
  [[nodiscard]] int coordinate() const noexcept { return coordinate_; }

 private:
  int coordinate_;
};

/// Canonical Poisson bracket {a, b} at a point, by central differences with
/// per-direction step h = 1e-6 * (1 + |coordinate|). Functions that do not
/// read a direction get an exactly zero partial there, which keeps the
/// canonical relations clean far beyond the stencil's nominal accuracy.
[[nodiscard]] double poisson_bracket(const ScalarObservable& a,
                                     const ScalarObservable& b,
                                     const PhaseState& at);

/// Cyclic Jacobi combination {{a,b},c} + {{b,c},a} + {{c,a},b} at a point.
/// The inner brackets are themselves differenced, so noise compounds; treat
/// results as accurate to roughly the square root of the bracket tolerance.
[[nodiscard]] double jacobi_residual(const ScalarObservable& a,
                                     const ScalarObservable& b,
                                     const ScalarObservable& c,
                                     const PhaseState& at);

/// Sampling domain for the relation sweep: every position and momentum
/// component uniform in [coord_min, coord_max], time uniform in [t_min, t_max].
struct SampleBox {
  double coord_min = -5.0;
  double coord_max = 5.0;
  double t_min = 0.0;
  double t_max = 2.0;
};

struct RelationResidual {
  std::string relation;
  double max_abs_residual = 0.0;
  PhaseState argmax;
};

struct BracketReport {
  SampleBox box;
  int samples = 0;
  std::vector<RelationResidual> relations;

  [[nodiscard]] double max_abs_residual() const;
};

/// Sweeps random points and records, per bracket relation, the worst
/// deviation from the deformed algebra: {xbar1,xbar2} - f(t), the two other
/// position pairs, {xbar_i, pbar_j} - delta_ij, and the momentum pairs.
/// Deterministic for a fixed seed.
[[nodiscard]] BracketReport verify_bracket_relations(
    const DeformationFamily& family, int samples, const SampleBox& box,
    unsigned seed);

/// Flat text form of the report: one line per relation with its argmax point.
[[nodiscard]] std::string to_string(const BracketReport& report);

}  // namespace nhforce
