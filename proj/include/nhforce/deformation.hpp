#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nhforce {

/// Time scale of the hyperbolic profiles and frame offsets.
///
/// The polynomial limit is an explicit variant, not a large finite value:
/// callers dispatch on is_infinite() and use hard-coded polynomial limit
/// forms. Evaluating cosh(t/tau) with an oversized finite tau would silently
/// lose the limit to rounding, so that path never exists.
class Tau {
 public:
  [[nodiscard]] static Tau infinity() noexcept {
    return Tau(std::numeric_limits<double>::infinity());
  }

  /// Finite positive time constant. Throws std::invalid_argument otherwise.
  [[nodiscard]] static Tau finite(double value) {
    if (!std::isfinite(value) || value <= 0.0)
      throw std::invalid_argument("tau must be finite and positive");
    return Tau(value);
  }

  [[nodiscard]] bool is_infinite() const noexcept { return std::isinf(v_); }

  /// Finite value, or +inf for the limit variant.
  [[nodiscard]] double value() const noexcept { return v_; }

  friend bool operator==(Tau a, Tau b) noexcept { return a.v_ == b.v_; }
  friend bool operator!=(Tau a, Tau b) noexcept { return !(a == b); }

 private:
  explicit Tau(double v) noexcept : v_(v) {}
  double v_;
};

/// The six admissible time profiles of the position-position bracket.
enum class Family { K1, K2, K3, K4, K5, K6 };

/// Serialized name, "k1".."k6".
[[nodiscard]] std::string_view family_name(Family id);

/// Inverse of family_name. Throws std::invalid_argument on anything else.
[[nodiscard]] Family parse_family(std::string_view text);

/// "inf" or a positive decimal.
[[nodiscard]] std::string format_tau(Tau tau);
[[nodiscard]] Tau parse_tau(std::string_view text);

namespace detail {

/// cosh(x) - 1 without cancellation near zero.
template <typename Scalar>
[[nodiscard]] Scalar cosh_minus_one(Scalar x) {
  using std::sinh;
  const Scalar s = sinh(x / 2);
  return 2 * s * s;
}

/// sinh(x) - x. The direct difference loses every leading digit near zero;
/// below |x| = 1 the odd Taylor tail x^3/3! + x^5/5! + ... is summed instead.
template <typename Scalar>
[[nodiscard]] Scalar sinh_minus_arg(Scalar x) {
  using std::abs;
  using std::sinh;
  if (abs(x) >= Scalar(1)) return sinh(x) - x;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar x2 = x * x;
  Scalar term = x * x2 / 6;
  Scalar sum = term;
  for (int k = 2; k < 64; ++k) {
    term *= x2 / Scalar(2 * k * (2 * k + 1));
    sum += term;
    if (abs(term) <= eps * abs(sum)) break;
  }
  return sum;
}

/// sinh(2u) - 8 sinh(u) + 6u. Every Taylor term below u^5 cancels exactly,
/// so direct evaluation drowns near zero; the series starts at u^5/5 with
/// coefficients (2^(2k+1) - 8) / (2k+1)!.
template <typename Scalar>
[[nodiscard]] Scalar sinh_comb_quartic(Scalar u) {
  using std::abs;
  using std::sinh;
  if (abs(u) >= Scalar(1)) return sinh(2 * u) - 8 * sinh(u) + 6 * u;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar u2 = u * u;
  Scalar pow2 = 32;               // 2^(2k+1) at k = 2
  Scalar fact = 120;              // (2k+1)! at k = 2
  Scalar upow = u2 * u2 * u;      // u^5
  Scalar sum = 0;
  for (int k = 2; k < 64; ++k) {
    const Scalar term = (pow2 - 8) / fact * upow;
    sum += term;
    if (abs(term) <= eps * abs(sum)) break;
    pow2 *= 4;
    upow *= u2;
    fact *= Scalar((2 * k + 2) * (2 * k + 3));
  }
  return sum;
}

/// f(t) at finite tau, u = t/tau:
///   K1  kappa cosh^2 u              K4  4 kappa tau^4 (cosh u - 1)^2
///   K2  kappa tau  cosh u sinh u    K5  kappa tau^2 (cosh u - 1) cosh u
///   K3  kappa tau^2 sinh^2 u        K6  kappa tau^3 (cosh u - 1) sinh u
template <typename Scalar>
[[nodiscard]] Scalar profile_value(Family id, Scalar kappa, Scalar tau, Scalar t) {
  using std::cosh;
  using std::sinh;
  const Scalar u = t / tau;
  switch (id) {
    case Family::K1: return kappa * cosh(u) * cosh(u);
    case Family::K2: return kappa * tau * cosh(u) * sinh(u);
    case Family::K3: return kappa * tau * tau * sinh(u) * sinh(u);
    case Family::K4: {
      const Scalar c1 = cosh_minus_one(u);
      return 4 * kappa * tau * tau * tau * tau * c1 * c1;
    }
    case Family::K5:
      return kappa * tau * tau * cosh_minus_one(u) * cosh(u);
    case Family::K6:
      return kappa * tau * tau * tau * cosh_minus_one(u) * sinh(u);
  }
  std::abort();
}

/// tau -> inf limit of profile_value:
///   K1  kappa        K3  kappa t^2    K5  kappa t^2 / 2
///   K2  kappa t      K4  kappa t^4    K6  kappa t^3 / 2
template <typename Scalar>
[[nodiscard]] Scalar profile_value_limit(Family id, Scalar kappa, Scalar t) {
  switch (id) {
    case Family::K1: return kappa;
    case Family::K2: return kappa * t;
    case Family::K3: return kappa * t * t;
    case Family::K4: return kappa * t * t * t * t;
    case Family::K5: return kappa * t * t / 2;
    case Family::K6: return kappa * t * t * t / 2;
  }
  std::abort();
}

/// df/dt at finite tau.
template <typename Scalar>
[[nodiscard]] Scalar profile_derivative(Family id, Scalar kappa, Scalar tau, Scalar t) {
  using std::cosh;
  using std::sinh;
  const Scalar u = t / tau;
  switch (id) {
    case Family::K1: return 2 * kappa * sinh(u) * cosh(u) / tau;
    case Family::K2: return kappa * (cosh(u) * cosh(u) + sinh(u) * sinh(u));
    case Family::K3: return 2 * kappa * tau * sinh(u) * cosh(u);
    case Family::K4:
      return 8 * kappa * tau * tau * tau * cosh_minus_one(u) * sinh(u);
    case Family::K5:
      return kappa * tau * sinh(u) * (2 * cosh(u) - 1);
    case Family::K6:
      return kappa * tau * tau *
             (sinh(u) * sinh(u) + cosh_minus_one(u) * cosh(u));
  }
  std::abort();
}

/// df/dt in the limit.
template <typename Scalar>
[[nodiscard]] Scalar profile_derivative_limit(Family id, Scalar kappa, Scalar t) {
  switch (id) {
    case Family::K1: return Scalar(0);
    case Family::K2: return kappa;
    case Family::K3: return 2 * kappa * t;
    case Family::K4: return 4 * kappa * t * t * t;
    case Family::K5: return kappa * t;
    case Family::K6: return 3 * kappa * t * t / 2;
  }
  std::abort();
}

/// Integral of f from 0 to t at finite tau. Closed antiderivatives, written
/// so that no term subtracts away: the K3/K5 combinations go through
/// sinh_minus_arg, K4 through sinh_comb_quartic, and K6 collapses to
/// (cosh u - 1)^2 / 2 exactly.
template <typename Scalar>
[[nodiscard]] Scalar profile_integral(Family id, Scalar kappa, Scalar tau, Scalar t) {
  using std::cosh;
  using std::sinh;
  const Scalar u = t / tau;
  switch (id) {
    case Family::K1:
      return kappa * (t + tau * sinh(u) * cosh(u)) / 2;
    case Family::K2:
      return kappa * tau * tau * sinh(u) * sinh(u) / 2;
    case Family::K3:
      return kappa * tau * tau * tau * sinh_minus_arg(2 * u) / 4;
    case Family::K4:
      return kappa * tau * tau * tau * tau * tau * sinh_comb_quartic(u);
    case Family::K5:
      return kappa * tau * tau * tau *
             (sinh_minus_arg(2 * u) / 4 - sinh_minus_arg(u));
    case Family::K6: {
      const Scalar c1 = cosh_minus_one(u);
      return kappa * tau * tau * tau * tau * c1 * c1 / 2;
    }
  }
  std::abort();
}

/// Integral of the limit profile from 0 to t.
template <typename Scalar>
[[nodiscard]] Scalar profile_integral_limit(Family id, Scalar kappa, Scalar t) {
  switch (id) {
    case Family::K1: return kappa * t;
    case Family::K2: return kappa * t * t / 2;
    case Family::K3: return kappa * t * t * t / 3;
    case Family::K4: return kappa * t * t * t * t * t / 5;
    case Family::K5: return kappa * t * t * t / 6;
    case Family::K6: return kappa * t * t * t * t / 8;
  }
  std::abort();
}

}  // namespace detail

/// One deformation of the position-position bracket: {x1, x2} = f(t) with
/// all other coordinate brackets canonical. kappa carries a family-dependent
/// dimension and is deliberately unit-opaque. kappa == 0 is the undeformed
/// bracket for every family.
struct DeformationFamily {
  Family id = Family::K1;
  double kappa = 0.0;
  Tau tau = Tau::infinity();

  /// f(t). Throws std::invalid_argument for non-finite t or kappa.
  [[nodiscard]] double value(double t) const;

  /// df/dt, analytic (never a finite difference).
  [[nodiscard]] double derivative(double t) const;

  /// Integral of f over [0, t], analytic.
  [[nodiscard]] double integral(double t) const;

  /// Same family and strength with tau -> inf. Idempotent.
  [[nodiscard]] DeformationFamily limit_form() const noexcept {
    return {id, kappa, Tau::infinity()};
  }
};

}  // namespace nhforce
