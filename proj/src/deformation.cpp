#include "nhforce/deformation.hpp"

#include <array>
#include <charconv>

namespace nhforce {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

std::string_view family_name(Family id) {
  switch (id) {
    case Family::K1: return "k1";
    case Family::K2: return "k2";
    case Family::K3: return "k3";
    case Family::K4: return "k4";
    case Family::K5: return "k5";
    case Family::K6: return "k6";
  }
  std::abort();
}

Family parse_family(std::string_view text) {
  static constexpr std::array<Family, 6> all = {Family::K1, Family::K2,
                                                Family::K3, Family::K4,
                                                Family::K5, Family::K6};
  for (Family id : all)
    if (text == family_name(id)) return id;
  throw std::invalid_argument("unknown family name '" + std::string(text) +
                              "', expected k1..k6");
}

std::string format_tau(Tau tau) {
  if (tau.is_infinite()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", tau.value());
  return buf;
}

Tau parse_tau(std::string_view text) {
  if (text == "inf") return Tau::infinity();
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw std::invalid_argument("tau must be a positive decimal or 'inf'");
  return Tau::finite(v);  // rejects non-positive values
}

double DeformationFamily::value(double t) const {
  require_finite(t, "t");
  require_finite(kappa, "kappa");
  return tau.is_infinite()
             ? detail::profile_value_limit(id, kappa, t)
             : detail::profile_value(id, kappa, tau.value(), t);
}

double DeformationFamily::derivative(double t) const {
  require_finite(t, "t");
  require_finite(kappa, "kappa");
  return tau.is_infinite()
             ? detail::profile_derivative_limit(id, kappa, t)
             : detail::profile_derivative(id, kappa, tau.value(), t);
}

double DeformationFamily::integral(double t) const {
  require_finite(t, "t");
  require_finite(kappa, "kappa");
  return tau.is_infinite()
             ? detail::profile_integral_limit(id, kappa, t)
             : detail::profile_integral(id, kappa, tau.value(), t);
}

}  // namespace nhforce
