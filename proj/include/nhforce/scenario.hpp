#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "nhforce/dynamics.hpp"
#include "nhforce/transform.hpp"

namespace nhforce {

enum class RunTreatment { Noncommutative, Classical, Both };

/// A parsed scenario file: what to run, on which problem, where to write.
struct RunConfig {
  RunTreatment treatment = RunTreatment::Noncommutative;
  Scenario scenario;
  std::optional<TransformFamily> transform;
  std::string output;
};

/// Scenario files are flat key = value documents, one pair per line, with
/// '#' comments and blank lines ignored. key() names the offending key (or
/// file) so callers can report exactly what failed to parse.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::string key)
      : std::runtime_error(what), key_(std::move(key)) {}
  [[nodiscard]] const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Accepted keys:
///   treatment        nc | classical | both
///   mass             positive decimal
///   force, x0, v0    three decimals, space separated
///   t0               optional, default 0
///   t_end, step      decimals
///   output           CSV path ("both" appends .nc.csv / .cl.csv)
///   family_id        k1..k6          [optional block: all three or none]
///   family_kappa     decimal
///   family_tau       positive decimal or inf
///   transform_a1 _a2 _v1 _v2 _b1 _b2 _c1 _c2   [optional block, complete]
///   transform_tau    positive decimal or inf
/// treatment classical/both requires the transform block. Unknown keys,
/// malformed numbers, duplicates and incomplete blocks throw ParseError.
/// Physics validity (signs, ranges) is validate()'s business, not the
/// parser's.
[[nodiscard]] RunConfig parse_run_config(std::istream& in);
[[nodiscard]] RunConfig load_run_config(const std::string& path);

/// Header "t,x1,x2,x3,p1,p2,p3", one row per sample, every value printed
/// with 17 significant digits, LF line endings. Identical trajectories
/// serialize byte-identically.
[[nodiscard]] std::string trajectory_csv(const Trajectory& trajectory);
void write_trajectory_csv(const std::string& path,
                          const Trajectory& trajectory);

}  // namespace nhforce
