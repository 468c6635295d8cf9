#include "nhforce/scenario.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace nhforce {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, const std::string& key) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw ParseError("value for '" + key + "' is not a number: '" + text + "'",
                     key);
  return v;
}

Eigen::Vector3d parse_vec3(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string part;
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) {
    if (!(in >> part))
      throw ParseError("'" + key + "' needs three numbers", key);
    v[i] = parse_double(part, key);
  }
  if (in >> part)
    throw ParseError("'" + key + "' needs exactly three numbers", key);
  return v;
}

class KeyValueDoc {
 public:
  explicit KeyValueDoc(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ParseError("line without '=': '" + line + "'", line);
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) throw ParseError("empty key in '" + line + "'", line);
      if (!pairs_.emplace(key, value).second)
        throw ParseError("duplicate key '" + key + "'", key);
    }
  }

  [[nodiscard]] bool has(const std::string& key) const {
    return pairs_.count(key) != 0;
  }

  [[nodiscard]] std::string need(const std::string& key) {
    const auto it = pairs_.find(key);
    if (it == pairs_.end())
      throw ParseError("missing required key '" + key + "'", key);
    consumed_.insert(key);
    return it->second;
  }

  [[nodiscard]] std::string get_or(const std::string& key,
                                   const std::string& fallback) {
    const auto it = pairs_.find(key);
    if (it == pairs_.end()) return fallback;
    consumed_.insert(key);
    return it->second;
  }

  void reject_unconsumed() const {
    for (const auto& [key, value] : pairs_)
      if (consumed_.count(key) == 0)
        throw ParseError("unknown key '" + key + "'", key);
  }

 private:
  std::map<std::string, std::string> pairs_;
  std::set<std::string> consumed_;
};

Tau parse_tau_value(const std::string& text, const std::string& key) {
  try {
    return parse_tau(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError("value for '" + key + "': " + e.what(), key);
  }
}

}  // namespace

RunConfig parse_run_config(std::istream& in) {
  KeyValueDoc doc(in);
  RunConfig config;

  const std::string treatment = doc.need("treatment");
  if (treatment == "nc")
    config.treatment = RunTreatment::Noncommutative;
  else if (treatment == "classical")
    config.treatment = RunTreatment::Classical;
  else if (treatment == "both")
    config.treatment = RunTreatment::Both;
  else
    throw ParseError("treatment must be nc, classical or both, got '" +
                         treatment + "'",
                     "treatment");

  Scenario& s = config.scenario;
  s.mass = parse_double(doc.need("mass"), "mass");
  s.force = parse_vec3(doc.need("force"), "force");
  s.x0 = parse_vec3(doc.need("x0"), "x0");
  const Eigen::Vector3d v0 = parse_vec3(doc.need("v0"), "v0");
  s.p0 = s.mass * v0;
  s.t0 = parse_double(doc.get_or("t0", "0"), "t0");
  s.t_end = parse_double(doc.need("t_end"), "t_end");
  s.step = parse_double(doc.need("step"), "step");
  config.output = doc.need("output");
  if (config.output.empty())
    throw ParseError("'output' must not be empty", "output");

  const bool any_family = doc.has("family_id") || doc.has("family_kappa") ||
                          doc.has("family_tau");
  if (any_family) {
    DeformationFamily family;
    const std::string id = doc.need("family_id");
    try {
      family.id = parse_family(id);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("value for 'family_id': ") + e.what(),
                       "family_id");
    }
    family.kappa = parse_double(doc.need("family_kappa"), "family_kappa");
    family.tau = parse_tau_value(doc.need("family_tau"), "family_tau");
    s.family = family;
  }

  static const char* coeff_keys[] = {"transform_a1", "transform_a2",
                                     "transform_v1", "transform_v2",
                                     "transform_b1", "transform_b2",
                                     "transform_c1", "transform_c2"};
  bool any_transform = doc.has("transform_tau");
  for (const char* key : coeff_keys) any_transform |= doc.has(key);
  if (config.treatment != RunTreatment::Noncommutative && !any_transform)
    throw ParseError("treatment '" + treatment +
                         "' requires the transform block (transform_a1, "
                         "transform_a2, transform_v1, transform_v2, "
                         "transform_b1, transform_b2, transform_c1, "
                         "transform_c2, transform_tau)",
                     "transform_a1");
  if (any_transform) {
    TransformFamily tf;
    double coeffs[8];
    for (int i = 0; i < 8; ++i)
      coeffs[i] = parse_double(doc.need(coeff_keys[i]), coeff_keys[i]);
    tf.translation = {coeffs[0], coeffs[1]};
    tf.boost = {coeffs[2], coeffs[3]};
    tf.accel = {coeffs[4], coeffs[5]};
    tf.jerk = {coeffs[6], coeffs[7]};
    tf.tau = parse_tau_value(doc.need("transform_tau"), "transform_tau");
    config.transform = tf;
  }

  doc.reject_unconsumed();
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open scenario file '" + path + "'", path);
  return parse_run_config(in);
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::string out = "t,x1,x2,x3,p1,p2,p3\n";
  char buf[32];
  const auto append = [&](double v, char sep) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
    out += sep;
  };
  for (const PhaseState& s : trajectory.samples) {
    append(s.t, ',');
    for (int i = 0; i < 3; ++i) append(s.x[i], ',');
    for (int i = 0; i < 3; ++i) append(s.p[i], i == 2 ? '\n' : ',');
  }
  return out;
}

void write_trajectory_csv(const std::string& path,
                          const Trajectory& trajectory) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open output file '" + path + "'");
  const std::string text = trajectory_csv(trajectory);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace nhforce
