#include "fracnoether/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fracnoether/errors.hpp"

namespace fracnoether {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_real(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ConfigError("key '" + key + "': '" + s + "' is not a finite number");
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(key, item));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

Eigen::VectorXd parse_vector(const std::string& key, const std::string& text) {
  const auto v = parse_list(key, text);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "on" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "off" || text == "0" || text == "no") return false;
  throw ConfigError("key '" + key + "': expected true/false, got '" + text + "'");
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "problem", "alphas", "n_sub", "omega", "interval", "bc", "xa", "xb", "u0", "du0", "kappa", "group",
      "custom_time_map", "outputs", "conslaw_variant", "derivative_convention", "ce_alpha_factor",
      "quantity", "expect_conserved", "drift_tolerance", "check_tolerance"};
  return keys;
}

}  // namespace

std::string to_string(Problem p) {
  switch (p) {
    case Problem::harmonic2d: return "harmonic2d";
    case Problem::oscillator: return "oscillator";
    case Problem::example2: return "example2";
    case Problem::custom: return "custom";
  }
  return "custom";
}

std::string to_string(QuantityKind q) {
  switch (q) {
    case QuantityKind::noether: return "noether";
    case QuantityKind::autonomous: return "autonomous";
    case QuantityKind::oscillator: return "oscillator";
    case QuantityKind::q_alpha: return "q_alpha";
  }
  return "noether";
}

RunConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!known_keys().count(key)) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (kv.count(key)) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    if (value.empty()) throw ConfigError("key '" + key + "': empty value");
    kv[key] = value;
  }

  RunConfig c;
  if (!kv.count("problem")) throw ConfigError("missing key 'problem'");
  const std::string& p = kv["problem"];
  if (p == "harmonic2d") c.problem = Problem::harmonic2d;
  else if (p == "oscillator") c.problem = Problem::oscillator;
  else if (p == "example2") c.problem = Problem::example2;
  else if (p == "custom") c.problem = Problem::custom;
  else throw ConfigError("key 'problem': unknown problem '" + p + "'");

  if (!kv.count("alphas")) throw ConfigError("missing key 'alphas'");
  c.alphas = parse_list("alphas", kv["alphas"]);
  if (kv.count("n_sub")) {
    const double n = parse_real("n_sub", kv["n_sub"]);
    if (n < 2 || n != std::floor(n) || n > 1e5) throw ConfigError("key 'n_sub': expected an integer >= 2");
    c.n_sub = static_cast<std::size_t>(n);
  }
  if (kv.count("omega")) c.omega = parse_real("omega", kv["omega"]);
  if (kv.count("interval")) {
    const auto ab = parse_list("interval", kv["interval"]);
    if (ab.size() != 2) throw ConfigError("key 'interval': expected 'a, b'");
    c.a = ab[0];
    c.b = ab[1];
  }
  if (kv.count("bc")) c.bc = kv["bc"];
  if (kv.count("xa")) c.xa = parse_vector("xa", kv["xa"]);
  if (kv.count("xb")) c.xb = parse_vector("xb", kv["xb"]);
  if (kv.count("u0")) c.u0 = parse_vector("u0", kv["u0"]);
  if (kv.count("du0")) c.du0 = parse_vector("du0", kv["du0"]);
  if (kv.count("kappa")) c.kappa = parse_real("kappa", kv["kappa"]);
  if (kv.count("group")) c.group = kv["group"];
  if (kv.count("custom_time_map")) c.custom_time_map = kv["custom_time_map"];
  if (kv.count("outputs")) c.outputs = kv["outputs"];
  if (kv.count("conslaw_variant")) {
    const auto& v = kv["conslaw_variant"];
    if (v == "conslaw") c.substitute_el = false;
    else if (v == "conslaw2") c.substitute_el = true;
    else throw ConfigError("key 'conslaw_variant': expected conslaw or conslaw2");
  }
  if (kv.count("derivative_convention")) {
    const auto& v = kv["derivative_convention"];
    if (v == "consistent") c.conventions = Conventions::consistent();
    else if (v == "literal") c.conventions = Conventions::literal();
    else throw ConfigError("key 'derivative_convention': expected consistent or literal");
  }
  if (kv.count("ce_alpha_factor")) c.conventions.alpha_factor = parse_bool("ce_alpha_factor", kv["ce_alpha_factor"]);
  if (kv.count("quantity")) {
    const auto& v = kv["quantity"];
    if (v == "noether") c.quantity = QuantityKind::noether;
    else if (v == "autonomous") c.quantity = QuantityKind::autonomous;
    else if (v == "oscillator") c.quantity = QuantityKind::oscillator;
    else if (v == "q_alpha") c.quantity = QuantityKind::q_alpha;
    else throw ConfigError("key 'quantity': unknown quantity '" + v + "'");
  }
  if (kv.count("expect_conserved")) c.expect_conserved = parse_bool("expect_conserved", kv["expect_conserved"]);
  if (kv.count("drift_tolerance")) c.drift_tolerance = parse_real("drift_tolerance", kv["drift_tolerance"]);
  if (kv.count("check_tolerance")) c.check_tolerance = parse_real("check_tolerance", kv["check_tolerance"]);
  return resolve(std::move(c));
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

RunConfig resolve(RunConfig c) {
  for (const double al : c.alphas)
    if (!(al > 0.0 && al <= 1.0)) throw ConfigError("key 'alphas': every order must lie in (0, 1]");
  std::sort(c.alphas.begin(), c.alphas.end());
  if (std::adjacent_find(c.alphas.begin(), c.alphas.end()) != c.alphas.end())
    throw ConfigError("key 'alphas': repeated order");
  if (!(c.a < c.b)) throw ConfigError("key 'interval': need a < b");
  if (!(c.drift_tolerance > 0.0) || !(c.check_tolerance > 0.0))
    throw ConfigError("tolerances must be positive");

  switch (c.problem) {
    case Problem::harmonic2d:
      if (c.kappa && *c.kappa != -1.0) throw ConfigError("key 'kappa': harmonic2d fixes kappa = -1");
      c.kappa = -1.0;
      if (c.bc.empty()) c.bc = "dirichlet";
      if (!c.xa) c.xa = Eigen::Vector2d(1.0, 2.0);
      if (!c.xb) c.xb = Eigen::Vector2d(2.0, 1.0);
      if (c.group.empty()) c.group = "time_translation";
      if (!c.quantity) c.quantity = QuantityKind::q_alpha;
      break;
    case Problem::oscillator:
      if (!c.omega) throw ConfigError("missing key 'omega' (required for problem = oscillator)");
      if (c.kappa) throw ConfigError("key 'kappa': oscillator derives kappa = omega^2");
      c.kappa = *c.omega * *c.omega;
      if (c.bc.empty()) c.bc = "initial";
      if (!c.u0) c.u0 = Eigen::VectorXd::Constant(1, 0.0);
      if (!c.du0) c.du0 = Eigen::VectorXd::Constant(1, 1.0);
      if (c.group.empty()) c.group = "time_translation";
      if (!c.quantity) c.quantity = QuantityKind::oscillator;
      break;
    case Problem::example2:
      if (c.kappa || c.xa || c.xb || c.u0 || c.du0 || !c.bc.empty())
        throw ConfigError("example2 is evaluated along a fixed probe path; boundary data is not accepted");
      if (c.group.empty()) c.group = "dilation(1)";
      if (!c.quantity) c.quantity = QuantityKind::noether;
      break;
    case Problem::custom:
      if (!c.kappa) throw ConfigError("missing key 'kappa' (required for problem = custom)");
      if (c.bc.empty()) c.bc = "dirichlet";
      if (c.group.empty()) c.group = "time_translation";
      if (!c.quantity) c.quantity = QuantityKind::noether;
      break;
  }

  if (c.problem != Problem::example2) {
    if (c.bc == "dirichlet") {
      if (!c.xa || !c.xb) throw ConfigError("missing key 'xa' or 'xb' for bc = dirichlet");
      if (c.xa->size() != c.xb->size()) throw ConfigError("keys 'xa' and 'xb' differ in length");
    } else if (c.bc == "initial") {
      if (!c.u0 || !c.du0) throw ConfigError("missing key 'u0' or 'du0' for bc = initial");
      if (c.u0->size() != c.du0->size()) throw ConfigError("keys 'u0' and 'du0' differ in length");
    } else {
      throw ConfigError("key 'bc': expected dirichlet or initial");
    }
  }
  if (c.quantity == QuantityKind::oscillator && c.problem != Problem::oscillator)
    throw ConfigError("key 'quantity': oscillator quantity needs problem = oscillator");
  if (c.group == "custom" && c.custom_time_map.empty())
    throw ConfigError("missing key 'custom_time_map' (required for group = custom)");
  return c;
}

}  // namespace fracnoether
