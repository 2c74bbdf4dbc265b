#include "specshare/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace specshare::config {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_number(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(origin, line, key, "expected a number, got '" + value + "'");
  }
  if (pos != value.size())
    throw ConfigError(origin, line, key, "trailing characters after number '" + value + "'");
  return v;
}

}  // namespace

bool known_variant(const std::string& name) noexcept {
  return name == "base" || name == "outside" || name == "three_player" ||
         name == "two_player_comparison";
}

Scenario parse_text(const std::string& text, const std::string& origin) {
  Scenario scenario;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool delta_shorthand = false;
  bool explicit_v = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const size_t hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin, line_no, "", "expected 'key = value', got '" + trim(raw) + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(origin, line_no, "", "missing key before '='");
    if (value.empty()) throw ConfigError(origin, line_no, key, "missing value");

    MarketParams& p = scenario.params;
    if (key == "variant") {
      if (!known_variant(value))
        throw ConfigError(origin, line_no, key, "unknown variant '" + value + "'");
      scenario.variant = value;
    } else if (key == "s") {
      p.s = parse_number(origin, line_no, key, value);
    } else if (key == "gamma") {
      p.gamma = parse_number(origin, line_no, key, value);
    } else if (key == "c") {
      p.c = parse_number(origin, line_no, key, value);
    } else if (key == "v_l") {
      p.v_l = parse_number(origin, line_no, key, value);
      explicit_v = true;
    } else if (key == "v_f") {
      p.v_f = parse_number(origin, line_no, key, value);
      explicit_v = true;
    } else if (key == "delta") {
      p.v_l = parse_number(origin, line_no, key, value);
      p.v_f = 0.0;
      delta_shorthand = true;
    } else if (key == "delta_lb") {
      p.delta_lb = parse_number(origin, line_no, key, value);
    } else if (key == "m_ub") {
      p.m_ub = parse_number(origin, line_no, key, value);
    } else if (key == "alpha") {
      p.alpha = parse_number(origin, line_no, key, value);
    } else if (key == "k") {
      p.k = parse_number(origin, line_no, key, value);
    } else if (key == "b") {
      p.b = parse_number(origin, line_no, key, value);
    } else if (key == "t") {
      p.t = parse_number(origin, line_no, key, value);
    } else {
      throw ConfigError(origin, line_no, key, "unknown key");
    }
    if (delta_shorthand && explicit_v)
      throw ConfigError(origin, line_no, key, "delta shorthand conflicts with explicit v_l/v_f");
  }
  return scenario;
}

Scenario parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "", "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

}  // namespace specshare::config
