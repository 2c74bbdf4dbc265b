#ifndef SPECSHARE_CONFIG_HPP
#define SPECSHARE_CONFIG_HPP

#include <stdexcept>
#include <string>

#include "specshare/market.hpp"

namespace specshare::config {

/// Parse failure with the offending location attached.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string origin, int line, std::string field, const std::string& message)
      : std::runtime_error(origin + ":" + std::to_string(line) +
                           (field.empty() ? "" : " (" + field + ")") + ": " + message),
        line_(line),
        field_(std::move(field)) {}

  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

struct Scenario {
  std::string variant = "base";  ///< base | outside | three_player | two_player_comparison
  MarketParams params;
};

/// Flat `key = value` scenario text, one pair per line, `#` comments.
/// Recognized keys: variant, s, gamma, c, v_l, v_f, delta (shorthand for
/// v_l = value, v_f = 0), delta_lb, m_ub, alpha, k, b, t.
Scenario parse_text(const std::string& text, const std::string& origin = "<config>");

Scenario parse_file(const std::string& path);

bool known_variant(const std::string& name) noexcept;

}  // namespace specshare::config

#endif
