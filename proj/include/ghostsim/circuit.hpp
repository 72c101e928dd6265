// Copyright 2026 The ghostsim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOSTSIM_CIRCUIT_HPP_
#define GHOSTSIM_CIRCUIT_HPP_

#include <cctype>
#include <charconv>
#include <cstdio>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ghostsim/classes.hpp"
#include "ghostsim/gates.hpp"
#include "ghostsim/geometry.hpp"
#include "ghostsim/ontic.hpp"

namespace ghostsim {

struct GateStep {
  GateSpec gate;
  friend bool operator==(const GateStep&, const GateStep&) = default;
};

/// Keep only the sub-ensemble in which the preceding detector in `path` reported `required`.
struct SelectStep {
  Path path = Path::upper;
  Firing required = Firing::click;
  friend bool operator==(const SelectStep&, const SelectStep&) = default;
};

/// MEASURE is a GateStep holding a DetectorPair.
using Step = std::variant<GateStep, SelectStep>;

struct Circuit {
  /// A path index (the standard preparation) or an externally supplied ensemble.
  std::variant<Path, WeightedStates> init = Path::upper;
  std::vector<Step> steps;

  friend bool operator==(const Circuit&, const Circuit&) = default;

  Circuit& then(GateSpec g) {
    steps.emplace_back(GateStep{g});
    return *this;
  }
  Circuit& select(Path path, Firing required) {
    steps.emplace_back(SelectStep{path, required});
    return *this;
  }
};

inline WeightedStates initial_distribution(const Circuit& c) {
  if (const auto* p = std::get_if<Path>(&c.init)) return initial_state(*p);
  return std::get<WeightedStates>(c.init);
}

/// Error raised while reading a circuit, with 1-based position.
class CircuitError : public std::runtime_error {
 public:
  enum class Kind { syntax, semantic };

  CircuitError(Kind kind, int line, int column, std::string token, const std::string& what)
      : std::runtime_error(format(kind, line, column, token, what)),
        kind_(kind),
        line_(line),
        column_(column),
        token_(std::move(token)) {}

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }
  [[nodiscard]] const std::string& token() const { return token_; }

 private:
  static std::string format(Kind kind, int line, int column, const std::string& token,
                            const std::string& what) {
    std::ostringstream os;
    os << (kind == Kind::syntax ? "syntax error" : "semantic error") << " at line " << line;
    if (column > 0) os << ", column " << column;
    if (!token.empty()) os << " near '" << token << "'";
    os << ": " << what;
    return os.str();
  }

  Kind kind_;
  int line_;
  int column_;
  std::string token_;
};

/// Returns the reason a SELECT at `index` is misplaced, or an empty string.
inline std::string select_problem(const std::vector<Step>& steps, std::size_t index) {
  const auto& sel = std::get<SelectStep>(steps[index]);
  if (index == 0) return "SELECT without a preceding detector";
  const auto* prev = std::get_if<GateStep>(&steps[index - 1]);
  if (prev == nullptr) return "SELECT without a preceding detector";
  if (const auto* d = std::get_if<Detector>(&prev->gate)) {
    if (d->path != sel.path) return "SELECT path does not match the preceding detector";
    return {};
  }
  if (std::holds_alternative<DetectorPair>(prev->gate)) return {};
  return "SELECT without a preceding detector";
}

/// Throws std::invalid_argument unless every SELECT directly follows a matching detector.
inline void validate(const Circuit& c) {
  for (std::size_t k = 0; k < c.steps.size(); ++k) {
    if (const auto* g = std::get_if<GateStep>(&c.steps[k])) {
      validate(g->gate);
    } else if (auto why = select_problem(c.steps, k); !why.empty()) {
      throw std::invalid_argument("step " + std::to_string(k + 1) + ": " + why);
    }
  }
}

namespace detail {

struct Token {
  std::string text;
  int column = 0;
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    if (k >= line.size()) break;
    const std::size_t start = k;
    while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    out.push_back({std::string(line.substr(start, k - start)), static_cast<int>(start) + 1});
  }
  return out;
}

inline std::string upper(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

inline bool parse_number(const std::string& text, double& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  if (*first == '+') ++first;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace detail

/// Angle literal: a decimal number of radians, or [sign][k*]PI[/m].
inline std::optional<double> parse_angle(const std::string& token) {
  double value = 0.0;
  if (detail::parse_number(token, value)) return value;
  static const std::regex pi_form(
      R"(^([+-]?)(?:([0-9]*\.?[0-9]+(?:E[+-]?[0-9]+)?)\*)?PI(?:/([0-9]*\.?[0-9]+(?:E[+-]?[0-9]+)?))?$)");
  std::smatch m;
  const std::string u = detail::upper(token);
  if (!std::regex_match(u, m, pi_form)) return std::nullopt;
  double coef = 1.0;
  double denom = 1.0;
  if (m[2].matched && !detail::parse_number(m[2].str(), coef)) return std::nullopt;
  if (m[3].matched && (!detail::parse_number(m[3].str(), denom) || denom == 0.0)) return std::nullopt;
  const double sign = m[1].str() == "-" ? -1.0 : 1.0;
  return sign * coef * kPi / denom;
}

inline Circuit parse(std::string_view text) {
  using Kind = CircuitError::Kind;
  Circuit circuit;
  bool have_init = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;

    const int end_col = static_cast<int>(line.size()) + 1;
    const std::string keyword = detail::upper(tokens[0].text);
    std::size_t expected = 0;
    const auto arg = [&](std::size_t k, const char* what) -> const detail::Token& {
      if (k >= tokens.size()) {
        throw CircuitError(Kind::syntax, line_no, end_col, "", std::string("missing ") + what);
      }
      return tokens[k];
    };
    const auto path_arg = [&](std::size_t k) {
      const auto& t = arg(k, "path index");
      if (t.text != "0" && t.text != "1") {
        throw CircuitError(Kind::syntax, line_no, t.column, t.text, "path must be 0 or 1");
      }
      return t.text == "0" ? Path::upper : Path::lower;
    };
    const auto angle_arg = [&](std::size_t k) {
      const auto& t = arg(k, "angle");
      auto a = parse_angle(t.text);
      if (!a) throw CircuitError(Kind::syntax, line_no, t.column, t.text, "malformed angle");
      return *a;
    };

    if (keyword == "INIT") {
      if (have_init) throw CircuitError(Kind::semantic, line_no, tokens[0].column, tokens[0].text, "duplicate INIT");
      if (!circuit.steps.empty()) {
        throw CircuitError(Kind::semantic, line_no, tokens[0].column, tokens[0].text, "INIT must precede all steps");
      }
      circuit.init = path_arg(1);
      have_init = true;
      expected = 2;
    } else {
      if (!have_init) {
        throw CircuitError(Kind::semantic, line_no, tokens[0].column, tokens[0].text, "circuit must start with INIT");
      }
      if (keyword == "PS") {
        const Path p = path_arg(1);
        circuit.then(PhaseShifter{p, angle_arg(2)});
        expected = 3;
      } else if (keyword == "BS") {
        circuit.then(BeamSplitter{angle_arg(1)});
        expected = 2;
      } else if (keyword == "DET") {
        circuit.then(Detector{path_arg(1)});
        expected = 2;
      } else if (keyword == "MEASURE") {
        circuit.then(DetectorPair{});
        expected = 1;
      } else if (keyword == "SELECT") {
        const Path p = path_arg(1);
        const auto& t = arg(2, "CLICK or NOCLICK");
        const std::string v = detail::upper(t.text);
        if (v != "CLICK" && v != "NOCLICK") {
          throw CircuitError(Kind::syntax, line_no, t.column, t.text, "expected CLICK or NOCLICK");
        }
        circuit.select(p, v == "CLICK" ? Firing::click : Firing::no_click);
        if (auto why = select_problem(circuit.steps, circuit.steps.size() - 1); !why.empty()) {
          throw CircuitError(Kind::semantic, line_no, tokens[0].column, tokens[0].text, why);
        }
        expected = 3;
      } else {
        throw CircuitError(Kind::syntax, line_no, tokens[0].column, tokens[0].text, "unknown directive");
      }
    }
    if (tokens.size() > expected) {
      throw CircuitError(Kind::syntax, line_no, tokens[expected].column, tokens[expected].text,
                         "unexpected trailing token");
    }
  }
  if (!have_init) throw CircuitError(Kind::semantic, line_no, 0, "", "missing INIT");
  return circuit;
}

inline std::string format_angle(double a) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", a);
  return buf;
}

/// DSL text for a circuit; inverse of parse.
inline std::string serialize(const Circuit& c) {
  const auto* init = std::get_if<Path>(&c.init);
  if (init == nullptr) throw std::invalid_argument("serialize: an external initial ensemble has no DSL form");
  std::ostringstream os;
  os << "INIT " << index(*init) << '\n';
  for (const auto& step : c.steps) {
    if (const auto* sel = std::get_if<SelectStep>(&step)) {
      os << "SELECT " << index(sel->path) << (sel->required == Firing::click ? " CLICK" : " NOCLICK") << '\n';
      continue;
    }
    std::visit(
        [&](const auto& g) {
          using G = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<G, PhaseShifter>) {
            os << "PS " << index(g.path) << ' ' << format_angle(g.omega) << '\n';
          } else if constexpr (std::is_same_v<G, BeamSplitter>) {
            os << "BS " << format_angle(g.xi) << '\n';
          } else if constexpr (std::is_same_v<G, Detector>) {
            os << "DET " << index(g.path) << '\n';
          } else {
            os << "MEASURE\n";
          }
        },
        std::get<GateStep>(step).gate);
  }
  return os.str();
}

/// Gates taking the standard path-0 preparation to the class member p_N^(α,β).
///
/// With N' = R_z(α+β)N = (θ', φ'): B(θ'), P₁(φ' + π/2) rotate ẑ onto N', B(0)
/// resets the ghost phases, then P₀(β) and P₁(−α) set the target phases.
/// Pole labels yield the ghost-carrying pole members (phase α at +ẑ, β at −ẑ).
inline Circuit prepare_protocol(const ClassLabel& target, double alpha, double beta) {
  const Spherical s = to_spherical(rotate_z(target.n, alpha + beta));
  Circuit c{Path::upper, {}};
  c.then(BeamSplitter{s.theta})
      .then(PhaseShifter{Path::lower, s.phi + kPi / 2.0})
      .then(BeamSplitter{0.0})
      .then(PhaseShifter{Path::upper, beta})
      .then(PhaseShifter{Path::lower, -alpha});
  return c;
}

/// Member of prepare_protocol's target class that the circuit reaches.
inline WeightedStates protocol_target(const ClassLabel& target, double alpha, double beta) {
  if (is_north(target.n)) return class_member(target, PoleGhostParams{alpha});
  if (is_south(target.n)) return class_member(target, PoleGhostParams{beta});
  return class_member(target, GenericParams{alpha, beta});
}

/// Post-selecting preparation of δ_i δ_n δ_∅ from the standard path-0 preparation.
///
/// i = 0: B(θ), P₀(−φ − π/2), D₁, keep NO CLICK (the real particle in path 0 is
/// rotated directly, so it carries n itself).
/// i = 1: B(π − θ), P₁(φ − π/2), D₀, keep NO CLICK.
inline Circuit prepare_empty(Path i, UnitVec3 n) {
  if (is_south(n)) throw std::invalid_argument("prepare_empty: the vector -z cannot be prepared");
  const Spherical s = to_spherical(n);
  Circuit c{Path::upper, {}};
  if (i == Path::upper) {
    c.then(BeamSplitter{s.theta})
        .then(PhaseShifter{Path::upper, -(s.phi + kPi / 2.0)})
        .then(Detector{Path::lower})
        .select(Path::lower, Firing::no_click);
  } else {
    c.then(BeamSplitter{kPi - s.theta})
        .then(PhaseShifter{Path::lower, s.phi - kPi / 2.0})
        .then(Detector{Path::upper})
        .select(Path::upper, Firing::no_click);
  }
  return c;
}

/// ½(1 + ẑ·n): chance that prepare_empty's post-selection succeeds (either path).
inline double prepare_empty_success(UnitVec3 n) { return 0.5 * (1.0 + n.z()); }

/// Sieve an arbitrary source through detectors in both paths; one branch per detector that clicked.
inline std::vector<GateBranch> init_filter(const WeightedStates& source) {
  return push_forward(source, DetectorPair{}).branches;
}

}  // namespace ghostsim

#endif  // GHOSTSIM_CIRCUIT_HPP_
