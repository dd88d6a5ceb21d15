#include <stdexcept>
#include <string>

#include <json.hpp>

#include "eulerian/polycore.hpp"

namespace eulerian {

namespace {

constexpr std::array<std::string_view, 10> kSuperscripts = {
    "⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};

std::string exponent_text(unsigned e, TextStyle style) {
  const std::string digits = std::to_string(e);
  switch (style) {
    case TextStyle::Unicode: {
      std::string out;
      for (char ch : digits) out += kSuperscripts[static_cast<std::size_t>(ch - '0')];
      return out;
    }
    case TextStyle::Latex:
      return "^{" + digits + "}";
    case TextStyle::Plain:
      return "^" + digits;
  }
  return digits;
}

std::string var_text(Var v, TextStyle style) {
  if (style == TextStyle::Latex && v == Var::e) return "\\alpha ";
  return std::string(var_name(v));
}

std::string monomial_text(const Monomial& m, TextStyle style) {
  std::string out;
  for (Var v : kAllVars) {
    const unsigned e = m[v];
    if (e == 0) continue;
    out += var_text(v, style);
    if (e > 1) out += exponent_text(e, style);
  }
  // "\alpha " keeps LaTeX tokens apart; drop the trailing blank
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

// Appends one signed term; `first` suppresses a leading '+'.
void append_term(std::string& out, const Monomial& m, const Coeff& c, TextStyle style,
                 bool first, const std::string& suffix = {}) {
  const bool negative = sgn(c) < 0;
  if (negative) {
    out += '-';
  } else if (!first) {
    out += '+';
  }
  const Coeff magnitude = abs(c);
  const std::string mono = monomial_text(m, style) + suffix;
  if (mono.empty()) {
    out += magnitude.get_str();
  } else {
    if (magnitude != 1) out += magnitude.get_str();
    out += mono;
  }
}

std::string flat_text(const MultiPoly& poly, TextStyle style) {
  if (poly.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : poly.terms()) {
    append_term(out, m, c, style, first);
    first = false;
  }
  return out;
}

}  // namespace

std::string to_text(const MultiPoly& poly, TextStyle style) {
  const auto vars = poly.variables();
  const bool grouped = vars.size() > 1 && vars.front() == Var::t;
  if (!grouped) return flat_text(poly, style);

  const auto view = univariate_view(poly, Var::t);
  std::string out;
  bool first = true;
  for (std::size_t k = 0; k < view.coeffs.size(); ++k) {
    const MultiPoly& ck = view.coeffs[k];
    if (ck.is_zero()) continue;
    const Monomial tk = Monomial::of(Var::t, static_cast<unsigned>(k));
    if (ck.size() == 1) {
      const auto& [m, c] = *ck.terms().begin();
      append_term(out, m, c, style, first, monomial_text(tk, style));
    } else if (k == 0) {
      out += flat_text(ck, style);
    } else {
      if (!first) out += '+';
      out += "(" + flat_text(ck, style) + ")" + monomial_text(tk, style);
    }
    first = false;
  }
  return out;
}

std::string to_json(const MultiPoly& poly) {
  using nlohmann::ordered_json;
  const auto vars = poly.variables();
  ordered_json doc;
  ordered_json names = ordered_json::array();
  for (Var v : vars) names.push_back(std::string(var_name(v)));
  ordered_json terms = ordered_json::array();
  for (const auto& [m, c] : poly.terms()) {
    ordered_json exps = ordered_json::array();
    for (Var v : vars) exps.push_back(m[v]);
    ordered_json term;
    term["exp"] = std::move(exps);
    term["coef"] = c.get_str();
    terms.push_back(std::move(term));
  }
  doc["vars"] = std::move(names);
  doc["terms"] = std::move(terms);
  return doc.dump();
}

MultiPoly from_json(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& err) {
    throw std::invalid_argument(std::string("malformed polynomial JSON: ") + err.what());
  }
  if (!doc.is_object() || !doc.contains("vars") || !doc.contains("terms") ||
      !doc["vars"].is_array() || !doc["terms"].is_array()) {
    throw std::invalid_argument("polynomial JSON needs array fields 'vars' and 'terms'");
  }
  std::vector<Var> vars;
  for (const auto& name : doc["vars"]) {
    if (!name.is_string()) throw std::invalid_argument("variable names must be strings");
    vars.push_back(parse_var(name.get<std::string>()));
  }
  MultiPoly out;
  for (const auto& term : doc["terms"]) {
    if (!term.is_object() || !term.contains("exp") || !term.contains("coef") ||
        !term["exp"].is_array() || !term["coef"].is_string() ||
        term["exp"].size() != vars.size()) {
      throw std::invalid_argument("malformed polynomial term");
    }
    Monomial m;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const auto& e = term["exp"][i];
      if (!e.is_number_unsigned()) throw std::invalid_argument("exponents must be non-negative");
      m = m * Monomial::of(vars[i], e.get<unsigned>());
    }
    Coeff c;
    const auto text = term["coef"].get<std::string>();
    if (text.empty() || c.set_str(text, 10) != 0) {
      throw std::invalid_argument("coefficient is not a decimal integer: '" + text + "'");
    }
    out.add_term(m, c);
  }
  return out;
}

}  // namespace eulerian
