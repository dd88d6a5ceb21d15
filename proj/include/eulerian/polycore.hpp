/**
 * @file polycore.hpp
 * @brief Exact sparse multivariate polynomials over Z and the structural
 *        analyzers (palindromicity, unimodality, gamma expansion,
 *        log-concavity and iterated log-convexity).
 *
 * Every polynomial lives over the fixed alphabet t, q, p, y, u, v, w, a, b,
 * c, d, e.  Coefficients are GMP integers, so no operation ever rounds.
 * Terms are stored in a std::map keyed by the exponent vector, which makes
 * the zero-free term map itself the canonical form: two polynomials are equal
 * exactly when their maps are equal.
 */
#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace eulerian {

using Coeff = mpz_class;

/// The variable alphabet, in canonical order.  `e` stands in for alpha.
enum class Var : std::uint8_t { t, q, p, y, u, v, w, a, b, c, d, e };

inline constexpr std::size_t kNumVars = 12;

inline constexpr std::array<Var, kNumVars> kAllVars = {
    Var::t, Var::q, Var::p, Var::y, Var::u, Var::v,
    Var::w, Var::a, Var::b, Var::c, Var::d, Var::e};

std::string_view var_name(Var v);

/// Throws std::invalid_argument for names outside the alphabet.
Var parse_var(std::string_view name);

/// A power product of alphabet variables.
class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;

  static Monomial of(Var v, unsigned exponent = 1);

  unsigned operator[](Var v) const { return exp_[index(v)]; }
  void set(Var v, unsigned exponent);

  bool is_one() const;
  unsigned total_degree() const;

  /// Throws std::overflow_error if an exponent would exceed the storage width.
  Monomial operator*(const Monomial& other) const;

  /// Monomial with `v` removed.
  Monomial without(Var v) const;

  const std::array<Exponent, kNumVars>& exponents() const { return exp_; }

  // Lexicographic on (t, q, p, ...), which is also the JSON term order.
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  static constexpr std::size_t index(Var v) { return static_cast<std::size_t>(v); }
  std::array<Exponent, kNumVars> exp_{};
};

class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Coeff>;

  MultiPoly() = default;
  MultiPoly(long constant);  // NOLINT(google-explicit-constructor)
  MultiPoly(const Coeff& constant);  // NOLINT(google-explicit-constructor)
  MultiPoly(const Monomial& m, const Coeff& c);

  static MultiPoly var(Var v, unsigned exponent = 1);

  /// Dense univariate constructor: sum coeffs[k] * v^k.
  static MultiPoly from_coeffs(Var v, std::initializer_list<long> coeffs);
  static MultiPoly from_coeffs(Var v, std::span<const Coeff> coeffs);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term value; throws std::domain_error if not constant.
  Coeff constant_value() const;

  /// Coefficient of a monomial (zero if absent).
  Coeff coeff(const Monomial& m) const;

  /// Degree in `v`; -1 for the zero polynomial.
  int degree(Var v) const;
  /// Lowest exponent of `v` present; -1 for zero.
  int low_degree(Var v) const;

  /// Coefficient of v^k, as a polynomial in the remaining variables.
  MultiPoly coefficient(Var v, unsigned k) const;

  /// Variables with a positive exponent somewhere, in alphabet order.
  std::vector<Var> variables() const;

  /// True when every coefficient is >= 0.
  bool is_nonnegative() const;

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(MultiPoly a);

  MultiPoly pow(unsigned exponent) const;

  /// Adds c * m in place (fused multiply-add on a single term).
  void add_term(const Monomial& m, const Coeff& c);

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

 private:
  TermMap terms_;
};

// ---------------------------------------------------------------------------
// Ring helpers

MultiPoly add(const MultiPoly& a, const MultiPoly& b);
MultiPoly mul(const MultiPoly& a, const MultiPoly& b);

/// Substitutes the integer `value` for `v`.
MultiPoly eval_at(const MultiPoly& poly, Var v, const Coeff& value);

/// Simultaneous substitution of polynomials for variables.  Variables not in
/// the map are left alone.
MultiPoly substitute(const MultiPoly& poly, const std::map<Var, MultiPoly>& images);

/// Renames `from` to `to`.  Throws if `to` already occurs in `poly`.
MultiPoly rename(const MultiPoly& poly, Var from, Var to);

Coeff binomial(unsigned n, unsigned k);

/// Gaussian polynomial [n k]_q, zero when k > n.
MultiPoly q_binomial(unsigned n, unsigned k);

/// [n]_q! = prod_{i<=n} (1 + q + ... + q^{i-1}).
MultiPoly q_factorial(unsigned n);

/// [n]_{p,q} = p^{n-1} + p^{n-2} q + ... + q^{n-1}; zero for n == 0.
MultiPoly pq_integer(unsigned n);

// ---------------------------------------------------------------------------
// Univariate views

struct UniView {
  Var var;
  std::vector<MultiPoly> coeffs;  // coeffs[k] multiplies var^k
};

UniView univariate_view(const MultiPoly& poly, Var v);
MultiPoly assemble(const UniView& view);

/// Integer coefficient list of a polynomial in at most one variable.
/// Throws std::invalid_argument if two or more variables occur.
std::vector<Coeff> integer_coefficients(const MultiPoly& poly);

// ---------------------------------------------------------------------------
// Structural analyzers

/// h_i == h_{m-i} in `v` for all i.  False if deg_v(poly) > m.
bool is_palindromic(const MultiPoly& poly, Var v, unsigned m);

/// Integer coefficient list rises weakly then falls weakly.
/// Throws std::invalid_argument for non-univariate input.
bool is_unimodal(const MultiPoly& poly);

/// a_k^2 >= a_{k-1} a_{k+1} for every interior k.
bool is_log_concave(const MultiPoly& poly);

/// Coefficient-wise a_k(q)^2 - a_{k-1}(q) a_{k+1}(q) >= 0 for interior k,
/// where a_k is the coefficient of t^k.
bool is_q_log_concave(const MultiPoly& poly, Var v = Var::t);

/// gamma_0 .. gamma_{floor(m/2)} with poly = sum gamma_k v^k (1+v)^{m-2k}.
/// Throws std::domain_error when no such expansion exists.
std::vector<MultiPoly> gamma_expand(const MultiPoly& poly, unsigned m, Var v = Var::t);

/// Inverse of gamma_expand.
MultiPoly gamma_assemble(std::span<const MultiPoly> gammas, unsigned m, Var v = Var::t);

/// g_j = f_{j+2} f_j - f_{j+1}^2, i.e. output[j] belongs to input index j+1.
/// Throws std::invalid_argument if fewer than three entries.
std::vector<MultiPoly> log_convexity_operator(std::span<const MultiPoly> seq);

/// Applies the operator `k` times and tests the result for non-negative
/// coefficients.  Requires seq.size() >= 2k+1 (std::invalid_argument).
bool is_k_log_convex(std::span<const MultiPoly> seq, unsigned k);

/// Whether P*Q is palindromic with parameter mP+mQ and unimodal.
bool product_palindromic_unimodal(const MultiPoly& p, const MultiPoly& q,
                                  unsigned mp, unsigned mq);

// ---------------------------------------------------------------------------
// Rendering and the JSON wire format (see poly_format.cpp)

enum class TextStyle { Unicode, Latex, Plain };

/// "1+7t+15t²"-style rendering.  Multivariate polynomials involving t are
/// grouped by powers of t, e.g. "1+(2+q)t+t²".
std::string to_text(const MultiPoly& poly, TextStyle style = TextStyle::Unicode);

/// {"vars":[...],"terms":[{"exp":[...],"coef":"..."}]}
std::string to_json(const MultiPoly& poly);

/// Inverse of to_json.  Throws std::invalid_argument on malformed input.
MultiPoly from_json(std::string_view json);

}  // namespace eulerian
