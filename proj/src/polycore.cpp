#include "eulerian/polycore.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace eulerian {

namespace {

constexpr std::array<std::string_view, kNumVars> kVarNames = {
    "t", "q", "p", "y", "u", "v", "w", "a", "b", "c", "d", "e"};

}  // namespace

std::string_view var_name(Var v) { return kVarNames[static_cast<std::size_t>(v)]; }

Var parse_var(std::string_view name) {
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (kVarNames[i] == name) return kAllVars[i];
  }
  throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::of(Var v, unsigned exponent) {
  Monomial m;
  m.set(v, exponent);
  return m;
}

void Monomial::set(Var v, unsigned exponent) {
  if (exponent > std::numeric_limits<Exponent>::max()) {
    throw std::overflow_error("monomial exponent out of range");
  }
  exp_[index(v)] = static_cast<Exponent>(exponent);
}

bool Monomial::is_one() const {
  return std::all_of(exp_.begin(), exp_.end(), [](Exponent e) { return e == 0; });
}

unsigned Monomial::total_degree() const {
  unsigned total = 0;
  for (Exponent e : exp_) total += e;
  return total;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    const unsigned sum = unsigned{exp_[i]} + unsigned{other.exp_[i]};
    if (sum > std::numeric_limits<Exponent>::max()) {
      throw std::overflow_error("monomial exponent out of range");
    }
    out.exp_[i] = static_cast<Exponent>(sum);
  }
  return out;
}

Monomial Monomial::without(Var v) const {
  Monomial out = *this;
  out.exp_[index(v)] = 0;
  return out;
}

// ---------------------------------------------------------------------------
// MultiPoly

MultiPoly::MultiPoly(long constant) {
  if (constant != 0) terms_.emplace(Monomial{}, Coeff(constant));
}

MultiPoly::MultiPoly(const Coeff& constant) {
  if (constant != 0) terms_.emplace(Monomial{}, constant);
}

MultiPoly::MultiPoly(const Monomial& m, const Coeff& c) {
  if (c != 0) terms_.emplace(m, c);
}

MultiPoly MultiPoly::var(Var v, unsigned exponent) {
  return MultiPoly(Monomial::of(v, exponent), Coeff(1));
}

MultiPoly MultiPoly::from_coeffs(Var v, std::initializer_list<long> coeffs) {
  MultiPoly out;
  unsigned k = 0;
  for (long c : coeffs) out.add_term(Monomial::of(v, k++), Coeff(c));
  return out;
}

MultiPoly MultiPoly::from_coeffs(Var v, std::span<const Coeff> coeffs) {
  MultiPoly out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    out.add_term(Monomial::of(v, static_cast<unsigned>(k)), coeffs[k]);
  }
  return out;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Coeff MultiPoly::constant_value() const {
  if (!is_constant()) throw std::domain_error("polynomial is not a constant");
  return terms_.empty() ? Coeff(0) : terms_.begin()->second;
}

Coeff MultiPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Coeff(0) : it->second;
}

int MultiPoly::degree(Var v) const {
  int deg = -1;
  for (const auto& [m, c] : terms_) deg = std::max(deg, static_cast<int>(m[v]));
  return deg;
}

int MultiPoly::low_degree(Var v) const {
  if (terms_.empty()) return -1;
  int low = std::numeric_limits<int>::max();
  for (const auto& [m, c] : terms_) low = std::min(low, static_cast<int>(m[v]));
  return low;
}

MultiPoly MultiPoly::coefficient(Var v, unsigned k) const {
  MultiPoly out;
  for (const auto& [m, c] : terms_) {
    if (m[v] == k) out.terms_.emplace_hint(out.terms_.end(), m.without(v), c);
  }
  return out;
}

std::vector<Var> MultiPoly::variables() const {
  std::array<bool, kNumVars> seen{};
  for (const auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < kNumVars; ++i) seen[i] = seen[i] || m.exponents()[i] > 0;
  }
  std::vector<Var> out;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (seen[i]) out.push_back(kAllVars[i]);
  }
  return out;
}

bool MultiPoly::is_nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& term) { return sgn(term.second) >= 0; });
}

void MultiPoly::add_term(const Monomial& m, const Coeff& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out;
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      auto [it, inserted] = out.terms_.try_emplace(ma * mb);
      mpz_addmul(it->second.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  }
  std::erase_if(out.terms_, [](const auto& term) { return term.second == 0; });
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) {
  *this = *this * other;
  return *this;
}

MultiPoly operator-(MultiPoly a) {
  for (auto& [m, c] : a.terms_) c = -c;
  return a;
}

MultiPoly MultiPoly::pow(unsigned exponent) const {
  MultiPoly result(1);
  MultiPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Ring helpers

MultiPoly add(const MultiPoly& a, const MultiPoly& b) { return a + b; }
MultiPoly mul(const MultiPoly& a, const MultiPoly& b) { return a * b; }

MultiPoly eval_at(const MultiPoly& poly, Var v, const Coeff& value) {
  MultiPoly out;
  std::vector<Coeff> powers{Coeff(1)};
  for (const auto& [m, c] : poly.terms()) {
    const unsigned e = m[v];
    while (powers.size() <= e) powers.push_back(powers.back() * value);
    out.add_term(m.without(v), c * powers[e]);
  }
  return out;
}

MultiPoly substitute(const MultiPoly& poly, const std::map<Var, MultiPoly>& images) {
  // powers[var][k] = image(var)^k, filled lazily
  std::map<Var, std::vector<MultiPoly>> powers;
  auto power_of = [&](Var v, unsigned k) -> const MultiPoly& {
    auto& table = powers[v];
    if (table.empty()) table.emplace_back(1);
    while (table.size() <= k) table.push_back(table.back() * images.at(v));
    return table[k];
  };

  MultiPoly out;
  for (const auto& [m, c] : poly.terms()) {
    Monomial rest = m;
    MultiPoly term{c};
    for (const auto& [v, image] : images) {
      const unsigned e = m[v];
      if (e == 0) continue;
      rest.set(v, 0);
      term *= power_of(v, e);
    }
    if (!rest.is_one()) term *= MultiPoly(rest, Coeff(1));
    out += term;
  }
  return out;
}

MultiPoly rename(const MultiPoly& poly, Var from, Var to) {
  if (from == to) return poly;
  if (poly.degree(to) > 0) {
    throw std::invalid_argument("rename target variable already occurs");
  }
  MultiPoly out;
  for (const auto& [m, c] : poly.terms()) {
    Monomial renamed = m.without(from);
    renamed.set(to, m[from]);
    out.add_term(renamed, c);
  }
  return out;
}

Coeff binomial(unsigned n, unsigned k) {
  if (k > n) return Coeff(0);
  Coeff out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

MultiPoly q_binomial(unsigned n, unsigned k) {
  if (k > n) return MultiPoly();
  // Pascal rows [n k]_q = [n-1 k-1]_q + q^k [n-1 k]_q, cached across calls.
  static std::mutex mutex;
  static std::vector<std::vector<MultiPoly>> rows{{MultiPoly(1)}};
  std::lock_guard lock(mutex);
  while (rows.size() <= n) {
    const auto& prev = rows.back();
    const std::size_t m = rows.size();
    std::vector<MultiPoly> row(m + 1);
    row[0] = MultiPoly(1);
    row[m] = MultiPoly(1);
    for (std::size_t j = 1; j < m; ++j) {
      row[j] = prev[j - 1] + MultiPoly::var(Var::q, static_cast<unsigned>(j)) * prev[j];
    }
    rows.push_back(std::move(row));
  }
  return rows[n][k];
}

MultiPoly q_factorial(unsigned n) {
  MultiPoly out(1);
  for (unsigned i = 1; i <= n; ++i) {
    MultiPoly qint;
    for (unsigned j = 0; j < i; ++j) qint.add_term(Monomial::of(Var::q, j), Coeff(1));
    out *= qint;
  }
  return out;
}

MultiPoly pq_integer(unsigned n) {
  MultiPoly out;
  for (unsigned i = 0; i < n; ++i) {
    Monomial m;
    m.set(Var::p, n - 1 - i);
    m.set(Var::q, i);
    out.add_term(m, Coeff(1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Univariate views

UniView univariate_view(const MultiPoly& poly, Var v) {
  UniView view{v, {}};
  const int deg = poly.degree(v);
  if (deg < 0) return view;
  view.coeffs.resize(static_cast<std::size_t>(deg) + 1);
  for (const auto& [m, c] : poly.terms()) {
    view.coeffs[m[v]].add_term(m.without(v), c);
  }
  return view;
}

MultiPoly assemble(const UniView& view) {
  MultiPoly out;
  for (std::size_t k = 0; k < view.coeffs.size(); ++k) {
    out += view.coeffs[k] * MultiPoly::var(view.var, static_cast<unsigned>(k));
  }
  return out;
}

std::vector<Coeff> integer_coefficients(const MultiPoly& poly) {
  const auto vars = poly.variables();
  if (vars.size() > 1) {
    throw std::invalid_argument("expected an integer polynomial in one variable, got " +
                                to_text(poly, TextStyle::Plain));
  }
  if (poly.is_zero()) return {};
  if (vars.empty()) return {poly.constant_value()};
  const Var v = vars.front();
  std::vector<Coeff> out(static_cast<std::size_t>(poly.degree(v)) + 1, Coeff(0));
  for (const auto& [m, c] : poly.terms()) out[m[v]] = c;
  return out;
}

// ---------------------------------------------------------------------------
// Structural analyzers

bool is_palindromic(const MultiPoly& poly, Var v, unsigned m) {
  if (poly.degree(v) > static_cast<int>(m)) return false;
  for (unsigned i = 0; 2 * i < m; ++i) {
    if (poly.coefficient(v, i) != poly.coefficient(v, m - i)) return false;
  }
  return true;
}

bool is_unimodal(const MultiPoly& poly) {
  const auto coeffs = integer_coefficients(poly);
  std::size_t i = 1;
  while (i < coeffs.size() && coeffs[i - 1] <= coeffs[i]) ++i;
  while (i < coeffs.size() && coeffs[i - 1] >= coeffs[i]) ++i;
  return i >= coeffs.size();
}

bool is_log_concave(const MultiPoly& poly) {
  const auto a = integer_coefficients(poly);
  for (std::size_t k = 1; k + 1 < a.size(); ++k) {
    if (a[k] * a[k] < a[k - 1] * a[k + 1]) return false;
  }
  return true;
}

bool is_q_log_concave(const MultiPoly& poly, Var v) {
  const auto view = univariate_view(poly, v);
  const auto& a = view.coeffs;
  for (std::size_t k = 1; k + 1 < a.size(); ++k) {
    if (!(a[k] * a[k] - a[k - 1] * a[k + 1]).is_nonnegative()) return false;
  }
  return true;
}

std::vector<MultiPoly> gamma_expand(const MultiPoly& poly, unsigned m, Var v) {
  if (!is_palindromic(poly, v, m)) {
    throw std::domain_error("no gamma expansion: polynomial is not palindromic in " +
                            std::string(var_name(v)) + " with parameter " +
                            std::to_string(m));
  }
  const MultiPoly one_plus = MultiPoly(1) + MultiPoly::var(v);
  std::vector<MultiPoly> gammas;
  MultiPoly rest = poly;
  for (unsigned k = 0; 2 * k <= m; ++k) {
    MultiPoly g = rest.coefficient(v, k);
    rest -= g * MultiPoly::var(v, k) * one_plus.pow(m - 2 * k);
    gammas.push_back(std::move(g));
  }
  if (!rest.is_zero()) {
    throw std::domain_error("gamma peeling left a non-zero remainder");
  }
  return gammas;
}

MultiPoly gamma_assemble(std::span<const MultiPoly> gammas, unsigned m, Var v) {
  const MultiPoly one_plus = MultiPoly(1) + MultiPoly::var(v);
  MultiPoly out;
  for (unsigned k = 0; k < gammas.size(); ++k) {
    if (2 * k > m) throw std::invalid_argument("too many gamma coefficients");
    out += gammas[k] * MultiPoly::var(v, k) * one_plus.pow(m - 2 * k);
  }
  return out;
}

std::vector<MultiPoly> log_convexity_operator(std::span<const MultiPoly> seq) {
  if (seq.size() < 3) {
    throw std::invalid_argument("log-convexity operator needs at least three terms");
  }
  std::vector<MultiPoly> out;
  out.reserve(seq.size() - 2);
  for (std::size_t j = 0; j + 2 < seq.size(); ++j) {
    out.push_back(seq[j + 2] * seq[j] - seq[j + 1] * seq[j + 1]);
  }
  return out;
}

bool is_k_log_convex(std::span<const MultiPoly> seq, unsigned k) {
  if (seq.size() < 2 * std::size_t{k} + 1) {
    throw std::invalid_argument("sequence of length " + std::to_string(seq.size()) +
                                " is too short for " + std::to_string(k) +
                                " applications of the log-convexity operator");
  }
  std::vector<MultiPoly> current(seq.begin(), seq.end());
  for (unsigned i = 0; i < k; ++i) current = log_convexity_operator(current);
  return std::all_of(current.begin(), current.end(),
                     [](const MultiPoly& f) { return f.is_nonnegative(); });
}

bool product_palindromic_unimodal(const MultiPoly& p, const MultiPoly& q,
                                  unsigned mp, unsigned mq) {
  const MultiPoly prod = p * q;
  const auto vars = prod.variables();
  const Var v = vars.empty() ? Var::t : vars.front();
  return is_palindromic(prod, v, mp + mq) && is_unimodal(prod);
}

}  // namespace eulerian
