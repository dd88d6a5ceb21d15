#include <random>
#include <stdexcept>

#include <doctest.h>

#include "eulerian/polycore.hpp"
#include "oracle.hpp"

using namespace eulerian;

namespace {

const MultiPoly t = MultiPoly::var(Var::t);
const MultiPoly q = MultiPoly::var(Var::q);
const MultiPoly p = MultiPoly::var(Var::p);
const MultiPoly y = MultiPoly::var(Var::y);

MultiPoly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> ex(0, 3);
  std::uniform_int_distribution<int> count(0, 5);
  const Var vars[] = {Var::t, Var::q, Var::p, Var::e};
  MultiPoly out;
  for (int k = count(rng); k > 0; --k) {
    Monomial m;
    for (Var v : vars) m.set(v, static_cast<unsigned>(ex(rng)));
    out.add_term(m, coef(rng));
  }
  return out;
}

}  // namespace

TEST_CASE("variable names round-trip and unknown names are rejected") {
  for (Var v : kAllVars) CHECK(parse_var(var_name(v)) == v);
  CHECK_THROWS_AS(parse_var("z"), std::invalid_argument);
  CHECK_THROWS_AS(parse_var(""), std::invalid_argument);
}

TEST_CASE("canonical form drops zero terms") {
  MultiPoly a = t + q;
  a -= t;
  CHECK(a == q);
  CHECK((t - t).is_zero());
  CHECK(MultiPoly(0).is_zero());
  CHECK(MultiPoly(7).constant_value() == 7);
  CHECK_THROWS_AS(t.constant_value(), std::domain_error);
}

TEST_CASE("degrees and coefficients") {
  const MultiPoly f = 3 * t.pow(2) * q + t - 4;
  CHECK(f.degree(Var::t) == 2);
  CHECK(f.degree(Var::q) == 1);
  CHECK(f.low_degree(Var::t) == 0);
  CHECK(MultiPoly().degree(Var::t) == -1);
  CHECK(f.coefficient(Var::t, 2) == 3 * q);
  CHECK(f.coefficient(Var::t, 5).is_zero());
  CHECK(f.variables() == std::vector<Var>{Var::t, Var::q});
  CHECK_FALSE(f.is_nonnegative());
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(20260101);
  for (int trial = 0; trial < 200; ++trial) {
    const MultiPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + MultiPoly() == a);
    CHECK(a * MultiPoly(1) == a);
    CHECK((a - a).is_zero());
    CHECK(add(a, b) == a + b);
    CHECK(mul(a, b) == a * b);
    CHECK(a.pow(2) == a * a);
  }
}

TEST_CASE("coefficients beyond 64 bits stay exact") {
  const MultiPoly big = (1 + t).pow(80);
  const Coeff mid = big.coeff(Monomial::of(Var::t, 40));
  CHECK(mid == binomial(80, 40));
  CHECK(mid.get_str() == "107507208733336176461620");
  CHECK(eval_at(big, Var::t, 1).constant_value() == Coeff(1) << 80);
}

TEST_CASE("exponent overflow is reported") {
  const Monomial m = Monomial::of(Var::t, 65535);
  CHECK_THROWS_AS(m * Monomial::of(Var::t), std::overflow_error);
}

TEST_CASE("evaluation, substitution and renaming") {
  const MultiPoly f = 1 + (2 + q) * t + t.pow(2);
  CHECK(eval_at(f, Var::q, -1) == 1 + t + t.pow(2));
  CHECK(eval_at(f, Var::y, 5) == f);
  CHECK(substitute(f, {{Var::t, q}, {Var::q, t}}) == 1 + (2 + t) * q + q.pow(2));
  CHECK(substitute(t * q, {{Var::t, 1 + y}}) == q + q * y);
  CHECK(rename(f, Var::q, Var::p) == 1 + (2 + p) * t + t.pow(2));
  CHECK_THROWS(rename(f, Var::q, Var::t));
}

TEST_CASE("binomials and q-binomials") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 4) == 0);
  CHECK(q_binomial(4, 2) == 1 + q + 2 * q.pow(2) + q.pow(3) + q.pow(4));
  CHECK(q_binomial(2, 3).is_zero());
  CHECK(q_binomial(0, 0) == 1);
  for (int n = 0; n <= 9; ++n)
    for (int k = 0; k <= n; ++k) {
      const MultiPoly g = q_binomial(static_cast<unsigned>(n), static_cast<unsigned>(k));
      CHECK(g == oracle::q_binomial(n, k));
      CHECK(g == q_binomial(static_cast<unsigned>(n), static_cast<unsigned>(n - k)));
      CHECK(eval_at(g, Var::q, 1).constant_value() ==
            binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)));
      CHECK(is_palindromic(g, Var::q, static_cast<unsigned>(k * (n - k))));
    }
  CHECK(q_factorial(3) == (1 + q) * (1 + q + q.pow(2)));
  CHECK(pq_integer(0).is_zero());
  CHECK(pq_integer(3) == p.pow(2) + p * q + q.pow(2));
}

TEST_CASE("univariate views") {
  const MultiPoly f = 1 + (2 + q) * t + t.pow(2);
  const UniView view = univariate_view(f, Var::t);
  REQUIRE(view.coeffs.size() == 3);
  CHECK(view.coeffs[1] == 2 + q);
  CHECK(assemble(view) == f);
  CHECK(integer_coefficients(1 + 3 * t).size() == 2);
  CHECK(integer_coefficients(MultiPoly(4)) == std::vector<Coeff>{4});
  CHECK_THROWS_AS(integer_coefficients(f), std::invalid_argument);
}

TEST_CASE("palindromicity, unimodality and log-concavity") {
  CHECK(is_palindromic(1 + 3 * t + t.pow(2), Var::t, 2));
  CHECK(is_palindromic(t + t.pow(2), Var::t, 3));
  CHECK_FALSE(is_palindromic(1 + 2 * t, Var::t, 1));
  CHECK_FALSE(is_palindromic(1 + t.pow(3), Var::t, 2));
  CHECK(is_unimodal(1 + 3 * t + t.pow(2)));
  CHECK(is_unimodal(MultiPoly()));
  CHECK_FALSE(is_unimodal(1 + 2 * t + t.pow(2) + 2 * t.pow(3)));
  CHECK_FALSE(is_unimodal(2 + t + 2 * t.pow(2)));
  CHECK_THROWS_AS(is_unimodal(t + q), std::invalid_argument);
  CHECK(is_log_concave(1 + 3 * t + 3 * t.pow(2) + t.pow(3)));
  CHECK_FALSE(is_log_concave(1 + t + 3 * t.pow(2)));
  CHECK(is_q_log_concave(1 + (2 + q) * t + t.pow(2)));
  CHECK_FALSE(is_q_log_concave(1 + q * t + (1 + q.pow(2)) * t.pow(2)));
}

TEST_CASE("gamma expansion examples") {
  const MultiPoly a4 = 1 + 11 * t + 11 * t.pow(2) + t.pow(3);
  const auto g = gamma_expand(a4, 3);
  REQUIRE(g.size() == 2);
  CHECK(g[0] == 1);
  CHECK(g[1] == 8);
  CHECK(gamma_expand(MultiPoly(), 4) == std::vector<MultiPoly>{0, 0, 0});
  const auto gq = gamma_expand(1 + (2 + q) * t + t.pow(2), 2);
  CHECK(gq[1] == q);
  CHECK_THROWS_AS(gamma_expand(1 + 2 * t, 1), std::domain_error);
  CHECK_THROWS_AS(gamma_expand(1 + t.pow(3), 2), std::domain_error);
}

TEST_CASE("gamma round-trip on random gamma vectors") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned m = static_cast<unsigned>(trial % 8);
    std::vector<MultiPoly> gammas;
    for (unsigned k = 0; k <= m / 2; ++k) gammas.push_back(eval_at(random_poly(rng), Var::t, 1));
    const MultiPoly assembled = gamma_assemble(gammas, m);
    CHECK(gamma_expand(assembled, m) == gammas);
    CHECK(is_palindromic(assembled, Var::t, m));
  }
}

TEST_CASE("log-convexity operator") {
  const std::vector<MultiPoly> fact = {1, 1, 2, 6, 24, 120, 720, 5040};
  const auto l1 = log_convexity_operator(fact);
  REQUIRE(l1.size() == 6);
  CHECK(l1[0] == 1);
  CHECK(l1[1] == 2);
  CHECK(is_k_log_convex(fact, 1));
  CHECK(is_k_log_convex(fact, 3));
  const std::vector<MultiPoly> down = {4, 2, 1};
  CHECK(log_convexity_operator(down)[0] == 0);
  const std::vector<MultiPoly> concave = {1, 3, 1};
  CHECK_FALSE(is_k_log_convex(concave, 1));
  CHECK_THROWS_AS(log_convexity_operator(std::vector<MultiPoly>{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(is_k_log_convex(fact, 4), std::invalid_argument);
}

TEST_CASE("products of palindromic unimodal polynomials") {
  CHECK(product_palindromic_unimodal(1 + t, 1 + 4 * t + t.pow(2), 1, 2));
  CHECK_FALSE(product_palindromic_unimodal(1 + t, 1 + 2 * t, 1, 1));
}

TEST_CASE("text rendering") {
  CHECK(to_text(MultiPoly()) == "0");
  CHECK(to_text(MultiPoly(1)) == "1");
  CHECK(to_text(1 + 7 * t + 15 * t.pow(2)) == "1+7t+15t²");
  CHECK(to_text(1 + (2 + q) * t + t.pow(2)) == "1+(2+q)t+t²");
  CHECK(to_text(1 - t) == "1-t");
  CHECK(to_text(1 + t.pow(2), TextStyle::Latex) == "1+t^{2}");
  CHECK(to_text(1 + t.pow(12), TextStyle::Plain) == "1+t^12");
  CHECK(to_text(t.pow(11)) == "t¹¹");
}

TEST_CASE("JSON wire format") {
  const MultiPoly f = 1 + (2 + q) * t - 3 * t.pow(2) * y;
  const std::string json = to_json(f);
  CHECK(json.find("\"vars\":[\"t\",\"q\",\"y\"]") != std::string::npos);
  CHECK(from_json(json) == f);
  CHECK(to_json(from_json(json)) == json);
  CHECK(from_json(to_json(MultiPoly())).is_zero());
  const MultiPoly big = (1 + t).pow(90);
  CHECK(from_json(to_json(big)) == big);
  CHECK_THROWS_AS(from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(from_json(R"({"vars":["z"],"terms":[]})"), std::invalid_argument);
  CHECK_THROWS_AS(from_json(R"({"vars":["t"],"terms":[{"exp":[1,2],"coef":"1"}]})"),
                  std::invalid_argument);
  for (char c : to_json(big)) CHECK(static_cast<unsigned char>(c) < 128);
}
