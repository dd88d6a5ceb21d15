#include <stdexcept>

#include <doctest.h>

#include "eulerian/cfrac.hpp"
#include "eulerian/families.hpp"
#include "eulerian/polycore.hpp"
#include "oracle.hpp"

using namespace eulerian;

namespace {

const MultiPoly t = MultiPoly::var(Var::t);
const MultiPoly q = MultiPoly::var(Var::q);
const MultiPoly y = MultiPoly::var(Var::y);

cfrac::JSpec generic() {
  return {"generic", [](unsigned h) { return MultiPoly::var(Var::b) + MultiPoly(h); },
          [](unsigned h) { return MultiPoly::var(Var::a) * MultiPoly(h); }};
}

cfrac::JSpec constant(long b, long lam) {
  return {"const", [b](unsigned) { return MultiPoly(b); }, [lam](unsigned) { return MultiPoly(lam); }};
}

}  // namespace

TEST_CASE("classical moment sequences") {
  const auto motzkin = cfrac::moments(constant(1, 1), 7);
  const std::vector<long> m = {1, 1, 2, 4, 9, 21, 51, 127};
  for (unsigned k = 0; k <= 7; ++k) CHECK(motzkin[k] == m[k]);
  const auto catalan = cfrac::moments(constant(0, 1), 8);
  CHECK(catalan[8] == 14);
  CHECK(catalan[7].is_zero());
  const cfrac::JSpec bell = {"bell", [](unsigned h) { return MultiPoly(h + 1); },
                             [](unsigned h) { return MultiPoly(h); }};
  const auto bells = cfrac::moments(bell, 6);
  CHECK(bells[6] == 203);
  CHECK(cfrac::moments(constant(1, 1), 0).size() == 1);
}

TEST_CASE("moments agree with explicit Motzkin path enumeration") {
  for (const auto& name : cfrac::preset_names()) {
    const auto spec = cfrac::preset(name);
    const auto mu = cfrac::moments(spec, 7);
    for (unsigned n = 0; n <= 7; ++n) CHECK(mu[n] == oracle::motzkin_sum(n, spec.b, spec.lam));
  }
}

TEST_CASE("Jacobi-Rogers terms for n = 3") {
  const auto terms = cfrac::jr_terms(generic(), 3);
  CHECK(terms.size() == 3);
  Coeff rho_total = 0;
  for (const auto& term : terms) rho_total += term.rho;
  CHECK(rho_total == 4);
  CHECK(terms.front().n_vec.empty());
  CHECK(terms.front().m_vec == std::vector<unsigned>{3});
  CHECK(terms.front().weight == generic().b(0).pow(3));
  CHECK_THROWS_AS(cfrac::jr_terms(generic(), 0), std::invalid_argument);
}

TEST_CASE("Jacobi-Rogers multiplicities count Motzkin paths") {
  const std::vector<long> m = {1, 1, 2, 4, 9, 21, 51, 127, 323};
  for (unsigned n = 1; n <= 8; ++n) {
    Coeff total = 0;
    for (const auto& term : cfrac::jr_terms(generic(), n)) total += term.rho;
    CHECK(total == m[n]);
  }
}

TEST_CASE("Jacobi-Rogers sum equals moments for every preset") {
  for (const auto& name : cfrac::preset_names()) {
    const auto spec = cfrac::preset(name);
    const auto mu = cfrac::moments(spec, 8);
    for (unsigned n = 1; n <= 8; ++n) CHECK(cfrac::jacobi_rogers(spec, n) == mu[n]);
  }
  CHECK(cfrac::jacobi_rogers(generic(), 5) == cfrac::moments(generic(), 5)[5]);
}

TEST_CASE("preset moments") {
  const auto tilde = cfrac::moments(cfrac::preset("CF_tildeA"), 2);
  CHECK(tilde[2] == 1 + 3 * t + t.pow(2));
  const auto p = cfrac::moments(cfrac::preset("CF_P"), 2);
  CHECK(p[1] == 1);
  CHECK(p[2] == 1 + q * y);
  for (unsigned n = 0; n <= 12; ++n) {
    CHECK(cfrac::moments(cfrac::preset("CF_tildeA"), 12)[n] == eval_at(fam::tilde_a(n), Var::q, 1));
    CHECK(cfrac::moments(cfrac::preset("CF_Astar"), 12)[n] == fam::a_star(n, fam::Route::Transform));
  }
  CHECK_THROWS_AS(cfrac::preset("CF_nope"), std::invalid_argument);
  CHECK(cfrac::preset_names().size() == 6);
}

TEST_CASE("specializing CF_Q recovers the Eulerian polynomials") {
  const auto spec = cfrac::specialize(cfrac::preset("CF_Q"),
                                      {{Var::a, t}, {Var::b, 1}, {Var::c, 1}, {Var::d, t}, {Var::e, 1}},
                                      "CF_Q_eulerian");
  CHECK(spec.name == "CF_Q_eulerian");
  const auto mu = cfrac::moments(spec, 8);
  for (unsigned n = 0; n <= 8; ++n) CHECK(mu[n] == fam::eulerian(n));
}

TEST_CASE("CF_Astar Jacobi-Rogers terms are palindromic and unimodal") {
  const auto spec = cfrac::preset("CF_Astar");
  for (unsigned n = 1; n <= 6; ++n)
    cfrac::for_each_jr_term(spec, n, [n](const cfrac::JRTerm& term) {
      CHECK(is_palindromic(term.weight, Var::t, 2 * n));
      CHECK(is_unimodal(term.weight));
    });
}
