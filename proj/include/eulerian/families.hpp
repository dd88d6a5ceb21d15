/**
 * @file families.hpp
 * @brief The Eulerian-type polynomial families, each constructible by
 *        several independent routes so that the routes can be compared.
 *
 * Variable support per family:
 *   A               t        Eulerian polynomials
 *   A_majexc        t,q      t^exc q^(maj-exc), equivalently t^des q^ai
 *   A_desinv        t,q      t^des q^inv
 *   TildeA          t,q      q-binomial-Eulerian polynomials
 *   TildeA_signed   t        TildeA at q = -1
 *   AStar           t        binomial-Eulerian polynomials of type B
 *   HatA            t,p,q    (p,q)-binomial-Eulerian polynomials
 *   Q5              a,b,c,d,e  cycle valley/peak/double fall/double rise/fixed point
 *   B7              p,q,t,u,v,w,y
 *   P3              p,q,y
 *   GammaPoly       y,q      gamma-polynomial of A_n(t,q)
 *   TildeGammaPoly  y,q      gamma-polynomial of TildeA_n(t,q)
 *
 * All values are pure functions of their arguments; results are memoized
 * behind a mutex, so concurrent callers observe identical polynomials.
 */
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eulerian/polycore.hpp"

namespace eulerian::fam {

enum class FamilyId {
  A,
  A_majexc,
  A_desinv,
  TildeA,
  TildeA_signed,
  AStar,
  HatA,
  Q5,
  B7,
  P3,
  GammaPoly,
  TildeGammaPoly
};

enum class Route { Enumerate, Recursion, Transform, CFrac, Interpretation };

std::string_view family_name(FamilyId f);
std::string_view route_name(Route r);
/// Throw std::invalid_argument for unknown names.
FamilyId parse_family(std::string_view name);
Route parse_route(std::string_view name);
const std::vector<FamilyId>& all_families();

struct RegistryEntry {
  FamilyId family;
  Route route;
  unsigned max_n;  // default cap, before any EULERIAN_MAX_N override
  std::string vars;
  std::string description;
};

const std::vector<RegistryEntry>& registry();
bool has_route(FamilyId f, Route r);
Route default_route(FamilyId f);
/// Effective cap: the registry value unless EULERIAN_MAX_N is set to a
/// non-negative integer.  Throws std::invalid_argument for unregistered pairs.
unsigned cap(FamilyId f, Route r);
/// Registry as a JSON array of {family, route, max_n, vars, description}.
std::string registry_json();

/// Checked entry point: throws std::invalid_argument for an unregistered
/// route and std::out_of_range when n exceeds the cap.
MultiPoly compute(FamilyId f, unsigned n, std::optional<Route> route = std::nullopt);
/// Values for n = 0..N, with the same checks.
std::vector<MultiPoly> sequence(FamilyId f, unsigned N, std::optional<Route> route = std::nullopt);

// ---------------------------------------------------------------------------
// Named constructors (no cap checks)

MultiPoly eulerian(unsigned n, Route route = Route::Recursion);
MultiPoly a_majexc(unsigned n, Route route = Route::Recursion);
MultiPoly a_desinv(unsigned n, Route route = Route::Recursion);
MultiPoly tilde_a(unsigned n, Route route = Route::Recursion);
MultiPoly tilde_a_signed(unsigned n, Route route = Route::Recursion);
MultiPoly a_star(unsigned n, Route route = Route::Transform);
MultiPoly hat_a(unsigned n, Route route = Route::CFrac);
MultiPoly q5(unsigned n, Route route = Route::Enumerate);

enum class BInterpretation { Cycle, Linear };
MultiPoly b7(unsigned n, BInterpretation interpretation);
MultiPoly p3(unsigned n, Route route = Route::CFrac);

MultiPoly gamma_poly(unsigned n, Route route = Route::Transform);
MultiPoly tilde_gamma_poly(unsigned n, Route route = Route::Recursion);

struct GammaLists {
  std::vector<MultiPoly> a_side;      // gamma_expand(A_n(t,q), n-1)
  std::vector<MultiPoly> tilde_side;  // gamma_expand(TildeA_n(t,q), n)
};
/// Requires n >= 1 (std::invalid_argument).
GammaLists gamma_family(unsigned n);

/// Center of symmetry of the t-polynomial: n-1 for A and A_majexc (0 at
/// n = 0), n for TildeA, TildeA_signed and HatA, 2n for AStar.
unsigned gamma_center(FamilyId f, unsigned n);

// ---------------------------------------------------------------------------
// Recursions.  With q_value set, the recursion runs in the ring where q has
// been replaced by that integer, so q-binomials and q-powers are evaluated
// first; the returned polynomials then no longer involve q.

/// A^{des,inv}_0..N.
std::vector<MultiPoly> chow_recursion(unsigned N, std::optional<long> q_value = std::nullopt);
/// A_0(t)..A_N(t).
std::vector<MultiPoly> eulerian_recursion(unsigned N);
/// A_0(t,q)..A_N(t,q).
std::vector<MultiPoly> lin_recursion(unsigned N, std::optional<long> q_value = std::nullopt);
/// TildeA_0..N from TildeA_0 = 1.
std::vector<MultiPoly> tilde_recursion(unsigned N, std::optional<long> q_value = std::nullopt);
/// TildeGamma_0..N from TildeGamma_0 = 1, with Gamma_k taken from the gamma
/// expansion of A_k(t,q).
std::vector<MultiPoly> tilde_gamma_recursion(unsigned N);
/// TildeA_0(t,-1)..TildeA_N(t,-1) via the separate odd/even recursions that
/// use binomial coefficients and A_j(t,-1).
std::vector<MultiPoly> signed_tilde_recursion(unsigned N);

// ---------------------------------------------------------------------------
// Signed closed forms

/// (1-t)^m A_m(t) for n = 2m, (1-t)^m A_{m+1}(t) for n = 2m+1.  n >= 1.
MultiPoly desinv_sign_closed(unsigned n);
/// (1+t)^m A_m(t) for n = 2m, (1+t)^m A_{m+1}(t) for n = 2m+1.  n >= 1.
MultiPoly majexc_sign_closed(unsigned n);
/// Closed binomial sums for TildeA_n(t,-1), evaluated with A_0(t) = 0.  n >= 1.
MultiPoly tilde_sign_closed(unsigned n);

/// q -> -1 specialization of A_desinv, A_majexc or TildeA.  The Recursion
/// route works in the specialized ring; other routes evaluate the full
/// polynomial.  Throws std::invalid_argument for other families.
MultiPoly sign_balance(FamilyId f, unsigned n, Route route = Route::Recursion);

// ---------------------------------------------------------------------------
// Generating-function identities, compared coefficient-wise

struct Sides {
  MultiPoly lhs;
  MultiPoly rhs;
  bool holds() const { return lhs == rhs; }
};

/// sum_k [n k]_q A_k(t,q) (t^{n-k} - t)  versus  1 - t.
Sides qexp_sides_a(unsigned n);
/// sum_k [n k]_q TildeA_k(t,q) (t^{n-k} - t)  versus  (1-t) sum_k [n k]_q t^k.
Sides qexp_sides_tilde(unsigned n);
bool qexp_identity_check(unsigned n);

/// t A_n - sum_k C(n,k) (t-1)^{n-k} A_k  versus  t-1 at n = 0 and 0 otherwise.
Sides egf_sides_a(unsigned n);
/// t A*_n - sum_k C(n,k) (t^2-1)^{n-k} A*_k  versus  (t-1) t^{2n}.
Sides egf_sides_astar(unsigned n);
bool egf_cross_check_A(unsigned n);
bool egf_cross_check_Astar(unsigned n);

/// Drops every memoized value (used by tests that time routes).
void clear_caches();

}  // namespace eulerian::fam
