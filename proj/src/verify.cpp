#include "eulerian/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "eulerian/cfrac.hpp"
#include "eulerian/families.hpp"
#include "eulerian/permstats.hpp"

namespace eulerian::verify {

namespace {

using fam::FamilyId;
using fam::Route;

MultiPoly var(Var v, unsigned e = 1) { return MultiPoly::var(v, e); }

MultiPoly one_plus_t() { return MultiPoly(1) + var(Var::t); }

struct Mismatch {
  MultiPoly lhs;
  MultiPoly rhs;
  std::string note;
};

struct CheckFailure {
  Witness witness;
};

// Per-run state: fault injection and comparison bookkeeping.
class Context {
 public:
  Context(std::string id, const RunOptions& options) : id_(std::move(id)), options_(options) {}

  MultiPoly perturb(unsigned n, const MultiPoly& lhs) const {
    if (options_.fault && options_.fault->id == id_ && options_.fault->n == n) {
      return lhs + options_.fault->delta;
    }
    return lhs;
  }

  void expect_eq(unsigned n, const MultiPoly& lhs, const MultiPoly& rhs, std::string note) {
    ++comparisons_;
    MultiPoly left = perturb(n, lhs);
    if (left != rhs) throw CheckFailure{{n, std::move(left), rhs, std::move(note)}};
  }

  /// Runs a property test on the (possibly perturbed) subject.
  void expect_property(unsigned n, const MultiPoly& subject,
                       const std::function<std::optional<Mismatch>(const MultiPoly&)>& check) {
    ++comparisons_;
    const MultiPoly s = perturb(n, subject);
    if (auto bad = check(s)) {
      throw CheckFailure{{n, std::move(bad->lhs), std::move(bad->rhs), std::move(bad->note)}};
    }
  }

  std::size_t comparisons() const { return comparisons_; }

 private:
  std::string id_;
  const RunOptions& options_;
  std::size_t comparisons_ = 0;
};

// t^m P(1/t)
MultiPoly mirror(const MultiPoly& poly, unsigned m) {
  MultiPoly out;
  for (const auto& [mono, c] : poly.terms()) {
    const unsigned e = mono[Var::t];
    if (e > m) return MultiPoly();
    Monomial flipped = mono;
    flipped.set(Var::t, m - e);
    out.add_term(flipped, c);
  }
  return out;
}

std::function<std::optional<Mismatch>(const MultiPoly&)> palindromic_unimodal(unsigned m) {
  return [m](const MultiPoly& p) -> std::optional<Mismatch> {
    if (!is_palindromic(p, Var::t, m)) {
      return Mismatch{p, mirror(p, m), "not palindromic with degree sum " + std::to_string(m)};
    }
    if (!is_unimodal(p)) return Mismatch{p, p, "not unimodal"};
    return std::nullopt;
  };
}

std::optional<Mismatch> log_concavity_failure(const MultiPoly& p) {
  const auto view = univariate_view(p, Var::t);
  for (std::size_t k = 1; k + 1 < view.coeffs.size(); ++k) {
    const MultiPoly gap =
        view.coeffs[k] * view.coeffs[k] - view.coeffs[k - 1] * view.coeffs[k + 1];
    if (!gap.is_nonnegative()) {
      return Mismatch{view.coeffs[k] * view.coeffs[k], view.coeffs[k - 1] * view.coeffs[k + 1],
                      "a_k^2 versus a_{k-1} a_{k+1} at k=" + std::to_string(k)};
    }
  }
  return std::nullopt;
}

MultiPoly y_poly(const std::vector<MultiPoly>& coeffs) {
  MultiPoly out;
  for (unsigned k = 0; k < coeffs.size(); ++k) out += coeffs[k] * var(Var::y, k);
  return out;
}

MultiPoly from_tally(const perm::Tally& tally, std::initializer_list<Var> vars) {
  MultiPoly out;
  for (const auto& [key, count] : tally) {
    Monomial m;
    std::size_t i = 0;
    for (Var v : vars) m = m * Monomial::of(v, static_cast<unsigned>(key[i++]));
    out.add_term(m, Coeff(static_cast<unsigned long>(count)));
  }
  return out;
}

MultiPoly tilde_at_one(unsigned n) { return eval_at(fam::tilde_a(n), Var::q, Coeff(1)); }

MultiPoly factorial(unsigned n) {
  Coeff out(1);
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return MultiPoly(out);
}

MultiPoly total_at_one(const MultiPoly& p) {
  MultiPoly out = p;
  for (Var v : p.variables()) out = eval_at(out, v, Coeff(1));
  return out;
}

using CheckFn = std::function<void(Context&, unsigned n)>;

// ---------------------------------------------------------------------------
// Individual checks, one call per n

void check_eq_1_1(Context& ctx, unsigned n) {
  const auto sides = fam::qexp_sides_a(n);
  ctx.expect_eq(n, sides.lhs, sides.rhs, "sum_k [n k]_q A_k(t,q)(t^{n-k}-t) versus 1-t");
}

void check_eq_1_2(Context& ctx, unsigned n) {
  const MultiPoly majexc = fam::a_majexc(n, Route::Enumerate);
  ctx.expect_eq(n, fam::a_majexc(n, Route::Interpretation), majexc,
                "t^des q^ai versus t^exc q^(maj-exc)");
  ctx.expect_eq(n, eval_at(majexc, Var::q, Coeff(1)), fam::eulerian(n, Route::Enumerate),
                "A_n(t,1) versus A_n(t)");
}

void check_thm_1_1(Context& ctx, unsigned n) {
  ctx.expect_eq(n, fam::tilde_a(n, Route::Interpretation), fam::tilde_a(n, Route::Transform),
                "PRW_{n+1} t^des q^ai versus q-binomial transform");
}

void check_thm_1_2(Context& ctx, unsigned n) {
  ctx.expect_eq(n, y_poly(gamma_expand(fam::tilde_a(n, Route::Transform), n)),
                fam::tilde_gamma_poly(n, Route::Enumerate),
                "gamma expansion of TildeA_n versus q^inv over dd-free permutations");
  if (n >= 1) {
    ctx.expect_eq(n, y_poly(gamma_expand(fam::a_majexc(n), n - 1)),
                  fam::gamma_poly(n, Route::Enumerate),
                  "gamma expansion of A_n(t,q) versus q^inv over Gamma_{n,k}");
  }
}

void check_thm_1_3(Context& ctx, unsigned n) {
  ctx.expect_property(n, fam::tilde_a_signed(n), palindromic_unimodal(n));
  ctx.expect_property(n, fam::a_star(n), palindromic_unimodal(2 * n));
  if (n >= 1 && n <= 8) {
    const auto spec = cfrac::preset("CF_Astar");
    cfrac::for_each_jr_term(spec, n, [&](const cfrac::JRTerm& term) {
      ctx.expect_property(n, term.weight, palindromic_unimodal(2 * n));
    });
  }
}

void check_thm_1_4(Context& ctx, unsigned n) {
  const MultiPoly rec = fam::tilde_a(n, Route::Recursion);
  ctx.expect_eq(n, rec, fam::tilde_a(n, Route::Transform), "recursion versus transform");
  if (n <= 7) {
    ctx.expect_eq(n, rec, fam::tilde_a(n, Route::Interpretation),
                  "recursion versus PRW enumeration");
  }
}

void check_eq_1_7(Context& ctx, unsigned n) {
  const MultiPoly closed = fam::desinv_sign_closed(n);
  ctx.expect_eq(n, fam::sign_balance(FamilyId::A_desinv, n, Route::Recursion), closed,
                "A^{des,inv}_n(t,-1) by recursion versus closed form");
  if (n <= 8) {
    ctx.expect_eq(n, fam::sign_balance(FamilyId::A_desinv, n, Route::Enumerate), closed,
                  "sum t^des (-1)^inv versus closed form");
  }
}

void check_lem_2_1(Context& ctx, unsigned m) {
  auto at_minus_one = [](unsigned a, unsigned b) {
    return eval_at(q_binomial(a, b), Var::q, Coeff(-1));
  };
  for (unsigned i = 0; i <= m; ++i) {
    const MultiPoly c(binomial(m, i));
    const std::string tag = " at i=" + std::to_string(i);
    ctx.expect_eq(m, at_minus_one(2 * m, 2 * i), c, "[2m 2i]_{-1}" + tag);
    ctx.expect_eq(m, at_minus_one(2 * m + 1, 2 * i), c, "[2m+1 2i]_{-1}" + tag);
    ctx.expect_eq(m, at_minus_one(2 * m + 1, 2 * i + 1), c, "[2m+1 2i+1]_{-1}" + tag);
    ctx.expect_eq(m, at_minus_one(2 * m, 2 * i + 1), MultiPoly(), "[2m 2i+1]_{-1}" + tag);
  }
}

void check_eq_2_1(Context& ctx, unsigned n) {
  const MultiPoly rec = fam::a_desinv(n, Route::Recursion);
  if (n <= 7) {
    ctx.expect_eq(n, rec, fam::a_desinv(n, Route::Enumerate), "recursion versus t^des q^inv");
  }
  ctx.expect_eq(n, eval_at(rec, Var::q, Coeff(1)), fam::eulerian(n, Route::Recursion),
                "q=1 versus the binomial Eulerian recursion");
  ctx.expect_eq(n, eval_at(rec, Var::q, Coeff(-1)),
                fam::sign_balance(FamilyId::A_desinv, n, Route::Recursion),
                "q=-1 evaluation versus recursion in the specialized ring");
  ctx.expect_eq(n, total_at_one(rec), factorial(n), "coefficient sum versus n!");
}

void check_eq_2_3(Context& ctx, unsigned n) {
  const MultiPoly rec = fam::a_majexc(n, Route::Recursion);
  if (n <= 7) {
    ctx.expect_eq(n, rec, fam::a_majexc(n, Route::Enumerate),
                  "recursion versus t^exc q^(maj-exc)");
    ctx.expect_eq(n, rec, fam::a_majexc(n, Route::Interpretation), "recursion versus t^des q^ai");
  }
  ctx.expect_eq(n, eval_at(rec, Var::q, Coeff(1)), fam::eulerian(n, Route::Recursion),
                "q=1 versus A_n(t)");
  ctx.expect_eq(n, eval_at(rec, Var::q, Coeff(-1)),
                fam::sign_balance(FamilyId::A_majexc, n, Route::Recursion),
                "q=-1 evaluation versus recursion in the specialized ring");
  ctx.expect_eq(n, total_at_one(rec), factorial(n), "coefficient sum versus n!");
  if (n >= 1) {
    ctx.expect_eq(n, mirror(rec, n - 1), rec, "t-palindromicity with degree sum n-1");
  }
}

void check_thm_2_2(Context& ctx, unsigned n) {
  const MultiPoly closed = fam::majexc_sign_closed(n);
  ctx.expect_eq(n, fam::sign_balance(FamilyId::A_majexc, n, Route::Recursion), closed,
                "A_n(t,-1) by recursion versus closed form");
  if (n <= 8) {
    ctx.expect_eq(n, fam::sign_balance(FamilyId::A_majexc, n, Route::Enumerate), closed,
                  "sum t^exc (-1)^(maj-exc) versus closed form");
  }
}

void check_cor_2_3(Context& ctx, unsigned n) {
  const MultiPoly closed = fam::tilde_sign_closed(n);
  ctx.expect_eq(n, fam::tilde_a_signed(n, Route::Transform), closed,
                "transform at q=-1 versus closed binomial sum (A_0=0)");
  ctx.expect_eq(n, fam::sign_balance(FamilyId::TildeA, n, Route::Recursion), closed,
                "recursion at q=-1 versus closed binomial sum");
  if (n <= 7) {
    ctx.expect_eq(n, fam::tilde_a_signed(n, Route::Interpretation), closed,
                  "PRW signed enumeration versus closed binomial sum");
  }
}

void check_cor_2_4(Context& ctx, unsigned n) {
  ctx.expect_eq(n, fam::tilde_a_signed(n, Route::Recursion),
                fam::tilde_a_signed(n, Route::Transform),
                "odd/even recursions versus transform at q=-1");
}

void check_eq_2_5(Context& ctx, unsigned n) {
  const auto sides = fam::qexp_sides_tilde(n);
  ctx.expect_eq(n, sides.lhs, sides.rhs,
                "sum_k [n k]_q TildeA_k (t^{n-k}-t) versus (1-t) sum_k [n k]_q t^k");
}

void check_eq_3_1(Context& ctx, unsigned n) {
  std::vector<MultiPoly> by_size(n + 1);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    unsigned inv = 0;
    for (unsigned i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      for (unsigned j = 0; j < i; ++j) {
        if (!(mask >> j & 1u)) ++inv;  // i in A, j in B, i > j
      }
    }
    by_size[static_cast<unsigned>(__builtin_popcount(mask))] += var(Var::q, inv);
  }
  for (unsigned k = 0; k <= n; ++k) {
    ctx.expect_eq(n, by_size[k], q_binomial(n, k),
                  "ordered set partitions versus [n k]_q at k=" + std::to_string(k));
  }
}

void check_claim_3_2(Context& ctx, unsigned n) {
  const int size = static_cast<int>(n) + 1;
  const auto tally = perm::tally(size, [size](std::span<const int> w, perm::StatKey& key) {
    if (!perm::is_prw(w)) return false;
    const auto pos = std::find(w.begin(), w.end(), size) - w.begin() + 1;
    const auto s = perm::linear_stats(w);
    key = {size - static_cast<int>(pos), s.des, s.ai};
    return true;
  });
  std::vector<MultiPoly> parts(n + 1);
  for (const auto& [key, count] : tally) {
    Monomial m = Monomial::of(Var::t, static_cast<unsigned>(key[1])) *
                 Monomial::of(Var::q, static_cast<unsigned>(key[2]));
    parts[static_cast<std::size_t>(key[0])].add_term(m, Coeff(static_cast<unsigned long>(count)));
  }
  const MultiPoly t = var(Var::t);
  auto prw = [](unsigned m) { return fam::tilde_a(m, Route::Interpretation); };
  MultiPoly total;
  for (const auto& part : parts) total += part;
  ctx.expect_eq(n, total, prw(n), "sum of the refinement versus the PRW total");
  ctx.expect_eq(n, parts[0], prw(n - 1), "k=0 part versus the PRW_n total");
  ctx.expect_eq(n, parts[n], t * prw(n - 1), "k=n part versus t times the PRW_n total");
  for (unsigned k = 1; k + 1 <= n; ++k) {
    const MultiPoly rhs = t * q_binomial(n - 1, k) * var(Var::q, k) *
                          fam::a_majexc(k, Route::Interpretation) * prw(n - 1 - k);
    ctx.expect_eq(n, parts[k], rhs, "decomposition at k=" + std::to_string(k));
  }
}

void check_mfs_orbit_props(Context& ctx, unsigned n) {
  const int size = static_cast<int>(n) + 1;
  std::vector<perm::Orbit> orbits;
  try {
    orbits = perm::prw_orbits(size);
  } catch (const std::logic_error& err) {
    throw CheckFailure{{n, MultiPoly(), MultiPoly(1), err.what()}};
  }
  std::size_t prw_count = 0;
  for (const auto& p : perm::gen_prw(size)) {
    (void)p;
    ++prw_count;
  }
  std::size_t covered = 0;
  MultiPoly sum;
  for (const auto& orbit : orbits) {
    covered += orbit.members.size();
    const std::string rep = orbit.representative.to_string();
    ctx.expect_eq(n, MultiPoly(static_cast<long>(orbit.members.size())),
                  MultiPoly(1L << orbit.movable_letters), "orbit size of " + rep);
    MultiPoly orbit_sum;
    for (const auto& member : orbit.members) {
      const auto s = perm::linear_stats(member);
      orbit_sum += var(Var::t, static_cast<unsigned>(s.des)) * var(Var::q, static_cast<unsigned>(s.ai));
      ctx.expect_eq(n, MultiPoly(perm::is_prw(member) ? 1 : 0), MultiPoly(1),
                    "PRW invariance at " + member.to_string());
      for (int x = 1; x <= size; ++x) {
        const auto hopped = perm::mfs_hop_prime(member, x);
        const bool inside = std::binary_search(orbit.members.begin(), orbit.members.end(), hopped);
        const bool involution = perm::mfs_hop_prime(hopped, x) == member;
        ctx.expect_eq(n, MultiPoly(inside && involution ? 1 : 0), MultiPoly(1),
                      "hop " + std::to_string(x) + " closure/involution at " + member.to_string());
      }
    }
    const auto rs = perm::linear_stats(orbit.representative);
    const unsigned k = static_cast<unsigned>(rs.des);
    if (2 * k > n) {
      throw CheckFailure{{n, MultiPoly(static_cast<long>(k)), MultiPoly(static_cast<long>(n / 2)),
                          "representative " + rep + " has too many descents"}};
    }
    const MultiPoly expected = var(Var::q, static_cast<unsigned>(rs.ai)) * var(Var::t, k) *
                               one_plus_t().pow(n - 2 * k);
    ctx.expect_eq(n, orbit_sum, expected,
                  "orbit generating function (constant ai, gamma shape) of " + rep);
    sum += orbit_sum;
  }
  ctx.expect_eq(n, MultiPoly(static_cast<long>(covered)), MultiPoly(static_cast<long>(prw_count)),
                "orbits partition PRW_{n+1}");
  ctx.expect_eq(n, sum, fam::tilde_a(n, Route::Transform), "orbit sums versus TildeA_n(t,q)");
}

void check_rem_3_1(Context& ctx, unsigned n) {
  const auto tally = perm::tally(static_cast<int>(n) + 1, [](std::span<const int> w,
                                                             perm::StatKey& key) {
    if (!perm::is_prw(w)) return false;
    const auto s = perm::linear_stats(w);
    if (s.da != 0) return false;
    key = {s.asc};
    return true;
  });
  ctx.expect_eq(n, from_tally(tally, {Var::y}), y_poly(gamma_expand(tilde_at_one(n), n)),
                "PRW_{n+1} without double ascents by asc versus gamma coefficients of TildeA_n(t)");
}

void check_cor_3_2(Context& ctx, unsigned n) {
  const MultiPoly rec = fam::tilde_gamma_poly(n, Route::Recursion);
  ctx.expect_eq(n, rec, fam::tilde_gamma_poly(n, Route::Transform),
                "gamma recursion versus gamma expansion of TildeA_n(t,q)");
  if (n <= 7) {
    ctx.expect_eq(n, rec, fam::tilde_gamma_poly(n, Route::Enumerate),
                  "gamma recursion versus q^inv enumeration");
  }
}

void check_eq_4_3(Context& ctx, unsigned n) {
  const MultiPoly enumerated = fam::q5(n, Route::Enumerate);
  ctx.expect_eq(n, fam::q5(n, Route::CFrac), enumerated, "CF_Q moment versus cycle enumeration");
  const MultiPoly t = var(Var::t);
  ctx.expect_eq(n,
                substitute(enumerated, {{Var::a, t},
                                        {Var::b, MultiPoly(1)},
                                        {Var::c, MultiPoly(1)},
                                        {Var::d, t},
                                        {Var::e, MultiPoly(1)}}),
                fam::eulerian(n), "Q_n(t,1,1,t,1) versus A_n(t)");
  ctx.expect_eq(n,
                substitute(enumerated, {{Var::a, t},
                                        {Var::b, MultiPoly(1)},
                                        {Var::c, MultiPoly(1)},
                                        {Var::d, t},
                                        {Var::e, one_plus_t()}}),
                tilde_at_one(n), "Q_n(t,1,1,t,1+t) versus TildeA_n(t)");
}

void check_eq_4_6(Context& ctx, unsigned n) {
  ctx.expect_eq(n, fam::a_star(n, Route::CFrac), fam::a_star(n, Route::Transform),
                "CF_Astar moment versus binomial transform");
}

void check_frac_bino(Context& ctx, unsigned n) {
  const auto mu = cfrac::moments(cfrac::preset("CF_tildeA"), n);
  ctx.expect_eq(n, mu[n], tilde_at_one(n), "CF_tildeA moment versus TildeA_n(t)");
  const MultiPoly hat = fam::hat_a(n, Route::CFrac);
  ctx.expect_eq(n, eval_at(eval_at(hat, Var::p, Coeff(1)), Var::q, Coeff(1)), tilde_at_one(n),
                "HatA_n(t,1,1) versus TildeA_n(t)");
}

void check_lem_4_3(Context& ctx, unsigned n) {
  for (const auto& name : cfrac::preset_names()) {
    const auto spec = cfrac::preset(name);
    const auto mu = cfrac::moments(spec, n);
    MultiPoly sum;
    cfrac::for_each_jr_term(spec, n, [&](const cfrac::JRTerm& term) {
      unsigned weight = 0;
      for (unsigned x : term.n_vec) weight += 2 * x;
      for (unsigned x : term.m_vec) weight += x;
      ctx.expect_eq(n, MultiPoly(static_cast<long>(weight)), MultiPoly(static_cast<long>(n)),
                    name + ": 2 sum n_j + sum m_j");
      sum += term.weight;
    });
    ctx.expect_eq(n, sum, mu[n], name + ": Jacobi-Rogers sum versus Motzkin moment");
  }
}

// The sequence check is indexed by its length N; each step adds f_N.
void check_thm_4_2(Context& ctx, unsigned N) {
  auto scan = [&](const std::function<MultiPoly(unsigned)>& f, const std::string& label) {
    std::vector<MultiPoly> seq;
    for (unsigned i = 1; i <= N; ++i) {
      MultiPoly fi = rename(f(i), Var::t, Var::q);
      seq.push_back(std::move(fi));
    }
    std::vector<MultiPoly> cur = seq;
    for (int round = 0; round < 3; ++round) cur = log_convexity_operator(cur);
    for (std::size_t j = 0; j < cur.size(); ++j) {
      ctx.expect_property(N, cur[j], [&](const MultiPoly& g) -> std::optional<Mismatch> {
        if (g.is_nonnegative()) return std::nullopt;
        return Mismatch{g, MultiPoly(),
                        label + ": L^3 entry " + std::to_string(j + 4) +
                            " has a negative coefficient"};
      });
    }
  };
  scan(tilde_at_one, "TildeA");
  scan([](unsigned i) { return fam::a_star(i); }, "AStar");
}

void check_eq_4_8(Context& ctx, unsigned n) {
  const MultiPoly cf = fam::hat_a(n, Route::CFrac);
  ctx.expect_eq(n, fam::hat_a(n, Route::Enumerate), cf, "nest/cros/drop/fix/exc versus CF_hatA");
  ctx.expect_eq(n, fam::hat_a(n, Route::Interpretation), cf,
                "2-31/31-2/des/fmax versus CF_hatA");
  const MultiPoly q = var(Var::q);
  const MultiPoly t = var(Var::t);
  const MultiPoly b = fam::b7(n, fam::BInterpretation::Cycle);
  ctx.expect_eq(n,
                substitute(b, {{Var::t, q},
                               {Var::u, t},
                               {Var::v, MultiPoly(1)},
                               {Var::w, t},
                               {Var::y, one_plus_t()}}),
                cf, "B_n(p,q,q,t,1,t,1+t) versus HatA_n");
  ctx.expect_eq(n, mirror(cf, n), cf, "t-palindromicity of HatA_n");
}

void check_eq_4_9(Context& ctx, unsigned n) {
  const MultiPoly cf = cfrac::moments(cfrac::preset("CF_B"), n)[n];
  ctx.expect_eq(n, fam::b7(n, fam::BInterpretation::Cycle), cf, "cycle statistics versus CF_B");
  ctx.expect_eq(n, fam::b7(n, fam::BInterpretation::Linear), cf, "linear statistics versus CF_B");
}

void check_thm_4_6(Context& ctx, unsigned n) {
  const MultiPoly gamma_hat = y_poly(gamma_expand(fam::hat_a(n, Route::CFrac), n));
  const auto cyc = perm::tally(static_cast<int>(n), [](std::span<const int> w, perm::StatKey& key) {
    const auto s = perm::stats(w);
    if (s.cdfall != 0) return false;
    key = {s.nest, s.cros + s.drop, s.drop};
    return true;
  });
  ctx.expect_eq(n, from_tally(cyc, {Var::p, Var::q, Var::y}), gamma_hat,
                "p^nest q^(cros+k) over cdfall-free permutations versus gamma_hat");
  const auto lin = perm::tally(static_cast<int>(n), [](std::span<const int> w, perm::StatKey& key) {
    const auto s = perm::linear_stats(w);
    if (s.dd != 0) return false;
    key = {s.p231, s.p312 + s.des, s.des};
    return true;
  });
  ctx.expect_eq(n, from_tally(lin, {Var::p, Var::q, Var::y}), gamma_hat,
                "p^(2-31) q^(31-2+k) over dd-free permutations versus gamma_hat");
  ctx.expect_eq(n, fam::p3(n, Route::CFrac), gamma_hat, "CF_P moment versus gamma_hat");
  ctx.expect_eq(n, fam::p3(n, Route::Enumerate), gamma_hat,
                "P_n by enumeration versus gamma_hat");
}

void check_rem_4_7(Context& ctx, unsigned n) {
  MultiPoly tilde_counts;
  MultiPoly hat_counts;
  MultiPoly mapped;
  for (const auto& sigma : perm::gen_sn(static_cast<int>(n))) {
    const auto s = perm::stats(sigma);
    if (s.dd == 0) tilde_counts += var(Var::y, static_cast<unsigned>(s.des));
    if (s.cdfall == 0) {
      const MultiPoly mono = var(Var::y, static_cast<unsigned>(s.drop));
      hat_counts += mono;
      const auto image = perm::linear_stats(perm::foata_first(sigma));
      if (image.dd == 0 && image.des == s.drop) mapped += mono;
    }
  }
  ctx.expect_eq(n, hat_counts, tilde_counts, "|Gamma-hat_{n,k}| versus |Gamma-tilde_{n,k}|");
  ctx.expect_eq(n, mapped, hat_counts,
                "members of Gamma-hat_{n,k} sent into Gamma-tilde_{n,k} by Foata's map");
}

void check_conj_5_1(Context& ctx, unsigned n) {
  ctx.expect_property(n, fam::tilde_a(n), [](const MultiPoly& p) -> std::optional<Mismatch> {
    const auto view = univariate_view(p, Var::t);
    for (std::size_t k = 1; k + 1 < view.coeffs.size(); ++k) {
      const MultiPoly gap =
          view.coeffs[k] * view.coeffs[k] - view.coeffs[k - 1] * view.coeffs[k + 1];
      if (!gap.is_nonnegative()) {
        return Mismatch{view.coeffs[k] * view.coeffs[k], view.coeffs[k - 1] * view.coeffs[k + 1],
                        "a_k(q)^2 - a_{k-1}(q) a_{k+1}(q) not in N[q] at k=" + std::to_string(k)};
      }
    }
    return std::nullopt;
  });
}

void check_conj_5_2(Context& ctx, unsigned n) {
  ctx.expect_property(n, fam::tilde_a_signed(n), log_concavity_failure);
}

struct Entry {
  IdentityInfo info;
  CheckFn check;
};

const std::vector<Entry>& entries() {
  using K = Kind;
  static const std::vector<Entry> table = {
      {{"eq_1_1", K::Theorem, 0, 10, 14, "q-exponential generating function of A_n(t,q)"},
       check_eq_1_1},
      {{"eq_1_2", K::Theorem, 0, 8, 9, "(des, ai) and (exc, maj-exc) are equidistributed"},
       check_eq_1_2},
      {{"thm_1_1", K::Theorem, 1, 7, 8, "PRW interpretation of TildeA_n(t,q)"}, check_thm_1_1},
      {{"thm_1_2", K::Theorem, 0, 8, 9, "q-gamma-positivity of TildeA_n(t,q) and A_n(t,q)"},
       check_thm_1_2},
      {{"thm_1_3", K::Theorem, 1, 14, 30,
        "TildeA_n(t,-1), A*_n(t) and the Jacobi-Rogers terms are palindromic and unimodal"},
       check_thm_1_3},
      {{"thm_1_4", K::Theorem, 0, 12, 16, "quadratic recursion for TildeA_n(t,q)"},
       check_thm_1_4},
      {{"eq_1_7", K::Theorem, 1, 8, 30, "sign-balance of (des, inv)"}, check_eq_1_7},
      {{"lem_2_1", K::Theorem, 0, 6, 12, "q-binomial coefficients at q=-1"}, check_lem_2_1},
      {{"eq_2_1", K::Theorem, 0, 12, 16, "quadratic recursion for A^{des,inv}_n(t,q)"},
       check_eq_2_1},
      {{"eq_2_3", K::Theorem, 0, 12, 16, "quadratic recursion for A_n(t,q)"}, check_eq_2_3},
      {{"thm_2_2", K::Theorem, 1, 8, 30, "major-balance identity for A_n(t,-1)"}, check_thm_2_2},
      {{"cor_2_3", K::Theorem, 1, 8, 30, "closed binomial sums for TildeA_n(t,-1)"},
       check_cor_2_3},
      {{"cor_2_4", K::Theorem, 0, 12, 30, "odd/even recursions for TildeA_n(t,-1)"},
       check_cor_2_4},
      {{"eq_2_5", K::Theorem, 0, 10, 14, "q-exponential generating function of TildeA_n(t,q)"},
       check_eq_2_5},
      {{"eq_3_1", K::Theorem, 0, 8, 12, "ordered set partition model of [n k]_q"}, check_eq_3_1},
      {{"claim_3_2", K::Theorem, 1, 7, 8, "decomposition of PRW_{n+1} by the position of n+1"},
       check_claim_3_2},
      {{"mfs_orbit_props", K::Theorem, 0, 7, 8,
        "MFS orbits on PRW_{n+1}: sizes, representatives, ai-constancy, closure"},
       check_mfs_orbit_props},
      {{"rem_3_1", K::Theorem, 0, 7, 8, "gamma coefficients of TildeA_n(t) count PRW_{n+1} without double ascents"},
       check_rem_3_1},
      {{"cor_3_2", K::Theorem, 0, 12, 16, "recursion for TildeGamma_n(y,q)"}, check_cor_3_2},
      {{"eq_4_3", K::Theorem, 0, 7, 9, "J-fraction of Q_n(a,b,c,d,alpha)"}, check_eq_4_3},
      {{"eq_4_6", K::Theorem, 0, 12, 30, "J-fraction of A*_n(t)"}, check_eq_4_6},
      {{"frac_bino", K::Theorem, 0, 12, 16, "J-fraction of TildeA_n(t)"}, check_frac_bino},
      {{"lem_4_3", K::Theorem, 1, 8, 10, "Jacobi-Rogers formula for every preset"},
       check_lem_4_3},
      {{"thm_4_2", K::Theorem, 7, 9, 14, "3-q-log-convexity of TildeA_n(q) and A*_n(q)"},
       check_thm_4_2},
      {{"eq_4_8", K::Theorem, 0, 7, 9, "two interpretations of HatA_n(t,p,q)"}, check_eq_4_8},
      {{"eq_4_9", K::Theorem, 0, 7, 9, "cycle and linear interpretations of B_n"},
       check_eq_4_9},
      {{"thm_4_6", K::Theorem, 0, 7, 9, "(p,q)-gamma-positivity of HatA_n(t,p,q)"},
       check_thm_4_6},
      {{"rem_4_7_cardinality", K::Theorem, 1, 7, 9,
        "Foata's transformation matches Gamma-hat_{n,k} with Gamma-tilde_{n,k}"},
       check_rem_4_7},
      {{"conj_5_1", K::Conjecture, 1, 7, 12, "q-log-concavity of TildeA_n(t,q)"},
       check_conj_5_1},
      {{"conj_5_2", K::Conjecture, 1, 14, 30, "log-concavity of TildeA_n(t,-1)"},
       check_conj_5_2},
  };
  return table;
}

const Entry& entry(std::string_view id) {
  for (const auto& e : entries()) {
    if (e.info.id == id) return e;
  }
  throw std::invalid_argument("unknown identity id '" + std::string(id) + "'");
}

nlohmann::ordered_json poly_json(const MultiPoly& p) {
  return nlohmann::ordered_json::parse(to_json(p));
}

}  // namespace

std::string_view kind_name(Kind k) { return k == Kind::Theorem ? "theorem" : "conjecture"; }

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

const std::vector<IdentityInfo>& identities() {
  static const std::vector<IdentityInfo> list = [] {
    std::vector<IdentityInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return list;
}

const IdentityInfo& info(std::string_view id) { return entry(id).info; }

Report run(std::string_view id, std::optional<unsigned> n_max, const RunOptions& options) {
  const Entry& e = entry(id);
  Report report;
  report.id = e.info.id;
  report.kind = e.info.kind;
  report.n_lo = e.info.min_n;
  report.n_hi = n_max.value_or(e.info.default_n);

  if (report.n_hi > e.info.max_n) {
    report.status = Status::Skipped;
    report.detail = "n_max " + std::to_string(report.n_hi) + " exceeds the cap " +
                    std::to_string(e.info.max_n);
    return report;
  }
  if (report.n_hi < report.n_lo) {
    report.status = Status::Skipped;
    report.detail = "empty range (n starts at " + std::to_string(report.n_lo) + ")";
    return report;
  }

  const auto start = std::chrono::steady_clock::now();
  Context ctx(e.info.id, options);
  try {
    for (unsigned n = report.n_lo; n <= report.n_hi; ++n) e.check(ctx, n);
    report.status = Status::Pass;
    report.detail = std::to_string(ctx.comparisons()) + " exact comparisons";
  } catch (CheckFailure& failure) {
    report.status = Status::Fail;
    report.detail = "first mismatch at n=" + std::to_string(failure.witness.n);
    report.witness = std::move(failure.witness);
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<Report> run_all(const std::map<std::string, unsigned>& budget,
                            const RunOptions& options) {
  for (const auto& [id, n] : budget) (void)entry(id);  // reject unknown ids up front
  std::vector<Report> reports;
  for (const auto& e : entries()) {
    const auto it = budget.find(e.info.id);
    if (it != budget.end() && it->second == 0) {
      Report skipped;
      skipped.id = e.info.id;
      skipped.kind = e.info.kind;
      skipped.n_lo = e.info.min_n;
      skipped.n_hi = 0;
      skipped.status = Status::Skipped;
      skipped.detail = "budget 0";
      reports.push_back(std::move(skipped));
      continue;
    }
    reports.push_back(run(e.info.id, it == budget.end() ? std::nullopt
                                                        : std::optional<unsigned>(it->second),
                          options));
  }
  return reports;
}

int exit_code(const std::vector<Report>& reports, bool strict_conjectures) {
  bool theorem_failed = false;
  bool conjecture_failed = false;
  for (const auto& r : reports) {
    if (r.status != Status::Fail) continue;
    (r.kind == Kind::Theorem ? theorem_failed : conjecture_failed) = true;
  }
  if (theorem_failed || (conjecture_failed && strict_conjectures)) return 1;
  return conjecture_failed ? 2 : 0;
}

std::string format_report(const Report& report) {
  std::string label;
  switch (report.status) {
    case Status::Pass: label = "PASS"; break;
    case Status::Fail: label = "FAIL"; break;
    case Status::Skipped: label = "SKIP"; break;
  }
  if (report.kind == Kind::Conjecture) label += " CONJECTURE";
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2fs", report.elapsed_seconds);
  std::ostringstream out;
  out << label;
  for (std::size_t i = label.size(); i < 16; ++i) out << ' ';
  out << report.id;
  for (std::size_t i = report.id.size(); i < 20; ++i) out << ' ';
  const std::string range = "n=" + std::to_string(report.n_lo) + ".." + std::to_string(report.n_hi);
  out << range;
  for (std::size_t i = range.size(); i < 10; ++i) out << ' ';
  out << timing << "  " << report.detail;
  if (report.witness) {
    out << "\n    witness n=" << report.witness->n << ": " << report.witness->note
        << "\n    lhs = " << to_text(report.witness->lhs, TextStyle::Plain)
        << "\n    rhs = " << to_text(report.witness->rhs, TextStyle::Plain);
  }
  return out.str();
}

namespace {

nlohmann::ordered_json report_object(const Report& report) {
  nlohmann::ordered_json doc;
  doc["id"] = report.id;
  doc["kind"] = std::string(kind_name(report.kind));
  doc["label"] = report.kind == Kind::Conjecture ? "CONJECTURE" : "THEOREM";
  doc["n_range"] = {report.n_lo, report.n_hi};
  doc["status"] = std::string(status_name(report.status));
  if (report.witness) {
    nlohmann::ordered_json w;
    w["n"] = report.witness->n;
    w["lhs"] = poly_json(report.witness->lhs);
    w["rhs"] = poly_json(report.witness->rhs);
    w["note"] = report.witness->note;
    doc["witness"] = std::move(w);
  } else {
    doc["witness"] = nullptr;
  }
  doc["detail"] = report.detail;
  doc["elapsed"] = report.elapsed_seconds;
  return doc;
}

}  // namespace

std::string report_json(const Report& report) { return report_object(report).dump(); }

std::string reports_json(const std::vector<Report>& reports, bool strict_conjectures) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skipped = 0;
  for (const auto& r : reports) {
    list.push_back(report_object(r));
    switch (r.status) {
      case Status::Pass: ++pass; break;
      case Status::Fail: ++fail; break;
      case Status::Skipped: ++skipped; break;
    }
  }
  doc["reports"] = std::move(list);
  doc["summary"] = {{"total", reports.size()},
                    {"pass", pass},
                    {"fail", fail},
                    {"skipped", skipped},
                    {"exit_code", exit_code(reports, strict_conjectures)}};
  return doc.dump();
}

}  // namespace eulerian::verify
