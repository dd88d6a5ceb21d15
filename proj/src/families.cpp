#include "eulerian/families.hpp"

#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "eulerian/cfrac.hpp"
#include "eulerian/permstats.hpp"

namespace eulerian::fam {

namespace {

MultiPoly var(Var v, unsigned e = 1) { return MultiPoly::var(v, e); }

const MultiPoly& t_poly() {
  static const MultiPoly t = var(Var::t);
  return t;
}

const MultiPoly& one_plus_t() {
  static const MultiPoly p = MultiPoly(1) + var(Var::t);
  return p;
}

const std::vector<std::pair<FamilyId, std::string_view>> kFamilyNames = {
    {FamilyId::A, "A"},
    {FamilyId::A_majexc, "A_majexc"},
    {FamilyId::A_desinv, "A_desinv"},
    {FamilyId::TildeA, "TildeA"},
    {FamilyId::TildeA_signed, "TildeA_signed"},
    {FamilyId::AStar, "AStar"},
    {FamilyId::HatA, "HatA"},
    {FamilyId::Q5, "Q5"},
    {FamilyId::B7, "B7"},
    {FamilyId::P3, "P3"},
    {FamilyId::GammaPoly, "GammaPoly"},
    {FamilyId::TildeGammaPoly, "TildeGammaPoly"},
};

const std::vector<std::pair<Route, std::string_view>> kRouteNames = {
    {Route::Enumerate, "Enumerate"},
    {Route::Recursion, "Recursion"},
    {Route::Transform, "Transform"},
    {Route::CFrac, "CFrac"},
    {Route::Interpretation, "Interpretation"},
};

// ---------------------------------------------------------------------------
// Memoization

// Growable sequence; deque keeps references stable while a step reads
// earlier entries.
class SeqMemo {
 public:
  using Step = std::function<MultiPoly(const std::deque<MultiPoly>&)>;

  explicit SeqMemo(Step step) : step_(std::move(step)) {}

  MultiPoly at(unsigned n) {
    std::lock_guard lock(mu_);
    grow(n);
    return seq_[n];
  }

  std::vector<MultiPoly> prefix(unsigned N) {
    std::lock_guard lock(mu_);
    grow(N);
    return {seq_.begin(), seq_.begin() + N + 1};
  }

  void clear() {
    std::lock_guard lock(mu_);
    seq_.clear();
  }

 private:
  void grow(unsigned n) {
    while (seq_.size() <= n) seq_.push_back(step_(seq_));
  }

  std::mutex mu_;
  Step step_;
  std::deque<MultiPoly> seq_;
};

// One SeqMemo per q specialization.
class QSeqMemo {
 public:
  using Factory = std::function<SeqMemo::Step(std::optional<long>)>;

  explicit QSeqMemo(Factory factory) : factory_(std::move(factory)) {}

  SeqMemo& get(std::optional<long> q) {
    std::lock_guard lock(mu_);
    auto it = memos_.find(q);
    if (it == memos_.end()) {
      it = memos_.try_emplace(q, factory_(q)).first;
    }
    return it->second;
  }

  void clear() {
    std::lock_guard lock(mu_);
    memos_.clear();
  }

 private:
  std::mutex mu_;
  Factory factory_;
  std::map<std::optional<long>, SeqMemo> memos_;
};

// q-binomials and q-powers, symbolic or specialized.
struct QRing {
  std::optional<long> q;

  MultiPoly qbin(unsigned n, unsigned k) const {
    MultiPoly b = q_binomial(n, k);
    return q ? eval_at(b, Var::q, Coeff(*q)) : b;
  }

  MultiPoly qpow(unsigned k) const {
    if (!q) return var(Var::q, k);
    Coeff out(1);
    for (unsigned i = 0; i < k; ++i) out *= *q;
    return MultiPoly(out);
  }
};

// ---------------------------------------------------------------------------
// Recursion steps

SeqMemo::Step chow_step(std::optional<long> q) {
  return [ring = QRing{q}](const std::deque<MultiPoly>& a) -> MultiPoly {
    if (a.size() <= 1) return MultiPoly(1);
    const unsigned n = static_cast<unsigned>(a.size()) - 1;
    MultiPoly next = (MultiPoly(1) + t_poly() * ring.qpow(n)) * a[n];
    MultiPoly sum;
    for (unsigned k = 1; k + 1 <= n; ++k) {
      sum += ring.qbin(n, k) * ring.qpow(k) * a[n - k] * a[k];
    }
    return next + t_poly() * sum;
  };
}

SeqMemo::Step lin_step(std::optional<long> q) {
  return [ring = QRing{q}](const std::deque<MultiPoly>& a) -> MultiPoly {
    if (a.size() <= 1) return MultiPoly(1);
    const unsigned n = static_cast<unsigned>(a.size()) - 1;
    MultiPoly sum;
    for (unsigned k = 1; k + 1 <= n; ++k) {
      sum += ring.qbin(n, k) * ring.qpow(k) * a[k] * a[n - k];
    }
    return one_plus_t() * a[n] + t_poly() * sum;
  };
}

QSeqMemo& chow_memo() {
  static QSeqMemo memo(chow_step);
  return memo;
}

QSeqMemo& lin_memo() {
  static QSeqMemo memo(lin_step);
  return memo;
}

SeqMemo::Step tilde_step(std::optional<long> q) {
  return [ring = QRing{q}](const std::deque<MultiPoly>& s) -> MultiPoly {
    if (s.empty()) return MultiPoly(1);
    const unsigned n = static_cast<unsigned>(s.size()) - 1;
    SeqMemo& a = lin_memo().get(ring.q);
    MultiPoly sum;
    for (unsigned k = 1; k <= n; ++k) {
      sum += ring.qbin(n, k) * ring.qpow(k) * a.at(k) * s[n - k];
    }
    return one_plus_t() * s[n] + t_poly() * sum;
  };
}

QSeqMemo& tilde_memo() {
  static QSeqMemo memo(tilde_step);
  return memo;
}

// Gamma_k(y,q) from the gamma expansion of A_k(t,q) with center k-1.
MultiPoly gamma_of_a(unsigned k) {
  if (k == 0) return MultiPoly(1);
  const auto coeffs = gamma_expand(lin_memo().get(std::nullopt).at(k), k - 1);
  MultiPoly out;
  for (unsigned j = 0; j < coeffs.size(); ++j) out += coeffs[j] * var(Var::y, j);
  return out;
}

SeqMemo& gamma_memo() {
  static SeqMemo memo([](const std::deque<MultiPoly>& g) {
    return gamma_of_a(static_cast<unsigned>(g.size()));
  });
  return memo;
}

SeqMemo& tilde_gamma_memo() {
  static SeqMemo memo([](const std::deque<MultiPoly>& s) -> MultiPoly {
    if (s.empty()) return MultiPoly(1);
    const unsigned n = static_cast<unsigned>(s.size()) - 1;
    MultiPoly sum;
    for (unsigned k = 1; k <= n; ++k) {
      sum += q_binomial(n, k) * var(Var::q, k) * gamma_memo().at(k) * s[n - k];
    }
    return s[n] + var(Var::y) * sum;
  });
  return memo;
}

SeqMemo& signed_tilde_memo() {
  static SeqMemo memo([](const std::deque<MultiPoly>& s) -> MultiPoly {
    if (s.empty()) return MultiPoly(1);
    SeqMemo& a = lin_memo().get(-1);
    const unsigned next = static_cast<unsigned>(s.size());
    const MultiPoly& t = t_poly();
    if (next % 2 == 1) {
      const unsigned n = (next - 1) / 2;
      MultiPoly sum;
      for (unsigned k = 1; k <= n; ++k) {
        sum += MultiPoly(binomial(n, k)) * a.at(2 * k) * s[2 * n - 2 * k];
      }
      return one_plus_t() * s[2 * n] + t * sum;
    }
    const unsigned n = (next - 2) / 2;
    MultiPoly even_sum;
    for (unsigned k = 1; k <= n; ++k) {
      even_sum += MultiPoly(binomial(n, k)) * a.at(2 * k) * s[2 * n + 1 - 2 * k];
    }
    MultiPoly odd_sum;
    for (unsigned k = 0; k <= n; ++k) {
      odd_sum += MultiPoly(binomial(n, k)) * a.at(2 * k + 1) * s[2 * n - 2 * k];
    }
    return one_plus_t() * s[2 * n + 1] + t * even_sum - t * odd_sum;
  });
  return memo;
}

// Values keyed by (family, route, n) for the non-recursive routes.
struct ValueCache {
  std::mutex mu;
  std::map<std::tuple<FamilyId, Route, unsigned>, MultiPoly> values;
};

ValueCache& value_cache() {
  static ValueCache cache;
  return cache;
}

std::optional<MultiPoly> cached(FamilyId f, Route r, unsigned n) {
  auto& cache = value_cache();
  std::lock_guard lock(cache.mu);
  auto it = cache.values.find({f, r, n});
  if (it == cache.values.end()) return std::nullopt;
  return it->second;
}

void store(FamilyId f, Route r, unsigned n, const MultiPoly& value) {
  auto& cache = value_cache();
  std::lock_guard lock(cache.mu);
  cache.values.insert_or_assign({f, r, n}, value);
}

// ---------------------------------------------------------------------------
// Enumeration helpers

using Weight = std::function<MultiPoly(const perm::StatKey&)>;

MultiPoly collect(const perm::Tally& tally, const Weight& weight) {
  MultiPoly out;
  for (const auto& [key, count] : tally) {
    out += MultiPoly(Coeff(static_cast<unsigned long>(count))) * weight(key);
  }
  return out;
}

// Monomial weight prod vars[i]^key[i].
MultiPoly monomial_weight(const perm::StatKey& key, std::initializer_list<Var> vars) {
  Monomial m;
  std::size_t i = 0;
  for (Var v : vars) {
    if (key[i] < 0) throw std::logic_error("negative statistic exponent");
    m = m * Monomial::of(v, static_cast<unsigned>(key[i]));
    ++i;
  }
  return MultiPoly(m, 1);
}

MultiPoly enumerate_monomials(int n, std::initializer_list<Var> vars, const perm::KeyFn& key) {
  const auto tally = perm::tally(n, key);
  return collect(tally, [vars](const perm::StatKey& k) { return monomial_weight(k, vars); });
}

MultiPoly enum_a_des(unsigned n) {
  return enumerate_monomials(static_cast<int>(n), {Var::t}, [](auto w, perm::StatKey& k) {
    k = {perm::linear_stats(w).des};
    return true;
  });
}

MultiPoly enum_a_exc(unsigned n) {
  return enumerate_monomials(static_cast<int>(n), {Var::t}, [](auto w, perm::StatKey& k) {
    k = {perm::stats(w).exc};
    return true;
  });
}

MultiPoly enum_majexc(unsigned n) {
  return enumerate_monomials(static_cast<int>(n), {Var::t, Var::q},
                             [](auto w, perm::StatKey& k) {
                               const auto s = perm::stats(w);
                               k = {s.exc, s.maj - s.exc};
                               return true;
                             });
}

MultiPoly enum_desai(unsigned n) {
  return enumerate_monomials(static_cast<int>(n), {Var::t, Var::q},
                             [](auto w, perm::StatKey& k) {
                               const auto s = perm::linear_stats(w);
                               k = {s.des, s.ai};
                               return true;
                             });
}

MultiPoly enum_desinv(unsigned n) {
  return enumerate_monomials(static_cast<int>(n), {Var::t, Var::q},
                             [](auto w, perm::StatKey& k) {
                               const auto s = perm::linear_stats(w);
                               k = {s.des, s.inv};
                               return true;
                             });
}

MultiPoly enum_prw(unsigned n) {
  return enumerate_monomials(static_cast<int>(n) + 1, {Var::t, Var::q},
                             [](auto w, perm::StatKey& k) {
                               if (!perm::is_prw(w)) return false;
                               const auto s = perm::linear_stats(w);
                               k = {s.des, s.ai};
                               return true;
                             });
}

// Weight prod vars[i]^key[i] * (1+t)^key.back().
MultiPoly enumerate_with_fix(int n, std::initializer_list<Var> vars, const perm::KeyFn& key) {
  const auto tally = perm::tally(n, key);
  std::vector<MultiPoly> powers{MultiPoly(1)};
  return collect(tally, [&](const perm::StatKey& k) {
    const auto last = static_cast<std::size_t>(k.back());
    while (powers.size() <= last) powers.push_back(powers.back() * one_plus_t());
    return monomial_weight(k, vars) * powers[last];
  });
}

MultiPoly enum_hat_corteel(unsigned n) {
  return enumerate_with_fix(static_cast<int>(n), {Var::p, Var::q, Var::t},
                            [](auto w, perm::StatKey& k) {
                              const auto s = perm::stats(w);
                              k = {s.nest, s.cros + s.drop, s.exc, s.fix};
                              return true;
                            });
}

MultiPoly enum_hat_linear(unsigned n) {
  return enumerate_with_fix(static_cast<int>(n), {Var::p, Var::q, Var::t},
                            [](auto w, perm::StatKey& k) {
                              const auto s = perm::linear_stats(w);
                              k = {s.p231, s.p312 + s.des, s.des, s.fmax};
                              return true;
                            });
}

MultiPoly enum_q5(unsigned n) {
  return enumerate_monomials(static_cast<int>(n), {Var::a, Var::b, Var::c, Var::d, Var::e},
                             [](auto w, perm::StatKey& k) {
                               const auto s = perm::stats(w);
                               k = {s.cvalley, s.cpeak, s.cdfall, s.cdrise, s.fix};
                               return true;
                             });
}

MultiPoly enum_b_cycle(unsigned n) {
  return enumerate_monomials(
      static_cast<int>(n), {Var::p, Var::q, Var::t, Var::u, Var::v, Var::w, Var::y},
      [](auto w, perm::StatKey& k) {
        const auto s = perm::stats(w);
        k = {s.nest, s.cros, s.drop, s.cdrise, s.cdfall, s.cvalley, s.fix};
        return true;
      });
}

MultiPoly enum_b_linear(unsigned n) {
  return enumerate_monomials(
      static_cast<int>(n), {Var::p, Var::q, Var::t, Var::u, Var::v, Var::w, Var::y},
      [](auto w, perm::StatKey& k) {
        const auto s = perm::linear_stats(w);
        k = {s.p231, s.p312, s.des, s.da_star - s.fmax, s.dd, s.valley_star, s.fmax};
        return true;
      });
}

MultiPoly enum_p3(unsigned n) {
  return enumerate_monomials(static_cast<int>(n), {Var::p, Var::q, Var::y},
                             [](auto w, perm::StatKey& k) {
                               const auto s = perm::stats(w);
                               if (s.cdfall != 0) return false;
                               k = {s.nest, s.cros + s.drop, s.cvalley};
                               return true;
                             });
}

MultiPoly enum_gamma(unsigned n) {
  if (n <= 1) return MultiPoly(1);
  return enumerate_monomials(static_cast<int>(n), {Var::y, Var::q},
                             [](auto w, perm::StatKey& k) {
                               if (w[0] > w[1]) return false;
                               const auto s = perm::linear_stats(w);
                               if (s.dd != 0) return false;
                               k = {s.des, s.inv};
                               return true;
                             });
}

MultiPoly enum_tilde_gamma(unsigned n) {
  return enumerate_monomials(static_cast<int>(n), {Var::y, Var::q},
                             [](auto w, perm::StatKey& k) {
                               const auto s = perm::linear_stats(w);
                               if (s.dd != 0) return false;
                               k = {s.des, s.inv};
                               return true;
                             });
}

// ---------------------------------------------------------------------------
// Transforms

MultiPoly tilde_transform(unsigned n, std::optional<long> q) {
  const QRing ring{q};
  SeqMemo& a = lin_memo().get(q);
  MultiPoly sum;
  for (unsigned m = 1; m <= n; ++m) sum += ring.qbin(n, m) * a.at(m);
  return MultiPoly(1) + t_poly() * sum;
}

MultiPoly astar_transform(unsigned m) {
  SeqMemo& a = chow_memo().get(1);
  MultiPoly sum;
  MultiPoly power(1);
  for (unsigned k = 1; k <= m; ++k) {
    power *= one_plus_t();
    sum += MultiPoly(binomial(m, k)) * power * a.at(k);
  }
  return MultiPoly(1) + t_poly() * sum;
}

MultiPoly gamma_to_poly(const std::vector<MultiPoly>& coeffs) {
  MultiPoly out;
  for (unsigned j = 0; j < coeffs.size(); ++j) out += coeffs[j] * var(Var::y, j);
  return out;
}

cfrac::JSpec a_spec() {
  return cfrac::specialize(cfrac::preset("CF_Q"),
                           {{Var::a, var(Var::t)},
                            {Var::b, MultiPoly(1)},
                            {Var::c, MultiPoly(1)},
                            {Var::d, var(Var::t)},
                            {Var::e, MultiPoly(1)}},
                           "CF_A");
}

// Moments through n, cached for every index on the way.
MultiPoly cfrac_value(FamilyId f, unsigned n, const cfrac::JSpec& spec) {
  const auto mu = cfrac::moments(spec, n);
  for (unsigned k = 0; k <= n; ++k) store(f, Route::CFrac, k, mu[k]);
  return mu[n];
}

std::string preset_for(FamilyId f) {
  switch (f) {
    case FamilyId::AStar: return "CF_Astar";
    case FamilyId::HatA: return "CF_hatA";
    case FamilyId::Q5: return "CF_Q";
    case FamilyId::B7: return "CF_B";
    case FamilyId::P3: return "CF_P";
    default: return {};
  }
}

[[noreturn]] void unsupported(FamilyId f, Route r) {
  throw std::invalid_argument("family " + std::string(family_name(f)) + " has no route " +
                              std::string(route_name(r)));
}

MultiPoly build_uncached(FamilyId f, unsigned n, Route r) {
  switch (f) {
    case FamilyId::A:
      switch (r) {
        case Route::Enumerate: return enum_a_des(n);
        case Route::Interpretation: return enum_a_exc(n);
        case Route::Recursion: return chow_memo().get(1).at(n);
        case Route::CFrac: return cfrac_value(f, n, a_spec());
        default: break;
      }
      break;
    case FamilyId::A_majexc:
      switch (r) {
        case Route::Enumerate: return enum_majexc(n);
        case Route::Interpretation: return enum_desai(n);
        case Route::Recursion: return lin_memo().get(std::nullopt).at(n);
        default: break;
      }
      break;
    case FamilyId::A_desinv:
      switch (r) {
        case Route::Enumerate: return enum_desinv(n);
        case Route::Recursion: return chow_memo().get(std::nullopt).at(n);
        default: break;
      }
      break;
    case FamilyId::TildeA:
      switch (r) {
        case Route::Transform: return tilde_transform(n, std::nullopt);
        case Route::Recursion: return tilde_memo().get(std::nullopt).at(n);
        case Route::Interpretation: return enum_prw(n);
        default: break;
      }
      break;
    case FamilyId::TildeA_signed:
      switch (r) {
        case Route::Interpretation: return eval_at(enum_prw(n), Var::q, Coeff(-1));
        case Route::Transform: return tilde_transform(n, -1);
        case Route::Recursion: return signed_tilde_memo().at(n);
        default: break;
      }
      break;
    case FamilyId::AStar:
      switch (r) {
        case Route::Transform: return astar_transform(n);
        case Route::CFrac: return cfrac_value(f, n, cfrac::preset(preset_for(f)));
        case Route::Interpretation: return tilde_memo().get(-1).at(2 * n);
        default: break;
      }
      break;
    case FamilyId::HatA:
      switch (r) {
        case Route::CFrac: return cfrac_value(f, n, cfrac::preset(preset_for(f)));
        case Route::Enumerate: return enum_hat_corteel(n);
        case Route::Interpretation: return enum_hat_linear(n);
        default: break;
      }
      break;
    case FamilyId::Q5:
      switch (r) {
        case Route::Enumerate: return enum_q5(n);
        case Route::CFrac: return cfrac_value(f, n, cfrac::preset(preset_for(f)));
        default: break;
      }
      break;
    case FamilyId::B7:
      switch (r) {
        case Route::Enumerate: return enum_b_cycle(n);
        case Route::Interpretation: return enum_b_linear(n);
        case Route::CFrac: return cfrac_value(f, n, cfrac::preset(preset_for(f)));
        default: break;
      }
      break;
    case FamilyId::P3:
      switch (r) {
        case Route::Enumerate: return enum_p3(n);
        case Route::CFrac: return cfrac_value(f, n, cfrac::preset(preset_for(f)));
        default: break;
      }
      break;
    case FamilyId::GammaPoly:
      switch (r) {
        case Route::Transform: return gamma_memo().at(n);
        case Route::Enumerate: return enum_gamma(n);
        default: break;
      }
      break;
    case FamilyId::TildeGammaPoly:
      switch (r) {
        case Route::Transform:
          return gamma_to_poly(gamma_expand(tilde_memo().get(std::nullopt).at(n), n));
        case Route::Enumerate: return enum_tilde_gamma(n);
        case Route::Recursion: return tilde_gamma_memo().at(n);
        default: break;
      }
      break;
  }
  unsupported(f, r);
}

MultiPoly build(FamilyId f, unsigned n, Route r) {
  if (auto hit = cached(f, r, n)) return *hit;
  MultiPoly value = build_uncached(f, n, r);
  store(f, r, n, value);
  return value;
}

}  // namespace

// ---------------------------------------------------------------------------
// Names and registry

std::string_view family_name(FamilyId f) {
  for (const auto& [id, name] : kFamilyNames) {
    if (id == f) return name;
  }
  return "?";
}

std::string_view route_name(Route r) {
  for (const auto& [id, name] : kRouteNames) {
    if (id == r) return name;
  }
  return "?";
}

FamilyId parse_family(std::string_view name) {
  for (const auto& [id, label] : kFamilyNames) {
    if (label == name) return id;
  }
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

Route parse_route(std::string_view name) {
  for (const auto& [id, label] : kRouteNames) {
    if (label == name) return id;
  }
  throw std::invalid_argument("unknown route '" + std::string(name) + "'");
}

const std::vector<FamilyId>& all_families() {
  static const std::vector<FamilyId> ids = [] {
    std::vector<FamilyId> out;
    for (const auto& entry : kFamilyNames) out.push_back(entry.first);
    return out;
  }();
  return ids;
}

const std::vector<RegistryEntry>& registry() {
  using F = FamilyId;
  using R = Route;
  static const std::vector<RegistryEntry> entries = {
      {F::A, R::Recursion, 40, "t", "quadratic binomial recursion"},
      {F::A, R::Enumerate, 10, "t", "des over S_n"},
      {F::A, R::Interpretation, 10, "t", "exc over S_n"},
      {F::A, R::CFrac, 30, "t", "CF_Q at a=t, b=c=alpha=1, d=t"},
      {F::A_majexc, R::Recursion, 16, "t,q", "quadratic q-binomial recursion"},
      {F::A_majexc, R::Enumerate, 9, "t,q", "t^exc q^(maj-exc) over S_n"},
      {F::A_majexc, R::Interpretation, 9, "t,q", "t^des q^ai over S_n"},
      {F::A_desinv, R::Recursion, 16, "t,q", "quadratic recursion with (1+tq^n)"},
      {F::A_desinv, R::Enumerate, 9, "t,q", "t^des q^inv over S_n"},
      {F::TildeA, R::Recursion, 16, "t,q", "recursion from TildeA_0 = 1"},
      {F::TildeA, R::Transform, 16, "t,q", "1 + t sum [n m]_q A_m(t,q)"},
      {F::TildeA, R::Interpretation, 8, "t,q", "t^des q^ai over PRW_{n+1}"},
      {F::TildeA_signed, R::Recursion, 30, "t", "odd/even binomial recursions"},
      {F::TildeA_signed, R::Transform, 30, "t", "q-binomial transform at q=-1"},
      {F::TildeA_signed, R::Interpretation, 8, "t", "t^des (-1)^ai over PRW_{n+1}"},
      {F::AStar, R::Transform, 30, "t", "1 + t sum C(m,k) (1+t)^k A_k(t)"},
      {F::AStar, R::CFrac, 30, "t", "CF_Astar moments"},
      {F::AStar, R::Interpretation, 15, "t", "TildeA_{2n}(t,-1) by recursion"},
      {F::HatA, R::CFrac, 14, "t,p,q", "CF_hatA moments"},
      {F::HatA, R::Enumerate, 9, "t,p,q", "p^nest q^(cros+drop) (1+t)^fix t^exc"},
      {F::HatA, R::Interpretation, 9, "t,p,q", "p^(2-31) q^(31-2+des) (1+t)^fmax t^des"},
      {F::Q5, R::CFrac, 12, "a,b,c,d,e", "CF_Q moments"},
      {F::Q5, R::Enumerate, 9, "a,b,c,d,e", "cycle statistics over S_n"},
      {F::B7, R::CFrac, 10, "p,q,t,u,v,w,y", "CF_B moments"},
      {F::B7, R::Enumerate, 9, "p,q,t,u,v,w,y", "cycle statistics over S_n"},
      {F::B7, R::Interpretation, 9, "p,q,t,u,v,w,y", "linear statistics over S_n"},
      {F::P3, R::CFrac, 14, "p,q,y", "CF_P moments"},
      {F::P3, R::Enumerate, 9, "p,q,y", "p^nest q^(cros+drop) y^cvalley, cdfall = 0"},
      {F::GammaPoly, R::Transform, 16, "y,q", "gamma expansion of A_n(t,q)"},
      {F::GammaPoly, R::Enumerate, 9, "y,q", "q^inv y^des over dd-free S_n with s1<s2"},
      {F::TildeGammaPoly, R::Recursion, 16, "y,q", "gamma recursion from 1"},
      {F::TildeGammaPoly, R::Transform, 16, "y,q", "gamma expansion of TildeA_n(t,q)"},
      {F::TildeGammaPoly, R::Enumerate, 9, "y,q", "q^inv y^des over dd-free S_n"},
  };
  return entries;
}

bool has_route(FamilyId f, Route r) {
  for (const auto& entry : registry()) {
    if (entry.family == f && entry.route == r) return true;
  }
  return false;
}

Route default_route(FamilyId f) {
  // the first registry row of each family is its default
  for (const auto& entry : registry()) {
    if (entry.family == f) return entry.route;
  }
  throw std::invalid_argument("family has no registered route");
}

unsigned cap(FamilyId f, Route r) {
  if (!has_route(f, r)) unsupported(f, r);
  if (const char* env = std::getenv("EULERIAN_MAX_N"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != nullptr && *end == '\0' && value >= 0) return static_cast<unsigned>(value);
  }
  for (const auto& entry : registry()) {
    if (entry.family == f && entry.route == r) return entry.max_n;
  }
  unsupported(f, r);
}

std::string registry_json() {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& entry : registry()) {
    nlohmann::ordered_json row;
    row["family"] = std::string(family_name(entry.family));
    row["route"] = std::string(route_name(entry.route));
    row["max_n"] = cap(entry.family, entry.route);
    row["default"] = default_route(entry.family) == entry.route;
    row["vars"] = entry.vars;
    row["description"] = entry.description;
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

MultiPoly compute(FamilyId f, unsigned n, std::optional<Route> route) {
  const Route r = route.value_or(default_route(f));
  const unsigned limit = cap(f, r);
  if (n > limit) {
    throw std::out_of_range("n = " + std::to_string(n) + " exceeds the cap " +
                            std::to_string(limit) + " for " + std::string(family_name(f)) +
                            "/" + std::string(route_name(r)));
  }
  return build(f, n, r);
}

std::vector<MultiPoly> sequence(FamilyId f, unsigned N, std::optional<Route> route) {
  const Route r = route.value_or(default_route(f));
  if (N > 0) compute(f, N, r);  // cap check, and CFrac fills the cache in one pass
  std::vector<MultiPoly> out;
  out.reserve(N + 1);
  for (unsigned n = 0; n <= N; ++n) out.push_back(build(f, n, r));
  return out;
}

// ---------------------------------------------------------------------------
// Named constructors

MultiPoly eulerian(unsigned n, Route route) { return build(FamilyId::A, n, route); }
MultiPoly a_majexc(unsigned n, Route route) { return build(FamilyId::A_majexc, n, route); }
MultiPoly a_desinv(unsigned n, Route route) { return build(FamilyId::A_desinv, n, route); }
MultiPoly tilde_a(unsigned n, Route route) { return build(FamilyId::TildeA, n, route); }
MultiPoly tilde_a_signed(unsigned n, Route route) {
  return build(FamilyId::TildeA_signed, n, route);
}
MultiPoly a_star(unsigned n, Route route) { return build(FamilyId::AStar, n, route); }
MultiPoly hat_a(unsigned n, Route route) { return build(FamilyId::HatA, n, route); }
MultiPoly q5(unsigned n, Route route) { return build(FamilyId::Q5, n, route); }

MultiPoly b7(unsigned n, BInterpretation interpretation) {
  return build(FamilyId::B7, n,
               interpretation == BInterpretation::Cycle ? Route::Enumerate
                                                        : Route::Interpretation);
}

MultiPoly p3(unsigned n, Route route) { return build(FamilyId::P3, n, route); }
MultiPoly gamma_poly(unsigned n, Route route) { return build(FamilyId::GammaPoly, n, route); }
MultiPoly tilde_gamma_poly(unsigned n, Route route) {
  return build(FamilyId::TildeGammaPoly, n, route);
}

GammaLists gamma_family(unsigned n) {
  if (n == 0) throw std::invalid_argument("gamma_family needs n >= 1");
  return {gamma_expand(a_majexc(n), n - 1), gamma_expand(tilde_a(n), n)};
}

unsigned gamma_center(FamilyId f, unsigned n) {
  switch (f) {
    case FamilyId::A:
    case FamilyId::A_majexc:
    case FamilyId::A_desinv:
      return n == 0 ? 0 : n - 1;
    case FamilyId::TildeA:
    case FamilyId::TildeA_signed:
    case FamilyId::HatA:
      return n;
    case FamilyId::AStar:
      return 2 * n;
    default:
      throw std::invalid_argument("family " + std::string(family_name(f)) +
                                  " is not a palindromic t-polynomial");
  }
}

// ---------------------------------------------------------------------------
// Recursions

std::vector<MultiPoly> chow_recursion(unsigned N, std::optional<long> q_value) {
  return chow_memo().get(q_value).prefix(N);
}

std::vector<MultiPoly> eulerian_recursion(unsigned N) { return chow_memo().get(1).prefix(N); }

std::vector<MultiPoly> lin_recursion(unsigned N, std::optional<long> q_value) {
  return lin_memo().get(q_value).prefix(N);
}

std::vector<MultiPoly> tilde_recursion(unsigned N, std::optional<long> q_value) {
  return tilde_memo().get(q_value).prefix(N);
}

std::vector<MultiPoly> tilde_gamma_recursion(unsigned N) {
  return tilde_gamma_memo().prefix(N);
}

std::vector<MultiPoly> signed_tilde_recursion(unsigned N) {
  return signed_tilde_memo().prefix(N);
}

// ---------------------------------------------------------------------------
// Signed closed forms

namespace {

void require_positive(unsigned n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + " needs n >= 1");
}

MultiPoly closed_form(unsigned n, const MultiPoly& base) {
  const unsigned m = n / 2;
  SeqMemo& a = chow_memo().get(1);
  return base.pow(m) * a.at(n % 2 == 0 ? m : m + 1);
}

}  // namespace

MultiPoly desinv_sign_closed(unsigned n) {
  require_positive(n, "desinv_sign_closed");
  return closed_form(n, MultiPoly(1) - t_poly());
}

MultiPoly majexc_sign_closed(unsigned n) {
  require_positive(n, "majexc_sign_closed");
  return closed_form(n, one_plus_t());
}

MultiPoly tilde_sign_closed(unsigned n) {
  require_positive(n, "tilde_sign_closed");
  SeqMemo& euler = chow_memo().get(1);
  auto a = [&](unsigned k) { return k == 0 ? MultiPoly() : euler.at(k); };
  const unsigned m = n / 2;
  MultiPoly sum;
  MultiPoly power(1);
  for (unsigned k = 0; k <= m; ++k) {
    if (k > 0) power *= one_plus_t();
    const MultiPoly inner = n % 2 == 0 ? a(k) : a(k) + a(k + 1);
    sum += MultiPoly(binomial(m, k)) * power * inner;
  }
  return MultiPoly(1) + t_poly() * sum;
}

MultiPoly sign_balance(FamilyId f, unsigned n, Route route) {
  const bool specialized = route == Route::Recursion;
  switch (f) {
    case FamilyId::A_desinv:
      return specialized ? chow_memo().get(-1).at(n)
                         : eval_at(a_desinv(n, route), Var::q, Coeff(-1));
    case FamilyId::A_majexc:
      return specialized ? lin_memo().get(-1).at(n)
                         : eval_at(a_majexc(n, route), Var::q, Coeff(-1));
    case FamilyId::TildeA:
      return specialized ? tilde_memo().get(-1).at(n)
                         : eval_at(tilde_a(n, route), Var::q, Coeff(-1));
    default:
      throw std::invalid_argument("sign_balance is defined for A_desinv, A_majexc and TildeA, not " +
                                  std::string(family_name(f)));
  }
}

// ---------------------------------------------------------------------------
// Generating-function identities

namespace {

// sum_k [n k]_q f_k (t^{n-k} - t)
MultiPoly qexp_lhs(unsigned n, const std::function<MultiPoly(unsigned)>& f) {
  MultiPoly sum;
  for (unsigned k = 0; k <= n; ++k) {
    sum += q_binomial(n, k) * f(k) * (var(Var::t, n - k) - t_poly());
  }
  return sum;
}

// t f_n - sum_k C(n,k) base^{n-k} f_k
MultiPoly egf_lhs(unsigned n, const MultiPoly& base, const std::function<MultiPoly(unsigned)>& f) {
  MultiPoly sum;
  for (unsigned k = 0; k <= n; ++k) {
    sum += MultiPoly(binomial(n, k)) * base.pow(n - k) * f(k);
  }
  return t_poly() * f(n) - sum;
}

}  // namespace

Sides qexp_sides_a(unsigned n) {
  SeqMemo& a = lin_memo().get(std::nullopt);
  return {qexp_lhs(n, [&](unsigned k) { return a.at(k); }), MultiPoly(1) - t_poly()};
}

Sides qexp_sides_tilde(unsigned n) {
  SeqMemo& s = tilde_memo().get(std::nullopt);
  MultiPoly gauss;
  for (unsigned k = 0; k <= n; ++k) gauss += q_binomial(n, k) * var(Var::t, k);
  return {qexp_lhs(n, [&](unsigned k) { return s.at(k); }), (MultiPoly(1) - t_poly()) * gauss};
}

bool qexp_identity_check(unsigned n) {
  return qexp_sides_a(n).holds() && qexp_sides_tilde(n).holds();
}

Sides egf_sides_a(unsigned n) {
  SeqMemo& a = chow_memo().get(1);
  return {egf_lhs(n, t_poly() - MultiPoly(1), [&](unsigned k) { return a.at(k); }),
          n == 0 ? t_poly() - MultiPoly(1) : MultiPoly()};
}

Sides egf_sides_astar(unsigned n) {
  const MultiPoly t2 = var(Var::t, 2);
  return {egf_lhs(n, t2 - MultiPoly(1), [](unsigned k) { return astar_transform(k); }),
          (t_poly() - MultiPoly(1)) * var(Var::t, 2 * n)};
}

bool egf_cross_check_A(unsigned n) { return egf_sides_a(n).holds(); }
bool egf_cross_check_Astar(unsigned n) { return egf_sides_astar(n).holds(); }

void clear_caches() {
  chow_memo().clear();
  lin_memo().clear();
  tilde_memo().clear();
  gamma_memo().clear();
  tilde_gamma_memo().clear();
  signed_tilde_memo().clear();
  auto& cache = value_cache();
  std::lock_guard lock(cache.mu);
  cache.values.clear();
}

}  // namespace eulerian::fam
