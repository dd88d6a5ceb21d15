#include "eulerian/cfrac.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace eulerian::cfrac {

std::vector<MultiPoly> moments(const JSpec& spec, unsigned N) {
  const unsigned top = N / 2;  // no path of length <= N climbs higher
  std::vector<MultiPoly> b(top + 1);
  std::vector<MultiPoly> lam(top + 2);
  for (unsigned h = 0; h <= top; ++h) b[h] = spec.b(h);
  for (unsigned h = 1; h <= top; ++h) lam[h] = spec.lam(h);

  std::vector<MultiPoly> mu{MultiPoly(1)};
  std::vector<MultiPoly> paths(top + 1);  // paths[h]: weight of prefixes ending at height h
  paths[0] = MultiPoly(1);
  for (unsigned step = 1; step <= N; ++step) {
    // after `step` steps a useful prefix sits at height <= min(step, N - step)
    const unsigned reach = std::min({step, N - step, top});
    std::vector<MultiPoly> next(top + 1);
    for (unsigned h = 0; h <= reach; ++h) {
      MultiPoly sum = paths[h] * b[h];
      if (h > 0) sum += paths[h - 1];
      if (h + 1 <= top && !paths[h + 1].is_zero()) sum += paths[h + 1] * lam[h + 1];
      next[h] = std::move(sum);
    }
    paths = std::move(next);
    mu.push_back(paths[0]);
  }
  return mu;
}

namespace {

// Calls `visit` for every composition of `total` into `parts` parts, each at
// least `floor`, in lexicographic order.
void compositions(unsigned total, unsigned parts, unsigned floor,
                  std::vector<unsigned>& prefix,
                  const std::function<void(const std::vector<unsigned>&)>& visit) {
  if (parts == 0) {
    if (total == 0) visit(prefix);
    return;
  }
  if (total < floor * parts) return;
  const unsigned largest = total - floor * (parts - 1);
  for (unsigned first = floor; first <= largest; ++first) {
    prefix.push_back(first);
    compositions(total - first, parts - 1, floor, prefix, visit);
    prefix.pop_back();
  }
}

Coeff rho(const std::vector<unsigned>& n_vec, const std::vector<unsigned>& m_vec) {
  // n_{-1} = 1 and n_{h+1} = 0
  const std::size_t h = n_vec.size() - 1;
  auto n_at = [&](long j) -> unsigned {
    if (j < 0) return 1;
    if (static_cast<std::size_t>(j) > h) return 0;
    return n_vec[static_cast<std::size_t>(j)];
  };
  Coeff out(1);
  for (std::size_t j = 0; j <= h + 1; ++j) {
    const unsigned nj = n_at(static_cast<long>(j));
    const unsigned prev = n_at(static_cast<long>(j) - 1);
    out *= binomial(nj + prev - 1, prev - 1);
    out *= binomial(m_vec[j] + nj + prev - 1, m_vec[j]);
  }
  return out;
}

}  // namespace

void for_each_jr_term(const JSpec& spec, unsigned n,
                      const std::function<void(const JRTerm&)>& visit) {
  if (n == 0) throw std::invalid_argument("the Jacobi-Rogers sum starts at n = 1");

  std::vector<MultiPoly> b_cache;
  std::vector<MultiPoly> lam_cache{MultiPoly()};
  auto b = [&](unsigned j) -> const MultiPoly& {
    while (b_cache.size() <= j) b_cache.push_back(spec.b(static_cast<unsigned>(b_cache.size())));
    return b_cache[j];
  };
  auto lam = [&](unsigned j) -> const MultiPoly& {
    while (lam_cache.size() <= j) {
      lam_cache.push_back(spec.lam(static_cast<unsigned>(lam_cache.size())));
    }
    return lam_cache[j];
  };

  {
    JRTerm lone;
    lone.m_vec = {n};
    lone.rho = 1;
    lone.weight = b(0).pow(n);
    visit(lone);
  }

  std::vector<unsigned> n_prefix;
  std::vector<unsigned> m_prefix;
  for (unsigned h = 0; 2 * (h + 1) <= n; ++h) {
    const unsigned parts = h + 1;
    for (unsigned down_total = parts; 2 * down_total <= n; ++down_total) {
      compositions(down_total, parts, 1, n_prefix, [&](const std::vector<unsigned>& n_vec) {
        const unsigned level_total = n - 2 * down_total;
        compositions(level_total, parts + 1, 0, m_prefix,
                     [&](const std::vector<unsigned>& m_vec) {
                       JRTerm term;
                       term.h = h;
                       term.n_vec = n_vec;
                       term.m_vec = m_vec;
                       term.rho = rho(n_vec, m_vec);
                       MultiPoly weight(term.rho);
                       for (unsigned j = 0; j < m_vec.size(); ++j) {
                         if (m_vec[j] > 0) weight *= b(j).pow(m_vec[j]);
                       }
                       for (unsigned j = 0; j < n_vec.size(); ++j) {
                         weight *= lam(j + 1).pow(n_vec[j]);
                       }
                       term.weight = std::move(weight);
                       visit(term);
                     });
      });
    }
  }
}

std::vector<JRTerm> jr_terms(const JSpec& spec, unsigned n) {
  std::vector<JRTerm> out;
  for_each_jr_term(spec, n, [&](const JRTerm& term) { out.push_back(term); });
  return out;
}

MultiPoly jacobi_rogers(const JSpec& spec, unsigned n) {
  MultiPoly sum;
  for_each_jr_term(spec, n, [&](const JRTerm& term) { sum += term.weight; });
  return sum;
}

// ---------------------------------------------------------------------------
// Presets

namespace {

MultiPoly var(Var v, unsigned e = 1) { return MultiPoly::var(v, e); }
MultiPoly integer(unsigned n) { return MultiPoly(static_cast<long>(n)); }

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"CF_Q",    "CF_tildeA", "CF_Astar",
                                                 "CF_hatA", "CF_B",      "CF_P"};
  return names;
}

JSpec preset(std::string_view name) {
  const MultiPoly t = var(Var::t);
  const MultiPoly one_plus_t = MultiPoly(1) + t;

  if (name == "CF_Q") {
    // b_n = n(c+d) + alpha, lam_n = n^2 ab
    return {"CF_Q",
            [](unsigned n) { return integer(n) * (var(Var::c) + var(Var::d)) + var(Var::e); },
            [](unsigned n) { return integer(n * n) * var(Var::a) * var(Var::b); }};
  }
  if (name == "CF_tildeA") {
    return {"CF_tildeA", [=](unsigned n) { return integer(n + 1) * one_plus_t; },
            [=](unsigned n) { return integer(n * n) * t; }};
  }
  if (name == "CF_Astar") {
    const MultiPoly sq = one_plus_t * one_plus_t;
    const MultiPoly base = MultiPoly(1) + t + t * t;
    return {"CF_Astar", [=](unsigned n) { return integer(n) * sq + base; },
            [=](unsigned n) { return integer(n * n) * t * sq; }};
  }
  if (name == "CF_hatA") {
    return {"CF_hatA", [=](unsigned n) { return one_plus_t * pq_integer(n + 1); },
            [=](unsigned n) {
              const MultiPoly br = pq_integer(n);
              return t * var(Var::q) * br * br;
            }};
  }
  if (name == "CF_B") {
    // b_n = y p^n + (qu + tv)[n]_{p,q}, lam_n = tw [n]_{p,q}^2
    return {"CF_B",
            [=](unsigned n) {
              return var(Var::y) * var(Var::p, n) +
                     (var(Var::q) * var(Var::u) + t * var(Var::v)) * pq_integer(n);
            },
            [=](unsigned n) {
              const MultiPoly br = pq_integer(n);
              return t * var(Var::w) * br * br;
            }};
  }
  if (name == "CF_P") {
    return {"CF_P", [](unsigned n) { return pq_integer(n + 1); },
            [](unsigned n) {
              const MultiPoly br = pq_integer(n);
              return var(Var::y) * var(Var::q) * br * br;
            }};
  }
  throw std::invalid_argument("unknown continued-fraction preset '" + std::string(name) + "'");
}

JSpec specialize(const JSpec& spec, std::map<Var, MultiPoly> images, std::string name) {
  auto b = spec.b;
  auto lam = spec.lam;
  return {std::move(name),
          [b, images](unsigned n) { return substitute(b(n), images); },
          [lam, images](unsigned n) { return substitute(lam(n), images); }};
}

}  // namespace eulerian::cfrac
