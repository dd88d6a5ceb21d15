// Brute-force reference implementations used as test oracles.  Everything
// here is written directly from the definitions with no shared code paths
// beyond MultiPoly itself.
#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "eulerian/polycore.hpp"

namespace oracle {

using eulerian::Coeff;
using eulerian::Monomial;
using eulerian::MultiPoly;
using eulerian::Var;
using Word = std::vector<int>;

inline std::vector<Word> all_perms(int n) {
  Word w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 1);
  std::vector<Word> out;
  do {
    out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

inline int at(const Word& w, int i) { return w[static_cast<std::size_t>(i - 1)]; }
inline int size(const Word& w) { return static_cast<int>(w.size()); }
// sigma_0 = sigma_{n+1} = +infinity
inline long ext(const Word& w, int i) {
  if (i < 1 || i > size(w)) return 1L << 40;
  return at(w, i);
}

inline int des(const Word& w) {
  int c = 0;
  for (int i = 1; i < size(w); ++i) c += at(w, i) > at(w, i + 1);
  return c;
}
inline int inv(const Word& w) {
  int c = 0;
  for (int i = 1; i <= size(w); ++i)
    for (int j = i + 1; j <= size(w); ++j) c += at(w, i) > at(w, j);
  return c;
}
inline int maj(const Word& w) {
  int c = 0;
  for (int i = 1; i < size(w); ++i)
    if (at(w, i) > at(w, i + 1)) c += i;
  return c;
}
inline int exc(const Word& w) {
  int c = 0;
  for (int i = 1; i <= size(w); ++i) c += at(w, i) > i;
  return c;
}
inline int fix(const Word& w) {
  int c = 0;
  for (int i = 1; i <= size(w); ++i) c += at(w, i) == i;
  return c;
}
inline int drop(const Word& w) {
  int c = 0;
  for (int i = 2; i <= size(w); ++i) c += at(w, i) < i;
  return c;
}
inline int ai(const Word& w) {
  int c = 0;
  for (int i = 1; i <= size(w); ++i)
    for (int j = i + 1; j <= size(w); ++j) {
      if (at(w, i) <= at(w, j)) continue;
      bool ok = i > 1 && at(w, i - 1) < at(w, i);
      for (int k = i + 1; k < j && !ok; ++k) ok = at(w, k) > at(w, i);
      c += ok;
    }
  return c;
}
// non-initial double descents
inline int dd(const Word& w) {
  int c = 0;
  for (int i = 2; i <= size(w); ++i) c += ext(w, i - 1) > ext(w, i) && ext(w, i) > ext(w, i + 1);
  return c;
}
inline bool prw(const Word& w) {
  int low = *std::min_element(w.begin(), w.end());
  for (int i = 1; i < size(w); ++i)
    if (at(w, i) < at(w, i + 1)) return at(w, i) == low;
  return true;
}

inline int inverse_at(const Word& w, int v) {
  for (int i = 1; i <= size(w); ++i)
    if (at(w, i) == v) return i;
  return 0;
}

struct Cycle {
  int cvalley = 0, cpeak = 0, cdrise = 0, cdfall = 0, fix = 0;
};
inline Cycle cycle_stats(const Word& w) {
  Cycle c;
  for (int i = 1; i <= size(w); ++i) {
    const int before = inverse_at(w, i);
    const int after = at(w, i);
    if (after == i) ++c.fix;
    else if (before > i && i < after) ++c.cvalley;
    else if (before < i && i > after) ++c.cpeak;
    else if (before < i && i < after) ++c.cdrise;
    else ++c.cdfall;
  }
  return c;
}

inline int cros(const Word& w) {
  int c = 0;
  for (int i = 1; i <= size(w); ++i)
    for (int j = 1; j <= size(w); ++j) {
      const int si = at(w, i), sj = at(w, j);
      c += (i < j && j <= si && si < sj) || (i > j && j > si && si > sj);
    }
  return c;
}
inline int nest(const Word& w) {
  int c = 0;
  for (int i = 1; i <= size(w); ++i)
    for (int j = 1; j <= size(w); ++j) {
      const int si = at(w, i), sj = at(w, j);
      c += (i < j && j <= sj && sj < si) || (i > j && j > sj && sj > si);
    }
  return c;
}
inline int p231(const Word& w) {
  int c = 0;
  for (int i = 1; i <= size(w) - 1; ++i)
    for (int j = i + 1; j <= size(w) - 1; ++j) c += at(w, j + 1) < at(w, i) && at(w, i) < at(w, j);
  return c;
}
inline int p312(const Word& w) {
  int c = 0;
  for (int i = 2; i <= size(w); ++i)
    for (int j = i + 1; j <= size(w); ++j) c += at(w, i) < at(w, j) && at(w, j) < at(w, i - 1);
  return c;
}
inline int fmax(const Word& w) {
  int c = 0;
  for (int i = 1; i <= size(w); ++i) {
    bool ltr = true;
    for (int j = 1; j < i; ++j) ltr = ltr && at(w, j) < at(w, i);
    c += ltr && at(w, i) < ext(w, i + 1);
  }
  return c;
}

inline MultiPoly mono(std::initializer_list<std::pair<Var, int>> powers) {
  Monomial m;
  for (const auto& [v, e] : powers) m.set(v, m[v] + static_cast<unsigned>(e));
  return MultiPoly(m, Coeff(1));
}

/// Sum over S_n of the monomial produced by `weight`.
inline MultiPoly sum_sn(int n, const std::function<MultiPoly(const Word&)>& weight) {
  MultiPoly total;
  for (const auto& w : all_perms(n)) total += weight(w);
  return total;
}

/// [n k]_q as a generating function of k-subsets of [n] by sum - k(k+1)/2.
inline MultiPoly q_binomial(int n, int k) {
  if (k < 0 || k > n) return MultiPoly();
  MultiPoly total;
  std::vector<bool> pick(static_cast<std::size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    int s = 0;
    for (int i = 0; i < n; ++i)
      if (pick[static_cast<std::size_t>(i)]) s += i + 1;
    total += MultiPoly::var(Var::q, static_cast<unsigned>(s - k * (k + 1) / 2));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return total;
}

/// Eulerian numbers from the alternating closed formula.
inline Coeff eulerian_number(int n, int k) {
  Coeff total = 0;
  for (int j = 0; j <= k + 1; ++j) {
    Coeff b = 1;
    for (int i = 0; i < j; ++i) b = b * (n + 1 - i) / (i + 1);
    Coeff p = 1;
    for (int i = 0; i < n; ++i) p *= (k + 1 - j);
    if (j % 2 == 0) total += b * p;
    else total -= b * p;
  }
  return total;
}

/// sum_w t^{des w} q^{ai w} over PRW_{n+1}.
inline MultiPoly prw_des_ai(int n) {
  MultiPoly total;
  for (const auto& w : all_perms(n + 1))
    if (prw(w)) total += mono({{Var::t, des(w)}, {Var::q, ai(w)}});
  return total;
}

/// Explicit enumeration of weighted Motzkin paths of length N.
inline MultiPoly motzkin_sum(unsigned N, const std::function<MultiPoly(unsigned)>& b,
                             const std::function<MultiPoly(unsigned)>& lam) {
  MultiPoly total;
  std::function<void(unsigned, unsigned, MultiPoly)> walk = [&](unsigned step, unsigned h,
                                                                MultiPoly w) {
    if (h > N - step) return;
    if (step == N) {
      total += w;
      return;
    }
    walk(step + 1, h + 1, w);
    walk(step + 1, h, w * b(h));
    if (h > 0) walk(step + 1, h - 1, w * lam(h));
  };
  walk(0, 0, MultiPoly(1));
  return total;
}

}  // namespace oracle
