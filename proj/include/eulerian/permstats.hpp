/**
 * @file permstats.hpp
 * @brief Permutations, their statistics, the structured subsets used by the
 *        gamma expansions, the modified Foata-Strehl action and Foata's first
 *        fundamental transformation.
 *
 * Positions are 1-based in all statistic definitions; the word is stored
 * 0-based.  Neighbourhood statistics (dd, da, peak, valley, fmax) use the
 * boundary convention sigma_0 = sigma_{n+1} = +infinity.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <map>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eulerian::perm {

/// One-line word of distinct positive integers.
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument on duplicate or non-positive letters.
  explicit Permutation(std::vector<int> word);

  static Permutation identity(int n);

  /// "63157248", "10,2,1,...", or cycle form "(1 4 6 2)(3)(5 7)".
  static Permutation parse(std::string_view text);
  /// Cycle form over [n]; n defaults to the largest letter seen.
  static Permutation from_cycles(std::string_view text, int n = 0);

  int size() const { return static_cast<int>(word_.size()); }
  bool empty() const { return word_.empty(); }
  int operator[](std::size_t i) const { return word_[i]; }
  std::span<const int> word() const { return word_; }

  int min_letter() const;
  /// Ground set is exactly {1,...,n}.
  bool is_standard() const;

  /// Digit string when n <= 9 and all letters are single digits, otherwise
  /// comma-separated.
  std::string to_string() const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> word_;
};

/// Statistics defined through relative order of letters; valid on any
/// ground set.
struct LinearStats {
  int des = 0;
  int asc = 0;
  int inv = 0;
  int maj = 0;
  int ai = 0;
  int dd = 0;  // non-initial double descents
  int da = 0;
  int da_star = 0;
  int peak = 0;
  int valley = 0;
  int valley_star = 0;
  int p231 = 0;  // occurrences of the vincular pattern 2-31
  int p312 = 0;  // occurrences of the vincular pattern 31-2
  int fmax = 0;
  bool initial_dd = false;

  friend bool operator==(const LinearStats&, const LinearStats&) = default;
};

/// Full bundle; the position and cycle statistics need ground set [n].
struct StatBundle : LinearStats {
  int exc = 0;
  int drop = 0;
  int fix = 0;
  int cpeak = 0;
  int cvalley = 0;
  int cdrise = 0;
  int cdfall = 0;
  int cros = 0;
  int nest = 0;

  friend bool operator==(const StatBundle&, const StatBundle&) = default;
};

LinearStats linear_stats(std::span<const int> word);
LinearStats linear_stats(const Permutation& pi);

/// Word must be a permutation of [n] (unchecked in the span overload).
StatBundle stats(std::span<const int> word);
/// Throws std::invalid_argument unless the ground set is [n].
StatBundle stats(const Permutation& pi);

/// Name/value pairs in a fixed order, for JSON output.
std::vector<std::pair<std::string, int>> named_fields(const StatBundle& s);

/// First ascent, if any, sits at the minimum letter.
bool is_prw(std::span<const int> word);
bool is_prw(const Permutation& pi);

// ---------------------------------------------------------------------------
// Lazy lexicographic enumeration of S_n

class SymmetricGroupView : public std::ranges::view_interface<SymmetricGroupView> {
 public:
  class iterator {
   public:
    using iterator_concept = std::input_iterator_tag;
    using iterator_category = std::input_iterator_tag;
    using value_type = Permutation;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    explicit iterator(int n);

    Permutation operator*() const { return Permutation(word_); }
    iterator& operator++();
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const { return done_; }

   private:
    std::vector<int> word_;
    bool done_ = true;
  };

  SymmetricGroupView() = default;
  explicit SymmetricGroupView(int n) : n_(n) {}

  iterator begin() const { return iterator(n_); }
  std::default_sentinel_t end() const { return {}; }

 private:
  int n_ = 0;
};

/// All of S_n in lexicographic order (S_0 has the empty permutation).
SymmetricGroupView gen_sn(int n);

inline auto gen_prw(int n) {
  return gen_sn(n) | std::views::filter([](const Permutation& p) { return is_prw(p); });
}

/// Gamma_{n,k}: dd == 0, sigma_1 < sigma_2, des == k.  Empty for n < 2.
inline auto gen_gamma(int n, int k) {
  return gen_sn(n) | std::views::filter([n, k](const Permutation& p) {
           if (n < 2 || p[0] > p[1]) return false;
           const auto s = linear_stats(p);
           return s.dd == 0 && s.des == k;
         });
}

/// Gamma-tilde_{n,k}: dd == 0, des == k.
inline auto gen_tilde_gamma(int n, int k) {
  return gen_sn(n) | std::views::filter([k](const Permutation& p) {
           const auto s = linear_stats(p);
           return s.dd == 0 && s.des == k;
         });
}

/// Gamma-hat_{n,k}: cdfall == 0, drop == k.
inline auto gen_hat_gamma(int n, int k) {
  return gen_sn(n) | std::views::filter([k](const Permutation& p) {
           const auto s = stats(p);
           return s.cdfall == 0 && s.drop == k;
         });
}

// ---------------------------------------------------------------------------
// Parallel tallies over S_n

/// Sets the worker count used by tally(); 1 (the default) runs inline.
void set_jobs(int jobs);
int jobs();

using StatKey = std::vector<int>;
using Tally = std::map<StatKey, std::uint64_t>;
/// Returns false to skip the permutation, otherwise fills the key.
using KeyFn = std::function<bool(std::span<const int> word, StatKey& key)>;

/// Counts permutations of [n] by key.  S_n is split by first letter across
/// workers; the merged tally does not depend on the split.
Tally tally(int n, const KeyFn& key);

// ---------------------------------------------------------------------------
// Modified Foata-Strehl action

enum class LetterKind { Peak, Valley, DoubleAscent, DoubleDescent };

/// Classification of the letter at 0-based position i, with +infinity on
/// both sides.
LetterKind classify(std::span<const int> word, std::size_t i);

/// phi_x: moves x across the maximal runs of smaller letters around it.
Permutation mfs_hop(const Permutation& sigma, int x);

/// phi'_x: phi_x on double ascents/descents (the initial double descent
/// included), identity on peaks and valleys.
Permutation mfs_hop_prime(const Permutation& sigma, int x);

struct Orbit {
  std::vector<Permutation> members;  // sorted lexicographically
  Permutation representative;        // the member with no double descents
  int movable_letters = 0;           // double ascents + double descents of any member
};

/// Closure of sigma under every phi'_x.  Throws std::logic_error if the
/// orbit does not contain exactly one member free of double descents.
Orbit mfs_orbit(const Permutation& sigma);

/// Every orbit of PRW_n, ordered by smallest member.
std::vector<Orbit> prw_orbits(int n);

// ---------------------------------------------------------------------------
// Foata's first fundamental transformation

/// Cycles written largest-first, ordered by increasing largest element,
/// parentheses erased.  Requires ground set [n].
Permutation foata_first(const Permutation& sigma);

/// Cycle decomposition with each cycle starting at its smallest element.
std::vector<std::vector<int>> cycles(const Permutation& sigma);

}  // namespace eulerian::perm
