#include "eulerian/permstats.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace eulerian::perm {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

void check_distinct_positive(const std::vector<int>& word) {
  std::vector<int> sorted = word;
  std::sort(sorted.begin(), sorted.end());
  if (!sorted.empty() && sorted.front() <= 0) {
    throw std::invalid_argument("permutation letters must be positive integers");
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("permutation letters must be pairwise distinct");
  }
}

int parse_int(std::string_view token) {
  if (token.empty() || token.size() > 9 ||
      !std::all_of(token.begin(), token.end(), [](char ch) { return std::isdigit(ch); })) {
    throw std::invalid_argument("bad permutation letter '" + std::string(token) + "'");
  }
  return std::stoi(std::string(token));
}

void require_standard(const Permutation& pi) {
  if (!pi.is_standard()) {
    throw std::invalid_argument("statistic needs a permutation of [n], got " + pi.to_string());
  }
}

std::uint64_t pack(std::span<const int> word) {
  std::uint64_t key = 0;
  for (int letter : word) key = key * 16 + static_cast<std::uint64_t>(letter);
  return key;
}

}  // namespace

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<int> word) : word_(std::move(word)) {
  check_distinct_positive(word_);
}

Permutation Permutation::identity(int n) {
  std::vector<int> word(static_cast<std::size_t>(std::max(n, 0)));
  std::iota(word.begin(), word.end(), 1);
  return Permutation(std::move(word));
}

Permutation Permutation::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.find('(') != std::string_view::npos) return from_cycles(text);

  std::vector<int> word;
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t comma = std::min(text.find(',', start), text.size());
      std::string_view token = text.substr(start, comma - start);
      while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
      while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
      word.push_back(parse_int(token));
      start = comma + 1;
    }
  } else {
    for (char ch : text) {
      if (ch < '1' || ch > '9') {
        throw std::invalid_argument("bad permutation string '" + std::string(text) +
                                    "' (use commas for letters above 9)");
      }
      word.push_back(ch - '0');
    }
  }
  return Permutation(std::move(word));
}

Permutation Permutation::from_cycles(std::string_view text, int n) {
  std::vector<std::vector<int>> cycle_list;
  std::vector<int> current;
  std::string token;
  bool open = false;
  auto flush_token = [&] {
    if (!token.empty()) {
      current.push_back(parse_int(token));
      token.clear();
    }
  };
  for (char ch : text) {
    if (ch == '(') {
      if (open) throw std::invalid_argument("nested parenthesis in cycle form");
      open = true;
    } else if (ch == ')') {
      if (!open) throw std::invalid_argument("unbalanced parenthesis in cycle form");
      flush_token();
      if (current.empty()) throw std::invalid_argument("empty cycle");
      cycle_list.push_back(std::move(current));
      current.clear();
      open = false;
    } else if (ch == ' ' || ch == ',') {
      flush_token();
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      if (!open) throw std::invalid_argument("letter outside a cycle");
      // Without separators each digit is its own letter, as in "(1462)".
      token.push_back(ch);
    } else {
      throw std::invalid_argument(std::string("unexpected character '") + ch + "' in cycle form");
    }
  }
  if (open) throw std::invalid_argument("unbalanced parenthesis in cycle form");

  // "(1462)" style: a single multi-digit token inside a cycle means digits.
  int largest = n;
  std::vector<std::vector<int>> expanded;
  for (const auto& cycle : cycle_list) {
    std::vector<int> letters;
    if (cycle.size() == 1 && cycle.front() > 9 && text.find(' ') == std::string_view::npos &&
        text.find(',') == std::string_view::npos) {
      for (char ch : std::to_string(cycle.front())) letters.push_back(ch - '0');
    } else {
      letters = cycle;
    }
    for (int letter : letters) {
      if (letter <= 0) throw std::invalid_argument("cycle letters must be positive");
      largest = std::max(largest, letter);
    }
    expanded.push_back(std::move(letters));
  }

  std::vector<int> word(static_cast<std::size_t>(largest), 0);
  for (const auto& cycle : expanded) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      int& slot = word[static_cast<std::size_t>(cycle[i] - 1)];
      if (slot != 0) throw std::invalid_argument("letter repeated in cycle form");
      slot = cycle[(i + 1) % cycle.size()];
    }
  }
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] == 0) word[i] = static_cast<int>(i) + 1;
  }
  return Permutation(std::move(word));
}

int Permutation::min_letter() const {
  return word_.empty() ? 0 : *std::min_element(word_.begin(), word_.end());
}

bool Permutation::is_standard() const {
  const int n = size();
  return std::all_of(word_.begin(), word_.end(), [n](int x) { return x >= 1 && x <= n; });
}

std::string Permutation::to_string() const {
  const bool digits = std::all_of(word_.begin(), word_.end(), [](int x) { return x <= 9; });
  std::string out;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (!digits && i > 0) out += ',';
    out += std::to_string(word_[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Statistics

LetterKind classify(std::span<const int> word, std::size_t i) {
  const int x = word[i];
  const int left = i == 0 ? kInf : word[i - 1];
  const int right = i + 1 == word.size() ? kInf : word[i + 1];
  if (left < x) return x < right ? LetterKind::DoubleAscent : LetterKind::Peak;
  return x < right ? LetterKind::Valley : LetterKind::DoubleDescent;
}

LinearStats linear_stats(std::span<const int> w) {
  LinearStats s;
  const std::size_t n = w.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (w[i] > w[i + 1]) {
      ++s.des;
      s.maj += static_cast<int>(i) + 1;
    } else {
      ++s.asc;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const bool rise_before = i > 0 && w[i - 1] < w[i];
    bool bigger_between = false;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (w[i] > w[j]) {
        ++s.inv;
        if (rise_before || bigger_between) ++s.ai;
      } else {
        bigger_between = true;
      }
    }
  }
  int running_max = 0;
  for (std::size_t i = 0; i < n; ++i) {
    switch (classify(w, i)) {
      case LetterKind::Peak: ++s.peak; break;
      case LetterKind::Valley: ++s.valley; break;
      case LetterKind::DoubleAscent: ++s.da; break;
      case LetterKind::DoubleDescent:
        if (i == 0) {
          s.initial_dd = true;
        } else {
          ++s.dd;
        }
        break;
    }
    const int next = i + 1 == n ? kInf : w[i + 1];
    if (w[i] > running_max && w[i] < next) ++s.fmax;
    running_max = std::max(running_max, w[i]);
  }
  // sigma_2 = +infinity when n == 1
  const int first_rise = n == 0 ? 0 : (n == 1 || w[0] < w[1]) ? 1 : 0;
  s.da_star = s.da + first_rise;
  s.valley_star = s.valley - first_rise;

  for (std::size_t j = 1; j + 1 < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (w[j + 1] < w[i] && w[i] < w[j]) ++s.p231;
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (w[i] < w[j] && w[j] < w[i - 1]) ++s.p312;
    }
  }
  return s;
}

LinearStats linear_stats(const Permutation& pi) { return linear_stats(pi.word()); }

StatBundle stats(std::span<const int> w) {
  StatBundle s;
  static_cast<LinearStats&>(s) = linear_stats(w);
  const int n = static_cast<int>(w.size());
  // sigma(i) = w[i-1]; inverse[v] = position of v
  std::vector<int> inverse(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) inverse[static_cast<std::size_t>(w[i - 1])] = i;

  for (int i = 1; i <= n; ++i) {
    const int image = w[i - 1];
    if (image > i) ++s.exc;
    if (image < i) ++s.drop;
    if (image == i) {
      ++s.fix;
      continue;
    }
    const int pre = inverse[static_cast<std::size_t>(i)];
    if (pre < i && i > image) ++s.cpeak;
    if (pre > i && i < image) ++s.cvalley;
    if (pre < i && i < image) ++s.cdrise;
    if (pre > i && i > image) ++s.cdfall;
  }
  for (int i = 1; i <= n; ++i) {
    const int si = w[i - 1];
    for (int j = 1; j <= n; ++j) {
      const int sj = w[j - 1];
      if ((i < j && j <= si && si < sj) || (i > j && j > si && si > sj)) ++s.cros;
      if ((i < j && j <= sj && sj < si) || (i > j && j > sj && sj > si)) ++s.nest;
    }
  }
  return s;
}

StatBundle stats(const Permutation& pi) {
  require_standard(pi);
  return stats(pi.word());
}

std::vector<std::pair<std::string, int>> named_fields(const StatBundle& s) {
  return {{"des", s.des},         {"asc", s.asc},
          {"exc", s.exc},         {"inv", s.inv},
          {"maj", s.maj},         {"ai", s.ai},
          {"dd", s.dd},           {"da", s.da},
          {"da_star", s.da_star}, {"peak", s.peak},
          {"valley", s.valley},   {"valley_star", s.valley_star},
          {"cpeak", s.cpeak},     {"cvalley", s.cvalley},
          {"cdrise", s.cdrise},   {"cdfall", s.cdfall},
          {"fix", s.fix},         {"cros", s.cros},
          {"nest", s.nest},       {"drop", s.drop},
          {"p231", s.p231},       {"p312", s.p312},
          {"fmax", s.fmax}};
}

bool is_prw(std::span<const int> word) {
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    if (word[i] < word[i + 1]) {
      return word[i] == *std::min_element(word.begin(), word.end());
    }
  }
  return true;
}

bool is_prw(const Permutation& pi) { return is_prw(pi.word()); }

// ---------------------------------------------------------------------------
// Enumeration

SymmetricGroupView::iterator::iterator(int n) : done_(false) {
  word_.resize(static_cast<std::size_t>(std::max(n, 0)));
  std::iota(word_.begin(), word_.end(), 1);
}

SymmetricGroupView::iterator& SymmetricGroupView::iterator::operator++() {
  done_ = !std::next_permutation(word_.begin(), word_.end());
  return *this;
}

SymmetricGroupView gen_sn(int n) {
  if (n < 0) throw std::invalid_argument("negative permutation size");
  return SymmetricGroupView(n);
}

namespace {
std::atomic<int> g_jobs{1};
}  // namespace

void set_jobs(int jobs) { g_jobs = std::max(1, jobs); }
int jobs() { return g_jobs; }

Tally tally(int n, const KeyFn& key) {
  Tally total;
  if (n <= 0) {
    StatKey k;
    if (key(std::span<const int>{}, k)) ++total[k];
    return total;
  }

  auto run_block = [n, &key](int first, Tally& out) {
    std::vector<int> word;
    word.reserve(static_cast<std::size_t>(n));
    word.push_back(first);
    for (int x = 1; x <= n; ++x) {
      if (x != first) word.push_back(x);
    }
    StatKey k;
    do {
      k.clear();
      if (key(word, k)) ++out[k];
    } while (std::next_permutation(word.begin() + 1, word.end()));
  };

  const int workers = std::min(jobs(), n);
  if (workers <= 1) {
    for (int first = 1; first <= n; ++first) run_block(first, total);
    return total;
  }

  std::vector<Tally> partial(static_cast<std::size_t>(workers));
  std::atomic<int> next_first{1};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int first = next_first++; first <= n; first = next_first++) {
        run_block(first, partial[static_cast<std::size_t>(w)]);
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& part : partial) {
    for (const auto& [k, count] : part) total[k] += count;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Modified Foata-Strehl action

Permutation mfs_hop(const Permutation& sigma, int x) {
  const auto w = sigma.word();
  const auto it = std::find(w.begin(), w.end(), x);
  if (it == w.end()) {
    throw std::invalid_argument("letter " + std::to_string(x) + " not in " + sigma.to_string());
  }
  const std::size_t pos = static_cast<std::size_t>(it - w.begin());
  std::size_t left = pos;  // w2 = w[left, pos)
  while (left > 0 && w[left - 1] < x) --left;
  std::size_t right = pos + 1;  // w3 = w[pos+1, right)
  while (right < w.size() && w[right] < x) ++right;

  std::vector<int> out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(left));
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(pos) + 1,
             w.begin() + static_cast<std::ptrdiff_t>(right));
  out.push_back(x);
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(left),
             w.begin() + static_cast<std::ptrdiff_t>(pos));
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(right), w.end());
  return Permutation(std::move(out));
}

Permutation mfs_hop_prime(const Permutation& sigma, int x) {
  const auto w = sigma.word();
  const auto it = std::find(w.begin(), w.end(), x);
  if (it == w.end()) {
    throw std::invalid_argument("letter " + std::to_string(x) + " not in " + sigma.to_string());
  }
  const auto kind = classify(w, static_cast<std::size_t>(it - w.begin()));
  if (kind == LetterKind::Peak || kind == LetterKind::Valley) return sigma;
  return mfs_hop(sigma, x);
}

Orbit mfs_orbit(const Permutation& sigma) {
  std::set<Permutation> seen{sigma};
  std::vector<Permutation> frontier{sigma};
  while (!frontier.empty()) {
    Permutation current = std::move(frontier.back());
    frontier.pop_back();
    for (int x : current.word()) {
      Permutation next = mfs_hop_prime(current, x);
      if (seen.insert(next).second) frontier.push_back(std::move(next));
    }
  }

  Orbit orbit;
  orbit.members.assign(seen.begin(), seen.end());
  int reps = 0;
  for (const auto& member : orbit.members) {
    const auto s = linear_stats(member);
    if (s.dd == 0 && !s.initial_dd) {
      if (reps++ == 0) orbit.representative = member;
    }
  }
  if (reps != 1) {
    throw std::logic_error("orbit of " + sigma.to_string() + " has " + std::to_string(reps) +
                           " members without double descents");
  }
  const auto w = sigma.word();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto kind = classify(w, i);
    if (kind == LetterKind::DoubleAscent || kind == LetterKind::DoubleDescent) {
      ++orbit.movable_letters;
    }
  }
  return orbit;
}

std::vector<Orbit> prw_orbits(int n) {
  std::vector<Orbit> out;
  std::unordered_set<std::uint64_t> visited;
  for (const auto& pi : gen_prw(n)) {
    if (visited.contains(pack(pi.word()))) continue;
    Orbit orbit = mfs_orbit(pi);
    for (const auto& member : orbit.members) visited.insert(pack(member.word()));
    out.push_back(std::move(orbit));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Foata's first fundamental transformation

std::vector<std::vector<int>> cycles(const Permutation& sigma) {
  require_standard(sigma);
  const auto w = sigma.word();
  std::vector<bool> done(w.size() + 1, false);
  std::vector<std::vector<int>> out;
  for (int start = 1; start <= sigma.size(); ++start) {
    if (done[static_cast<std::size_t>(start)]) continue;
    std::vector<int> cycle;
    for (int x = start; !done[static_cast<std::size_t>(x)]; x = w[static_cast<std::size_t>(x - 1)]) {
      done[static_cast<std::size_t>(x)] = true;
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

Permutation foata_first(const Permutation& sigma) {
  auto cs = cycles(sigma);
  for (auto& cycle : cs) {
    std::rotate(cycle.begin(), std::max_element(cycle.begin(), cycle.end()), cycle.end());
  }
  std::sort(cs.begin(), cs.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  std::vector<int> word;
  for (const auto& cycle : cs) word.insert(word.end(), cycle.begin(), cycle.end());
  return Permutation(std::move(word));
}

}  // namespace eulerian::perm
