#include <algorithm>
#include <set>
#include <stdexcept>

#include <doctest.h>

#include "eulerian/permstats.hpp"
#include "eulerian/polycore.hpp"
#include "oracle.hpp"

using namespace eulerian;
using perm::Permutation;

namespace {

std::vector<int> as_vector(const Permutation& p) { return {p.word().begin(), p.word().end()}; }

std::set<std::string> strings(const std::vector<Permutation>& perms) {
  std::set<std::string> out;
  for (const auto& p : perms) out.insert(p.to_string());
  return out;
}

template <class Range>
std::vector<Permutation> collect(Range&& r) {
  std::vector<Permutation> out;
  for (auto&& p : r) out.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("parsing and printing") {
  CHECK(Permutation::parse("63157248").to_string() == "63157248");
  CHECK(Permutation::parse("10,2,1").to_string() == "10,2,1");
  CHECK(Permutation::parse("(1 4 6 2)(3)(5 7)").to_string() == "4136725");
  CHECK(Permutation::from_cycles("(1 2)", 4).to_string() == "2134");
  CHECK(Permutation::parse("").empty());
  CHECK_THROWS_AS(Permutation::parse("1123"), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::parse("1a2"), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::parse("(1 2)(2 3)"), std::invalid_argument);
  CHECK(Permutation::identity(3).to_string() == "123");
  CHECK(Permutation::parse("2,4").min_letter() == 2);
  CHECK_FALSE(Permutation::parse("2,4").is_standard());
}

TEST_CASE("statistics of the worked examples") {
  const auto s3142 = perm::stats(Permutation::parse("3142"));
  CHECK(s3142.ai == 2);

  const auto s = perm::stats(Permutation::parse("42513"));
  CHECK(s.cros == 2);  // literal definition; see the crossing test below
  CHECK(s.nest == 1);
  CHECK(s.drop == 2);
  CHECK(s.p231 == 2);
  CHECK(s.p312 == 2);
  CHECK(s.fmax == 0);

  const auto c = perm::stats(Permutation::parse("(1 4 6 2)(3)(5 7)"));
  CHECK(c.cpeak == 2);
  CHECK(c.cvalley == 2);
  CHECK(c.cdrise == 1);
  CHECK(c.cdfall == 1);
  CHECK(c.fix == 1);

  const auto r = perm::stats(Permutation::parse("321"));
  CHECK(r.des == 2);
  CHECK(r.inv == 3);
  CHECK(r.maj == 3);
  CHECK(r.exc == 1);
  CHECK(r.ai == 0);

  const auto one = perm::stats(Permutation::parse("1"));
  CHECK(one.des == 0);
  CHECK(one.valley == 1);
  CHECK(one.fmax == 1);
  CHECK(one.fix == 1);
}

TEST_CASE("crossings of 42513 under the displayed definition") {
  // upper pair (1,3): 1 < 3 <= 4 < 5, lower pair (5,4): 5 > 4 > 3 > 1
  CHECK(oracle::cros({4, 2, 5, 1, 3}) == 2);
}

TEST_CASE("empty permutation") {
  const auto s = perm::stats(Permutation());
  CHECK(s.des == 0);
  CHECK(s.fix == 0);
  CHECK(perm::is_prw(Permutation()));
  CHECK(collect(perm::gen_sn(0)).size() == 1);
}

TEST_CASE("stats rejects non-standard ground sets") {
  CHECK_THROWS_AS(perm::stats(Permutation::parse("2,5")), std::invalid_argument);
  CHECK(perm::linear_stats(Permutation::parse("20,50,10")).des == 1);
}

TEST_CASE("every statistic agrees with the brute-force oracle on S_n, n <= 7") {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& p : perm::gen_sn(n)) {
      const auto w = as_vector(p);
      const auto s = perm::stats(p);
      const auto cyc = oracle::cycle_stats(w);
      REQUIRE(s.des == oracle::des(w));
      REQUIRE(s.inv == oracle::inv(w));
      REQUIRE(s.maj == oracle::maj(w));
      REQUIRE(s.exc == oracle::exc(w));
      REQUIRE(s.ai == oracle::ai(w));
      REQUIRE(s.dd == oracle::dd(w));
      REQUIRE(s.fix == oracle::fix(w));
      REQUIRE(s.drop == oracle::drop(w));
      REQUIRE(s.cvalley == cyc.cvalley);
      REQUIRE(s.cpeak == cyc.cpeak);
      REQUIRE(s.cdrise == cyc.cdrise);
      REQUIRE(s.cdfall == cyc.cdfall);
      REQUIRE(s.cros == oracle::cros(w));
      REQUIRE(s.nest == oracle::nest(w));
      REQUIRE(s.p231 == oracle::p231(w));
      REQUIRE(s.p312 == oracle::p312(w));
      REQUIRE(s.fmax == oracle::fmax(w));
      REQUIRE(perm::is_prw(p) == oracle::prw(w));
    }
  }
}

TEST_CASE("local classification invariants") {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& p : perm::gen_sn(n)) {
      const auto s = perm::stats(p);
      REQUIRE(s.peak + s.valley + s.da + s.dd + (s.initial_dd ? 1 : 0) == n);
      REQUIRE(s.exc == s.cvalley + s.cdrise);
      REQUIRE(s.asc + s.des == n - 1);
      REQUIRE(s.valley == s.peak + 1);
    }
  }
}

TEST_CASE("PRW membership") {
  CHECK(perm::is_prw(Permutation::parse("213")));
  CHECK_FALSE(perm::is_prw(Permutation::parse("231")));
  CHECK(perm::is_prw(Permutation::parse("21")));
  CHECK(perm::is_prw(Permutation::parse("4312")));
  CHECK(strings(collect(perm::gen_prw(3))) ==
        std::set<std::string>{"123", "132", "213", "312", "321"});
  std::set<std::string> des2;
  for (const auto& p : perm::gen_prw(4))
    if (perm::linear_stats(p).des == 2) des2.insert(p.to_string());
  CHECK(des2 == std::set<std::string>{"1432", "3142", "4132", "2143", "4312", "4213", "3214"});
}

TEST_CASE("|PRW_{n+1}| = 1 + sum_m C(n,m) m!") {
  for (int n = 0; n <= 7; ++n) {
    Coeff expect = 1, fact = 1;
    for (int m = 1; m <= n; ++m) {
      fact *= m;
      expect += binomial(static_cast<unsigned>(n), static_cast<unsigned>(m)) * fact;
    }
    CHECK(Coeff(static_cast<long>(collect(perm::gen_prw(n + 1)).size())) == expect);
  }
}

TEST_CASE("generators run in lexicographic order") {
  const auto s3 = collect(perm::gen_sn(3));
  REQUIRE(s3.size() == 6);
  CHECK(std::is_sorted(s3.begin(), s3.end()));
  CHECK(s3.front().to_string() == "123");
  CHECK(s3.back().to_string() == "321");
}

TEST_CASE("structured subsets") {
  CHECK(strings(collect(perm::gen_tilde_gamma(2, 1))) == std::set<std::string>{"21"});
  CHECK(strings(collect(perm::gen_tilde_gamma(2, 0))) == std::set<std::string>{"12"});
  CHECK(collect(perm::gen_gamma(1, 0)).empty());
  CHECK(strings(collect(perm::gen_gamma(3, 1))) == std::set<std::string>{"132", "231"});
  for (int n = 1; n <= 6; ++n)
    for (int k = 0; k < n; ++k)
      for (const auto& p : perm::gen_hat_gamma(n, k)) {
        const auto s = perm::stats(p);
        CHECK(s.cdfall == 0);
        CHECK(s.drop == k);
      }
}

TEST_CASE("Eulerian and Mahonian equidistributions") {
  for (int n = 1; n <= 8; ++n) {
    MultiPoly by_des, by_exc, by_inv, by_maj;
    for (const auto& p : perm::gen_sn(n)) {
      const auto s = perm::stats(p);
      by_des += MultiPoly::var(Var::t, static_cast<unsigned>(s.des));
      by_exc += MultiPoly::var(Var::t, static_cast<unsigned>(s.exc));
      by_inv += MultiPoly::var(Var::q, static_cast<unsigned>(s.inv));
      by_maj += MultiPoly::var(Var::q, static_cast<unsigned>(s.maj));
    }
    CHECK(by_des == by_exc);
    CHECK(by_inv == by_maj);
    CHECK(by_inv == q_factorial(static_cast<unsigned>(n)));
    for (int k = 0; k < n; ++k)
      CHECK(by_des.coeff(Monomial::of(Var::t, static_cast<unsigned>(k))) ==
            oracle::eulerian_number(n, k));
  }
}

TEST_CASE("parallel tallies do not depend on the worker count") {
  const perm::KeyFn key = [](std::span<const int> w, perm::StatKey& k) {
    const auto s = perm::linear_stats(w);
    k = {s.des, s.ai};
    return true;
  };
  perm::set_jobs(1);
  const auto serial = perm::tally(7, key);
  perm::set_jobs(4);
  CHECK(perm::jobs() == 4);
  const auto parallel = perm::tally(7, key);
  perm::set_jobs(1);
  CHECK(serial == parallel);
  std::uint64_t total = 0;
  for (const auto& [k, c] : serial) total += c;
  CHECK(total == 5040);
  CHECK(perm::tally(0, key).size() == 1);
}

TEST_CASE("letter classification") {
  const std::vector<int> w = {6, 3, 1, 5, 7, 2, 4, 8};
  CHECK(perm::classify(w, 0) == perm::LetterKind::DoubleDescent);
  CHECK(perm::classify(w, 2) == perm::LetterKind::Valley);
  CHECK(perm::classify(w, 3) == perm::LetterKind::DoubleAscent);
  CHECK(perm::classify(w, 4) == perm::LetterKind::Peak);
  CHECK(perm::classify(w, 7) == perm::LetterKind::DoubleAscent);
}

TEST_CASE("MFS hops") {
  const auto sigma = Permutation::parse("63157248");
  CHECK(perm::mfs_hop(sigma, 5).to_string() == "65317248");
  CHECK(perm::mfs_hop_prime(sigma, 5).to_string() == "65317248");
  CHECK(perm::mfs_hop_prime(sigma, 7) == sigma);
  CHECK(perm::mfs_hop(sigma, 1) == sigma);
  CHECK_THROWS_AS(perm::mfs_hop(sigma, 9), std::invalid_argument);
  for (int n = 1; n <= 6; ++n)
    for (const auto& p : perm::gen_sn(n))
      for (int x = 1; x <= n; ++x) {
        REQUIRE(perm::mfs_hop(perm::mfs_hop(p, x), x) == p);
        REQUIRE(perm::mfs_hop_prime(perm::mfs_hop_prime(p, x), x) == p);
      }
}

TEST_CASE("MFS orbits") {
  const auto o = perm::mfs_orbit(Permutation::parse("123"));
  CHECK(strings(o.members) == std::set<std::string>{"123", "213", "312", "321"});
  CHECK(o.representative.to_string() == "123");
  CHECK(o.members.size() == std::size_t{1} << o.movable_letters);

  const auto fixed = perm::mfs_orbit(Permutation::parse("132"));
  CHECK(fixed.members.size() == 1);
  CHECK(fixed.movable_letters == 0);

  CHECK(perm::prw_orbits(3).size() == 2);
  std::size_t covered = 0;
  for (const auto& orbit : perm::prw_orbits(3)) covered += orbit.members.size();
  CHECK(covered == 5);
}

TEST_CASE("MFS orbit structure on PRW_{n+1}, n <= 6") {
  for (int n = 0; n <= 6; ++n) {
    std::set<std::string> seen;
    std::size_t total = 0;
    for (const auto& orbit : perm::prw_orbits(n + 1)) {
      const auto ai = perm::linear_stats(orbit.representative).ai;
      int dd_free = 0;
      for (const auto& m : orbit.members) {
        REQUIRE(perm::is_prw(m));
        REQUIRE(perm::linear_stats(m).ai == ai);
        REQUIRE(seen.insert(m.to_string()).second);
        const auto s = perm::linear_stats(m);
        if (s.dd == 0 && !s.initial_dd) ++dd_free;
        for (int x = 1; x <= n + 1; ++x) REQUIRE(perm::is_prw(perm::mfs_hop_prime(m, x)));
      }
      REQUIRE(dd_free == 1);
      REQUIRE(orbit.members.size() == std::size_t{1} << orbit.movable_letters);
      const auto r = perm::linear_stats(orbit.representative);
      REQUIRE(r.des == r.peak);
      REQUIRE(r.valley == r.peak + 1);
      REQUIRE(r.da == n + 1 - r.peak - r.valley);
      total += orbit.members.size();
    }
    CHECK(total == collect(perm::gen_prw(n + 1)).size());
  }
}

TEST_CASE("Foata's first fundamental transformation") {
  CHECK(perm::foata_first(Permutation::identity(5)) == Permutation::identity(5));
  CHECK(perm::foata_first(Permutation::parse("(1 4 6 2)(3)(5 7)")).to_string() == "3621475");
  for (int n = 1; n <= 7; ++n) {
    std::set<Permutation> image;
    for (const auto& p : perm::gen_sn(n)) image.insert(perm::foata_first(p));
    CHECK(image.size() == collect(perm::gen_sn(n)).size());
  }
  CHECK_THROWS_AS(perm::foata_first(Permutation::parse("2,5")), std::invalid_argument);
}

TEST_CASE("cycle decomposition") {
  const auto c = perm::cycles(Permutation::parse("4136725"));
  REQUIRE(c.size() == 3);
  CHECK(c[0] == std::vector<int>{1, 4, 6, 2});
  CHECK(c[1] == std::vector<int>{3});
  CHECK(c[2] == std::vector<int>{5, 7});
}
