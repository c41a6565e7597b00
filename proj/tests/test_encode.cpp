#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wb/encode.hpp"

#include <random>

using namespace wb;
using namespace wb::encode;

namespace {

BairePoint random_binary_table(std::mt19937_64& rng, std::size_t max_prefix = 8) {
  std::vector<Nat> prefix;
  std::size_t len = rng() % (max_prefix + 1);
  for (std::size_t i = 0; i < len; ++i) prefix.push_back(Nat(rng() % 2));
  return BairePoint::table(prefix, TailRule{TailRule::Kind::Constant, Nat(rng() % 2), {}});
}

// A worst-case valid approximation sequence for q: oscillates at the allowed
// amplitude, so downstream operations cannot lean on exactness.
Real noisy_real(const Rat& q) {
  return Real::from_approx(
      [q](int m) { return m % 2 == 0 ? q + pow2(-(m + 1)) : q - pow2(-(m + 1)); }, "noisy");
}

}  // namespace

TEST_CASE("finite sequence codes round-trip") {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 300; ++it) {
    std::size_t len = rng() % 13;
    std::vector<Nat> entries;
    for (std::size_t i = 0; i < len; ++i) entries.push_back(Nat(rng() % 256));
    FinSeq s(entries);
    CHECK(FinSeq::decode(s.code()) == s);
  }
  CHECK(FinSeq{}.code() == 0);
  CHECK(FinSeq::decode(0) == FinSeq{});
}

TEST_CASE("concatenation adds lengths and codes stay distinct") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 100; ++it) {
    std::vector<Nat> a, b;
    for (std::size_t i = 0; i < rng() % 6; ++i) a.push_back(Nat(rng() % 16));
    for (std::size_t i = 0; i < rng() % 6; ++i) b.push_back(Nat(rng() % 16));
    FinSeq sa(a), sb(b);
    CHECK(sa.concat(sb).size() == sa.size() + sb.size());
    if (!(sa == sb)) CHECK(sa.code() != sb.code());
  }
}

TEST_CASE("initial segments extend coherently") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 50; ++it) {
    BairePoint f = random_binary_table(rng);
    for (std::size_t n : {0u, 1u, 5u, 31u, 64u}) {
      FinSeq bar_n = initial_segment(f, n);
      CHECK(bar_n.append(f(Nat(n))) == initial_segment(f, n + 1));
    }
  }
}

TEST_CASE("table points answer queries consistently") {
  BairePoint f = BairePoint::table({Nat(3), Nat(1)},
                                   TailRule{TailRule::Kind::Periodic, 0, {Nat(0), Nat(7)}});
  CHECK(f(0) == 3);
  CHECK(f(1) == 1);
  CHECK(f(2) == 0);
  CHECK(f(3) == 7);
  CHECK(f(4) == 0);
  std::mt19937_64 rng(11);
  for (int it = 0; it < 10000; ++it) {
    Nat n(rng() % 1000);
    Nat a = f(n);
    CHECK(a == f(n));
  }
}

TEST_CASE("canonical codes survive a round-trip and normalization collapses variants") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 100; ++it) {
    BairePoint f = random_binary_table(rng);
    BairePoint g = BairePoint::from_code(f.canonical_code());
    for (int i = 0; i < 40; ++i) CHECK(f(Nat(i)) == g(Nat(i)));
  }
  // The same point written with a redundant prefix or doubled period.
  BairePoint a = BairePoint::table({}, TailRule{TailRule::Kind::Periodic, 0, {Nat(0), Nat(1)}});
  BairePoint b = BairePoint::table({Nat(0), Nat(1)},
                                   TailRule{TailRule::Kind::Periodic, 0, {Nat(0), Nat(1)}});
  BairePoint c = BairePoint::table(
      {}, TailRule{TailRule::Kind::Periodic, 0, {Nat(0), Nat(1), Nat(0), Nat(1)}});
  CHECK(a.canonical_code() == b.canonical_code());
  CHECK(a.canonical_code() == c.canonical_code());
  BairePoint d = BairePoint::table({Nat(1), Nat(1)}, TailRule{TailRule::Kind::Constant, 1, {}});
  CHECK(d.canonical_code() == BairePoint::constant(1).canonical_code());
}

TEST_CASE("zero certificates on table points") {
  CHECK(*BairePoint::constant(0).decidable_has_zero());
  CHECK_FALSE(*BairePoint::constant(1).decidable_has_zero());
  BairePoint f = BairePoint::table({Nat(2), Nat(0)}, TailRule{TailRule::Kind::Constant, 1, {}});
  CHECK(*f.decidable_has_zero());
  CHECK(*f.least_zero_in_table() == 1);
  BairePoint g = BairePoint::table({Nat(2)}, TailRule{TailRule::Kind::Periodic, 0, {Nat(1), Nat(0)}});
  CHECK(*g.least_zero_in_table() == 2);
  CHECK_FALSE(BairePoint::host([](const Nat&) { return Nat(1); }).decidable_has_zero().has_value());
}

TEST_CASE("lexicographic comparison against zero-padded prefixes is decidable") {
  BairePoint f = BairePoint::table({Nat(1), Nat(0), Nat(1)},
                                   TailRule{TailRule::Kind::Constant, 0, {}});
  CHECK(geq_lex_zero_padded(f, {1, 0, 1}));
  CHECK(geq_lex_zero_padded(f, {1, 0, 0}));
  CHECK(geq_lex_zero_padded(f, {0, 1, 1}));  // first difference is a 1 in f
  CHECK_FALSE(geq_lex_zero_padded(f, {1, 1}));
  CHECK(geq_lex_zero_padded(f, {}));
}

TEST_CASE("lex order is total on distinct table points") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 200; ++it) {
    BairePoint f = random_binary_table(rng);
    BairePoint g = random_binary_table(rng);
    int cmp = lex_compare_bounded(f, g, 64);
    CHECK(cmp == -lex_compare_bounded(g, f, 64));
    // Points that agree to depth 64 have periods within it; equal reals.
    if (cmp == 0) CHECK(*cantor_real(f).exact() == *cantor_real(g).exact());
  }
}

TEST_CASE("lex order matches the coded real when points differ at finite support") {
  // Same tail, finitely many mutated positions: the first difference decides
  // both the lex order and the order of the coded reals. (With different
  // tails this fails: 1000... and 0111... code the same real.)
  std::mt19937_64 rng(19);
  for (int it = 0; it < 200; ++it) {
    BairePoint f = random_binary_table(rng);
    std::vector<Nat> prefix;
    std::size_t len = 1 + rng() % 8;
    for (std::size_t i = 0; i < len; ++i) prefix.push_back(f(Nat(i)));
    std::size_t flips = 1 + rng() % 3;
    for (std::size_t i = 0; i < flips; ++i) {
      std::size_t at = rng() % len;
      prefix[at] = prefix[at] == 0 ? 1 : 0;
    }
    BairePoint g = BairePoint::table(prefix, *f.tail());
    int cmp = lex_compare_bounded(f, g, 64);
    Rat xf = *cantor_real(f).exact();
    Rat xg = *cantor_real(g).exact();
    if (cmp < 0) CHECK(xf < xg);
    if (cmp > 0) CHECK(xf > xg);
    if (cmp == 0) CHECK(xf == xg);
  }
}

TEST_CASE("approximations meet their error bound") {
  Real half = Real::from_rational(Rat(1, 2));
  CHECK(boost::multiprecision::abs(approx(half, 10) - Rat(1, 2)) <= pow2(-11));
  CHECK(approx(Real::from_rational(0), 5) == 0);
  Real sum = noisy_real(Rat(1, 3)) + noisy_real(Rat(1, 6));
  CHECK(boost::multiprecision::abs(approx(sum, 20) - Rat(1, 2)) <= pow2(-21));
}

TEST_CASE("arithmetic keeps the fast-Cauchy contract on noisy inputs") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 20; ++it) {
    Rat a(static_cast<long>(rng() % 2000) - 1000, 1 + rng() % 50);
    Rat b(static_cast<long>(rng() % 2000) - 1000, 1 + rng() % 50);
    Real x = noisy_real(a), y = noisy_real(b);
    auto check_real = [](const Real& r, const Rat& truth) {
      for (int m = 0; m <= 16; m += 4)
        CHECK(boost::multiprecision::abs(r.approx(m) - truth) <= pow2(-(m + 1)));
    };
    check_real(x + y, a + b);
    check_real(x - y, a - b);
    check_real(x * y, a * b);
    check_real(x.abs(), boost::multiprecision::abs(a));
    check_real(Real::min(x, y), std::min(a, b));
    check_real(Real::max(x, y), std::max(a, b));
    check_real(x.scale(Rat(3, 7)), a * Rat(3, 7));
  }
}

TEST_CASE("hat normalization preserves valid sequences and repairs jumps") {
  // Constant rational 1/2 at every index.
  BairePoint half = BairePoint::constant(rat_code(Rat(1, 2)));
  Real r = hat_normalize(half);
  for (int m = 0; m <= 12; ++m)
    CHECK(boost::multiprecision::abs(r.approx(m) - Rat(1, 2)) <= pow2(-(m + 1)));

  // All zeros code the zero real.
  CHECK(hat_normalize(BairePoint::constant(0)).approx(10) == 0);

  // A pairwise fast-Cauchy sequence that oscillates: value preserved.
  BairePoint osc = BairePoint::host(
      [](const Nat& m) {
        long i = static_cast<long>(to_u64(m));
        Rat q = Rat(1, 2) + (i % 2 == 0 ? pow2(-(i + 2)) : -pow2(-(i + 2)));
        return rat_code(q);
      },
      "osc");
  Real ro = hat_normalize(osc);
  for (int m = 0; m <= 16; ++m)
    CHECK(boost::multiprecision::abs(ro.approx(m) - Rat(1, 2)) <= pow2(-(m + 1)));

  // One violating jump at index 3: the value freezes at the last good entry,
  // and the output still satisfies the pairwise fast-Cauchy bound.
  BairePoint jump = BairePoint::host(
      [](const Nat& m) { return m == 3 ? rat_code(Rat(5)) : rat_code(Rat(0)); }, "jump");
  Real rj = hat_normalize(jump);
  for (int m = 0; m <= 20; ++m)
    for (int mp = m + 1; mp <= 20; ++mp)
      CHECK(boost::multiprecision::abs(rj.approx(m) - rj.approx(mp)) <=
            pow2(-(m + 1)) + pow2(-(mp + 1)));
  CHECK(rj.approx(18) == 0);  // frozen at q_2 = 0
}

TEST_CASE("tilde clamps into the unit interval and fixes [0,1] values") {
  CHECK(tilde_clamp(Real::from_rational(2)).approx(10) == 1);
  CHECK(tilde_clamp(Real::from_rational(-1)).approx(10) == 0);
  Real third = tilde_clamp(noisy_real(Rat(1, 3)));
  CHECK(third.normalized());
  for (int m = 0; m <= 16; m += 2)
    CHECK(boost::multiprecision::abs(third.approx(m) - Rat(1, 3)) <= pow2(-(m + 1)));
  // Invariant: clamped approximations never leave [0,1] by more than the slack.
  for (int m = 0; m <= 16; ++m) {
    CHECK(third.approx(m) + pow2(-(m + 1)) >= 0);
    CHECK(third.approx(m) - pow2(-(m + 1)) <= 1);
  }
}

TEST_CASE("apartness search separates distinct reals and times out on equals") {
  auto r = real_apart(Real::from_rational(0), Real::from_rational(1), 16);
  REQUIRE(std::holds_alternative<Separated>(r));
  CHECK(std::get<Separated>(r).k <= 2);

  CHECK(std::holds_alternative<OutOfFuel>(
      real_apart(noisy_real(Rat(1, 2)), noisy_real(Rat(1, 2)), 50)));

  auto close = real_apart(Real::from_rational(Rat(1, 2)),
                          Real::from_rational(Rat(1, 2) + pow2(-8)), 32);
  REQUIRE(std::holds_alternative<Separated>(close));
  CHECK(std::get<Separated>(close).k <= 9);
  // Soundness of the certificate.
  CHECK(pow2(-8) > pow2(-(std::get<Separated>(close).k + 1)));
}

TEST_CASE("the coded real of a binary point") {
  CHECK(*cantor_real(BairePoint::constant(0)).exact() == 0);
  CHECK(*cantor_real(BairePoint::constant(1)).exact() == 1);
  BairePoint one_then_zero =
      BairePoint::table({Nat(1)}, TailRule{TailRule::Kind::Constant, 0, {}});
  Real r = cantor_real(one_then_zero);
  // Series oracle at depth 30: partial sums of b(f)(n) 2^-(n+1).
  Rat partial = 0;
  for (int n = 0; n <= 30; ++n)
    if (one_then_zero(Nat(n)) != 0) partial += pow2(-(n + 1));
  CHECK(boost::multiprecision::abs(r.approx(30) - partial) <= pow2(-30));
  CHECK(*r.exact() == Rat(1, 2));
  // Nonzero entries collapse to the bit 1.
  BairePoint sevens = BairePoint::constant(7);
  CHECK(*cantor_real(sevens).exact() == 1);
  // Host-backed points go through partial sums.
  BairePoint host = BairePoint::host([](const Nat& n) { return n == 0 ? Nat(1) : Nat(0); }, "h");
  CHECK(boost::multiprecision::abs(cantor_real(host).approx(20) - Rat(1, 2)) <= pow2(-21));
}

TEST_CASE("characteristic sets answer on their carrier and adapt to oracles") {
  CharSet evens = CharSet::on_nat([](const Nat& n) { return n % 2 == 0; }, "evens");
  CHECK(evens.member_nat(4));
  CHECK_FALSE(evens.member_nat(5));
  CHECK_THROWS_AS(evens.member_real(Real::from_rational(0)), std::logic_error);
  BairePoint chi = charset_oracle(evens);
  CHECK(chi(4) == 1);
  CHECK(chi(5) == 0);
}
