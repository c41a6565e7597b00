#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wb/funct.hpp"
#include "test_util.hpp"

#include <random>

using namespace wb;
using namespace wb::encode;
using namespace wb::funct;

namespace {

Associate host_associate(std::function<Nat(const FinSeq&)> fn) {
  return Associate{BairePoint::host(
      [fn = std::move(fn)](const Nat& code) { return fn(FinSeq::decode(code)); }, "assoc")};
}

}  // namespace

TEST_CASE("neighbourhood checks on the textbook shapes") {
  NeighbourhoodCheckParams params;
  params.depth = 6;
  params.max_entry = 3;

  Associate constant_one = host_associate([](const FinSeq&) { return Nat(1); });
  CHECK(check_neighbourhood(constant_one, params));

  Associate depth_two = host_associate(
      [](const FinSeq& sigma) { return sigma.size() >= 2 ? Nat(1) : Nat(0); });
  CHECK(check_neighbourhood(depth_two, params));

  // Stability violated at one sigma: positive value forgotten on extension.
  Associate broken = host_associate(
      [](const FinSeq& sigma) { return sigma.size() == 1 ? Nat(1) : Nat(0); });
  CHECK_FALSE(check_neighbourhood(broken, params));

  // Secured nowhere: the securing samples run out of fuel.
  Associate never = host_associate([](const FinSeq&) { return Nat(0); });
  params.securing_fuel = 64;
  CHECK_FALSE(check_neighbourhood(never, params));
}

TEST_CASE("associate evaluation returns the value at the least securing point") {
  // associate of Y(beta) = beta(0)
  Associate first = host_associate(
      [](const FinSeq& sigma) { return sigma.size() >= 1 ? Nat(sigma.at(0) + 1) : Nat(0); });
  BairePoint beta = BairePoint::table({Nat(9), Nat(3)},
                                      TailRule{TailRule::Kind::Constant, 0, {}});
  auto r = eval_associate(first, beta, 100);
  REQUIRE(std::holds_alternative<Nat>(r));
  CHECK(std::get<Nat>(r) == 9);

  Associate constant = host_associate([](const FinSeq&) { return Nat(7 + 1); });
  CHECK(std::get<Nat>(eval_associate(constant, beta, 100)) == 7);

  // associate of Y(beta) = beta(0) + beta(1) on beta = (2,3,0,...): direct
  // evaluation gives 5.
  Associate sum = host_associate([](const FinSeq& sigma) {
    return sigma.size() >= 2 ? Nat(sigma.at(0) + sigma.at(1) + 1) : Nat(0);
  });
  BairePoint two_three =
      BairePoint::table({Nat(2), Nat(3)}, TailRule{TailRule::Kind::Constant, 0, {}});
  CHECK(std::get<Nat>(eval_associate(sum, two_three, 100)) == 2 + 3);

  Associate never = host_associate([](const FinSeq&) { return Nat(0); });
  CHECK(std::holds_alternative<OutOfFuel>(eval_associate(never, beta, 50)));
}

TEST_CASE("associate soundness on generated continuous functionals") {
  std::mt19937_64 rng(101);
  for (int it = 0; it < 20; ++it) {
    testutil::GeneratedFunctional Y = testutil::random_functional(rng);
    Associate alpha = Y.associate();
    for (int s = 0; s < 25; ++s) {
      BairePoint beta = testutil::random_table_point(rng, 6);
      auto got = eval_associate(alpha, beta, 64);
      REQUIRE(std::holds_alternative<Nat>(got));
      CHECK(std::get<Nat>(got) == Y.direct_eval(beta));
    }
  }
}

TEST_CASE("exists2 finds zeros and only certifies their absence") {
  BairePoint with_zero =
      BairePoint::table({Nat(2), Nat(1), Nat(5), Nat(9), Nat(0)},
                        TailRule{TailRule::Kind::Constant, 1, {}});
  CHECK(std::get<int>(exists2(with_zero, 100)) == 0);

  BairePoint no_zero = BairePoint::table({Nat(3)}, TailRule{TailRule::Kind::Constant, 2, {}});
  CHECK(std::get<int>(exists2(no_zero, 100)) == 1);

  BairePoint periodic_no_zero =
      BairePoint::table({}, TailRule{TailRule::Kind::Periodic, 0, {Nat(1), Nat(2)}});
  CHECK(std::get<int>(exists2(periodic_no_zero, 100)) == 1);

  // Host-backed, no certificate: bounded search cannot assert 1.
  BairePoint host_one = BairePoint::host([](const Nat&) { return Nat(1); }, "ones");
  CHECK(std::holds_alternative<OutOfFuel>(exists2(host_one, 1000)));

  BairePoint host_zero_late =
      BairePoint::host([](const Nat& n) { return n == 512 ? Nat(0) : Nat(1); }, "late");
  CHECK(std::holds_alternative<OutOfFuel>(exists2(host_zero_late, 100)));
  CHECK(std::get<int>(exists2(host_zero_late, 1000)) == 0);
}

TEST_CASE("exists2 never answers 1 in the presence of a zero (mutation sweep)") {
  std::mt19937_64 rng(55);
  for (int it = 0; it < 200; ++it) {
    // Random tables mutated to contain a zero below 2^12.
    std::vector<Nat> prefix;
    std::size_t len = 1 + rng() % 40;
    for (std::size_t i = 0; i < len; ++i) prefix.push_back(Nat(1 + rng() % 9));
    prefix[rng() % len] = 0;
    bool tail_zero = rng() % 4 == 0;
    BairePoint f = BairePoint::table(
        prefix, TailRule{TailRule::Kind::Constant, tail_zero ? Nat(0) : Nat(1 + rng() % 3), {}});
    auto r = exists2(f, 1 << 13);
    REQUIRE(std::holds_alternative<int>(r));
    CHECK(std::get<int>(r) == 0);
  }
}

TEST_CASE("jump membership with witness verification") {
  Functional2OnPairs diag;
  diag.eval = [](const BairePoint& g, const Nat& n) { return g(n); };
  WitnessSearchBound bound{3, Nat(4), false};
  for (int n = 0; n < 3; ++n) {
    JumpAnswer a = jump_J(diag, Nat(n), bound);
    REQUIRE(std::holds_alternative<InJ>(a));
    CHECK(diag.eval(std::get<InJ>(a).witness, Nat(n)) == 0);
  }

  Functional2OnPairs never;
  never.eval = [](const BairePoint&, const Nat&) { return Nat(1); };
  CHECK(std::holds_alternative<UnknownJ>(jump_J(never, 0, bound)));
  WitnessSearchBound exhaustive{3, Nat(4), true};
  CHECK(std::holds_alternative<NotInJ>(jump_J(never, 0, exhaustive)));

  Functional2OnPairs sum;
  sum.eval = [](const BairePoint& g, const Nat& n) {
    return g(0) + g(1) == n ? Nat(0) : Nat(1);
  };
  WitnessSearchBound two_six{2, Nat(6), true};
  JumpAnswer a = jump_J(sum, Nat(5), two_six);
  REQUIRE(std::holds_alternative<InJ>(a));
  const BairePoint& w = std::get<InJ>(a).witness;
  CHECK(w(0) + w(1) == 5);
  // 11 has no witness under values < 6: 5+5 = 10 < 11.
  CHECK(std::holds_alternative<NotInJ>(jump_J(sum, Nat(11), two_six)));
}

TEST_CASE("jump answers agree with the independent witness scan") {
  std::mt19937_64 rng(77);
  Functional2OnPairs parity;
  parity.eval = [](const BairePoint& g, const Nat& n) {
    return (g(0) + g(1) + g(2)) % 3 == n % 3 ? Nat(0) : Nat(1);
  };
  WitnessSearchBound bound{3, Nat(4), true};
  for (int n = 0; n < 12; ++n) {
    bool expect = testutil::brute_exists_witness(parity, Nat(n), 3, 4);
    CHECK(std::holds_alternative<InJ>(jump_J(parity, Nat(n), bound)) == expect);
  }
}

TEST_CASE("fan bound exhausts the secured binary tree") {
  Associate constant = host_associate([](const FinSeq&) { return Nat(4); });
  CHECK(std::get<Nat>(fan_bound(constant, 100)) == 3);

  Associate first = host_associate(
      [](const FinSeq& sigma) { return sigma.size() >= 1 ? Nat(sigma.at(0) + 1) : Nat(0); });
  CHECK(std::get<Nat>(fan_bound(first, 100)) == 1);  // both branches enumerated

  Associate sum = host_associate([](const FinSeq& sigma) {
    return sigma.size() >= 2 ? Nat(sigma.at(0) + sigma.at(1) + 1) : Nat(0);
  });
  CHECK(std::get<Nat>(fan_bound(sum, 100)) == 2);  // four branches enumerated

  CHECK(std::holds_alternative<OutOfFuel>(fan_bound(sum, 3)));

  // Dominance: the bound clears every binary point's value.
  std::mt19937_64 rng(31);
  for (int s = 0; s < 50; ++s) {
    BairePoint beta = testutil::random_table_point(rng, 2);
    CHECK(std::get<Nat>(eval_associate(sum, beta, 64)) <= std::get<Nat>(fan_bound(sum, 100)));
  }
}

TEST_CASE("discontinuity witnesses are re-verified at the stated precision") {
  RealMap threshold;
  threshold.label = "threshold";
  threshold.apply = [](const Real& x, Fuel fuel) -> Real {
    if (x.exact() && *x.exact() == 0) return Real::from_rational(0);
    auto apart = real_apart(x, Real::from_rational(0), fuel);
    if (std::holds_alternative<OutOfFuel>(apart)) throw OutOfFuelSignal{};
    return Real::from_rational(1);
  };
  DiscontinuityWitness good;
  good.x = Real::from_rational(0);
  good.seq = [](int n) { return Real::from_rational(pow2(-n)); };
  good.gap_exponent = 0;
  CHECK(verify_witness(threshold, good, {1, 2, 3}, 1000));

  DiscontinuityWitness bad = good;
  bad.seq = [](int) { return Real::from_rational(0); };  // no gap at all
  CHECK_FALSE(verify_witness(threshold, bad, {1, 2, 3}, 1000));
}
