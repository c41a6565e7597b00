#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wb/nets.hpp"

#include <random>

using namespace wb;
using namespace wb::encode;
using namespace wb::nets;

namespace {

BairePoint point_of(std::initializer_list<unsigned> prefix) {
  std::vector<Nat> p;
  for (unsigned v : prefix) p.push_back(Nat(v));
  return BairePoint::table(p, TailRule{TailRule::Kind::Constant, 0, {}});
}

std::vector<BairePoint> small_pool() {
  std::vector<BairePoint> pool;
  for (unsigned v = 0; v < 4; ++v) pool.push_back(point_of({v}));
  return pool;
}

}  // namespace

TEST_CASE("directed indices: canonical codes, dedupe, union as upper bound") {
  DirectedIndex a = DirectedIndex::of_points({point_of({1}), point_of({2})});
  DirectedIndex a_again = DirectedIndex::of_points({point_of({2}), point_of({1}), point_of({1})});
  CHECK(a == a_again);
  CHECK(a.size() == 2);

  DirectedIndex b = DirectedIndex::of_points({point_of({3})});
  DirectedIndex u = a.union_with(b);
  // Def. 4(b) literally: the union is an upper bound of both.
  CHECK(a.subset_of(u));
  CHECK(b.subset_of(u));
  CHECK(u.subset_of(u));  // reflexive
  CHECK_FALSE(u.subset_of(a));

  // Transitivity on a chain.
  DirectedIndex chain = u.union_with(DirectedIndex::of_points({point_of({0})}));
  CHECK(a.subset_of(chain));

  std::mt19937_64 rng(5);
  for (int it = 0; it < 50; ++it) {
    std::vector<BairePoint> xs, ys;
    for (int i = 0; i < 3; ++i) {
      xs.push_back(point_of({static_cast<unsigned>(rng() % 5)}));
      ys.push_back(point_of({static_cast<unsigned>(rng() % 5)}));
    }
    DirectedIndex x = DirectedIndex::of_points(xs), y = DirectedIndex::of_points(ys);
    DirectedIndex z = x.union_with(y);
    CHECK(x.subset_of(z));
    CHECK(y.subset_of(z));
  }
}

TEST_CASE("index points survive the code round-trip") {
  DirectedIndex w = DirectedIndex::of_points({point_of({1, 2}), point_of({0})});
  BairePoint g = w.encode_as_point();
  DirectedIndex back = DirectedIndex::decode_from(g, 8);
  CHECK(back == w);
  for (std::size_t i = 0; i < w.size(); ++i)
    for (int k = 0; k < 8; ++k) CHECK(w.point(i)(Nat(k)) == back.point(i)(Nat(k)));
  // The decode bound truncates oversized claims.
  CHECK(DirectedIndex::decode_from(g, 1).size() == 1);
  CHECK(DirectedIndex::decode_from(BairePoint::constant(0), 8).size() == 0);
}

TEST_CASE("monotonicity checks on sampled comparable pairs") {
  std::vector<std::pair<DirectedIndex, DirectedIndex>> pairs;
  DirectedIndex small = DirectedIndex::of_points({point_of({0})});
  DirectedIndex big = small.union_with(DirectedIndex::of_points({point_of({1}), point_of({2})}));
  pairs.emplace_back(small, big);
  pairs.emplace_back(DirectedIndex::empty(), small);
  pairs.emplace_back(big, small);  // not comparable in this direction: skipped

  Net constant = Net::cantor([](const DirectedIndex&) { return BairePoint::constant(1); });
  CHECK(check_increasing(constant, pairs, 16));

  // Witness nets only gain 1-bits under union.
  Net witness = Net::cantor([](const DirectedIndex& w) {
    std::vector<BairePoint> pts;
    for (std::size_t i = 0; i < w.size(); ++i) pts.push_back(w.point(i));
    return BairePoint::host(
        [pts](const Nat& k) -> Nat {
          for (const auto& p : pts)
            if (p(0) == k) return 1;
          return 0;
        },
        "witness");
  });
  CHECK(check_increasing(witness, pairs, 16));

  Net shrinking = Net::unit([](const DirectedIndex& w) {
    return Real::from_rational(w.size() == 0 ? Rat(1) : Rat(1, 1 + w.size()));
  });
  CHECK_FALSE(check_increasing(shrinking, pairs, 16));

  Net growing = Net::unit([](const DirectedIndex& w) {
    return Real::from_rational(1 - pow2(-static_cast<long>(w.size())));
  });
  CHECK(check_increasing(growing, pairs, 16));
}

TEST_CASE("limit of a constant net reads off its prefix") {
  BairePoint value = BairePoint::table({Nat(1), Nat(0), Nat(1), Nat(0)},
                                       TailRule{TailRule::Kind::Periodic, 0, {Nat(1), Nat(0)}});
  // Jump access for the constant net: compare against the fixed value.
  JAccess jump = [value](const std::vector<int>& sigma) -> std::variant<bool, JUnknown> {
    return geq_lex_zero_padded(value, sigma);
  };
  auto r = limit_monotone_cantor(jump, 4);
  REQUIRE(std::holds_alternative<std::vector<int>>(r));
  CHECK(std::get<std::vector<int>>(r) == std::vector<int>{1, 0, 1, 0});

  JAccess zero_jump = [](const std::vector<int>& sigma) -> std::variant<bool, JUnknown> {
    return geq_lex_zero_padded(BairePoint::constant(0), sigma);
  };
  auto rz = limit_monotone_cantor(zero_jump, 4);
  CHECK(std::get<std::vector<int>>(rz) == std::vector<int>{0, 0, 0, 0});

  JAccess unknown = [](const std::vector<int>&) -> std::variant<bool, JUnknown> {
    return JUnknown{};
  };
  CHECK(std::holds_alternative<OutOfFuel>(limit_monotone_cantor(unknown, 4)));
}

TEST_CASE("limit of the witness phalanx via an accumulating jump search") {
  // F(w, k) = 1 iff some member's first value is k; witnesses have values < 4.
  auto net_value = [](const DirectedIndex& w) {
    std::vector<BairePoint> pts;
    for (std::size_t i = 0; i < w.size(); ++i) pts.push_back(w.point(i));
    return BairePoint::host(
        [pts](const Nat& k) -> Nat {
          for (const auto& p : pts)
            if (p(0) == k) return 1;
          return 0;
        },
        "phalanx");
  };
  std::vector<BairePoint> pool = small_pool();
  auto accumulated = std::make_shared<DirectedIndex>();
  JAccess jump = [net_value, pool, accumulated](
                     const std::vector<int>& sigma) -> std::variant<bool, JUnknown> {
    if (geq_lex_zero_padded(net_value(*accumulated), sigma)) return true;
    for (const auto& p : pool) {
      DirectedIndex cand = accumulated->union_with(DirectedIndex::of_points({p}));
      if (geq_lex_zero_padded(net_value(cand), sigma)) {
        *accumulated = cand;
        return true;
      }
    }
    return false;  // pool spans the declared class
  };
  auto r = limit_monotone_cantor(jump, 6);
  REQUIRE(std::holds_alternative<std::vector<int>>(r));
  CHECK(std::get<std::vector<int>>(r) == std::vector<int>{1, 1, 1, 1, 0, 0});
}

TEST_CASE("modulus checks accept honest moduli and refute empty ones") {
  std::vector<BairePoint> pool = small_pool();

  Net constant = Net::unit([](const DirectedIndex&) { return Real::from_rational(Rat(1, 3)); });
  Modulus any{[](int) { return DirectedIndex::empty(); }};
  CHECK(check_modulus(constant, Real::from_rational(Rat(1, 3)), any, 6, 4, pool, 1));

  Net approaching = Net::unit([](const DirectedIndex& w) {
    return Real::from_rational(1 - pow2(-static_cast<long>(w.size())));
  });
  std::vector<BairePoint> line;
  for (unsigned v = 0; v < 16; ++v) line.push_back(point_of({v, 9}));
  Modulus by_size{[line](int k) {
    std::vector<BairePoint> pts(line.begin(), line.begin() + k + 1);
    return DirectedIndex::of_points(pts);
  }};
  CHECK(check_modulus(approaching, Real::from_rational(1), by_size, 8, 4, pool, 2));

  Modulus empty{[](int) { return DirectedIndex::empty(); }};
  CHECK_FALSE(check_modulus(approaching, Real::from_rational(1), empty, 3, 2, pool, 3));
}
