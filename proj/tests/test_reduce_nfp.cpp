#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wb/reduce.hpp"
#include "test_util.hpp"

using namespace wb;
using namespace wb::encode;
using namespace wb::funct;
using namespace wb::reduce;

namespace {

CharSet code_set(std::function<bool(const FinSeq&)> pred, std::string label) {
  return CharSet::on_nat(
      [pred = std::move(pred)](const Nat& code) { return pred(FinSeq::decode(code)); },
      std::move(label));
}

}  // namespace

TEST_CASE("the bar of length-2 prefixes yields a stabilized associate") {
  CharSet A = code_set([](const FinSeq& s) { return s.size() >= 2; }, "len>=2");
  auto r = nfp_from_comprehension(A, {});
  REQUIRE(std::holds_alternative<Associate>(r));
  const Associate& gamma = std::get<Associate>(r);

  CHECK(gamma.at(FinSeq({Nat(4), Nat(9)})) == 3);  // |sigma|+1 at the bar
  CHECK(gamma.at(FinSeq({Nat(4), Nat(9), Nat(1)})) == 3);  // stabilized above
  CHECK(gamma.at(FinSeq({Nat(4)})) == 0);
  CHECK(gamma.at(FinSeq{}) == 0);

  NeighbourhoodCheckParams params;
  params.depth = 6;
  params.max_entry = 3;
  CHECK(check_neighbourhood(gamma, params));
}

TEST_CASE("a non-bar predicate is refuted by a zero-free sample") {
  // "sigma contains a 0" secures exactly the points with zeros; a sampled
  // all-nonzero point refutes the antecedent.
  CharSet A = code_set(
      [](const FinSeq& s) {
        for (const Nat& e : s.entries())
          if (e == 0) return true;
        return false;
      },
      "contains-0");
  auto refuted = nfp_from_comprehension(A, {});
  REQUIRE(std::holds_alternative<Failure>(refuted));
  const Failure& f = std::get<Failure>(refuted);
  CHECK(f.kind == Failure::Kind::AntecedentRefuted);
  REQUIRE(f.counterexample.has_value());
  CHECK_FALSE(*f.counterexample->decidable_has_zero());

  // Widening the predicate into a genuine bar keeps the zero-branch securing:
  // gamma still stabilizes at the first zero when one appears early.
  CharSet barred = code_set(
      [](const FinSeq& s) {
        for (const Nat& e : s.entries())
          if (e == 0) return true;
        return s.size() >= 16;
      },
      "contains-0-or-len-16");
  NfpFromComprehensionParams params;
  params.antecedent_depth = 32;
  auto r = nfp_from_comprehension(barred, params);
  REQUIRE(std::holds_alternative<Associate>(r));
  BairePoint with_zero = BairePoint::table({Nat(2), Nat(0)},
                                           TailRule{TailRule::Kind::Constant, 1, {}});
  auto v = eval_associate(std::get<Associate>(r), with_zero, 64);
  REQUIRE(std::holds_alternative<Nat>(v));
  CHECK(std::get<Nat>(v) == 2);  // secured at the prefix <2,0>
}

TEST_CASE("a disjunctive bar secures at depth 1 or 5") {
  CharSet A = code_set(
      [](const FinSeq& s) { return (s.size() >= 1 && s.at(0) == 7) || s.size() >= 5; },
      "first-is-7-or-len-5");
  auto r = nfp_from_comprehension(A, {});
  REQUIRE(std::holds_alternative<Associate>(r));
  const Associate& gamma = std::get<Associate>(r);

  CHECK(gamma.at(FinSeq({Nat(7)})) == 2);
  CHECK(gamma.at(FinSeq({Nat(7), Nat(0), Nat(0)})) == 2);  // stabilized at depth 1
  CHECK(gamma.at(FinSeq({Nat(1), Nat(2), Nat(3), Nat(4)})) == 0);
  CHECK(gamma.at(FinSeq({Nat(1), Nat(2), Nat(3), Nat(4), Nat(5)})) == 6);

  NeighbourhoodCheckParams params;
  params.depth = 6;
  params.max_entry = 3;
  CHECK(check_neighbourhood(gamma, params));

  // Exhaustive scan to depth 8 along the 7-branch: stability by hand.
  FinSeq seven({Nat(7)});
  FinSeq extended = seven;
  for (int i = 0; i < 7; ++i) {
    extended = extended.append(Nat(i % 3));
    CHECK(gamma.at(extended) == gamma.at(seven));
  }
}

TEST_CASE("realization: the secured prefix satisfies the predicate") {
  CharSet A = code_set([](const FinSeq& s) { return s.size() >= 3; }, "len>=3");
  auto r = nfp_from_comprehension(A, {});
  REQUIRE(std::holds_alternative<Associate>(r));
  const Associate& gamma = std::get<Associate>(r);
  std::mt19937_64 rng(4);
  for (int s = 0; s < 100; ++s) {
    BairePoint f = testutil::random_table_point(rng, 5);
    auto v = eval_associate(gamma, f, 64);
    REQUIRE(std::holds_alternative<Nat>(v));
    std::size_t n = to_u64(std::get<Nat>(v));
    CHECK(A.member_nat(initial_segment(f, n).code()));
  }
}

TEST_CASE("finite comprehension matches direct evaluation") {
  CharSet evens = finite_comprehension([](const Nat& n) { return n % 2 == 0; }, 5);
  std::vector<Nat> members;
  for (Nat n = 0; n <= 5; ++n)
    if (evens.member_nat(n)) members.push_back(n);
  CHECK(members == std::vector<Nat>{0, 2, 4});

  CharSet empty = finite_comprehension([](const Nat&) { return false; }, 10);
  for (Nat n = 0; n <= 10; ++n) CHECK_FALSE(empty.member_nat(n));

  CharSet squares = finite_comprehension([](const Nat& n) { return n * n < 20; }, 6);
  std::vector<Nat> sq;
  for (Nat n = 0; n <= 6; ++n)
    if (squares.member_nat(n)) sq.push_back(n);
  CHECK(sq == std::vector<Nat>{0, 1, 2, 3, 4});

  // Exact agreement up to 64 on a handful of predicates.
  auto mod3 = [](const Nat& n) { return n % 3 == 1; };
  CharSet X = finite_comprehension(mod3, 64);
  for (Nat n = 0; n <= 64; ++n) CHECK(X.member_nat(n) == mod3(n));
}
