#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wb/instance.hpp"

using namespace wb;
using namespace wb::instance;

namespace {

RunOptions options() {
  RunOptions o;
  o.timestamp = "TEST";
  return o;
}

}  // namespace

TEST_CASE("the catalog names every implemented reduction with its anchor") {
  const auto& catalog = list_reductions();
  CHECK(catalog.size() == 12);
  bool has_nin = false;
  for (const auto& e : catalog) {
    CHECK_FALSE(e.anchor.empty());
    CHECK_FALSE(e.instance_class.empty());
    if (e.name == "nin_from_hbu") has_nin = true;
  }
  CHECK(has_nin);
  std::string rendered = render_catalog();
  CHECK(rendered.find("nin_from_hbu") != std::string::npos);
  CHECK(rendered.find("Heine-Borel") != std::string::npos);
}

TEST_CASE("a no-injection instance runs to a validated collision") {
  std::string doc = R"({
    "version": 1,
    "reduction": "nin_from_hbu",
    "Z": {"kind": "const", "value": 0},
    "cover_provider": {"kind": "greedy"}
  })";
  RunOutcome out = run_instance_text(doc, options());
  CHECK(out.exit_code == kValidated);
  CHECK(out.verdict == "Validated");
  CHECK(out.report_text.find("pair i=") != std::string::npos);
}

TEST_CASE("a fake cover is rejected with the documented exit code") {
  std::string doc = R"({
    "version": 1,
    "reduction": "nin_from_hbu",
    "Z": {"kind": "const", "value": 0},
    "cover_provider": {"kind": "single_ball"}
  })";
  RunOptions o = options();
  o.budget.fuel = 4000;
  RunOutcome out = run_instance_text(doc, o);
  CHECK(out.exit_code == kOutOfFuel);
}

TEST_CASE("the jump instance reports the limit prefix") {
  std::string doc = R"({
    "version": 1,
    "reduction": "jump_to_netlimit",
    "Y2": {"kind": "g0_eq_n"},
    "depth": 8,
    "witness_pool": {"max_support": 1, "max_value": 4}
  })";
  RunOutcome out = run_instance_text(doc, options());
  CHECK(out.exit_code == kValidated);
  CHECK(out.report_text.find("limit prefix = 11110000") != std::string::npos);
}

TEST_CASE("schema violations are distinct from reduction failures") {
  CHECK_THROWS_AS(run_instance_text("{not json", options()), SchemaError);
  CHECK_THROWS_AS(run_instance_text(R"({"reduction": "nin_from_hbu"})", options()), SchemaError);
  CHECK_THROWS_AS(run_instance_text(R"({"version": 1, "reduction": "uninvented"})", options()),
                  SchemaError);
  CHECK_THROWS_AS(
      run_instance_text(
          R"({"version": 1, "reduction": "nin_from_hbu", "Z": {"kind": "const", "value": 0},
              "cover_provider": {"kind": "empty_modulus"}})",
          options()),
      SchemaError);  // provider of the wrong kind
}

TEST_CASE("term-backed objects flow through instances") {
  std::string doc = R"({
    "version": 1,
    "reduction": "nin_from_hbu",
    "Z": {"kind": "term", "text": "λx:1. 0"},
    "cover_provider": {"kind": "greedy"}
  })";
  RunOutcome out = run_instance_text(doc, options());
  CHECK(out.exit_code == kValidated);

  std::string bad = R"({
    "version": 1,
    "reduction": "nin_from_hbu",
    "Z": {"kind": "term", "text": "λx:0. x"},
    "cover_provider": {"kind": "greedy"}
  })";
  CHECK_THROWS_AS(run_instance_text(bad, options()), SchemaError);
}

TEST_CASE("reports are byte-identical modulo the timestamp") {
  std::string doc = R"({
    "version": 1,
    "reduction": "lebesgue_from_nfp",
    "psi": {"kind": "piecewise", "breakpoints": ["0", "1/2", "1"], "values": ["1/4", "1/8"]},
    "nfp_provider": {"kind": "nfp_uniform"}
  })";
  RunOutcome a = run_instance_text(doc, options());
  RunOutcome b = run_instance_text(doc, options());
  CHECK(a.exit_code == kValidated);
  CHECK(a.report_text == b.report_text);
  RunOptions other = options();
  other.timestamp = "OTHER";
  RunOutcome c = run_instance_text(doc, other);
  CHECK(c.report_text != a.report_text);
  // Only the timestamp line differs.
  auto strip_ts = [](std::string s) {
    auto at = s.find("timestamp:");
    auto end = s.find('\n', at);
    return s.erase(at, end - at);
  };
  CHECK(strip_ts(a.report_text) == strip_ts(c.report_text));
}

TEST_CASE("the remaining reductions run from instance documents") {
  const char* docs[] = {
      R"({"version": 1, "reduction": "hbu_from_modulus",
          "psi": {"kind": "piecewise", "breakpoints": ["0", "1"], "values": ["1/2"]},
          "modulus_provider": {"kind": "adaptive_modulus"}})",
      R"({"version": 1, "reduction": "lebesgue_from_netlimit",
          "psi": {"kind": "piecewise", "breakpoints": ["0", "1"], "values": ["1/2"]},
          "limit_provider": {"kind": "dyadic_limit"}})",
      R"({"version": 1, "reduction": "cantor_from_hbu",
          "Y": {"kind": "const", "value": 0},
          "A": {"kind": "finite_rationals", "members": ["0"]},
          "cover_provider": {"kind": "greedy"}})",
      R"({"version": 1, "reduction": "grilliot_exists2",
          "f": {"kind": "table", "prefix": [1, 0], "tail": {"const": 1}}})",
      R"({"version": 1, "reduction": "exists2_from_maximizer",
          "eps": {"kind": "grid_argmax"},
          "f": {"kind": "table", "prefix": [2], "tail": {"const": 2}}})",
      R"({"version": 1, "reduction": "maximizer_from_exists2",
          "E": {"kind": "certified"}, "g": {"kind": "tent", "peak": "1/3"}})",
      R"({"version": 1, "reduction": "nfp_from_comprehension",
          "A": {"kind": "len_ge", "n": 2}})",
      R"({"version": 1, "reduction": "finite_comprehension",
          "A": {"kind": "square_lt", "bound": 20}, "k": 6})",
  };
  for (const char* doc : docs) {
    RunOutcome out = run_instance_text(doc, options());
    CHECK(out.exit_code == kValidated);
  }

  // Failure exit codes: constant net-limit provider and dishonest decider.
  RunOptions o = options();
  o.budget.fuel = 2000;
  RunOutcome bad_limit = run_instance_text(
      R"({"version": 1, "reduction": "lebesgue_from_netlimit",
          "psi": {"kind": "piecewise", "breakpoints": ["0", "1"], "values": ["1/2"]},
          "limit_provider": {"kind": "constant_limit", "value": "1/2"}})",
      o);
  CHECK(bad_limit.exit_code == kOutOfFuel);

  RunOutcome bad_decider = run_instance_text(
      R"({"version": 1, "reduction": "maximizer_from_exists2",
          "E": {"kind": "always_one"}, "g": {"kind": "linear", "slope": "1"}})",
      options());
  CHECK(bad_decider.exit_code == kValidationFailed);

  RunOutcome bad_eps = run_instance_text(
      R"({"version": 1, "reduction": "exists2_from_maximizer",
          "eps": {"kind": "constant", "value": "1/2"},
          "f": {"kind": "table", "prefix": [1], "tail": {"const": 1}}})",
      options());
  CHECK(bad_eps.exit_code == kProviderInvalid);
}
