#include "wb/instance.hpp"

#include "wb/providers.hpp"
#include "wb/tcore.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace wb::instance {

using nlohmann::json;

int exit_code_for(const reduce::Failure& f) {
  switch (f.kind) {
    case reduce::Failure::Kind::ProviderInvalid: return kProviderInvalid;
    case reduce::Failure::Kind::ValidationFailed: return kValidationFailed;
    case reduce::Failure::Kind::OutOfFuel: return kOutOfFuel;
    case reduce::Failure::Kind::NoWitness: return kNoWitness;
    case reduce::Failure::Kind::AntecedentRefuted: return kAntecedentRefuted;
  }
  return kSchemaError;
}

namespace {

[[noreturn]] void schema_fail(const std::string& what) { throw SchemaError(what); }

const json& field(const json& j, const std::string& key) {
  if (!j.contains(key)) schema_fail("missing field '" + key + "'");
  return j.at(key);
}

std::string str_field(const json& j, const std::string& key) {
  const json& v = field(j, key);
  if (!v.is_string()) schema_fail("field '" + key + "' must be a string");
  return v.get<std::string>();
}

Rat rat_field(const json& j, const std::string& key) {
  try {
    return parse_rat(str_field(j, key));
  } catch (const std::exception& e) {
    schema_fail("field '" + key + "': " + e.what());
  }
}

Nat nat_field(const json& j, const std::string& key) {
  const json& v = field(j, key);
  if (v.is_number_unsigned()) return Nat(v.get<std::uint64_t>());
  if (v.is_string()) return Nat(v.get<std::string>());
  schema_fail("field '" + key + "' must be a natural");
}

int int_field(const json& j, const std::string& key, int fallback = -1) {
  if (!j.contains(key)) {
    if (fallback >= 0) return fallback;
    schema_fail("missing field '" + key + "'");
  }
  if (!j.at(key).is_number_integer()) schema_fail("field '" + key + "' must be an integer");
  return j.at(key).get<int>();
}

// --- object builders --------------------------------------------------------

std::string term_text(const json& spec) {
  if (spec.contains("text")) return str_field(spec, "text");
  if (spec.contains("file")) {
    std::ifstream in(str_field(spec, "file"));
    if (!in) schema_fail("cannot open term file " + str_field(spec, "file"));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }
  schema_fail("term spec needs 'text' or 'file'");
}

encode::BairePoint build_baire(const json& spec, const EvalBudget& budget) {
  std::string kind = str_field(spec, "kind");
  if (kind == "table") {
    std::vector<Nat> prefix;
    for (const auto& e : field(spec, "prefix")) prefix.push_back(Nat(e.get<std::uint64_t>()));
    encode::TailRule tail;
    const json& t = field(spec, "tail");
    if (t.contains("const")) {
      tail.kind = encode::TailRule::Kind::Constant;
      tail.constant = Nat(t.at("const").get<std::uint64_t>());
    } else if (t.contains("word")) {
      tail.kind = encode::TailRule::Kind::Periodic;
      for (const auto& e : t.at("word")) tail.word.push_back(Nat(e.get<std::uint64_t>()));
    } else {
      schema_fail("tail must carry 'const' or 'word'");
    }
    return encode::BairePoint::table(std::move(prefix), std::move(tail));
  }
  if (kind == "term") {
    tcore::Term t = tcore::parse_term(term_text(spec));
    tcore::OracleTable empty;
    tcore::Ty ty = tcore::typecheck(t, empty);
    if (!(ty == tcore::Ty::pure(1))) schema_fail("term-backed point must have type 1");
    return tcore::term_baire_point(t, empty, budget, "term");
  }
  schema_fail("unknown point kind '" + kind + "'");
}

reduce::RealToNat build_real_to_nat(const json& spec, const EvalBudget& budget) {
  std::string kind = str_field(spec, "kind");
  reduce::RealToNat out;
  if (kind == "const") {
    Nat v = nat_field(spec, "value");
    out.label = "const " + v.str();
    out.eval = [v](const encode::Real&) { return v; };
    return out;
  }
  if (kind == "first_bits") {
    int bits = int_field(spec, "bits");
    if (bits < 1 || bits > 3) schema_fail("first_bits supports 1..3 bits at desk scale");
    out.label = "first-" + std::to_string(bits) + "-bits";
    out.eval = [bits](const encode::Real& x) -> Nat {
      Rat q = x.exact() ? *x.exact() : x.approx(20);
      q = std::min(Rat(1), std::max(Rat(0), q));
      Rat scaled_q = q * Rat(Nat(1) << bits);
      Nat scaled = numerator(scaled_q) / denominator(scaled_q);
      Nat cap = (Nat(1) << bits) - 1;
      return scaled > cap ? cap : scaled;
    };
    return out;
  }
  if (kind == "term") {
    tcore::Term t = tcore::parse_term(term_text(spec));
    tcore::OracleTable empty;
    tcore::Ty ty = tcore::typecheck(t, empty);
    if (!(ty == tcore::Ty::arrow(tcore::Ty::pure(1), tcore::Ty::nat())))
      schema_fail("term-backed Z must have type 1 -> 0");
    out.label = "term";
    EvalBudget b = budget;
    out.eval = [t, b](const encode::Real& x) -> Nat {
      encode::BairePoint code = encode::BairePoint::host(
          [x](const Nat& m) { return rat_code(x.approx(static_cast<int>(to_u64(m)))); },
          "cauchy-code");
      tcore::OracleTable table;
      tcore::EvalState st{b.fuel, &table};
      tcore::EvalResult fn = tcore::eval(t, table, b);
      if (std::holds_alternative<OutOfFuel>(fn)) throw OutOfFuelSignal{};
      return tcore::value_nat(
          tcore::apply_value(std::get<tcore::ValuePtr>(fn), tcore::baire_value(code), st));
    };
    return out;
  }
  schema_fail("unknown Z/Y kind '" + kind + "'");
}

encode::CharSet build_real_charset(const json& spec) {
  std::string kind = str_field(spec, "kind");
  if (kind == "finite_rationals") {
    std::vector<Rat> members;
    for (const auto& e : field(spec, "members")) members.push_back(parse_rat(e.get<std::string>()));
    return encode::CharSet::on_real(
        [members](const encode::Real& x) {
          Rat q = x.exact() ? *x.exact() : x.approx(24);
          for (const Rat& m : members)
            if (m == q) return true;
          return false;
        },
        "finite{" + std::to_string(members.size()) + "}");
  }
  schema_fail("unknown set kind '" + kind + "'");
}

reduce::PsiFunction build_psi(const json& spec, const EvalBudget& budget) {
  std::string kind = str_field(spec, "kind");
  if (kind == "piecewise") {
    std::vector<Rat> bps, vals;
    for (const auto& e : field(spec, "breakpoints")) bps.push_back(parse_rat(e.get<std::string>()));
    for (const auto& e : field(spec, "values")) vals.push_back(parse_rat(e.get<std::string>()));
    return reduce::PsiFunction::piecewise(std::move(bps), std::move(vals));
  }
  if (kind == "nin") return reduce::PsiFunction::nin_form(build_real_to_nat(field(spec, "Z"), budget));
  if (kind == "cantor")
    return reduce::PsiFunction::cantor_form(build_real_to_nat(field(spec, "Y"), budget),
                                            build_real_charset(field(spec, "A")));
  if (kind == "term") {
    reduce::RealToNat z = build_real_to_nat(spec, budget);  // reuse the 1 -> 0 term plumbing
    return reduce::PsiFunction::host(
        [z](const Rat& x) { return rat_decode(z.eval(encode::Real::from_rational(x))); },
        "term-psi");
  }
  schema_fail("unknown psi kind '" + kind + "'");
}

funct::Provider build_provider(const json& spec, funct::ProviderKind expected) {
  std::string kind = str_field(spec, "kind");
  funct::Provider p;
  if (kind == "greedy") {
    p = providers::make_greedy_cover_provider();
  } else if (kind == "single_ball") {
    p = providers::make_single_ball_cover_provider();
  } else if (kind == "dyadic_modulus") {
    p = providers::make_dyadic_modulus_provider(int_field(spec, "max_level", 10));
  } else if (kind == "adaptive_modulus") {
    p = providers::make_adaptive_modulus_provider();
  } else if (kind == "empty_modulus") {
    p = providers::make_empty_modulus_provider();
  } else if (kind == "dyadic_limit") {
    p = providers::make_dyadic_net_limit_provider(int_field(spec, "max_level", 10));
  } else if (kind == "constant_limit") {
    p = providers::make_constant_net_limit_provider(rat_field(spec, "value"));
  } else if (kind == "nfp_uniform") {
    p = providers::make_uniform_nfp_provider();
  } else if (kind == "nfp_split") {
    p = providers::make_split_nfp_provider();
  } else if (kind == "nfp_constant") {
    p = providers::make_constant_nfp_provider(nat_field(spec, "value"));
  } else if (kind == "nfp_broken") {
    p = providers::make_broken_nfp_provider();
  } else {
    schema_fail("unknown provider kind '" + kind + "'");
  }
  if (p.kind != expected)
    schema_fail("provider '" + kind + "' has kind " + funct::provider_kind_name(p.kind) +
                ", expected " + funct::provider_kind_name(expected));
  return p;
}

funct::Functional2OnPairs build_y2(const json& spec, const EvalBudget& budget) {
  std::string kind = str_field(spec, "kind");
  funct::Functional2OnPairs Y;
  if (kind == "const") {
    Nat v = nat_field(spec, "value");
    Y.label = "const " + v.str();
    Y.eval = [v](const encode::BairePoint&, const Nat&) { return v; };
    return Y;
  }
  if (kind == "g0_eq_n") {
    Y.label = "g(0)=n";
    Y.eval = [](const encode::BairePoint& g, const Nat& n) { return g(0) == n ? Nat(0) : Nat(1); };
    return Y;
  }
  if (kind == "g0_plus_g1_eq_n") {
    Y.label = "g(0)+g(1)=n";
    Y.eval = [](const encode::BairePoint& g, const Nat& n) {
      return g(0) + g(1) == n ? Nat(0) : Nat(1);
    };
    return Y;
  }
  if (kind == "term") {
    tcore::Term t = tcore::parse_term(term_text(spec));
    tcore::OracleTable empty;
    tcore::Ty expected =
        tcore::Ty::arrow(tcore::Ty::pure(1), tcore::Ty::arrow(tcore::Ty::nat(), tcore::Ty::nat()));
    if (!(tcore::typecheck(t, empty) == expected)) schema_fail("term-backed Y must have type 1 -> 0 -> 0");
    EvalBudget b = budget;
    Y.label = "term";
    Y.eval = [t, b](const encode::BairePoint& g, const Nat& n) -> Nat {
      tcore::OracleTable table;
      tcore::EvalState st{b.fuel, &table};
      tcore::EvalResult fn = tcore::eval(t, table, b);
      if (std::holds_alternative<OutOfFuel>(fn)) throw OutOfFuelSignal{};
      tcore::ValuePtr applied =
          tcore::apply_value(std::get<tcore::ValuePtr>(fn), tcore::baire_value(g), st);
      return tcore::value_nat(tcore::apply_value(applied, tcore::num_value(n), st));
    };
    return Y;
  }
  schema_fail("unknown Y2 kind '" + kind + "'");
}

reduce::LipschitzFn build_lipschitz(const json& spec) {
  std::string kind = str_field(spec, "kind");
  reduce::LipschitzFn g;
  if (kind == "linear") {
    Rat slope = rat_field(spec, "slope");
    if (boost::multiprecision::abs(slope) > 1) schema_fail("linear slope must be in [-1,1]");
    g.label = "linear slope " + rat_str(slope);
    g.at = [slope](const Rat& x) { return slope * x; };
    return g;
  }
  if (kind == "tent") {
    Rat peak = rat_field(spec, "peak");
    g.label = "tent at " + rat_str(peak);
    g.at = [peak](const Rat& x) { return -boost::multiprecision::abs(x - peak); };
    return g;
  }
  schema_fail("unknown lipschitz kind '" + kind + "'");
}

reduce::Maximizer build_maximizer(const json& spec) {
  std::string kind = str_field(spec, "kind");
  if (kind == "grid_argmax") return providers::make_grid_argmax_maximizer();
  if (kind == "constant") return providers::make_constant_maximizer(rat_field(spec, "value"));
  schema_fail("unknown maximizer kind '" + kind + "'");
}

reduce::Exists2Decider build_decider(const json& spec) {
  std::string kind = str_field(spec, "kind");
  if (kind == "certified") return providers::make_certified_exists2_decider();
  if (kind == "always_one") return providers::make_always_one_decider();
  schema_fail("unknown decider kind '" + kind + "'");
}

std::function<bool(const Nat&)> build_code_predicate(const json& spec) {
  std::string kind = str_field(spec, "kind");
  if (kind == "len_ge") {
    std::size_t n = static_cast<std::size_t>(int_field(spec, "n"));
    return [n](const Nat& code) { return encode::FinSeq::decode(code).size() >= n; };
  }
  if (kind == "contains_value") {
    Nat v = nat_field(spec, "value");
    return [v](const Nat& code) {
      for (const Nat& e : encode::FinSeq::decode(code).entries())
        if (e == v) return true;
      return false;
    };
  }
  if (kind == "entry0_or_len") {
    Nat v = nat_field(spec, "value");
    std::size_t n = static_cast<std::size_t>(int_field(spec, "len"));
    return [v, n](const Nat& code) {
      encode::FinSeq s = encode::FinSeq::decode(code);
      return (s.size() >= 1 && s.at(0) == v) || s.size() >= n;
    };
  }
  schema_fail("unknown predicate kind '" + kind + "'");
}

std::function<bool(const Nat&)> build_nat_predicate(const json& spec) {
  std::string kind = str_field(spec, "kind");
  if (kind == "even") return [](const Nat& n) { return n % 2 == 0; };
  if (kind == "square_lt") {
    Nat bound = nat_field(spec, "bound");
    return [bound](const Nat& n) { return n * n < bound; };
  }
  schema_fail("unknown predicate kind '" + kind + "'");
}

// --- per-reduction drivers ----------------------------------------------------

RunOutcome outcome_from(const reduce::ReductionReport& report, int code,
                        const RunOptions& options) {
  RunOutcome out;
  out.exit_code = code;
  out.verdict = report.verdict.empty() ? "Validated" : report.verdict;
  out.report_text = report.render(options.timestamp);
  return out;
}

template <typename T>
RunOutcome finish(const std::variant<T, reduce::Failure>& result,
                  reduce::ReductionReport& report, const RunOptions& options) {
  if (std::holds_alternative<reduce::Failure>(result))
    return outcome_from(report, exit_code_for(std::get<reduce::Failure>(result)), options);
  if (report.verdict.empty()) report.verdict = "Validated";
  return outcome_from(report, kValidated, options);
}

// A net declared as a term-backed map from index codes: the term (type
// 1 -> 1) receives the index coded as a point (size, then member codes) and
// returns the net value.
nets::Net build_term_net(const json& spec, const EvalBudget& budget) {
  tcore::Term t = tcore::parse_term(term_text(spec));
  tcore::OracleTable empty;
  if (!(tcore::typecheck(t, empty) == tcore::Ty::arrow(tcore::Ty::pure(1), tcore::Ty::pure(1))))
    schema_fail("term-backed net must have type 1 -> 1");
  EvalBudget b = budget;
  return nets::Net::cantor([t, b](const nets::DirectedIndex& w) {
    auto table = std::make_shared<tcore::OracleTable>();
    tcore::EvalState st{b.fuel, table.get()};
    tcore::EvalResult fn = tcore::eval(t, *table, b);
    if (std::holds_alternative<OutOfFuel>(fn)) throw OutOfFuelSignal{};
    tcore::ValuePtr value = tcore::apply_value(std::get<tcore::ValuePtr>(fn),
                                               tcore::baire_value(w.encode_as_point()), st);
    Fuel per_query = b.fuel;
    return encode::BairePoint::host(
        [value, table, per_query](const Nat& k) {
          tcore::EvalState qst{per_query, table.get()};
          return tcore::value_nat(tcore::apply_value(value, tcore::num_value(k), qst));
        },
        "term-net-value");
  });
}

RunOutcome run_jump_to_netlimit(const json& doc, const RunOptions& options) {
  int depth = int_field(doc, "depth", 8);
  funct::WitnessSearchBound bound;
  if (doc.contains("witness_pool")) {
    const json& w = doc.at("witness_pool");
    bound.max_support = static_cast<std::size_t>(int_field(w, "max_support", 3));
    bound.max_value = nat_field(w, "max_value");
  }
  reduce::ReductionReport report;
  report.inputs.emplace_back("depth", std::to_string(depth));

  std::optional<funct::Functional2OnPairs> Y;
  nets::Net net = nets::Net::cantor(nullptr);
  if (doc.contains("net")) {
    report.reduction = "netlimit_to_jump";
    report.inputs.emplace_back("net", "term-backed");
    net = build_term_net(field(doc, "net"), options.budget);
  } else {
    Y = build_y2(field(doc, "Y2"), options.budget);
    report.reduction = "jump_to_netlimit";
    report.inputs.emplace_back("Y2", Y->label);
    net = reduce::jump_to_netlimit(*Y);
  }

  std::vector<encode::BairePoint> pool = funct::enumerate_witnesses(bound);
  reduce::NetJumpData data = reduce::netlimit_to_jump(net, 64);
  reduce::IndexJumpSearcher searcher(data.Y, pool, true, 64);
  auto limit = reduce::limit_from_sigma_jump(searcher.as_sigma_jump(), depth);
  if (std::holds_alternative<OutOfFuel>(limit)) {
    report.note_failure(reduce::Failure{reduce::Failure::Kind::OutOfFuel, "limit bit unknown", {}});
    return outcome_from(report, kOutOfFuel, options);
  }
  const auto& bits = std::get<std::vector<int>>(limit);
  std::ostringstream os;
  for (int b : bits) os << b;
  report.output_lines.push_back("limit prefix = " + os.str());

  if (Y) {
    // Post-validation: each bit against the brute-forced witness search.
    for (int n = 0; n < depth; ++n) {
      bool expect = std::holds_alternative<funct::InJ>(funct::jump_J(*Y, Nat(n), bound));
      if (expect != (bits[n] == 1)) {
        report.note_failure(reduce::Failure{reduce::Failure::Kind::ValidationFailed,
                                            "limit bit " + std::to_string(n) +
                                                " disagrees with the witness search",
                                            {}});
        return outcome_from(report, kValidationFailed, options);
      }
    }
  } else {
    // Post-validation: the prefix is the lex-supremum over the sampled
    // singleton indices, bit by bit.
    std::vector<int> prefix;
    for (int n = 0; n < depth; ++n) {
      std::vector<int> candidate = prefix;
      candidate.push_back(1);
      bool seen = false;
      for (const auto& p : pool) {
        nets::DirectedIndex w = nets::DirectedIndex::of_points({p});
        if (encode::geq_lex_zero_padded(net.cantor_value(w), candidate)) {
          seen = true;
          break;
        }
      }
      if (bits[n] == 0 && seen) {
        report.note_failure(reduce::Failure{reduce::Failure::Kind::ValidationFailed,
                                            "a sampled index exceeds the claimed limit at bit " +
                                                std::to_string(n),
                                            {}});
        return outcome_from(report, kValidationFailed, options);
      }
      prefix.push_back(bits[n]);
    }
  }
  report.verdict = "Validated";
  return outcome_from(report, kValidated, options);
}

RunOutcome run_one(const json& doc, const RunOptions& options) {
  std::string reduction = str_field(doc, "reduction");
  reduce::ReductionReport report;
  report.include_full_traces = options.dump_trace;

  if (reduction == "nin_from_hbu") {
    reduce::RealToNat Z = build_real_to_nat(field(doc, "Z"), options.budget);
    funct::Provider cover =
        build_provider(field(doc, "cover_provider"), funct::ProviderKind::CoverOracle);
    auto r = reduce::nin_from_hbu(Z, cover, options.budget, &report);
    return finish(r, report, options);
  }
  if (reduction == "cantor_from_hbu") {
    reduce::RealToNat Y = build_real_to_nat(field(doc, "Y"), options.budget);
    encode::CharSet A = build_real_charset(field(doc, "A"));
    funct::Provider cover =
        build_provider(field(doc, "cover_provider"), funct::ProviderKind::CoverOracle);
    auto r = reduce::cantor_from_hbu(Y, A, cover, options.budget, &report);
    return finish(r, report, options);
  }
  if (reduction == "hbu_from_modulus") {
    reduce::PsiFunction psi = build_psi(field(doc, "psi"), options.budget);
    funct::Provider mod =
        build_provider(field(doc, "modulus_provider"), funct::ProviderKind::ModulusOracle);
    auto r = reduce::hbu_from_modulus(psi, mod, options.budget, &report);
    return finish(r, report, options);
  }
  if (reduction == "lebesgue_from_netlimit") {
    reduce::PsiFunction psi = build_psi(field(doc, "psi"), options.budget);
    funct::Provider lim =
        build_provider(field(doc, "limit_provider"), funct::ProviderKind::NetLimitOracle);
    auto r = reduce::lebesgue_from_netlimit(psi, lim, options.budget, &report);
    return finish(r, report, options);
  }
  if (reduction == "lebesgue_from_nfp") {
    reduce::PsiFunction psi = build_psi(field(doc, "psi"), options.budget);
    funct::Provider nfp =
        build_provider(field(doc, "nfp_provider"), funct::ProviderKind::NFPRealizer);
    auto r = reduce::lebesgue_from_nfp(psi, nfp, options.budget, &report);
    return finish(r, report, options);
  }
  if (reduction == "jump_to_netlimit" || reduction == "netlimit_to_jump") {
    return run_jump_to_netlimit(doc, options);
  }
  if (reduction == "grilliot_exists2") {
    encode::BairePoint f = build_baire(field(doc, "f"), options.budget);
    // The built-in threshold functional: 1 for x apart from 0, 0 under an
    // exact-zero certificate.
    Fuel fuel = options.budget.fuel;
    funct::RealMap F;
    F.label = "threshold at 0";
    F.apply = [](const encode::Real& x, Fuel fuel_inner) -> encode::Real {
      if (x.exact() && *x.exact() == 0) return encode::Real::from_rational(0);
      auto apart = encode::real_apart(x, encode::Real::from_rational(0), fuel_inner);
      if (std::holds_alternative<OutOfFuel>(apart)) throw OutOfFuelSignal{};
      return encode::Real::from_rational(1);
    };
    funct::DiscontinuityWitness w;
    w.x = encode::Real::from_rational(0);
    w.seq = [](int n) { return encode::Real::from_rational(pow2(-n)); };
    w.gap_exponent = 0;
    auto r = reduce::grilliot_exists2(F, w, f, fuel, &report);
    if (std::holds_alternative<int>(r))
      report.output_lines.push_back("exists2 = " + std::to_string(std::get<int>(r)));
    return finish(r, report, options);
  }
  if (reduction == "exists2_from_maximizer") {
    reduce::Maximizer eps = build_maximizer(field(doc, "eps"));
    encode::BairePoint f = build_baire(field(doc, "f"), options.budget);
    auto r = reduce::exists2_from_maximizer(eps, f, options.budget.fuel, &report);
    if (std::holds_alternative<int>(r))
      report.output_lines.push_back("exists2 = " + std::to_string(std::get<int>(r)));
    return finish(r, report, options);
  }
  if (reduction == "maximizer_from_exists2") {
    reduce::Exists2Decider E = build_decider(field(doc, "E"));
    reduce::LipschitzFn g = build_lipschitz(field(doc, "g"));
    auto r = reduce::maximizer_from_exists2(E, g, options.budget.fuel, &report);
    return finish(r, report, options);
  }
  if (reduction == "nfp_from_comprehension") {
    auto pred = build_code_predicate(field(doc, "A"));
    encode::CharSet A = encode::CharSet::on_nat(pred, "A");
    reduce::NfpFromComprehensionParams params;
    params.seed = options.seed;
    auto r = reduce::nfp_from_comprehension(A, params, &report);
    return finish(r, report, options);
  }
  if (reduction == "finite_comprehension") {
    auto pred = build_nat_predicate(field(doc, "A"));
    Nat k = nat_field(doc, "k");
    encode::CharSet X = reduce::finite_comprehension(pred, k);
    report.reduction = "finite_comprehension";
    std::ostringstream os;
    os << "members:";
    for (Nat n = 0; n <= k; ++n)
      if (X.member_nat(n)) os << " " << n;
    report.output_lines.push_back(os.str());
    report.verdict = "Validated";
    return outcome_from(report, kValidated, options);
  }
  schema_fail("unknown reduction '" + reduction + "'");
}

}  // namespace

RunOutcome run_instance_text(const std::string& json_text, const RunOptions& options) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const std::exception& e) {
    throw SchemaError(std::string("instance is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("instance must be a JSON object");
  if (!doc.contains("version") || !doc.at("version").is_number_integer() ||
      doc.at("version").get<int>() != 1)
    throw SchemaError("instance must declare \"version\": 1");
  try {
    return run_one(doc, options);
  } catch (const SchemaError&) {
    throw;
  } catch (const tcore::ParseError& e) {
    throw SchemaError(std::string("term parse error: ") + e.what());
  } catch (const tcore::TypeError& e) {
    throw SchemaError(std::string("term type error: ") + e.what());
  }
}

RunOutcome run_instance(const std::string& path, const RunOptions& options) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open instance file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return run_instance_text(buffer.str(), options);
}

const std::vector<CatalogEntry>& list_reductions() {
  static const std::vector<CatalogEntry> catalog = {
      {"jump_to_netlimit",
       "jump membership as the limit of an increasing Cantor phalanx (jump/net-limit "
       "equivalence, forward direction)",
       "Y2 total on the declared witness class"},
      {"netlimit_to_jump",
       "net limit recovered through jump queries alone (jump/net-limit equivalence, strong "
       "direction)",
       "increasing Cantor nets over a declared point pool"},
      {"hbu_from_modulus",
       "finite subcover of a canonical cover from a convergence modulus (Heine-Borel)",
       "piecewise-constant or finitely-valued psi at rational queries"},
      {"lebesgue_from_netlimit",
       "Lebesgue number from the limit of the modified cover phalanx (Lebesgue number lemma)",
       "same psi class; recovery reads only the limit"},
      {"lebesgue_from_nfp",
       "Lebesgue number from a continuous-choice realizer's fan bound (Lebesgue number lemma "
       "via neighbourhood functions)",
       "piecewise-constant psi; associates checked to depth 6"},
      {"nin_from_hbu",
       "collision witness against an injection of [0,1] into N, from a canonical cover "
       "(uncountability of the reals)",
       "Z total at rational centers; any cover provider"},
      {"cantor_from_hbu",
       "a point outside A from a canonical cover for the two-valued radius function (Cantor's "
       "theorem)",
       "finite A; Y injective on A"},
      {"grilliot_exists2",
       "zero-existence decided through a function discontinuous at a witnessed point "
       "(Grilliot's trick)",
       "native F with certificates; witness gap re-verified"},
      {"exists2_from_maximizer",
       "zero-existence from a maximizer for Lipschitz functions (Grilliot's trick through the "
       "attained-maximum principle)",
       "eps queried on the slope family closure only"},
      {"maximizer_from_exists2",
       "maximum location by interval halving over a zero-existence decider (attained maximum "
       "for Lipschitz functions)",
       "rational-valued Lipschitz-1 g"},
      {"nfp_from_comprehension",
       "continuous-choice realizer built from a decidable bar (comprehension to neighbourhood "
       "functions)",
       "decidable A over sequence codes; antecedent spot-checked"},
      {"finite_comprehension",
       "finite comprehension by direct evaluation (induction-provable fragment)",
       "decidable A, explicit bound"},
  };
  return catalog;
}

std::string render_catalog() {
  std::ostringstream os;
  for (const auto& e : list_reductions()) {
    os << e.name << "\n  realizes: " << e.anchor << "\n  instances: " << e.instance_class
       << "\n";
  }
  return os.str();
}

}  // namespace wb::instance
