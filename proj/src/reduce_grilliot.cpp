#include "wb/reduce.hpp"

#include <algorithm>
#include <sstream>

namespace wb::reduce {

namespace {

void note_input(ReductionReport* r, const std::string& k, const std::string& v) {
  if (r) r->inputs.emplace_back(k, v);
}
void note_output(ReductionReport* r, const std::string& line) {
  if (r) r->output_lines.push_back(line);
}
void note_line(ReductionReport* r, const std::string& line) {
  if (r) r->provider_lines.push_back(line);
}
Failure fail_report(ReductionReport* r, Failure f) {
  if (r) r->note_failure(f);
  return f;
}
void note_ok(ReductionReport* r) {
  if (r && r->verdict.empty()) r->verdict = "Validated";
}

Rat clamp01(const Rat& q) { return std::min(Rat(1), std::max(Rat(0), q)); }

}  // namespace

// --- grilliot_exists2 ---------------------------------------------------------

std::variant<int, Failure> grilliot_exists2(const funct::RealMap& F,
                                            const funct::DiscontinuityWitness& w,
                                            const encode::BairePoint& f, Fuel fuel,
                                            ReductionReport* report) {
  if (report && report->reduction.empty()) report->reduction = "grilliot_exists2";
  note_input(report, "F", F.label);
  note_input(report, "f", f.label());

  if (!funct::verify_witness(F, w, {1, 2, 3}, fuel))
    return fail_report(report, Failure{Failure::Kind::ProviderInvalid,
                                       "discontinuity witness gap refuted at precision k0+2", {}});

  // q_f: follow x while no zero of f is in sight, jump to seq(N) at the least
  // zero N. Certified-no-zero inputs keep x itself (certificates included).
  encode::Real q_f = w.x;
  auto decided = f.decidable_has_zero();
  if (decided && *decided) {
    q_f = w.seq(static_cast<int>(to_u64(*f.least_zero_in_table())));
  } else if (!decided) {
    encode::BairePoint fc = f;
    encode::Real x = w.x;
    auto seq = w.seq;
    q_f = encode::Real::from_approx(
        [fc, x, seq](int m) {
          for (int n = 0; n <= m + 2; ++n)
            if (fc(Nat(n)) == 0) return seq(n).approx(m + 1);
          return x.approx(m + 1);
        },
        "q_f");
  }

  int k0 = w.gap_exponent;
  try {
    Rat d = (F.apply(q_f, fuel) - F.apply(w.x, fuel)).abs().approx(k0 + 3);
    int result = d >= pow2(-(k0 + 1)) ? 0 : 1;
    note_output(report, "gap approx = " + rat_str(d) + " -> " + std::to_string(result));
    note_ok(report);
    return result;
  } catch (const OutOfFuelSignal&) {
    return fail_report(report,
                       Failure{Failure::Kind::OutOfFuel, "F's evaluation exhausted its fuel", {}});
  }
}

// --- exists2_from_maximizer -----------------------------------------------------

namespace {

// lambda x. s*x with the slope carried exactly when y is exact.
RatFunction linear_fn(const encode::Real& y, bool negate) {
  RatFunction g;
  g.label = negate ? "-y*x" : "y*x";
  encode::Real base = y;
  g.at = [base, negate](const Rat& q) {
    encode::Real v = base.scale(q);
    return negate ? -v : v;
  };
  if (auto ex = y.exact()) g.linear_slope = negate ? Rat(-*ex) : *ex;
  return g;
}

RatFunction zero_fn() {
  RatFunction g;
  g.label = "0";
  g.at = [](const Rat&) { return encode::Real::from_rational(0); };
  g.linear_slope = Rat(0);
  return g;
}

RatFunction fixed_linear(const Rat& slope, std::string label) {
  RatFunction g;
  g.label = std::move(label);
  g.at = [slope](const Rat& q) { return encode::Real::from_rational(slope * q); };
  g.linear_slope = slope;
  return g;
}

// Grid refutation of a claimed maximizer value: some grid point beats the
// answer by a clear margin.
std::optional<std::string> refute_maximizer(const Maximizer& eps, const RatFunction& g) {
  encode::Real c = eps.argmax(g);
  Rat where = clamp01(c.approx(12));
  Rat at_answer = g.at(where).approx(15);
  for (Nat k = 0; k <= 64; ++k) {
    Rat q(k, 64);
    Rat v = g.at(q).approx(15);
    if (v - at_answer > Rat(1, 16)) {
      std::ostringstream os;
      os << "witness g = " << g.label << ": g(" << rat_str(q) << ") = " << rat_str(v)
         << " > g(eps(g)) = " << rat_str(at_answer);
      return os.str();
    }
  }
  return std::nullopt;
}

}  // namespace

std::variant<int, Failure> exists2_from_maximizer(const Maximizer& eps,
                                                  const encode::BairePoint& f, Fuel fuel,
                                                  ReductionReport* report) {
  if (report) report->reduction = "exists2_from_maximizer";
  note_input(report, "eps", eps.label);
  note_input(report, "f", f.label());

  // Probe the provider on rational family members before trusting it.
  for (const RatFunction& probe :
       {fixed_linear(Rat(-1), "\\x.-x"), fixed_linear(Rat(1), "\\x.x"), zero_fn()}) {
    if (auto refutation = refute_maximizer(eps, probe))
      return fail_report(report, Failure{Failure::Kind::ProviderInvalid, *refutation, {}});
  }

  // Effective case split on c = eps(0) at precision 3: a3 <= 1/2 certifies
  // c < 3/4 (branch A, slopes y*x), otherwise c > 1/4 (branch B, slopes -y*x).
  encode::Real c = eps.argmax(zero_fn());
  Rat a3 = c.approx(3);
  bool branch_a = a3 <= Rat(1, 2);
  note_line(report, std::string("branch ") + (branch_a ? "A (c < 3/4)" : "B (c > 1/4)") +
                        ", eps(0) ~ " + rat_str(a3));

  funct::RealMap phi;
  phi.label = branch_a ? "Phi_A" : "Phi_B";
  Maximizer eps_copy = eps;
  bool negate = !branch_a;
  phi.apply = [eps_copy, negate](const encode::Real& y, Fuel) {
    return eps_copy.argmax(linear_fn(y, negate));
  };

  funct::DiscontinuityWitness w;
  w.x = encode::Real::from_rational(0);
  w.seq = [](int n) { return encode::Real::from_rational(pow2(-n)); };
  w.gap_exponent = 2;

  if (!funct::verify_witness(phi, w, {1, 2, 3}, fuel))
    return fail_report(report, Failure{Failure::Kind::ProviderInvalid,
                                       "eps is not a maximizer on the slope family (witness gap "
                                       "refuted)",
                                       {}});

  return grilliot_exists2(phi, w, f, fuel, report);
}

// --- maximizer_from_exists2 -------------------------------------------------------

namespace {

struct Stage {
  Rat lo, hi;
  encode::BairePoint input;
  int answer = 1;  // E's answer
};

// One halving stage: does some right-half rational beat the left-half grid
// by the stage margin? Encoded as a certified zero-search input.
encode::BairePoint stage_input(const LipschitzFn& g, const Rat& lo, const Rat& hi, int m) {
  Rat mid = (lo + hi) / 2;
  Rat coarse = pow2(-(m + 2));
  Rat left_max = g.at(lo);
  for (Rat q = lo; q <= mid; q += coarse) left_max = std::max(left_max, g.at(q));
  left_max = std::max(left_max, g.at(mid));
  Rat margin = pow2(-(m + 3));
  std::vector<Nat> bits;
  for (Rat q = mid; q <= hi; q += margin) bits.push_back(g.at(q) >= left_max + margin ? 0 : 1);
  return encode::BairePoint::table(std::move(bits),
                                   encode::TailRule{encode::TailRule::Kind::Constant, 1, {}});
}

// Ground truth for a stage, by direct scan of the same candidates.
bool stage_truth(const encode::BairePoint& input) {
  return input.decidable_has_zero().value_or(false);
}

}  // namespace

std::variant<encode::Real, Failure> maximizer_from_exists2(const Exists2Decider& E,
                                                           const LipschitzFn& g, Fuel fuel,
                                                           ReductionReport* report) {
  if (report) report->reduction = "maximizer_from_exists2";
  note_input(report, "E", E.label);
  note_input(report, "g", g.label);

  const int total_stages = 20;
  std::vector<Stage> stages;
  Rat lo = 0, hi = 1;
  for (int m = 0; m < total_stages; ++m) {
    Stage s;
    s.lo = lo;
    s.hi = hi;
    s.input = stage_input(g, lo, hi, m);
    auto answer = E.decide(s.input, fuel);
    if (std::holds_alternative<OutOfFuel>(answer))
      return fail_report(report,
                         Failure{Failure::Kind::OutOfFuel, "decider ran out of fuel", {}});
    s.answer = std::get<int>(answer);
    Rat mid = (lo + hi) / 2;
    if (s.answer == 0)
      lo = mid;  // the right half certifiably wins
    else
      hi = mid;  // ties keep left
    stages.push_back(std::move(s));
  }
  Rat final_lo = lo, final_hi = hi;
  encode::Real x_star = encode::Real::from_rational((final_lo + final_hi) / 2);
  note_output(report, "x* ~ " + rat_str(x_star.approx(14)));

  // Post-validation: g(q) <= g(x*) + 2^-10 on the dyadic grid.
  Rat x_hat = clamp01(x_star.approx(14));
  Rat at_x = g.at(x_hat);
  Nat steps = Nat(1) << 12;
  for (Nat k = 0; k <= steps; ++k) {
    Rat q(k, steps);
    if (g.at(q) <= at_x + pow2(-10)) continue;
    // Validation failed: replay the stages against ground truth and emit the
    // input that refutes the decider.
    for (const Stage& s : stages) {
      bool truth = stage_truth(s.input);
      if ((s.answer == 0) != truth) {
        std::ostringstream os;
        os << "decider answered " << s.answer << " on a stage input whose zero-existence is "
           << (truth ? "true" : "false");
        return fail_report(report, Failure{Failure::Kind::ValidationFailed, os.str(), s.input});
      }
    }
    return fail_report(report, Failure{Failure::Kind::ValidationFailed,
                                       "maximum missed at q = " + rat_str(q) +
                                           " but every stage answer matches ground truth",
                                       {}});
  }
  note_ok(report);
  return x_star;
}

}  // namespace wb::reduce
