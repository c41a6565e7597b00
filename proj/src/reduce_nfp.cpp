#include "wb/reduce.hpp"

#include <random>

namespace wb::reduce {

namespace {

void note_input(ReductionReport* r, const std::string& k, const std::string& v) {
  if (r) r->inputs.emplace_back(k, v);
}
Failure fail_report(ReductionReport* r, Failure f) {
  if (r) r->note_failure(f);
  return f;
}

}  // namespace

std::variant<funct::Associate, Failure> nfp_from_comprehension(
    const encode::CharSet& A_on_codes, const NfpFromComprehensionParams& params,
    ReductionReport* report) {
  if (report) report->reduction = "nfp_from_comprehension";
  note_input(report, "A", A_on_codes.label());

  encode::CharSet A = A_on_codes;
  // gamma(sigma) = |sigma'|+1 for the least secured prefix sigma', else 0:
  // stabilizing at the first secured prefix keeps the stability clause.
  encode::BairePoint alpha = encode::BairePoint::host(
      [A](const Nat& code) -> Nat {
        encode::FinSeq sigma = encode::FinSeq::decode(code);
        for (std::size_t len = 0; len <= sigma.size(); ++len) {
          encode::FinSeq prefix = sigma.prefix(len);
          if (A.member_nat(prefix.code())) return Nat(len + 1);
        }
        return 0;
      },
      "gamma(" + A_on_codes.label() + ")");
  funct::Associate gamma{alpha};

  // Spot-check the antecedent: every sampled point must reach a secured prefix.
  std::mt19937_64 rng(params.seed);
  std::uint64_t entry_bound = to_u64(params.sample_max_entry);
  for (int s = 0; s < params.antecedent_samples; ++s) {
    std::vector<Nat> prefix;
    std::size_t len = rng() % 6;
    for (std::size_t i = 0; i < len; ++i) prefix.push_back(Nat(rng() % entry_bound));
    encode::BairePoint f = encode::BairePoint::table(
        prefix,
        encode::TailRule{encode::TailRule::Kind::Constant, Nat(rng() % entry_bound), {}});
    bool secured = false;
    for (int n = 0; n <= params.antecedent_depth; ++n) {
      if (A.member_nat(encode::initial_segment(f, n).code())) {
        secured = true;
        break;
      }
    }
    if (!secured)
      return fail_report(report,
                         Failure{Failure::Kind::AntecedentRefuted,
                                 "sampled point reaches no secured prefix within depth " +
                                     std::to_string(params.antecedent_depth),
                                 f});
  }
  if (report && report->verdict.empty()) report->verdict = "Validated";
  if (report) report->output_lines.push_back("gamma constructed");
  return gamma;
}

encode::CharSet finite_comprehension(const std::function<bool(const Nat&)>& A, const Nat& k) {
  std::vector<bool> table;
  table.reserve(to_u64(k) + 1);
  for (Nat n = 0; n <= k; ++n) table.push_back(A(n));
  return encode::CharSet::on_nat(
      [table](const Nat& n) {
        if (n >= Nat(table.size())) return false;
        return static_cast<bool>(table[n.convert_to<std::size_t>()]);
      },
      "finite-comprehension");
}

}  // namespace wb::reduce
