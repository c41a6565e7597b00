#include "wb/funct.hpp"

#include <random>

namespace wb::funct {

namespace {

// Enumerate all FinSeqs of the given length with entries < max_entry.
void enumerate_seqs(std::size_t length, const Nat& max_entry,
                    const std::function<void(const encode::FinSeq&)>& fn) {
  std::vector<Nat> cur(length, Nat(0));
  while (true) {
    fn(encode::FinSeq(cur));
    std::size_t i = 0;
    for (; i < length; ++i) {
      if (++cur[i] < max_entry) break;
      cur[i] = 0;
    }
    if (i == length) break;
    if (length == 0) break;
  }
}

encode::BairePoint random_table_point(std::mt19937_64& rng, const Nat& max_entry) {
  std::size_t support = rng() % 6;
  std::uint64_t bound = max_entry.convert_to<std::uint64_t>();
  std::vector<Nat> prefix;
  for (std::size_t i = 0; i < support; ++i) prefix.push_back(Nat(rng() % bound));
  encode::TailRule tail;
  if (rng() % 2 == 0) {
    tail.kind = encode::TailRule::Kind::Constant;
    tail.constant = Nat(rng() % bound);
  } else {
    tail.kind = encode::TailRule::Kind::Periodic;
    std::size_t len = 1 + rng() % 3;
    for (std::size_t i = 0; i < len; ++i) tail.word.push_back(Nat(rng() % bound));
  }
  return encode::BairePoint::table(std::move(prefix), std::move(tail));
}

}  // namespace

bool check_neighbourhood(const Associate& alpha, const NeighbourhoodCheckParams& params) {
  // Stability: alpha(sigma) > 0 implies alpha(sigma*tau) = alpha(sigma).
  for (int slen = 0; slen <= params.depth; ++slen) {
    bool ok = true;
    enumerate_seqs(static_cast<std::size_t>(slen), params.max_entry,
                   [&](const encode::FinSeq& sigma) {
                     if (!ok) return;
                     Nat v = alpha.at(sigma);
                     if (v == 0) return;
                     for (int tlen = 1; slen + tlen <= params.depth; ++tlen) {
                       enumerate_seqs(static_cast<std::size_t>(tlen), params.max_entry,
                                      [&](const encode::FinSeq& tau) {
                                        if (!ok) return;
                                        if (alpha.at(sigma.concat(tau)) != v) ok = false;
                                      });
                       if (!ok) return;
                     }
                   });
    if (!ok) return false;
  }
  // Securing on sampled points.
  std::mt19937_64 rng(params.seed);
  for (int s = 0; s < params.beta_samples; ++s) {
    encode::BairePoint beta = random_table_point(rng, params.max_entry);
    if (std::holds_alternative<OutOfFuel>(eval_associate(alpha, beta, params.securing_fuel)))
      return false;
  }
  return true;
}

std::variant<Nat, OutOfFuel> eval_associate(const Associate& alpha,
                                            const encode::BairePoint& beta, Fuel fuel) {
  std::vector<Nat> segment;
  for (Fuel n = 0; n <= fuel; ++n) {
    Nat v = alpha.at(encode::FinSeq(segment));
    if (v > 0) return Nat(v - 1);
    segment.push_back(beta(Nat(segment.size())));
  }
  return OutOfFuel{};
}

std::variant<int, OutOfFuel> exists2(const encode::BairePoint& f, Fuel fuel) {
  // A table point decides the question outright.
  if (auto has_zero = f.decidable_has_zero()) return *has_zero ? 0 : 1;
  for (Fuel n = 0; n < fuel; ++n)
    if (f(Nat(n)) == 0) return 0;
  return OutOfFuel{};
}

Functional2 Functional2::continuous(Associate a, std::string label) {
  Functional2 f;
  f.assoc_ = std::move(a);
  f.label_ = std::move(label);
  return f;
}

Functional2 Functional2::native(std::function<Nat(const encode::BairePoint&)> fn,
                                std::string label,
                                std::shared_ptr<const DiscontinuityWitness> witness) {
  Functional2 f;
  f.native_ = std::move(fn);
  f.witness_ = std::move(witness);
  f.label_ = std::move(label);
  return f;
}

std::variant<Nat, OutOfFuel> Functional2::eval(const encode::BairePoint& beta, Fuel fuel) const {
  if (assoc_) return eval_associate(*assoc_, beta, fuel);
  try {
    return native_(beta);
  } catch (const OutOfFuelSignal&) {
    return OutOfFuel{};
  }
}

std::vector<encode::BairePoint> enumerate_witnesses(const WitnessSearchBound& bound) {
  std::vector<encode::BairePoint> out;
  enumerate_seqs(bound.max_support, bound.max_value, [&](const encode::FinSeq& seq) {
    out.push_back(encode::BairePoint::table(
        seq.entries(), encode::TailRule{encode::TailRule::Kind::Constant, 0, {}}));
  });
  return out;
}

JumpAnswer jump_J(const Functional2OnPairs& Y, const Nat& n, const WitnessSearchBound& bound) {
  for (const auto& g : enumerate_witnesses(bound))
    if (Y.eval(g, n) == 0) return InJ{g};
  if (bound.exhaustive) return NotInJ{};
  return UnknownJ{};
}

namespace {

// Depth-first exhaustion of the secured binary tree. Every branch must reach
// a node with alpha > 0; the bound is the max value over those leaves.
std::optional<Nat> fan_exhaust(const Associate& alpha, std::vector<Nat>& sigma, Fuel& nodes) {
  if (nodes == 0) return std::nullopt;
  --nodes;
  Nat v = alpha.at(encode::FinSeq(sigma));
  if (v > 0) return Nat(v - 1);
  Nat best = 0;
  for (int bit = 0; bit <= 1; ++bit) {
    sigma.push_back(Nat(bit));
    auto sub = fan_exhaust(alpha, sigma, nodes);
    sigma.pop_back();
    if (!sub) return std::nullopt;
    best = std::max(best, *sub);
  }
  return best;
}

}  // namespace

std::variant<Nat, OutOfFuel> fan_bound(const Associate& alpha, Fuel fuel) {
  std::vector<Nat> sigma;
  Fuel nodes = fuel;
  auto r = fan_exhaust(alpha, sigma, nodes);
  if (!r) return OutOfFuel{};
  return *r;
}

bool verify_witness(const RealMap& F, const DiscontinuityWitness& w,
                    const std::vector<int>& sample_ns, Fuel fuel) {
  int p = w.gap_exponent + 2;
  try {
    encode::Real fx = F.apply(w.x, fuel);
    for (int n : sample_ns) {
      encode::Real fn = F.apply(w.seq(n), fuel);
      Rat gap = (fn - fx).abs().approx(p);
      // |F(x_n) - F(x)| >= 2^-k0 must be visible at precision k0+2.
      if (gap + pow2(-p) < pow2(-w.gap_exponent)) return false;
    }
  } catch (const OutOfFuelSignal&) {
    return false;
  }
  return true;
}

std::string provider_kind_name(ProviderKind kind) {
  switch (kind) {
    case ProviderKind::CoverOracle: return "cover";
    case ProviderKind::NetLimitOracle: return "net-limit";
    case ProviderKind::ModulusOracle: return "modulus";
    case ProviderKind::NFPRealizer: return "nfp";
    case ProviderKind::ChoiceOracle: return "choice";
  }
  return "?";
}

}  // namespace wb::funct
