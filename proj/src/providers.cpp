#include "wb/providers.hpp"

#include <algorithm>

namespace wb::providers {

using encode::Real;
using reduce::Cover;
using reduce::PsiFunction;

Cover greedy_cover(const PsiFunction& psi, std::size_t max_balls) {
  Cover cover;
  Rat next = 0;
  while (true) {
    if (cover.size() >= max_balls)
      throw OracleFailure("greedy cover exceeded " + std::to_string(max_balls) + " balls");
    Rat c = next;
    Rat r = psi.value_at(c);
    cover.centers.push_back(encode::tilde_clamp(Real::from_rational(c)));
    cover.radii.push_back(r);
    next = c + r;
    if (next > 1) break;
  }
  return cover;
}

funct::Provider make_greedy_cover_provider(std::size_t max_balls) {
  funct::Provider p;
  p.kind = funct::ProviderKind::CoverOracle;
  p.instance_class = "greedy (piecewise/finitely-valued psi)";
  p.cover_answer = [max_balls](const PsiFunction& psi) { return greedy_cover(psi, max_balls); };
  return p;
}

funct::Provider make_single_ball_cover_provider() {
  funct::Provider p;
  p.kind = funct::ProviderKind::CoverOracle;
  p.instance_class = "single-ball (invalid on purpose)";
  p.cover_answer = [](const PsiFunction&) {
    Cover cover;
    cover.centers.push_back(encode::tilde_clamp(Real::from_rational(Rat(1, 2))));
    cover.radii.push_back(Rat(1, 2));
    return cover;
  };
  return p;
}

funct::Provider make_explicit_cover_provider(Cover cover) {
  funct::Provider p;
  p.kind = funct::ProviderKind::CoverOracle;
  p.instance_class = "explicit";
  p.cover_answer = [cover](const PsiFunction&) { return cover; };
  return p;
}

namespace {

nets::DirectedIndex dyadic_index(int level) {
  std::vector<encode::BairePoint> points;
  Nat steps = Nat(1) << level;
  for (Nat k = 0; k <= steps; ++k) points.push_back(reduce::center_point(Rat(k, steps)));
  return nets::DirectedIndex::of_points(points);
}

Rat exact_net_value(const nets::Net& net, const nets::DirectedIndex& w) {
  Real v = net.real_value(w);
  if (auto q = v.exact()) return *q;
  return v.approx(30);
}

}  // namespace

funct::Provider make_dyadic_modulus_provider(int max_level) {
  funct::Provider p;
  p.kind = funct::ProviderKind::ModulusOracle;
  p.instance_class = "dyadic refinement (exact-valued cover phalanxes)";
  p.modulus_answer = [max_level](const nets::Net& net) {
    return nets::Modulus{[&net, max_level](int) {
      for (int level = 0; level <= max_level; ++level) {
        nets::DirectedIndex w = dyadic_index(level);
        if (exact_net_value(net, w) == 1) return w;
      }
      throw OracleFailure("no covering dyadic index within the refinement budget");
    }};
  };
  return p;
}

funct::Provider make_adaptive_modulus_provider(std::size_t max_steps) {
  funct::Provider p;
  p.kind = funct::ProviderKind::ModulusOracle;
  p.instance_class = "adaptive endpoint sweep (cover phalanxes)";
  p.modulus_answer = [max_steps](const nets::Net& net) {
    return nets::Modulus{[&net, max_steps](int) {
      nets::DirectedIndex w = nets::DirectedIndex::empty();
      for (std::size_t step = 0; step < max_steps; ++step) {
        Rat v = exact_net_value(net, w);
        if (v == 1) return w;
        // The value names the leftmost uncovered endpoint B(w) = 2 * x_w.
        w = w.union_with(
            nets::DirectedIndex::of_points({reduce::center_point(Rat(2 * v))}));
      }
      throw OracleFailure("endpoint sweep found no covering index within its budget");
    }};
  };
  return p;
}

funct::Provider make_empty_modulus_provider() {
  funct::Provider p;
  p.kind = funct::ProviderKind::ModulusOracle;
  p.instance_class = "empty index (invalid on purpose)";
  p.modulus_answer = [](const nets::Net&) {
    return nets::Modulus{[](int) { return nets::DirectedIndex::empty(); }};
  };
  return p;
}

funct::Provider make_dyadic_net_limit_provider(int max_level, int window) {
  funct::Provider p;
  p.kind = funct::ProviderKind::NetLimitOracle;
  p.instance_class = "dyadic refinement with stabilization window";
  p.net_limit_answer = [max_level, window](const nets::Net& net) -> Real {
    std::optional<Rat> last;
    int stable = 0;
    for (int level = 0; level <= max_level; ++level) {
      Rat v = exact_net_value(net, dyadic_index(level));
      if (v > Rat(3, 4)) {
        if (last && v == *last)
          ++stable;
        else
          stable = 1;
        last = v;
        if (stable >= window) return Real::from_rational(v);
      }
    }
    if (last) return Real::from_rational(*last);
    throw OracleFailure("net never cleared 3/4 on dyadic indices");
  };
  return p;
}

funct::Provider make_constant_net_limit_provider(Rat value) {
  funct::Provider p;
  p.kind = funct::ProviderKind::NetLimitOracle;
  p.instance_class = "constant (invalid on purpose)";
  p.net_limit_answer = [value](const nets::Net&) { return Real::from_rational(value); };
  return p;
}

// --- NFP realizers -----------------------------------------------------------

namespace {

// Largest r(x) = max over pieces of (psi_j - dist(x, piece_j)): the best
// single canonical ball around x. Closed-piece distances; the associate
// value is chosen strictly below the minimum, which keeps containment valid
// for the half-open pieces as well.
Rat best_ball_slack(const PsiFunction& psi, const Rat& x) {
  const auto& bps = *psi.breakpoints();
  const auto& vals = *psi.piece_values();
  Rat best = vals[0] - boost::multiprecision::abs(x - bps[0]);  // piece 0 fallback
  for (std::size_t j = 0; j < vals.size(); ++j) {
    Rat lo = bps[j], hi = bps[j + 1];
    Rat dist = x < lo ? Rat(lo - x) : (x > hi ? Rat(x - hi) : Rat(0));
    best = std::max(best, Rat(vals[j] - dist));
  }
  return best;
}

std::vector<Rat> slack_candidates(const PsiFunction& psi, const Rat& lo, const Rat& hi) {
  const auto& bps = *psi.breakpoints();
  const auto& vals = *psi.piece_values();
  std::vector<Rat> xs{lo, hi};
  for (const Rat& b : bps)
    if (b > lo && b < hi) xs.push_back(b);
  // Crossings of descending and ascending tents.
  for (std::size_t j = 0; j < vals.size(); ++j)
    for (std::size_t l = 0; l < vals.size(); ++l) {
      if (j == l) continue;
      Rat x = (vals[j] - vals[l] + bps[j + 1] + bps[l]) / 2;
      if (x > lo && x < hi) xs.push_back(x);
    }
  return xs;
}

Rat min_slack(const PsiFunction& psi, const Rat& lo, const Rat& hi) {
  std::optional<Rat> m;
  for (const Rat& x : slack_candidates(psi, lo, hi)) {
    Rat s = best_ball_slack(psi, x);
    if (!m || s < *m) m = s;
  }
  return *m;
}

Nat exponent_strictly_below(const Rat& slack) {
  // least n with 2^-n < slack
  if (!(slack > 0)) throw OracleFailure("canonical cover has no positive Lebesgue slack");
  Nat n = 0;
  while (!(pow2(-static_cast<long>(to_u64(n))) < slack)) ++n;
  return n;
}

funct::Associate constant_associate(const Nat& value) {
  Nat v = value + 1;
  return funct::Associate{encode::BairePoint::host([v](const Nat&) { return v; }, "const-assoc")};
}

}  // namespace

funct::Provider make_uniform_nfp_provider() {
  funct::Provider p;
  p.kind = funct::ProviderKind::NFPRealizer;
  p.instance_class = "uniform constant associate (piecewise psi)";
  p.nfp_answer = [](const reduce::NfpCoverInstance& inst) {
    if (!inst.psi.breakpoints())
      throw OracleFailure("uniform NFP realizer handles piecewise psi only");
    Nat n = exponent_strictly_below(min_slack(inst.psi, 0, 1));
    return constant_associate(n);
  };
  return p;
}

funct::Provider make_split_nfp_provider() {
  funct::Provider p;
  p.kind = funct::ProviderKind::NFPRealizer;
  p.instance_class = "first-bit split associate (piecewise psi)";
  p.nfp_answer = [](const reduce::NfpCoverInstance& inst) {
    if (!inst.psi.breakpoints())
      throw OracleFailure("split NFP realizer handles piecewise psi only");
    Nat n_left = exponent_strictly_below(min_slack(inst.psi, 0, Rat(1, 2)));
    Nat n_right = exponent_strictly_below(min_slack(inst.psi, Rat(1, 2), 1));
    return funct::Associate{encode::BairePoint::host(
        [n_left, n_right](const Nat& code) -> Nat {
          encode::FinSeq sigma = encode::FinSeq::decode(code);
          if (sigma.empty()) return 0;
          return (sigma.at(0) == 0 ? n_left : n_right) + 1;
        },
        "split-assoc")};
  };
  return p;
}

funct::Provider make_constant_nfp_provider(Nat value) {
  funct::Provider p;
  p.kind = funct::ProviderKind::NFPRealizer;
  p.instance_class = "explicit constant associate";
  p.nfp_answer = [value](const reduce::NfpCoverInstance&) { return constant_associate(value); };
  return p;
}

funct::Provider make_broken_nfp_provider() {
  funct::Provider p;
  p.kind = funct::ProviderKind::NFPRealizer;
  p.instance_class = "stability-violating associate (invalid on purpose)";
  p.nfp_answer = [](const reduce::NfpCoverInstance&) {
    return funct::Associate{encode::BairePoint::host(
        [](const Nat& code) -> Nat {
          return encode::FinSeq::decode(code).size() == 1 ? 2 : 0;
        },
        "broken-assoc")};
  };
  return p;
}

// --- maximizers & deciders ------------------------------------------------------

reduce::Maximizer make_grid_argmax_maximizer() {
  reduce::Maximizer m;
  m.label = "grid-argmax";
  m.argmax = [](const reduce::RatFunction& g) -> Real {
    if (g.linear_slope) {
      // Exact linear instances are answered by slope sign; flat keeps the
      // left endpoint.
      return Real::from_rational(*g.linear_slope > 0 ? 1 : 0);
    }
    auto at = g.at;
    return Real::from_approx(
        [at](int prec) {
          Nat steps = Nat(1) << (prec + 2);
          int p = prec + 8;
          Rat margin = pow2(-(prec + 6));
          Rat best = 0;
          Real best_val = at(Rat(0));
          for (Nat k = 1; k <= steps; ++k) {
            Rat q(k, steps);
            Real v = at(q);
            bool better;
            if (v.exact() && best_val.exact())
              better = *v.exact() > *best_val.exact();
            else
              better = v.approx(p) - best_val.approx(p) > margin;
            if (better) {
              best = q;
              best_val = v;
            }
          }
          return best;
        },
        "argmax");
  };
  return m;
}

reduce::Maximizer make_constant_maximizer(Rat value) {
  reduce::Maximizer m;
  m.label = "constant " + rat_str(value);
  m.argmax = [value](const reduce::RatFunction&) { return Real::from_rational(value); };
  return m;
}

reduce::Exists2Decider make_certified_exists2_decider() {
  reduce::Exists2Decider d;
  d.label = "certified zero-search";
  d.decide = [](const encode::BairePoint& f, Fuel fuel) { return funct::exists2(f, fuel); };
  return d;
}

reduce::Exists2Decider make_always_one_decider() {
  reduce::Exists2Decider d;
  d.label = "always-one (dishonest)";
  d.decide = [](const encode::BairePoint&, Fuel) -> std::variant<int, OutOfFuel> { return 1; };
  return d;
}

}  // namespace wb::providers
