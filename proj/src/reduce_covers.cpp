#include "wb/reduce.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace wb::reduce {

// --- failures & reports ------------------------------------------------------

std::string failure_kind_name(Failure::Kind kind) {
  switch (kind) {
    case Failure::Kind::ProviderInvalid: return "ProviderInvalid";
    case Failure::Kind::ValidationFailed: return "ValidationFailed";
    case Failure::Kind::OutOfFuel: return "OutOfFuel";
    case Failure::Kind::NoWitness: return "NoWitness";
    case Failure::Kind::AntecedentRefuted: return "AntecedentRefuted";
  }
  return "?";
}

void ReductionReport::note_failure(const Failure& f) {
  verdict = failure_kind_name(f.kind);
  detail = f.detail;
}

void ReductionReport::note_machine_run(const omachine::Halted& halted) {
  machine_lines.push_back("steps=" + std::to_string(halted.trace.configs.size() - 1) +
                          " queries=" + std::to_string(halted.trace.queries.size()) +
                          " digest=" + halted.trace.digest());
  if (include_full_traces) {
    std::istringstream in(halted.trace.to_string());
    std::string line;
    while (std::getline(in, line)) machine_lines.push_back("| " + line);
  }
}

std::string ReductionReport::render(const std::string& timestamp) const {
  std::ostringstream os;
  os << "reduction: " << reduction << "\n";
  os << "timestamp: " << timestamp << "\n";
  os << "inputs:\n";
  for (const auto& [k, v] : inputs) os << "  " << k << ": " << v << "\n";
  if (!provider_lines.empty()) {
    os << "providers:\n";
    for (const auto& l : provider_lines) os << "  " << l << "\n";
  }
  if (!machine_lines.empty()) {
    os << "machine:\n";
    for (const auto& l : machine_lines) os << "  " << l << "\n";
  }
  if (!output_lines.empty()) {
    os << "output:\n";
    for (const auto& l : output_lines) os << "  " << l << "\n";
  }
  os << "validation: " << (detail.empty() ? "ok" : detail) << "\n";
  os << "verdict: " << (verdict.empty() ? "Validated" : verdict) << "\n";
  return os.str();
}

namespace {

void note_input(ReductionReport* r, const std::string& k, const std::string& v) {
  if (r) r->inputs.emplace_back(k, v);
}
void note_provider(ReductionReport* r, const std::string& line) {
  if (r) r->provider_lines.push_back(line);
}
void note_output(ReductionReport* r, const std::string& line) {
  if (r) r->output_lines.push_back(line);
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

// --- PsiFunction ---------------------------------------------------------------

PsiFunction PsiFunction::piecewise(std::vector<Rat> breakpoints, std::vector<Rat> values) {
  if (breakpoints.size() < 2 || breakpoints.front() != 0 || breakpoints.back() != 1)
    throw std::invalid_argument("piecewise psi needs breakpoints from 0 to 1");
  if (values.size() + 1 != breakpoints.size())
    throw std::invalid_argument("piecewise psi needs one value per piece");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw std::invalid_argument("piecewise psi breakpoints must increase");
  for (const Rat& v : values)
    if (!(v > 0)) throw std::invalid_argument("psi must be strictly positive");
  PsiFunction p;
  p.kind_ = Kind::PiecewiseConstant;
  p.breakpoints_ = std::move(breakpoints);
  p.values_ = std::move(values);
  std::ostringstream os;
  os << "piecewise[";
  for (std::size_t i = 0; i < p.values_.size(); ++i) {
    if (i) os << ",";
    os << rat_str(p.values_[i]) << "@[" << rat_str(p.breakpoints_[i]) << ","
       << rat_str(p.breakpoints_[i + 1]) << ")";
  }
  os << "]";
  p.label_ = os.str();
  return p;
}

PsiFunction PsiFunction::nin_form(RealToNat Z) {
  PsiFunction p;
  p.kind_ = Kind::NinForm;
  p.label_ = "2^-(" + Z.label + "(x)+1)";
  p.fn_ = [Z = std::move(Z)](const Rat& x) {
    Nat z = Z.eval(encode::Real::from_rational(x));
    return pow2(-(static_cast<long>(to_u64(z)) + 1));
  };
  return p;
}

PsiFunction PsiFunction::cantor_form(RealToNat Y, encode::CharSet A) {
  PsiFunction p;
  p.kind_ = Kind::CantorForm;
  p.label_ = "t(" + Y.label + "," + A.label() + ")";
  p.fn_ = [Y = std::move(Y), A = std::move(A)](const Rat& x) {
    encode::Real r = encode::Real::from_rational(x);
    if (A.member_real(r)) return pow2(-(static_cast<long>(to_u64(Y.eval(r))) + 5));
    return Rat(1, 8);
  };
  return p;
}

PsiFunction PsiFunction::host(std::function<Rat(const Rat&)> fn, std::string label) {
  PsiFunction p;
  p.kind_ = Kind::TermBacked;
  p.fn_ = std::move(fn);
  p.label_ = std::move(label);
  return p;
}

Rat PsiFunction::value_at(const Rat& x) const {
  ++*queries_;
  if (kind_ == Kind::PiecewiseConstant) {
    Rat q = clamp01(x);
    std::size_t piece = 0;
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
      if (q >= breakpoints_[i]) piece = i;
    return values_[piece];
  }
  Rat v = fn_(x);
  if (!(v > 0)) throw OracleFailure("psi returned a nonpositive radius at " + rat_str(x));
  return v;
}

const std::vector<Rat>* PsiFunction::breakpoints() const {
  return kind_ == Kind::PiecewiseConstant ? &breakpoints_ : nullptr;
}
const std::vector<Rat>* PsiFunction::piece_values() const {
  return kind_ == Kind::PiecewiseConstant ? &values_ : nullptr;
}

// --- covers & sweeps -----------------------------------------------------------

std::string Cover::to_string() const {
  std::ostringstream os;
  os << size() << " balls:";
  for (std::size_t i = 0; i < size(); ++i) {
    os << " B(";
    if (auto q = centers[i].exact())
      os << rat_str(*q);
    else
      os << "~" << rat_str(centers[i].approx(20));
    os << "," << rat_str(radii[i]) << ")";
  }
  return os.str();
}

std::vector<std::pair<Rat, Rat>> cover_intervals(const Cover& cover, int precision) {
  std::vector<std::pair<Rat, Rat>> out;
  out.reserve(cover.size());
  for (std::size_t i = 0; i < cover.size(); ++i) {
    Rat c = cover.centers[i].exact() ? *cover.centers[i].exact() : cover.centers[i].approx(precision);
    out.emplace_back(c - cover.radii[i], c + cover.radii[i]);
  }
  return out;
}

bool rational_cover_check(const std::vector<std::pair<Rat, Rat>>& intervals) {
  // Sweep the least rational that still needs covering; exact since all data
  // is rational.
  Rat next = 0;
  while (next <= 1) {
    std::optional<Rat> reach;
    for (const auto& [l, r] : intervals)
      if (l < next && next < r && (!reach || r > *reach)) reach = r;
    if (!reach) return false;
    next = *reach;
  }
  return true;
}

Rat leftmost_uncovered_endpoint(const std::vector<std::pair<Rat, Rat>>& intervals) {
  std::vector<Rat> candidates{Rat(0), Rat(1)};
  for (const auto& [l, r] : intervals) {
    if (l >= 0 && l <= 1) candidates.push_back(l);
    if (r >= 0 && r <= 1) candidates.push_back(r);
  }
  std::sort(candidates.begin(), candidates.end());
  for (const Rat& e : candidates) {
    bool covered = false;
    for (const auto& [l, r] : intervals)
      if (l < e && e < r) {
        covered = true;
        break;
      }
    if (!covered) return e;
  }
  return 0;
}

std::optional<Rat> exact_lebesgue_number(const std::vector<std::pair<Rat, Rat>>& intervals) {
  // delta* = min over critical a of M(a) - a, where M(a) is the furthest
  // right endpoint among intervals with l < a; positions with M(a) >= 1 are
  // unconstrained. Critical a: 0, 1 and left endpoints inside (0,1).
  std::vector<Rat> critical{Rat(0), Rat(1)};
  for (const auto& [l, r] : intervals)
    if (l > 0 && l < 1) critical.push_back(l);
  std::optional<Rat> best;
  for (const Rat& a : critical) {
    std::optional<Rat> reach;
    for (const auto& [l, r] : intervals)
      if (l < a && (!reach || r > *reach)) reach = r;
    if (!reach || *reach <= a) return std::nullopt;  // a (or points right of it) uncovered
    if (*reach >= 1) continue;
    Rat slack = *reach - a;
    if (!best || slack < *best) best = slack;
  }
  if (!best) return Rat(2);  // every critical point reaches past 1
  return best;
}

bool cover_valid_on_grid(const Cover& cover, int grid_exp) {
  auto intervals = cover_intervals(cover);
  Nat steps = Nat(1) << grid_exp;
  for (Nat k = 0; k <= steps; ++k) {
    Rat q = Rat(k, steps);
    bool inside = false;
    for (const auto& [l, r] : intervals)
      if (l < q && q < r) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

namespace {

// Is [a, b] inside B(y, psi(y)) for some y in [0,1]?
bool segment_fits_in_canonical_ball(const Rat& a, const Rat& b, const PsiFunction& psi,
                                    int grid_exp) {
  if (const auto* bps = psi.breakpoints()) {
    const auto& values = *psi.piece_values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const Rat& v = values[i];
      // y must satisfy y - v < a and b < y + v, i.e. y in (b - v, a + v).
      Rat lo = b - v, hi = a + v;
      if (!(lo < hi)) continue;
      Rat p = (*bps)[i], q = (*bps)[i + 1];
      bool last = i + 1 == values.size();
      Rat y_lo = std::max(lo, p);
      // Any real y with max(lo, p) < y < min(hi, q) works; the last piece is
      // closed at 1, so y = 1 is also a candidate.
      if (y_lo < std::min(hi, q)) return true;
      if (last && lo < 1 && 1 < hi) return true;
    }
    return false;
  }
  // Witness scan near the segment for non-piecewise classes.
  std::vector<Rat> candidates{a, b, (a + b) / 2};
  Rat step = pow2(-(grid_exp + 2));
  for (int i = 1; i <= 4; ++i) {
    candidates.push_back(a - i * step);
    candidates.push_back(b + i * step);
  }
  for (Rat y : candidates) {
    y = clamp01(y);
    Rat v = psi.value_at(y);
    if (y - v < a && b < y + v) return true;
  }
  return false;
}

}  // namespace

bool grid_lebesgue_check(const Rat& delta, const PsiFunction& psi, int grid_exp) {
  if (!(delta > 0)) return false;
  Nat steps = Nat(1) << grid_exp;
  for (Nat k = 0; k < steps; ++k) {
    Rat a = Rat(k, steps);
    Rat b = std::min(Rat(1), Rat(a + delta));
    if (!segment_fits_in_canonical_ball(a, b, psi, grid_exp)) return false;
  }
  return true;
}

// --- index points and the Heine-Borel phalanx ----------------------------------

Rat index_point_center(const encode::BairePoint& p) { return clamp01(rat_decode(p(0))); }

encode::BairePoint center_point(const Rat& q) {
  return encode::BairePoint::table(
      {}, encode::TailRule{encode::TailRule::Kind::Constant, rat_code(q), {}});
}

namespace {

struct IndexBalls {
  std::vector<Rat> centers;
  std::vector<Rat> radii;
  std::vector<std::pair<Rat, Rat>> intervals;
};

IndexBalls balls_of_index(const nets::DirectedIndex& w, const PsiFunction& psi) {
  IndexBalls out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Rat c = index_point_center(w.point(i));
    Rat r = psi.value_at(c);
    out.centers.push_back(c);
    out.radii.push_back(r);
    out.intervals.emplace_back(c - r, c + r);
  }
  return out;
}

// Cover with all the balls' endpoints adjoined as extra centers.
Cover adjoin_endpoints(const IndexBalls& balls, const PsiFunction& psi) {
  std::vector<std::pair<Rat, Rat>> seen;
  Cover cover;
  auto add = [&](const Rat& c, const Rat& r) {
    if (std::find(seen.begin(), seen.end(), std::make_pair(c, r)) != seen.end()) return;
    seen.emplace_back(c, r);
    cover.centers.push_back(tilde_clamp(encode::Real::from_rational(c)));
    cover.radii.push_back(r);
  };
  for (std::size_t i = 0; i < balls.centers.size(); ++i) add(balls.centers[i], balls.radii[i]);
  for (std::size_t i = 0; i < balls.centers.size(); ++i) {
    for (const Rat& e : {Rat(balls.centers[i] - balls.radii[i]), Rat(balls.centers[i] + balls.radii[i])}) {
      Rat c = clamp01(e);
      add(c, psi.value_at(c));
    }
  }
  return cover;
}

int lebesgue_exponent(const Rat& delta_star) {
  int n = 0;
  while (pow2(-n) > delta_star) ++n;
  return n;
}

}  // namespace

nets::Net hbu_net(const PsiFunction& psi) {
  return nets::Net::unit([psi](const nets::DirectedIndex& w) {
    IndexBalls balls = balls_of_index(w, psi);
    if (rational_cover_check(balls.intervals)) return encode::Real::from_rational(1);
    Rat b = leftmost_uncovered_endpoint(balls.intervals);
    return encode::Real::from_rational(b / 2);
  });
}

// --- hbu_from_modulus ------------------------------------------------------------

std::variant<Cover, Failure> hbu_from_modulus(const PsiFunction& psi,
                                              const funct::Provider& modulus_provider,
                                              const EvalBudget& /*budget*/,
                                              ReductionReport* report) {
  if (report) report->reduction = "hbu_from_modulus";
  note_input(report, "psi", psi.label());
  note_input(report, "provider", modulus_provider.instance_class);

  nets::Net net = hbu_net(psi);
  nets::Modulus mod = modulus_provider.modulus_answer(net);
  nets::DirectedIndex w2 = mod.at(2);
  note_provider(report, "modulus(2) = " + w2.to_string() + " (" +
                            std::to_string(w2.size()) + " points)");

  // x_{w_2} is either exactly 1 or at most 1/2, so |x_{w_2} - 1| < 1/4 forces 1.
  IndexBalls balls = balls_of_index(w2, psi);
  if (!rational_cover_check(balls.intervals)) {
    Rat x = leftmost_uncovered_endpoint(balls.intervals) / 2;
    return fail_report(report,
                       Failure{Failure::Kind::ProviderInvalid,
                               "modulus refuted: x_{w2} = " + rat_str(x) + " != 1", {}});
  }

  Cover cover = adjoin_endpoints(balls, psi);
  note_output(report, cover.to_string());
  if (!cover_valid_on_grid(cover, 12))
    return fail_report(report,
                       Failure{Failure::Kind::ValidationFailed, "cover misses a grid point", {}});
  note_ok(report);
  return cover;
}

// --- lebesgue_from_netlimit -------------------------------------------------------

std::variant<Rat, Failure> lebesgue_from_netlimit(const PsiFunction& psi,
                                                  const funct::Provider& limit_provider,
                                                  const EvalBudget& budget,
                                                  ReductionReport* report) {
  if (report) report->reduction = "lebesgue_from_netlimit";
  note_input(report, "psi", psi.label());
  note_input(report, "provider", limit_provider.instance_class);

  // The modified phalanx: covering indices emit 3/4 + 2^-(N+3) for the least
  // N with 2^-N a Lebesgue number of the endpoint-adjoined cover.
  PsiFunction psi_copy = psi;
  nets::Net modified = nets::Net::unit([psi_copy](const nets::DirectedIndex& w) {
    IndexBalls balls = balls_of_index(w, psi_copy);
    if (!rational_cover_check(balls.intervals)) {
      Rat b = leftmost_uncovered_endpoint(balls.intervals);
      return encode::Real::from_rational(b / 2);
    }
    Cover adjoined = adjoin_endpoints(balls, psi_copy);
    auto delta = exact_lebesgue_number(cover_intervals(adjoined));
    if (!delta) throw OracleFailure("adjoined cover fails to cover [0,1]");
    int n = lebesgue_exponent(*delta);
    return encode::Real::from_rational(Rat(3, 4) + pow2(-(n + 3)));
  });

  encode::Real y = limit_provider.net_limit_answer(modified);
  note_provider(report, "net limit ~ " + rat_str(y.approx(12)));

  // Recovery from y alone: search the least N whose candidate value matches.
  encode::BairePoint exponent_match = encode::BairePoint::host(
      [y](const Nat& n) -> Nat {
        int N = static_cast<int>(to_u64(n));
        Rat candidate = Rat(3, 4) + pow2(-(N + 3));
        Rat got = y.approx(N + 5);
        return boost::multiprecision::abs(got - candidate) <= pow2(-(N + 5)) ? 0 : 1;
      },
      "exponent-match");
  auto run = omachine::run(omachine::least_zero_search_program(), exponent_match,
                           encode::FinSeq{}, budget);
  if (std::holds_alternative<OutOfFuel>(run))
    return fail_report(report, Failure{Failure::Kind::OutOfFuel,
                                       "recovery search found no exponent (limit not of the "
                                       "expected form)",
                                       {}});
  if (std::holds_alternative<omachine::MalformedProgram>(run))
    return fail_report(report, Failure{Failure::Kind::OutOfFuel, "machine rejected program", {}});
  const auto& halted = std::get<omachine::Halted>(run);
  int N = static_cast<int>(to_u64(halted.value));
  if (report) report->note_machine_run(halted);
  Rat delta = pow2(-N);
  note_output(report, "delta = " + rat_str(delta) + " (N = " + std::to_string(N) + ")");

  if (!grid_lebesgue_check(delta, psi, 12))
    return fail_report(report, Failure{Failure::Kind::ValidationFailed,
                                       "delta fails the grid Lebesgue check", {}});
  note_ok(report);
  return delta;
}

// --- lebesgue_from_nfp -------------------------------------------------------------

std::variant<Rat, Failure> lebesgue_from_nfp(const PsiFunction& psi,
                                             const funct::Provider& nfp_provider,
                                             const EvalBudget& budget, ReductionReport* report) {
  if (report) report->reduction = "lebesgue_from_nfp";
  note_input(report, "psi", psi.label());
  note_input(report, "provider", nfp_provider.instance_class);

  funct::Associate gamma = nfp_provider.nfp_answer(NfpCoverInstance{psi});
  note_provider(report, "gamma received");

  funct::NeighbourhoodCheckParams params;
  params.depth = 6;
  params.max_entry = 2;
  params.beta_samples = 16;
  params.securing_fuel = budget.fuel;
  if (!funct::check_neighbourhood(gamma, params))
    return fail_report(report, Failure{Failure::Kind::ProviderInvalid,
                                       "gamma is not a neighbourhood function", {}});

  // Spot-check the realization: B(r(f), 2^-gamma(f)) inside a canonical ball.
  std::mt19937_64 rng(7);
  for (int s = 0; s < 24; ++s) {
    std::vector<Nat> prefix;
    std::size_t len = rng() % 8;
    for (std::size_t i = 0; i < len; ++i) prefix.push_back(Nat(rng() % 2));
    encode::BairePoint f = encode::BairePoint::table(
        prefix, encode::TailRule{encode::TailRule::Kind::Constant, Nat(rng() % 2), {}});
    auto n_f = funct::eval_associate(gamma, f, budget.fuel);
    if (std::holds_alternative<OutOfFuel>(n_f))
      return fail_report(report,
                         Failure{Failure::Kind::ProviderInvalid, "gamma unsecured on a sample", {}});
    Rat x = *encode::cantor_real(f).exact();
    Rat r = pow2(-static_cast<long>(to_u64(std::get<Nat>(n_f))));
    if (!segment_fits_in_canonical_ball(std::max(Rat(0), Rat(x - r)), std::min(Rat(1), Rat(x + r)), psi, 12))
      return fail_report(report, Failure{Failure::Kind::ProviderInvalid,
                                         "gamma's ball at r(f)=" + rat_str(x) +
                                             " fits no canonical ball",
                                         {}});
  }

  // The bound over the binary tree is all the final stage reads.
  auto k0 = funct::fan_bound(gamma, budget.fuel);
  if (std::holds_alternative<OutOfFuel>(k0))
    return fail_report(report,
                       Failure{Failure::Kind::OutOfFuel, "fan bound tree not exhausted", {}});
  long k = static_cast<long>(to_u64(std::get<Nat>(k0)));
  Rat delta = pow2(-k);
  note_output(report, "fan bound = " + std::to_string(k) + ", delta = " + rat_str(delta));

  if (!grid_lebesgue_check(delta, psi, 12))
    return fail_report(report, Failure{Failure::Kind::ValidationFailed,
                                       "delta fails the grid Lebesgue check", {}});
  note_ok(report);
  return delta;
}

// --- nin_from_hbu --------------------------------------------------------------------

std::variant<NinWitness, Failure> nin_from_hbu(const RealToNat& Z,
                                               const funct::Provider& cover_provider,
                                               const EvalBudget& budget,
                                               ReductionReport* report) {
  if (report) report->reduction = "nin_from_hbu";
  note_input(report, "Z", Z.label);
  note_input(report, "provider", cover_provider.instance_class);

  PsiFunction psi = PsiFunction::nin_form(Z);
  Cover cover = cover_provider.cover_answer(psi);
  note_provider(report, cover.to_string());
  for (const Rat& r : cover.radii)
    if (!(r > 0))
      return fail_report(report,
                         Failure{Failure::Kind::ProviderInvalid, "cover has a nonpositive radius", {}});

  // Flattened oracle data x_0, t(Z)(x_0), ..., x_k, t(Z)(x_k): the machine
  // sees nothing else. Pairs cycle fastest, depth grows once per round.
  std::vector<encode::Real> centers = cover.centers;
  std::vector<Rat> radii = cover.radii;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < centers.size(); ++i)
    for (std::size_t j = i + 1; j < centers.size(); ++j) pairs.emplace_back(i, j);

  encode::BairePoint collision_oracle = encode::BairePoint::host(
      [centers, radii, pairs](const Nat& s) -> Nat {
        if (pairs.empty()) return 1;
        Nat rank = s % Nat(pairs.size());
        Nat depth = s / Nat(pairs.size());
        auto [i, j] = pairs[rank.convert_to<std::size_t>()];
        if (radii[i] != radii[j]) return 1;
        int m = static_cast<int>(to_u64(depth));
        Rat d = (centers[i] - centers[j]).abs().approx(m);
        return d > pow2(-m) ? 0 : 1;
      },
      "collision-search");

  auto run = omachine::run(omachine::least_zero_search_program(), collision_oracle,
                           encode::FinSeq{}, budget);
  if (!std::holds_alternative<omachine::Halted>(run))
    return fail_report(report, Failure{Failure::Kind::OutOfFuel,
                                       "no collision pair found; the cover is not a valid "
                                       "canonical cover",
                                       {}});
  const auto& halted = std::get<omachine::Halted>(run);
  if (report) report->note_machine_run(halted);
  Nat s = halted.value;
  auto [i, j] = pairs[(s % Nat(pairs.size())).convert_to<std::size_t>()];
  int k = static_cast<int>(to_u64(s / Nat(pairs.size())));
  note_output(report, "pair i=" + std::to_string(i) + " j=" + std::to_string(j) +
                          " separation exponent k=" + std::to_string(k));

  // Validation: re-evaluate Z at both centers and recheck the radii.
  Nat zi = Z.eval(centers[i]), zj = Z.eval(centers[j]);
  if (zi != zj)
    return fail_report(report,
                       Failure{Failure::Kind::ValidationFailed, "Z values differ on re-evaluation", {}});
  Rat expected = pow2(-(static_cast<long>(to_u64(zi)) + 1));
  if (radii[i] != expected || radii[j] != expected)
    return fail_report(report, Failure{Failure::Kind::ValidationFailed,
                                       "cover radii disagree with 2^-(Z(x)+1)", {}});
  note_ok(report);
  return NinWitness{i, j, k};
}

// --- cantor_from_hbu ------------------------------------------------------------------

std::variant<encode::Real, Failure> cantor_from_hbu(const RealToNat& Y, const encode::CharSet& A,
                                                    const funct::Provider& cover_provider,
                                                    const EvalBudget& budget,
                                                    ReductionReport* report) {
  if (report) report->reduction = "cantor_from_hbu";
  note_input(report, "Y", Y.label);
  note_input(report, "A", A.label());
  note_input(report, "provider", cover_provider.instance_class);

  PsiFunction psi = PsiFunction::cantor_form(Y, A);
  Cover cover = cover_provider.cover_answer(psi);
  note_provider(report, cover.to_string());

  // Radii are 1/8 off A and at most 1/32 on A; approximating to 1/64 and
  // comparing against 1/16 separates the two.
  std::vector<Rat> radii = cover.radii;
  std::size_t n = radii.size();
  encode::BairePoint radius_oracle = encode::BairePoint::host(
      [radii, n](const Nat& j) -> Nat {
        if (j >= Nat(n)) return 1;
        Rat approx = encode::Real::from_rational(radii[j.convert_to<std::size_t>()]).approx(5);
        return approx >= Rat(1, 16) ? 0 : 1;
      },
      "radius-threshold");

  auto run =
      omachine::run(omachine::least_zero_search_program(), radius_oracle, encode::FinSeq{}, budget);
  if (!std::holds_alternative<omachine::Halted>(run))
    return fail_report(report, Failure{Failure::Kind::NoWitness,
                                       "every ball has a small radius; the cover cannot be a "
                                       "canonical cover (measure bound)",
                                       {}});
  const auto& halted = std::get<omachine::Halted>(run);
  if (report) report->note_machine_run(halted);
  std::size_t j = to_u64(halted.value);
  encode::Real x = cover.centers[j];
  note_output(report, "x = " + (x.exact() ? rat_str(*x.exact()) : x.label()));

  if (A.member_real(x))
    return fail_report(report, Failure{Failure::Kind::ProviderInvalid,
                                       "selected center lies in A: the cover disagrees with "
                                       "t(Y,A)",
                                       {}});
  note_ok(report);
  return x;
}

}  // namespace wb::reduce
