#ifndef WB_REDUCE_HPP
#define WB_REDUCE_HPP

#include "wb/common.hpp"
#include "wb/encode.hpp"
#include "wb/funct.hpp"
#include "wb/nat.hpp"
#include "wb/nets.hpp"
#include "wb/omachine.hpp"

#include <atomic>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wb::reduce {

// ---------------------------------------------------------------------------
// Failures shared by the reduction pipelines.
// ---------------------------------------------------------------------------
struct Failure {
  enum class Kind { ProviderInvalid, ValidationFailed, OutOfFuel, NoWitness, AntecedentRefuted };
  Kind kind;
  std::string detail;
  std::optional<encode::BairePoint> counterexample;  // refuting input, when one is emitted
};

std::string failure_kind_name(Failure::Kind kind);

// ---------------------------------------------------------------------------
// Reduction reports: inputs, provider answers, machine digests, output and a
// recomputable verdict. Rendering is deterministic except for the timestamp
// passed in by the caller.
// ---------------------------------------------------------------------------
struct ReductionReport {
  std::string reduction;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::string> provider_lines;
  std::vector<std::string> machine_lines;
  std::vector<std::string> output_lines;
  std::string verdict;
  std::string detail;
  bool include_full_traces = false;  // set by the driver's --trace flag

  void note_failure(const Failure& f);
  void note_machine_run(const omachine::Halted& halted);
  std::string render(const std::string& timestamp) const;
};

// ---------------------------------------------------------------------------
// Positive-valued functions on [0,1] in the decidable instance classes:
// piecewise-constant rational, the no-injection form 2^-(Z(x)+1), the Cantor
// form (2^-(Y(x)+5) on A, 1/8 off A), or a closed term of type 1 -> 0 mapping
// Cauchy codes to rational codes. Queries at rationals are exact. Every query
// is counted, so tests can verify that strong stages never touch Psi.
// ---------------------------------------------------------------------------
struct RealToNat {
  std::function<Nat(const encode::Real&)> eval;
  std::string label = "Z";
};

class PsiFunction {
 public:
  enum class Kind { PiecewiseConstant, NinForm, CantorForm, TermBacked };

  // breakpoints 0 = b_0 < ... < b_n = 1; piece i is [b_i, b_{i+1}) except the
  // last, which is closed at 1.
  static PsiFunction piecewise(std::vector<Rat> breakpoints, std::vector<Rat> values);
  static PsiFunction nin_form(RealToNat Z);
  static PsiFunction cantor_form(RealToNat Y, encode::CharSet A);
  static PsiFunction host(std::function<Rat(const Rat&)> fn, std::string label);

  Rat value_at(const Rat& x) const;
  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  std::uint64_t queries() const { return *queries_; }

  const std::vector<Rat>* breakpoints() const;
  const std::vector<Rat>* piece_values() const;

 private:
  Kind kind_ = Kind::PiecewiseConstant;
  std::vector<Rat> breakpoints_, values_;
  std::function<Rat(const Rat&)> fn_;
  std::string label_;
  std::shared_ptr<std::uint64_t> queries_ = std::make_shared<std::uint64_t>(0);
};

// ---------------------------------------------------------------------------
// Finite covers of [0,1] by open balls.
// ---------------------------------------------------------------------------
struct Cover {
  std::vector<encode::Real> centers;  // tilde-clamped
  std::vector<Rat> radii;             // strictly positive

  std::size_t size() const { return centers.size(); }
  std::string to_string() const;
};

// Rational interval view of a cover (centers approximated exactly when
// possible). Used by the sweep checks.
std::vector<std::pair<Rat, Rat>> cover_intervals(const Cover& cover, int precision = 20);

// Does the union of open intervals contain every rational in [0,1]? Exact.
bool rational_cover_check(const std::vector<std::pair<Rat, Rat>>& intervals);

// Least uncovered candidate endpoint: candidates are 0, 1 and the interval
// endpoints inside [0,1]. Returns 0 on the empty family.
Rat leftmost_uncovered_endpoint(const std::vector<std::pair<Rat, Rat>>& intervals);

// Largest delta such that every subinterval of [0,1] with diameter < delta
// fits inside one interval; nullopt when the family is not a cover of [0,1].
std::optional<Rat> exact_lebesgue_number(const std::vector<std::pair<Rat, Rat>>& intervals);

// Every dyadic grid point k*2^-grid_exp strictly inside some ball.
bool cover_valid_on_grid(const Cover& cover, int grid_exp);

// Every grid interval [a, min(a+delta,1)] inside some canonical ball
// B(y, psi(y)). Exact per-piece check for piecewise psi; witness scan near
// the interval otherwise.
bool grid_lebesgue_check(const Rat& delta, const PsiFunction& psi, int grid_exp);

// Index points are constant Cauchy codes; center = decoded value clamped
// into [0,1].
Rat index_point_center(const encode::BairePoint& p);
encode::BairePoint center_point(const Rat& q);

// The Heine-Borel phalanx for psi: value 1 when the index's balls cover
// every rational of [0,1], otherwise B(w)/2 for the leftmost uncovered
// candidate endpoint B(w); B of the empty index is 0.
nets::Net hbu_net(const PsiFunction& psi);

// ---------------------------------------------------------------------------
// Covering reductions.
// ---------------------------------------------------------------------------

// Cover extraction from a convergence modulus. Builds the phalanx, asks the
// modulus provider for w_2, forces x_{w_2} = 1 (anything else refutes the
// modulus since |x_{w_2} - 1| < 1/4), adjoins the balls' endpoints and
// validates the result on the dyadic grid.
std::variant<Cover, Failure> hbu_from_modulus(const PsiFunction& psi,
                                              const funct::Provider& modulus_provider,
                                              const EvalBudget& budget,
                                              ReductionReport* report = nullptr);

// Lebesgue number from a net-limit provider. The modified phalanx emits
// 3/4 + 2^-(N+3) on covering indices (N the least exponent with 2^-N a
// Lebesgue number of the endpoint-adjoined cover); the recovery stage reads
// nothing but the provider's limit, running the least-zero machine over the
// exponent-matching oracle.
std::variant<Rat, Failure> lebesgue_from_netlimit(const PsiFunction& psi,
                                                  const funct::Provider& limit_provider,
                                                  const EvalBudget& budget,
                                                  ReductionReport* report = nullptr);

// The instance handed to an NFP realizer for psi: the claim that every
// x = r(f) has some n with B(x, 2^-n) inside a canonical ball.
struct NfpCoverInstance {
  PsiFunction psi;
};

// Lebesgue number from an NFP realizer: validate the associate, spot-check
// the realization, take delta = 2^-fan_bound(gamma). The final stage depends
// on gamma alone.
std::variant<Rat, Failure> lebesgue_from_nfp(const PsiFunction& psi,
                                             const funct::Provider& nfp_provider,
                                             const EvalBudget& budget,
                                             ReductionReport* report = nullptr);

// ---------------------------------------------------------------------------
// Uncountability reductions.
// ---------------------------------------------------------------------------
struct NinWitness {
  std::size_t i, j;
  int separation_exponent;  // |x_i - x_j| > 2^-(k+1)
};

// No-injection witness from a Heine-Borel cover for psi = 2^-(Z(x)+1): the
// machine dovetails over (pair rank, depth) on the flattened
// x_0, t(Z)(x_0), ..., x_k, t(Z)(x_k) data, looking for equal radii and an
// apartness certificate. A valid cover must contain such a pair (measure
// bound); exhaustion flags the cover.
std::variant<NinWitness, Failure> nin_from_hbu(const RealToNat& Z,
                                               const funct::Provider& cover_provider,
                                               const EvalBudget& budget,
                                               ReductionReport* report = nullptr);

// Cantor-theorem witness: a point outside A extracted from a cover for the
// two-valued radius function; the machine picks the first ball whose radius
// approximation clears 1/16.
std::variant<encode::Real, Failure> cantor_from_hbu(const RealToNat& Y, const encode::CharSet& A,
                                                    const funct::Provider& cover_provider,
                                                    const EvalBudget& budget,
                                                    ReductionReport* report = nullptr);

// ---------------------------------------------------------------------------
// Jump <-> net-limit reductions.
// ---------------------------------------------------------------------------

// The phalanx f_w(k) = 1 iff some i < |w| has Y(w(i), k) = 0. Increasing by
// construction; its limit bit n answers "exists g with Y(g, n) = 0".
nets::Net jump_to_netlimit(const funct::Functional2OnPairs& Y);

// Jump access over prefix queries: sigma |-> is some net value >=lex
// sigma * 0^omega (with witness bookkeeping).
using SigmaJump = std::function<funct::JumpAnswer(const encode::FinSeq& sigma)>;

// Limit reconstruction from jump answers alone (the strong direction: this
// function receives nothing but the jump).
std::variant<std::vector<int>, OutOfFuel> limit_from_sigma_jump(const SigmaJump& jump, int depth);

struct NetJumpData {
  funct::Functional2OnPairs Y;     // Y(g, code(sigma)) = 0 iff f_{decode(g)} >=lex sigma*0^omega
  std::size_t index_decode_limit;  // how many index entries a witness g may carry
};

// Membership functional of the net's jump set plus the declared decode bound.
NetJumpData netlimit_to_jump(const nets::Net& net, std::size_t index_decode_limit = 32);

// Witness-search strategy for net-derived jump queries: grows an accumulated
// index by single points from the pool (complete for union-monotone
// phalanxes). Declared exhaustive only if the pool spans the instance class.
class IndexJumpSearcher {
 public:
  IndexJumpSearcher(funct::Functional2OnPairs Y, std::vector<encode::BairePoint> pool,
                    bool exhaustive, std::size_t index_decode_limit = 32);
  funct::JumpAnswer query(const encode::FinSeq& sigma);
  SigmaJump as_sigma_jump();

 private:
  funct::Functional2OnPairs Y_;
  std::vector<encode::BairePoint> pool_;
  bool exhaustive_;
  std::size_t limit_;
  std::shared_ptr<nets::DirectedIndex> accumulated_;
};

// ---------------------------------------------------------------------------
// Discontinuity reductions (Grilliot pipelines).
// ---------------------------------------------------------------------------

// A function queryable on rationals; optional exact linear tag y*x for the
// effective family, which a maximizer provider may use (a maximizer answers a
// non-computable claim, so it may inspect the declared instance).
struct RatFunction {
  std::function<encode::Real(const Rat&)> at;
  std::string label = "g";
  std::optional<Rat> linear_slope;  // engaged when the function is exactly x |-> s*x
};

struct Maximizer {
  std::function<encode::Real(const RatFunction&)> argmax;
  std::string label = "eps";
};

struct Exists2Decider {
  std::function<std::variant<int, OutOfFuel>(const encode::BairePoint&, Fuel)> decide;
  std::string label = "E";
};

// Grilliot's construction: route f's zero search through the witness
// sequence. q_f follows x until a zero of f appears and jumps to seq(N) for
// the least zero N; F's gap at the witness then decides zero-existence.
std::variant<int, Failure> grilliot_exists2(const funct::RealMap& F,
                                            const funct::DiscontinuityWitness& w,
                                            const encode::BairePoint& f, Fuel fuel,
                                            ReductionReport* report = nullptr);

// Zero-existence from a maximizer: certify eps(const-0) to precision 3,
// branch on the threshold 1/2 (branch A uses y*x, branch B uses -y*x), build
// the discontinuous functional and its witness, and feed both to
// grilliot_exists2. eps is only ever queried on the effective family closure.
std::variant<int, Failure> exists2_from_maximizer(const Maximizer& eps,
                                                  const encode::BairePoint& f, Fuel fuel,
                                                  ReductionReport* report = nullptr);

// Rational-valued Lipschitz-1 test function (queried on rationals only).
struct LipschitzFn {
  std::function<Rat(const Rat&)> at;
  std::string label = "g";
};

// Maximum location by interval halving, with the stage predicates encoded as
// certified zero-search inputs to E. On validation failure the stage replay
// emits an input on which E answered wrongly.
std::variant<encode::Real, Failure> maximizer_from_exists2(const Exists2Decider& E,
                                                           const LipschitzFn& g, Fuel fuel,
                                                           ReductionReport* report = nullptr);

// ---------------------------------------------------------------------------
// Comprehension reductions.
// ---------------------------------------------------------------------------
struct NfpFromComprehensionParams {
  int antecedent_samples = 20;
  int antecedent_depth = 32;
  Nat sample_max_entry = 4;
  std::uint64_t seed = 0;
};

// The associate gamma(sigma) = |sigma'|+1 for the least prefix sigma' of
// sigma with A(sigma') (0 when none): stable by construction and realizing
// the choice consequent wherever the antecedent holds.
std::variant<funct::Associate, Failure> nfp_from_comprehension(
    const encode::CharSet& A_on_codes, const NfpFromComprehensionParams& params,
    ReductionReport* report = nullptr);

// The finite comprehension instance: X with n in X iff A(n), for n <= k.
encode::CharSet finite_comprehension(const std::function<bool(const Nat&)>& A, const Nat& k);

}  // namespace wb::reduce

#endif
