#ifndef WB_FUNCT_HPP
#define WB_FUNCT_HPP

#include "wb/common.hpp"
#include "wb/encode.hpp"
#include "wb/nat.hpp"
#include "wb/nets.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wb::reduce {
struct Cover;
class PsiFunction;
struct NfpCoverInstance;
}  // namespace wb::reduce

namespace wb::funct {

// ---------------------------------------------------------------------------
// Kleene associates: type-1 neighbourhood functions over finite-sequence
// codes coding continuous type-2 functionals.
// ---------------------------------------------------------------------------
struct Associate {
  encode::BairePoint alpha;  // over FinSeq codes
  Nat at(const encode::FinSeq& sigma) const { return alpha(sigma.code()); }
};

struct NeighbourhoodCheckParams {
  int depth = 8;          // stability checked for all |sigma|+|tau| <= depth
  Nat max_entry = 2;      // enumeration bound on sequence entries (exclusive)
  int beta_samples = 20;  // securing checked on this many sampled points
  Fuel securing_fuel = 256;
  std::uint64_t seed = 0;
};

// Monotone-stability clause on the enumerated sigma/tau family plus securing
// on sampled points.
bool check_neighbourhood(const Associate& alpha, const NeighbourhoodCheckParams& params);

// alpha(beta-bar-n) - 1 at the least securing n.
std::variant<Nat, OutOfFuel> eval_associate(const Associate& alpha,
                                            const encode::BairePoint& beta, Fuel fuel);

// ---------------------------------------------------------------------------
// The zero-existence quantifier. Answers 0 (a zero was found), 1 (a no-zero
// certificate is present) or OutOfFuel. Never asserts 1 from bounded search.
// ---------------------------------------------------------------------------
std::variant<int, OutOfFuel> exists2(const encode::BairePoint& f, Fuel fuel);

struct DiscontinuityWitness;

// ---------------------------------------------------------------------------
// Type-2 functionals: continuous (via an associate) or native host/term code
// with an optional discontinuity witness.
// ---------------------------------------------------------------------------
struct Functional2 {
  static Functional2 continuous(Associate a, std::string label = "assoc");
  static Functional2 native(std::function<Nat(const encode::BairePoint&)> fn,
                            std::string label = "native",
                            std::shared_ptr<const DiscontinuityWitness> witness = nullptr);

  std::variant<Nat, OutOfFuel> eval(const encode::BairePoint& beta, Fuel fuel) const;
  const Associate* associate() const { return assoc_ ? &*assoc_ : nullptr; }
  const DiscontinuityWitness* witness() const { return witness_.get(); }
  const std::string& label() const { return label_; }

 private:
  std::optional<Associate> assoc_;
  std::function<Nat(const encode::BairePoint&)> native_;
  std::shared_ptr<const DiscontinuityWitness> witness_;
  std::string label_;
};

// Functionals on pairs for the jump: Y(g, n).
struct Functional2OnPairs {
  std::function<Nat(const encode::BairePoint&, const Nat&)> eval;
  std::string label = "Y";
};

// ---------------------------------------------------------------------------
// The jump-like J operator: membership in {n : exists g, Y(g,n) = 0} by
// bounded witness search. Witnesses range over table points with support
// below max_support and values below max_value; a negative answer is only
// certified when the instance class declares that search exhaustive.
// ---------------------------------------------------------------------------
struct WitnessSearchBound {
  std::size_t max_support = 3;
  Nat max_value = 4;
  bool exhaustive = false;
};

struct InJ {
  encode::BairePoint witness;
};
struct NotInJ {};
struct UnknownJ {};
using JumpAnswer = std::variant<InJ, NotInJ, UnknownJ>;

JumpAnswer jump_J(const Functional2OnPairs& Y, const Nat& n, const WitnessSearchBound& bound);

// Enumerate the witness class of a bound (tables with the given support and
// value limits, zero tail). Shared by jump_J and the brute-force test oracles.
std::vector<encode::BairePoint> enumerate_witnesses(const WitnessSearchBound& bound);

// ---------------------------------------------------------------------------
// Fan-functional bound: least upper bound of an associate's values over the
// binary tree, certified by exhausting the secured tree (every branch must
// hit a secured node within fuel).
// ---------------------------------------------------------------------------
std::variant<Nat, OutOfFuel> fan_bound(const Associate& alpha, Fuel fuel);

// ---------------------------------------------------------------------------
// Functions on reals (for the discontinuity pipelines) and witnesses of
// discontinuity at a point.
// ---------------------------------------------------------------------------
struct RealMap {
  std::function<encode::Real(const encode::Real&, Fuel)> apply;
  std::string label = "F";
};

struct DiscontinuityWitness {
  encode::Real x;
  std::function<encode::Real(int)> seq;  // |seq(n) - x| <= 2^-n
  int gap_exponent = 0;                  // |F(seq(n)) - F(x)| >= 2^-gap_exponent
};

// Re-verify the witness gap at precision gap_exponent+2 on sampled n.
bool verify_witness(const RealMap& F, const DiscontinuityWitness& w,
                    const std::vector<int>& sample_ns, Fuel fuel);

// ---------------------------------------------------------------------------
// Providers: pluggable oracles for non-computable existence claims. A
// provider is trusted only for existence; every consumer post-validates.
// ChoiceOracle names the choice-fragment interface; the workbench ships no
// construction for it.
// ---------------------------------------------------------------------------
enum class ProviderKind { CoverOracle, NetLimitOracle, ModulusOracle, NFPRealizer, ChoiceOracle };

std::string provider_kind_name(ProviderKind kind);

struct Provider {
  ProviderKind kind;
  std::string instance_class;

  // Engaged answer slot matching `kind`.
  std::function<reduce::Cover(const reduce::PsiFunction&)> cover_answer;
  std::function<encode::Real(const nets::Net&)> net_limit_answer;
  std::function<nets::Modulus(const nets::Net&)> modulus_answer;
  std::function<Associate(const reduce::NfpCoverInstance&)> nfp_answer;
  // ChoiceOracle: Z with Y(Z(n), n) = 0 for all n, on instances where the
  // antecedent holds. Interface only.
  std::function<encode::BairePoint(const Functional2OnPairs&, const Nat&)> choice_answer;
};

}  // namespace wb::funct

#endif
