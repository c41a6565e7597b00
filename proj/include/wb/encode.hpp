#ifndef WB_ENCODE_HPP
#define WB_ENCODE_HPP

#include "wb/common.hpp"
#include "wb/nat.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wb::encode {

// ---------------------------------------------------------------------------
// Finite sequences of naturals and their codes.
//
// Coding: a self-delimiting bit stream under a sentinel bit. Each entry is
// written as its binary digits tagged (1,d) followed by a (0,0) end marker,
// so code sizes grow linearly with the total digit count (initial segments
// f-bar-n stay cheap for large n). code(<>) = 0; decode inverts exactly.
// ---------------------------------------------------------------------------
class FinSeq {
 public:
  FinSeq() = default;
  explicit FinSeq(std::vector<Nat> entries) : entries_(std::move(entries)) {}

  static FinSeq decode(Nat code);
  Nat code() const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Nat& at(std::size_t i) const { return entries_.at(i); }
  const std::vector<Nat>& entries() const { return entries_; }

  FinSeq concat(const FinSeq& tau) const;  // sigma * tau
  FinSeq append(const Nat& v) const;       // sigma * <v>
  FinSeq prefix(std::size_t n) const;      // first n entries

  bool operator==(const FinSeq&) const = default;
  std::string to_string() const;

 private:
  std::vector<Nat> entries_;
};

// ---------------------------------------------------------------------------
// Points of Baire space: total functions N -> N.
//
// Table form: explicit prefix then an eventual tail rule (constant or
// repeating word). Only table-backed points have a canonical code, and only
// they can certify "no zero anywhere". Host form wraps arbitrary total
// functions (term-backed points are host points built by the evaluator).
// ---------------------------------------------------------------------------
struct TailRule {
  enum class Kind { Constant, Periodic };
  Kind kind = Kind::Constant;
  Nat constant = 0;
  std::vector<Nat> word;  // nonempty for Periodic

  bool operator==(const TailRule&) const = default;
};

class BairePoint {
 public:
  BairePoint() : BairePoint(constant(0)) {}

  static BairePoint table(std::vector<Nat> prefix, TailRule tail);
  static BairePoint constant(Nat c);
  static BairePoint host(std::function<Nat(const Nat&)> fn, std::string label = "host");

  Nat operator()(const Nat& n) const;
  Nat at_index(std::uint64_t n) const { return (*this)(Nat(n)); }

  bool is_table() const;
  const std::vector<Nat>* table_prefix() const;  // null for host points
  const TailRule* tail() const;

  // Canonical code of a table point (prefix normalized against the tail,
  // periodic word reduced). Throws for host points.
  Nat canonical_code() const;
  static BairePoint from_code(const Nat& code);

  // Decidable zero search for table points; nullopt for host points.
  std::optional<bool> decidable_has_zero() const;
  std::optional<Nat> least_zero_in_table() const;  // engaged iff a zero exists

  const std::string& label() const;

 private:
  struct Table {
    std::vector<Nat> prefix;
    TailRule tail;
  };
  struct Host {
    std::function<Nat(const Nat&)> fn;
    std::string label;
  };
  explicit BairePoint(std::shared_ptr<const std::variant<Table, Host>> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const std::variant<Table, Host>> rep_;
};

// sigma-bar-n coherence helper: first n values of f as a FinSeq.
FinSeq initial_segment(const BairePoint& f, std::size_t n);

// The binary collapse b(f): 0 where f is 0, 1 elsewhere.
BairePoint to_binary(const BairePoint& f);

// Decidable comparison against an eventually-zero binary point:
// f >=lex sigma * 0^omega. Reads at most |sigma| values of f.
bool geq_lex_zero_padded(const BairePoint& f, const std::vector<int>& sigma);

// Lexicographic comparison of two points read to `depth` values:
// -1, 0, +1 with 0 meaning "agree on the first `depth` values".
int lex_compare_bounded(const BairePoint& f, const BairePoint& g, std::size_t depth);

// ---------------------------------------------------------------------------
// Exact reals as fast-converging Cauchy sequences of rationals:
// |approx(m) - x| <= 2^-(m+1) for every m >= 0.
// Comparison only through approx/real_apart; no decidable equality.
// ---------------------------------------------------------------------------
class Real {
 public:
  Real() : Real(from_rational(Rat(0))) {}

  static Real from_rational(const Rat& q);
  // Caller guarantees the fast-Cauchy contract.
  static Real from_approx(std::function<Rat(int)> approx, std::string label = "real");

  Rat approx(int m) const;
  // Exact rational value when the representation certifies one.
  std::optional<Rat> exact() const;
  bool normalized() const;  // tilde-clamped into [0,1]
  const std::string& label() const;

  Real operator+(const Real&) const;
  Real operator-(const Real&) const;
  Real operator-() const;
  Real operator*(const Real&) const;
  Real scale(const Rat& q) const;
  Real abs() const;
  static Real min(const Real&, const Real&);
  static Real max(const Real&, const Real&);

 private:
  struct Impl;
  explicit Real(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
  friend Real tilde_clamp(const Real&);
  friend Real cantor_real(const BairePoint&);
};

// Approximation within 2^-(m+1); the Real invariant makes this exact-post.
Rat approx(const Real& x, int m);

// Decode a Baire point as a Cauchy sequence of coded rationals and repair it
// into a Real. Accept criterion: consecutive gaps |q_i - q_{i+1}| <= 3*2^-(i+2)
// (implied by the pairwise fast-Cauchy condition, so valid inputs keep their
// value); first failure freezes the value at the last accepted entry; the
// output reads two indices ahead so it is fast-Cauchy unconditionally.
Real hat_normalize(const BairePoint& f);

// Clamp into [0,1]; identity (up to approximation equality) on [0,1].
Real tilde_clamp(const Real& x);

struct Separated {
  int k;  // |x - y| > 2^-(k+1)
  bool operator==(const Separated&) const = default;
};

// Unbounded apartness search, fuel-bounded: probes k = 0,1,2,... and reports
// the first k with approx(|x-y|, k) > 2^-k. OutOfFuel means "possibly equal".
std::variant<Separated, OutOfFuel> real_apart(const Real& x, const Real& y, Fuel fuel);

// The real in [0,1] coded by f: sum of b(f)(n) * 2^-(n+1). The weight
// 2^-(n+1) keeps the value in [0,1].
Real cantor_real(const BairePoint& f);

// ---------------------------------------------------------------------------
// Characteristic functions over the three carriers used by the workbench.
// ---------------------------------------------------------------------------
class CharSet {
 public:
  static CharSet on_nat(std::function<bool(const Nat&)> member, std::string label = "set");
  static CharSet on_baire(std::function<bool(const BairePoint&)> member, std::string label = "set");
  static CharSet on_real(std::function<bool(const Real&)> member, std::string label = "set");

  bool member_nat(const Nat& n) const;
  bool member_baire(const BairePoint& f) const;
  bool member_real(const Real& x) const;

  bool carries_nat() const;
  bool carries_baire() const;
  bool carries_real() const;
  const std::string& label() const { return label_; }

 private:
  std::function<bool(const Nat&)> nat_;
  std::function<bool(const BairePoint&)> baire_;
  std::function<bool(const Real&)> real_;
  std::string label_;
};

// Set-as-oracle adapter: the characteristic function of X as a type-1 point.
BairePoint charset_oracle(const CharSet& X);

}  // namespace wb::encode

#endif
