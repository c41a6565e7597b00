#ifndef WB_TCORE_HPP
#define WB_TCORE_HPP

#include "wb/common.hpp"
#include "wb/encode.hpp"
#include "wb/nat.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wb::tcore {

// ---------------------------------------------------------------------------
// Simple types over Nat with arrows and products. Pure types: 0 = Nat,
// n+1 = n -> 0.
// ---------------------------------------------------------------------------
class Ty {
 public:
  enum class Kind { Nat, Arrow, Prod };

  static Ty nat();
  static Ty arrow(Ty from, Ty to);
  static Ty prod(Ty first, Ty second);
  static Ty pure(int level);

  Kind kind() const { return kind_; }
  bool is_nat() const { return kind_ == Kind::Nat; }
  const Ty& from() const { return *a_; }
  const Ty& to() const { return *b_; }
  const Ty& first() const { return *a_; }
  const Ty& second() const { return *b_; }

  bool operator==(const Ty& o) const;
  bool operator!=(const Ty& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  Ty() : kind_(Kind::Nat) {}
  Kind kind_;
  std::shared_ptr<const Ty> a_, b_;
};

// ---------------------------------------------------------------------------
// Terms. Rational literals are sugar for the numeral rat_code(q); |a - b| is
// the truncated-distance builtin on naturals.
// ---------------------------------------------------------------------------
struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  struct Var {
    std::string name;
  };
  struct Lam {
    std::string name;
    Ty ty;
    Term body;
  };
  struct App {
    Term fn;
    Term arg;
  };
  struct NatLit {
    Nat value;
  };
  struct RatLit {
    Rat value;
  };
  struct Succ {};
  struct Rec {
    std::optional<Ty> inst;  // instance type; inferred from the base argument if absent
  };
  struct MkPair {
    Term first;
    Term second;
  };
  struct Fst {
    Term arg;
  };
  struct Snd {
    Term arg;
  };
  struct Mu {
    Term body;
    std::string witness;  // mu totality witness label; empty = none
  };
  struct AbsDiff {};
  struct OracleRef {
    std::string name;
  };

  using Node = std::variant<Var, Lam, App, NatLit, RatLit, Succ, Rec, MkPair, Fst, Snd, Mu,
                            AbsDiff, OracleRef>;
  Node node;
  std::size_t pos = 0;  // byte offset into the source, for error messages
};

Term make_term(TermNode::Node node, std::size_t pos = 0);
std::string to_string(const Term& t);

// ---------------------------------------------------------------------------
// Parsing. Grammar (documented in the README):
//   term  := (λ|\) ident : ty . term | app
//   app   := atom atom*
//   atom  := ( term ) | < term , term > | | term - term | | mu[(label)]( term )
//          | rec[ [ty] ] | fst atom | snd atom | S | $name | nat | rat | ident
//   ty    := typrod (-> ty)? ; typrod := tyatom (* tyatom)* ; tyatom := digits | ( ty )
// ---------------------------------------------------------------------------
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t pos, const std::string& what)
      : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"), pos(pos) {}
  std::size_t pos;
};

Term parse_term(std::string_view text);
Ty parse_type(std::string_view text);

// ---------------------------------------------------------------------------
// Values and oracle tables.
// ---------------------------------------------------------------------------
struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct EnvNode;
using Env = std::shared_ptr<const EnvNode>;
struct EnvNode {
  std::string name;
  ValuePtr value;
  Env next;
};
Env env_bind(Env env, std::string name, ValuePtr v);
const ValuePtr* env_lookup(const Env& env, const std::string& name);

class OracleTable;
struct EvalState {
  Fuel fuel;
  const OracleTable* oracles;
  void tick() {
    if (fuel == 0) throw OutOfFuelSignal{};
    --fuel;
  }
};

struct Value {
  struct Num {
    Nat v;
  };
  struct Closure {
    std::string name;
    Term body;
    Env env;
  };
  struct Builtin {
    std::string label;
    int arity;
    std::vector<ValuePtr> applied;
    std::function<ValuePtr(const std::vector<ValuePtr>&, EvalState&)> fn;
  };
  struct PairV {
    ValuePtr first;
    ValuePtr second;
  };
  std::variant<Num, Closure, Builtin, PairV> v;
};

ValuePtr num_value(Nat n);
ValuePtr builtin_value(std::string label, int arity,
                       std::function<ValuePtr(const std::vector<ValuePtr>&, EvalState&)> fn);
const Nat& value_nat(const ValuePtr& v);  // throws unless a numeral
// Ground type of a value, when it has one (numerals and pairs of grounds).
std::optional<Ty> value_ground_type(const ValuePtr& v);

// Totality witness for a mu search: either a bound below which a zero must
// occur, or a certificate that none exists (licensing the default 0).
struct MuTotality {
  std::optional<Nat> zero_bound;
  bool no_zero_certificate = false;
};

class OracleTable {
 public:
  void bind_value(const std::string& name, Ty type, ValuePtr v);
  void bind_baire(const std::string& name, const encode::BairePoint& f);
  void bind_nat_fn(const std::string& name, std::function<Nat(const Nat&)> fn);
  void register_mu_witness(const std::string& label, MuTotality w);

  const std::pair<Ty, ValuePtr>* lookup(const std::string& name) const;
  const MuTotality* mu_witness(const std::string& label) const;
  std::map<std::string, Ty> signatures() const;

 private:
  std::map<std::string, std::pair<Ty, ValuePtr>> oracles_;
  std::map<std::string, MuTotality> mu_;
};

// ---------------------------------------------------------------------------
// Typechecking.
// ---------------------------------------------------------------------------
class TypeError : public std::runtime_error {
 public:
  explicit TypeError(const std::string& what) : std::runtime_error(what) {}
};

Ty typecheck(const Term& t, const std::map<std::string, Ty>& ctx = {},
             const std::map<std::string, Ty>& oracle_sigs = {});
Ty typecheck(const Term& t, const OracleTable& oracles);

// ---------------------------------------------------------------------------
// Call-by-value evaluation under a step budget. OutOfFuel is an ordinary
// result; OracleFailure propagates as an exception.
// ---------------------------------------------------------------------------
using EvalResult = std::variant<ValuePtr, OutOfFuel>;

EvalResult eval(const Term& t, const OracleTable& oracles, const EvalBudget& budget);
EvalResult eval(const Term& t, Env env, const OracleTable& oracles, const EvalBudget& budget);
// Evaluate to a numeral or OutOfFuel.
std::variant<Nat, OutOfFuel> eval_nat(const Term& t, const OracleTable& oracles,
                                      const EvalBudget& budget);

// Application for host-side drivers (feeding host points to term-backed
// functionals). Throws OutOfFuelSignal on exhaustion.
ValuePtr apply_value(const ValuePtr& fn, const ValuePtr& arg, EvalState& state);

// Wrap a Baire point as a type-1 value.
ValuePtr baire_value(const encode::BairePoint& f);

// A closed term of type 1 as a total point of Baire space. Each query runs
// the evaluator with a fresh copy of the budget; exhaustion inside a query
// throws OutOfFuelSignal to the operation boundary.
encode::BairePoint term_baire_point(const Term& t, const OracleTable& oracles,
                                    const EvalBudget& budget, std::string label = "term");

}  // namespace wb::tcore

#endif
