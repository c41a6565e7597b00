#include "wb/tcore.hpp"

namespace wb::tcore {

namespace {

struct Checker {
  const std::map<std::string, Ty>& oracle_sigs;
  std::vector<std::pair<std::string, Ty>> scope;

  const Ty* lookup(const std::string& name) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }

  [[noreturn]] void fail(const Term& at, const std::string& msg) {
    throw TypeError(msg + " in `" + to_string(at) + "`");
  }

  Ty rec_type(const Ty& inst) {
    // tau -> (0 -> tau -> tau) -> 0 -> tau
    return Ty::arrow(inst, Ty::arrow(Ty::arrow(Ty::nat(), Ty::arrow(inst, inst)),
                                     Ty::arrow(Ty::nat(), inst)));
  }

  Ty check(const Term& t) {
    const auto& n = t->node;
    if (auto* v = std::get_if<TermNode::Var>(&n)) {
      if (const Ty* ty = lookup(v->name)) return *ty;
      fail(t, "unbound variable " + v->name);
    }
    if (auto* l = std::get_if<TermNode::Lam>(&n)) {
      scope.emplace_back(l->name, l->ty);
      Ty body = check(l->body);
      scope.pop_back();
      return Ty::arrow(l->ty, body);
    }
    if (auto* a = std::get_if<TermNode::App>(&n)) {
      // An unannotated recursor takes its instance type from the base argument.
      if (auto* r = std::get_if<TermNode::Rec>(&a->fn->node); r && !r->inst) {
        Ty base = check(a->arg);
        Ty rec = rec_type(base);
        return rec.to();
      }
      Ty fn = check(a->fn);
      if (fn.kind() != Ty::Kind::Arrow)
        fail(t, "applied a non-function of type " + fn.to_string());
      Ty arg = check(a->arg);
      if (arg != fn.from())
        fail(a->arg, "argument has type " + arg.to_string() + ", expected " +
                         fn.from().to_string());
      return fn.to();
    }
    if (std::holds_alternative<TermNode::NatLit>(n) ||
        std::holds_alternative<TermNode::RatLit>(n)) {
      return Ty::nat();
    }
    if (std::holds_alternative<TermNode::Succ>(n)) return Ty::arrow(Ty::nat(), Ty::nat());
    if (auto* r = std::get_if<TermNode::Rec>(&n)) {
      if (!r->inst) fail(t, "recursor needs a type annotation or a base argument");
      return rec_type(*r->inst);
    }
    if (auto* p = std::get_if<TermNode::MkPair>(&n)) {
      return Ty::prod(check(p->first), check(p->second));
    }
    if (auto* f = std::get_if<TermNode::Fst>(&n)) {
      Ty arg = check(f->arg);
      if (arg.kind() != Ty::Kind::Prod) fail(t, "fst of non-pair type " + arg.to_string());
      return arg.first();
    }
    if (auto* s = std::get_if<TermNode::Snd>(&n)) {
      Ty arg = check(s->arg);
      if (arg.kind() != Ty::Kind::Prod) fail(t, "snd of non-pair type " + arg.to_string());
      return arg.second();
    }
    if (auto* m = std::get_if<TermNode::Mu>(&n)) {
      Ty body = check(m->body);
      if (!(body == Ty::pure(1)))
        fail(t, "mu body has type " + body.to_string() + ", expected 1");
      return Ty::nat();
    }
    if (std::holds_alternative<TermNode::AbsDiff>(n))
      return Ty::arrow(Ty::nat(), Ty::arrow(Ty::nat(), Ty::nat()));
    if (auto* o = std::get_if<TermNode::OracleRef>(&n)) {
      auto it = oracle_sigs.find(o->name);
      if (it == oracle_sigs.end()) fail(t, "unknown oracle $" + o->name);
      return it->second;
    }
    throw TypeError("unreachable term node");
  }
};

}  // namespace

Ty typecheck(const Term& t, const std::map<std::string, Ty>& ctx,
             const std::map<std::string, Ty>& oracle_sigs) {
  Checker c{oracle_sigs, {}};
  for (const auto& [name, ty] : ctx) c.scope.emplace_back(name, ty);
  return c.check(t);
}

Ty typecheck(const Term& t, const OracleTable& oracles) {
  return typecheck(t, {}, oracles.signatures());
}

}  // namespace wb::tcore
