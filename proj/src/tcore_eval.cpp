#include "wb/tcore.hpp"

namespace wb::tcore {

Env env_bind(Env env, std::string name, ValuePtr v) {
  auto node = std::make_shared<EnvNode>();
  node->name = std::move(name);
  node->value = std::move(v);
  node->next = std::move(env);
  return node;
}

const ValuePtr* env_lookup(const Env& env, const std::string& name) {
  for (const EnvNode* n = env.get(); n; n = n->next.get())
    if (n->name == name) return &n->value;
  return nullptr;
}

ValuePtr num_value(Nat n) {
  auto v = std::make_shared<Value>();
  v->v = Value::Num{std::move(n)};
  return v;
}

ValuePtr builtin_value(std::string label, int arity,
                       std::function<ValuePtr(const std::vector<ValuePtr>&, EvalState&)> fn) {
  auto v = std::make_shared<Value>();
  v->v = Value::Builtin{std::move(label), arity, {}, std::move(fn)};
  return v;
}

const Nat& value_nat(const ValuePtr& v) {
  if (auto* n = std::get_if<Value::Num>(&v->v)) return n->v;
  throw TypeError("expected a numeral value");
}

std::optional<Ty> value_ground_type(const ValuePtr& v) {
  if (std::holds_alternative<Value::Num>(v->v)) return Ty::nat();
  if (auto* p = std::get_if<Value::PairV>(&v->v)) {
    auto a = value_ground_type(p->first);
    auto b = value_ground_type(p->second);
    if (a && b) return Ty::prod(*a, *b);
  }
  return std::nullopt;
}

// --- OracleTable -------------------------------------------------------------

void OracleTable::bind_value(const std::string& name, Ty type, ValuePtr v) {
  oracles_.insert_or_assign(name, std::make_pair(std::move(type), std::move(v)));
}

void OracleTable::bind_baire(const std::string& name, const encode::BairePoint& f) {
  bind_value(name, Ty::pure(1), baire_value(f));
}

void OracleTable::bind_nat_fn(const std::string& name, std::function<Nat(const Nat&)> fn) {
  bind_baire(name, encode::BairePoint::host(std::move(fn), name));
}

void OracleTable::register_mu_witness(const std::string& label, MuTotality w) {
  mu_.insert_or_assign(label, std::move(w));
}

const std::pair<Ty, ValuePtr>* OracleTable::lookup(const std::string& name) const {
  auto it = oracles_.find(name);
  return it == oracles_.end() ? nullptr : &it->second;
}

const MuTotality* OracleTable::mu_witness(const std::string& label) const {
  auto it = mu_.find(label);
  return it == mu_.end() ? nullptr : &it->second;
}

std::map<std::string, Ty> OracleTable::signatures() const {
  std::map<std::string, Ty> sigs;
  for (const auto& [name, entry] : oracles_) sigs.emplace(name, entry.first);
  return sigs;
}

ValuePtr baire_value(const encode::BairePoint& f) {
  return builtin_value(f.label(), 1, [f](const std::vector<ValuePtr>& args, EvalState&) {
    return num_value(f(value_nat(args[0])));
  });
}

// --- evaluation --------------------------------------------------------------

namespace {

ValuePtr eval_node(const Term& t, const Env& env, EvalState& st);

ValuePtr apply(const ValuePtr& fn, const ValuePtr& arg, EvalState& st) {
  st.tick();
  if (auto* c = std::get_if<Value::Closure>(&fn->v)) {
    Env inner = env_bind(c->env, c->name, arg);
    return eval_node(c->body, inner, st);
  }
  if (auto* b = std::get_if<Value::Builtin>(&fn->v)) {
    Value::Builtin next = *b;
    next.applied.push_back(arg);
    if (static_cast<int>(next.applied.size()) == next.arity) return next.fn(next.applied, st);
    auto v = std::make_shared<Value>();
    v->v = std::move(next);
    return v;
  }
  throw TypeError("applied a non-function value");
}

ValuePtr rec_builtin() {
  return builtin_value("rec", 3, [](const std::vector<ValuePtr>& args, EvalState& st) {
    const Nat& count = value_nat(args[2]);
    ValuePtr acc = args[0];
    for (Nat i = 0; i < count; ++i) {
      st.tick();
      acc = apply(apply(args[1], num_value(i), st), acc, st);
    }
    return acc;
  });
}

ValuePtr absdiff_builtin() {
  return builtin_value("absdiff", 2, [](const std::vector<ValuePtr>& args, EvalState&) {
    const Nat& a = value_nat(args[0]);
    const Nat& b = value_nat(args[1]);
    return num_value(a >= b ? Nat(a - b) : Nat(b - a));
  });
}

ValuePtr succ_builtin() {
  return builtin_value("S", 1, [](const std::vector<ValuePtr>& args, EvalState&) {
    return num_value(value_nat(args[0]) + 1);
  });
}

// Least-zero search. Without a witness, exhausting the budget aborts the
// evaluation; the classical default 0 is only taken under a no-zero
// certificate, and a bound witness that fails to deliver is an oracle failure.
ValuePtr mu_search(const ValuePtr& f, const MuTotality* witness, EvalState& st) {
  if (witness && witness->no_zero_certificate) return num_value(0);
  std::optional<Nat> bound;
  if (witness && witness->zero_bound) bound = *witness->zero_bound;
  for (Nat n = 0;; ++n) {
    if (bound && n >= *bound)
      throw OracleFailure("mu totality witness refuted: no zero below the promised bound");
    st.tick();
    ValuePtr v = apply(f, num_value(n), st);
    if (value_nat(v) == 0) return num_value(n);
  }
}

ValuePtr eval_node(const Term& t, const Env& env, EvalState& st) {
  st.tick();
  const auto& n = t->node;
  if (auto* v = std::get_if<TermNode::Var>(&n)) {
    if (const ValuePtr* found = env_lookup(env, v->name)) return *found;
    throw TypeError("unbound variable " + v->name);
  }
  if (auto* l = std::get_if<TermNode::Lam>(&n)) {
    auto val = std::make_shared<Value>();
    val->v = Value::Closure{l->name, l->body, env};
    return val;
  }
  if (auto* a = std::get_if<TermNode::App>(&n)) {
    ValuePtr fn = eval_node(a->fn, env, st);
    ValuePtr arg = eval_node(a->arg, env, st);
    return apply(fn, arg, st);
  }
  if (auto* k = std::get_if<TermNode::NatLit>(&n)) return num_value(k->value);
  if (auto* q = std::get_if<TermNode::RatLit>(&n)) return num_value(rat_code(q->value));
  if (std::holds_alternative<TermNode::Succ>(n)) return succ_builtin();
  if (std::holds_alternative<TermNode::Rec>(n)) return rec_builtin();
  if (auto* p = std::get_if<TermNode::MkPair>(&n)) {
    ValuePtr a = eval_node(p->first, env, st);
    ValuePtr b = eval_node(p->second, env, st);
    auto val = std::make_shared<Value>();
    val->v = Value::PairV{a, b};
    return val;
  }
  if (auto* f = std::get_if<TermNode::Fst>(&n)) {
    ValuePtr v = eval_node(f->arg, env, st);
    if (auto* pv = std::get_if<Value::PairV>(&v->v)) return pv->first;
    throw TypeError("fst of non-pair value");
  }
  if (auto* s = std::get_if<TermNode::Snd>(&n)) {
    ValuePtr v = eval_node(s->arg, env, st);
    if (auto* pv = std::get_if<Value::PairV>(&v->v)) return pv->second;
    throw TypeError("snd of non-pair value");
  }
  if (auto* m = std::get_if<TermNode::Mu>(&n)) {
    ValuePtr f = eval_node(m->body, env, st);
    const MuTotality* witness =
        (!m->witness.empty() && st.oracles) ? st.oracles->mu_witness(m->witness) : nullptr;
    if (!m->witness.empty() && !witness)
      throw OracleFailure("mu witness label '" + m->witness + "' is not registered");
    return mu_search(f, witness, st);
  }
  if (std::holds_alternative<TermNode::AbsDiff>(n)) return absdiff_builtin();
  if (auto* o = std::get_if<TermNode::OracleRef>(&n)) {
    const auto* entry = st.oracles ? st.oracles->lookup(o->name) : nullptr;
    if (!entry) throw OracleFailure("oracle $" + o->name + " is not bound");
    return entry->second;
  }
  throw TypeError("unreachable term node");
}

}  // namespace

EvalResult eval(const Term& t, Env env, const OracleTable& oracles, const EvalBudget& budget) {
  EvalState st{budget.fuel, &oracles};
  try {
    return eval_node(t, env, st);
  } catch (const OutOfFuelSignal&) {
    return OutOfFuel{};
  }
}

EvalResult eval(const Term& t, const OracleTable& oracles, const EvalBudget& budget) {
  return eval(t, nullptr, oracles, budget);
}

std::variant<Nat, OutOfFuel> eval_nat(const Term& t, const OracleTable& oracles,
                                      const EvalBudget& budget) {
  EvalResult r = eval(t, oracles, budget);
  if (std::holds_alternative<OutOfFuel>(r)) return OutOfFuel{};
  return value_nat(std::get<ValuePtr>(r));
}

ValuePtr apply_value(const ValuePtr& fn, const ValuePtr& arg, EvalState& state) {
  return apply(fn, arg, state);
}

encode::BairePoint term_baire_point(const Term& t, const OracleTable& oracles,
                                    const EvalBudget& budget, std::string label) {
  // Evaluate the closed term once; each query applies the resulting function.
  EvalResult r = eval(t, oracles, budget);
  if (std::holds_alternative<OutOfFuel>(r)) throw OutOfFuelSignal{};
  ValuePtr fn = std::get<ValuePtr>(r);
  auto oracles_copy = std::make_shared<OracleTable>(oracles);
  Fuel per_query = budget.fuel;
  return encode::BairePoint::host(
      [fn, oracles_copy, per_query](const Nat& n) {
        EvalState st{per_query, oracles_copy.get()};
        return value_nat(apply(fn, num_value(n), st));
      },
      std::move(label));
}

}  // namespace wb::tcore
