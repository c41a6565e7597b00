#include "wb/encode.hpp"

#include <algorithm>
#include <sstream>

namespace wb::encode {

// --- FinSeq ----------------------------------------------------------------

FinSeq FinSeq::decode(Nat code) {
  std::vector<Nat> out;
  Nat stream = code + 1;
  // Collect the bits below the sentinel, most significant first.
  std::vector<int> bits;
  while (stream > 1) {
    bits.push_back(static_cast<int>(stream % 2));
    stream /= 2;
  }
  std::reverse(bits.begin(), bits.end());
  Nat entry = 0;
  for (std::size_t i = 0; i + 2 <= bits.size(); i += 2) {
    int tag = bits[i], payload = bits[i + 1];
    if (tag == 1) {
      entry = entry * 2 + payload;
    } else {
      out.push_back(entry);
      entry = 0;
    }
  }
  return FinSeq(std::move(out));
}

Nat FinSeq::code() const {
  Nat acc = 1;  // sentinel keeps leading zeros significant
  auto push = [&acc](int bit) { acc = acc * 2 + bit; };
  for (const Nat& e : entries_) {
    std::vector<int> digits;
    for (Nat v = e; v > 0; v /= 2) digits.push_back(static_cast<int>(v % 2));
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
      push(1);
      push(*it);
    }
    push(0);
    push(0);
  }
  return Nat(acc - 1);
}

FinSeq FinSeq::concat(const FinSeq& tau) const {
  std::vector<Nat> out = entries_;
  out.insert(out.end(), tau.entries_.begin(), tau.entries_.end());
  return FinSeq(std::move(out));
}

FinSeq FinSeq::append(const Nat& v) const {
  std::vector<Nat> out = entries_;
  out.push_back(v);
  return FinSeq(std::move(out));
}

FinSeq FinSeq::prefix(std::size_t n) const {
  std::vector<Nat> out(entries_.begin(), entries_.begin() + std::min(n, entries_.size()));
  return FinSeq(std::move(out));
}

std::string FinSeq::to_string() const {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ",";
    os << entries_[i];
  }
  os << ">";
  return os.str();
}

// --- BairePoint ------------------------------------------------------------

namespace {

// Reduce a periodic word to its minimal period.
std::vector<Nat> minimal_period(std::vector<Nat> word) {
  for (std::size_t p = 1; p < word.size(); ++p) {
    if (word.size() % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < word.size() && ok; ++i) ok = word[i] == word[i % p];
    if (ok) {
      word.resize(p);
      return word;
    }
  }
  return word;
}

void normalize_table(std::vector<Nat>& prefix, TailRule& tail) {
  if (tail.kind == TailRule::Kind::Periodic) {
    tail.word = minimal_period(std::move(tail.word));
    bool all_same = std::all_of(tail.word.begin(), tail.word.end(),
                                [&](const Nat& v) { return v == tail.word.front(); });
    if (all_same) {
      tail.kind = TailRule::Kind::Constant;
      tail.constant = tail.word.front();
      tail.word.clear();
    }
  }
  if (tail.kind == TailRule::Kind::Constant) {
    while (!prefix.empty() && prefix.back() == tail.constant) prefix.pop_back();
  } else {
    // Absorb prefix entries that already follow the periodic word, rotating
    // the word so the tail still starts right after the prefix.
    while (!prefix.empty() && prefix.back() == tail.word.back()) {
      prefix.pop_back();
      std::rotate(tail.word.rbegin(), tail.word.rbegin() + 1, tail.word.rend());
    }
  }
}

}  // namespace

BairePoint BairePoint::table(std::vector<Nat> prefix, TailRule tail) {
  if (tail.kind == TailRule::Kind::Periodic && tail.word.empty())
    throw std::invalid_argument("periodic tail with empty word");
  normalize_table(prefix, tail);
  auto rep = std::make_shared<const std::variant<Table, Host>>(Table{std::move(prefix), std::move(tail)});
  return BairePoint(std::move(rep));
}

BairePoint BairePoint::constant(Nat c) {
  return table({}, TailRule{TailRule::Kind::Constant, std::move(c), {}});
}

BairePoint BairePoint::host(std::function<Nat(const Nat&)> fn, std::string label) {
  auto rep = std::make_shared<const std::variant<Table, Host>>(Host{std::move(fn), std::move(label)});
  return BairePoint(std::move(rep));
}

Nat BairePoint::operator()(const Nat& n) const {
  if (const auto* t = std::get_if<Table>(rep_.get())) {
    if (n < Nat(t->prefix.size())) return t->prefix[n.convert_to<std::size_t>()];
    if (t->tail.kind == TailRule::Kind::Constant) return t->tail.constant;
    Nat off = n - Nat(t->prefix.size());
    Nat idx = off % Nat(t->tail.word.size());
    return t->tail.word[idx.convert_to<std::size_t>()];
  }
  return std::get<Host>(*rep_).fn(n);
}

bool BairePoint::is_table() const { return std::holds_alternative<Table>(*rep_); }

const std::vector<Nat>* BairePoint::table_prefix() const {
  const auto* t = std::get_if<Table>(rep_.get());
  return t ? &t->prefix : nullptr;
}

const TailRule* BairePoint::tail() const {
  const auto* t = std::get_if<Table>(rep_.get());
  return t ? &t->tail : nullptr;
}

Nat BairePoint::canonical_code() const {
  const auto* t = std::get_if<Table>(rep_.get());
  if (!t) throw std::logic_error("canonical_code: not a table point (" + label() + ")");
  Nat tail_code = t->tail.kind == TailRule::Kind::Constant
                      ? pair(0, t->tail.constant)
                      : pair(1, FinSeq(t->tail.word).code());
  return pair(FinSeq(t->prefix).code(), tail_code);
}

BairePoint BairePoint::from_code(const Nat& code) {
  auto [prefix_code, tail_code] = unpair(code);
  auto [kind, payload] = unpair(tail_code);
  TailRule tail;
  if (kind == 0) {
    tail.kind = TailRule::Kind::Constant;
    tail.constant = payload;
  } else {
    tail.kind = TailRule::Kind::Periodic;
    tail.word = FinSeq::decode(payload).entries();
    if (tail.word.empty()) tail.word.push_back(0);
  }
  return table(FinSeq::decode(prefix_code).entries(), std::move(tail));
}

std::optional<bool> BairePoint::decidable_has_zero() const {
  const auto* t = std::get_if<Table>(rep_.get());
  if (!t) return std::nullopt;
  for (const auto& v : t->prefix)
    if (v == 0) return true;
  if (t->tail.kind == TailRule::Kind::Constant) return t->tail.constant == 0;
  for (const auto& v : t->tail.word)
    if (v == 0) return true;
  return false;
}

std::optional<Nat> BairePoint::least_zero_in_table() const {
  const auto* t = std::get_if<Table>(rep_.get());
  if (!t) return std::nullopt;
  for (std::size_t i = 0; i < t->prefix.size(); ++i)
    if (t->prefix[i] == 0) return Nat(i);
  if (t->tail.kind == TailRule::Kind::Constant) {
    if (t->tail.constant == 0) return Nat(t->prefix.size());
    return std::nullopt;
  }
  for (std::size_t i = 0; i < t->tail.word.size(); ++i)
    if (t->tail.word[i] == 0) return Nat(t->prefix.size() + i);
  return std::nullopt;
}

const std::string& BairePoint::label() const {
  static const std::string table_label = "table";
  if (const auto* h = std::get_if<Host>(rep_.get())) return h->label;
  return table_label;
}

FinSeq initial_segment(const BairePoint& f, std::size_t n) {
  std::vector<Nat> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(f(Nat(i)));
  return FinSeq(std::move(out));
}

BairePoint to_binary(const BairePoint& f) {
  auto bit = [](const Nat& v) { return v == 0 ? Nat(0) : Nat(1); };
  if (f.is_table()) {
    std::vector<Nat> prefix;
    for (const auto& v : *f.table_prefix()) prefix.push_back(bit(v));
    TailRule tail = *f.tail();
    if (tail.kind == TailRule::Kind::Constant) {
      tail.constant = bit(tail.constant);
    } else {
      for (auto& v : tail.word) v = bit(v);
    }
    return BairePoint::table(std::move(prefix), std::move(tail));
  }
  return BairePoint::host([f, bit](const Nat& n) { return bit(f(n)); }, "b(" + f.label() + ")");
}

bool geq_lex_zero_padded(const BairePoint& f, const std::vector<int>& sigma) {
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    Nat v = f(Nat(i));
    if (v != Nat(sigma[i])) return v > Nat(sigma[i]);
  }
  // Agreement on |sigma| values: any later difference is f(i) > 0 = tail.
  return true;
}

int lex_compare_bounded(const BairePoint& f, const BairePoint& g, std::size_t depth) {
  for (std::size_t i = 0; i < depth; ++i) {
    Nat a = f(Nat(i)), b = g(Nat(i));
    if (a != b) return a < b ? -1 : 1;
  }
  return 0;
}

// --- Real ------------------------------------------------------------------

struct Real::Impl {
  std::function<Rat(int)> fn;
  std::optional<Rat> exact;
  bool normalized = false;
  std::string label;
  std::map<int, Rat> cache;
  std::mutex mu;
};

Real Real::from_rational(const Rat& q) {
  auto impl = std::make_shared<Impl>();
  impl->exact = q;
  impl->label = rat_str(q);
  return Real(std::move(impl));
}

Real Real::from_approx(std::function<Rat(int)> approx, std::string label) {
  auto impl = std::make_shared<Impl>();
  impl->fn = std::move(approx);
  impl->label = std::move(label);
  return Real(std::move(impl));
}

Rat Real::approx(int m) const {
  if (impl_->exact) return *impl_->exact;
  std::lock_guard<std::mutex> lock(impl_->mu);
  auto it = impl_->cache.find(m);
  if (it != impl_->cache.end()) return it->second;
  Rat v = impl_->fn(m);
  impl_->cache.emplace(m, v);
  return v;
}

std::optional<Rat> Real::exact() const { return impl_->exact; }
bool Real::normalized() const { return impl_->normalized; }
const std::string& Real::label() const { return impl_->label; }

namespace {
// Smallest k with 2^k >= bound.
int shift_for(const Rat& bound) {
  int k = 0;
  Rat p(1);
  while (p < bound) {
    p *= 2;
    ++k;
  }
  return k;
}
}  // namespace

Real Real::operator+(const Real& o) const {
  if (exact() && o.exact()) return from_rational(*exact() + *o.exact());
  Real a = *this, b = o;
  return from_approx([a, b](int m) { return a.approx(m + 2) + b.approx(m + 2); },
                     "(" + label() + "+" + o.label() + ")");
}

Real Real::operator-() const {
  if (exact()) return from_rational(-*exact());
  Real a = *this;
  return from_approx([a](int m) { return -a.approx(m); }, "-" + label());
}

Real Real::operator-(const Real& o) const { return *this + (-o); }

Real Real::operator*(const Real& o) const {
  if (exact() && o.exact()) return from_rational(*exact() * *o.exact());
  if (exact()) return o.scale(*exact());
  if (o.exact()) return scale(*o.exact());
  Real a = *this, b = o;
  Rat bound = boost::multiprecision::abs(a.approx(0)) + boost::multiprecision::abs(b.approx(0)) + 2;
  int k = shift_for(bound);
  return from_approx([a, b, k](int m) { return a.approx(m + k) * b.approx(m + k); },
                     "(" + label() + "*" + o.label() + ")");
}

Real Real::scale(const Rat& q) const {
  if (exact()) return from_rational(*exact() * q);
  if (q == 0) return from_rational(Rat(0));
  Real a = *this;
  int k = shift_for(boost::multiprecision::abs(q));
  return from_approx([a, q, k](int m) { return a.approx(m + k) * q; },
                     rat_str(q) + "*" + label());
}

Real Real::abs() const {
  if (exact()) return from_rational(boost::multiprecision::abs(*exact()));
  Real a = *this;
  return from_approx([a](int m) { return boost::multiprecision::abs(a.approx(m)); },
                     "|" + label() + "|");
}

Real Real::min(const Real& x, const Real& y) {
  if (x.exact() && y.exact()) return from_rational(std::min(*x.exact(), *y.exact()));
  return from_approx([x, y](int m) { return std::min(x.approx(m), y.approx(m)); },
                     "min(" + x.label() + "," + y.label() + ")");
}

Real Real::max(const Real& x, const Real& y) {
  if (x.exact() && y.exact()) return from_rational(std::max(*x.exact(), *y.exact()));
  return from_approx([x, y](int m) { return std::max(x.approx(m), y.approx(m)); },
                     "max(" + x.label() + "," + y.label() + ")");
}

Rat approx(const Real& x, int m) { return x.approx(m); }

Real hat_normalize(const BairePoint& f) {
  auto q = [f](int i) { return rat_decode(f(Nat(i))); };
  auto fn = [q](int m) {
    int limit = m + 2;
    Rat prev = q(0);
    for (int i = 0; i < limit; ++i) {
      Rat next = q(i + 1);
      if (boost::multiprecision::abs(prev - next) > 3 * pow2(-(i + 2))) return prev;
      prev = next;
    }
    return prev;
  };
  return Real::from_approx(fn, "hat(" + f.label() + ")");
}

Real tilde_clamp(const Real& x) {
  auto clamp = [](const Rat& v) { return std::min(Rat(1), std::max(Rat(0), v)); };
  std::shared_ptr<Real::Impl> impl = std::make_shared<Real::Impl>();
  if (x.exact()) {
    impl->exact = clamp(*x.exact());
  } else {
    impl->fn = [x, clamp](int m) { return clamp(x.approx(m)); };
  }
  impl->normalized = true;
  impl->label = "~" + x.label();
  return Real(std::move(impl));
}

std::variant<Separated, OutOfFuel> real_apart(const Real& x, const Real& y, Fuel fuel) {
  Real d = (x - y).abs();
  for (Fuel step = 0; step < fuel; ++step) {
    int k = static_cast<int>(step);
    if (d.approx(k) > pow2(-k)) return Separated{k};
  }
  return OutOfFuel{};
}

Real cantor_real(const BairePoint& f) {
  if (f.is_table()) {
    // Eventually periodic binary expansion: the value is rational.
    const auto& prefix = *f.table_prefix();
    const TailRule& tail = *f.tail();
    Rat v = 0;
    for (std::size_t n = 0; n < prefix.size(); ++n)
      if (prefix[n] != 0) v += pow2(-(static_cast<long>(n) + 1));
    long p = static_cast<long>(prefix.size());
    if (tail.kind == TailRule::Kind::Constant) {
      if (tail.constant != 0) v += pow2(-p);
    } else {
      Rat s = 0;
      long L = static_cast<long>(tail.word.size());
      for (long j = 0; j < L; ++j)
        if (tail.word[j] != 0) s += pow2(-(j + 1));
      Nat twoL = Nat(1) << L;
      v += pow2(-p) * s * Rat(twoL, twoL - 1);
    }
    Real r = Real::from_rational(v);
    return tilde_clamp(r);  // already in [0,1]; marks provenance
  }
  BairePoint g = f;
  auto fn = [g](int m) {
    Rat v = 0;
    for (int n = 0; n <= m + 1; ++n)
      if (g(Nat(n)) != 0) v += pow2(-(n + 1));
    return v;
  };
  std::shared_ptr<Real::Impl> impl = std::make_shared<Real::Impl>();
  impl->fn = fn;
  impl->normalized = true;
  impl->label = "r(" + f.label() + ")";
  return Real(std::move(impl));
}

// --- CharSet ---------------------------------------------------------------

CharSet CharSet::on_nat(std::function<bool(const Nat&)> member, std::string label) {
  CharSet s;
  s.nat_ = std::move(member);
  s.label_ = std::move(label);
  return s;
}

CharSet CharSet::on_baire(std::function<bool(const BairePoint&)> member, std::string label) {
  CharSet s;
  s.baire_ = std::move(member);
  s.label_ = std::move(label);
  return s;
}

CharSet CharSet::on_real(std::function<bool(const Real&)> member, std::string label) {
  CharSet s;
  s.real_ = std::move(member);
  s.label_ = std::move(label);
  return s;
}

bool CharSet::member_nat(const Nat& n) const {
  if (!nat_) throw std::logic_error("CharSet " + label_ + " has no natural carrier");
  return nat_(n);
}

bool CharSet::member_baire(const BairePoint& f) const {
  if (!baire_) throw std::logic_error("CharSet " + label_ + " has no Baire carrier");
  return baire_(f);
}

bool CharSet::member_real(const Real& x) const {
  if (!real_) throw std::logic_error("CharSet " + label_ + " has no real carrier");
  return real_(x);
}

bool CharSet::carries_nat() const { return static_cast<bool>(nat_); }
bool CharSet::carries_baire() const { return static_cast<bool>(baire_); }
bool CharSet::carries_real() const { return static_cast<bool>(real_); }

BairePoint charset_oracle(const CharSet& X) {
  return BairePoint::host([X](const Nat& n) { return X.member_nat(n) ? Nat(1) : Nat(0); },
                          "chi(" + X.label() + ")");
}

}  // namespace wb::encode
