#include "wb/tcore.hpp"

#include <cctype>
#include <sstream>

namespace wb::tcore {

// --- Ty --------------------------------------------------------------------

Ty Ty::nat() { return Ty(); }

Ty Ty::arrow(Ty from, Ty to) {
  Ty t;
  t.kind_ = Kind::Arrow;
  t.a_ = std::make_shared<const Ty>(std::move(from));
  t.b_ = std::make_shared<const Ty>(std::move(to));
  return t;
}

Ty Ty::prod(Ty first, Ty second) {
  Ty t;
  t.kind_ = Kind::Prod;
  t.a_ = std::make_shared<const Ty>(std::move(first));
  t.b_ = std::make_shared<const Ty>(std::move(second));
  return t;
}

Ty Ty::pure(int level) {
  if (level <= 0) return nat();
  return arrow(pure(level - 1), nat());
}

bool Ty::operator==(const Ty& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == Kind::Nat) return true;
  return *a_ == *o.a_ && *b_ == *o.b_;
}

std::string Ty::to_string() const {
  // Pure types print as their level.
  for (int level = 0; level <= 4; ++level)
    if (*this == pure(level)) return std::to_string(level);
  switch (kind_) {
    case Kind::Nat:
      return "0";
    case Kind::Arrow: {
      std::string lhs = a_->to_string();
      if (a_->kind() == Kind::Arrow) lhs = "(" + lhs + ")";
      return lhs + " -> " + b_->to_string();
    }
    case Kind::Prod: {
      auto wrap = [](const Ty& t) {
        std::string s = t.to_string();
        return t.kind() == Kind::Nat || s.size() == 1 ? s : "(" + s + ")";
      };
      return wrap(*a_) + " * " + wrap(*b_);
    }
  }
  return "?";
}

Term make_term(TermNode::Node node, std::size_t pos) {
  auto t = std::make_shared<TermNode>();
  t->node = std::move(node);
  t->pos = pos;
  return t;
}

// --- printer ---------------------------------------------------------------

namespace {

void print_term(const Term& t, std::ostream& os, bool atom_ctx);

void print_atom(const Term& t, std::ostream& os) { print_term(t, os, true); }

void print_term(const Term& t, std::ostream& os, bool atom_ctx) {
  const auto& n = t->node;
  if (auto* v = std::get_if<TermNode::Var>(&n)) {
    os << v->name;
  } else if (auto* l = std::get_if<TermNode::Lam>(&n)) {
    if (atom_ctx) os << "(";
    os << "\\" << l->name << ":" << l->ty.to_string() << ". ";
    print_term(l->body, os, false);
    if (atom_ctx) os << ")";
  } else if (auto* a = std::get_if<TermNode::App>(&n)) {
    if (atom_ctx) os << "(";
    print_term(a->fn, os, std::holds_alternative<TermNode::Lam>(a->fn->node));
    os << " ";
    print_atom(a->arg, os);
    if (atom_ctx) os << ")";
  } else if (auto* k = std::get_if<TermNode::NatLit>(&n)) {
    os << k->value;
  } else if (auto* q = std::get_if<TermNode::RatLit>(&n)) {
    os << rat_str(q->value);
  } else if (std::holds_alternative<TermNode::Succ>(n)) {
    os << "S";
  } else if (auto* r = std::get_if<TermNode::Rec>(&n)) {
    os << "rec";
    if (r->inst) os << "[" << r->inst->to_string() << "]";
  } else if (auto* p = std::get_if<TermNode::MkPair>(&n)) {
    os << "<";
    print_term(p->first, os, false);
    os << ", ";
    print_term(p->second, os, false);
    os << ">";
  } else if (auto* f = std::get_if<TermNode::Fst>(&n)) {
    if (atom_ctx) os << "(";
    os << "fst ";
    print_atom(f->arg, os);
    if (atom_ctx) os << ")";
  } else if (auto* s = std::get_if<TermNode::Snd>(&n)) {
    if (atom_ctx) os << "(";
    os << "snd ";
    print_atom(s->arg, os);
    if (atom_ctx) os << ")";
  } else if (auto* m = std::get_if<TermNode::Mu>(&n)) {
    os << "mu";
    if (!m->witness.empty()) os << "[" << m->witness << "]";
    os << "(";
    print_term(m->body, os, false);
    os << ")";
  } else if (std::holds_alternative<TermNode::AbsDiff>(n)) {
    os << "absdiff";
  } else if (auto* o = std::get_if<TermNode::OracleRef>(&n)) {
    os << "$" << o->name;
  }
}

}  // namespace

std::string to_string(const Term& t) {
  std::ostringstream os;
  print_term(t, os, false);
  return os.str();
}

// --- lexer -----------------------------------------------------------------

namespace {

enum class Tok {
  LParen,
  RParen,
  LAngle,
  RAngle,
  LBracket,
  RBracket,
  Comma,
  Colon,
  Dot,
  Pipe,
  Minus,
  Arrow,
  Star,
  Lambda,
  MuKw,
  RecKw,
  FstKw,
  SndKw,
  SuccKw,
  Oracle,
  NatTok,
  RatTok,
  Ident,
  End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  bool starts_with(const char* s) const {
    std::string_view v(s);
    return src_.substr(i_, v.size()) == v;
  }

  void advance() {
    while (i_ < src_.size() && (src_[i_] == ' ' || src_[i_] == '\t' || src_[i_] == '\n' ||
                                src_[i_] == '\r')) {
      ++i_;
    }
    // line comments
    if (i_ + 1 < src_.size() && src_[i_] == '-' && src_[i_ + 1] == '-') {
      while (i_ < src_.size() && src_[i_] != '\n') ++i_;
      advance();
      return;
    }
    std::size_t start = i_;
    if (i_ >= src_.size()) {
      tok_ = {Tok::End, "", start};
      return;
    }
    char c = src_[i_];
    auto single = [&](Tok k) {
      ++i_;
      tok_ = {k, std::string(1, c), start};
    };
    if (starts_with("\xce\xbb")) {  // λ
      i_ += 2;
      tok_ = {Tok::Lambda, "λ", start};
      return;
    }
    if (starts_with("\xce\xbc")) {  // μ
      i_ += 2;
      tok_ = {Tok::MuKw, "μ", start};
      return;
    }
    if (starts_with("\xe2\x88\x92")) {  // −
      i_ += 3;
      tok_ = {Tok::Minus, "-", start};
      return;
    }
    if (starts_with("\xe2\x9f\xa8")) {  // ⟨
      i_ += 3;
      tok_ = {Tok::LAngle, "<", start};
      return;
    }
    if (starts_with("\xe2\x9f\xa9")) {  // ⟩
      i_ += 3;
      tok_ = {Tok::RAngle, ">", start};
      return;
    }
    if (starts_with("->")) {
      i_ += 2;
      tok_ = {Tok::Arrow, "->", start};
      return;
    }
    switch (c) {
      case '(': single(Tok::LParen); return;
      case ')': single(Tok::RParen); return;
      case '<': single(Tok::LAngle); return;
      case '>': single(Tok::RAngle); return;
      case '[': single(Tok::LBracket); return;
      case ']': single(Tok::RBracket); return;
      case ',': single(Tok::Comma); return;
      case ':': single(Tok::Colon); return;
      case '.': single(Tok::Dot); return;
      case '|': single(Tok::Pipe); return;
      case '*': single(Tok::Star); return;
      case '\\': {
        ++i_;
        tok_ = {Tok::Lambda, "\\", start};
        return;
      }
      default: break;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      // Number or rational literal. A leading '-' only binds when it starts
      // a rational literal ("-1/2"); otherwise it is the minus token.
      std::size_t j = i_;
      bool neg = c == '-';
      if (neg) ++j;
      std::size_t digits_start = j;
      while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
      bool has_digits = j > digits_start;
      bool rational = has_digits && j < src_.size() && src_[j] == '/';
      if (rational) {
        std::size_t k = j + 1;
        std::size_t den_start = k;
        while (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) ++k;
        if (k > den_start) {
          tok_ = {Tok::RatTok, std::string(src_.substr(i_, k - i_)), start};
          i_ = k;
          return;
        }
      }
      if (neg) {
        single(Tok::Minus);
        return;
      }
      tok_ = {Tok::NatTok, std::string(src_.substr(i_, j - i_)), start};
      i_ = j;
      return;
    }
    if (c == '$') {
      std::size_t j = i_ + 1;
      while (j < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_')) {
        ++j;
      }
      if (j == i_ + 1) throw ParseError(start, "expected oracle name after '$'");
      tok_ = {Tok::Oracle, std::string(src_.substr(i_ + 1, j - i_ - 1)), start};
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_')) {
        ++j;
      }
      std::string word(src_.substr(i_, j - i_));
      i_ = j;
      if (word == "mu") {
        tok_ = {Tok::MuKw, word, start};
      } else if (word == "rec") {
        tok_ = {Tok::RecKw, word, start};
      } else if (word == "fst") {
        tok_ = {Tok::FstKw, word, start};
      } else if (word == "snd") {
        tok_ = {Tok::SndKw, word, start};
      } else if (word == "S") {
        tok_ = {Tok::SuccKw, word, start};
      } else {
        tok_ = {Tok::Ident, word, start};
      }
      return;
    }
    throw ParseError(start, std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Token tok_{Tok::End, "", 0};
};

// --- parser ----------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  Term term() {
    Term t = parse_term_inner();
    expect(Tok::End, "end of input");
    return t;
  }

  Ty type_only() {
    Ty t = parse_ty();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  Token expect(Tok kind, const std::string& what) {
    if (lex_.peek().kind != kind)
      throw ParseError(lex_.peek().pos, "expected " + what + ", found '" + lex_.peek().text + "'");
    return lex_.take();
  }

  Ty parse_ty_atom() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::NatTok) {
      Token tok = lex_.take();
      int level = std::stoi(tok.text);
      if (level > 9) throw ParseError(tok.pos, "pure type level too large");
      return Ty::pure(level);
    }
    if (t.kind == Tok::LParen) {
      lex_.take();
      Ty inner = parse_ty();
      expect(Tok::RParen, "')'");
      return inner;
    }
    throw ParseError(t.pos, "expected a type, found '" + t.text + "'");
  }

  Ty parse_ty_prod() {
    Ty t = parse_ty_atom();
    while (lex_.peek().kind == Tok::Star) {
      lex_.take();
      t = Ty::prod(t, parse_ty_atom());
    }
    return t;
  }

  Ty parse_ty() {
    Ty t = parse_ty_prod();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return Ty::arrow(t, parse_ty());
    }
    return t;
  }

  bool atom_starts() const {
    switch (lex_.peek().kind) {
      case Tok::Pipe:
        // Inside |a - b| the next pipe closes the construct. Parenthesize to
        // nest absolute differences.
        return pipe_depth_ == 0;
      case Tok::LParen:
      case Tok::LAngle:
      case Tok::MuKw:
      case Tok::RecKw:
      case Tok::FstKw:
      case Tok::SndKw:
      case Tok::SuccKw:
      case Tok::Oracle:
      case Tok::NatTok:
      case Tok::RatTok:
      case Tok::Ident:
        return true;
      default:
        return false;
    }
  }

  Term parse_atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::LParen: {
        int saved = pipe_depth_;
        pipe_depth_ = 0;
        Term inner = parse_term_inner();
        pipe_depth_ = saved;
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::LAngle: {
        Term a = parse_term_inner();
        expect(Tok::Comma, "','");
        Term b = parse_term_inner();
        expect(Tok::RAngle, "'>'");
        return make_term(TermNode::MkPair{a, b}, t.pos);
      }
      case Tok::Pipe: {
        ++pipe_depth_;
        Term a = parse_term_inner();
        expect(Tok::Minus, "'-'");
        Term b = parse_term_inner();
        --pipe_depth_;
        expect(Tok::Pipe, "'|'");
        Term d = make_term(TermNode::AbsDiff{}, t.pos);
        return make_term(
            TermNode::App{make_term(TermNode::App{d, a}, t.pos), b}, t.pos);
      }
      case Tok::MuKw: {
        std::string witness;
        if (lex_.peek().kind == Tok::LBracket) {
          lex_.take();
          witness = expect(Tok::Ident, "witness label").text;
          expect(Tok::RBracket, "']'");
        }
        expect(Tok::LParen, "'('");
        Term body = parse_term_inner();
        expect(Tok::RParen, "')'");
        return make_term(TermNode::Mu{body, witness}, t.pos);
      }
      case Tok::RecKw: {
        std::optional<Ty> inst;
        if (lex_.peek().kind == Tok::LBracket) {
          lex_.take();
          inst = parse_ty();
          expect(Tok::RBracket, "']'");
        }
        return make_term(TermNode::Rec{inst}, t.pos);
      }
      case Tok::FstKw:
        return make_term(TermNode::Fst{parse_atom()}, t.pos);
      case Tok::SndKw:
        return make_term(TermNode::Snd{parse_atom()}, t.pos);
      case Tok::SuccKw:
        return make_term(TermNode::Succ{}, t.pos);
      case Tok::Oracle:
        return make_term(TermNode::OracleRef{t.text}, t.pos);
      case Tok::NatTok:
        return make_term(TermNode::NatLit{Nat(t.text)}, t.pos);
      case Tok::RatTok:
        return make_term(TermNode::RatLit{parse_rat(t.text)}, t.pos);
      case Tok::Ident:
        return make_term(TermNode::Var{t.text}, t.pos);
      default:
        throw ParseError(t.pos, "unexpected '" + t.text + "'");
    }
  }

  Term parse_term_inner() {
    if (lex_.peek().kind == Tok::Lambda) {
      Token lam = lex_.take();
      std::string name = expect(Tok::Ident, "binder name").text;
      expect(Tok::Colon, "':'");
      Ty ty = parse_ty();
      expect(Tok::Dot, "'.'");
      Term body = parse_term_inner();
      return make_term(TermNode::Lam{name, ty, body}, lam.pos);
    }
    Term t = parse_atom();
    while (atom_starts()) {
      Term arg = parse_atom();
      t = make_term(TermNode::App{t, arg}, t->pos);
    }
    return t;
  }

  Lexer lex_;
  int pipe_depth_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) { return Parser(text).term(); }
Ty parse_type(std::string_view text) { return Parser(text).type_only(); }

}  // namespace wb::tcore
