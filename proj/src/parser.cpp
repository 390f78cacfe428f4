#include "esum/parser.hpp"

#include <cctype>
#include <functional>

#include "esum/regularize.hpp"

namespace esum {

namespace {

struct Token {
  enum Kind { kNumber, kName, kPunct, kEnd } kind = kEnd;
  std::string text;
  size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }
  const Token& peek() const { return cur_; }
  Token next() {
    Token t = cur_;
    advance();
    return t;
  }
  bool accept(const std::string& punct) {
    if (cur_.kind == Token::kPunct && cur_.text == punct) {
      advance();
      return true;
    }
    return false;
  }
  void expect(const std::string& punct) {
    if (!accept(punct)) throw ParseError("expected '" + punct + "'", cur_.pos);
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    cur_.pos = i_;
    if (i_ >= s_.size()) {
      cur_ = {Token::kEnd, "", i_};
      return;
    }
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      cur_ = {Token::kNumber, s_.substr(i_, j - i_), i_};
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i_;
      while (j < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
        ++j;
      cur_ = {Token::kName, s_.substr(i_, j - i_), i_};
      i_ = j;
      return;
    }
    // multi-char comparison operators
    if ((c == '>' || c == '<') && i_ + 1 < s_.size() && s_[i_ + 1] == '=') {
      cur_ = {Token::kPunct, s_.substr(i_, 2), i_};
      i_ += 2;
      return;
    }
    cur_ = {Token::kPunct, std::string(1, c), i_};
    ++i_;
  }

  std::string s_;
  size_t i_ = 0;
  Token cur_;
};

}  // namespace

struct MSlotAst {
  bool checked = false;
  ExprPtr part;
  bool has_prod = false;
  bool negated = false;
  std::vector<int> refs;
};

struct SumCond {
  enum Kind { kGe, kGt, kLe, kLt, kEven, kOdd } kind;
  std::string var;
  ExprPtr rhs;  // null for parity conditions
};

struct Expr {
  enum Kind {
    kNumber,
    kVar,
    kAdd,
    kSub,
    kMul,
    kDiv,
    kNeg,
    kPow,
    kBinom,
    kSymbol,  // z zs zh T t S
    kMmv,
    kSum,
  } kind;

  Rational number;
  std::string name;  // var name or symbol function
  ExprPtr a, b;
  std::vector<ExprPtr> args;

  std::vector<int> pinned;  // MI positions (1-based); empty for plain M
  std::vector<MSlotAst> slots;

  std::vector<std::string> sum_vars;
  ExprPtr sum_total;
  std::vector<SumCond> sum_conds;
  ExprPtr sum_weight;
  std::vector<ExprPtr> sum_body;
};

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  ExprPtr parse() {
    ExprPtr e = add();
    if (lex_.peek().kind != Token::kEnd)
      throw ParseError("unexpected trailing input", lex_.peek().pos);
    return e;
  }

 private:
  static ExprPtr node(Expr&& e) { return std::make_shared<Expr>(std::move(e)); }

  ExprPtr add() {
    ExprPtr e = mul();
    for (;;) {
      if (lex_.accept("+")) {
        Expr n{Expr::kAdd};
        n.a = e;
        n.b = mul();
        e = node(std::move(n));
      } else if (lex_.accept("-")) {
        Expr n{Expr::kSub};
        n.a = e;
        n.b = mul();
        e = node(std::move(n));
      } else {
        return e;
      }
    }
  }

  bool mul_stops_here() const {
    // inside an M-slot, '*' followed by an e-reference or '~' belongs to
    // the slot grammar, not to multiplication
    if (!in_mslot_) return false;
    const Token& t = lex_.peek();
    if (t.kind == Token::kPunct && t.text == "~") return true;
    if (t.kind == Token::kName && t.text.size() >= 1 && t.text[0] == 'e') {
      if (t.text == "e") return true;
      bool digits = true;
      for (size_t i = 1; i < t.text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t.text[i]))) digits = false;
      if (digits) return true;
    }
    return false;
  }

  ExprPtr mul() {
    ExprPtr e = unary();
    for (;;) {
      if (lex_.peek().kind == Token::kPunct && lex_.peek().text == "*") {
        Lexer save = lex_;
        lex_.next();
        if (mul_stops_here()) {
          lex_ = save;
          return e;
        }
        Expr n{Expr::kMul};
        n.a = e;
        n.b = unary();
        e = node(std::move(n));
      } else if (lex_.accept("/")) {
        Expr n{Expr::kDiv};
        n.a = e;
        n.b = unary();
        e = node(std::move(n));
      } else {
        return e;
      }
    }
  }

  ExprPtr unary() {
    if (lex_.accept("-")) {
      Expr n{Expr::kNeg};
      n.a = unary();
      return node(std::move(n));
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr e = atom();
    if (lex_.accept("^")) {
      Expr n{Expr::kPow};
      n.a = e;
      n.b = unary();
      return node(std::move(n));
    }
    return e;
  }

  ExprPtr atom() {
    const Token t = lex_.peek();
    if (t.kind == Token::kNumber) {
      lex_.next();
      Expr n{Expr::kNumber};
      n.number = Rational(BigInt(t.text));
      return node(std::move(n));
    }
    if (t.kind == Token::kPunct && t.text == "(") {
      lex_.next();
      ExprPtr e = add();
      lex_.expect(")");
      return e;
    }
    if (t.kind != Token::kName) throw ParseError("expected expression", t.pos);
    lex_.next();
    const std::string& name = t.text;

    if (name == "sum") return sum_expr();
    if (name == "binom") {
      lex_.expect("(");
      Expr n{Expr::kBinom};
      n.a = add();
      lex_.expect(",");
      n.b = add();
      lex_.expect(")");
      return node(std::move(n));
    }
    if (name == "z" || name == "zs" || name == "zh" || name == "T" || name == "t" ||
        name == "S") {
      if (lex_.peek().kind == Token::kPunct && lex_.peek().text == "(") {
        lex_.next();
        Expr n{Expr::kSymbol};
        n.name = name;
        if (!lex_.accept(")")) {
          n.args.push_back(add());
          while (lex_.accept(",")) n.args.push_back(add());
          lex_.expect(")");
        }
        return node(std::move(n));
      }
      // plain variable named T/t/S/z without a call
      Expr n{Expr::kVar};
      n.name = name;
      return node(std::move(n));
    }
    if (name == "M" || name == "MI") {
      Expr n{Expr::kMmv};
      if (name == "MI") {
        lex_.expect("{");
        n.pinned.push_back(int_literal());
        while (lex_.accept(",")) n.pinned.push_back(int_literal());
        lex_.expect("}");
      }
      lex_.expect("(");
      n.slots.push_back(mslot());
      while (lex_.accept(",")) n.slots.push_back(mslot());
      lex_.expect(")");
      return node(std::move(n));
    }
    if (name == "even" || name == "odd")
      throw ParseError("parity conditions belong inside sum{...}", t.pos);
    Expr n{Expr::kVar};
    n.name = name;
    return node(std::move(n));
  }

  int int_literal() {
    const Token t = lex_.next();
    if (t.kind != Token::kNumber) throw ParseError("expected integer", t.pos);
    return std::stoi(t.text);
  }

  MSlotAst mslot() {
    MSlotAst slot;
    // 'v' prefix: vNAME, vNUMBER, or v(expr)
    const Token& t = lex_.peek();
    if (t.kind == Token::kName && t.text[0] == 'v' &&
        (t.text.size() > 1 || (t.text == "v"))) {
      std::string rest = t.text.substr(1);
      if (!rest.empty()) {
        lex_.next();
        slot.checked = true;
        bool digits = !rest.empty();
        for (char c : rest)
          if (!std::isdigit(static_cast<unsigned char>(c))) digits = false;
        Expr n{digits ? Expr::kNumber : Expr::kVar};
        if (digits)
          n.number = Rational(BigInt(rest));
        else
          n.name = rest;
        slot.part = std::make_shared<Expr>(std::move(n));
      } else {
        // bare 'v': checked parenthesized expression v(...)
        lex_.next();
        slot.checked = true;
        lex_.expect("(");
        slot.part = add();
        lex_.expect(")");
      }
    } else {
      bool saved = in_mslot_;
      in_mslot_ = true;
      slot.part = add();
      in_mslot_ = saved;
    }
    // product suffix
    if (lex_.peek().kind == Token::kPunct && lex_.peek().text == "*") {
      lex_.next();
      slot.has_prod = true;
      if (lex_.accept("~")) slot.negated = true;
      eref(slot.refs);
      while (lex_.peek().kind == Token::kPunct && lex_.peek().text == "*") {
        lex_.next();
        eref(slot.refs);
      }
    }
    return slot;
  }

  void eref(std::vector<int>& refs) {
    const Token t = lex_.next();
    if (t.kind != Token::kName || t.text[0] != 'e')
      throw ParseError("expected e-reference", t.pos);
    if (t.text == "e") {
      lex_.expect("{");
      refs.push_back(int_literal());
      while (lex_.accept(",")) refs.push_back(int_literal());
      lex_.expect("}");
      return;
    }
    for (size_t i = 1; i < t.text.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t.text[i])))
        throw ParseError("expected e-reference", t.pos);
    refs.push_back(std::stoi(t.text.substr(1)));
  }

  ExprPtr sum_expr() {
    Expr n{Expr::kSum};
    lex_.expect("{");
    n.sum_vars.push_back(name_token());
    while (lex_.accept("+")) n.sum_vars.push_back(name_token());
    lex_.expect("=");
    n.sum_total = add();
    while (lex_.accept(",")) {
      const Token t = lex_.next();
      if (t.kind != Token::kName) throw ParseError("expected constraint", t.pos);
      if (t.text == "even" || t.text == "odd") {
        lex_.expect("(");
        SumCond c{t.text == "even" ? SumCond::kEven : SumCond::kOdd, name_token(), nullptr};
        lex_.expect(")");
        n.sum_conds.push_back(std::move(c));
      } else {
        SumCond c{SumCond::kGe, t.text, nullptr};
        if (lex_.accept(">="))
          c.kind = SumCond::kGe;
        else if (lex_.accept(">"))
          c.kind = SumCond::kGt;
        else if (lex_.accept("<="))
          c.kind = SumCond::kLe;
        else if (lex_.accept("<"))
          c.kind = SumCond::kLt;
        else
          throw ParseError("expected comparison", lex_.peek().pos);
        c.rhs = add();
        n.sum_conds.push_back(std::move(c));
      }
    }
    lex_.expect("}");
    lex_.expect("[");
    n.sum_weight = add();
    lex_.expect("]");
    // body: one or more juxtaposed factors
    for (;;) {
      const Token& t = lex_.peek();
      bool starts_atom = (t.kind == Token::kNumber) || (t.kind == Token::kName) ||
                         (t.kind == Token::kPunct && t.text == "(");
      if (!starts_atom) break;
      n.sum_body.push_back(power());
    }
    if (n.sum_body.empty()) throw ParseError("sum body missing", lex_.peek().pos);
    return node(std::move(n));
  }

  std::string name_token() {
    const Token t = lex_.next();
    if (t.kind != Token::kName) throw ParseError("expected name", t.pos);
    return t.text;
  }

  Lexer lex_;
  bool in_mslot_ = false;
};

}  // namespace

ExprPtr parse_expression(const std::string& text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// evaluation

namespace {

struct Value {
  bool is_scalar = true;
  Rational scalar;
  TPoly poly;

  static Value from_scalar(Rational r) {
    Value v;
    v.scalar = std::move(r);
    return v;
  }
  static Value from_poly(TPoly p) {
    Value v;
    v.is_scalar = false;
    v.poly = std::move(p);
    return v;
  }
  TPoly as_poly() const {
    if (!is_scalar) return poly;
    return TPoly(IndexComb(Index(), scalar));
  }
};

long as_long(const Rational& r, const char* what) {
  if (denominator(r) != 1) throw std::invalid_argument(std::string(what) + " must be an integer");
  return r.convert_to<long>();
}

Value eval_rec(const ExprPtr& e, const Env& env);

Rational scalar_rec(const ExprPtr& e, const Env& env) {
  Value v = eval_rec(e, env);
  if (!v.is_scalar) throw std::invalid_argument("expected a scalar expression");
  return v.scalar;
}

Value eval_symbol(const Expr& e, const Env& env) {
  std::vector<int> entries;
  for (const auto& a : e.args) {
    long v = as_long(scalar_rec(a, env), "symbol argument");
    if (v == 0) throw std::invalid_argument("symbol argument must be nonzero");
    entries.push_back(static_cast<int>(v));
  }
  if (e.name == "z" || e.name == "zs" || e.name == "zh") {
    Index u(entries);
    if (e.name == "z") {
      if (!u.admissible())
        throw std::invalid_argument("non-admissible symbol " + u.str() +
                                    "; use zs(...) or zh(...)");
      return Value::from_poly(TPoly(u));
    }
    return Value::from_poly(e.name == "zs" ? star_regularize(u) : shuffle_regularize(u));
  }
  // T / t / S parity variants
  for (int v : entries)
    if (v < 0)
      throw std::invalid_argument("parity variants take positive arguments");
  MMVKind kind = e.name == "T"   ? MMVKind::kTUpper
                 : e.name == "t" ? MMVKind::kTLower
                                 : MMVKind::kS;
  IndexComb expansion = expand_mmv(variant_to_mmv(kind, entries));
  TPoly out;
  for (const auto& [u, c] : expansion.terms()) {
    if (!u.admissible())
      throw std::invalid_argument("divergent parity variant (leading argument 1): " +
                                  u.str());
    out += TPoly(u) * c;
  }
  return Value::from_poly(out);
}

Value eval_mmv(const Expr& e, const Env& env) {
  MMVSpec spec;
  const int d = static_cast<int>(e.slots.size());
  std::vector<bool> pinned(d, false);
  for (int p : e.pinned) {
    if (p < 1 || p > d) throw std::invalid_argument("MI position out of range");
    pinned[p - 1] = true;
  }
  for (int j = 0; j < d; ++j) {
    const MSlotAst& s = e.slots[j];
    long part = as_long(scalar_rec(s.part, env), "M slot");
    if (part == 0) throw std::invalid_argument("M slot part must be nonzero");
    if (s.has_prod) {
      if (!pinned[j]) throw std::invalid_argument("e-products only on pinned positions");
      if (part < 0) throw std::invalid_argument("e-product slots take positive parts");
      spec.parts.push_back(static_cast<int>(part));
      spec.entries.push_back(MMVEntry::pinned_prod(s.refs, s.negated));
      continue;
    }
    if (pinned[j]) {
      if (s.checked) throw std::invalid_argument("'v' marks free positions only");
      spec.parts.push_back(static_cast<int>(part < 0 ? -part : part));
      spec.entries.push_back(MMVEntry::pinned_sign(part < 0 ? -1 : +1));
    } else {
      if (part < 0)
        throw std::invalid_argument("free M positions use 'v' for checks, not bars");
      spec.parts.push_back(static_cast<int>(part));
      spec.entries.push_back(s.checked ? MMVEntry::free_minus() : MMVEntry::free_plus());
    }
  }
  IndexComb expansion = expand_incomplete_mmv(spec);
  TPoly out;
  for (const auto& [u, c] : expansion.terms()) {
    if (!u.admissible())
      throw std::invalid_argument("divergent mixed value term " + u.str());
    out += TPoly(u) * c;
  }
  return Value::from_poly(out);
}

Value eval_sum(const Expr& e, const Env& env) {
  long total = as_long(scalar_rec(e.sum_total, env), "sum total");
  const int nv = static_cast<int>(e.sum_vars.size());
  TPoly acc;
  std::vector<long> vals(nv, 0);
  std::function<void(int, long)> rec = [&](int i, long rem) {
    if (i == nv - 1) {
      if (rem < 1) return;
      vals[i] = rem;
    } else {
      for (long a = 1; a + (nv - i - 1) <= rem; ++a) {
        vals[i] = a;
        rec(i + 1, rem - a);
      }
      return;
    }
    Env inner = env;
    for (int k = 0; k < nv; ++k) inner[e.sum_vars[k]] = Rational(vals[k]);
    for (const SumCond& c : e.sum_conds) {
      auto it = inner.find(c.var);
      if (it == inner.end()) throw std::invalid_argument("unbound constraint variable " + c.var);
      long lhs = as_long(it->second, "constraint variable");
      if (c.kind == SumCond::kEven || c.kind == SumCond::kOdd) {
        if ((lhs % 2 == 0) != (c.kind == SumCond::kEven)) return;
        continue;
      }
      long rhs = as_long(scalar_rec(c.rhs, inner), "constraint bound");
      bool ok = c.kind == SumCond::kGe   ? lhs >= rhs
                : c.kind == SumCond::kGt ? lhs > rhs
                : c.kind == SumCond::kLe ? lhs <= rhs
                                         : lhs < rhs;
      if (!ok) return;
    }
    Rational w = scalar_rec(e.sum_weight, inner);
    if (w == 0) return;
    Value body = eval_rec(e.sum_body[0], inner);
    TPoly prod = body.as_poly();
    for (size_t k = 1; k < e.sum_body.size(); ++k)
      prod = mul(prod, eval_rec(e.sum_body[k], inner).as_poly());
    acc += prod * w;
  };
  if (nv == 1) {
    if (total >= 1) rec(0, total);
  } else {
    rec(0, total);
  }
  return Value::from_poly(acc);
}

Value eval_rec(const ExprPtr& e, const Env& env) {
  switch (e->kind) {
    case Expr::kNumber:
      return Value::from_scalar(e->number);
    case Expr::kVar: {
      auto it = env.find(e->name);
      if (it == env.end()) throw std::invalid_argument("unbound variable " + e->name);
      return Value::from_scalar(it->second);
    }
    case Expr::kAdd:
    case Expr::kSub: {
      Value a = eval_rec(e->a, env), b = eval_rec(e->b, env);
      bool sub = e->kind == Expr::kSub;
      if (a.is_scalar && b.is_scalar)
        return Value::from_scalar(sub ? Rational(a.scalar - b.scalar)
                                      : Rational(a.scalar + b.scalar));
      TPoly pa = a.as_poly(), pb = b.as_poly();
      return Value::from_poly(sub ? pa - pb : pa + pb);
    }
    case Expr::kMul: {
      Value a = eval_rec(e->a, env), b = eval_rec(e->b, env);
      if (a.is_scalar && b.is_scalar) return Value::from_scalar(a.scalar * b.scalar);
      if (a.is_scalar) return Value::from_poly(b.poly * a.scalar);
      if (b.is_scalar) return Value::from_poly(a.poly * b.scalar);
      return Value::from_poly(mul(a.poly, b.poly));
    }
    case Expr::kDiv: {
      Value a = eval_rec(e->a, env);
      Rational d = scalar_rec(e->b, env);
      if (d == 0) throw std::invalid_argument("division by zero");
      if (a.is_scalar) return Value::from_scalar(a.scalar / d);
      return Value::from_poly(a.poly * (Rational(1) / d));
    }
    case Expr::kNeg: {
      Value a = eval_rec(e->a, env);
      if (a.is_scalar) return Value::from_scalar(-a.scalar);
      return Value::from_poly(a.poly * Rational(-1));
    }
    case Expr::kPow: {
      long ex = as_long(scalar_rec(e->b, env), "exponent");
      Value a = eval_rec(e->a, env);
      if (a.is_scalar) {
        if (ex < 0) {
          if (a.scalar == 0) throw std::invalid_argument("0^negative");
          return Value::from_scalar(rat_pow(Rational(1) / a.scalar, -ex));
        }
        return Value::from_scalar(rat_pow(a.scalar, ex));
      }
      if (ex < 0) throw std::invalid_argument("negative power of a symbol");
      TPoly out{IndexComb(Index())};
      for (long i = 0; i < ex; ++i) out = mul(out, a.poly);
      return Value::from_poly(out);
    }
    case Expr::kBinom: {
      long n = as_long(scalar_rec(e->a, env), "binom argument");
      long k = as_long(scalar_rec(e->b, env), "binom argument");
      return Value::from_scalar(Rational(binomial(n, k)));
    }
    case Expr::kSymbol:
      return eval_symbol(*e, env);
    case Expr::kMmv:
      return eval_mmv(*e, env);
    case Expr::kSum:
      return eval_sum(*e, env);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

TPoly eval_expression(const ExprPtr& e, const Env& env) { return eval_rec(e, env).as_poly(); }

Rational eval_scalar(const ExprPtr& e, const Env& env) {
  Value v = eval_rec(e, env);
  if (!v.is_scalar) throw std::invalid_argument("expected a scalar expression");
  return v.scalar;
}

// ---------------------------------------------------------------------------
// printing

namespace {

void print_rec(const ExprPtr& e, std::string& out);

void print_child(const ExprPtr& e, std::string& out, bool parens) {
  if (parens) out += "(";
  print_rec(e, out);
  if (parens) out += ")";
}

bool is_additive(const ExprPtr& e) {
  return e->kind == Expr::kAdd || e->kind == Expr::kSub;
}
bool is_compound(const ExprPtr& e) {
  return is_additive(e) || e->kind == Expr::kMul || e->kind == Expr::kDiv ||
         e->kind == Expr::kNeg || e->kind == Expr::kSum;
}

void print_rec(const ExprPtr& e, std::string& out) {
  switch (e->kind) {
    case Expr::kNumber:
      out += to_string(e->number);
      return;
    case Expr::kVar:
      out += e->name;
      return;
    case Expr::kAdd:
    case Expr::kSub:
      print_rec(e->a, out);
      out += (e->kind == Expr::kAdd) ? " + " : " - ";
      print_child(e->b, out, is_additive(e->b));
      return;
    case Expr::kMul:
      print_child(e->a, out, is_additive(e->a) || e->a->kind == Expr::kNeg);
      out += "*";
      print_child(e->b, out,
                  is_additive(e->b) || e->b->kind == Expr::kNeg || e->b->kind == Expr::kMul ||
                      e->b->kind == Expr::kDiv);
      return;
    case Expr::kDiv:
      print_child(e->a, out, is_additive(e->a) || e->a->kind == Expr::kNeg);
      out += "/";
      print_child(e->b, out, is_compound(e->b));
      return;
    case Expr::kNeg:
      out += "-";
      print_child(e->a, out, is_compound(e->a));
      return;
    case Expr::kPow:
      print_child(e->a, out, is_compound(e->a) || e->a->kind == Expr::kPow);
      out += "^";
      print_child(e->b, out, is_compound(e->b) || e->b->kind == Expr::kPow);
      return;
    case Expr::kBinom:
      out += "binom(";
      print_rec(e->a, out);
      out += ",";
      print_rec(e->b, out);
      out += ")";
      return;
    case Expr::kSymbol: {
      out += e->name + "(";
      for (size_t i = 0; i < e->args.size(); ++i) {
        if (i) out += ",";
        print_rec(e->args[i], out);
      }
      out += ")";
      return;
    }
    case Expr::kMmv: {
      if (e->pinned.empty()) {
        out += "M(";
      } else {
        out += "MI{";
        for (size_t i = 0; i < e->pinned.size(); ++i) {
          if (i) out += ",";
          out += std::to_string(e->pinned[i]);
        }
        out += "}(";
      }
      for (size_t j = 0; j < e->slots.size(); ++j) {
        if (j) out += ",";
        const MSlotAst& s = e->slots[j];
        if (s.checked) {
          if (s.part->kind == Expr::kNumber || s.part->kind == Expr::kVar) {
            out += "v";
            print_rec(s.part, out);
          } else {
            out += "v(";
            print_rec(s.part, out);
            out += ")";
          }
        } else {
          print_child(s.part, out, is_compound(s.part));
        }
        if (s.has_prod) {
          out += "*";
          if (s.negated) out += "~";
          out += "e{";
          for (size_t i = 0; i < s.refs.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(s.refs[i]);
          }
          out += "}";
        }
      }
      out += ")";
      return;
    }
    case Expr::kSum: {
      out += "sum{";
      for (size_t i = 0; i < e->sum_vars.size(); ++i) {
        if (i) out += "+";
        out += e->sum_vars[i];
      }
      out += "=";
      print_rec(e->sum_total, out);
      for (const SumCond& c : e->sum_conds) {
        out += ", ";
        if (c.kind == SumCond::kEven || c.kind == SumCond::kOdd) {
          out += (c.kind == SumCond::kEven ? "even(" : "odd(") + c.var + ")";
        } else {
          out += c.var;
          out += c.kind == SumCond::kGe   ? ">="
                 : c.kind == SumCond::kGt ? ">"
                 : c.kind == SumCond::kLe ? "<="
                                          : "<";
          print_rec(c.rhs, out);
        }
      }
      out += "}[";
      print_rec(e->sum_weight, out);
      out += "] ";
      for (size_t i = 0; i < e->sum_body.size(); ++i) {
        if (i) out += " ";
        print_child(e->sum_body[i], out, is_compound(e->sum_body[i]));
      }
      return;
    }
  }
}

}  // namespace

std::string print_expression(const ExprPtr& e) {
  std::string out;
  print_rec(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// method strings

std::vector<MethodTerm> parse_method(const std::string& text) {
  Lexer lex(text);
  std::vector<MethodTerm> out;
  bool first = true;
  for (;;) {
    if (lex.peek().kind == Token::kEnd) break;
    Rational sign(1);
    if (lex.accept("-"))
      sign = -1;
    else
      lex.accept("+");
    if (!first && sign == 1 && out.empty())
      throw ParseError("expected method term", lex.peek().pos);
    // optional rational coefficient
    Rational coef = sign;
    if (lex.peek().kind == Token::kNumber) {
      Rational num(BigInt(lex.next().text));
      if (lex.accept("/")) {
        if (lex.peek().kind != Token::kNumber)
          throw ParseError("expected denominator", lex.peek().pos);
        num /= Rational(BigInt(lex.next().text));
      }
      coef *= num;
      lex.expect("*");
    }
    // F token, possibly with an attached subscript like F2 or F_2
    Token ft = lex.next();
    if (ft.kind != Token::kName || ft.text.empty() || (ft.text[0] != 'F'))
      throw ParseError("expected F-invocation", ft.pos);
    std::vector<int> derivs;
    std::string rest = ft.text.substr(1);
    if (!rest.empty() && rest[0] == '_') rest = rest.substr(1);
    for (char c : rest) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("bad F subscript", ft.pos);
      derivs.push_back(c - '0');
    }
    if (lex.accept("{")) {
      if (!derivs.empty()) throw ParseError("duplicate F subscript", ft.pos);
      for (;;) {
        const Token t = lex.next();
        if (t.kind != Token::kNumber) throw ParseError("expected subscript", t.pos);
        derivs.push_back(std::stoi(t.text));
        if (!lex.accept(",")) break;
      }
      lex.expect("}");
    }
    lex.expect("(");
    FInvocation inv;
    inv.derivs = derivs;
    for (;;) {
      FGroup g;
      for (;;) {
        long v;
        bool neg = lex.accept("-");
        const Token t = lex.next();
        if (t.kind != Token::kNumber) throw ParseError("expected point value", t.pos);
        v = std::stol(t.text) * (neg ? -1 : 1);
        g.point.push_back(v);
        g.signs.push_back(1);
        if (!lex.accept(",")) break;
      }
      inv.groups.push_back(std::move(g));
      if (!lex.accept(";")) break;
    }
    lex.expect(")");
    // trailing division: F(...)/3
    if (lex.accept("/")) {
      const Token t = lex.next();
      if (t.kind != Token::kNumber) throw ParseError("expected divisor", t.pos);
      coef /= Rational(BigInt(t.text));
    }
    out.push_back({coef, std::move(inv)});
    first = false;
  }
  if (out.empty()) throw ParseError("empty method", 0);
  return out;
}

void apply_signs(FInvocation& inv, const std::string& signs) {
  size_t g = 0, i = 0;
  for (char c : signs) {
    if (c == ';') {
      if (g >= inv.groups.size() || i != inv.groups[g].signs.size())
        throw std::invalid_argument("sign string does not match group shape");
      ++g;
      i = 0;
      continue;
    }
    if (c != '+' && c != '-') throw std::invalid_argument("signs must be +/-/;");
    if (g >= inv.groups.size() || i >= inv.groups[g].signs.size())
      throw std::invalid_argument("sign string does not match group shape");
    inv.groups[g].signs[i] = (c == '-') ? -1 : +1;
    ++i;
  }
  if (g + 1 != inv.groups.size() || i != inv.groups.back().signs.size())
    throw std::invalid_argument("sign string does not match group shape");
}

int homogeneous_weight(const TPoly& p) {
  int w = -1;
  for (int k = 0; k <= p.degree(); ++k) {
    for (const auto& [u, _] : p.coeff(k).terms()) {
      int uw = u.weight() + k;
      if (w < 0) w = uw;
      if (uw != w) throw std::invalid_argument("expression is not weight-homogeneous");
    }
  }
  if (w < 0) throw std::invalid_argument("zero polynomial has no weight");
  return w;
}

}  // namespace esum
