#include "wsurf/holo.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "wsurf/errors.hpp"

namespace wsurf {

struct Expr::Node {
  Kind kind = Kind::Literal;
  cd value{};  // literal value, or subst scale
  cd shift{};  // subst shift
  int exponent = 0;
  Func func = Func::Exp;
  std::string label;
  OpaqueFn fn;
  std::vector<Expr> children;
};

namespace {

constexpr std::array<std::pair<const char*, Func>, 7> kFunctions{{
    {"exp", Func::Exp},
    {"log", Func::Log},
    {"sqrt", Func::Sqrt},
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"sinh", Func::Sinh},
    {"cosh", Func::Cosh},
}};

std::shared_ptr<Expr::Node> make_node(Expr::Kind k) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = k;
  return n;
}

}  // namespace

const char* func_name(Func f) {
  for (const auto& [name, fn] : kFunctions)
    if (fn == f) return name;
  return "?";
}

Expr::Expr() : Expr(literal(0.0)) {}

Expr Expr::literal(cd value) {
  auto n = make_node(Kind::Literal);
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::imag_unit() { return Expr(make_node(Kind::ImagUnit)); }
Expr Expr::variable() { return Expr(make_node(Kind::Var)); }

Expr Expr::apply(Func f, Expr arg) {
  auto n = make_node(Kind::Apply);
  n->func = f;
  n->children = {std::move(arg)};
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, int exponent) {
  if (exponent < 0) throw std::invalid_argument("Expr::power: negative exponent");
  auto n = make_node(Kind::Pow);
  n->exponent = exponent;
  n->children = {std::move(base)};
  return Expr(std::move(n));
}

Expr Expr::subst(Expr e, cd a, cd b) {
  auto n = make_node(Kind::Subst);
  n->value = a;
  n->shift = b;
  n->children = {std::move(e)};
  return Expr(std::move(n));
}

Expr Expr::opaque(std::string label, OpaqueFn fn) {
  auto n = make_node(Kind::Opaque);
  n->label = std::move(label);
  n->fn = std::move(fn);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
cd Expr::literal_value() const { return node_->value; }
int Expr::exponent() const { return node_->exponent; }
Func Expr::func() const { return node_->func; }
cd Expr::subst_scale() const { return node_->value; }
cd Expr::subst_shift() const { return node_->shift; }
const std::string& Expr::label() const { return node_->label; }
const std::vector<Expr>& Expr::children() const { return node_->children; }

Expr operator+(Expr a, Expr b) {
  auto n = make_node(Expr::Kind::Add);
  n->children = {std::move(a), std::move(b)};
  return Expr(std::move(n));
}

Expr operator-(Expr a, Expr b) {
  auto n = make_node(Expr::Kind::Sub);
  n->children = {std::move(a), std::move(b)};
  return Expr(std::move(n));
}

Expr operator*(Expr a, Expr b) {
  auto n = make_node(Expr::Kind::Mul);
  n->children = {std::move(a), std::move(b)};
  return Expr(std::move(n));
}

Expr operator/(Expr a, Expr b) {
  auto n = make_node(Expr::Kind::Div);
  n->children = {std::move(a), std::move(b)};
  return Expr(std::move(n));
}

Expr operator-(Expr a) {
  auto n = make_node(Expr::Kind::Neg);
  n->children = {std::move(a)};
  return Expr(std::move(n));
}

// ---------------------------------------------------------------------------
// Printing

std::string format_real(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw std::runtime_error("format_real: to_chars failed");
  return std::string(buf.data(), end);
}

std::string format_complex(cd c) {
  const double re = c.real(), im = c.imag();
  if (im == 0.0) {
    if (std::signbit(re) && re != 0.0) return "(" + format_real(re) + ")";
    return format_real(re == 0.0 ? 0.0 : re);
  }
  std::string imag_part = format_real(std::abs(im)) + "*i";
  if (re == 0.0) return std::string("(") + (im < 0 ? "-" : "") + imag_part + ")";
  return "(" + format_real(re) + (im < 0 ? "-" : "+") + imag_part + ")";
}

namespace {

// Binding strength of the printed form; children below the required level
// get parenthesized.
enum Prec { kSum = 1, kProduct = 2, kNeg = 3, kPow = 4, kAtom = 5 };

struct Printed {
  std::string text;
  int prec;
};

Printed print(const Expr& e, const std::string& var);

std::string wrap(const Printed& p, int min_prec) {
  return p.prec >= min_prec ? p.text : "(" + p.text + ")";
}

Printed print(const Expr& e, const std::string& var) {
  const auto& ch = e.children();
  switch (e.kind()) {
    case Expr::Kind::Literal:
      return {format_complex(e.literal_value()), kAtom};
    case Expr::Kind::ImagUnit:
      return {"i", kAtom};
    case Expr::Kind::Var:
      return {var, kAtom};
    case Expr::Kind::Neg:
      return {"-" + wrap(print(ch[0], var), kNeg), kNeg};
    case Expr::Kind::Add:
      return {wrap(print(ch[0], var), kSum) + " + " + wrap(print(ch[1], var), kProduct), kSum};
    case Expr::Kind::Sub:
      return {wrap(print(ch[0], var), kSum) + " - " + wrap(print(ch[1], var), kProduct), kSum};
    case Expr::Kind::Mul:
      return {wrap(print(ch[0], var), kProduct) + "*" + wrap(print(ch[1], var), kNeg), kProduct};
    case Expr::Kind::Div:
      return {wrap(print(ch[0], var), kProduct) + "/" + wrap(print(ch[1], var), kNeg), kProduct};
    case Expr::Kind::Pow:
      return {wrap(print(ch[0], var), kAtom) + "^" + std::to_string(e.exponent()), kPow};
    case Expr::Kind::Apply:
      return {std::string(func_name(e.func())) + "(" + print(ch[0], var).text + ")", kAtom};
    case Expr::Kind::Subst: {
      const cd a = e.subst_scale(), b = e.subst_shift();
      std::string inner = var;
      if (a != cd(1.0)) inner = format_complex(a) + "*" + inner;
      if (b != cd(0.0)) inner = inner + " + " + format_complex(b);
      if (inner != var) inner = "(" + inner + ")";
      return print(ch[0], inner);
    }
    case Expr::Kind::Opaque:
      return {var == "t" ? "<" + e.label() + ">" : "<" + e.label() + ">(" + var + ")", kAtom};
  }
  return {"?", kAtom};
}

}  // namespace

std::string format_expr(const Expr& e) { return print(e, "t").text; }

std::string Expr::structure() const {
  const auto& ch = children();
  auto join = [&](const char* name) {
    std::string s = std::string(name) + "(";
    for (std::size_t k = 0; k < ch.size(); ++k) s += (k ? "," : "") + ch[k].structure();
    return s + ")";
  };
  switch (kind()) {
    case Kind::Literal: {
      const cd v = literal_value();
      if (v.imag() == 0.0) return "Lit(" + format_real(v.real()) + ")";
      return "Lit(" + format_real(v.real()) + "," + format_real(v.imag()) + ")";
    }
    case Kind::ImagUnit: return "I";
    case Kind::Var: return "Var";
    case Kind::Neg: return join("Neg");
    case Kind::Add: return join("Add");
    case Kind::Sub: return join("Sub");
    case Kind::Mul: return join("Mul");
    case Kind::Div: return join("Div");
    case Kind::Pow: return "Pow(" + ch[0].structure() + "," + std::to_string(exponent()) + ")";
    case Kind::Apply: return "Apply(" + std::string(func_name(func())) + "," + ch[0].structure() + ")";
    case Kind::Subst:
      return "Subst(" + ch[0].structure() + "," + format_complex(subst_scale()) + "," +
             format_complex(subst_shift()) + ")";
    case Kind::Opaque: return "Opaque(" + label() + ")";
  }
  return "?";
}

bool is_serializable(const Expr& e) {
  if (e.kind() == Expr::Kind::Opaque) return false;
  for (const auto& c : e.children())
    if (!is_serializable(c)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expr parse() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError("empty expression", pos_);
    Expr e = parse_expr();
    skip_ws();
    if (pos_ < s_.size()) throw SyntaxError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError(std::string("expected '") + c + "', got end of input", pos_);
    if (s_[pos_] != c)
      throw SyntaxError(std::string("expected '") + c + "', got '" + s_[pos_] + "'", pos_);
    ++pos_;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        lhs = lhs + parse_term();
      } else if (peek('-')) {
        ++pos_;
        lhs = lhs - parse_term();
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        lhs = lhs * parse_factor();
      } else if (peek('/')) {
        ++pos_;
        lhs = lhs / parse_factor();
      } else {
        return lhs;
      }
    }
  }

  Expr parse_factor() {
    if (peek('-')) {
      ++pos_;
      return -parse_factor();
    }
    Expr base = parse_primary();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      const std::size_t at = pos_;
      std::size_t end = at;
      while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
      const bool integer_literal =
          end > at && (end >= s_.size() || (s_[end] != '.' && s_[end] != 'e' && s_[end] != 'E'));
      if (!integer_literal) {
        // Anything that could start an operand is a well-formed but
        // non-integer exponent; everything else is plain bad syntax.
        if (at < s_.size() && starts_operand(s_[at])) throw NonIntegerExponent(at);
        if (at >= s_.size()) throw SyntaxError("missing exponent", at);
        throw SyntaxError(std::string("unexpected '") + s_[at] + "' in exponent", at);
      }
      int n = 0;
      auto [p, ec] = std::from_chars(s_.data() + at, s_.data() + end, n);
      if (ec != std::errc() || p != s_.data() + end) throw SyntaxError("exponent out of range", at);
      pos_ = end;
      return Expr::power(std::move(base), n);
    }
    return base;
  }

  static bool starts_operand(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
           c == '.' || c == '(' || c == '-';
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t at = pos_;
      std::size_t end = at;
      while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
      const std::string_view ident = s_.substr(at, end - at);
      pos_ = end;
      if (ident == "i") return Expr::imag_unit();
      if (ident == "t") return Expr::variable();
      if (!peek('(')) {
        for (const auto& entry : kFunctions)
          if (ident == entry.first) throw SyntaxError("expected '(' after '" + std::string(ident) + "'", pos_);
        throw SyntaxError("unknown identifier '" + std::string(ident) + "'", at);
      }
      for (const auto& [name, fn] : kFunctions) {
        if (ident == name) {
          ++pos_;  // '('
          Expr arg = parse_expr();
          expect(')');
          return Expr::apply(fn, std::move(arg));
        }
      }
      throw UnknownFunction(std::string(ident), at);
    }
    throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr parse_number() {
    const std::size_t at = pos_;
    std::size_t end = at;
    auto digits = [&] {
      const std::size_t from = end;
      while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
      return end - from;
    };
    std::size_t n = digits();
    if (end < s_.size() && s_[end] == '.') {
      ++end;
      n += digits();
    }
    if (n == 0) throw SyntaxError("malformed number", at);
    if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
      std::size_t k = end + 1;
      if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
      if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
        end = k;
        digits();
      }
    }
    double value = 0;
    auto [p, ec] = std::from_chars(s_.data() + at, s_.data() + end, value);
    if (ec != std::errc() || p != s_.data() + end) throw SyntaxError("malformed number", at);
    pos_ = end;
    return Expr::literal(value);
  }
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Evaluation

namespace {

bool is_zero(cd z) { return z == cd(0.0); }

Jet eval_node(const Expr& e, const Jet& var, cd t) {
  const auto& ch = e.children();
  switch (e.kind()) {
    case Expr::Kind::Literal:
      return Jet::constant(e.literal_value());
    case Expr::Kind::ImagUnit:
      return Jet::constant(cd(0, 1));
    case Expr::Kind::Var:
      return var;
    case Expr::Kind::Neg:
      return -eval_node(ch[0], var, t);
    case Expr::Kind::Add:
      return eval_node(ch[0], var, t) + eval_node(ch[1], var, t);
    case Expr::Kind::Sub:
      return eval_node(ch[0], var, t) - eval_node(ch[1], var, t);
    case Expr::Kind::Mul:
      return eval_node(ch[0], var, t) * eval_node(ch[1], var, t);
    case Expr::Kind::Div: {
      const Jet den = eval_node(ch[1], var, t);
      if (is_zero(den.v0)) throw DomainError(format_expr(e), t);
      return eval_node(ch[0], var, t) / den;
    }
    case Expr::Kind::Pow:
      return pow(eval_node(ch[0], var, t), e.exponent());
    case Expr::Kind::Apply: {
      const Jet a = eval_node(ch[0], var, t);
      switch (e.func()) {
        case Func::Exp: return exp(a);
        case Func::Log:
          if (is_zero(a.v0)) throw DomainError(format_expr(e), t);
          return log(a);
        case Func::Sqrt:
          if (is_zero(a.v0)) throw DomainError(format_expr(e), t);
          return sqrt(a);
        case Func::Sin: return sin(a);
        case Func::Cos: return cos(a);
        case Func::Sinh: return sinh(a);
        case Func::Cosh: return cosh(a);
      }
      break;
    }
    case Expr::Kind::Subst:
      return eval_node(ch[0], affine(var, e.subst_scale(), e.subst_shift()), t);
    case Expr::Kind::Opaque: {
      const Jet inner = e.node()->fn(var.v0);
      return chain(var, inner.v0, inner.v1, inner.v2);
    }
  }
  throw std::logic_error("eval_node: unhandled node");
}

}  // namespace

Jet eval_jet(const Expr& e, cd t) { return eval_node(e, Jet::variable(t), t); }

Jet eval_jet(const Expr& e, const Jet& var) { return eval_node(e, var, var.v0); }

cd eval(const Expr& e, cd t) { return eval_jet(e, t).v0; }

Expr compose_affine(const Expr& e, cd a, cd b) {
  if (a == cd(1.0) && b == cd(0.0)) return e;
  return Expr::subst(e, a, b);
}

}  // namespace wsurf

// ---------------------------------------------------------------------------
// Symbolic derivative

namespace wsurf {

namespace {

bool is_lit(const Expr& e, cd v) { return e.kind() == Expr::Kind::Literal && e.literal_value() == v; }

Expr sum(Expr a, Expr b) {
  if (is_lit(a, 0.0)) return b;
  if (is_lit(b, 0.0)) return a;
  return a + b;
}

Expr product(Expr a, Expr b) {
  if (is_lit(a, 0.0) || is_lit(b, 0.0)) return Expr::literal(0.0);
  if (is_lit(a, 1.0)) return b;
  if (is_lit(b, 1.0)) return a;
  return a * b;
}

}  // namespace

Expr differentiate(const Expr& e) {
  const auto& ch = e.children();
  switch (e.kind()) {
    case Expr::Kind::Literal:
    case Expr::Kind::ImagUnit:
      return Expr::literal(0.0);
    case Expr::Kind::Var:
      return Expr::literal(1.0);
    case Expr::Kind::Neg: {
      Expr d = differentiate(ch[0]);
      return is_lit(d, 0.0) ? d : -d;
    }
    case Expr::Kind::Add:
      return sum(differentiate(ch[0]), differentiate(ch[1]));
    case Expr::Kind::Sub: {
      Expr db = differentiate(ch[1]);
      return sum(differentiate(ch[0]), is_lit(db, 0.0) ? db : -db);
    }
    case Expr::Kind::Mul:
      return sum(product(differentiate(ch[0]), ch[1]), product(ch[0], differentiate(ch[1])));
    case Expr::Kind::Div: {
      Expr da = differentiate(ch[0]), db = differentiate(ch[1]);
      Expr first = is_lit(da, 0.0) ? da : da / ch[1];
      if (is_lit(db, 0.0)) return first;
      return sum(first, -(product(ch[0], db) / Expr::power(ch[1], 2)));
    }
    case Expr::Kind::Pow: {
      const int n = e.exponent();
      if (n == 0) return Expr::literal(0.0);
      Expr base = n == 2 ? ch[0] : Expr::power(ch[0], n - 1);
      if (n == 1) base = Expr::literal(1.0);
      return product(product(Expr::literal(static_cast<double>(n)), base), differentiate(ch[0]));
    }
    case Expr::Kind::Apply: {
      const Expr& a = ch[0];
      Expr da = differentiate(a);
      if (is_lit(da, 0.0)) return da;
      switch (e.func()) {
        case Func::Exp: return product(e, da);
        case Func::Log: return da / a;
        case Func::Sqrt: return da / (Expr::literal(2.0) * e);
        case Func::Sin: return product(Expr::apply(Func::Cos, a), da);
        case Func::Cos: return product(-Expr::apply(Func::Sin, a), da);
        case Func::Sinh: return product(Expr::apply(Func::Cosh, a), da);
        case Func::Cosh: return product(Expr::apply(Func::Sinh, a), da);
      }
      break;
    }
    case Expr::Kind::Subst: {
      Expr inner = differentiate(ch[0]);
      if (is_lit(inner, 0.0)) return inner;
      return product(Expr::literal(e.subst_scale()), Expr::subst(inner, e.subst_scale(), e.subst_shift()));
    }
    case Expr::Kind::Opaque: {
      OpaqueFn fn = e.node()->fn;
      return Expr::opaque(e.label() + "'", [fn](cd t) {
        const Jet j = fn(t);
        return Jet{j.v1, j.v2, cd(std::numeric_limits<double>::quiet_NaN(), 0.0)};
      });
    }
  }
  throw std::logic_error("differentiate: unhandled node");
}

}  // namespace wsurf
