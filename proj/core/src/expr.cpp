#include "biquat/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <utility>
#include <vector>

namespace biquat {

namespace {

constexpr double kPoleEps = 1e-300;

bool is_number(const ExprPtr& e) { return e->kind == ExprKind::Number; }

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

}  // namespace

Complex cpow_int(Complex z, int n) {
  if (n < 0) {
    Complex w = cpow_int(z, -n);
    if (std::abs(w) < kPoleEps) throw PoleOrDivisionByZero("pole in integer power");
    return Complex(1.0) / w;
  }
  Complex r{1.0};
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

namespace {

ExprPtr node(ExprKind kind, ExprPtr a = nullptr, ExprPtr b = nullptr) {
  Expr e;
  e.kind = kind;
  e.a = std::move(a);
  e.b = std::move(b);
  return make(std::move(e));
}

}  // namespace

ExprPtr number(Complex v) {
  Expr e;
  e.kind = ExprKind::Number;
  e.value = v;
  return make(std::move(e));
}

ExprPtr variable(int index) {
  Expr e;
  e.kind = ExprKind::Var;
  e.var = index;
  return make(std::move(e));
}

ExprPtr neg(ExprPtr x) {
  if (is_number(x)) return number(-x->value);
  return node(ExprKind::Neg, std::move(x));
}

ExprPtr add(ExprPtr x, ExprPtr y) {
  if (is_number(x) && is_number(y)) return number(x->value + y->value);
  return node(ExprKind::Add, std::move(x), std::move(y));
}

ExprPtr sub(ExprPtr x, ExprPtr y) {
  if (is_number(x) && is_number(y)) return number(x->value - y->value);
  return node(ExprKind::Sub, std::move(x), std::move(y));
}

ExprPtr mul(ExprPtr x, ExprPtr y) {
  if (is_number(x) && is_number(y)) return number(x->value * y->value);
  return node(ExprKind::Mul, std::move(x), std::move(y));
}

ExprPtr div(ExprPtr x, ExprPtr y) {
  if (is_number(x) && is_number(y) && std::abs(y->value) >= kPoleEps) {
    return number(x->value / y->value);
  }
  return node(ExprKind::Div, std::move(x), std::move(y));
}

ExprPtr pow(ExprPtr x, int n) {
  if (is_number(x)) return number(cpow_int(x->value, n));
  Expr e;
  e.kind = ExprKind::Pow;
  e.expo = n;
  e.a = std::move(x);
  return make(std::move(e));
}

ExprPtr call(Func f, ExprPtr arg) {
  Expr e;
  e.kind = ExprKind::Call;
  e.func = f;
  e.a = std::move(arg);
  return make(std::move(e));
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Parser {
  std::string_view src;
  std::span<const std::string_view> vars;
  size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= src.size();
  }
  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(msg, pos); }

  ExprPtr expression() {
    ExprPtr lhs = term();
    for (;;) {
      if (consume('+')) lhs = add(lhs, term());
      else if (consume('-')) lhs = sub(lhs, term());
      else return lhs;
    }
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    for (;;) {
      if (consume('*')) lhs = mul(lhs, factor());
      else if (consume('/')) lhs = div(lhs, factor());
      else return lhs;
    }
  }

  ExprPtr factor() {
    ExprPtr base = atom();
    if (consume('^')) return pow(base, exponent());
    return base;
  }

  ExprPtr atom() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input");
    const char c = src[pos];
    if (c == '(') {
      ++pos;
      ExprPtr inner = expression();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos;
      return neg(atom());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number(Complex(real_number(), 0.0));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  double real_number() {
    const size_t start = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    if (pos < src.size() && src[pos] == '.') {
      ++pos;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
      size_t mark = pos + 1;
      if (mark < src.size() && (src[mark] == '+' || src[mark] == '-')) ++mark;
      if (mark < src.size() && std::isdigit(static_cast<unsigned char>(src[mark]))) {
        pos = mark;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
      }
    }
    const std::string token(src.substr(start, pos - start));
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) throw SyntaxError("malformed number", start);
    return v;
  }

  ExprPtr identifier() {
    const size_t start = pos;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      ++pos;
    const std::string_view name = src.substr(start, pos - start);
    if (peek() == '(') {
      ++pos;  // '('
      Func f;
      if (name == "exp") f = Func::Exp;
      else if (name == "sin") f = Func::Sin;
      else if (name == "cos") f = Func::Cos;
      else throw UnknownFunction("unknown function '" + std::string(name) + "'", start);
      ExprPtr arg = expression();
      if (!consume(')')) fail("expected ')'");
      return call(f, arg);
    }
    if (name == "i") return number(Complex(0.0, 1.0));
    for (size_t k = 0; k < vars.size(); ++k) {
      if (name == vars[k]) return variable(static_cast<int>(k));
    }
    throw UnknownFunction("unknown symbol '" + std::string(name) + "'", start);
  }

  int exponent() {
    skip_ws();
    const size_t start = pos;
    size_t p = pos;
    if (p < src.size() && (src[p] == '+' || src[p] == '-')) ++p;
    size_t digits = p;
    while (p < src.size() && std::isdigit(static_cast<unsigned char>(src[p]))) ++p;
    const bool has_digits = p > digits;
    const bool continues_noninteger =
        has_digits && p < src.size() && (src[p] == '.' || src[p] == 'e' || src[p] == 'E');
    if (!has_digits || continues_noninteger) {
      throw NonIntegerExponent("exponent must be an integer literal", start);
    }
    const std::string token(src.substr(start, p - start));
    const long v = std::strtol(token.c_str(), nullptr, 10);
    if (v > 1000000 || v < -1000000) throw SyntaxError("exponent out of range", start);
    pos = p;
    return static_cast<int>(v);
  }
};

}  // namespace

ExprPtr parse_expr(std::string_view src, std::span<const std::string_view> vars) {
  Parser p{src, vars};
  ExprPtr e = p.expression();
  if (!p.at_end()) p.fail("unexpected trailing input");
  return e;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_complex(Complex v) {
  const double re = v.real(), im = v.imag();
  auto imag_part = [](double m) {
    return m == 1.0 ? std::string("i") : fmt_double(m) + "*i";
  };
  if (im == 0.0) return re < 0.0 ? "(" + fmt_double(re) + ")" : fmt_double(re);
  if (re == 0.0) {
    if (im > 0.0) return imag_part(im);
    return "(-" + imag_part(-im) + ")";
  }
  std::string s = "(" + fmt_double(re);
  s += im > 0.0 ? "+" + imag_part(im) : "-" + imag_part(-im);
  return s + ")";
}

const char* func_name(Func f) {
  switch (f) {
    case Func::Exp: return "exp";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
  }
  return "?";
}

}  // namespace

std::string to_string(const ExprPtr& e, std::span<const std::string_view> vars) {
  switch (e->kind) {
    case ExprKind::Number: return fmt_complex(e->value);
    case ExprKind::Var: return std::string(vars[static_cast<size_t>(e->var)]);
    case ExprKind::Neg:
      // The inner parentheses keep a following '^' from re-binding: the
      // grammar applies unary minus at atom level, below Pow.
      return "(-(" + to_string(e->a, vars) + "))";
    case ExprKind::Add: return "(" + to_string(e->a, vars) + "+" + to_string(e->b, vars) + ")";
    case ExprKind::Sub: return "(" + to_string(e->a, vars) + "-" + to_string(e->b, vars) + ")";
    case ExprKind::Mul: return "(" + to_string(e->a, vars) + "*" + to_string(e->b, vars) + ")";
    case ExprKind::Div: return "(" + to_string(e->a, vars) + "/" + to_string(e->b, vars) + ")";
    case ExprKind::Pow: {
      const bool bare = e->a->kind == ExprKind::Var || e->a->kind == ExprKind::Call;
      const std::string base =
          bare ? to_string(e->a, vars) : "(" + to_string(e->a, vars) + ")";
      return base + "^" + std::to_string(e->expo);
    }
    case ExprKind::Call:
      return std::string(func_name(e->func)) + "(" + to_string(e->a, vars) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

Complex eval(const ExprPtr& e, std::span<const Complex> args) {
  switch (e->kind) {
    case ExprKind::Number: return e->value;
    case ExprKind::Var: return args[static_cast<size_t>(e->var)];
    case ExprKind::Neg: return -eval(e->a, args);
    case ExprKind::Add: return eval(e->a, args) + eval(e->b, args);
    case ExprKind::Sub: return eval(e->a, args) - eval(e->b, args);
    case ExprKind::Mul: return eval(e->a, args) * eval(e->b, args);
    case ExprKind::Div: {
      const Complex den = eval(e->b, args);
      if (std::abs(den) < kPoleEps) throw PoleOrDivisionByZero("division by zero");
      return eval(e->a, args) / den;
    }
    case ExprKind::Pow: return cpow_int(eval(e->a, args), e->expo);
    case ExprKind::Call: {
      const Complex z = eval(e->a, args);
      switch (e->func) {
        case Func::Exp: return std::exp(z);
        case Func::Sin: return std::sin(z);
        case Func::Cos: return std::cos(z);
      }
      return {};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Ordering / equality
// ---------------------------------------------------------------------------

namespace {

int kind_rank(ExprKind k) {
  switch (k) {
    case ExprKind::Number: return 0;
    case ExprKind::Var: return 1;
    case ExprKind::Call: return 2;
    case ExprKind::Pow: return 3;
    case ExprKind::Mul: return 4;
    case ExprKind::Div: return 5;
    case ExprKind::Add: return 6;
    case ExprKind::Neg: return 7;
    case ExprKind::Sub: return 8;
  }
  return 9;
}

int cmp_double(double x, double y) { return x < y ? -1 : (x > y ? 1 : 0); }

}  // namespace

int compare(const ExprPtr& x, const ExprPtr& y) {
  if (x.get() == y.get()) return 0;
  if (int d = kind_rank(x->kind) - kind_rank(y->kind); d != 0) return d < 0 ? -1 : 1;
  switch (x->kind) {
    case ExprKind::Number:
      if (int d = cmp_double(x->value.real(), y->value.real()); d != 0) return d;
      return cmp_double(x->value.imag(), y->value.imag());
    case ExprKind::Var: return x->var - y->var;
    case ExprKind::Call:
      if (int d = static_cast<int>(x->func) - static_cast<int>(y->func); d != 0) return d;
      return compare(x->a, y->a);
    case ExprKind::Pow:
      if (int d = compare(x->a, y->a); d != 0) return d;
      return x->expo - y->expo;
    case ExprKind::Neg: return compare(x->a, y->a);
    default:
      if (int d = compare(x->a, y->a); d != 0) return d;
      return compare(x->b, y->b);
  }
}

bool equal(const ExprPtr& x, const ExprPtr& y) { return compare(x, y) == 0; }

bool depends_on(const ExprPtr& e, int var) {
  switch (e->kind) {
    case ExprKind::Number: return false;
    case ExprKind::Var: return e->var == var;
    case ExprKind::Neg:
    case ExprKind::Pow:
    case ExprKind::Call: return depends_on(e->a, var);
    default: return depends_on(e->a, var) || depends_on(e->b, var);
  }
}

ExprPtr remap_vars(const ExprPtr& e, std::span<const int> map) {
  switch (e->kind) {
    case ExprKind::Number: return e;
    case ExprKind::Var: return variable(map[static_cast<size_t>(e->var)]);
    case ExprKind::Neg: return neg(remap_vars(e->a, map));
    case ExprKind::Pow: return pow(remap_vars(e->a, map), e->expo);
    case ExprKind::Call: return call(e->func, remap_vars(e->a, map));
    case ExprKind::Add: return add(remap_vars(e->a, map), remap_vars(e->b, map));
    case ExprKind::Sub: return sub(remap_vars(e->a, map), remap_vars(e->b, map));
    case ExprKind::Mul: return mul(remap_vars(e->a, map), remap_vars(e->b, map));
    case ExprKind::Div: return div(remap_vars(e->a, map), remap_vars(e->b, map));
  }
  return e;
}

// ---------------------------------------------------------------------------
// Simplification
// ---------------------------------------------------------------------------

namespace {

struct CanonicalLess {
  bool operator()(const ExprPtr& x, const ExprPtr& y) const { return compare(x, y) < 0; }
};

void flatten_mul(const ExprPtr& e, std::vector<ExprPtr>& out) {
  if (e->kind == ExprKind::Mul) {
    flatten_mul(e->a, out);
    flatten_mul(e->b, out);
  } else {
    out.push_back(e);
  }
}

// Product of already-simplified factors: numeric coefficient extracted,
// repeated factors merged into powers, deterministic factor order.
ExprPtr rebuild_product(std::vector<ExprPtr> factors) {
  Complex coeff{1.0};
  std::map<ExprPtr, int, CanonicalLess> powers;
  for (auto& f : factors) {
    if (f->kind == ExprKind::Number) {
      coeff *= f->value;
    } else if (f->kind == ExprKind::Pow) {
      powers[f->a] += f->expo;
    } else {
      powers[f] += 1;
    }
  }
  if (coeff == Complex{}) return number({});
  std::vector<ExprPtr> parts;
  for (auto& [base, n] : powers) {
    if (n == 0) continue;
    parts.push_back(n == 1 ? base : pow(base, n));
  }
  if (parts.empty()) return number(coeff);
  ExprPtr prod = parts[0];
  for (size_t k = 1; k < parts.size(); ++k) prod = mul(prod, parts[k]);
  if (coeff != Complex{1.0}) prod = mul(number(coeff), prod);
  return prod;
}

// Splits a simplified term into (coefficient, canonical factor part).
std::pair<Complex, ExprPtr> split_coefficient(const ExprPtr& term) {
  if (term->kind == ExprKind::Number) return {term->value, nullptr};
  if (term->kind == ExprKind::Mul) {
    std::vector<ExprPtr> factors;
    flatten_mul(term, factors);
    Complex coeff{1.0};
    std::vector<ExprPtr> rest;
    for (auto& f : factors) {
      if (f->kind == ExprKind::Number) coeff *= f->value;
      else rest.push_back(f);
    }
    if (rest.empty()) return {coeff, nullptr};
    ExprPtr prod = rest[0];
    for (size_t k = 1; k < rest.size(); ++k) prod = mul(prod, rest[k]);
    return {coeff, prod};
  }
  return {Complex{1.0}, term};
}

void collect_terms(const ExprPtr& e, Complex sign, Complex& constant,
                   std::map<ExprPtr, Complex, CanonicalLess>& terms) {
  switch (e->kind) {
    case ExprKind::Add:
      collect_terms(e->a, sign, constant, terms);
      collect_terms(e->b, sign, constant, terms);
      return;
    case ExprKind::Sub:
      collect_terms(e->a, sign, constant, terms);
      collect_terms(e->b, -sign, constant, terms);
      return;
    case ExprKind::Neg:
      collect_terms(e->a, -sign, constant, terms);
      return;
    default: {
      auto [coeff, part] = split_coefficient(e);
      if (part == nullptr) constant += sign * coeff;
      else terms[part] += sign * coeff;
      return;
    }
  }
}

ExprPtr rebuild_sum(const ExprPtr& e) {
  Complex constant{};
  std::map<ExprPtr, Complex, CanonicalLess> terms;
  collect_terms(e, Complex{1.0}, constant, terms);
  std::vector<ExprPtr> parts;
  if (constant != Complex{}) parts.push_back(number(constant));
  for (auto& [part, coeff] : terms) {
    if (coeff == Complex{}) continue;
    parts.push_back(coeff == Complex{1.0} ? part : mul(number(coeff), part));
  }
  if (parts.empty()) return number({});
  ExprPtr sum = parts[0];
  for (size_t k = 1; k < parts.size(); ++k) sum = add(sum, parts[k]);
  return sum;
}

}  // namespace

ExprPtr simplify(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Number:
    case ExprKind::Var: return e;
    case ExprKind::Neg: return rebuild_sum(neg(simplify(e->a)));
    case ExprKind::Add:
    case ExprKind::Sub: {
      ExprPtr sa = simplify(e->a), sb = simplify(e->b);
      ExprPtr joined = e->kind == ExprKind::Add ? add(sa, sb) : sub(sa, sb);
      return rebuild_sum(joined);
    }
    case ExprKind::Mul: {
      std::vector<ExprPtr> factors;
      flatten_mul(e, factors);
      std::vector<ExprPtr> simplified;
      simplified.reserve(factors.size());
      for (auto& f : factors) simplified.push_back(simplify(f));
      return rebuild_product(std::move(simplified));
    }
    case ExprKind::Div: {
      ExprPtr sa = simplify(e->a), sb = simplify(e->b);
      if (sb->kind == ExprKind::Number && std::abs(sb->value) >= 1e-300) {
        return rebuild_product({sa, number(Complex{1.0} / sb->value)});
      }
      if (sa->kind == ExprKind::Number && sa->value == Complex{}) return number({});
      return div(sa, sb);
    }
    case ExprKind::Pow: {
      ExprPtr sa = simplify(e->a);
      if (e->expo == 0) return number(Complex{1.0});
      if (e->expo == 1) return sa;
      if (sa->kind == ExprKind::Pow) return pow(sa->a, sa->expo * e->expo);
      return pow(sa, e->expo);
    }
    case ExprKind::Call: return call(e->func, simplify(e->a));
  }
  return e;
}

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

namespace {

ExprPtr diff(const ExprPtr& e, int var) {
  switch (e->kind) {
    case ExprKind::Number: return number({});
    case ExprKind::Var: return number(e->var == var ? Complex{1.0} : Complex{});
    case ExprKind::Neg: return neg(diff(e->a, var));
    case ExprKind::Add: return add(diff(e->a, var), diff(e->b, var));
    case ExprKind::Sub: return sub(diff(e->a, var), diff(e->b, var));
    case ExprKind::Mul:
      return add(mul(diff(e->a, var), e->b), mul(e->a, diff(e->b, var)));
    case ExprKind::Div:
      return div(sub(mul(diff(e->a, var), e->b), mul(e->a, diff(e->b, var))),
                 pow(e->b, 2));
    case ExprKind::Pow:
      if (e->expo == 0) return number({});
      return mul(mul(number(Complex(e->expo, 0.0)), pow(e->a, e->expo - 1)),
                 diff(e->a, var));
    case ExprKind::Call: {
      ExprPtr inner = diff(e->a, var);
      switch (e->func) {
        case Func::Exp: return mul(call(Func::Exp, e->a), inner);
        case Func::Sin: return mul(call(Func::Cos, e->a), inner);
        case Func::Cos: return neg(mul(call(Func::Sin, e->a), inner));
      }
      return number({});
    }
  }
  return number({});
}

}  // namespace

ExprPtr derivative(const ExprPtr& e, int var) { return simplify(diff(simplify(e), var)); }

}  // namespace biquat
