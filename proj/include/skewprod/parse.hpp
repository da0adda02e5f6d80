#ifndef SKEWPROD_PARSE_HPP
#define SKEWPROD_PARSE_HPP

// Recursive-descent parser for polynomial expressions and plane maps.
//
//   expr     := term (('+' | '-') term)*
//   term     := unary (('*' | '/') unary)*        division by constants only
//   unary    := ('+' | '-') unary | power
//   power    := primary ('^' exponent)?
//   exponent := integer ('^' exponent)?            right-associative
//   primary  := scalar | variable | 'i' | '(' expr ')'
//   map      := '(' expr ',' expr ')'
//
// Scalar literals: 12, 3/4, 0.25, 1e-3, with an optional `i` suffix
// (whitespace allowed before it). Variables come in families whose first
// member is the base variable: (z, w), (u, v), (a, x).

#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "skewprod/poly.hpp"

namespace skewprod {

struct AstNode {
  enum class Kind { number, variable, imag_unit, add, sub, mul, div, neg, pow };

  Kind kind = Kind::number;
  std::string text;  // literal text or variable name
  std::size_t offset = 0;
  long exponent = 0;  // Kind::pow
  std::vector<AstNode> children;
};

inline const char* kind_name(AstNode::Kind k) {
  switch (k) {
    case AstNode::Kind::number: return "number";
    case AstNode::Kind::variable: return "variable";
    case AstNode::Kind::imag_unit: return "imag_unit";
    case AstNode::Kind::add: return "add";
    case AstNode::Kind::sub: return "sub";
    case AstNode::Kind::mul: return "mul";
    case AstNode::Kind::div: return "div";
    case AstNode::Kind::neg: return "neg";
    case AstNode::Kind::pow: return "pow";
  }
  return "?";
}

struct VarPair {
  char base = 'z';
  char fiber = 'w';
  friend bool operator==(const VarPair&, const VarPair&) = default;
};

struct ParseOptions {
  Backend backend = Backend::exact;
  unsigned precision_bits = kDefaultPrecisionBits;
  /// Force a variable family; otherwise inferred from the identifiers used.
  std::optional<VarPair> vars{};
  long max_exponent = 1 << 16;
};

namespace detail {

inline std::optional<VarPair> family_of(char v) {
  switch (v) {
    case 'z':
    case 'w': return VarPair{'z', 'w'};
    case 'u':
    case 'v': return VarPair{'u', 'v'};
    case 'a':
    case 'x': return VarPair{'a', 'x'};
    default: return std::nullopt;
  }
}

class ExprParser {
 public:
  ExprParser(std::string_view src, const ParseOptions& opts) : src_(src), opts_(opts) {}

  AstNode parse_expression() {
    AstNode n = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    return n;
  }

  std::pair<AstNode, AstNode> parse_map() {
    skip_ws();
    expect('(');
    AstNode a = expr();
    skip_ws();
    expect(',');
    AstNode b = expr();
    skip_ws();
    expect(')');
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return {std::move(a), std::move(b)};
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError("syntax error: " + what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const { throw ParseError(what, at); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' but input ended");
    if (src_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  static AstNode binary(AstNode::Kind k, AstNode lhs, AstNode rhs, std::size_t at) {
    AstNode n;
    n.kind = k;
    n.offset = at;
    n.children.push_back(std::move(lhs));
    n.children.push_back(std::move(rhs));
    return n;
  }

  AstNode expr() {
    AstNode lhs = term();
    while (true) {
      skip_ws();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
        const std::size_t at = pos_;
        const bool plus = src_[pos_++] == '+';
        lhs = binary(plus ? AstNode::Kind::add : AstNode::Kind::sub, std::move(lhs), term(), at);
      } else {
        return lhs;
      }
    }
  }

  AstNode term() {
    AstNode lhs = unary();
    while (true) {
      skip_ws();
      if (pos_ < src_.size() && (src_[pos_] == '*' || src_[pos_] == '/')) {
        const std::size_t at = pos_;
        const bool times = src_[pos_++] == '*';
        lhs = binary(times ? AstNode::Kind::mul : AstNode::Kind::div, std::move(lhs), unary(), at);
      } else {
        return lhs;
      }
    }
  }

  AstNode unary() {
    skip_ws();
    if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
      const std::size_t at = pos_;
      const bool minus = src_[pos_++] == '-';
      AstNode inner = unary();
      if (!minus) return inner;
      AstNode n;
      n.kind = AstNode::Kind::neg;
      n.offset = at;
      n.children.push_back(std::move(inner));
      return n;
    }
    return power();
  }

  AstNode power() {
    AstNode base = primary();
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '^') {
      const std::size_t at = pos_++;
      AstNode n;
      n.kind = AstNode::Kind::pow;
      n.offset = at;
      n.exponent = exponent();
      n.children.push_back(std::move(base));
      return n;
    }
    return base;
  }

  long exponent() {
    skip_ws();
    if (pos_ >= src_.size()) fail("missing exponent");
    const char c = src_[pos_];
    if (c == '-') fail_at("exponent < 0 is not allowed", pos_);
    if (!std::isdigit(static_cast<unsigned char>(c))) fail("exponent must be an integer literal");
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E')) {
      fail_at("non-integer exponent", start);
    }
    const std::string digits(src_.substr(start, pos_ - start));
    if (digits.size() > 9) fail_at("exponent too large", start);
    long e = std::stol(digits);
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '^') {
      ++pos_;
      const long tower = exponent();
      long r = 1;
      for (long k = 0; k < tower; ++k) {
        if (e != 0 && r > opts_.max_exponent / std::max(1L, e)) fail_at("exponent too large", start);
        r *= e;
      }
      e = r;
    }
    if (e > opts_.max_exponent) fail_at("exponent too large", start);
    return e;
  }

  AstNode primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      AstNode inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
      std::string name(src_.substr(start, pos_ - start));
      AstNode n;
      n.offset = start;
      n.text = name;
      if (name == "i") {
        n.kind = AstNode::Kind::imag_unit;
        return n;
      }
      if (name.size() != 1 || !family_of(name[0])) fail_at("unknown variable '" + name + "'", start);
      n.kind = AstNode::Kind::variable;
      return n;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  AstNode number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t s = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      return pos_ > s;
    };
    bool any = digits();
    bool decimal = false;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      decimal = true;
      any = digits() || any;
    }
    if (!any) fail_at("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (!digits()) pos_ = save;
      else decimal = true;
    }
    if (!decimal && pos_ + 1 < src_.size() && src_[pos_] == '/' &&
        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
      ++pos_;
      digits();
    }
    AstNode n;
    n.kind = AstNode::Kind::number;
    n.offset = start;
    n.text = std::string(src_.substr(start, pos_ - start));
    // optional imaginary suffix, whitespace permitted: `3/4i`, `3/4 i`
    std::size_t look = pos_;
    while (look < src_.size() && std::isspace(static_cast<unsigned char>(src_[look]))) ++look;
    if (look < src_.size() && src_[look] == 'i' &&
        (look + 1 >= src_.size() || !(std::isalnum(static_cast<unsigned char>(src_[look + 1])) || src_[look + 1] == '_'))) {
      pos_ = look + 1;
      n.text += "i";
    }
    return n;
  }

  std::string_view src_;
  const ParseOptions& opts_;
  std::size_t pos_ = 0;
};

/// Exact value of a decimal / rational literal (without any `i` suffix).
inline mpq_class literal_value(const std::string& text, std::size_t offset) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    mpq_class q{mpz_class(text.substr(0, slash), 10), mpz_class(text.substr(slash + 1), 10)};
    if (sgn(q.get_den()) == 0) throw ParseError("division by zero", offset);
    q.canonicalize();
    return q;
  }
  std::string mant = text;
  long exp10 = 0;
  if (auto e = mant.find_first_of("eE"); e != std::string::npos) {
    exp10 = std::stol(mant.substr(e + 1));
    mant = mant.substr(0, e);
  }
  if (auto dot = mant.find('.'); dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  if (mant.empty()) mant = "0";
  mpz_class num(mant, 10), ten(10), scale;
  mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(std::labs(exp10)));
  mpq_class q = exp10 >= 0 ? mpq_class(num * scale) : mpq_class(num, scale);
  q.canonicalize();
  return q;
}

inline void collect_vars(const AstNode& n, std::vector<std::pair<char, std::size_t>>& out) {
  if (n.kind == AstNode::Kind::variable) out.emplace_back(n.text[0], n.offset);
  for (const auto& c : n.children) collect_vars(c, out);
}

inline VarPair resolve_family(const std::vector<const AstNode*>& roots, const ParseOptions& opts) {
  std::vector<std::pair<char, std::size_t>> vars;
  for (const auto* r : roots) collect_vars(*r, vars);
  std::optional<VarPair> fam = opts.vars;
  for (const auto& [v, at] : vars) {
    const VarPair f = *family_of(v);
    if (!fam) {
      fam = f;
    } else if (!(*fam == f)) {
      throw ParseError(opts.vars ? "unknown variable '" + std::string(1, v) + "'" : "mixed variable families", at);
    }
  }
  return fam.value_or(VarPair{});
}

inline BiPoly lower(const AstNode& n, const VarPair& vp) {
  using K = AstNode::Kind;
  switch (n.kind) {
    case K::number: {
      std::string t = n.text;
      const bool imag = !t.empty() && t.back() == 'i';
      if (imag) t.pop_back();
      while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
      const mpq_class q = literal_value(t, n.offset);
      return BiPoly::constant(imag ? Scalar(mpq_class(0), q) : Scalar(q), vp.base, vp.fiber);
    }
    case K::imag_unit: return BiPoly::constant(Scalar::imag_unit(), vp.base, vp.fiber);
    case K::variable:
      return n.text[0] == vp.base ? BiPoly::base_var(vp.base, vp.fiber) : BiPoly::fiber_var(vp.base, vp.fiber);
    case K::neg: return -lower(n.children[0], vp);
    case K::add: return lower(n.children[0], vp) + lower(n.children[1], vp);
    case K::sub: return lower(n.children[0], vp) - lower(n.children[1], vp);
    case K::mul: return lower(n.children[0], vp) * lower(n.children[1], vp);
    case K::div: {
      BiPoly den = lower(n.children[1], vp);
      if (den.total_degree() > 0) throw ParseError("division by non-constant", n.offset);
      if (den.is_zero()) throw ParseError("division by zero", n.offset);
      return lower(n.children[0], vp) * (Scalar(1) / den.coeff(0, 0));
    }
    case K::pow: return pow(lower(n.children[0], vp), static_cast<unsigned>(n.exponent));
  }
  throw Error("unreachable AST node");
}

inline bool uses_var(const AstNode& n, char v) {
  if (n.kind == AstNode::Kind::variable && n.text[0] == v) return true;
  for (const auto& c : n.children) {
    if (uses_var(c, v)) return true;
  }
  return false;
}

}  // namespace detail

struct ParsedPoly {
  BiPoly poly;
  VarPair vars;
  bool uses_base = false;
  bool uses_fiber = false;
  AstNode ast;

  bool is_univariate() const { return !(uses_base && uses_fiber); }

  /// The polynomial as univariate in whichever variable it uses (fiber wins
  /// when neither is used, matching `w^2 - 2` style input).
  UniPoly as_uni() const {
    if (uses_base && uses_fiber) throw Error("polynomial is bivariate");
    if (uses_base) return poly.coeff_fiber(0);
    std::vector<Scalar> v;
    for (int k = 0; k <= poly.deg_fiber(); ++k) v.push_back(poly.coeff(0, k));
    return UniPoly(std::move(v), vars.fiber);
  }

  std::variant<UniPoly, BiPoly> value() const {
    if (is_univariate()) return as_uni();
    return poly;
  }
};

struct ParsedMap {
  PlaneMap map;
  VarPair vars;
  AstNode first_ast;
  AstNode second_ast;
};

namespace detail {

inline BiPoly finish(BiPoly p, const ParseOptions& opts) {
  return opts.backend == Backend::floating ? p.to_float(opts.precision_bits) : p;
}

}  // namespace detail

inline ParsedPoly parse_poly(std::string_view text, const ParseOptions& opts = {}) {
  detail::ExprParser parser(text, opts);
  ParsedPoly out;
  out.ast = parser.parse_expression();
  out.vars = detail::resolve_family({&out.ast}, opts);
  out.poly = detail::finish(detail::lower(out.ast, out.vars), opts);
  out.uses_base = detail::uses_var(out.ast, out.vars.base);
  out.uses_fiber = detail::uses_var(out.ast, out.vars.fiber);
  return out;
}

inline ParsedMap parse_map(std::string_view text, const ParseOptions& opts = {}) {
  detail::ExprParser parser(text, opts);
  auto [a, b] = parser.parse_map();
  ParsedMap out;
  out.vars = detail::resolve_family({&a, &b}, opts);
  out.map.first = detail::finish(detail::lower(a, out.vars), opts);
  out.map.second = detail::finish(detail::lower(b, out.vars), opts);
  out.first_ast = std::move(a);
  out.second_ast = std::move(b);
  return out;
}

/// Constant expression such as `1/2 - 3/4 i` or `0.25`.
inline Scalar parse_scalar(std::string_view text, const ParseOptions& opts = {}) {
  ParsedPoly p = parse_poly(text, opts);
  if (p.uses_base || p.uses_fiber) throw ParseError("expected a constant", 0);
  return p.poly.coeff(0, 0);
}

}  // namespace skewprod

#endif  // SKEWPROD_PARSE_HPP
