#include "kstar/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace kstar {

ParseError::ParseError(const std::string& msg, std::size_t pos, const std::string& exp)
    : std::runtime_error(msg + " at position " + std::to_string(pos) + (exp.empty() ? "" : " (expected " + exp + ")")),
      position(pos),
      expected(exp) {}

std::string variable_name(int dim, int index) {
  if (dim <= 3) return std::string(1, "xyz"[index]);
  return "x" + std::to_string(index + 1);
}

std::string format_rational(const Rational& r) { return r.get_str(); }

namespace {

// Polynomial with an open-ended variable set, used while the dimension is
// still unknown. Keys map variable index -> exponent.
using RawMono = std::map<int, int>;
using RawPoly = std::map<RawMono, Rational>;

void raw_add(RawPoly& p, const RawMono& m, const Rational& c) {
  if (c == 0) return;
  auto [it, ins] = p.try_emplace(m, 0);
  it->second += c;
  if (it->second == 0) p.erase(it);
}

RawPoly raw_mul(const RawPoly& a, const RawPoly& b) {
  RawPoly r;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      RawMono m = ma;
      for (const auto& [v, e] : mb) m[v] += e;
      raw_add(r, m, ca * cb);
    }
  }
  return r;
}

RawPoly raw_const(const Rational& c) {
  RawPoly p;
  raw_add(p, {}, c);
  return p;
}

int raw_max_var(const RawPoly& p) {
  int m = -1;
  for (const auto& [mono, c] : p) {
    if (!mono.empty()) m = std::max(m, mono.rbegin()->first);
  }
  return m;
}

Polynomial raw_to_poly(const RawPoly& p, int dim) {
  Polynomial r(dim);
  for (const auto& [mono, c] : p) {
    Exponents e(dim, 0);
    for (const auto& [v, k] : mono) e[v] = k;
    r.add_term(e, c);
  }
  return r;
}

class Parser {
 public:
  explicit Parser(std::string_view t) : text_(t) {}

  std::size_t pos() const { return pos_; }

  void skip_ws() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const std::string& what) {
    if (!accept(c)) fail("unexpected " + describe_here(), what);
  }

  [[noreturn]] void fail(const std::string& msg, const std::string& expected = {}) {
    throw ParseError(msg, pos_, expected);
  }

  std::string describe_here() {
    skip_ws();
    if (pos_ >= text_.size()) return "end of input";
    return std::string("'") + text_[pos_] + "'";
  }

  bool peek_digit() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c));
  }

  bool peek_ident() {
    const char c = peek();
    return std::isalpha(static_cast<unsigned char>(c));
  }

  std::string_view identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("unexpected " + describe_here(), "identifier");
    return text_.substr(start, pos_ - start);
  }

  // Peeks at an identifier without consuming it.
  std::string_view peek_identifier() {
    const std::size_t save = pos_;
    skip_ws();
    std::string_view id;
    if (peek_ident()) id = identifier();
    pos_ = save;
    return id;
  }

  long long integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("unexpected " + describe_here(), "integer");
    const std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 9) {
      pos_ = start;
      fail("integer too large", "integer below 10^9");
    }
    return std::stoll(digits);
  }

  Rational rational() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("unexpected " + describe_here(), "number");
    std::string num(text_.substr(start, pos_ - start));
    // A '/' directly followed by a digit is a fraction; "d/dx" never follows a number.
    if (pos_ + 1 < text_.size() && text_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      const std::size_t ds = ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string den(text_.substr(ds, pos_ - ds));
      if (std::all_of(den.begin(), den.end(), [](char c) { return c == '0'; })) {
        pos_ = ds;
        fail("zero denominator");
      }
      Rational r(num + "/" + den);
      r.canonicalize();
      return r;
    }
    return Rational(num);
  }

  // Variable index from an identifier: x, y, z, or x<k> / x_<k> (1-based).
  int variable_index(std::string_view id, std::size_t at) {
    if (id == "x") return 0;
    if (id == "y") return 1;
    if (id == "z") return 2;
    if (id.size() >= 2 && id[0] == 'x') {
      std::string_view rest = id.substr(1);
      if (!rest.empty() && rest[0] == '_') rest = rest.substr(1);
      if (!rest.empty() && std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
          rest.size() < 6) {
        const int k = std::stoi(std::string(rest));
        if (k >= 1) return k - 1;
      }
    }
    throw ParseError("unknown variable '" + std::string(id) + "'", at, "x, y, z or x1, x2, ...");
  }

  int exponent_suffix() {
    if (peek() == '^') {
      const std::size_t save = pos_;
      ++pos_;
      if (peek_digit()) return static_cast<int>(integer());
      pos_ = save;
    }
    return 1;
  }

  // poly := ['+'|'-'] term (('+'|'-') term)*
  RawPoly poly() {
    RawPoly acc;
    bool first = true;
    while (true) {
      Rational sign = 1;
      if (accept('-')) {
        sign = -1;
      } else if (!accept('+') && !first) {
        break;
      }
      first = false;
      RawPoly t = poly_term();
      for (const auto& [m, c] : t) raw_add(acc, m, sign * c);
      const char c = peek();
      if (c != '+' && c != '-') break;
    }
    return acc;
  }

  // term := factor ('*' factor)*
  RawPoly poly_term() {
    RawPoly t = factor();
    while (true) {
      const std::size_t save = pos_;
      if (!accept('*')) break;
      if (!starts_factor()) {
        pos_ = save;
        break;
      }
      t = raw_mul(t, factor());
    }
    return t;
  }

  bool starts_factor() {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '(') return true;
    if (!std::isalpha(static_cast<unsigned char>(c))) return false;
    const auto id = peek_identifier();
    return id.empty() || id[0] != 'd';
  }

  // factor := number | variable ['^' int] | '(' poly ')' ['^' int]
  RawPoly factor() {
    if (peek_digit()) return raw_const(rational());
    if (accept('(')) {
      RawPoly inner = poly();
      expect(')', "')'");
      const int e = exponent_suffix();
      RawPoly r = raw_const(1);
      for (int i = 0; i < e; ++i) r = raw_mul(r, inner);
      return r;
    }
    if (peek_ident()) {
      const std::size_t at = pos_;
      const auto id = identifier();
      const int v = variable_index(id, at);
      const int e = exponent_suffix();
      RawPoly r;
      raw_add(r, e == 0 ? RawMono{} : RawMono{{v, e}}, 1);
      return r;
    }
    fail("unexpected " + describe_here(), "number, variable or '('");
  }

  // "d/dx" for multivectors.
  int wedge_factor() {
    const std::size_t at = pos_;
    const auto d = identifier();
    if (d != "d") throw ParseError("expected a coordinate vector", at, "d/dx");
    expect('/', "'/' in d/dx");
    const std::size_t vat = pos_;
    const auto id = identifier();
    if (id.size() < 2 || id[0] != 'd') throw ParseError("expected d<variable>", vat, "d/dx");
    return variable_index(id.substr(1), vat);
  }

  bool peek_wedge() { return peek_identifier() == "d"; }

  // "dx^2" for operator slots.
  std::pair<int, int> slot_factor() {
    const std::size_t at = pos_;
    const auto id = identifier();
    if (id.size() < 2 || id[0] != 'd') throw ParseError("expected a derivative", at, "dx, dy^2, ...");
    const int v = variable_index(id.substr(1), at);
    return {v, exponent_suffix()};
  }

  // Header items "dim N", "degree K", "arity M", each ended by ';' or newline.
  std::map<std::string, int> header(const std::vector<std::string>& allowed) {
    std::map<std::string, int> h;
    while (true) {
      const auto id = peek_identifier();
      if (std::find(allowed.begin(), allowed.end(), id) == allowed.end()) break;
      identifier();
      const std::size_t at = pos_;
      const long long v = integer();
      if (h.count(std::string(id))) throw ParseError("duplicate header '" + std::string(id) + "'", at);
      h[std::string(id)] = static_cast<int>(v);
      accept(';');
    }
    return h;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

struct RawMvTerm {
  RawPoly coef;
  std::vector<int> wedge;
};

struct RawOpTerm {
  RawPoly coef;
  std::vector<std::map<int, int>> slots;
  std::size_t at;
};

std::string format_monomial(const Exponents& e, int dim) {
  std::string s;
  for (int i = 0; i < static_cast<int>(e.size()); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += variable_name(dim, i);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

// Terms sorted by descending total degree, then descending exponents.
std::vector<std::pair<Exponents, Rational>> ordered_terms(const Polynomial& p) {
  std::vector<std::pair<Exponents, Rational>> v(p.terms().begin(), p.terms().end());
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    const int da = total_order(a.first), db = total_order(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  return v;
}

// One signed term "c*m" with its sign split off; `force_coef` keeps a unit
// coefficient visible (used when something follows the term).
std::pair<bool, std::string> format_term(const Exponents& e, const Rational& c, int dim, bool force_coef) {
  const bool neg = c < 0;
  const Rational a = neg ? Rational(-c) : c;
  const std::string mono = format_monomial(e, dim);
  std::string s;
  if (mono.empty()) {
    s = format_rational(a);
  } else if (a == 1 && !force_coef) {
    s = mono;
  } else {
    s = format_rational(a) + "*" + mono;
  }
  return {neg, s};
}

std::string join_signed(const std::vector<std::pair<bool, std::string>>& parts) {
  if (parts.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i == 0) {
      s += parts[i].first ? "-" + parts[i].second : parts[i].second;
    } else {
      s += parts[i].first ? " - " : " + ";
      s += parts[i].second;
    }
  }
  return s;
}

std::vector<RawMvTerm> parse_mv_terms(Parser& ps) {
  std::vector<RawMvTerm> out;
  if (ps.at_end()) ps.fail("empty input", "multivector terms");
  bool first = true;
  while (!ps.at_end()) {
    Rational sign = 1;
    if (ps.accept('-')) {
      sign = -1;
    } else if (!ps.accept('+') && !first) {
      ps.fail("unexpected " + ps.describe_here(), "'+' or '-'");
    }
    first = false;
    RawMvTerm t{raw_const(sign), {}};
    bool have_wedge = false;
    while (true) {
      if (ps.peek_wedge()) {
        if (have_wedge) ps.fail("a term may contain only one wedge product");
        have_wedge = true;
        t.wedge.push_back(ps.wedge_factor());
        while (ps.peek() == '^') {
          ps.accept('^');
          t.wedge.push_back(ps.wedge_factor());
        }
      } else {
        t.coef = raw_mul(t.coef, ps.factor());
      }
      if (!ps.accept('*')) break;
    }
    out.push_back(std::move(t));
  }
  return out;
}

MultivectorField build_multivector(Parser& ps, const std::vector<RawMvTerm>& terms, std::optional<int> dim,
                                   std::optional<int> degree) {
  int maxv = -1;
  std::optional<int> deg = degree;
  for (const auto& t : terms) {
    maxv = std::max(maxv, raw_max_var(t.coef));
    for (int v : t.wedge) maxv = std::max(maxv, v);
    if (t.coef.empty()) continue;
    const int k = static_cast<int>(t.wedge.size());
    if (deg && *deg != k) ps.fail("terms of different degree (" + std::to_string(*deg) + " and " + std::to_string(k) + ")");
    deg = k;
  }
  const int d = dim ? *dim : std::max(1, maxv + 1);
  if (maxv >= d) ps.fail("variable index " + std::to_string(maxv + 1) + " exceeds dimension " + std::to_string(d));
  MultivectorField m(d, deg.value_or(0));
  for (const auto& t : terms) {
    if (t.coef.empty()) continue;
    m.add(t.wedge, raw_to_poly(t.coef, d));
  }
  return m;
}

MultivectorField parse_mv_impl(std::string_view text, std::optional<int> dim) {
  Parser ps(text);
  const std::size_t hat = ps.pos();
  auto h = ps.header({"dim", "degree"});
  std::optional<int> hdim, hdeg;
  if (h.count("dim")) {
    hdim = h["dim"];
    if (*hdim < 1) throw ParseError("dimension must be positive", hat);
    if (dim && *dim != *hdim) throw ParseError("header dimension disagrees with the expected dimension " + std::to_string(*dim), hat);
  }
  if (h.count("degree")) hdeg = h["degree"];
  const auto terms = parse_mv_terms(ps);
  return build_multivector(ps, terms, hdim ? hdim : dim, hdeg);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  Parser ps(text);
  Rational sign = 1;
  if (ps.accept('-')) sign = -1;
  Rational r = sign * ps.rational();
  if (!ps.at_end()) ps.fail("trailing input", "end of rational");
  return r;
}

std::string format_polynomial(const Polynomial& p) {
  std::vector<std::pair<bool, std::string>> parts;
  for (const auto& [e, c] : ordered_terms(p)) parts.push_back(format_term(e, c, p.dim(), false));
  return join_signed(parts);
}

Polynomial parse_polynomial(std::string_view text, int dim) {
  if (dim < 1) throw std::invalid_argument("parse_polynomial: dimension must be positive");
  Parser ps(text);
  if (ps.at_end()) ps.fail("empty input", "polynomial");
  RawPoly r = ps.poly();
  if (!ps.at_end()) ps.fail("unexpected " + ps.describe_here(), "'+', '-', '*' or end of input");
  const int maxv = raw_max_var(r);
  if (maxv >= dim) {
    throw ParseError("variable index " + std::to_string(maxv + 1) + " exceeds dimension " + std::to_string(dim), 0);
  }
  return raw_to_poly(r, dim);
}

std::string format_multivector(const MultivectorField& m) {
  const int dim = m.dim();
  std::string head = "dim " + std::to_string(dim) + "; ";
  if (m.is_zero()) return head + "degree " + std::to_string(m.degree()) + "; 0";
  std::vector<std::pair<bool, std::string>> parts;
  for (const auto& [idx, coef] : m.components()) {
    std::string wedge;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i) wedge += " ^ ";
      wedge += "d/d" + variable_name(dim, idx[i]);
    }
    for (const auto& [e, c] : ordered_terms(coef)) {
      auto [neg, s] = format_term(e, c, dim, false);
      if (!wedge.empty()) s = (s == "1" ? "" : s + " * ") + wedge;
      parts.emplace_back(neg, s);
    }
  }
  return head + join_signed(parts);
}

MultivectorField parse_multivector(std::string_view text) { return parse_mv_impl(text, std::nullopt); }

MultivectorField parse_multivector(std::string_view text, int dim) { return parse_mv_impl(text, dim); }

namespace {

std::string format_slot(const Exponents& e, int dim) {
  std::string s;
  for (int i = 0; i < static_cast<int>(e.size()); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "d" + variable_name(dim, i);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

std::string format_key(const SlotKey& key, int dim) {
  std::string s = "[";
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) s += " | ";
    s += format_slot(key[i], dim);
  }
  return s + "]";
}

std::string format_operator_terms(const MultidiffOperator& op) {
  std::vector<std::pair<bool, std::string>> parts;
  for (const auto& [key, coef] : op.terms()) {
    const std::string k = format_key(key, op.dim());
    if (coef.size() == 1) {
      const auto& [e, c] = *coef.terms().begin();
      auto [neg, s] = format_term(e, c, op.dim(), false);
      parts.emplace_back(neg, (s == "1" ? "" : s + "*") + k);
    } else {
      parts.emplace_back(false, "(" + format_polynomial(coef) + ")*" + k);
    }
  }
  return join_signed(parts);
}

}  // namespace

std::string format_operator(const MultidiffOperator& op) {
  return "dim " + std::to_string(op.dim()) + "; arity " + std::to_string(op.arity()) + "; " +
         format_operator_terms(op);
}

MultidiffOperator parse_operator(std::string_view text) {
  Parser ps(text);
  const std::size_t hat = ps.pos();
  auto h = ps.header({"dim", "arity"});
  std::optional<int> hdim, harity;
  if (h.count("dim")) hdim = h["dim"];
  if (h.count("arity")) harity = h["arity"];
  if ((hdim && *hdim < 1) || (harity && *harity < 1)) throw ParseError("dim and arity must be positive", hat);

  std::vector<RawOpTerm> terms;
  if (ps.at_end()) ps.fail("empty input", "operator terms");
  bool first = true;
  int maxv = -1;
  while (!ps.at_end()) {
    Rational sign = 1;
    if (ps.accept('-')) {
      sign = -1;
    } else if (!ps.accept('+') && !first) {
      ps.fail("unexpected " + ps.describe_here(), "'+' or '-'");
    }
    first = false;
    RawOpTerm t{raw_const(sign), {}, ps.pos()};
    bool have_key = false;
    while (true) {
      if (ps.peek() == '[') {
        if (have_key) ps.fail("a term may contain only one slot list");
        have_key = true;
        ps.accept('[');
        do {
          std::map<int, int> slot;
          if (ps.peek_digit()) {
            const std::size_t at = ps.pos();
            if (ps.integer() != 1) throw ParseError("an empty slot is written '1'", at);
          } else {
            do {
              auto [v, e] = ps.slot_factor();
              slot[v] += e;
              maxv = std::max(maxv, v);
            } while (ps.accept('*'));
          }
          t.slots.push_back(slot);
        } while (ps.accept('|'));
        ps.expect(']', "']' or '|'");
      } else {
        t.coef = raw_mul(t.coef, ps.factor());
      }
      if (!ps.accept('*')) break;
    }
    if (!have_key) {
      // A bare "0" is the zero operator.
      if (t.coef.empty()) continue;
      throw ParseError("term without a slot list", t.at, "coef*[...]");
    }
    maxv = std::max(maxv, raw_max_var(t.coef));
    terms.push_back(std::move(t));
  }
  int arity = harity.value_or(terms.empty() ? 0 : static_cast<int>(terms.front().slots.size()));
  if (arity < 1) throw ParseError("arity of a zero operator needs an 'arity' header", hat);
  const int dim = hdim.value_or(std::max(1, maxv + 1));
  if (maxv >= dim) throw ParseError("variable index exceeds dimension " + std::to_string(dim), hat);
  MultidiffOperator op(dim, arity);
  for (const auto& t : terms) {
    if (static_cast<int>(t.slots.size()) != arity) {
      throw ParseError("term has " + std::to_string(t.slots.size()) + " slots, expected " + std::to_string(arity), t.at);
    }
    SlotKey key;
    for (const auto& s : t.slots) {
      Exponents e(dim, 0);
      for (const auto& [v, k] : s) e[v] = k;
      key.push_back(e);
    }
    op.add_term(key, raw_to_poly(t.coef, dim));
  }
  return op;
}

std::string format_series(const std::vector<Polynomial>& coeffs) {
  std::vector<std::pair<bool, std::string>> parts;
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    const Polynomial& p = coeffs[n];
    if (p.is_zero()) continue;
    const std::string h = n == 0 ? "" : (n == 1 ? "h" : "h^" + std::to_string(n));
    if (n == 0) {
      for (const auto& [e, c] : ordered_terms(p)) parts.push_back(format_term(e, c, p.dim(), false));
    } else if (p.size() == 1) {
      const auto& [e, c] = *p.terms().begin();
      auto [neg, s] = format_term(e, c, p.dim(), false);
      parts.emplace_back(neg, s + "*" + h);
    } else {
      parts.emplace_back(false, "(" + format_polynomial(p) + ")*" + h);
    }
  }
  return join_signed(parts);
}

std::string format_bidiff_series(const FormalBidiffSeries& b) {
  std::ostringstream os;
  os << "dim " << b.dim() << "; order " << b.order() << "\n";
  for (int n = 0; n <= b.order(); ++n) os << "h^" << n << ": " << format_operator_terms(b[n]) << "\n";
  return os.str();
}

}  // namespace kstar
