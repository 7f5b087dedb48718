#include "kstar/mzv.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <mutex>
#include <numeric>
#include <sstream>

namespace kstar {

int composition_weight(const Composition& s) { return std::accumulate(s.begin(), s.end(), 0); }

bool is_admissible(const Composition& s) {
  if (s.empty()) return true;
  if (std::any_of(s.begin(), s.end(), [](int p) { return p < 1; })) return false;
  return s.back() > 1;
}

std::map<Composition, long long> stuffle(const Composition& a, const Composition& b) {
  std::map<Composition, long long> out;
  if (a.empty()) {
    out[b] = 1;
    return out;
  }
  if (b.empty()) {
    out[a] = 1;
    return out;
  }
  // Recursion on the last (largest-index) letters.
  const Composition a1(a.begin(), a.end() - 1), b1(b.begin(), b.end() - 1);
  auto append = [&](const std::map<Composition, long long>& src, int letter) {
    for (const auto& [c0, m] : src) {
      Composition c = c0;
      c.push_back(letter);
      out[c] += m;
    }
  };
  append(stuffle(a1, b), a.back());
  append(stuffle(a, b1), b.back());
  append(stuffle(a1, b1), a.back() + b.back());
  return out;
}

WeightValue WeightValue::rational(const Rational& r) {
  WeightValue w;
  w.add({}, r);
  return w;
}

WeightValue WeightValue::from_ipi_basis(const std::map<Composition, Rational>& q) {
  WeightValue w;
  for (const auto& [s, c] : q) {
    const int wt = composition_weight(s);
    if (wt % 2 != 0) {
      if (c != 0) throw std::invalid_argument("WeightValue: odd-weight term has an imaginary value");
      continue;
    }
    w.add(s, (wt / 2) % 2 == 0 ? c : Rational(-c));
  }
  return w;
}

void WeightValue::add(const Composition& s, const Rational& coef) {
  if (!is_admissible(s)) throw std::invalid_argument("WeightValue: composition is not admissible");
  if (composition_weight(s) % 2 != 0) {
    throw std::invalid_argument("WeightValue: odd-weight zeta(s)/(i pi)^|s| is imaginary");
  }
  Rational r = coef;
  r.canonicalize();
  if (r == 0) return;
  auto [it, ins] = terms_.try_emplace(s, 0);
  it->second += r;
  if (it->second == 0) terms_.erase(it);
}

Rational WeightValue::coefficient(const Composition& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational WeightValue::ipi_coefficient(const Composition& s) const {
  const Rational r = coefficient(s);
  return (composition_weight(s) / 2) % 2 == 0 ? r : Rational(-r);
}

bool WeightValue::is_rational() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.empty(); });
}

int WeightValue::max_weight() const {
  int m = 0;
  for (const auto& [s, r] : terms_) m = std::max(m, composition_weight(s));
  return m;
}

WeightValue& WeightValue::operator+=(const WeightValue& o) {
  for (const auto& [s, r] : o.terms_) add(s, r);
  return *this;
}

WeightValue& WeightValue::operator*=(const Rational& coef) {
  Rational c = coef;
  c.canonicalize();
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [s, r] : terms_) r *= c;
  return *this;
}

namespace {

using Word = std::vector<int>;  // letters 0 and 1

// sum_{0 < n_1 < ... < n_k} z^{n_k} / prod n_i^{m_i} at z = 1/2, for a word
// 1 0^{m_1 - 1} ... 1 0^{m_k - 1}. The word must start with 1.
Real iterated_half(const Word& w) {
  if (w.empty()) return 1;
  std::vector<int> blocks;
  for (int letter : w) {
    if (letter == 1) {
      blocks.push_back(1);
    } else {
      ++blocks.back();
    }
  }
  // About 333 bits of working precision; 2^-420 is far below that.
  constexpr int kTerms = 420;
  const int k = static_cast<int>(blocks.size());
  // prefix[n] = sum over chains ending at index <= n of the first j blocks.
  std::vector<Real> prefix(kTerms + 1, Real(1));
  std::vector<Real> level(kTerms + 1);
  for (int j = 0; j < k; ++j) {
    level[0] = 0;
    for (int n = 1; n <= kTerms; ++n) {
      Real denom = pow(Real(n), blocks[j]);
      level[n] = (j == 0 ? Real(1) : prefix[n - 1]) / denom;
    }
    Real run = 0;
    for (int n = 0; n <= kTerms; ++n) {
      run += level[n];
      prefix[n] = run;
    }
  }
  Real sum = 0;
  Real zn = 1;
  for (int n = 1; n <= kTerms; ++n) {
    zn /= 2;
    sum += level[n] * zn;
  }
  return sum;
}

std::mutex g_cache_mutex;
std::map<Composition, Real> g_cache;

Real compute_mzv(const Composition& s) {
  Word w;
  for (int p : s) {
    w.push_back(1);
    for (int i = 1; i < p; ++i) w.push_back(0);
  }
  // Split the path 0 -> 1 at 1/2; the part 1/2 -> 1 becomes 0 -> 1/2 after
  // t -> 1 - t, which dualizes and reverses the word.
  Real total = 0;
  const std::size_t len = w.size();
  for (std::size_t j = 0; j <= len; ++j) {
    Word head(w.begin(), w.begin() + j);
    Word tail;
    for (std::size_t i = len; i > j; --i) tail.push_back(1 - w[i - 1]);
    total += iterated_half(head) * iterated_half(tail);
  }
  return total;
}

}  // namespace

Real mzv(const Composition& s) {
  if (!is_admissible(s)) throw std::invalid_argument("mzv: composition is not admissible");
  if (s.empty()) return 1;
  if (composition_weight(s) > kMaxMzvWeight) {
    throw UnknownMzvError("mzv: weight " + std::to_string(composition_weight(s)) + " exceeds the table limit " +
                          std::to_string(kMaxMzvWeight));
  }
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_cache.find(s);
    if (it != g_cache.end()) return it->second;
  }
  Real v = compute_mzv(s);
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  g_cache.emplace(s, v);
  return v;
}

Real mzv_eval(const WeightValue& w, int digits) {
  if (digits < 1 || digits > kMaxMzvDigits) {
    throw std::invalid_argument("mzv_eval: digits must be in 1.." + std::to_string(kMaxMzvDigits));
  }
  const Real pi = boost::math::constants::pi<Real>();
  Real total = 0;
  for (const auto& [s, r] : w.terms()) {
    Real c = Real(r.get_num().get_str()) / Real(r.get_den().get_str());
    total += c * mzv(s) / pow(pi, composition_weight(s));
  }
  return total;
}

std::string format_real(const Real& x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

std::string format_weight_value(const WeightValue& w) {
  if (w.terms().empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [s, r] : w.terms()) {
    const bool neg = r < 0;
    const Rational a = neg ? Rational(-r) : r;
    std::string t = a.get_str();
    if (!s.empty()) {
      t += "*zeta(";
      for (std::size_t i = 0; i < s.size(); ++i) t += (i ? "," : "") + std::to_string(s[i]);
      t += ")/pi^" + std::to_string(composition_weight(s));
    }
    if (first) {
      out = (neg ? "-" : "") + t;
    } else {
      out += (neg ? " - " : " + ") + t;
    }
    first = false;
  }
  return out;
}

WeightFileError::WeightFileError(const std::string& msg, std::size_t l, std::size_t c)
    : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg),
      line(l),
      column(c),
      detail(msg) {}

namespace {

class ValueParser {
 public:
  explicit ValueParser(std::string_view t) : text_(t) {}

  [[noreturn]] void fail(const std::string& msg) { throw WeightFileError(msg, 1, pos_ + 1); }

  void ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool accept_word(std::string_view w) {
    ws();
    if (text_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }
  long long integer() {
    ws();
    const std::size_t s = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (s == pos_) fail("expected an integer");
    if (pos_ - s > 9) fail("integer too large");
    return std::stoll(std::string(text_.substr(s, pos_ - s)));
  }
  Rational rational() {
    Rational r(static_cast<long>(integer()));
    if (pos_ < text_.size() && text_[pos_] == '/' && pos_ + 1 < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      const long long d = integer();
      if (d == 0) fail("zero denominator");
      r /= Rational(static_cast<long>(d));
    }
    return r;
  }

  // zeta(...)[^k] {* zeta(...)[^k]} as a stuffle-expanded linear combination.
  std::map<Composition, Rational> zeta_product() {
    std::map<Composition, Rational> acc{{Composition{}, Rational(1)}};
    do {
      if (!accept_word("zeta")) fail("expected zeta(...)");
      expect('(');
      Composition s;
      do {
        const long long p = integer();
        if (p < 1) fail("zeta arguments must be positive");
        s.push_back(static_cast<int>(p));
      } while (accept(','));
      expect(')');
      if (!is_admissible(s)) fail("zeta argument is divergent (last entry must exceed 1)");
      int power = 1;
      if (accept('^')) power = static_cast<int>(integer());
      for (int i = 0; i < power; ++i) {
        std::map<Composition, Rational> next;
        for (const auto& [c, r] : acc) {
          for (const auto& [c2, m] : stuffle(c, s)) next[c2] += r * Rational(static_cast<long>(m));
        }
        acc = std::move(next);
      }
    } while (accept('*'));
    return acc;
  }

  WeightValue value() {
    WeightValue w;
    bool first = true;
    while (true) {
      Rational sign = 1;
      if (accept('-')) {
        sign = -1;
      } else if (!accept('+') && !first) {
        break;
      }
      first = false;
      Rational coef = 1;
      bool have_coef = false;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coef = rational();
        have_coef = true;
      }
      if (have_coef && !accept('*')) {
        w.add({}, sign * coef);
      } else {
        const std::size_t at = pos_;
        auto prod = zeta_product();
        expect('/');
        if (!accept_word("pi")) fail("expected pi^w");
        expect('^');
        const long long pw = integer();
        const int wt = composition_weight(prod.begin()->first);
        if (pw != wt) {
          pos_ = at;
          fail("power of pi (" + std::to_string(pw) + ") differs from the zeta weight (" + std::to_string(wt) + ")");
        }
        if (wt % 2 != 0) {
          pos_ = at;
          fail("odd total weight gives an imaginary term");
        }
        for (const auto& [c, r] : prod) w.add(c, sign * coef * r);
      }
      const char c = peek();
      if (c != '+' && c != '-') break;
    }
    if (peek() != '\0') fail("unexpected trailing input");
    return w;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

WeightValue parse_weight_value(std::string_view text) {
  ValueParser p(text);
  if (p.peek() == '\0') p.fail("empty value");
  return p.value();
}

std::vector<std::pair<AdmissibleGraph, WeightValue>> parse_weight_file(std::string_view text) {
  std::vector<std::pair<AdmissibleGraph, WeightValue>> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      const std::size_t bar = line.find('|');
      if (bar == std::string_view::npos) throw WeightFileError("expected '<graph> | <value>'", line_no, 1);
      AdmissibleGraph g;
      try {
        g = decode(line.substr(0, bar));
      } catch (const GraphParseError& e) {
        throw WeightFileError(e.what(), line_no, e.position + 1);
      }
      try {
        out.emplace_back(g, parse_weight_value(line.substr(bar + 1)));
      } catch (const WeightFileError& e) {
        throw WeightFileError(e.detail, line_no, bar + 1 + e.column);
      } catch (const std::invalid_argument& e) {
        throw WeightFileError(e.what(), line_no, bar + 2);
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

std::string format_weight_file(const std::vector<std::pair<AdmissibleGraph, WeightValue>>& records) {
  std::string out;
  for (const auto& [g, w] : records) out += encode(g) + " | " + format_weight_value(w) + "\n";
  return out;
}

}  // namespace kstar
