#include "ringlab/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace ringlab {

int PolyRing::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

std::string PolyRing::describe() const {
  std::string s = field.tag();
  if (vars.empty()) return s;
  s += "[";
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) s += ",";
    s += vars[i].name;
    if (vars[i].laurent) s += "," + vars[i].name + "^-1";
  }
  s += "]";
  return s;
}

PolyRing ring_union(const PolyRing& a, const PolyRing& b) {
  if (!(a.field == b.field)) {
    throw validation_error("ring union: field mismatch");
  }
  PolyRing out = a;
  for (const auto& v : b.vars) {
    int i = a.index_of(v.name);
    if (i < 0) {
      out.vars.push_back(v);
    } else if (a.vars[i].laurent != v.laurent) {
      throw validation_error("ring union: Laurent flag mismatch on " + v.name);
    }
  }
  return out;
}

bool GradedLexLess::operator()(const Mono& a, const Mono& b) const {
  long da = std::accumulate(a.begin(), a.end(), 0L);
  long db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Poly Poly::constant(const PolyRing& r, const Scalar& c) {
  Poly p(r);
  if (!c.is_zero()) p.terms_[Mono(r.nvars(), 0)] = c;
  return p;
}

Poly Poly::from_int(const PolyRing& r, std::int64_t v) {
  return constant(r, Scalar::from_int(r.field, v));
}

Poly Poly::variable(const PolyRing& r, int idx) {
  if (idx < 0 || idx >= static_cast<int>(r.nvars())) {
    throw validation_error("variable index out of range");
  }
  Mono m(r.nvars(), 0);
  m[idx] = 1;
  return monomial(r, m, Scalar::one(r.field));
}

Poly Poly::variable(const PolyRing& r, const std::string& name) {
  int idx = r.index_of(name);
  if (idx < 0) throw validation_error("unknown variable: " + name);
  return variable(r, idx);
}

Poly Poly::monomial(const PolyRing& r, const Mono& m, const Scalar& c) {
  if (m.size() != r.nvars()) {
    throw validation_error("monomial arity mismatch");
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 0 && !r.vars[i].laurent) {
      throw validation_error("negative exponent on non-Laurent variable " +
                             r.vars[i].name);
    }
  }
  Poly p(r);
  if (!c.is_zero()) p.terms_[m] = c;
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const Mono& m = terms_.begin()->first;
  return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

Scalar Poly::constant_value() const {
  if (terms_.empty()) return Scalar::zero(ring_.field);
  if (!is_constant()) {
    throw validation_error("constant_value() on a non-constant polynomial");
  }
  return terms_.begin()->second;
}

std::optional<int> Poly::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  const Mono& m = terms_.rbegin()->first;  // graded order: last is max degree
  return std::accumulate(m.begin(), m.end(), 0);
}

std::optional<int> Poly::degree_in(int var) const {
  if (terms_.empty()) return std::nullopt;
  int d = INT32_MIN;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
  return d;
}

std::optional<int> Poly::min_degree_in(int var) const {
  if (terms_.empty()) return std::nullopt;
  int d = INT32_MAX;
  for (const auto& [m, c] : terms_) d = std::min(d, static_cast<int>(m[var]));
  return d;
}

Scalar Poly::leading_coeff() const {
  if (terms_.empty()) return Scalar::zero(ring_.field);
  return terms_.rbegin()->second;
}

Scalar Poly::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar::zero(ring_.field) : it->second;
}

void Poly::check_same_ring(const Poly& o) const {
  if (!(ring_ == o.ring_)) {
    throw validation_error("polynomial ring mismatch: " + ring_.describe() +
                           " vs " + o.ring_.describe());
  }
}

void Poly::add_term(const Mono& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  check_same_ring(o);
  Poly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

Poly Poly::operator-(const Poly& o) const {
  check_same_ring(o);
  Poly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
  return out;
}

Poly Poly::operator-() const {
  Poly out(ring_);
  for (const auto& [m, c] : terms_) out.terms_[m] = -c;
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  check_same_ring(o);
  Poly out(ring_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Mono m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Poly Poly::scaled(const Scalar& c) const {
  Poly out(ring_);
  if (c.is_zero()) return out;
  for (const auto& [m, v] : terms_) out.terms_[m] = v * c;
  return out;
}

Poly Poly::pow(unsigned e) const {
  Poly acc = one(ring_);
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) acc = acc * base;
    base = base * base;
    e >>= 1u;
  }
  return acc;
}

bool Poly::operator==(const Poly& o) const {
  return ring_ == o.ring_ && terms_ == o.terms_;
}

Poly Poly::derivative(int var) const {
  Poly out(ring_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Scalar k = Scalar::from_int(ring_.field, m[var]);
    if (k.is_zero()) continue;  // char p kills p-th powers
    Mono nm = m;
    nm[var] -= 1;
    out.add_term(nm, c * k);
  }
  return out;
}

Poly Poly::eval_partial(const std::map<std::string, Scalar>& assign) const {
  std::vector<int> assigned_idx(ring_.nvars(), -1);
  std::vector<Scalar> values;
  for (const auto& [name, val] : assign) {
    int idx = ring_.index_of(name);
    if (idx < 0) throw validation_error("eval: unknown variable " + name);
    if (ring_.vars[idx].laurent && val.is_zero()) {
      throw validation_error("eval: zero assigned to Laurent variable " + name);
    }
    if (!(val.field() == ring_.field)) {
      throw validation_error("eval: value field mismatch for " + name);
    }
    assigned_idx[idx] = static_cast<int>(values.size());
    values.push_back(val);
  }
  PolyRing rest = PolyRing{ring_.field, {}};
  std::vector<int> keep;
  for (std::size_t i = 0; i < ring_.nvars(); ++i) {
    if (assigned_idx[i] < 0) {
      keep.push_back(static_cast<int>(i));
      rest.vars.push_back(ring_.vars[i]);
    }
  }
  Poly out(rest);
  for (const auto& [m, c] : terms_) {
    Scalar coeff = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (assigned_idx[i] >= 0 && m[i] != 0) {
        coeff = coeff * values[assigned_idx[i]].pow(m[i]);
      }
    }
    Mono nm(keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) nm[j] = m[keep[j]];
    out.add_term(nm, coeff);
  }
  return out;
}

Poly Poly::lift_to(const PolyRing& bigger) const {
  if (!(bigger.field == ring_.field)) {
    throw validation_error("lift: field mismatch");
  }
  std::vector<int> where(ring_.nvars());
  for (std::size_t i = 0; i < ring_.nvars(); ++i) {
    int idx = bigger.index_of(ring_.vars[i].name);
    if (idx < 0) {
      throw validation_error("lift: missing variable " + ring_.vars[i].name);
    }
    if (bigger.vars[idx].laurent != ring_.vars[i].laurent) {
      throw validation_error("lift: Laurent flag mismatch on " +
                             ring_.vars[i].name);
    }
    where[i] = idx;
  }
  Poly out(bigger);
  for (const auto& [m, c] : terms_) {
    Mono nm(bigger.nvars(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) nm[where[i]] = m[i];
    out.terms_[nm] = c;
  }
  return out;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // print descending in graded-lex
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Mono& m = it->first;
    Scalar c = it->second;
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) os << "-", cs = cs.substr(1);
    } else {
      os << (neg ? " - " : " + ");
      if (neg) cs = cs.substr(1);
    }
    first = false;
    bool is_const_mono =
        std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
    bool coeff_is_one = (cs == "1");
    if (is_const_mono) {
      os << cs;
      continue;
    }
    bool wrote = false;
    if (!coeff_is_one) {
      os << cs;
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << "*";
      os << ring_.vars[i].name;
      if (m[i] != 1) os << "^" << m[i];
      wrote = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Token {
  enum Kind { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Kind kind = End;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  Token next() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
    if (pos_ >= s_.size()) return {Token::End, ""};
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string t;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        t += s_[pos_++];
      }
      return {Token::Num, t};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string t;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
              s_[pos_] == '_' || s_[pos_] == '.')) {
        t += s_[pos_++];
      }
      return {Token::Ident, t};
    }
    ++pos_;
    switch (c) {
      case '+': return {Token::Plus, "+"};
      case '-': return {Token::Minus, "-"};
      case '*': return {Token::Star, "*"};
      case '/': return {Token::Slash, "/"};
      case '^': return {Token::Caret, "^"};
      case '(': return {Token::LParen, "("};
      case ')': return {Token::RParen, ")"};
      default:
        throw parse_error(std::string("unexpected character '") + c + "'");
    }
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

class PolyParser {
 public:
  PolyParser(const PolyRing& ring, const std::string& text)
      : ring_(ring), lex_(text) {
    advance();
  }

  Poly parse() {
    Poly p = expr();
    if (cur_.kind != Token::End) {
      throw parse_error("trailing input in polynomial: '" + cur_.text + "'");
    }
    return p;
  }

 private:
  const PolyRing& ring_;
  Lexer lex_;
  Token cur_;

  void advance() { cur_ = lex_.next(); }

  Poly expr() {
    bool neg = false;
    while (cur_.kind == Token::Plus || cur_.kind == Token::Minus) {
      if (cur_.kind == Token::Minus) neg = !neg;
      advance();
    }
    Poly acc = term();
    if (neg) acc = -acc;
    while (cur_.kind == Token::Plus || cur_.kind == Token::Minus) {
      bool minus = cur_.kind == Token::Minus;
      advance();
      Poly t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (cur_.kind == Token::Star || cur_.kind == Token::Slash) {
      bool div = cur_.kind == Token::Slash;
      advance();
      Poly f = factor();
      if (div) {
        if (!f.is_constant() || f.is_zero()) {
          throw parse_error("'/' requires a nonzero constant divisor");
        }
        acc = acc.scaled(f.constant_value().inverse());
      } else {
        acc = acc * f;
      }
    }
    return acc;
  }

  int exponent() {
    bool neg = false;
    if (cur_.kind == Token::Minus) {
      neg = true;
      advance();
    }
    if (cur_.kind != Token::Num) throw parse_error("expected exponent");
    int e = std::stoi(cur_.text);
    advance();
    return neg ? -e : e;
  }

  Poly factor() {
    Poly base(ring_);
    if (cur_.kind == Token::Num) {
      base = Poly::constant(ring_, Scalar::parse(ring_.field, cur_.text));
      advance();
    } else if (cur_.kind == Token::Ident) {
      int idx = ring_.index_of(cur_.text);
      if (idx < 0) {
        throw parse_error("unknown variable '" + cur_.text + "' in " +
                          ring_.describe());
      }
      base = Poly::variable(ring_, idx);
      advance();
    } else if (cur_.kind == Token::LParen) {
      advance();
      base = expr();
      if (cur_.kind != Token::RParen) throw parse_error("expected ')'");
      advance();
    } else if (cur_.kind == Token::Minus) {
      advance();
      return -factor();
    } else {
      throw parse_error("unexpected token '" + cur_.text + "'");
    }
    if (cur_.kind == Token::Caret) {
      advance();
      int e = exponent();
      if (e >= 0) {
        base = base.pow(static_cast<unsigned>(e));
      } else {
        // negative powers: single Laurent variable only
        if (base.terms().size() != 1) {
          throw parse_error("negative exponent on a non-monomial");
        }
        const auto& [m, c] = *base.terms().begin();
        Mono nm(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
          nm[i] = m[i] * e;
          if (nm[i] < 0 && !ring_.vars[i].laurent) {
            throw parse_error("negative exponent on non-Laurent variable " +
                              ring_.vars[i].name);
          }
        }
        if (!c.is_one()) throw parse_error("negative exponent on a scaled monomial");
        base = Poly::monomial(ring_, nm, c);
      }
    }
    return base;
  }
};

}  // namespace

Poly Poly::parse(const PolyRing& r, const std::string& text) {
  return PolyParser(r, text).parse();
}

// ---------------------------------------------------------------------------
// univariate helpers

bool is_univariate_poly(const Poly& f) {
  return f.ring().nvars() == 1 && !f.ring().vars[0].laurent;
}

static void require_univariate(const Poly& f, const char* what) {
  if (!is_univariate_poly(f)) {
    throw validation_error(std::string(what) +
                           ": requires one non-Laurent variable, got " +
                           f.ring().describe());
  }
}

Poly poly_monic(const Poly& f) {
  if (f.is_zero()) throw validation_error("monic: zero polynomial");
  return f.scaled(f.leading_coeff().inverse());
}

std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& g) {
  require_univariate(f, "divmod");
  if (!(f.ring() == g.ring())) throw validation_error("divmod: ring mismatch");
  if (g.is_zero()) throw validation_error("divmod: division by zero");
  Poly q(f.ring());
  Poly r = f;
  int dg = g.degree_in(0).value();
  Scalar lg = g.leading_coeff();
  while (!r.is_zero() && r.degree_in(0).value() >= dg) {
    int dr = r.degree_in(0).value();
    Scalar lr = r.terms().rbegin()->second;
    Mono m{dr - dg};
    Poly t = Poly::monomial(f.ring(), m, lr / lg);
    q += t;
    r -= t * g;
  }
  return {q, r};
}

Poly poly_gcd(const Poly& f, const Poly& g) {
  require_univariate(f, "gcd");
  Poly a = f, b = g;
  while (!b.is_zero()) {
    auto [q, r] = poly_divmod(a, b);
    (void)q;
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  return poly_monic(a);
}

Scalar poly_eval_univariate(const Poly& f, const Scalar& a) {
  const std::string& v = f.ring().vars.at(0).name;
  return f.eval_partial({{v, a}}).constant_value();
}

Poly poly_exact_div(const Poly& f, const Poly& g) {
  if (!(f.ring() == g.ring())) {
    throw validation_error("exact_div: ring mismatch");
  }
  if (g.is_zero()) throw validation_error("exact_div: division by zero");
  Poly r = f;
  Poly q(f.ring());
  const Mono& lg = g.terms().rbegin()->first;
  const Scalar& cg = g.terms().rbegin()->second;
  while (!r.is_zero()) {
    const Mono& lr = r.terms().rbegin()->first;
    Mono m(lr.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      m[i] = lr[i] - lg[i];
      if (m[i] < 0 && !f.ring().vars[i].laurent) {
        throw validation_error("exact_div: not divisible");
      }
    }
    Poly t = Poly::monomial(f.ring(), m, r.terms().rbegin()->second / cg);
    q += t;
    r -= t * g;
  }
  return q;
}

}  // namespace ringlab
