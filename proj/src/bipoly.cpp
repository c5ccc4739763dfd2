#include "icm/bipoly.hpp"

#include <algorithm>
#include <cctype>

namespace icm {

BiPoly::BiPoly(Tower tower, std::array<std::string, 2> vars) : t_(std::move(tower)), vars_(std::move(vars)) {}

BiPoly BiPoly::constant(const FieldElement& c, std::array<std::string, 2> vars) {
  return monomial(c, 0, 0, std::move(vars));
}

BiPoly BiPoly::monomial(const FieldElement& c, int a, int b, std::array<std::string, 2> vars) {
  BiPoly p(c.tower(), std::move(vars));
  p.add_term(a, b, c);
  return p;
}

BiPoly BiPoly::from_int(const Tower& t, long long c, std::array<std::string, 2> vars) {
  return constant(FieldElement::from_int(t, c), std::move(vars));
}

BiPoly BiPoly::variable(const Tower& t, int i, std::array<std::string, 2> vars) {
  return monomial(FieldElement::from_int(t, 1), i == 0 ? 1 : 0, i == 0 ? 0 : 1, std::move(vars));
}

BiPoly BiPoly::with_vars(std::array<std::string, 2> v) const {
  BiPoly r = *this;
  r.vars_ = std::move(v);
  return r;
}

void BiPoly::add_term(int a, int b, const FieldElement& c) {
  if (c.is_zero()) return;
  auto it = terms_.find({a, b});
  if (it == terms_.end()) {
    terms_.emplace(Exponent{a, b}, c.embed(t_));
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

FieldElement BiPoly::coeff(int a, int b) const {
  auto it = terms_.find({a, b});
  return it == terms_.end() ? FieldElement(t_) : it->second;
}

int BiPoly::ord() const {
  int o = kInfinity;
  for (const auto& [e, c] : terms_) o = std::min(o, e.first + e.second);
  return o;
}

int BiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

int BiPoly::degree_in(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, var == 0 ? e.first : e.second);
  return d;
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
  BiPoly r = *this;
  r += o;
  return r;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  if (!t_) {
    *this = o;
    return *this;
  }
  Tower t = common_tower(t_, o.t_);
  if (t != t_) *this = embed(t);
  for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, c);
  return *this;
}

BiPoly BiPoly::operator-() const {
  BiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (-o); }

BiPoly& BiPoly::operator-=(const BiPoly& o) { return *this += -o; }

BiPoly BiPoly::operator*(const BiPoly& o) const {
  BiPoly r(common_tower(t_, o.t_), vars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.add_term(e1.first + e2.first, e1.second + e2.second, c1 * c2);
  return r;
}

BiPoly BiPoly::mul_truncated(const BiPoly& o, int k) const {
  BiPoly r(common_tower(t_, o.t_), vars_);
  for (const auto& [e1, c1] : terms_) {
    if (e1.first + e1.second >= k) continue;
    for (const auto& [e2, c2] : o.terms_) {
      if (e1.first + e1.second + e2.first + e2.second >= k) continue;
      r.add_term(e1.first + e2.first, e1.second + e2.second, c1 * c2);
    }
  }
  return r;
}

BiPoly BiPoly::operator*(const FieldElement& s) const {
  BiPoly r(common_tower(t_, s.tower()), vars_);
  for (const auto& [e, c] : terms_) r.add_term(e.first, e.second, c * s);
  return r;
}

bool BiPoly::operator==(const BiPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [e, c] : terms_) {
    if (e != it->first || c != it->second) return false;
    ++it;
  }
  return true;
}

BiPoly BiPoly::pow(int e) const {
  BiPoly r = from_int(t_, 1, vars_);
  BiPoly b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

BiPoly BiPoly::shifted(int a, int b) const {
  BiPoly r(t_, vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(Exponent{e.first + a, e.second + b}, c);
  return r;
}

BiPoly BiPoly::truncated(int k) const {
  BiPoly r(t_, vars_);
  for (const auto& [e, c] : terms_)
    if (e.first + e.second < k) r.terms_.emplace(e, c);
  return r;
}

BiPoly BiPoly::homogeneous_part(int d) const {
  BiPoly r(t_, vars_);
  for (const auto& [e, c] : terms_)
    if (e.first + e.second == d) r.terms_.emplace(e, c);
  return r;
}

BiPoly BiPoly::substitute(const BiPoly& x, const BiPoly& y) const {
  Tower t = common_tower(common_tower(t_, x.tower()), y.tower());
  BiPoly r(t, x.vars());
  std::vector<BiPoly> xp{from_int(t, 1, x.vars())}, yp{from_int(t, 1, x.vars())};
  for (const auto& [e, c] : terms_) {
    while (static_cast<int>(xp.size()) <= e.first) xp.push_back(xp.back() * x);
    while (static_cast<int>(yp.size()) <= e.second) yp.push_back(yp.back() * y);
    r += (xp[e.first] * yp[e.second]) * c;
  }
  return r;
}

BiPoly BiPoly::divide_monomial(int a, int b) const {
  BiPoly r(t_, vars_);
  for (const auto& [e, c] : terms_) {
    if (e.first < a || e.second < b)
      throw Error(ErrorCode::AssertionFailure, "monomial division is not exact");
    r.terms_.emplace(Exponent{e.first - a, e.second - b}, c);
  }
  return r;
}

BiPoly BiPoly::embed(const Tower& target) const {
  BiPoly r(target, vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c.embed(target));
  return r;
}

UniPoly BiPoly::dehomogenize(const std::string& var) const {
  std::vector<FieldElement> c(static_cast<std::size_t>(std::max(0, degree_in(1) + 1)), FieldElement(t_));
  for (const auto& [e, v] : terms_) c[static_cast<std::size_t>(e.second)] += v;
  return UniPoly(t_, std::move(c), var);
}

UniPoly BiPoly::restrict_variable(int var) const {
  std::vector<FieldElement> c(static_cast<std::size_t>(std::max(0, degree_in(var) + 1)), FieldElement(t_));
  for (const auto& [e, v] : terms_) {
    if (var == 0 && e.second == 0) c[static_cast<std::size_t>(e.first)] += v;
    if (var == 1 && e.first == 0) c[static_cast<std::size_t>(e.second)] += v;
  }
  return UniPoly(t_, std::move(c), vars_[static_cast<std::size_t>(var)]);
}

std::string BiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponent, const FieldElement*>> order;
  for (const auto& [e, c] : terms_) order.push_back({e, &c});
  // graded lexicographic, highest first: total degree, then x-exponent
  std::sort(order.begin(), order.end(), [](const auto& l, const auto& r) {
    int dl = l.first.first + l.first.second, dr = r.first.first + r.first.second;
    if (dl != dr) return dl > dr;
    return l.first.first > r.first.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [e, cp] : order) {
    const FieldElement& c = *cp;
    std::string mono;
    auto factor = [&](const std::string& v, int k) {
      if (k == 0) return;
      if (!mono.empty()) mono += "*";
      mono += v;
      if (k > 1) mono += "^" + std::to_string(k);
    };
    factor(vars_[0], e.first);
    factor(vars_[1], e.second);
    std::string coef = c.to_string();
    if (c.needs_parens()) coef = "(" + coef + ")";
    std::string term;
    if (mono.empty())
      term = coef;
    else if (coef == "1")
      term = mono;
    else if (coef == "-1")
      term = "-" + mono;
    else
      term = coef + "*" + mono;
    if (!first && term[0] != '-') out += "+";
    out += term;
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact division and gcd

namespace {

// Lexicographic leading term with the second variable dominant.
Exponent lex_lead(const BiPoly& p) {
  Exponent best{-1, -1};
  for (const auto& [e, c] : p.terms())
    if (e.second > best.second || (e.second == best.second && e.first > best.first)) best = e;
  return best;
}

using YPoly = std::vector<UniPoly>;  // coefficients in y, each a polynomial in x

YPoly to_ypoly(const BiPoly& p) {
  YPoly out(static_cast<std::size_t>(std::max(0, p.degree_in(1) + 1)), UniPoly(p.tower(), "x"));
  std::vector<std::vector<FieldElement>> c(out.size());
  for (const auto& [e, v] : p.terms()) {
    auto& row = c[static_cast<std::size_t>(e.second)];
    if (row.size() <= static_cast<std::size_t>(e.first)) row.resize(static_cast<std::size_t>(e.first) + 1, FieldElement(p.tower()));
    row[static_cast<std::size_t>(e.first)] = v;
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = UniPoly(p.tower(), c[i], "x");
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

BiPoly from_ypoly(const YPoly& y, const BiPoly& like) {
  BiPoly r(like.tower(), like.vars());
  for (std::size_t j = 0; j < y.size(); ++j)
    for (std::size_t i = 0; i < y[j].coeffs().size(); ++i)
      r.add_term(static_cast<int>(i), static_cast<int>(j), y[j].coeffs()[i]);
  return r;
}

UniPoly content(const YPoly& p) {
  UniPoly g = p.front();
  for (const auto& c : p) g = gcd(g, c);
  return g;
}

YPoly divide_coeffs(const YPoly& p, const UniPoly& c) {
  YPoly out;
  for (const auto& q : p) out.push_back(q / c);
  return out;
}

// Pseudo-remainder of a by b in k[x][y].
YPoly prem(YPoly a, const YPoly& b) {
  const std::size_t db = b.size() - 1;
  const UniPoly& lb = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    UniPoly la = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (auto& c : a) c = c * lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] = a[i + shift] - la * b[i];
    while (!a.empty() && a.back().is_zero()) a.pop_back();
  }
  return a;
}

BiPoly normalize_lead(const BiPoly& p) {
  if (p.is_zero()) return p;
  Exponent e = lex_lead(p);
  return p * p.coeff(e.first, e.second).inverse();
}

}  // namespace

std::optional<BiPoly> divide_exact(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroDivisor, "division by the zero polynomial");
  Tower t = common_tower(a.tower(), b.tower());
  BiPoly rem = a.embed(t);
  BiPoly q(t, a.vars());
  Exponent lb = lex_lead(b);
  FieldElement inv = b.coeff(lb.first, lb.second).inverse();
  while (!rem.is_zero()) {
    Exponent la = lex_lead(rem);
    if (la.first < lb.first || la.second < lb.second) return std::nullopt;
    BiPoly term = BiPoly::monomial(rem.coeff(la.first, la.second) * inv, la.first - lb.first, la.second - lb.second,
                                   a.vars());
    q += term;
    rem -= term * b;
  }
  return q;
}

BiPoly gcd(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero()) return normalize_lead(b);
  if (b.is_zero()) return normalize_lead(a);
  Tower t = common_tower(a.tower(), b.tower());
  YPoly pa = to_ypoly(a.embed(t)), pb = to_ypoly(b.embed(t));
  UniPoly ca = content(pa), cb = content(pb);
  UniPoly c = gcd(ca, cb);
  pa = divide_coeffs(pa, ca);
  pb = divide_coeffs(pb, cb);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  while (pb.size() > 1) {
    YPoly r = prem(pa, pb);
    pa = pb;
    if (r.empty()) {
      pb.clear();
      break;
    }
    pb = divide_coeffs(r, content(r));
  }
  YPoly g;
  if (pb.empty()) {
    g = pa;
  } else {
    // pb has y-degree 0: it is a primitive polynomial in x alone, hence a unit
    g = {UniPoly::constant(FieldElement::from_int(t, 1), "x")};
  }
  for (auto& q : g) q = q * c;
  return normalize_lead(from_ypoly(g, a));
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
  Parser(const std::string& s, const Tower& t, const std::array<std::string, 2>& vars)
      : s_(s), t_(t), vars_(vars) {}

  BiPoly parse() {
    BiPoly r = sum();
    skip_ws();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseFailure(static_cast<int>(pos_) + 1, msg); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  BiPoly sum() {
    skip_ws();
    BiPoly acc(t_, vars_);
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    BiPoly first = product();
    acc = neg ? -first : first;
    for (;;) {
      if (accept('+'))
        acc += product();
      else if (accept('-'))
        acc -= product();
      else
        break;
    }
    return acc;
  }

  BiPoly product() {
    BiPoly acc = power();
    for (;;) {
      if (accept('*')) {
        acc = acc * power();
      } else if (accept('/')) {
        std::size_t at = pos_;
        BiPoly d = power();
        if (d.is_zero() || d.total_degree() != 0) {
          pos_ = at;
          fail("division only by a nonzero constant");
        }
        acc = acc * d.constant_term().inverse();
      } else {
        break;
      }
    }
    return acc;
  }

  BiPoly power() {
    BiPoly base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      if (pos_ - start > 4) fail("exponent too large");
      base = base.pow(std::stoi(s_.substr(start, pos_ - start)));
    }
    return base;
  }

  BiPoly atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      BiPoly inner = sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Integer v(s_.substr(start, pos_ - start));
      return BiPoly::constant(FieldElement::from_rational(t_, Rational(v)), vars_);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                  s_[pos_] == '\''))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == vars_[0]) return BiPoly::variable(t_, 0, vars_);
      if (name == vars_[1]) return BiPoly::variable(t_, 1, vars_);
      auto gens = t_->generator_names();
      for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i] == name) return BiPoly::constant(FieldElement::generator(t_, i + 1), vars_);
      pos_ = start;
      fail("unknown symbol '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  Tower t_;
  std::array<std::string, 2> vars_;
  std::size_t pos_ = 0;
};

}  // namespace

BiPoly parse_bipoly(const std::string& text, const Tower& tower, const std::array<std::string, 2>& vars) {
  return Parser(text, tower, vars).parse();
}

}  // namespace icm
