#include "icm/unipoly.hpp"

#include "icm/error.hpp"

namespace icm {

UniPoly::UniPoly(Tower tower, std::string var) : t_(std::move(tower)), var_(std::move(var)) {}

UniPoly::UniPoly(Tower tower, std::vector<FieldElement> coeffs, std::string var)
    : t_(std::move(tower)), c_(std::move(coeffs)), var_(std::move(var)) {
  for (auto& c : c_) c = c.embed(t_);
  trim();
}

UniPoly UniPoly::constant(const FieldElement& c, std::string var) {
  return UniPoly(c.tower(), {c}, std::move(var));
}

UniPoly UniPoly::monomial(const FieldElement& c, std::size_t deg, std::string var) {
  std::vector<FieldElement> v(deg + 1, FieldElement(c.tower()));
  v[deg] = c;
  return UniPoly(c.tower(), std::move(v), std::move(var));
}

UniPoly UniPoly::linear_root(const FieldElement& c, std::string var) {
  return UniPoly(c.tower(), {-c, FieldElement::from_int(c.tower(), 1)}, std::move(var));
}

UniPoly UniPoly::from_ints(const Tower& tower, const std::vector<long long>& coeffs, std::string var) {
  std::vector<FieldElement> v;
  for (long long c : coeffs) v.push_back(FieldElement::from_int(tower, c));
  return UniPoly(tower, std::move(v), std::move(var));
}

UniPoly UniPoly::with_var(std::string v) const {
  UniPoly r = *this;
  r.var_ = std::move(v);
  return r;
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElement UniPoly::coeff(std::size_t i) const {
  return i < c_.size() ? c_[i] : FieldElement(t_);
}

FieldElement UniPoly::lead() const {
  if (c_.empty()) return FieldElement(t_);
  return c_.back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  Tower t = common_tower(t_, o.t_);
  std::vector<FieldElement> v(std::max(c_.size(), o.c_.size()), FieldElement(t));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i].embed(t);
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] = v[i] + o.c_[i].embed(t);
  return UniPoly(t, std::move(v), var_);
}

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  Tower t = common_tower(t_, o.t_);
  if (c_.empty() || o.c_.empty()) return UniPoly(t, var_);
  std::vector<FieldElement> v(c_.size() + o.c_.size() - 1, FieldElement(t));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    FieldElement a = c_[i].embed(t);
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j].is_zero()) continue;
      v[i + j] = v[i + j] + a * o.c_[j].embed(t);
    }
  }
  return UniPoly(t, std::move(v), var_);
}

UniPoly UniPoly::operator*(const FieldElement& s) const {
  Tower t = common_tower(t_, s.tower());
  std::vector<FieldElement> v;
  for (const auto& c : c_) v.push_back(c.embed(t) * s);
  return UniPoly(t, std::move(v), var_);
}

bool UniPoly::operator==(const UniPoly& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
  if (d.is_zero()) throw Error(ErrorCode::ZeroDivisor, "polynomial division by zero");
  Tower t = common_tower(t_, d.t_);
  std::vector<FieldElement> r;
  for (const auto& c : c_) r.push_back(c.embed(t));
  std::vector<FieldElement> dd;
  for (const auto& c : d.c_) dd.push_back(c.embed(t));
  const std::size_t dn = dd.size() - 1;
  if (r.size() < dd.size()) return {UniPoly(t, var_), UniPoly(t, std::move(r), var_)};
  std::vector<FieldElement> q(r.size() - dn, FieldElement(t));
  FieldElement inv_lead = dd.back().inverse();
  for (std::size_t k = r.size(); k-- > dn;) {
    if (r[k].is_zero()) continue;
    FieldElement f = r[k] * inv_lead;
    q[k - dn] = f;
    for (std::size_t i = 0; i <= dn; ++i) r[k - dn + i] = r[k - dn + i] - f * dd[i];
  }
  return {UniPoly(t, std::move(q), var_), UniPoly(t, std::move(r), var_)};
}

UniPoly UniPoly::monic() const {
  if (c_.empty()) return *this;
  return *this * lead().inverse();
}

UniPoly UniPoly::derivative() const {
  std::vector<FieldElement> v;
  for (std::size_t i = 1; i < c_.size(); ++i)
    v.push_back(c_[i] * FieldElement::from_int(t_, static_cast<long long>(i)));
  return UniPoly(t_, std::move(v), var_);
}

FieldElement UniPoly::eval(const FieldElement& x) const {
  Tower t = common_tower(t_, x.tower());
  FieldElement acc(t);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

UniPoly UniPoly::shift(const FieldElement& s) const {
  Tower t = common_tower(t_, s.tower());
  UniPoly lin(t, {s, FieldElement::from_int(t, 1)}, var_);
  UniPoly acc(t, var_);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * lin + constant(c_[i].embed(t), var_);
  return acc;
}

UniPoly UniPoly::embed(const Tower& target) const { return UniPoly(target, c_, var_); }

UniPoly UniPoly::powmod(const Integer& e, const UniPoly& mod) const {
  UniPoly base = *this % mod;
  UniPoly r = constant(FieldElement::from_int(t_, 1), var_) % mod;
  const std::size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = (r * r) % mod;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * base) % mod;
  }
  return r;
}

std::string UniPoly::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    std::string coef = c_[i].to_string();
    std::string mono = i == 0 ? "" : (i == 1 ? var_ : var_ + "^" + std::to_string(i));
    std::string term;
    if (i == 0)
      term = c_[i].needs_parens() ? "(" + coef + ")" : coef;
    else if (coef == "1")
      term = mono;
    else if (coef == "-1")
      term = "-" + mono;
    else
      term = (c_[i].needs_parens() ? "(" + coef + ")" : coef) + "*" + mono;
    if (!first && term[0] != '-') out += "+";
    out += term;
    first = false;
  }
  return out;
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

}  // namespace icm
