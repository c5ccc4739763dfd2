#include "icm/field.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "icm/config.hpp"
#include "icm/detail/field_arith.hpp"
#include "icm/error.hpp"

namespace icm {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotSupported: return "NotSupported";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::TowerMismatch: return "TowerMismatch";
    case ErrorCode::NotFiniteColength: return "NotFiniteColength";
    case ErrorCode::ZeroDivisor: return "ZeroDivisor";
    case ErrorCode::ZeroModule: return "ZeroModule";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NoContractingGenerator: return "NoContractingGenerator";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::ResampleLimit: return "ResampleLimit";
    case ErrorCode::FitUnstable: return "FitUnstable";
    case ErrorCode::NotMPrimary: return "NotMPrimary";
    case ErrorCode::NotMonomial: return "NotMonomial";
    case ErrorCode::AssertionFailure: return "AssertionFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

const Config& default_config() {
  static const Config cfg;
  return cfg;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeOps::value_type PrimeOps::inv(value_type a) const {
  if (a == 0) throw Error(ErrorCode::ZeroDivisor, "inverse of zero in GF(p)");
  __int128 t = 0, nt = 1;
  __int128 r = p, nr = a;
  while (nr != 0) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return static_cast<value_type>(t);
}

// ---------------------------------------------------------------------------
// FieldTower

Tower FieldTower::rationals() {
  static const Tower q = [] {
    auto t = std::make_shared<FieldTower>();
    t->kind_ = BaseKind::Rationals;
    return Tower(t);
  }();
  return q;
}

Tower FieldTower::prime_field(std::uint64_t p) {
  if (!is_prime_u64(p) || p >= (std::uint64_t{1} << 63))
    throw Error(ErrorCode::InvalidArgument, "modulus " + std::to_string(p) + " is not a usable prime");
  auto t = std::make_shared<FieldTower>();
  t->kind_ = BaseKind::Prime;
  t->p_ = p;
  return t;
}

Tower FieldTower::extend_unchecked(const Tower& base, const std::vector<FieldElement>& monic_poly,
                                   const std::string& name) {
  if (monic_poly.size() < 2) throw Error(ErrorCode::InvalidArgument, "extension polynomial must have degree >= 1");
  if (!monic_poly.back().is_one()) throw Error(ErrorCode::InvalidArgument, "extension polynomial must be monic");
  for (const auto& gen : base->generator_names())
    if (gen == name) throw Error(ErrorCode::InvalidArgument, "generator name '" + name + "' already used");
  auto t = std::make_shared<FieldTower>(*base);
  t->parent_ = base;
  const std::size_t d = monic_poly.size() - 1;
  Level lv;
  lv.name = name;
  lv.degree = d;
  lv.block = base->degree();
  for (std::size_t i = 0; i < d; ++i) {
    FieldElement c = monic_poly[i].embed(base);
    if (base->kind() == BaseKind::Prime)
      lv.poly_mod.insert(lv.poly_mod.end(), c.flat_mod().begin(), c.flat_mod().end());
    else
      lv.poly_rat.insert(lv.poly_rat.end(), c.flat_rat().begin(), c.flat_rat().end());
  }
  t->levels_.push_back(std::move(lv));
  t->degree_ = base->degree() * d;
  t->min_poly_.clear();
  for (const auto& c : monic_poly) t->min_poly_.push_back(c.embed(base));
  return t;
}

const std::string& FieldTower::generator_name() const {
  static const std::string empty;
  return levels_.empty() ? empty : levels_.back().name;
}

std::vector<std::string> FieldTower::generator_names() const {
  std::vector<std::string> out;
  for (const auto& lv : levels_) out.push_back(lv.name);
  return out;
}

bool FieldTower::embeds_into(const FieldTower& other) const {
  if (this == &other) return true;
  if (kind_ != other.kind_ || p_ != other.p_) return false;
  if (levels_.size() > other.levels_.size()) return false;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const Level& a = levels_[i];
    const Level& b = other.levels_[i];
    if (a.name != b.name || a.degree != b.degree || a.poly_mod != b.poly_mod || a.poly_rat != b.poly_rat)
      return false;
  }
  return true;
}

bool FieldTower::same_as(const FieldTower& other) const {
  return levels_.size() == other.levels_.size() && embeds_into(other);
}

std::string FieldTower::describe() const {
  std::ostringstream os;
  if (kind_ == BaseKind::Rationals)
    os << "QQ";
  else
    os << "GF(" << p_ << ")";
  const FieldTower* cur = this;
  std::vector<const FieldTower*> chain;
  while (cur && !cur->levels_.empty()) {
    chain.push_back(cur);
    cur = cur->parent_.get();
  }
  std::reverse(chain.begin(), chain.end());
  for (const FieldTower* t : chain) {
    os << "[" << t->levels_.back().name << ": ";
    bool first = true;
    for (std::size_t i = t->min_poly_.size(); i-- > 0;) {
      const FieldElement& c = t->min_poly_[i];
      if (c.is_zero()) continue;
      std::string coef = c.to_string();
      std::string mono = i == 0 ? "" : (i == 1 ? "T" : "T^" + std::to_string(i));
      std::string term;
      if (i == 0)
        term = coef;
      else if (coef == "1")
        term = mono;
      else if (coef == "-1")
        term = "-" + mono;
      else
        term = (c.needs_parens() ? "(" + coef + ")" : coef) + "*" + mono;
      if (!first && term[0] != '-') os << "+";
      os << term;
      first = false;
    }
    os << "]";
  }
  return os.str();
}

Tower common_tower(const Tower& a, const Tower& b) {
  if (a == b) return a;
  if (!a || !b) throw Error(ErrorCode::TowerMismatch, "uninitialised field element");
  if (a->embeds_into(*b)) return b;
  if (b->embeds_into(*a)) return a;
  throw Error(ErrorCode::TowerMismatch, a->describe() + " vs " + b->describe());
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(Tower tower) : t_(std::move(tower)) {
  if (t_->kind() == BaseKind::Prime)
    m_.assign(t_->degree(), 0);
  else
    q_.assign(t_->degree(), Rational(0));
}

FieldElement FieldElement::from_int(const Tower& tower, long long v) {
  FieldElement e(tower);
  if (tower->kind() == BaseKind::Prime)
    e.m_[0] = tower->prime_ops().from_int(v);
  else
    e.q_[0] = Rational(static_cast<long>(v));
  return e;
}

FieldElement FieldElement::from_rational(const Tower& tower, const Rational& q) {
  FieldElement e(tower);
  if (tower->kind() == BaseKind::Prime) {
    PrimeOps ops = tower->prime_ops();
    Integer p(std::to_string(tower->modulus()));
    Integer num = q.get_num() % p;
    Integer den = q.get_den() % p;
    if (num < 0) num += p;
    if (den == 0) throw Error(ErrorCode::ZeroDivisor, "denominator divisible by the characteristic");
    std::uint64_t n = std::stoull(num.get_str());
    std::uint64_t d = std::stoull(den.get_str());
    e.m_[0] = ops.mul(n, ops.inv(d));
  } else {
    e.q_[0] = q;
  }
  return e;
}

FieldElement FieldElement::generator(const Tower& tower, std::size_t level) {
  if (level == 0 || level > tower->level_count())
    throw Error(ErrorCode::InvalidArgument, "no generator at level " + std::to_string(level));
  // Position of a_level in the flat basis: the block stride of that level.
  const auto& lv = tower->levels()[level - 1];
  FieldElement e(tower);
  if (lv.degree == 1) {
    // Degree-one extension: the generator equals -f_0.
    FieldElement c(tower);
    if (tower->kind() == BaseKind::Prime) {
      for (std::size_t k = 0; k < lv.block; ++k) e.m_[k] = tower->prime_ops().neg(lv.poly_mod[k]);
    } else {
      for (std::size_t k = 0; k < lv.block; ++k) e.q_[k] = -lv.poly_rat[k];
    }
    return e;
  }
  if (tower->kind() == BaseKind::Prime)
    e.m_[lv.block] = 1;
  else
    e.q_[lv.block] = 1;
  return e;
}

FieldElement FieldElement::from_flat_mod(const Tower& tower, std::vector<std::uint64_t> c) {
  FieldElement e;
  e.t_ = tower;
  e.m_ = std::move(c);
  return e;
}

FieldElement FieldElement::from_flat_rat(const Tower& tower, std::vector<Rational> c) {
  FieldElement e;
  e.t_ = tower;
  e.q_ = std::move(c);
  return e;
}

bool FieldElement::is_zero() const {
  for (auto v : m_)
    if (v) return false;
  for (const auto& v : q_)
    if (sgn(v) != 0) return false;
  return true;
}

bool FieldElement::is_one() const {
  if (!t_) return false;
  if (t_->kind() == BaseKind::Prime) {
    if (m_[0] != 1) return false;
    for (std::size_t i = 1; i < m_.size(); ++i)
      if (m_[i]) return false;
    return true;
  }
  if (q_[0] != 1) return false;
  for (std::size_t i = 1; i < q_.size(); ++i)
    if (sgn(q_[i]) != 0) return false;
  return true;
}

bool FieldElement::in_base() const {
  for (std::size_t i = 1; i < m_.size(); ++i)
    if (m_[i]) return false;
  for (std::size_t i = 1; i < q_.size(); ++i)
    if (sgn(q_[i]) != 0) return false;
  return true;
}

FieldElement FieldElement::embed(const Tower& target) const {
  if (target == t_) return *this;
  if (!t_->embeds_into(*target))
    throw Error(ErrorCode::TowerMismatch, "cannot embed " + t_->describe() + " into " + target->describe());
  FieldElement e(target);
  if (target->kind() == BaseKind::Prime)
    std::copy(m_.begin(), m_.end(), e.m_.begin());
  else
    std::copy(q_.begin(), q_.end(), e.q_.begin());
  return e;
}

FieldElement FieldElement::operator-() const {
  FieldElement e = *this;
  if (t_->kind() == BaseKind::Prime) {
    PrimeOps ops = t_->prime_ops();
    for (auto& v : e.m_) v = ops.neg(v);
  } else {
    for (auto& v : e.q_) v = -v;
  }
  return e;
}

namespace {

template <class F>
FieldElement combine(const FieldElement& a, const FieldElement& b, F&& f) {
  Tower t = common_tower(a.tower(), b.tower());
  return f(a.embed(t), b.embed(t), t);
}

}  // namespace

FieldElement FieldElement::operator+(const FieldElement& o) const {
  if (t_ == o.t_) {
    FieldElement e = *this;
    if (t_->kind() == BaseKind::Prime) {
      PrimeOps ops = t_->prime_ops();
      for (std::size_t i = 0; i < m_.size(); ++i) e.m_[i] = ops.add(m_[i], o.m_[i]);
    } else {
      for (std::size_t i = 0; i < q_.size(); ++i) e.q_[i] += o.q_[i];
    }
    return e;
  }
  return combine(*this, o, [](const FieldElement& x, const FieldElement& y, const Tower&) { return x + y; });
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  if (t_ == o.t_) {
    FieldElement e = *this;
    if (t_->kind() == BaseKind::Prime) {
      PrimeOps ops = t_->prime_ops();
      for (std::size_t i = 0; i < m_.size(); ++i) e.m_[i] = ops.sub(m_[i], o.m_[i]);
    } else {
      for (std::size_t i = 0; i < q_.size(); ++i) e.q_[i] -= o.q_[i];
    }
    return e;
  }
  return combine(*this, o, [](const FieldElement& x, const FieldElement& y, const Tower&) { return x - y; });
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  if (t_ == o.t_) {
    FieldElement e(t_);
    if (t_->kind() == BaseKind::Prime) {
      PrimeOps ops = t_->prime_ops();
      if (m_.size() == 1)
        e.m_[0] = ops.mul(m_[0], o.m_[0]);
      else
        t_->mul_flat(ops, m_.data(), o.m_.data(), e.m_.data());
    } else {
      RationalOps ops;
      if (q_.size() == 1)
        e.q_[0] = q_[0] * o.q_[0];
      else
        t_->mul_flat(ops, q_.data(), o.q_.data(), e.q_.data());
    }
    return e;
  }
  return combine(*this, o, [](const FieldElement& x, const FieldElement& y, const Tower&) { return x * y; });
}

FieldElement FieldElement::inverse() const {
  FieldElement e(t_);
  if (t_->kind() == BaseKind::Prime)
    t_->inv_flat(t_->prime_ops(), m_.data(), e.m_.data());
  else
    t_->inv_flat(RationalOps{}, q_.data(), e.q_.data());
  return e;
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  if (o.is_zero()) throw Error(ErrorCode::ZeroDivisor, "division by zero");
  return *this * o.inverse();
}

FieldElement FieldElement::pow(std::uint64_t e) const {
  FieldElement r = from_int(t_, 1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

FieldElement FieldElement::pow(const Integer& e) const {
  FieldElement r = from_int(t_, 1), b = *this;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = r * r;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = r * b;
  }
  return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (t_ == o.t_) return m_ == o.m_ && q_ == o.q_;
  Tower t = common_tower(t_, o.t_);
  FieldElement a = embed(t), b = o.embed(t);
  return a.m_ == b.m_ && a.q_ == b.q_;
}

namespace {

std::string base_string(const FieldTower& t, const std::vector<std::uint64_t>& m, const std::vector<Rational>& q,
                        std::size_t idx) {
  if (t.kind() == BaseKind::Prime) {
    std::uint64_t v = m[idx], p = t.modulus();
    if (v > p / 2) return "-" + std::to_string(p - v);
    return std::to_string(v);
  }
  return q[idx].get_str();
}

bool base_zero(const FieldTower& t, const std::vector<std::uint64_t>& m, const std::vector<Rational>& q,
               std::size_t idx) {
  return t.kind() == BaseKind::Prime ? m[idx] == 0 : sgn(q[idx]) == 0;
}

// Returns (text, number_of_terms) for the sub-block [offset, offset + size of level) at `level`.
std::pair<std::string, int> format_level(const FieldTower& t, const std::vector<std::uint64_t>& m,
                                         const std::vector<Rational>& q, std::size_t level, std::size_t offset) {
  if (level == 0) {
    if (base_zero(t, m, q, offset)) return {"0", 0};
    return {base_string(t, m, q, offset), 1};
  }
  const auto& lv = t.levels()[level - 1];
  std::string out;
  int terms = 0;
  for (std::size_t i = lv.degree; i-- > 0;) {
    auto [coef, n] = format_level(t, m, q, level - 1, offset + i * lv.block);
    if (n == 0) continue;
    std::string mono = i == 0 ? "" : (i == 1 ? lv.name : lv.name + "^" + std::to_string(i));
    std::string term;
    if (i == 0)
      term = coef;
    else if (coef == "1")
      term = mono;
    else if (coef == "-1")
      term = "-" + mono;
    else
      term = (n > 1 ? "(" + coef + ")" : coef) + "*" + mono;
    if (terms > 0 && term[0] != '-') out += "+";
    out += term;
    terms += n > 1 && i == 0 ? n : 1;
  }
  if (terms == 0) return {"0", 0};
  return {out, terms};
}

}  // namespace

std::string FieldElement::to_string() const {
  return format_level(*t_, m_, q_, t_->level_count(), 0).first;
}

bool FieldElement::needs_parens() const {
  return format_level(*t_, m_, q_, t_->level_count(), 0).second > 1;
}

std::size_t FieldElement::hash() const {
  std::size_t h = 0;
  for (auto v : m_) h = h * 1000003u ^ std::hash<std::uint64_t>{}(v);
  for (const auto& v : q_) h = h * 1000003u ^ std::hash<std::string>{}(v.get_str());
  return h;
}

}  // namespace icm
