#include "cubepack/exact.hpp"

#include <algorithm>
#include <sstream>

namespace cubepack {

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<long> coeffs) {
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

Polynomial Polynomial::monomial(int degree, const Rational& c) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear(const Rational& a) { return Polynomial(std::vector<Rational>{a, 1}); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

const Rational& Polynomial::leading() const {
  if (is_zero()) throw ArithmeticError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Polynomial p = *this;
  const Rational lc = leading();
  for (auto& c : p.coeffs_) c /= lc;
  return p;
}

Polynomial Polynomial::compose(const Polynomial& q) const {
  Polynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= q;
    acc += constant(*it);
  }
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> r(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(r);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
  Polynomial r = a;
  std::vector<Rational> q(std::max(0, a.degree() - b.degree() + 1));
  const Rational& lb = b.leading();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int shift = r.degree() - b.degree();
    const Rational c = r.leading() / lb;
    q[static_cast<std::size_t>(shift)] = c;
    r -= monomial(shift, c) * b;
  }
  return {Polynomial(std::move(q)), r};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string Polynomial::to_string(char var) const {
  if (is_zero()) return "0";
  BigInt den = 1;
  for (const auto& c : coeffs_) {
    if (c != 0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  }
  std::ostringstream os;
  bool first = true;
  for (int d = degree(); d >= 0; --d) {
    const Rational& c = coeffs_[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    BigInt k = c.get_num() * (den / c.get_den());
    if (k < 0) {
      os << '-';
      k = -k;
    } else if (!first) {
      os << '+';
    }
    first = false;
    if (d == 0 || k != 1) os << k.get_str();
    if (d >= 1) os << var;
    if (d >= 2) os << '^' << d;
  }
  if (den == 1) return os.str();
  return "(" + os.str() + ")/" + den.get_str();
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(const Rational& c) : num_(Polynomial::constant(c)), den_(Polynomial::constant(1)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ArithmeticError("rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(1);
    return;
  }
  const Polynomial g = Polynomial::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = Polynomial::divmod(num_, g).first;
    den_ = Polynomial::divmod(den_, g).first;
  }
  const Rational lc = den_.leading();
  if (lc != 1) {
    num_ *= Rational(1) / lc;
    den_ *= Rational(1) / lc;
  }
}

Rational RationalFunction::operator()(const Rational& x) const {
  const Rational d = den_(x);
  if (d == 0) throw ArithmeticError("rational function evaluated at a pole");
  return num_(x) / d;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw ArithmeticError("division by the zero rational function");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

std::string RationalFunction::to_string(char var) const {
  if (den_.degree() == 0) return num_.to_string(var);
  return "[" + num_.to_string(var) + "]/[" + den_.to_string(var) + "]";
}

// ---------------------------------------------------------------------------
// Series

Series::Series(int order, std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  coeffs_.resize(static_cast<std::size_t>(order) + 1);
}

Series Series::constant(int order, const Rational& c) {
  Series s(order);
  s.coeffs_[0] = c;
  return s;
}

Series Series::monomial(int order, int degree, const Rational& c) {
  Series s(order);
  if (degree <= order) s.coeffs_[static_cast<std::size_t>(degree)] = c;
  return s;
}

int Series::valuation() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] != 0) return static_cast<int>(k);
  }
  return -1;
}

Series Series::inverse() const {
  if (coeffs_.empty() || coeffs_[0] == 0) throw ArithmeticError("series inverse needs a nonzero constant term");
  const int K = order();
  Series r(K);
  r.coeffs_[0] = Rational(1) / coeffs_[0];
  for (int k = 1; k <= K; ++k) {
    Rational acc = 0;
    for (int j = 1; j <= k; ++j) acc += coeffs_[static_cast<std::size_t>(j)] * r.coeffs_[static_cast<std::size_t>(k - j)];
    r.coeffs_[static_cast<std::size_t>(k)] = -acc * r.coeffs_[0];
  }
  return r;
}

Rational Series::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Series& Series::operator+=(const Series& o) {
  if (o.order() != order()) throw ArithmeticError("series truncation orders differ");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

Series& Series::operator*=(const Series& o) {
  if (o.order() != order()) throw ArithmeticError("series truncation orders differ");
  const std::size_t n = coeffs_.size();
  std::vector<Rational> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (o.coeffs_[j] != 0) r[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  coeffs_ = std::move(r);
  return *this;
}

Series& Series::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

// ---------------------------------------------------------------------------

namespace {

// x^d * p(1 + 1/x) as a polynomial in x, for d >= deg p.
Polynomial homogenize_at_infinity(const Polynomial& p, int d) {
  Polynomial acc;
  const Polynomial one_plus_x = Polynomial::linear(1);
  Polynomial power = Polynomial::constant(1);  // (1+x)^i
  for (int i = 0; i <= p.degree(); ++i) {
    if (p.coeff(i) != 0) acc += Polynomial::monomial(d - i, p.coeff(i)) * power;
    power *= one_plus_x;
  }
  return acc;
}

}  // namespace

Series expand(const RationalFunction& f, int order) {
  if (order < 0) throw std::invalid_argument("negative expansion order");
  if (f.is_zero()) return Series(order);
  const int dp = f.num().degree();
  const int dq = f.den().degree();
  if (dp > dq) throw ArithmeticError("rational function has a pole at N = infinity");
  // With N = 1 + 1/x, f = P~(x) / Q~(x) where both carry the factor x^(d-dq).
  const int d = dq;
  const Polynomial pt = homogenize_at_infinity(f.num(), d);
  const Polynomial qt = homogenize_at_infinity(f.den(), d);
  std::vector<Rational> pc(pt.coeffs().begin(), pt.coeffs().end());
  std::vector<Rational> qc(qt.coeffs().begin(), qt.coeffs().end());
  if (pc.size() > static_cast<std::size_t>(order) + 1) pc.resize(static_cast<std::size_t>(order) + 1);
  if (qc.size() > static_cast<std::size_t>(order) + 1) qc.resize(static_cast<std::size_t>(order) + 1);
  Series ps(order, std::move(pc));
  Series qs(order, std::move(qc));
  return ps * qs.inverse();
}

Polynomial interpolate(const std::vector<std::pair<Rational, Rational>>& points, int degree) {
  if (degree < 0) throw std::invalid_argument("negative interpolation degree");
  const std::size_t need = static_cast<std::size_t>(degree) + 1;
  if (points.size() < need) throw std::invalid_argument("not enough sample points for interpolation");
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i].first == points[j].first) throw std::invalid_argument("repeated interpolation abscissa");
    }
  }
  Polynomial result;
  for (std::size_t i = 0; i < need; ++i) {
    Polynomial basis = Polynomial::constant(points[i].second);
    for (std::size_t j = 0; j < need; ++j) {
      if (j == i) continue;
      basis *= Polynomial::linear(-points[j].first);
      basis *= Rational(1) / (points[i].first - points[j].first);
    }
    result += basis;
  }
  for (std::size_t i = need; i < points.size(); ++i) {
    if (result(points[i].first) != points[i].second) {
      throw ArithmeticError("sample points are not on a polynomial of degree " + std::to_string(degree));
    }
  }
  return result;
}

}  // namespace cubepack
