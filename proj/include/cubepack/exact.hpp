#pragma once

// Exact arithmetic: big rationals, univariate polynomials, rational
// functions and power series truncated in x = 1/(N-1).

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cubepack {

using BigInt = mpz_class;
using Rational = mpq_class;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dense polynomial over Q, coefficients stored from degree 0 upwards.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(std::initializer_list<long> coeffs);

  static Polynomial constant(const Rational& c);
  static Polynomial monomial(int degree, const Rational& c = 1);
  /// The indeterminate shifted by `a`, i.e. X + a.
  static Polynomial linear(const Rational& a);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Rational coeff(int k) const;
  const Rational& leading() const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Rational operator()(const Rational& x) const;
  Polynomial monic() const;
  /// p(q(X)).
  Polynomial compose(const Polynomial& q) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division; throws on division by zero.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  /// Monic gcd (zero if both are zero).
  static Polynomial gcd(Polynomial a, Polynomial b);

  /// Human-readable form in variable `var`, e.g. "4n^2-8n" or
  /// "(28n^3-153n^2+149n)/3" when coefficients share a denominator.
  std::string to_string(char var = 'n') const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// num/den with gcd(num, den) = 1 and monic denominator.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Polynomial::constant(1)) {}
  RationalFunction(const Rational& c);  // NOLINT: implicit constant lift
  RationalFunction(Polynomial num, Polynomial den);
  explicit RationalFunction(Polynomial num) : RationalFunction(std::move(num), Polynomial::constant(1)) {}

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Rational operator()(const Rational& x) const;

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string(char var = 'N') const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

/// Truncated power series a_0 + a_1 x + ... + a_K x^K. Arithmetic is exact
/// through order K; both operands of a binary operation must share K.
class Series {
 public:
  Series() = default;
  explicit Series(int order) : coeffs_(static_cast<std::size_t>(order) + 1) {}
  Series(int order, std::vector<Rational> coeffs);

  static Series constant(int order, const Rational& c);
  static Series monomial(int order, int degree, const Rational& c = 1);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  Rational& operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  /// Index of the first nonzero coefficient, or -1 when all vanish.
  int valuation() const;
  bool is_zero() const { return valuation() < 0; }

  /// Multiplicative inverse; requires a nonzero constant term.
  Series inverse() const;
  Rational evaluate(const Rational& x) const;

  Series& operator+=(const Series& o);
  Series& operator*=(const Series& o);
  Series& operator*=(const Rational& c);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator*(Series a, const Series& b) { return a *= b; }
  friend Series operator*(Series a, const Rational& c) { return a *= c; }
  friend bool operator==(const Series& a, const Series& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Rational> coeffs_;
};

/// Expansion of f(N) in powers of x = 1/(N-1) through order K. Throws
/// ArithmeticError when f has a pole at N = infinity.
Series expand(const RationalFunction& f, int order);

/// Unique polynomial of degree <= `degree` through the first degree+1
/// points; any further points must lie on it or ArithmeticError is thrown.
Polynomial interpolate(const std::vector<std::pair<Rational, Rational>>& points, int degree);

}  // namespace cubepack
