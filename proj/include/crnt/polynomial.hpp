#pragma once

// Sparse multivariate polynomials and rational functions with exact rational
// coefficients. Variables are integer symbol ids; names live in the owning
// network's symbol table and are supplied at print time through a SymbolNamer.

#include "crnt/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace crnt {

using SymbolId = std::uint32_t;
using SymbolNamer = std::function<std::string(SymbolId)>;

/// Default namer: "s0", "s1", ...
std::string default_symbol_name(SymbolId id);

class Monomial {
 public:
  using Factor = std::pair<SymbolId, std::uint32_t>;

  Monomial() = default;
  static Monomial variable(SymbolId id, std::uint32_t exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t exponent(SymbolId id) const;
  bool is_one() const { return factors_.empty(); }
  bool divides(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  /// Throws std::domain_error unless divisor divides *this.
  Monomial quotient(const Monomial& divisor) const;
  Monomial without(SymbolId id) const;

  static Monomial gcd(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;  // sorted by id, exponents > 0
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic order; the lowest symbol id is most significant.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrlexLess>;

  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)
  Polynomial(int constant) : Polynomial(Rational(constant)) {}  // NOLINT
  static Polynomial variable(SymbolId id);
  static Polynomial term(const Monomial& m, const Rational& c);

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;

  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;

  std::uint32_t total_degree() const;
  std::uint32_t degree_in(SymbolId id) const;
  bool contains(SymbolId id) const { return degree_in(id) > 0; }
  std::set<SymbolId> symbols() const;
  bool is_multilinear() const;
  bool has_positive_coefficients() const;

  /// Coefficient of id^d, as a polynomial in the remaining symbols.
  Polynomial coefficient_of(SymbolId id, std::uint32_t d) const;
  Polynomial derivative(SymbolId id) const;
  Polynomial substitute(SymbolId id, const Polynomial& value) const;
  Polynomial substitute(const std::map<SymbolId, Polynomial>& values) const;

  /// Throws std::out_of_range if a symbol has no value.
  Rational evaluate(const std::map<SymbolId, Rational>& values) const;
  /// values[id] is the value of symbol id.
  double evaluate(std::span<const double> values) const;

  Monomial monomial_content() const;
  Polynomial divide_monomial(const Monomial& m) const;
  /// Positive rational c such that (*this / c) has coprime integer coefficients.
  Rational content() const;
  Polynomial pow(unsigned e) const;

  std::string to_string(const SymbolNamer& name = default_symbol_name) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(Polynomial a, int c) { return a *= Rational(c); }
  friend Polynomial operator*(int c, Polynomial a) { return a *= Rational(c); }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

/// Total order on polynomials, used for keyed containers.
struct PolynomialLess {
  bool operator()(const Polynomial& a, const Polynomial& b) const;
};

/// a / b when the division is known to be exact; throws std::domain_error
/// otherwise (including b == 0).
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);

class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(const Polynomial& num);  // NOLINT(google-explicit-constructor)
  RationalFunction(const Rational& c) : RationalFunction(Polynomial(c)) {}  // NOLINT
  RationalFunction(int c) : RationalFunction(Polynomial(c)) {}  // NOLINT
  /// Throws std::domain_error if den is the zero polynomial.
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  std::set<SymbolId> symbols() const;
  bool contains(SymbolId id) const { return num_.contains(id) || den_.contains(id); }

  RationalFunction pow(int e) const;
  RationalFunction substitute(SymbolId id, const RationalFunction& value) const;
  Rational evaluate(const std::map<SymbolId, Rational>& values) const;
  double evaluate(std::span<const double> values) const;

  std::string to_string(const SymbolNamer& name = default_symbol_name) const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  /// Throws std::domain_error on division by zero.
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction operator-() const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

/// Equality by cross-multiplication: a.num * b.den == b.num * a.den.
bool rf_equal(const RationalFunction& a, const RationalFunction& b);

/// p(id := value) as a rational function.
RationalFunction substitute(const Polynomial& p, SymbolId id, const RationalFunction& value);

/// constant * prod(factor^exponent). Factors are primitive integer
/// polynomials with positive leading coefficient, so identical factors merge
/// and cancel under multiplication.
class Factorization {
 public:
  Factorization() = default;
  explicit Factorization(const Rational& constant) : constant_(constant) {}

  const Rational& constant() const { return constant_; }
  const std::map<Polynomial, int, PolynomialLess>& factors() const { return factors_; }

  Factorization& operator*=(const Factorization& o);
  friend Factorization operator*(Factorization a, const Factorization& b) { return a *= b; }
  Factorization pow(int e) const;

  RationalFunction expand() const;
  Polynomial numerator() const;
  Polynomial denominator() const;

  /// Adds factor^e, normalizing the factor and folding its scale into the constant.
  void multiply_factor(const Polynomial& factor, int e);

 private:
  Rational constant_{1};
  std::map<Polynomial, int, PolynomialLess> factors_;
};

/// Splits off the monomial content and, for multilinear remainders, separates
/// variable-disjoint factors (two variables u, v belong to different factors
/// of a multilinear p iff p * d2p/dudv == dp/du * dp/dv). Non-multilinear
/// remainders are kept whole.
Factorization factor(const Polynomial& p);
Factorization factor(const RationalFunction& f);

}  // namespace crnt
