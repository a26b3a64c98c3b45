#include "crnt/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace crnt {

namespace {

Rational rational_pow(const Rational& base, int e) {
  Rational result(1);
  Rational b = e < 0 ? Rational(1) / base : base;
  for (int i = 0; i < std::abs(e); ++i) result *= b;
  return result;
}

}  // namespace

std::string default_symbol_name(SymbolId id) { return "s" + std::to_string(id); }

Rational parse_rational(const std::string& text) {
  // Signed decimal integer; gmp would read a leading zero as octal.
  auto parse_int = [&](const std::string& s) {
    const std::size_t sign = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (sign >= s.size() || !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(sign), s.end(),
                                         [](char c) { return c >= '0' && c <= '9'; })) {
      throw std::invalid_argument("malformed rational literal '" + text + "'");
    }
    const auto first = s.find_first_not_of('0', sign);
    const Integer magnitude = first == std::string::npos ? Integer(0) : Integer(s.substr(first));
    return s[0] == '-' ? Integer(-magnitude) : magnitude;
  };
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  const Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  return Rational(parse_int(text.substr(0, slash))) / Rational(den);
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(SymbolId id, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) {
    m.factors_.emplace_back(id, exponent);
    m.degree_ = exponent;
  }
  return m;
}

std::uint32_t Monomial::exponent(SymbolId id) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{id, 0},
                             [](const Factor& a, const Factor& b) { return a.first < b.first; });
  return (it != factors_.end() && it->first == id) ? it->second : 0;
}

bool Monomial::divides(const Monomial& other) const {
  for (const auto& [id, e] : factors_) {
    if (other.exponent(id) < e) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  out.degree_ = degree_ + other.degree_;
  return out;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial out;
  for (const auto& [id, e] : factors_) {
    const auto d = divisor.exponent(id);
    if (d > e) throw std::domain_error("monomial does not divide");
    if (e > d) out.factors_.emplace_back(id, e - d);
  }
  for (const auto& [id, e] : divisor.factors_) {
    if (exponent(id) < e) throw std::domain_error("monomial does not divide");
  }
  out.degree_ = degree_ - divisor.degree_;
  return out;
}

Monomial Monomial::without(SymbolId id) const {
  Monomial out;
  for (const auto& f : factors_) {
    if (f.first != id) {
      out.factors_.push_back(f);
      out.degree_ += f.second;
    }
  }
  return out;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (const auto& [id, e] : a.factors_) {
    const auto m = std::min(e, b.exponent(id));
    if (m > 0) {
      out.factors_.emplace_back(id, m);
      out.degree_ += m;
    }
  }
  return out;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  for (; i < fa.size() && i < fb.size(); ++i) {
    if (fa[i].first != fb[i].first) {
      // The monomial with the smaller id present has the larger exponent there.
      return fa[i].first > fb[i].first;
    }
    if (fa[i].second != fb[i].second) return fa[i].second < fb[i].second;
  }
  return false;  // equal degree and equal prefix implies equality
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(const Rational& constant) {
  if (constant != 0) terms_.emplace(Monomial(), constant);
}

Polynomial Polynomial::variable(SymbolId id) { return term(Monomial::variable(id), Rational(1)); }

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p;
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_value() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
  return terms_.rbegin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
  return terms_.rbegin()->second;
}

std::uint32_t Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

std::uint32_t Polynomial::degree_in(SymbolId id) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(id));
  return d;
}

std::set<SymbolId> Polynomial::symbols() const {
  std::set<SymbolId> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) out.insert(f.first);
  }
  return out;
}

bool Polynomial::is_multilinear() const {
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) {
      if (f.second > 1) return false;
    }
  }
  return true;
}

bool Polynomial::has_positive_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
}

Polynomial Polynomial::coefficient_of(SymbolId id, std::uint32_t d) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    if (m.exponent(id) == d) out.add_term(m.without(id), c);
  }
  return out;
}

Polynomial Polynomial::derivative(SymbolId id) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    const auto e = m.exponent(id);
    if (e == 0) continue;
    out.add_term(m.without(id) * Monomial::variable(id, e - 1), c * e);
  }
  return out;
}

Polynomial Polynomial::substitute(SymbolId id, const Polynomial& value) const {
  return substitute(std::map<SymbolId, Polynomial>{{id, value}});
}

Polynomial Polynomial::substitute(const std::map<SymbolId, Polynomial>& values) const {
  Polynomial out;
  std::map<std::pair<SymbolId, std::uint32_t>, Polynomial> powers;
  for (const auto& [m, c] : terms_) {
    Monomial kept;
    Polynomial factor(c);
    for (const auto& [id, e] : m.factors()) {
      auto it = values.find(id);
      if (it == values.end()) {
        kept = kept * Monomial::variable(id, e);
        continue;
      }
      auto key = std::make_pair(id, e);
      auto pit = powers.find(key);
      if (pit == powers.end()) pit = powers.emplace(key, it->second.pow(e)).first;
      factor *= pit->second;
    }
    out += factor * term(kept, Rational(1));
  }
  return out;
}

Rational Polynomial::evaluate(const std::map<SymbolId, Rational>& values) const {
  Rational sum(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [id, e] : m.factors()) t *= rational_pow(values.at(id), static_cast<int>(e));
    sum += t;
  }
  return sum;
}

double Polynomial::evaluate(std::span<const double> values) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = to_double(c);
    for (const auto& [id, e] : m.factors()) {
      if (id >= values.size()) throw std::out_of_range("no value for symbol");
      t *= std::pow(values[id], static_cast<int>(e));
    }
    sum += t;
  }
  return sum;
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return Monomial();
  Monomial g = terms_.begin()->first;
  for (const auto& [m, c] : terms_) g = Monomial::gcd(g, m);
  return g;
}

Polynomial Polynomial::divide_monomial(const Monomial& m) const {
  if (m.is_one()) return *this;
  Polynomial out;
  for (const auto& [t, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), t.quotient(m), c);
  return out;
}

Rational Polynomial::content() const {
  if (terms_.empty()) return Rational(1);
  Integer lcm_den(1);
  for (const auto& [m, c] : terms_) lcm_den = boost::multiprecision::lcm(lcm_den, denominator_of(c));
  Integer g(0);
  for (const auto& [m, c] : terms_) {
    g = boost::multiprecision::gcd(g, numerator_of(c * Rational(lcm_den)));
  }
  return Rational(abs(g)) / Rational(lcm_den);
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

std::string Polynomial::to_string(const SymbolNamer& name) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (m.is_one() || mag != 1) {
      os << mag.str();
      wrote = true;
    }
    for (const auto& [id, e] : m.factors()) {
      if (wrote) os << "*";
      os << name(id);
      if (e > 1) os << "^" << e;
      wrote = true;
    }
  }
  return os.str();
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

bool PolynomialLess::operator()(const Polynomial& a, const Polynomial& b) const {
  GrlexLess mono_less;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (mono_less(ia->first, ib->first)) return true;
    if (mono_less(ib->first, ia->first)) return false;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ia == a.terms().end() && ib != b.terms().end();
}

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  Polynomial quotient;
  Polynomial rest = a;
  const Monomial& lb = b.leading_monomial();
  const Rational& cb = b.leading_coefficient();
  while (!rest.is_zero()) {
    const Monomial& lr = rest.leading_monomial();
    if (!lb.divides(lr)) throw std::domain_error("polynomial division is not exact");
    const Polynomial t = Polynomial::term(lr.quotient(lb), rest.leading_coefficient() / cb);
    quotient += t;
    rest -= t * b;
  }
  return quotient;
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(const Polynomial& num) : num_(num), den_(1) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  const Monomial g = Monomial::gcd(num_.monomial_content(), den_.monomial_content());
  if (!g.is_one()) {
    num_ = num_.divide_monomial(g);
    den_ = den_.divide_monomial(g);
  }
  Rational scale = Rational(1) / den_.content();
  if (den_.leading_coefficient() < 0) scale = -scale;
  if (scale != 1) {
    num_ *= scale;
    den_ *= scale;
  }
}

std::set<SymbolId> RationalFunction::symbols() const {
  auto out = num_.symbols();
  auto d = den_.symbols();
  out.insert(d.begin(), d.end());
  return out;
}

RationalFunction RationalFunction::pow(int e) const {
  if (e < 0) {
    if (num_.is_zero()) throw std::domain_error("negative power of zero");
    return RationalFunction(den_.pow(static_cast<unsigned>(-e)), num_.pow(static_cast<unsigned>(-e)));
  }
  return RationalFunction(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

RationalFunction RationalFunction::substitute(SymbolId id, const RationalFunction& value) const {
  return crnt::substitute(num_, id, value) / crnt::substitute(den_, id, value);
}

Rational RationalFunction::evaluate(const std::map<SymbolId, Rational>& values) const {
  const Rational d = den_.evaluate(values);
  if (d == 0) throw std::domain_error("denominator vanishes at evaluation point");
  return num_.evaluate(values) / d;
}

double RationalFunction::evaluate(std::span<const double> values) const {
  return num_.evaluate(values) / den_.evaluate(values);
}

std::string RationalFunction::to_string(const SymbolNamer& name) const {
  if (den_.is_constant()) return num_.to_string(name);
  auto wrap = [&](const Polynomial& p) {
    const bool single = p.size() == 1 && p.terms().begin()->second > 0;
    return single ? p.to_string(name) : "(" + p.to_string(name) + ")";
  };
  std::string d = den_.to_string(name);
  const bool den_single = den_.size() == 1 && den_.terms().begin()->first.factors().size() <= 1 &&
                          den_.terms().begin()->second == 1;
  return wrap(num_) + "/" + (den_single ? d : "(" + d + ")");
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero rational function");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction out = *this;
  out.num_ = -out.num_;
  return out;
}

bool rf_equal(const RationalFunction& a, const RationalFunction& b) {
  return a.num() * b.den() == b.num() * a.den();
}

RationalFunction substitute(const Polynomial& p, SymbolId id, const RationalFunction& value) {
  const auto degree = p.degree_in(id);
  if (degree == 0) return RationalFunction(p);
  // p = sum_d c_d v^d  ->  sum_d c_d r^d s^(D-d) / s^D  with v = r/s
  std::vector<Polynomial> num_pows{Polynomial(1)};
  std::vector<Polynomial> den_pows{Polynomial(1)};
  for (std::uint32_t d = 1; d <= degree; ++d) {
    num_pows.push_back(num_pows.back() * value.num());
    den_pows.push_back(den_pows.back() * value.den());
  }
  Polynomial total;
  for (std::uint32_t d = 0; d <= degree; ++d) {
    const Polynomial c = p.coefficient_of(id, d);
    if (c.is_zero()) continue;
    total += c * num_pows[d] * den_pows[degree - d];
  }
  return RationalFunction(total, den_pows[degree]);
}

// ---------------------------------------------------------------------------
// Factorization

void Factorization::multiply_factor(const Polynomial& factor, int e) {
  if (e == 0) return;
  if (factor.is_zero()) throw std::domain_error("zero factor");
  if (factor.is_constant()) {
    constant_ *= rational_pow(factor.constant_value(), e);
    return;
  }
  Rational scale = factor.content();
  if (factor.leading_coefficient() < 0) scale = -scale;
  Polynomial normalized = factor * (Rational(1) / scale);
  constant_ *= rational_pow(scale, e);
  auto [it, inserted] = factors_.try_emplace(std::move(normalized), e);
  if (!inserted) {
    it->second += e;
    if (it->second == 0) factors_.erase(it);
  }
}

Factorization& Factorization::operator*=(const Factorization& o) {
  constant_ *= o.constant_;
  for (const auto& [f, e] : o.factors_) {
    auto [it, inserted] = factors_.try_emplace(f, e);
    if (!inserted) {
      it->second += e;
      if (it->second == 0) factors_.erase(it);
    }
  }
  return *this;
}

Factorization Factorization::pow(int e) const {
  Factorization out(rational_pow(constant_, e));
  if (e == 0) return out;
  for (const auto& [f, x] : factors_) out.factors_.emplace(f, x * e);
  return out;
}

Polynomial Factorization::numerator() const {
  Polynomial out(numerator_of(constant_));
  for (const auto& [f, e] : factors_) {
    if (e > 0) out *= f.pow(static_cast<unsigned>(e));
  }
  return out;
}

Polynomial Factorization::denominator() const {
  Polynomial out(denominator_of(constant_));
  for (const auto& [f, e] : factors_) {
    if (e < 0) out *= f.pow(static_cast<unsigned>(-e));
  }
  return out;
}

RationalFunction Factorization::expand() const { return RationalFunction(numerator(), denominator()); }

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

// Variable-disjoint split of a multilinear polynomial without monomial content.
std::vector<Polynomial> split_multilinear(const Polynomial& q) {
  const auto sym_set = q.symbols();
  const std::vector<SymbolId> syms(sym_set.begin(), sym_set.end());
  if (syms.size() < 2) return {q};
  std::vector<Polynomial> first(syms.size());
  for (std::size_t i = 0; i < syms.size(); ++i) first[i] = q.derivative(syms[i]);
  DisjointSets sets(syms.size());
  for (std::size_t i = 0; i < syms.size(); ++i) {
    for (std::size_t j = i + 1; j < syms.size(); ++j) {
      if (sets.find(i) == sets.find(j)) continue;
      const Polynomial mixed = first[i].derivative(syms[j]);
      if (!(q * mixed == first[i] * first[j])) sets.unite(i, j);
    }
  }
  std::map<std::size_t, std::vector<SymbolId>> groups;
  for (std::size_t i = 0; i < syms.size(); ++i) groups[sets.find(i)].push_back(syms[i]);
  if (groups.size() == 1) return {q};

  for (int point = 1; point <= 7; ++point) {
    std::vector<Polynomial> parts;
    Polynomial product(1);
    bool degenerate = false;
    for (const auto& [root, members] : groups) {
      std::map<SymbolId, Polynomial> others;
      for (auto s : syms) {
        if (std::find(members.begin(), members.end(), s) == members.end()) others.emplace(s, Polynomial(point));
      }
      Polynomial part = q.substitute(others);
      if (part.is_constant()) {
        degenerate = true;
        break;
      }
      product *= part;
      parts.push_back(std::move(part));
    }
    if (degenerate) continue;
    const Rational scale = q.leading_coefficient() / product.leading_coefficient();
    if (product * scale == q) {
      parts.emplace_back(scale);
      return parts;
    }
  }
  return {q};
}

}  // namespace

Factorization factor(const Polynomial& p) {
  if (p.is_zero()) throw std::domain_error("cannot factor the zero polynomial");
  Factorization out;
  const Monomial content = p.monomial_content();
  for (const auto& [id, e] : content.factors()) out.multiply_factor(Polynomial::variable(id), static_cast<int>(e));
  const Polynomial rest = p.divide_monomial(content);
  if (rest.is_constant() || !rest.is_multilinear()) {
    out.multiply_factor(rest, 1);
    return out;
  }
  for (const auto& part : split_multilinear(rest)) out.multiply_factor(part, 1);
  return out;
}

Factorization factor(const RationalFunction& f) { return factor(f.num()) * factor(f.den()).pow(-1); }

}  // namespace crnt
