#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <string>

namespace crnt {

// Exact scalars. Expression templates are disabled so the types compose
// cleanly with Eigen's own expression machinery.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline Integer numerator_of(const Rational& q) { return Integer(numerator(q)); }
inline Integer denominator_of(const Rational& q) { return Integer(denominator(q)); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// "3", "-1/2"
inline std::string to_string(const Rational& q) { return q.str(); }

/// Parses "3", "-4", "1/2". Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

}  // namespace crnt
