#pragma once

#include <stdexcept>

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "qcoh/fp.hpp"

namespace qcoh {

// Exact rational scalar. GMP keeps every value canonical (reduced fraction,
// positive denominator), so equality is plain equality.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

namespace detail {

template <class Scalar>
struct FromRational;

template <>
struct FromRational<Rational> {
  static Rational get(const Rational& q) { return q; }
};

template <unsigned P>
struct FromRational<Fp<P>> {
  static Fp<P> get(const Rational& q) {
    const Integer num = boost::multiprecision::numerator(q);
    const Integer den = boost::multiprecision::denominator(q);
    const long long d = static_cast<long long>(den % P);
    if (d == 0) throw std::domain_error("rational has denominator divisible by field characteristic");
    const long long n = static_cast<long long>(num % P);
    return Fp<P>(n) / Fp<P>(d);
  }
};

}  // namespace detail

// Presentation coefficients are stored as rationals and converted to the
// working field on demand.
template <class Scalar>
Scalar scalar_from_rational(const Rational& q) {
  return detail::FromRational<Scalar>::get(q);
}

}  // namespace qcoh
