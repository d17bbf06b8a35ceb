#pragma once

#include "permoments/errors.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace pm {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

const Int& factorial(unsigned n);
Int binomial(long n, long k);
Int multinomial(std::span<const unsigned> parts);
Int ipow(const Int& base, unsigned e);
Rational rpow(const Rational& base, int e);

Int numerator(const Rational& q);
Int denominator(const Rational& q);

// Round-half-up on the exact value.
// Produces `sig` significant digits in fixed notation, e.g. 1.62974751371742.
enum class Rounding { HalfUp, TowardZero };
std::string fixed_significant(const Rational& q, int sig, Rounding mode = Rounding::HalfUp);
std::string fixed_decimals(const Rational& q, int decimals, Rounding mode = Rounding::HalfUp);
double to_double(const Rational& q);

std::string to_string(const Int& v);
std::string to_string(const Rational& q);

} // namespace pm
