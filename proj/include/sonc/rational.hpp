// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace sonc {

// All certificate data is exact. GMP-backed integers/rationals keep every
// coefficient in lowest terms with a positive denominator.
using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// base^e for integer e (e may be negative; base must be nonzero then).
Rational pow_rational(const Rational& base, long e);

/// If value = r^n for a rational r >= 0, stores r and returns true.
/// Requires value >= 0 and n >= 1.
bool exact_nth_root(const Rational& value, unsigned long n, Rational& root);

/// Parses "7", "-3/4" or an exact decimal literal such as "0.125".
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// Best rational approximation of x with |p/q - x| <= max_err, found by
/// walking the continued-fraction convergents of x. Deterministic.
Rational rational_near(double x, const Rational& max_err);

Int lcm(const Int& a, const Int& b);

}  // namespace sonc
