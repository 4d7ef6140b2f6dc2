// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#include "sonc/rational.hpp"

#include <cmath>
#include <cstdlib>

namespace sonc {

Rational pow_rational(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (base == 0) {
    if (e < 0) throw std::domain_error("pow_rational: zero base, negative exponent");
    return Rational(0);
  }
  const unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
  Int num = pow(numerator(base), static_cast<unsigned>(mag));
  Int den = pow(denominator(base), static_cast<unsigned>(mag));
  if (e < 0) num.swap(den);
  if (den < 0) { num = -num; den = -den; }
  Rational r(num, den);
  return r;
}

bool exact_nth_root(const Rational& value, unsigned long n, Rational& root) {
  if (value < 0) throw std::domain_error("exact_nth_root: negative value");
  if (n == 0) throw std::domain_error("exact_nth_root: zeroth root");
  if (n == 1 || value == 0 || value == 1) {
    root = value;
    return true;
  }
  Int rn, rd;
  const bool num_ok =
      mpz_root(rn.backend().data(), numerator(value).backend().data(), n) != 0;
  if (!num_ok) return false;
  const bool den_ok =
      mpz_root(rd.backend().data(), denominator(value).backend().data(), n) != 0;
  if (!den_ok) return false;
  root = Rational(rn, rd);
  return true;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    try {
      return Rational(text);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad rational literal: " + text);
    }
  }
  // Exact decimal: digits on both sides of the dot, scaled by a power of ten.
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  const std::size_t frac_len = text.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+")
    throw std::invalid_argument("bad decimal literal: " + text);
  Int num;
  try {
    num = Int(digits);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad decimal literal: " + text);
  }
  Int den = pow(Int(10), static_cast<unsigned>(frac_len));
  return Rational(num, den);
}

std::string to_string(const Rational& q) { return q.str(); }

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational rational_near(double x, const Rational& max_err) {
  if (!std::isfinite(x)) throw std::domain_error("rational_near: non-finite input");
  if (max_err < 0) throw std::domain_error("rational_near: negative tolerance");
  const Rational target(x);  // doubles are dyadic rationals, conversion is exact
  if (max_err == 0) return target;

  // Continued-fraction convergents of |target|.
  const bool neg = target < 0;
  Rational t = neg ? Rational(-target) : target;
  Int p0 = 1, q0 = 0;  // p_{-1}/q_{-1}
  Int p1 = 0, q1 = 1;  // dummy seed; first convergent is floor(t)
  Rational rem = t;
  Int pp = 0, qq = 1;
  for (int iter = 0; iter < 128; ++iter) {
    Int a = numerator(rem) / denominator(rem);  // floor (rem >= 0)
    pp = a * p0 + p1;
    qq = a * q0 + q1;
    p1 = p0; q1 = q0;
    p0 = pp; q0 = qq;
    Rational conv(pp, qq);
    if (abs(conv - t) <= max_err) break;
    Rational frac = rem - Rational(a);
    if (frac == 0) break;
    rem = Rational(1) / frac;
  }
  Rational result(pp, qq);
  return neg ? Rational(-result) : result;
}

Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return Int(0);
  Int g = gcd(a, b);
  Int l = (a / g) * b;
  return l < 0 ? Int(-l) : l;
}

}  // namespace sonc
