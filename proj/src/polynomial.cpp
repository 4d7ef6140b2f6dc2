// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#include "sonc/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace sonc {

void SparsePolynomial::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != nvars_)
    throw DimensionMismatchError("term exponent has wrong dimension");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SparsePolynomial& SparsePolynomial::operator+=(const SparsePolynomial& o) {
  if (o.nvars_ != nvars_) throw DimensionMismatchError("polynomial nvars mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SparsePolynomial& SparsePolynomial::operator-=(const SparsePolynomial& o) {
  if (o.nvars_ != nvars_) throw DimensionMismatchError("polynomial nvars mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, Rational(-c));
  return *this;
}

SparsePolynomial SparsePolynomial::scaled_by(const Rational& c) const {
  SparsePolynomial r(nvars_);
  if (c == 0) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, c * v);
  return r;
}

double SparsePolynomial::evaluate(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != nvars_)
    throw DimensionMismatchError("evaluation point has wrong dimension");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = to_double(c);
    for (int i = 0; i < nvars_; ++i) m *= std::pow(x[static_cast<std::size_t>(i)], e[i]);
    sum += m;
  }
  return sum;
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, int nvars) : s_(text), n_(nvars) {}

  SparsePolynomial run() {
    SparsePolynomial poly(n_);
    skip_ws();
    bool negative = eat_sign();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    while (true) {
      auto [coef, exp] = parse_term();
      poly.add_term(exp, negative ? Rational(-coef) : coef);
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (c == '+')
        negative = false;
      else if (c == '-')
        negative = true;
      else
        throw ParseError(std::string("expected '+' or '-', got '") + c + "'", pos_);
      ++pos_;
      skip_ws();
    }
    return poly;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool eat_sign() {
    if (!at_end() && (peek() == '+' || peek() == '-')) {
      const bool neg = peek() == '-';
      ++pos_;
      skip_ws();
      return neg;
    }
    return false;
  }

  std::pair<Rational, Exponent> parse_term() {
    Rational coef(1);
    std::vector<int> exp(static_cast<std::size_t>(n_), 0);
    bool saw_factor = false;
    if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
      coef = parse_coeff();
      saw_factor = true;
      skip_ws();
      while (!at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
        parse_factor(exp);
        skip_ws();
      }
    } else {
      parse_factor(exp);
      saw_factor = true;
      skip_ws();
      while (!at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
        parse_factor(exp);
        skip_ws();
      }
    }
    if (!saw_factor) throw ParseError("expected term", pos_);
    return {coef, Exponent(exp)};
  }

  Rational parse_coeff() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (!at_end() && peek() == '/') {
      ++pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
        throw ParseError("expected denominator digits", pos_);
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    } else if (!at_end() && peek() == '.') {
      ++pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    const std::string lit = s_.substr(start, pos_ - start);
    if (lit.empty() || lit == "." )
      throw ParseError("expected coefficient literal", start);
    try {
      return parse_rational(lit);
    } catch (const std::exception& ex) {
      throw ParseError(ex.what(), start);
    }
  }

  void parse_factor(std::vector<int>& exp) {
    if (at_end()) throw ParseError("expected variable", pos_);
    const char c = peek();
    int index = 0;
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      if (c == 'x' && !at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        index = parse_nat("variable index");
      } else {
        index = c == 'x' ? 1 : (c == 'y' ? 2 : 3);  // pretty aliases for n <= 3
      }
    } else {
      throw ParseError(std::string("expected variable, got '") + c + "'", pos_);
    }
    if (index < 1) throw ParseError("variable index must be >= 1", pos_);
    if (index > n_)
      throw ParseError("variable index " + std::to_string(index) + " exceeds nvars " +
                           std::to_string(n_),
                       pos_);
    int power = 1;
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_ws();
      if (!at_end() && peek() == '-')
        throw ParseError("negative exponent", pos_);
      power = parse_nat("exponent");
    }
    exp[static_cast<std::size_t>(index - 1)] += power;
  }

  int parse_nat(const char* what) {
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
      throw ParseError(std::string("expected ") + what, pos_);
    long v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1'000'000) throw ParseError(std::string(what) + " too large", pos_);
      ++pos_;
    }
    return static_cast<int>(v);
  }

  const std::string& s_;
  int n_;
  std::size_t pos_ = 0;
};

/// Scans for the largest variable index so that nvars can be inferred.
int infer_nvars(const std::string& text) {
  int n = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == 'y') n = std::max(n, 2);
    if (c == 'z') n = std::max(n, 3);
    if (c == 'x' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      std::size_t j = i + 1;
      long v = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        v = v * 10 + (text[j] - '0');
        if (v > 1'000'000) break;
        ++j;
      }
      n = std::max(n, static_cast<int>(v));
    }
  }
  return n;
}

}  // namespace

SparsePolynomial parse_polynomial(const std::string& text, int nvars) {
  if (nvars < 0) throw std::invalid_argument("nvars must be positive");
  if (nvars == 0) nvars = infer_nvars(text);
  return Parser(text, nvars).run();
}

std::string SparsePolynomial::to_text() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Leading term first: iterate descending in the lexicographic order.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Exponent& e = it->first;
    const Rational& c = it->second;
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    std::string factors;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += "x" + std::to_string(i + 1);
      if (e[i] > 1) factors += "^" + std::to_string(e[i]);
    }
    if (factors.empty()) {
      out << to_string(mag);
    } else if (mag == 1) {
      out << factors;
    } else {
      out << to_string(mag) << "*" << factors;
    }
  }
  return out.str();
}

std::string SparsePolynomial::to_json() const {
  nlohmann::ordered_json j;
  j["nvars"] = nvars_;
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& [e, c] : terms_) {
    nlohmann::ordered_json t;
    t["coef"] = to_string(c);
    t["exp"] = e.entries();
    j["terms"].push_back(t);
  }
  return j.dump();
}

SparsePolynomial polynomial_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const std::exception& ex) {
    throw ParseError(std::string("bad polynomial JSON: ") + ex.what(), 0);
  }
  if (!j.contains("nvars") || !j["nvars"].is_number_integer())
    throw ParseError("polynomial JSON: missing integer 'nvars'", 0);
  SparsePolynomial poly(j["nvars"].get<int>());
  if (!j.contains("terms") || !j["terms"].is_array())
    throw ParseError("polynomial JSON: missing array 'terms'", 0);
  for (const auto& t : j["terms"]) {
    const Rational c = parse_rational(t.at("coef").get<std::string>());
    std::vector<int> e = t.at("exp").get<std::vector<int>>();
    poly.add_term(Exponent(std::move(e)), c);
  }
  return poly;
}

SupportPartition support_partition(const SparsePolynomial& f) {
  if (f.is_zero()) throw ZeroPolynomialError();
  SupportPartition part;
  for (const auto& [e, c] : f.terms()) {
    if (e.is_even() && c > 0)
      part.lambda.emplace(e, c);
    else
      part.gamma_d.emplace(e, Rational(-c));
  }
  return part;
}

SparsePolynomial power_substitute(const SparsePolynomial& f, int k) {
  if (k < 1) throw std::invalid_argument("substitution power must be >= 1");
  SparsePolynomial r(f.nvars());
  for (const auto& [e, c] : f.terms()) r.add_term(e.scaled(k), c);
  return r;
}

SparsePolynomial power_unsubstitute(const SparsePolynomial& f, int k) {
  if (k < 1) throw std::invalid_argument("substitution power must be >= 1");
  SparsePolynomial r(f.nvars());
  for (const auto& [e, c] : f.terms()) r.add_term(e.divided(k), c);
  return r;
}

bool verify_sum(const std::vector<SparsePolynomial>& parts, const SparsePolynomial& f) {
  SparsePolynomial sum(f.nvars());
  for (const auto& p : parts) {
    if (p.nvars() != f.nvars())
      throw DimensionMismatchError("verify_sum: nvars mismatch");
    sum += p;
  }
  return sum == f;
}

}  // namespace sonc
