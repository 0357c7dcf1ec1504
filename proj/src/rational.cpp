#include "qpsym/rational.hpp"

#include <stdexcept>

namespace qpsym {

namespace {

std::string mpz_to_string(const mpz_t z) {
  char* raw = mpz_get_str(nullptr, 10, z);
  std::string out(raw);
  void (*freefn)(void*, size_t) = nullptr;
  mp_get_memory_functions(nullptr, nullptr, &freefn);
  freefn(raw, out.size() + 1);
  return out;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  mpq_init(v_);
  mpq_set_si(v_, num, 1);
  mpq_t d;
  mpq_init(d);
  mpq_set_si(d, den, 1);
  mpq_div(v_, v_, d);
  mpq_clear(d);
}

Rational::Rational(const std::string& s) {
  mpq_init(v_);
  if (s.empty() || mpq_set_str(v_, s.c_str(), 10) != 0) {
    mpq_clear(v_);
    throw std::invalid_argument("Rational: cannot parse '" + s + "'");
  }
  if (mpz_sgn(mpq_denref(v_)) == 0) {
    mpq_clear(v_);
    throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
  }
  mpq_canonicalize(v_);
}

Rational Rational::abs() const {
  Rational r;
  mpq_abs(r.v_, v_);
  return r;
}

Rational Rational::pow(unsigned long e) const {
  Rational r;
  mpz_pow_ui(mpq_numref(r.v_), mpq_numref(v_), e);
  mpz_pow_ui(mpq_denref(r.v_), mpq_denref(v_), e);
  return r;  // a reduced fraction stays reduced under powers
}

std::string Rational::str() const {
  if (is_integer()) return num_str();
  return num_str() + "/" + den_str();
}

std::string Rational::num_str() const { return mpz_to_string(mpq_numref(v_)); }
std::string Rational::den_str() const { return mpz_to_string(mpq_denref(v_)); }

Rational operator+(const Rational& a, const Rational& b) {
  Rational r;
  mpq_add(r.v_, a.v_, b.v_);
  return r;
}

Rational operator-(const Rational& a, const Rational& b) {
  Rational r;
  mpq_sub(r.v_, a.v_, b.v_);
  return r;
}

Rational operator*(const Rational& a, const Rational& b) {
  Rational r;
  mpq_mul(r.v_, a.v_, b.v_);
  return r;
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::invalid_argument("Rational: division by zero");
  Rational r;
  mpq_div(r.v_, a.v_, b.v_);
  return r;
}

Rational operator-(const Rational& a) {
  Rational r;
  mpq_neg(r.v_, a.v_);
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  mpq_add(v_, v_, o.v_);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  mpq_sub(v_, v_, o.v_);
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  mpq_mul(v_, v_, o.v_);
  return *this;
}

}  // namespace qpsym
