#ifndef QPSYM_RATIONAL_HPP
#define QPSYM_RATIONAL_HPP

#include <gmp.h>

#include <string>

namespace qpsym {

// Exact rational scalar. Always reduced, denominator >= 1, zero is 0/1.
class Rational {
 public:
  Rational() { mpq_init(v_); }
  Rational(long n) {  // implicit: integer literals promote to rationals
    mpq_init(v_);
    mpq_set_si(v_, n, 1);
  }
  Rational(long num, long den);
  // Accepts "a" or "a/b" with arbitrary-precision a, b.
  explicit Rational(const std::string& s);

  Rational(const Rational& o) {
    mpq_init(v_);
    mpq_set(v_, o.v_);
  }
  Rational(Rational&& o) noexcept {
    mpq_init(v_);
    mpq_swap(v_, o.v_);
  }
  Rational& operator=(const Rational& o) {
    if (this != &o) mpq_set(v_, o.v_);
    return *this;
  }
  Rational& operator=(Rational&& o) noexcept {
    if (this != &o) mpq_swap(v_, o.v_);
    return *this;
  }
  ~Rational() { mpq_clear(v_); }

  bool is_zero() const { return mpq_sgn(v_) == 0; }
  bool is_one() const { return mpq_cmp_si(v_, 1, 1) == 0; }
  bool is_integer() const { return mpz_cmp_ui(mpq_denref(v_), 1) == 0; }
  int sign() const { return mpq_sgn(v_); }

  Rational abs() const;
  Rational pow(unsigned long e) const;

  std::string str() const;  // "a" or "a/b", reduced
  std::string num_str() const;
  std::string den_str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);  // throws on b == 0
  friend Rational operator-(const Rational& a);

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_, b.v_) != 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.v_, b.v_) < 0; }

 private:
  mpq_t v_;
};

}  // namespace qpsym

#endif
