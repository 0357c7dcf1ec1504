#ifndef QPSYM_POLY_HPP
#define QPSYM_POLY_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qpsym/rational.hpp"

namespace qpsym {

// Exponent / derivative multi-index: a fixed-length vector of non-negative ints.
using MultiIndex = std::vector<int>;

int mi_order(const MultiIndex& a);
MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b);
MultiIndex mi_sub(const MultiIndex& a, const MultiIndex& b);  // requires a >= b componentwise
bool mi_leq(const MultiIndex& a, const MultiIndex& b);        // componentwise
bool grlex_less(const MultiIndex& a, const MultiIndex& b);
Rational mi_binom(const MultiIndex& a, const MultiIndex& g);  // product of componentwise binomials

// Map comparator giving descending graded-lex iteration (leading term first).
struct GrlexDesc {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const { return grlex_less(b, a); }
};

// All multi-indices of length m with |a| == order, resp. |a| <= max_order,
// in ascending graded-lex order.
std::vector<MultiIndex> multi_indices_exact(int m, int order);
std::vector<MultiIndex> multi_indices_upto(int m, int max_order);

// Iterate all gamma <= alpha componentwise.
void for_each_sub_index(const MultiIndex& alpha, const std::function<void(const MultiIndex&)>& fn);

// Sparse multivariate polynomial over the rationals in variables x1..xm.
// Canonical form: no zero coefficients, terms ordered by descending graded-lex.
class Poly {
 public:
  explicit Poly(int num_vars);

  static Poly constant(int num_vars, const Rational& c);
  static Poly variable(int num_vars, int i);  // 1-based index
  static Poly monomial(int num_vars, const MultiIndex& e, const Rational& c);

  int num_vars() const { return num_vars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  int total_degree() const;  // -1 for the zero polynomial

  const std::map<MultiIndex, Rational, GrlexDesc>& terms() const { return terms_; }

  // Accumulates c into the coefficient at e, dropping it if the sum vanishes.
  void add_term(const MultiIndex& e, const Rational& c);

  Poly deriv(int i) const;  // formal d/dx_i, 1-based
  Rational eval(const std::vector<Rational>& point) const;
  Poly scale(const Rational& c) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Text form: terms joined by +/-, descending graded-lex, reduced rationals,
  // e.g. "3/2 x1^2 x2 - x3 + 1".
  std::string str() const;
  static Poly parse(const std::string& text, int num_vars);

 private:
  int num_vars_;
  std::map<MultiIndex, Rational, GrlexDesc> terms_;
};

}  // namespace qpsym

#endif
