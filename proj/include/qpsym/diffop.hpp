#ifndef QPSYM_DIFFOP_HPP
#define QPSYM_DIFFOP_HPP

#include <map>

#include "qpsym/matpoly.hpp"

namespace qpsym {

// Section of the trivialized bundle: an n-vector of polynomials in m variables.
struct Section {
  int m;
  int n;
  std::vector<Poly> components;

  Section(int m_, int n_);
  friend bool operator==(const Section& a, const Section& b) {
    return a.m == b.m && a.n == b.n && a.components == b.components;
  }
};

// Matrix-coefficient linear differential operator sum_alpha T_alpha d^alpha
// on a chart, stored sparsely by derivative multi-index.
class DiffOp {
 public:
  DiffOp(int m, int n);

  int m() const { return m_; }
  int n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<MultiIndex, MatPoly, GrlexDesc>& terms() const { return terms_; }

  void add_term(const MultiIndex& alpha, const MatPoly& coeff);
  const MatPoly* coeff(const MultiIndex& alpha) const;  // nullptr when absent

  DiffOp scale(const Rational& c) const;

  friend DiffOp operator+(const DiffOp& a, const DiffOp& b);
  friend DiffOp operator-(const DiffOp& a, const DiffOp& b);
  friend DiffOp operator-(const DiffOp& a);
  friend bool operator==(const DiffOp& a, const DiffOp& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

 private:
  int m_, n_;
  std::map<MultiIndex, MatPoly, GrlexDesc> terms_;
};

// Multiplication operator s -> u s.
DiffOp gamma(const Poly& u, int n);

// Single derivative d^alpha with identity coefficient.
DiffOp partial(const MultiIndex& alpha, int n);

Poly deriv_multi(const Poly& p, const MultiIndex& alpha);
MatPoly deriv_multi(const MatPoly& a, const MultiIndex& alpha);

Section apply(const DiffOp& t, const Section& s);

// Operator composition via the iterated Leibniz rule:
// d^a (C s) = sum_{g<=a} binom(a,g) d^{a-g}C d^g s.
DiffOp compose(const DiffOp& t, const DiffOp& d);
DiffOp commutator(const DiffOp& t, const DiffOp& d);

// Usual differential-operator order: max |alpha|. Rejects the zero operator.
int d_order(const DiffOp& t);

// Order in the quantum-Poisson filtration: d_order when every top coefficient
// is scalar, d_order + 1 otherwise. Rejects the zero operator.
int p_order(const DiffOp& t);

// Local membership criterion: no coefficient above |alpha| = k and scalar
// coefficients at |alpha| = k.
bool is_in_Pk(const DiffOp& t, int k);

// Recursive-definition membership check, the validation oracle for is_in_Pk:
// t is in P^k iff [t, gamma_u] is in P^{k-1} for every u, probed over the
// monomials u = x^g with 1 <= |g| <= d_order(t) + 1.
bool p_order_oracle(const DiffOp& t, int k);

}  // namespace qpsym

#endif
