#ifndef QPSYM_MATPOLY_HPP
#define QPSYM_MATPOLY_HPP

#include <optional>
#include <utility>
#include <vector>

#include "qpsym/poly.hpp"

namespace qpsym {

// n x n matrix with polynomial entries: endomorphism fields of the
// trivialized bundle. The fiber rank n is always > 1.
class MatPoly {
 public:
  MatPoly(int n, int num_vars);  // zero matrix

  static MatPoly identity(int n, int num_vars);
  static MatPoly unit(int n, int num_vars, int i, int j);  // E_ij, 1-based
  static MatPoly scalar(int n, const Poly& u);             // u * id

  int n() const { return n_; }
  int num_vars() const { return num_vars_; }

  const Poly& at(int i, int j) const { return e_[idx(i, j)]; }  // 0-based
  void set(int i, int j, const Poly& p) { e_[idx(i, j)] = p; }

  bool is_zero() const;
  Poly trace() const;
  MatPoly transpose() const;
  bool is_skew() const;        // a + a^T == 0
  MatPoly deriv(int i) const;  // entrywise d/dx_i
  MatPoly scale(const Poly& u) const;
  MatPoly scale(const Rational& c) const;

  friend MatPoly operator+(const MatPoly& a, const MatPoly& b);
  friend MatPoly operator-(const MatPoly& a, const MatPoly& b);
  friend MatPoly operator*(const MatPoly& a, const MatPoly& b);
  friend MatPoly operator-(const MatPoly& a);
  friend bool operator==(const MatPoly& a, const MatPoly& b) {
    return a.n_ == b.n_ && a.num_vars_ == b.num_vars_ && a.e_ == b.e_;
  }
  friend bool operator!=(const MatPoly& a, const MatPoly& b) { return !(a == b); }

 private:
  int idx(int i, int j) const { return i * n_ + j; }
  int n_;
  int num_vars_;
  std::vector<Poly> e_;
};

MatPoly operator*(const Poly& u, const MatPoly& a);

// [a, b] = ab - ba
MatPoly mat_comm(const MatPoly& a, const MatPoly& b);

// a - tr(a)/n * id; the projection onto trace-free matrices
MatPoly traceless_project(const MatPoly& a);

// Witness u with a == u * id, if any.
std::optional<Poly> is_scalar(const MatPoly& a);

// a^n == 0 over the polynomial ring.
bool is_nilpotent(const MatPoly& a);

// Fixed basis of sl(n) made of constant nilpotent matrices: the off-diagonal
// units E_ij together with, for each k < n, the rank-one block
// [[1,1],[-1,-1]] placed at rows/columns (k, k+1). Every element squares to 0.
std::vector<MatPoly> nilpotent_basis(int n, int num_vars);

// Coordinates of a trace-free matrix in nilpotent_basis(n): returns the
// nonzero (coefficient, basis matrix) pairs with a == sum u_i N_i.
// Each summand u_i N_i is itself nilpotent.
std::vector<std::pair<Poly, MatPoly>> decompose_nilpotent(const MatPoly& a);

}  // namespace qpsym

#endif
