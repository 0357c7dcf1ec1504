#include "qpsym/matpoly.hpp"

#include <stdexcept>

namespace qpsym {

MatPoly::MatPoly(int n, int num_vars) : n_(n), num_vars_(num_vars) {
  if (n < 2) throw std::invalid_argument("MatPoly: fiber rank must exceed 1");
  e_.assign(static_cast<size_t>(n) * n, Poly(num_vars));
}

MatPoly MatPoly::identity(int n, int num_vars) {
  MatPoly a(n, num_vars);
  for (int i = 0; i < n; ++i) a.set(i, i, Poly::constant(num_vars, Rational(1)));
  return a;
}

MatPoly MatPoly::unit(int n, int num_vars, int i, int j) {
  if (i < 1 || i > n || j < 1 || j > n) throw std::invalid_argument("MatPoly: unit index out of range");
  MatPoly a(n, num_vars);
  a.set(i - 1, j - 1, Poly::constant(num_vars, Rational(1)));
  return a;
}

MatPoly MatPoly::scalar(int n, const Poly& u) {
  MatPoly a(n, u.num_vars());
  for (int i = 0; i < n; ++i) a.set(i, i, u);
  return a;
}

bool MatPoly::is_zero() const {
  for (const auto& p : e_)
    if (!p.is_zero()) return false;
  return true;
}

Poly MatPoly::trace() const {
  Poly t(num_vars_);
  for (int i = 0; i < n_; ++i) t = t + at(i, i);
  return t;
}

MatPoly MatPoly::transpose() const {
  MatPoly a(n_, num_vars_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) a.set(j, i, at(i, j));
  return a;
}

bool MatPoly::is_skew() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j)
      if (!(at(i, j) + at(j, i)).is_zero()) return false;
  return true;
}

MatPoly MatPoly::deriv(int i) const {
  MatPoly a(n_, num_vars_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) a.set(r, c, at(r, c).deriv(i));
  return a;
}

MatPoly MatPoly::scale(const Poly& u) const {
  MatPoly a(n_, num_vars_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) a.set(r, c, at(r, c) * u);
  return a;
}

MatPoly MatPoly::scale(const Rational& c) const {
  MatPoly a(n_, num_vars_);
  for (int r = 0; r < n_; ++r)
    for (int j = 0; j < n_; ++j) a.set(r, j, at(r, j).scale(c));
  return a;
}

static void check_shapes(const MatPoly& a, const MatPoly& b) {
  if (a.n() != b.n() || a.num_vars() != b.num_vars())
    throw std::invalid_argument("MatPoly: shape mismatch");
}

MatPoly operator+(const MatPoly& a, const MatPoly& b) {
  check_shapes(a, b);
  MatPoly r(a.n_, a.num_vars_);
  for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
  return r;
}

MatPoly operator-(const MatPoly& a, const MatPoly& b) {
  check_shapes(a, b);
  MatPoly r(a.n_, a.num_vars_);
  for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
  return r;
}

MatPoly operator*(const MatPoly& a, const MatPoly& b) {
  check_shapes(a, b);
  MatPoly r(a.n_, a.num_vars_);
  for (int i = 0; i < a.n_; ++i)
    for (int j = 0; j < a.n_; ++j) {
      Poly acc(a.num_vars_);
      for (int k = 0; k < a.n_; ++k) acc = acc + a.at(i, k) * b.at(k, j);
      r.set(i, j, acc);
    }
  return r;
}

MatPoly operator-(const MatPoly& a) {
  MatPoly r(a.n_, a.num_vars_);
  for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = -a.e_[i];
  return r;
}

MatPoly operator*(const Poly& u, const MatPoly& a) { return a.scale(u); }

MatPoly mat_comm(const MatPoly& a, const MatPoly& b) { return a * b - b * a; }

MatPoly traceless_project(const MatPoly& a) {
  Poly adj = a.trace().scale(Rational(1, a.n()));
  return a - MatPoly::scalar(a.n(), adj);
}

std::optional<Poly> is_scalar(const MatPoly& a) {
  const Poly& u = a.at(0, 0);
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) {
      if (i == j) {
        if (a.at(i, j) != u) return std::nullopt;
      } else if (!a.at(i, j).is_zero()) {
        return std::nullopt;
      }
    }
  return u;
}

bool is_nilpotent(const MatPoly& a) {
  MatPoly p = a;
  for (int k = 1; k < a.n(); ++k) {
    if (p.is_zero()) return true;
    p = p * a;
  }
  return p.is_zero();
}

std::vector<MatPoly> nilpotent_basis(int n, int num_vars) {
  if (n <= 1) throw std::invalid_argument("nilpotent_basis: rank must exceed 1");
  std::vector<MatPoly> basis;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) basis.push_back(MatPoly::unit(n, num_vars, i, j));
  for (int k = 0; k + 1 < n; ++k) {
    MatPoly b(n, num_vars);
    Poly one = Poly::constant(num_vars, Rational(1));
    b.set(k, k, one);
    b.set(k, k + 1, one);
    b.set(k + 1, k, -one);
    b.set(k + 1, k + 1, -one);
    basis.push_back(b);
  }
  return basis;
}

namespace {

// Exact dense rational matrix, just enough for the constant change-of-basis solve.
struct RatMat {
  int rows, cols;
  std::vector<Rational> a;
  RatMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  Rational& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
};

// Gauss-Jordan inverse; the basis matrix is invertible by construction.
RatMat invert(RatMat m) {
  int n = m.rows;
  RatMat inv(n, n);
  for (int i = 0; i < n; ++i) inv.at(i, i) = Rational(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!m.at(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::logic_error("nilpotent basis matrix is singular");
    for (int j = 0; j < n; ++j) {
      std::swap(m.at(piv, j), m.at(col, j));
      std::swap(inv.at(piv, j), inv.at(col, j));
    }
    Rational d = Rational(1) / m.at(col, col);
    for (int j = 0; j < n; ++j) {
      m.at(col, j) = m.at(col, j) * d;
      inv.at(col, j) = inv.at(col, j) * d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || m.at(r, col).is_zero()) continue;
      Rational f = m.at(r, col);
      for (int j = 0; j < n; ++j) {
        m.at(r, j) = m.at(r, j) - f * m.at(col, j);
        inv.at(r, j) = inv.at(r, j) - f * inv.at(col, j);
      }
    }
  }
  return inv;
}

// sl(n) coordinates: the off-diagonal entries in row-major order followed by
// the first n-1 diagonal entries.
std::vector<std::pair<int, int>> sl_coords(int n) {
  std::vector<std::pair<int, int>> coords;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) coords.emplace_back(i, j);
  for (int k = 0; k + 1 < n; ++k) coords.emplace_back(k, k);
  return coords;
}

}  // namespace

std::vector<std::pair<Poly, MatPoly>> decompose_nilpotent(const MatPoly& a) {
  if (!a.trace().is_zero()) throw std::invalid_argument("decompose_nilpotent: nonzero trace");
  int n = a.n();
  int dim = n * n - 1;
  auto basis = nilpotent_basis(n, a.num_vars());
  auto coords = sl_coords(n);

  RatMat b(dim, dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r) {
      auto [i, j] = coords[r];
      const Poly& entry = basis[c].at(i, j);
      Rational v;
      if (!entry.is_zero()) v = entry.terms().begin()->second;  // constant matrices
      b.at(r, c) = v;
    }
  RatMat inv = invert(std::move(b));

  std::vector<std::pair<Poly, MatPoly>> out;
  for (int c = 0; c < dim; ++c) {
    Poly u(a.num_vars());
    for (int r = 0; r < dim; ++r) {
      if (inv.at(c, r).is_zero()) continue;
      auto [i, j] = coords[r];
      u = u + a.at(i, j).scale(inv.at(c, r));
    }
    if (!u.is_zero()) out.emplace_back(u, basis[c]);
  }
  return out;
}

}  // namespace qpsym
