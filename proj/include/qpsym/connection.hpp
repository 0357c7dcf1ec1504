#ifndef QPSYM_CONNECTION_HPP
#define QPSYM_CONNECTION_HPP

#include <optional>
#include <utility>

#include "qpsym/symbols.hpp"

namespace qpsym {

// Polynomial vector field on the chart.
struct VectField {
  int m;
  std::vector<Poly> components;

  explicit VectField(int m_);
  bool is_zero() const;
  friend bool operator==(const VectField& a, const VectField& b) {
    return a.m == b.m && a.components == b.components;
  }
};

// [X,Y]^j = sum_i X^i d_i Y^j - Y^i d_i X^j
VectField vf_bracket(const VectField& x, const VectField& y);
Poly vf_apply(const VectField& x, const Poly& u);        // X(u)
MatPoly vf_apply(const VectField& x, const MatPoly& a);  // entrywise

// Covariant derivative data on the chart: nabla_X = X^i (d_i + Gamma_i).
// Metric (= induced by an O(n) frame reduction) iff every Gamma_i is
// skew-symmetric.
class Connection {
 public:
  Connection(int m, int n, std::vector<MatPoly> gamma);

  int m() const { return m_; }
  int n() const { return n_; }
  bool metric() const { return metric_; }
  const MatPoly& gamma(int i) const { return gamma_[i]; }  // 0-based

 private:
  int m_, n_;
  std::vector<MatPoly> gamma_;
  bool metric_;
};

// Element of Vect(M) (+) gl(E) (or sl(E) where the context requires a
// trace-free matrix part).
struct SplitPair {
  VectField X;
  MatPoly A;
  friend bool operator==(const SplitPair& a, const SplitPair& b) {
    return a.X == b.X && a.A == b.A;
  }
};

DiffOp nabla(const Connection& c, const VectField& x);

// Inverse of (X, A) -> nabla_X + A on operators of p-order <= 1.
SplitPair lambda_decompose(const DiffOp& t, const Connection& c);

// R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y], an endomorphism field.
MatPoly curvature(const Connection& c, const VectField& x, const VectField& y);

// Induced covariant derivative on endomorphism fields:
// X^i (d_i B + [Gamma_i, B]).
MatPoly nabla_end(const Connection& c, const VectField& x, const MatPoly& b);

// [(X,A),(Y,B)] = ([X,Y], R(X,Y) + nabla_X B - nabla_Y A + [A,B]); equals
// lambda_decompose of the operator commutator.
SplitPair bracket_star(const SplitPair& p, const SplitPair& q, const Connection& c);

// The splitting of the order-1 symbol sequence: (X, A) -> nabla_X + A for a
// metric connection and trace-free A. A Lie algebra homomorphism and a right
// inverse of the symbol map.
DiffOp section_map(const SplitPair& p, const Connection& c);

// T = (nabla_X + A - tr(A)/n id) + tr(A)/n id, returned as the adjusted
// operator and the scalar part. Independent of the choice of metric
// connection.
std::pair<DiffOp, Poly> trace_decompose(const DiffOp& t, const Connection& c);

// Smallest r <= r_max such that (ad sigma(A))^r kills every target inside
// S^1, targets embedded via the connection; nullopt when the budget is hit.
std::optional<int> ad_nilpotency_check(const MatPoly& a, const std::vector<SplitPair>& targets,
                                       const Connection& c, int r_max);

// Witness that (X, A) with X != 0 fails to act nilpotently on S^1 within the
// budget: a matrix B = u E12 whose iterated brackets stay nonzero.
struct NilFalsification {
  Poly u;
  int iterations;
  SymbolElem last_iterate;
};
std::optional<NilFalsification> nil_falsification(const SplitPair& t, int r_max);

}  // namespace qpsym

#endif
