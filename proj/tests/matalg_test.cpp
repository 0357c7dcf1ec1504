#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qpsym/gen.hpp"
#include "qpsym/matpoly.hpp"

using namespace qpsym;

namespace {

const int M = 2;

MatPoly E(int n, int i, int j) { return MatPoly::unit(n, M, i, j); }

MatPoly diag2(const Poly& a, const Poly& b) {
  MatPoly d(2, M);
  d.set(0, 0, a);
  d.set(1, 1, b);
  return d;
}

MatPoly diag2c(long a, long b) {
  return diag2(Poly::constant(M, Rational(a)), Poly::constant(M, Rational(b)));
}

}  // namespace

TEST_CASE("mat_comm structure constants") {
  CHECK(mat_comm(E(2, 1, 2), E(2, 2, 1)) == diag2c(1, -1));
  MatPoly a = E(3, 1, 2) + E(3, 2, 3).scale(Poly::variable(M, 1));
  CHECK(mat_comm(a, a).is_zero());
  // [diag(u,v), E12] = (u-v) E12, by direct 2x2 multiplication
  Poly u = Poly::parse("x1 + 1", M), v = Poly::parse("x2^2", M);
  MatPoly d = diag2(u, v);
  MatPoly lhs = mat_comm(d, E(2, 1, 2));
  MatPoly rhs = E(2, 1, 2).scale(u - v);
  CHECK(lhs == rhs);
  CHECK_THROWS_AS(mat_comm(E(2, 1, 2), E(3, 1, 2)), std::invalid_argument);
}

TEST_CASE("traceless projection") {
  CHECK(traceless_project(diag2c(3, 1)) == diag2c(1, -1));
  MatPoly tf = E(2, 1, 2) + diag2c(2, -2);
  CHECK(traceless_project(tf) == tf);
  CHECK(traceless_project(MatPoly::identity(2, M)).is_zero());
}

TEST_CASE("is_scalar") {
  Poly u = Poly::parse("x1^2 - 1/3", M);
  auto w = is_scalar(MatPoly::scalar(3, u));
  REQUIRE(w.has_value());
  CHECK(*w == u);
  CHECK_FALSE(is_scalar(E(2, 1, 2)).has_value());
  auto wx = is_scalar(diag2(Poly::variable(M, 1), Poly::variable(M, 1)));
  REQUIRE(wx.has_value());
  CHECK(*wx == Poly::variable(M, 1));
}

TEST_CASE("nilpotent basis spans sl(n) with nilpotents") {
  for (int n : {2, 3, 4}) {
    auto basis = nilpotent_basis(n, M);
    CHECK(static_cast<int>(basis.size()) == n * n - 1);
    for (const auto& b : basis) {
      CHECK(b.trace().is_zero());
      MatPoly p = b;
      for (int k = 1; k < n; ++k) p = p * b;
      CHECK(p.is_zero());  // N^n = 0
    }
    // rank check by brute-force elimination over the constant entries
    std::vector<std::vector<Rational>> rows;
    for (const auto& b : basis) {
      std::vector<Rational> row;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          row.push_back(b.at(i, j).is_zero() ? Rational(0) : b.at(i, j).terms().begin()->second);
      rows.push_back(row);
    }
    int rank = 0;
    size_t cols = rows[0].size();
    for (size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
      int piv = -1;
      for (size_t rr = rank; rr < rows.size(); ++rr)
        if (!rows[rr][c].is_zero()) {
          piv = static_cast<int>(rr);
          break;
        }
      if (piv < 0) continue;
      std::swap(rows[rank], rows[piv]);
      for (size_t rr = rank + 1; rr < rows.size(); ++rr) {
        if (rows[rr][c].is_zero()) continue;
        Rational f = rows[rr][c] / rows[rank][c];
        for (size_t cc = c; cc < cols; ++cc) rows[rr][cc] = rows[rr][cc] - f * rows[rank][cc];
      }
      ++rank;
    }
    CHECK(rank == n * n - 1);
  }
  CHECK_THROWS_AS(nilpotent_basis(1, M), std::invalid_argument);
}

TEST_CASE("decompose_nilpotent examples") {
  // already a basis element
  auto parts = decompose_nilpotent(E(2, 1, 2));
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].first == Poly::constant(M, Rational(1)));
  CHECK(parts[0].second == E(2, 1, 2));

  // diagonal direction: both summands must square to zero and rebuild
  for (const MatPoly& target : {diag2c(1, -1), diag2c(1, -1).scale(Poly::variable(M, 1))}) {
    auto ps = decompose_nilpotent(target);
    MatPoly sum(2, M);
    for (const auto& [coef, mat] : ps) {
      MatPoly summand = mat.scale(coef);
      CHECK((summand * summand).is_zero());
      sum = sum + summand;
    }
    CHECK(sum == target);
  }

  CHECK_THROWS_AS(decompose_nilpotent(diag2c(1, 1)), std::invalid_argument);
}

TEST_CASE("decompose_nilpotent round-trips on random trace-free matrices") {
  for (int n : {2, 3}) {
    for (std::uint64_t t = 0; t < 50; ++t) {
      Rng rng(trial_seed(11, t));
      MatPoly a = gen_traceless(rng, n, M, 2, 5);
      auto parts = decompose_nilpotent(a);
      MatPoly sum(n, M);
      for (const auto& [coef, mat] : parts) {
        CHECK(is_nilpotent(mat.scale(coef)));
        sum = sum + mat.scale(coef);
      }
      CHECK(sum == a);
    }
  }
}

TEST_CASE("is_nilpotent") {
  CHECK(is_nilpotent(E(2, 1, 2)));
  CHECK_FALSE(is_nilpotent(diag2c(1, -1)));
  Poly u = Poly::variable(M, 1);
  MatPoly a = E(3, 1, 2).scale(u) + E(3, 1, 3).scale(u * u);
  CHECK(is_nilpotent(a));
  CHECK(is_nilpotent(MatPoly(2, M)));
}

TEST_CASE("commutator trace and jacobi on random matrices") {
  for (std::uint64_t t = 0; t < 40; ++t) {
    Rng rng(trial_seed(13, t));
    MatPoly a = gen_matpoly(rng, 3, M, 2, 4);
    MatPoly b = gen_matpoly(rng, 3, M, 2, 4);
    MatPoly c = gen_matpoly(rng, 3, M, 2, 4);
    CHECK(mat_comm(a, b).trace().is_zero());
    CHECK((mat_comm(a, mat_comm(b, c)) + mat_comm(b, mat_comm(c, a)) +
           mat_comm(c, mat_comm(a, b)))
              .is_zero());
    CHECK(traceless_project(traceless_project(a)) == traceless_project(a));
  }
}
