#include <random>

#include "doctest.h"
#include "twb/linalg.hpp"

using namespace twb;

namespace {

ExactMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int spread) {
  std::uniform_int_distribution<int> d(-spread, spread);
  ExactMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      m(i, j) = Scalar(d(rng), 1 + std::abs(d(rng)));
      m(i, j).canonicalize();
    }
  return m;
}

ExactMatrix random_invertible(std::mt19937& rng, std::size_t n) {
  for (;;) {
    ExactMatrix m = random_matrix(rng, n, n, 3);
    if (rank(m) == n) return m;
  }
}

ExactMatrix inverse(const ExactMatrix& m) {
  std::size_t n = m.rows();
  ExactMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  rref_in_place(aug);
  ExactMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("scalars stay canonical") {
    CHECK(format_scalar(parse_scalar("6/4")) == "3/2");
    CHECK(format_scalar(parse_scalar("-4/2")) == "-2");
    CHECK(format_scalar(parse_scalar("0/7")) == "0");
    Scalar s = parse_scalar("1/3") + parse_scalar("2/3");
    CHECK(s.get_den() == 1);
    CHECK_THROWS_AS(parse_scalar("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar(""), std::invalid_argument);
  }

  TEST_CASE("rank of small matrices") {
    CHECK(rank(ExactMatrix::identity(2)) == 2);
    CHECK(rank(ExactMatrix::from_rows({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}})) == 1);
    CHECK(rank(ExactMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 2);
    CHECK(rank(ExactMatrix(3, 0)) == 0);
    CHECK(rank(SparseMatrix::from_dense(ExactMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}))) == 2);
  }

  TEST_CASE("kernel bases") {
    CHECK(kernel_basis(ExactMatrix::identity(2)).empty());
    auto k = kernel_basis(ExactMatrix::from_rows({{1, -1}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == k[0][1]);
    CHECK(k[0][0] != 0);
    CHECK(kernel_basis(ExactMatrix(3, 4)).size() == 4);
  }

  TEST_CASE("averaging projectors") {
    ExactMatrix e = ExactMatrix::identity(2);
    ExactMatrix swap = ExactMatrix::from_rows({{0, 1}, {1, 0}});
    ExactMatrix p = averaging_projector({e, swap});
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) CHECK(p(i, j) == Scalar(1, 2));
    CHECK(rank(p) == 1);
    CHECK(averaging_projector({ExactMatrix::identity(3)}) == ExactMatrix::identity(3));
    CHECK(averaging_projector({ExactMatrix::identity(1), ExactMatrix::from_rows({{-1}})}).is_zero());
    CHECK_THROWS_AS(averaging_projector({ExactMatrix::identity(2), ExactMatrix::identity(3)}), DimensionError);
    CHECK_THROWS_AS(averaging_projector({ExactMatrix(2, 3)}), DimensionError);
  }

  TEST_CASE("homology dimension of two composable maps") {
    CHECK(homology_dim(ExactMatrix(3, 0), ExactMatrix(0, 3)) == 3);
    CHECK(homology_dim(ExactMatrix::identity(2), ExactMatrix(0, 2)) == 0);
    CHECK(homology_dim(ExactMatrix::from_rows({{1}, {1}}), ExactMatrix::from_rows({{1, -1}})) == 0);
    CHECK_THROWS_AS(homology_dim(ExactMatrix::identity(2), ExactMatrix::identity(2)), ContractViolation);
    CHECK_THROWS_AS(homology_dim(ExactMatrix(2, 1), ExactMatrix(1, 3)), ContractViolation);
  }

  TEST_CASE("random: projectors are idempotent") {
    std::mt19937 rng(11);
    // a random conjugate of the S_3 permutation action on Q^3
    ExactMatrix c = random_invertible(rng, 3), ci = inverse(c);
    std::vector<ExactMatrix> mats;
    std::vector<std::vector<int>> perms{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    for (auto& pm : perms) {
      ExactMatrix m(3, 3);
      for (int i = 0; i < 3; ++i) m(pm[i], i) = 1;
      mats.push_back(c * m * ci);
    }
    ExactMatrix p = averaging_projector(mats);
    CHECK(p * p == p);
    CHECK(rank(p) == 1);
  }

  TEST_CASE("random: rank plus nullity") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
      ExactMatrix m = random_matrix(rng, r, c, 2);
      if (trial % 3 == 0 && r > 1)
        for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * 2;
      auto k = kernel_basis(m);
      CHECK(rank(m) + k.size() == c);
      for (auto& v : k) {
        auto img = m.apply(v);
        for (auto& x : img) CHECK(x == 0);
      }
      CHECK(rank(m) == rank(SparseMatrix::from_dense(m)));
    }
  }

  TEST_CASE("random: homology is invariant under change of basis") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 15; ++trial) {
      // C_2 -> C_1 -> C_0 with d_out d_in = 0: d_in maps into ker d_out
      std::size_t n2 = 1 + rng() % 3, n1 = 3 + rng() % 3, n0 = 1 + rng() % 3;
      ExactMatrix d_out = random_matrix(rng, n0, n1, 2);
      auto ker = kernel_basis(d_out);
      ExactMatrix d_in(n1, n2);
      for (std::size_t j = 0; j < n2 && !ker.empty(); ++j) {
        auto& v = ker[rng() % ker.size()];
        Scalar coef(int(rng() % 5) - 2);
        for (std::size_t i = 0; i < n1; ++i) d_in(i, j) = coef * v[i];
      }
      std::size_t h = homology_dim(d_in, d_out);
      ExactMatrix b = random_invertible(rng, n1), bi = inverse(b);
      CHECK(homology_dim(b * d_in, d_out * bi) == h);
      CHECK(h == kernel_basis(d_out).size() - rank(d_in));
    }
  }

  TEST_CASE("sparse and dense agree") {
    ExactMatrix a = ExactMatrix::from_rows({{1, 0, 2}, {0, 3, 0}});
    ExactMatrix b = ExactMatrix::from_rows({{1, 1}, {0, 2}, {5, 0}});
    CHECK((SparseMatrix::from_dense(a) * SparseMatrix::from_dense(b)).to_dense() == a * b);
    SparseMatrix k = kronecker(SparseMatrix::from_dense(a), SparseMatrix::identity(2));
    CHECK(k.rows() == 4);
    CHECK(k.cols() == 6);
    CHECK(k.at(2, 2) == 3);
    CHECK(k.at(3, 3) == 3);
    CHECK(k.at(2, 4) == 0);
    CHECK(k.at(1, 5) == 2);
    CHECK_THROWS_AS(a * a, DimensionError);
  }
}
