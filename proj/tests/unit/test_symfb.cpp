#include "doctest.h"
#include "twb/operad.hpp"
#include "twb/symfb.hpp"

using namespace twb;

namespace {

FBModule upto(const FBModule& m, int top) {
  FBModule out;
  for (const auto& [n, r] : m.levels())
    if (n <= top) out.set_level(n, r);
  return out;
}

}  // namespace

TEST_SUITE("symfb") {
  TEST_CASE("permutations") {
    Permutation p({1, 2, 0});
    CHECK((p * p.inverse()).is_identity());
    CHECK(p.sign() == 1);
    CHECK(Permutation::adjacent(3, 0).sign() == -1);
    auto w = reduced_word(p);
    Permutation q = Permutation::identity(3);
    for (int i : w) q = q * Permutation::adjacent(3, i);
    CHECK(q == p);
  }

  TEST_CASE("evaluation of group elements") {
    SymRep reg = SymRep::regular(3);
    CHECK(reg.eval_perm(Permutation::identity(3)) == SparseMatrix::identity(6));
    CHECK(SymRep::sign({2}).eval_perm(Permutation::adjacent(2, 0)).at(0, 0) == -1);
    // the regular representation is a permutation action: every column has a single 1
    Permutation c({1, 2, 0});
    SparseMatrix m = reg.eval_perm(c);
    for (std::size_t j = 0; j < 6; ++j) {
      REQUIRE(m.col(j).size() == 1);
      CHECK(m.col(j)[0].second == 1);
    }
    // independent of the word: products of evaluations agree with evaluating products
    for (const auto& g : all_permutations(3))
      for (const auto& h : all_permutations(3)) CHECK(reg.eval_perm(g * h) == reg.eval_perm(g) * reg.eval_perm(h));
    CHECK(reg.character(Permutation::identity(3)) == 6);
    CHECK(reg.character(c) == 0);
  }

  TEST_CASE("Coxeter relations are checked on construction") {
    SparseMatrix bad(1, 1);
    bad.set_col(0, {{0, Scalar(2)}});
    CHECK_THROWS(SymRep({2}, 1, {bad}));
  }

  TEST_CASE("Day convolution") {
    FBModule k1 = FBModule::k_at(1);
    FBModule sq = day_convolve(k1, k1);
    CHECK(sq.dim(2) == 2);
    CHECK(sq.level(2).character(Permutation::adjacent(2, 0)) == 0);  // regular rep of S_2
    CHECK(day_convolve(k1, FBModule()).is_zero());
    FB2Module k11 = FB2Module::k_at(1, 1);
    FB2Module sq2 = day_convolve(k11, k11);
    CHECK(sq2.dim(2, 2) == 4);
    CHECK(sq2.level(2, 2).character(Permutation({1, 0, 2, 3})) == 0);
    CHECK(sq2.level(2, 2).character(Permutation({1, 0, 3, 2})) == 0);
  }

  TEST_CASE("Day convolution is symmetric up to the swap") {
    FBModule a = upto(builtin_assoc_cyclic(4).underlying, 3), b = FBModule::k_at(2);
    FBModule ab = day_convolve(a, b), ba = day_convolve(b, a);
    for (int n = 0; n <= 5; ++n) {
      CHECK(ab.dim(n) == ba.dim(n));
      if (ab.dim(n) == 0) continue;
      for (const auto& g : all_permutations(n)) CHECK(ab.level(n).character(g) == ba.level(n).character(g));
    }
  }

  TEST_CASE("symmetric and exterior powers") {
    FBModule k1 = FBModule::k_at(1);
    SymRep s2 = power(k1, 2, Parity::symmetric).level(2);
    SymRep l2 = power(k1, 2, Parity::exterior).level(2);
    CHECK(s2.dim() == 1);
    CHECK(l2.dim() == 1);
    CHECK(s2.character(Permutation::adjacent(2, 0)) == 1);
    CHECK(l2.character(Permutation::adjacent(2, 0)) == -1);
    for (int d = 0; d <= 4; ++d) {
      FB2Module p = power(FB2Module::k_at(1, 1), d, Parity::symmetric);
      mpz_class f = 1;
      for (int i = 2; i <= d; ++i) f *= i;
      CHECK(p.dim(d, d) == f.get_ui());
    }
    CHECK(power(k1, 0, Parity::exterior).dim(0) == 1);
  }

  TEST_CASE("disjoint union pullback and pushforward") {
    CHECK(amalg_pull(FBModule::unit()).dim(0, 0) == 1);
    FB2Module p2 = amalg_pull(FBModule::k_at(2));
    CHECK(p2.dim(2, 0) == 1);
    CHECK(p2.dim(1, 1) == 1);
    CHECK(p2.dim(0, 2) == 1);
    CHECK(amalg_pull(FBModule()).is_zero());
    FBModule q = amalg_push(FB2Module::k_at(1, 1));
    CHECK(q.dim(2) == 2);
    CHECK(q.level(2).character(Permutation::adjacent(2, 0)) == 0);
    CHECK(amalg_push(FB2Module::unit()).dim(0) == 1);
    CHECK(amalg_push(p2).dim(2) == 4);
  }

  TEST_CASE("tensor over the symmetric group") {
    CHECK(tensor_over_sym(SymRep::trivial({2}), SymRep::trivial({2})).cols() == 1);
    CHECK(tensor_over_sym(SymRep::trivial({2}), SymRep::sign({2})).cols() == 0);
    SymRep v = SymRep::regular(3);
    CHECK(tensor_over_sym(SymRep::regular(3), v).cols() == 6);
    CHECK(tensor_over_sym_dim(SymRep::regular(3), SymRep::sign({3})) == 1);
    CHECK(tensor_over_sym_dim(SymRep::regular(3), v) == tensor_over_sym(SymRep::regular(3), v).cols());
  }

  TEST_CASE("Schur evaluation") {
    CHECK(schur_eval(FBModule::k_at(1), 5) == 5);
    CHECK(schur_eval(power(FBModule::k_at(1), 2, Parity::exterior), 3) == 3);
    CHECK(schur_eval(day_convolve(FBModule::k_at(1), FBModule::k_at(1)), 2) == 4);
    CHECK(schur_eval(FB2Module::k_at(1, 1), 2, 3) == 6);
  }

  TEST_CASE("Frobenius reciprocity at the level of dimensions") {
    // sum over levels of dim (push G) (x)_S M equals the bi-level sum of dim G (x)_{S x S} pull M
    FB2Module g;
    g.set_level(1, 1, SymRep::trivial({1, 1}));
    g.set_level(2, 1, SymRep::sign({2, 1}));
    g.set_level(0, 2, SymRep::sign({0, 2}));
    FBModule m = upto(builtin_assoc_cyclic(4).underlying, 3);
    m.set_level(2, SymRep::regular(2));
    FBModule pushed = amalg_push(g);
    FB2Module pulled = amalg_pull(m);
    std::size_t lhs = 0, rhs = 0;
    for (const auto& [n, r] : pushed.levels())
      if (m.has_level(n)) lhs += tensor_over_sym_dim(r, m.level(n));
    for (const auto& [k, r] : g.levels())
      if (pulled.has_level(k.first, k.second)) rhs += tensor_over_sym_dim(r, pulled.level(k.first, k.second));
    CHECK(lhs == rhs);
    CHECK(lhs > 0);
  }

  TEST_CASE("image representations of idempotents") {
    SymRep reg = SymRep::regular(3);
    std::vector<ExactMatrix> mats;
    for (const auto& g : all_permutations(3)) mats.push_back(reg.eval_perm(g).to_dense());
    SymRep inv = image_rep(reg, averaging_projector(mats));
    CHECK(inv.dim() == 1);
    CHECK(inv.character(Permutation({1, 2, 0})) == 1);
  }
}
