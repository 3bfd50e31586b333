#include "doctest.h"
#include "twb/modules.hpp"

using namespace twb;

namespace {

std::size_t induced_sum(const FB2Module& g, int n) {
  std::size_t total = 0;
  for (int p = 0; p <= n; ++p) {
    mpz_class c = 1;
    for (int i = 0; i < p; ++i) c = c * (n - i) / (i + 1);
    total += c.get_ui() * g.dim(p, n - p);
  }
  return total;
}

SparseVec basis_vector(std::size_t i) { return {{static_cast<std::uint32_t>(i), Scalar(1)}}; }

std::size_t find_blocks(const std::vector<PowerBasisElem>& basis, const std::vector<std::vector<int>>& blocks) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].blocks == blocks) return i;
  FAIL("basis element not found");
  return 0;
}

}  // namespace

TEST_SUITE("modules") {
  TEST_CASE("power module of Com: contraction joins two blocks") {
    CyclicOperadData com = builtin_com_cyclic(6);
    DownModule s = power_module_cyclic(com, Parity::symmetric);
    auto b4 = power_basis_cyclic(com, 4);
    std::size_t two = find_blocks(b4, {{0, 1}, {2, 3}});
    SparseVec v = s.contract({4, 0}, {1, 3}, basis_vector(two));
    REQUIRE(v.size() == 1);
    CHECK(v[0].second == 1);
    CHECK(s.contract({4, 0}, {0, 1}, basis_vector(two)).empty());
    // a single block cannot contract with itself
    CHECK(s.canonical({2, 0}).is_zero());
    DownModule l = power_module_cyclic(com, Parity::exterior);
    CHECK(l.canonical({2, 0}).is_zero());
    CHECK(l.canonical({3, 0}).is_zero());
    CHECK(!l.canonical({4, 0}).is_zero());
  }

  TEST_CASE("power module of the Com operad: walled contraction") {
    DioperadData d = builtin_com_operad(6, false);
    DownModule s = power_module_dioperad(d, Parity::symmetric);
    CHECK(s.canonical({1, 1}).is_zero());
    auto b22 = power_basis_dioperad(d, 2, 2);
    // blocks on concatenated labels: inputs 0,1 and outputs 2,3
    std::size_t two = find_blocks(b22, {{0, 2}, {1, 3}});
    SparseVec v = s.contract({2, 2}, {0, 3}, basis_vector(two));
    REQUIRE(v.size() == 1);
    CHECK(v[0].second == 1);
    CHECK(s.contract({2, 2}, {0, 2}, basis_vector(two)).empty());
  }

  TEST_CASE("reversing the contracted pair multiplies by the first sign") {
    for (int which = 0; which < 2; ++which)
      for (Parity p : {Parity::symmetric, Parity::exterior}) {
        CyclicOperadData c = which ? builtin_assoc_cyclic(5) : builtin_com_cyclic(5);
        DownModule m = power_module_cyclic(c, p);
        int first = m.tag.twist.first;
        CHECK(first == (p == Parity::symmetric ? 1 : -1));
        for (Level l : m.support())
          for (LabelPair pr : all_pairs(m.shape(), l))
            CHECK(m.contract_matrix(l, {pr.b, pr.a}) == m.contract_matrix(l, pr).scaled(first));
      }
  }

  TEST_CASE("relations hold on every constructed module") {
    std::vector<DownModule> mods;
    for (Parity p : {Parity::symmetric, Parity::exterior}) {
      DownModule pc = power_module_cyclic(builtin_com_cyclic(6), p);
      mods.push_back(pc);
      mods.push_back(mp_restrict(pc));
      mods.push_back(power_module_cyclic(builtin_assoc_cyclic(5), p));
      DownModule pd = power_module_dioperad(to_dioperad(builtin_com_cyclic(5)), p);
      mods.push_back(pd);
      mods.push_back(power_module_dioperad(builtin_com_operad(6), p));
      int s = p == Parity::symmetric ? 1 : -1;
      mods.push_back(dJ_apply(pd, {s, s}));
      mods.push_back(dJ_apply(pd, {-s, s}));
      mods.push_back(dXi_push(pd));
    }
    mods.push_back(symplectic_tensor_module(2, 5));
    mods.push_back(restrict_dupsilon(symplectic_tensor_module(4, 4)));
    for (const auto& m : mods) {
      RelationsReport r = check_module_relations(m);
      CHECK_MESSAGE(r.ok(), m.tag.str() << ": " << (r.ok() ? "" : r.violations.front()));
      CHECK(r.checked > 0);
    }
    DownModule empty;
    empty.tag = power_module_tag(false, Parity::symmetric);
    CHECK(check_module_relations(empty).ok());
  }

  TEST_CASE("a sign-flipped mutant fails the relations check") {
    DownModule m = power_module_cyclic(builtin_com_cyclic(6), Parity::symmetric);
    SparseMatrix k = m.contraction.at({4, 0});
    std::size_t j = 0;
    while (k.col(j).empty()) ++j;
    k.set_col(j, sparse_scaled(k.col(j), -1));
    m.contraction[{4, 0}] = k;
    CHECK(!check_module_relations(m).ok());
  }

  TEST_CASE("cyclic power modules restrict to dioperad power modules") {
    for (Parity p : {Parity::symmetric, Parity::exterior}) {
      CyclicOperadData c = builtin_com_cyclic(5);
      std::string why;
      CHECK_MESSAGE(same_module(restrict_dupsilon(power_module_cyclic(c, p)), power_module_dioperad(to_dioperad(c), p), &why),
                    why);
    }
    DownModule empty;
    empty.tag = power_module_tag(false, Parity::exterior);
    CHECK(restrict_dupsilon(empty).levels.empty());
  }

  TEST_CASE("composite functors agree") {
    for (Parity p : {Parity::symmetric, Parity::exterior}) {
      int s = p == Parity::symmetric ? 1 : -1;
      CyclicOperadData c = builtin_assoc_cyclic(5);
      DownModule pc = power_module_cyclic(c, p);
      DownModule pd = power_module_dioperad(to_dioperad(c), p);
      std::string why;
      CHECK_MESSAGE(same_module(dTr_restrict(dXi_push(pd), s), dJ_apply(pd, {s, s}), &why), why);
      CHECK_MESSAGE(same_module(dUpsilon_restrict(mp_restrict(pc)), restrict_dupsilon(pc), &why), why);
    }
    DownModule empty;
    empty.tag = power_module_tag(true, Parity::symmetric);
    CHECK(dJ_apply(empty, {1, 1}).levels.empty());
  }

  TEST_CASE("unwalled levels are sums of induced walled levels") {
    DioperadData d = builtin_com_operad(5);
    DownModule pd = power_module_dioperad(d, Parity::exterior);
    DownModule dj = dJ_apply(pd, {1, -1});
    FB2Module under;
    for (const auto& [l, r] : pd.levels) under.set_level(l.first, l.second, r);
    for (int n = 0; n <= 5; ++n) CHECK(dj.dim({n, 0}) == induced_sum(under, n));
  }

  TEST_CASE("transfer after quotient doubles the contraction") {
    for (Parity p : {Parity::symmetric, Parity::exterior}) {
      DownModule m = power_module_cyclic(builtin_com_cyclic(6), p);
      int s = m.tag.twist.first;
      DownModule directed = mp_restrict(m);
      DownModule doubled = dTr_restrict(directed, s);
      DownModule killed = dTr_restrict(directed, -s);
      for (Level l : m.support()) {
        CHECK(doubled.canonical(l) == m.canonical(l).scaled(2));
        CHECK(killed.canonical(l).is_zero());
      }
    }
  }

  TEST_CASE("symplectic tensor module") {
    DownModule v = symplectic_tensor_module(4, 4);
    for (int k = 0; k <= 4; ++k) {
      std::size_t e = 1;
      for (int i = 0; i < k; ++i) e *= 4;
      CHECK(v.dim({k, 0}) == e);
    }
    for (Level l : v.support())
      for (LabelPair pr : all_pairs(v.shape(), l))
        CHECK(v.contract_matrix(l, {pr.b, pr.a}) == v.contract_matrix(l, pr).scaled(-1));
    CHECK(v.tag.twist == Twist{-1, 1});
    CHECK_THROWS(symplectic_tensor_module(3, 4));
  }

  TEST_CASE("J and L on representables") {
    for (int order : {1, -1})
      for (int sign : {1, -1}) {
        CatTag w{Shape::uwb, true, {1, order}};
        CatTag u{Shape::ub, true, {sign, order}};
        for (Obj src : {Obj{0, 0}, Obj{1, 0}, Obj{1, 1}, Obj{2, 1}}) {
          UpModule p = representable_up(w, src, 5);
          UpModule j = J_apply(p, sign);
          InducedModule l = induce_L(p, sign, 5);
          CHECK(check_module_relations(j).ok());
          CHECK(check_module_relations(l.module).ok());
          FB2Module under;
          for (const auto& [lv, r] : p.levels) under.set_level(lv.first, lv.second, r);
          for (int n = 0; n <= 5; ++n) {
            CHECK(j.dim({n, 0}) == induced_sum(under, n));
            // the induced module of a representable is representable
            CHECK(l.module.dim({n, 0}) == hom_basis(u, {src.total(), 0}, {n, 0}).size());
            // J surjects onto L
            if (l.module.dim({n, 0})) CHECK(rank(l.from_J.at({n, 0})) == l.module.dim({n, 0}));
          }
        }
      }
    UpModule empty;
    empty.tag = CatTag{Shape::uwb, true, {1, 1}};
    CHECK(J_apply(empty, 1).levels.empty());
    CHECK(induce_L(empty, 1, 4).module.levels.empty());
  }
}
