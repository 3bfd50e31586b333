#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "twb/brauer.hpp"
#include "twb/linalg.hpp"
#include "twb/modules.hpp"
#include "twb/operad.hpp"

namespace twb {

enum class ComplexFlavor { first, second, derived };

// Coinvariant basis of a tensor product X (x)_G Y, where both factors carry
// signed permutation actions. Every pair (x, y) maps to a chain basis vector
// up to sign, or to zero when its orbit carries conflicting signs.
struct ChainSpace {
  std::size_t left_dim = 0, right_dim = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> reps;
  std::vector<std::int64_t> orbit;  // (x * right_dim + y) -> chain index or -1
  std::vector<std::int8_t> sign;

  std::size_t dim() const { return reps.size(); }
  // class of e_x (x) e_y, added to acc with coefficient c
  void project(std::uint32_t x, std::uint32_t y, const Scalar& c, SparseVec& acc) const;
};

enum class RepChoice { lowest, highest };

ChainSpace coinvariant_space(std::size_t left_dim, std::size_t right_dim, const std::vector<SignedPerm>& left_gens,
                             const std::vector<SignedPerm>& right_gens, const std::vector<int>& extra_signs = {},
                             RepChoice choice = RepChoice::lowest);

struct KoszulComplex {
  ComplexFlavor flavor = ComplexFlavor::second;
  bool walled = false;
  CatTag category;  // upward category providing the hom spaces
  Level external{0, 0};
  int truncation = 0;
  std::vector<Level> internal;                 // increasing
  std::map<Level, ChainSpace> spaces;          // may be empty for derived complexes
  std::map<Level, std::size_t> dims;
  std::map<Level, SparseMatrix> differential;  // L -> L - step
  // second flavor: adjacent transpositions of the external object acting on chains
  std::map<Level, std::vector<SignedPerm>> external_action;

  Level step() const { return walled ? Level{1, 1} : Level{2, 0}; }
  std::size_t chain_dim(Level l) const;
  bool certified(Level l) const { return level_total(l) <= truncation - 2; }
  // throws ContractViolation naming the offending sizes
  void check_square_zero() const;
};

struct HomologyRow {
  Level external;
  Level internal;
  std::size_t dim = 0;
  std::size_t chain_dim = 0;
  bool certified = false;
};

struct HomologyTable {
  std::vector<HomologyRow> rows;
  std::size_t at(Level internal) const;
};

struct BuildOptions {
  RepChoice reps = RepChoice::lowest;
};

// Complex category of a module: upward, same shape, first sign kept, ordering sign flipped.
CatTag complex_category(const CatTag& module_tag);

KoszulComplex build_first(const DownModule& m, Level external, int N, const BuildOptions& opt = {});
KoszulComplex build_second(const DownModule& m, Level external, int N, const BuildOptions& opt = {});

// Complex G (x)_groupoid M with differential the sum over all pairs of
// contraction on both factors. G is a right module presented as a downward
// module of the same shape.
KoszulComplex pair_complex(const DownModule& g, const DownModule& m, int N, const BuildOptions& opt = {});

// Representable right module Hom(-, target) of an upward category, presented
// as a downward module: the generator acts by precomposition.
DownModule representable_right(const CatTag& up, Obj target);

HomologyTable homology(const KoszulComplex& c);

// Second walled complexes of m for every external (x, y) with x + y <= N.
std::map<Level, KoszulComplex> walled_second_family(const DownModule& m, int N);

// Tensor the walled family with the dual square bimodule at unwalled external
// size e, for the unwalled category with twist `twist`.
KoszulComplex apply_dual_square_bimodule(const std::map<Level, KoszulComplex>& family, Twist twist, int external,
                                         int N);

struct VerifyReport {
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  bool ok() const { return failures.empty(); }
  std::string str() const;
};

// restrict_dupsilon(cyclic power module) against the dioperad power module of to_dioperad(c)
VerifyReport verify_cyclic_to_dioperad_modules(const CyclicOperadData& c, Parity parity, int N);
// dJ of the dioperad power module against the cyclic power module of to_cyclic(d),
// through the canonical signed identification
VerifyReport verify_dioperad_to_cyclic_modules(const DioperadData& d, Parity parity, int N);

VerifyReport verify_diopd_comparison(const DioperadData& d, Parity parity, int external_bound, int N);
VerifyReport verify_cyclic_inclusion(const CyclicOperadData& c, Parity parity, int N, int external_bound = 2);
VerifyReport verify_unit_vanishing(const DioperadData& o, Parity parity, int N);
// g: right module over the walled category (downward walled presentation);
// m: module over the directed downward category with the opposite ordering sign.
VerifyReport verify_koszul_transport(const DownModule& g, const DownModule& m, int N);

// Both sides of the upsilon restriction dimension identity.
struct DimensionIdentity {
  std::size_t lhs = 0, rhs = 0;
};
DimensionIdentity upsilon_dimension_identity(Twist twist, int u, int x, int y);

}  // namespace twb
