#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "twb/brauer.hpp"
#include "twb/linalg.hpp"
#include "twb/operad.hpp"
#include "twb/symfb.hpp"

namespace twb {

// Level key: (n, 0) for unwalled and directed shapes, (p, q) for walled ones.
using Level = std::pair<int, int>;

// Level step of a degree-one generator: (2, 0) or (1, 1).
Level level_step(Shape s);
int level_total(Level l);
std::vector<int> level_young(Shape s, Level l);

// A label pair inside a level. Unwalled: the unordered pair read in the order
// (a, b). Directed: a -> b. Walled: a is a left label, b a right label in
// concatenated numbering.
struct LabelPair {
  int a = 0;
  int b = 0;
};

// Canonical pair of a level: (n-2, n-1) or (p-1, p+q-1).
LabelPair canonical_pair(Shape s, Level l);
// Permutation of the level's letters sending the canonical pair to `pr`,
// order preserving on the remaining letters of each side.
Permutation pair_mover(Shape s, Level l, LabelPair pr);
// All pairs on which a generator can act at the level.
std::vector<LabelPair> all_pairs(Shape s, Level l);

// Module over a downward twisted Brauer category. Only the canonical
// contraction of each level is stored.
struct DownModule {
  CatTag tag;  // upward == false
  int truncation = 0;
  std::map<Level, SymRep> levels;
  std::map<Level, SparseMatrix> contraction;  // L -> L - step
  std::map<Level, std::vector<int>> degree;   // optional per-basis grading

  Shape shape() const { return tag.shape; }
  std::size_t dim(Level l) const;
  SymRep level(Level l) const;
  std::vector<Level> support() const;
  Level lower(Level l) const;
  // canonical contraction, zero matrix when absent
  SparseMatrix canonical(Level l) const;
  SparseMatrix contract_matrix(Level l, LabelPair pr) const;
  SparseVec contract(Level l, LabelPair pr, const SparseVec& v) const;
};

// Module over an upward twisted Brauer category: the canonical generator
// raises L to L + step, adding the canonical pair of the target level.
struct UpModule {
  CatTag tag;  // upward == true
  int truncation = 0;
  std::map<Level, SymRep> levels;
  std::map<Level, SparseMatrix> raising;  // key: source level

  Shape shape() const { return tag.shape; }
  std::size_t dim(Level l) const;
  SymRep level(Level l) const;
  std::vector<Level> support() const;
  Level upper(Level l) const;
  SparseMatrix canonical(Level l) const;
  // pair given in the labels of the target level
  SparseMatrix raise_matrix(Level l, LabelPair pr) const;
};

struct RelationsReport {
  std::vector<std::string> violations;
  std::size_t checked = 0;
  bool ok() const { return violations.empty(); }
};

RelationsReport check_module_relations(const DownModule& m);
RelationsReport check_module_relations(const UpModule& m);

// ---- modules built from operads

DownModule power_module_cyclic(const CyclicOperadData& c, Parity parity, int max_level = -1);
DownModule power_module_dioperad(const DioperadData& d, Parity parity, int max_total = -1);

// Twisted-category tag of a power module.
CatTag power_module_tag(bool walled, Parity parity);

// Labels of a power-module basis element: blocks sorted by minimum label,
// each carrying an operad basis index.
struct PowerBasisElem {
  std::vector<std::vector<int>> blocks;
  std::vector<std::size_t> index;
};
std::vector<PowerBasisElem> power_basis_cyclic(const CyclicOperadData& c, int n);
std::vector<PowerBasisElem> power_basis_dioperad(const DioperadData& d, int p, int q);

DownModule symplectic_tensor_module(int dim2n, int truncation);

// ---- functors

DownModule restrict_dupsilon(const DownModule& g);
DownModule dJ_apply(const DownModule& f, Twist target);
DownModule dXi_push(const DownModule& f);
DownModule dTr_restrict(const DownModule& m, int sign);
// Restriction along the quotient from directed to unordered pairs.
DownModule mp_restrict(const DownModule& g);
// Restriction along the directed upsilon: walled (s, t) read as s -> t.
DownModule dUpsilon_restrict(const DownModule& m);

UpModule J_apply(const UpModule& f, int sign);

struct InducedModule {
  UpModule module;
  // per level: V (the free presentation) -> module level
  std::map<Level, SparseMatrix> quotient;
  std::map<Level, std::size_t> presentation_dim;
  // per level: J(f) level -> module level
  std::map<Level, SparseMatrix> from_J;
};
InducedModule induce_L(const UpModule& f, int sign, int truncation);

// Representable upward module P_src: level L is the hom space src -> L.
UpModule representable_up(const CatTag& tag, Obj src, int truncation);

// Identification of power_module_cyclic(to_cyclic(d)) with dJ(power_module_dioperad(d)):
// a signed permutation per level, from the dJ basis to the cyclic power basis.
std::map<Level, SparseMatrix> dJ_power_identification(const DioperadData& d, Parity parity, int max_level);

bool same_module(const DownModule& a, const DownModule& b, std::string* why = nullptr);

}  // namespace twb
