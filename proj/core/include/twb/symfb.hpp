#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "twb/linalg.hpp"
#include "twb/perm.hpp"

namespace twb {

// Representation of a Young subgroup S_{c0} x S_{c1} x ... acting on
// sum(c) letters, each factor on a consecutive block. Stored by the matrices of
// the adjacent transpositions (i i+1) that stay inside a block.
class SymRep {
 public:
  SymRep() : SymRep(std::vector<int>{0}, 0) {}
  // every generator acts as the identity (dim 0 gives the zero representation)
  SymRep(std::vector<int> young, std::size_t dim);
  // gens[i] is the matrix of (i i+1); entries at block boundaries are ignored.
  SymRep(std::vector<int> young, std::size_t dim, std::vector<SparseMatrix> gens);

  static SymRep trivial(std::vector<int> young);
  static SymRep sign(std::vector<int> young);
  static SymRep regular(int n);
  static SymRep from_signed(std::vector<int> young, std::size_t dim, const std::vector<SignedPerm>& gens);

  const std::vector<int>& young() const { return young_; }
  int letters() const { return letters_; }
  std::size_t dim() const { return dim_; }
  bool allowed(int i) const;
  bool contains(const Permutation& g) const;

  const SparseMatrix& generator(int i) const;
  bool is_monomial() const { return !mono_.empty() || dim_ == 0 || letters_ < 2; }
  const SignedPerm& signed_generator(int i) const;

  SparseMatrix eval_perm(const Permutation& g) const;
  ExactMatrix eval_perm_dense(const Permutation& g) const { return eval_perm(g).to_dense(); }
  // Only for monomial representations.
  SignedPerm eval_signed(const Permutation& g) const;
  Scalar character(const Permutation& g) const;

  bool operator==(const SymRep& rhs) const;

 private:
  void init_generators();
  void check_coxeter() const;

  std::vector<int> young_;
  int letters_ = 0;
  std::size_t dim_ = 0;
  std::vector<SparseMatrix> gens_;
  std::vector<SignedPerm> mono_;
  struct Cache {
    std::mutex mu;
    std::map<std::vector<int>, SparseMatrix> dense;
    std::map<std::vector<int>, SignedPerm> mono;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// external tensor product a (x) b of S_young(a) x S_young(b), index (i,j) -> i*dim b + j
SymRep external_tensor(const SymRep& a, const SymRep& b);
// reinterpret with the Young blocks permuted: new block k is old block order[k]
SymRep reorder_blocks(const SymRep& r, const std::vector<int>& order);
// restriction to a finer Young subgroup (consecutive refinement)
SymRep restrict_young(const SymRep& r, const std::vector<int>& finer);
SymRep direct_sum(const std::vector<SymRep>& parts, const std::vector<int>& young);

// Induction along a coarsening of Young compositions. The basis is indexed by
// (assignment of target letters to source blocks, source basis index), with
// assignments in lexicographic order; an assignment is the shuffle coset
// representative that is order preserving on every block.
struct InducedRep {
  SymRep rep;
  std::vector<std::vector<int>> assignments;
  std::size_t source_dim = 0;
};
InducedRep induce_young(const SymRep& source, const std::vector<int>& target_young);
std::vector<std::vector<int>> young_assignments(const std::vector<int>& source_young,
                                                const std::vector<int>& target_young);

// Conjugacy classes of a Young subgroup: representative and class size.
struct ConjClass {
  Permutation rep;
  mpz_class size;
};
std::vector<ConjClass> conjugacy_classes(const std::vector<int>& young);
mpz_class young_order(const std::vector<int>& young);

class FBModule {
 public:
  FBModule() = default;
  static FBModule unit();
  static FBModule k_at(int n);

  void set_level(int n, SymRep rep);
  const SymRep& level(int n) const;
  std::size_t dim(int n) const;
  bool has_level(int n) const { return levels_.count(n) > 0; }
  std::vector<int> support() const;
  int max_level() const;
  bool is_zero() const;
  const std::map<int, SymRep>& levels() const { return levels_; }

 private:
  std::map<int, SymRep> levels_;
};

class FB2Module {
 public:
  using Bilevel = std::pair<int, int>;
  FB2Module() = default;
  static FB2Module unit();
  static FB2Module k_at(int m, int n);

  void set_level(int m, int n, SymRep rep);
  const SymRep& level(int m, int n) const;
  std::size_t dim(int m, int n) const;
  bool has_level(int m, int n) const { return levels_.count({m, n}) > 0; }
  std::vector<Bilevel> support() const;
  bool is_zero() const;
  const std::map<Bilevel, SymRep>& levels() const { return levels_; }

 private:
  std::map<Bilevel, SymRep> levels_;
};

enum class Parity { symmetric, exterior };

FBModule day_convolve(const FBModule& a, const FBModule& b);
FB2Module day_convolve(const FB2Module& a, const FB2Module& b);

// d-th symmetric / exterior Day power, levels up to max_level (default: all).
FBModule power(const FBModule& a, int d, Parity parity, int max_level = -1);
FB2Module power(const FB2Module& a, int d, Parity parity, int max_total = -1);

FB2Module amalg_pull(const FBModule& m);
FBModule amalg_push(const FB2Module& g);

// Coinvariants of a (x) b for the diagonal action; a is a right module whose
// stored generators act as g -> rho_a(g^{-1}). Columns of the result span the
// image of the averaging projector.
ExactMatrix tensor_over_sym(const SymRep& a, const SymRep& b);
// Same dimension through the character inner product.
std::size_t tensor_over_sym_dim(const SymRep& a, const SymRep& b);

// The representation carried by the image of an idempotent commuting with `space`,
// in the reduced echelon basis of image_basis().
SymRep image_rep(const SymRep& space, const ExactMatrix& projector);

mpz_class schur_eval(const FBModule& m, int v_dim);
mpz_class schur_eval(const FB2Module& m, int v_dim, int w_dim);

}  // namespace twb
