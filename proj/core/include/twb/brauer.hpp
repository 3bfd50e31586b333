#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twb/linalg.hpp"

namespace twb {

enum class Shape {
  dub_ord,  // unwalled, ordered list of directed pairs
  dub,      // unwalled, directed pairs (d->ub)
  ub,       // unwalled, unordered pairs
  uwb_ord,  // walled, ordered list of walled pairs
  uwb,      // walled
};

bool is_walled(Shape s);
std::string shape_name(Shape s);
Shape parse_shape(const std::string& s);

// Signs of the twisted linearization: `first` multiplies a reversal of a pair
// (unordered shape only), `order` multiplies a transposition of two pairs.
struct Twist {
  int first = 1;
  int order = 1;
  bool operator==(const Twist&) const = default;
};

struct CatTag {
  Shape shape = Shape::ub;
  bool upward = true;
  Twist twist;

  void validate() const;
  std::string str() const;
  bool operator==(const CatTag&) const = default;
};

// An object: a finite set {0..left-1} (unwalled) or a pair of finite sets.
// Walled labels are concatenated: left labels first, then right labels.
struct Obj {
  int left = 0;
  int right = 0;
  int total() const { return left + right; }
  bool operator==(const Obj&) const = default;
  bool operator<(const Obj& o) const { return std::pair(left, right) < std::pair(o.left, o.right); }
};

// Stored in upward form src -> dst; a downward morphism dst -> src is the same
// data with tag.upward = false.
struct BrauerMorphism {
  CatTag tag;
  Obj src, dst;
  std::vector<int> inj;                 // src label -> dst label
  std::vector<std::pair<int, int>> pairs;
  Scalar coeff = 1;

  int degree() const { return static_cast<int>(pairs.size()); }
  bool same_diagram(const BrauerMorphism& o) const;  // ignores coeff
  std::vector<int> key() const;
  std::string str() const;
};

void check_morphism(const BrauerMorphism& m);
BrauerMorphism normalize(const BrauerMorphism& m);
// f then g (for downward tags: f: X->Y then g: Y->Z in the downward category)
BrauerMorphism compose(const BrauerMorphism& f, const BrauerMorphism& g);
BrauerMorphism identity_morphism(const CatTag& tag, Obj obj);
// permutation as a degree-zero morphism obj -> obj
BrauerMorphism permutation_morphism(const CatTag& tag, Obj obj, const std::vector<int>& perm);

struct HomBasis {
  CatTag tag;
  Obj src, dst;  // in upward orientation
  std::vector<BrauerMorphism> elements;
  std::map<std::vector<int>, std::size_t> index;

  std::size_t size() const { return elements.size(); }
  // index of the normal form of m, with the sign relating them
  std::optional<std::pair<std::size_t, Scalar>> locate(const BrauerMorphism& m) const;
};

// Upward hom space src -> dst (for a downward tag this is the opposite hom dst -> src).
HomBasis hom_basis(const CatTag& tag, Obj src, Obj dst);
mpz_class hom_dimension_formula(const CatTag& tag, Obj src, Obj dst);

BrauerMorphism unwall_morphism(const BrauerMorphism& f);

struct SplitResult {
  std::vector<bool> in_left;  // membership of each target label in X1
  BrauerMorphism walled;      // (u1,u2) -> (|X1|,|X2|), labels relabeled order-preservingly
};
std::optional<SplitResult> split_unwalled(const BrauerMorphism& f, int u1,
                                          const std::optional<std::vector<bool>>& forced_left = std::nullopt);

// Tr: unordered pairs -> directed pair plus `first` times the reversed pair
std::vector<BrauerMorphism> transfer_expand(const BrauerMorphism& f);
// mp: directed pairs -> unordered pairs with the given reversal sign
BrauerMorphism quotient_mp(const BrauerMorphism& f, int first_sign);
BrauerMorphism weight_scale(const BrauerMorphism& f, const Scalar& lambda);
// upsilon: walled pair (s,t) read as the unordered pair {s,t} on concatenated labels
BrauerMorphism upsilon_morphism(const BrauerMorphism& f, int first_sign);

// Degree-one generators in upward form: alpha_(i j): n -> n+2 places i,j
// outside the order-preserving image; beta_(i,j): (m,n) -> (m+1,n+1).
BrauerMorphism alpha_generator(const CatTag& tag, int n, int i, int j);
BrauerMorphism beta_generator(const CatTag& tag, int m, int n, int i, int j);

}  // namespace twb
