#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace twb {

// Bijection of {0..n-1}; img[i] is the image of i. Printed and parsed 1-based.
struct Permutation {
  std::vector<int> img;

  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  static Permutation from_one_based(const std::vector<int>& images);
  // transposition (i i+1)
  static Permutation adjacent(int n, int i);

  int size() const { return static_cast<int>(img.size()); }
  int operator()(int i) const { return img[i]; }
  bool is_identity() const;
  Permutation inverse() const;
  // (this o rhs)(i) = this(rhs(i))
  Permutation operator*(const Permutation& rhs) const;
  bool operator==(const Permutation& rhs) const { return img == rhs.img; }
  bool operator<(const Permutation& rhs) const { return img < rhs.img; }
  int sign() const;
  int cycle_count() const;
  std::vector<int> one_based() const;
  std::string str() const;
};

// g = s_{w[0]} o s_{w[1]} o ... with s_i = (i i+1); length = number of inversions.
std::vector<int> reduced_word(const Permutation& g);

// Monomial matrix: basis vector e_i goes to sign[i] * e_{img[i]}.
struct SignedPerm {
  std::vector<std::uint32_t> img;
  std::vector<std::int8_t> sign;

  static SignedPerm identity(std::size_t n);
  std::size_t size() const { return img.size(); }
  // (this o rhs)
  SignedPerm operator*(const SignedPerm& rhs) const;
  SignedPerm inverse() const;
  bool operator==(const SignedPerm& rhs) const { return img == rhs.img && sign == rhs.sign; }
};

// All permutations of {0..n-1} in lexicographic order of their image sequence.
std::vector<Permutation> all_permutations(int n);

// Permutations preserving each consecutive block of the composition.
std::vector<Permutation> young_subgroup_elements(const std::vector<int>& young);

}  // namespace twb
