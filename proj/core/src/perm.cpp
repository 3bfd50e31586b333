#include "twb/perm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace twb {

Permutation::Permutation(std::vector<int> images) : img(std::move(images)) {
  std::vector<bool> seen(img.size(), false);
  for (int x : img) {
    if (x < 0 || x >= size() || seen[x]) throw std::invalid_argument("not a permutation: " + str());
    seen[x] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return Permutation(std::move(v));
}

Permutation Permutation::from_one_based(const std::vector<int>& images) {
  std::vector<int> v(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) v[i] = images[i] - 1;
  return Permutation(std::move(v));
}

Permutation Permutation::adjacent(int n, int i) {
  Permutation p = identity(n);
  std::swap(p.img[i], p.img[i + 1]);
  return p;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (img[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> v(img.size());
  for (int i = 0; i < size(); ++i) v[img[i]] = i;
  Permutation p;
  p.img = std::move(v);
  return p;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (size() != rhs.size()) throw std::invalid_argument("composing permutations of different sizes");
  Permutation p;
  p.img.resize(img.size());
  for (int i = 0; i < size(); ++i) p.img[i] = img[rhs.img[i]];
  return p;
}

int Permutation::sign() const { return ((size() - cycle_count()) % 2 == 0) ? 1 : -1; }

int Permutation::cycle_count() const {
  std::vector<bool> seen(img.size(), false);
  int c = 0;
  for (int i = 0; i < size(); ++i) {
    if (seen[i]) continue;
    ++c;
    for (int j = i; !seen[j]; j = img[j]) seen[j] = true;
  }
  return c;
}

std::vector<int> Permutation::one_based() const {
  std::vector<int> v(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) v[i] = img[i] + 1;
  return v;
}

std::string Permutation::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(img[i] + 1);
  }
  return s + "]";
}

std::vector<int> reduced_word(const Permutation& g) {
  // bubble sort of the one-line notation: g o s_{i1} o ... o s_{ik} = id
  std::vector<int> w = g.img;
  std::vector<int> steps;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i + 1 < static_cast<int>(w.size()); ++i)
      if (w[i] > w[i + 1]) {
        std::swap(w[i], w[i + 1]);
        steps.push_back(i);
        moved = true;
      }
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

SignedPerm SignedPerm::identity(std::size_t n) {
  SignedPerm p;
  p.img.resize(n);
  std::iota(p.img.begin(), p.img.end(), 0u);
  p.sign.assign(n, 1);
  return p;
}

SignedPerm SignedPerm::operator*(const SignedPerm& rhs) const {
  SignedPerm p;
  p.img.resize(rhs.size());
  p.sign.resize(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    p.img[i] = img[rhs.img[i]];
    p.sign[i] = static_cast<std::int8_t>(rhs.sign[i] * sign[rhs.img[i]]);
  }
  return p;
}

SignedPerm SignedPerm::inverse() const {
  SignedPerm p;
  p.img.resize(size());
  p.sign.resize(size());
  for (std::size_t i = 0; i < size(); ++i) {
    p.img[img[i]] = static_cast<std::uint32_t>(i);
    p.sign[img[i]] = sign[i];
  }
  return p;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::vector<Permutation> out;
  do {
    Permutation p;
    p.img = v;
    out.push_back(std::move(p));
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::vector<Permutation> young_subgroup_elements(const std::vector<int>& young) {
  int n = std::accumulate(young.begin(), young.end(), 0);
  std::vector<Permutation> out{Permutation::identity(n)};
  int off = 0;
  for (int b : young) {
    auto local = all_permutations(b);
    std::vector<Permutation> next;
    for (const auto& g : out)
      for (const auto& h : local) {
        Permutation p = g;
        for (int i = 0; i < b; ++i) p.img[off + i] = off + h.img[i];
        next.push_back(std::move(p));
      }
    out = std::move(next);
    off += b;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace twb
