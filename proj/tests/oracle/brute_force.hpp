#pragma once

// Independent dense enumerator of Koszul complexes for Com-type power modules.
// Shares nothing with the engine beyond mpq_class.

#include <gmpxx.h>

#include <map>
#include <utility>
#include <vector>

namespace oracle {

struct Spot {
  std::pair<int, int> internal;
  std::size_t chain_dim = 0;
  std::size_t homology = 0;
};

struct Result {
  std::vector<Spot> spots;  // increasing internal size
  // the oracle's differential descends to coinvariants (checked on every spot)
  bool well_defined = true;
  bool square_zero = true;
};

enum class Flavor { first, second };

// Unwalled: power module of the cyclic operad with one-dimensional trivial
// components in every arity >= 2 and all compositions equal to 1.
Result unwalled_com(bool exterior, Flavor flavor, int external, int N);

// Walled: power module of a dioperad with one-dimensional trivial components
// on the allowed bi-arities and all compositions 1. `operad_only` restricts
// to one output and at least one input; otherwise every (m, n) with m + n >= 2.
Result walled_com(bool exterior, bool operad_only, Flavor flavor, std::pair<int, int> external, int N);

std::size_t dense_rank(std::vector<std::vector<mpq_class>> rows);

}  // namespace oracle
