#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twb/linalg.hpp"
#include "twb/symfb.hpp"

namespace twb {

// mu[(p,q)] : C(p) (x) C(q) -> C(p+q-2), contracting the last label of the first
// block with the last label of the second; result labels are the remaining
// labels of the first block followed by those of the second.
struct CyclicOperadData {
  FBModule underlying;
  std::map<std::pair<int, int>, SparseMatrix> mu;
  std::optional<SparseVec> unit;  // in C(2)
  int truncation = 0;

  std::size_t dim(int n) const { return underlying.dim(n); }
  // stored matrix or the zero matrix of the right shape
  SparseMatrix mu_at(int p, int q) const;
  const SparseMatrix* find_mu(int p, int q) const;
};

// mu[{m1,n1,m2,n2}] : D(m1,n1) (x) D(m2,n2) -> D(m1-1+m2, n1+n2-1), composing
// the last output of the second factor into the last input of the first.
// Result inputs: first's remaining inputs then second's inputs; outputs:
// first's outputs then second's remaining outputs.
struct DioperadData {
  FB2Module underlying;
  std::map<std::array<int, 4>, SparseMatrix> mu;
  std::optional<SparseVec> unit;  // in D(1,1)
  int truncation = 0;             // bound on m+n

  std::size_t dim(int m, int n) const { return underlying.dim(m, n); }
  SparseMatrix mu_at(int m1, int n1, int m2, int n2) const;
  const SparseMatrix* find_mu(int m1, int n1, int m2, int n2) const;
};

struct ReportEntry {
  std::string check;
  int level = -1;  // output level where the failure was detected (total for bi-levels)
  std::string detail;
};

struct ValidationReport {
  std::vector<ReportEntry> failures;
  std::vector<std::string> notes;
  bool ok() const { return failures.empty(); }
  bool has_failure(const std::string& check, int level) const;
  std::string str() const;
};

ValidationReport validate_cyclic(const CyclicOperadData& c);
ValidationReport validate_dioperad(const DioperadData& d);

CyclicOperadData builtin_com_cyclic(int truncation, bool unital = false);
CyclicOperadData builtin_assoc_cyclic(int truncation);
DioperadData builtin_com_operad(int truncation, bool unital = true);
CyclicOperadData zero_cyclic(int truncation);
DioperadData zero_dioperad(int truncation);

DioperadData to_dioperad(const CyclicOperadData& c);
CyclicOperadData to_cyclic(const DioperadData& d);
DioperadData underlying_operad(const DioperadData& d);
DioperadData positive_part(const DioperadData& d);
DioperadData opposite(const DioperadData& d);

bool same_data(const CyclicOperadData& a, const CyclicOperadData& b);
bool same_data(const DioperadData& a, const DioperadData& b);

// ---- labeled elements (used by validators, conversions and power modules)

// An element of C(|labels|) written in the order-preserving labeling of the
// sorted label list.
struct LabeledElem {
  std::vector<int> labels;
  SparseVec vec;
};

// Walled analogue: inputs and outputs are label sets on the two sides.
struct LabeledElem2 {
  std::vector<int> ins, outs;
  SparseVec vec;
};

// Rewrite a vector given in the labeling `from` (position i carries label from[i])
// into the labeling `to` (a permutation of the same labels).
SparseVec reorder_labels(const SymRep& rep, const std::vector<int>& from, const std::vector<int>& to,
                         const SparseVec& v);

LabeledElem cyclic_contract(const CyclicOperadData& c, const LabeledElem& a, int x, const LabeledElem& b, int y);
// s is an input label of a, t an output label of b
LabeledElem2 dioperad_contract(const DioperadData& d, const LabeledElem2& a, int s, const LabeledElem2& b, int t);

}  // namespace twb
