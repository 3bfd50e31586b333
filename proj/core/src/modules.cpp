#include "twb/modules.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>
#include <type_traits>

namespace twb {

namespace {

SparseVec unit_vec(std::size_t i, const Scalar& c = 1) { return {{static_cast<std::uint32_t>(i), c}}; }

// sign of the permutation listing old positions in their new order
int order_sign(const std::vector<int>& order) {
  int inv = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) inv += order[i] > order[j];
  return inv % 2 ? -1 : 1;
}

bool valid(Level l) { return l.first >= 0 && l.second >= 0; }

Level add(Level a, Level b) { return {a.first + b.first, a.second + b.second}; }
Level sub(Level a, Level b) { return {a.first - b.first, a.second - b.second}; }

std::string level_str(Level l) { return "(" + std::to_string(l.first) + "," + std::to_string(l.second) + ")"; }

// order-preserving relabeling after deleting labels x and y
int drop2(int l, int x, int y) { return l - (l > x) - (l > y); }

// generator of the lower level that a stabilizer generator of the canonical
// pair restricts to; -1 when s_i moves a canonical label, -2 for the swap of
// the canonical pair itself
int restricted_generator(Shape s, Level l, int i) {
  if (is_walled(s)) {
    int p = l.first, n = level_total(l);
    if (i < p - 2) return i;
    if (i >= p && i < n - 2) return i - 1;
    return -1;
  }
  int n = l.first;
  if (i < n - 3) return i;
  if (i == n - 2 && s == Shape::ub) return -2;
  return -1;
}

BrauerMorphism degree_one(const CatTag& up, Shape s, Level target, LabelPair pr) {
  if (is_walled(s)) return beta_generator(up, target.first - 1, target.second - 1, pr.a, pr.b - target.first);
  return alpha_generator(up, target.first - 2, pr.a, pr.b);
}

LabelPair relabel_pair(LabelPair q, LabelPair removed) {
  return {drop2(q.a, removed.a, removed.b), drop2(q.b, removed.a, removed.b)};
}

bool disjoint(LabelPair x, LabelPair y) { return x.a != y.a && x.a != y.b && x.b != y.a && x.b != y.b; }

}  // namespace

Level level_step(Shape s) { return is_walled(s) ? Level{1, 1} : Level{2, 0}; }

int level_total(Level l) { return l.first + l.second; }

std::vector<int> level_young(Shape s, Level l) {
  if (is_walled(s)) return {l.first, l.second};
  return {l.first};
}

LabelPair canonical_pair(Shape s, Level l) {
  if (is_walled(s)) return {l.first - 1, level_total(l) - 1};
  return {l.first - 2, l.first - 1};
}

Permutation pair_mover(Shape s, Level l, LabelPair pr) {
  int n = level_total(l);
  std::vector<int> img(n);
  if (is_walled(s)) {
    int p = l.first;
    int k = 0;
    for (int x = 0; x < p; ++x)
      if (x != pr.a) img[k++] = x;
    img[p - 1] = pr.a;
    k = p;
    for (int x = p; x < n; ++x)
      if (x != pr.b) img[k++] = x;
    img[n - 1] = pr.b;
  } else {
    int k = 0;
    for (int x = 0; x < n; ++x)
      if (x != pr.a && x != pr.b) img[k++] = x;
    img[n - 2] = pr.a;
    img[n - 1] = pr.b;
  }
  return Permutation(std::move(img));
}

std::vector<LabelPair> all_pairs(Shape s, Level l) {
  std::vector<LabelPair> out;
  int n = level_total(l);
  if (is_walled(s)) {
    for (int a = 0; a < l.first; ++a)
      for (int b = l.first; b < n; ++b) out.push_back({a, b});
  } else if (s == Shape::ub) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) out.push_back({a, b});
  } else {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b) out.push_back({a, b});
  }
  return out;
}

// ---------------------------------------------------------------- DownModule

std::size_t DownModule::dim(Level l) const {
  auto it = levels.find(l);
  return it == levels.end() ? 0 : it->second.dim();
}

SymRep DownModule::level(Level l) const {
  auto it = levels.find(l);
  if (it != levels.end()) return it->second;
  if (!valid(l)) throw std::invalid_argument("negative level " + level_str(l));
  return SymRep(level_young(shape(), l), 0);
}

std::vector<Level> DownModule::support() const {
  std::vector<Level> out;
  for (const auto& [l, r] : levels)
    if (r.dim()) out.push_back(l);
  return out;
}

Level DownModule::lower(Level l) const { return sub(l, level_step(shape())); }

SparseMatrix DownModule::canonical(Level l) const {
  Level d = lower(l);
  std::size_t rows = valid(d) ? dim(d) : 0;
  auto it = contraction.find(l);
  if (it != contraction.end()) return it->second;
  return SparseMatrix(rows, dim(l));
}

SparseMatrix DownModule::contract_matrix(Level l, LabelPair pr) const {
  SparseMatrix k = canonical(l);
  if (k.is_zero()) return k;
  Permutation mover = pair_mover(shape(), l, pr);
  if (mover.is_identity()) return k;
  return k * levels.at(l).eval_perm(mover.inverse());
}

SparseVec DownModule::contract(Level l, LabelPair pr, const SparseVec& v) const {
  return contract_matrix(l, pr).apply(v);
}

// ---------------------------------------------------------------- UpModule

std::size_t UpModule::dim(Level l) const {
  auto it = levels.find(l);
  return it == levels.end() ? 0 : it->second.dim();
}

SymRep UpModule::level(Level l) const {
  auto it = levels.find(l);
  if (it != levels.end()) return it->second;
  if (!valid(l)) throw std::invalid_argument("negative level " + level_str(l));
  return SymRep(level_young(shape(), l), 0);
}

std::vector<Level> UpModule::support() const {
  std::vector<Level> out;
  for (const auto& [l, r] : levels)
    if (r.dim()) out.push_back(l);
  return out;
}

Level UpModule::upper(Level l) const { return add(l, level_step(shape())); }

SparseMatrix UpModule::canonical(Level l) const {
  auto it = raising.find(l);
  if (it != raising.end()) return it->second;
  return SparseMatrix(dim(upper(l)), dim(l));
}

SparseMatrix UpModule::raise_matrix(Level l, LabelPair pr) const {
  SparseMatrix a = canonical(l);
  if (a.is_zero()) return a;
  Level u = upper(l);
  Permutation mover = pair_mover(shape(), u, pr);
  if (mover.is_identity()) return a;
  return levels.at(u).eval_perm(mover) * a;
}

// ---------------------------------------------------------------- relations

namespace {

// Sign s with  alpha_P o alpha_Q' = s * alpha_Q o alpha_P'  in the upward category.
int quadratic_sign(const CatTag& up, Shape s, Level top, LabelPair P, LabelPair Q) {
  Level mid = sub(top, level_step(s));
  BrauerMorphism gP = degree_one(up, s, top, P), gQ = degree_one(up, s, top, Q);
  BrauerMorphism gQ1 = degree_one(up, s, mid, relabel_pair(Q, P));
  BrauerMorphism gP1 = degree_one(up, s, mid, relabel_pair(P, Q));
  BrauerMorphism left = compose(gQ1, gP), right = compose(gP1, gQ);
  if (!left.same_diagram(right)) throw std::logic_error("quadratic relation: diagrams differ");
  Scalar r = left.coeff / right.coeff;
  return r > 0 ? 1 : -1;
}

std::vector<std::pair<LabelPair, LabelPair>> relation_cells(Shape s, Level top, std::size_t dim) {
  auto pairs = all_pairs(s, top);
  std::vector<std::pair<LabelPair, LabelPair>> cells;
  // very large levels: fix the first pair to the canonical one
  bool full = dim * pairs.size() * pairs.size() <= 4000000;
  LabelPair can = canonical_pair(s, top);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if (!disjoint(pairs[i], pairs[j])) continue;
      if (!full && !((pairs[i].a == can.a && pairs[i].b == can.b) || (pairs[j].a == can.a && pairs[j].b == can.b)))
        continue;
      cells.emplace_back(pairs[i], pairs[j]);
    }
  return cells;
}

template <class Module>
RelationsReport check_levels(const Module& m, bool down) {
  RelationsReport rep;
  Shape s = m.shape();
  CatTag up = m.tag;
  up.upward = true;
  try {
    up.validate();
  } catch (const std::exception& e) {
    rep.violations.push_back(std::string("tag: ") + e.what());
    return rep;
  }

  std::vector<Level> tops;
  for (const auto& [l, r] : m.levels) {
    Level t = down ? l : add(l, level_step(s));
    if (valid(sub(t, level_step(s)))) tops.push_back(t);
  }

  auto work = [&](Level top) {
    RelationsReport local;
    Level mid = sub(top, level_step(s));
    SymRep rt = m.level(top), rm = m.level(mid);
    SparseMatrix K = down ? m.canonical(top) : m.canonical(mid);
    std::size_t want_rows = down ? rm.dim() : rt.dim(), want_cols = down ? rt.dim() : rm.dim();
    if (K.rows() != want_rows || K.cols() != want_cols) {
      local.violations.push_back("shape of the generator at " + level_str(top));
      return local;
    }
    int n = level_total(top);
    for (int i = 0; i + 1 < n; ++i) {
      if (!rt.allowed(i)) continue;
      int j = restricted_generator(s, top, i);
      if (j == -1) continue;
      ++local.checked;
      bool ok;
      if (j == -2) {
        SparseMatrix lhs = down ? K * rt.generator(i) : rt.generator(i) * K;
        ok = lhs == K.scaled(m.tag.twist.first);
      } else {
        ok = down ? K * rt.generator(i) == rm.generator(j) * K : rt.generator(i) * K == K * rm.generator(j);
      }
      if (!ok)
        local.violations.push_back("equivariance at " + level_str(top) + " for (" + std::to_string(i + 1) + " " +
                                   std::to_string(i + 2) + ")");
    }
    Level bottom = sub(mid, level_step(s));
    if (!valid(bottom) || !rt.dim() || !m.level(bottom).dim()) return local;
    auto cells = relation_cells(s, top, rt.dim());
    for (const auto& [P, Q] : cells) {
      ++local.checked;
      int sg = quadratic_sign(up, s, top, P, Q);
      LabelPair Q1 = relabel_pair(Q, P), P1 = relabel_pair(P, Q);
      bool ok;
      if constexpr (std::is_same_v<Module, DownModule>) {
        SparseMatrix a = m.contract_matrix(mid, Q1) * m.contract_matrix(top, P);
        SparseMatrix b = m.contract_matrix(mid, P1) * m.contract_matrix(top, Q);
        ok = a == b.scaled(sg);
      } else {
        SparseMatrix a = m.raise_matrix(mid, P) * m.raise_matrix(bottom, Q1);
        SparseMatrix b = m.raise_matrix(mid, Q) * m.raise_matrix(bottom, P1);
        ok = a == b.scaled(sg);
      }
      if (!ok)
        local.violations.push_back("quadratic relation at " + level_str(top) + " for pairs (" +
                                   std::to_string(P.a) + "," + std::to_string(P.b) + ") and (" +
                                   std::to_string(Q.a) + "," + std::to_string(Q.b) + ")");
    }
    return local;
  };

  std::vector<std::future<RelationsReport>> jobs;
  for (Level t : tops) jobs.push_back(std::async(std::launch::async, work, t));
  for (auto& j : jobs) {
    RelationsReport r = j.get();
    rep.checked += r.checked;
    rep.violations.insert(rep.violations.end(), r.violations.begin(), r.violations.end());
  }
  return rep;
}

}  // namespace

RelationsReport check_module_relations(const DownModule& m) {
  if (m.tag.upward) return {{"downward module carries an upward tag"}, 0};
  return check_levels(m, true);
}

RelationsReport check_module_relations(const UpModule& m) {
  if (!m.tag.upward) return {{"upward module carries a downward tag"}, 0};
  return check_levels(m, false);
}

// ---------------------------------------------------------------- power modules

CatTag power_module_tag(bool walled, Parity parity) {
  int s = parity == Parity::symmetric ? 1 : -1;
  CatTag t;
  t.upward = false;
  if (walled) {
    t.shape = Shape::uwb;
    t.twist = {1, s};
  } else {
    t.shape = Shape::ub;
    t.twist = {s, s};
  }
  return t;
}

namespace {

// Set partitions of {0..n-1}, blocks listed by increasing minimum, in the
// lexicographic order of restricted growth strings.
void set_partitions(int n, std::vector<int>& rgs, int blocks, std::vector<std::vector<std::vector<int>>>& out) {
  int k = static_cast<int>(rgs.size());
  if (k == n) {
    std::vector<std::vector<int>> parts(blocks);
    for (int i = 0; i < n; ++i) parts[rgs[i]].push_back(i);
    out.push_back(std::move(parts));
    return;
  }
  for (int b = 0; b <= blocks; ++b) {
    rgs.push_back(b);
    set_partitions(n, rgs, std::max(blocks, b + 1), out);
    rgs.pop_back();
  }
}

using BlockDim = std::function<std::size_t(const std::vector<int>&)>;

std::vector<PowerBasisElem> power_basis(int n, const BlockDim& block_dim) {
  std::vector<std::vector<std::vector<int>>> parts;
  std::vector<int> rgs;
  set_partitions(n, rgs, 0, parts);
  std::vector<PowerBasisElem> out;
  for (auto& bl : parts) {
    std::vector<std::size_t> dims;
    bool ok = true;
    for (const auto& b : bl) {
      dims.push_back(block_dim(b));
      if (!dims.back()) ok = false;
    }
    if (!ok) continue;
    std::vector<std::size_t> idx(bl.size(), 0);
    while (true) {
      out.push_back({bl, idx});
      int k = static_cast<int>(idx.size()) - 1;
      while (k >= 0 && ++idx[k] == dims[k]) idx[k--] = 0;
      if (k < 0) break;
    }
  }
  return out;
}

std::vector<int> elem_key(const PowerBasisElem& e) {
  std::vector<int> key;
  for (std::size_t b = 0; b < e.blocks.size(); ++b) {
    key.insert(key.end(), e.blocks[b].begin(), e.blocks[b].end());
    key.push_back(-1);
    key.push_back(static_cast<int>(e.index[b]));
    key.push_back(-2);
  }
  return key;
}

struct PowerLevel {
  std::vector<PowerBasisElem> basis;
  std::map<std::vector<int>, std::uint32_t> index;
};

PowerLevel make_level(std::vector<PowerBasisElem> basis) {
  PowerLevel lv;
  lv.basis = std::move(basis);
  for (std::size_t i = 0; i < lv.basis.size(); ++i) lv.index[elem_key(lv.basis[i])] = static_cast<std::uint32_t>(i);
  return lv;
}

// Sort blocks by minimum label; returns the sign of the reordering.
int sort_blocks(PowerBasisElem& e) {
  std::vector<int> order(e.blocks.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return e.blocks[a].front() < e.blocks[b].front(); });
  PowerBasisElem out;
  for (int o : order) {
    out.blocks.push_back(e.blocks[o]);
    out.index.push_back(e.index[o]);
  }
  e = std::move(out);
  return order_sign(order);
}

// Action of (i i+1) on a basis element; block_rep gives the operad level of a block.
std::pair<std::uint32_t, int> act_adjacent(const PowerLevel& lv, std::size_t j, int i, bool exterior,
                                           const std::function<const SymRep&(const std::vector<int>&)>& block_rep) {
  PowerBasisElem e = lv.basis[j];
  int sign = 1;
  int bi = -1, bj = -1;
  for (std::size_t b = 0; b < e.blocks.size(); ++b)
    for (int l : e.blocks[b]) {
      if (l == i) bi = static_cast<int>(b);
      if (l == i + 1) bj = static_cast<int>(b);
    }
  if (bi == bj) {
    auto& blk = e.blocks[bi];
    int r = static_cast<int>(std::find(blk.begin(), blk.end(), i) - blk.begin());
    const SignedPerm& g = block_rep(blk).signed_generator(r);
    sign *= g.sign[e.index[bi]];
    e.index[bi] = g.img[e.index[bi]];
  } else {
    for (int& l : e.blocks[bi]) l = (l == i ? i + 1 : l);
    for (int& l : e.blocks[bj]) l = (l == i + 1 ? i : l);
    int s = sort_blocks(e);
    if (exterior) sign *= s;
  }
  return {lv.index.at(elem_key(e)), sign};
}

SymRep level_rep(const PowerLevel& lv, const std::vector<int>& young, bool exterior,
                 const std::function<const SymRep&(const std::vector<int>&)>& block_rep) {
  int n = std::accumulate(young.begin(), young.end(), 0);
  SymRep probe(young, 0);
  std::vector<SignedPerm> gens;
  for (int i = 0; i + 1 < n; ++i) {
    SignedPerm g = SignedPerm::identity(lv.basis.size());
    if (probe.allowed(i))
      for (std::size_t j = 0; j < lv.basis.size(); ++j) {
        auto [t, s] = act_adjacent(lv, j, i, exterior, block_rep);
        g.img[j] = t;
        g.sign[j] = static_cast<std::int8_t>(s);
      }
    gens.push_back(std::move(g));
  }
  return SymRep::from_signed(young, lv.basis.size(), gens);
}

// Contraction of a basis element at (x, y); `merge` contracts the two blocks
// and returns the merged block's labels (sorted) and vector.
using Merge = std::function<LabeledElem(const std::vector<int>&, std::size_t, int, const std::vector<int>&,
                                        std::size_t, int)>;

SparseVec contract_elem(const PowerBasisElem& e0, int x, int y, bool exterior, const PowerLevel& lower,
                        const Merge& merge) {
  int bx = -1, by = -1;
  for (std::size_t b = 0; b < e0.blocks.size(); ++b)
    for (int l : e0.blocks[b]) {
      if (l == x) bx = static_cast<int>(b);
      if (l == y) by = static_cast<int>(b);
    }
  if (bx == by) return {};
  std::vector<int> order;
  for (int b = 0; b < static_cast<int>(e0.blocks.size()); ++b)
    if (b != bx && b != by) order.push_back(b);
  order.push_back(bx);
  order.push_back(by);
  int sign = exterior ? order_sign(order) : 1;
  LabeledElem r = merge(e0.blocks[bx], e0.index[bx], x, e0.blocks[by], e0.index[by], y);
  if (r.vec.empty()) return {};
  PowerBasisElem e;
  for (std::size_t k = 0; k + 2 < order.size(); ++k) {
    e.blocks.push_back(e0.blocks[order[k]]);
    e.index.push_back(e0.index[order[k]]);
  }
  std::vector<int> merged = r.labels;
  for (int& l : merged) l = drop2(l, x, y);
  for (auto& b : e.blocks)
    for (int& l : b) l = drop2(l, x, y);
  e.blocks.push_back(merged);
  e.index.push_back(0);
  int s2 = sort_blocks(e);
  if (exterior) sign *= s2;
  std::size_t pos = 0;
  while (e.blocks[pos] != merged) ++pos;
  std::vector<std::pair<std::uint32_t, Scalar>> out;
  for (const auto& [j, c] : r.vec) {
    e.index[pos] = j;
    out.emplace_back(lower.index.at(elem_key(e)), c * sign);
  }
  return sparse_from_unsorted(std::move(out));
}

}  // namespace

std::vector<PowerBasisElem> power_basis_cyclic(const CyclicOperadData& c, int n) {
  return power_basis(n, [&](const std::vector<int>& b) { return c.dim(static_cast<int>(b.size())); });
}

std::vector<PowerBasisElem> power_basis_dioperad(const DioperadData& d, int p, int q) {
  return power_basis(p + q, [&](const std::vector<int>& b) {
    int m = static_cast<int>(std::count_if(b.begin(), b.end(), [&](int l) { return l < p; }));
    return d.dim(m, static_cast<int>(b.size()) - m);
  });
}

DownModule power_module_cyclic(const CyclicOperadData& c, Parity parity, int max_level) {
  ValidationReport vr = validate_cyclic(c);
  if (!vr.ok()) throw ContractViolation("power_module_cyclic: invalid cyclic operad\n" + vr.str());
  for (const auto& [n, r] : c.underlying.levels())
    if (!r.is_monomial()) throw ContractViolation("power_module_cyclic: operad levels must be monomial");
  if (max_level < 0) max_level = c.truncation;
  bool ext = parity == Parity::exterior;
  DownModule m;
  m.tag = power_module_tag(false, parity);
  m.truncation = max_level;
  auto block_rep = [&](const std::vector<int>& b) -> const SymRep& {
    return c.underlying.level(static_cast<int>(b.size()));
  };
  std::map<int, PowerLevel> lv;
  for (int n = 0; n <= max_level; ++n) {
    lv[n] = make_level(power_basis_cyclic(c, n));
    if (lv[n].basis.empty()) continue;
    m.levels[{n, 0}] = level_rep(lv[n], {n}, ext, block_rep);
    std::vector<int> deg;
    for (const auto& e : lv[n].basis) deg.push_back(static_cast<int>(e.blocks.size()));
    m.degree[{n, 0}] = std::move(deg);
  }
  Merge merge = [&](const std::vector<int>& a, std::size_t ia, int x, const std::vector<int>& b, std::size_t ib,
                    int y) { return cyclic_contract(c, {a, unit_vec(ia)}, x, {b, unit_vec(ib)}, y); };
  for (int n = 2; n <= max_level; ++n) {
    const PowerLevel& top = lv[n];
    const PowerLevel& low = lv[n - 2];
    if (top.basis.empty() || low.basis.empty()) continue;
    SparseMatrix k(low.basis.size(), top.basis.size());
    for (std::size_t j = 0; j < top.basis.size(); ++j) k.set_col(j, contract_elem(top.basis[j], n - 2, n - 1, ext, low, merge));
    if (!k.is_zero()) m.contraction[{n, 0}] = std::move(k);
  }
  return m;
}

DownModule power_module_dioperad(const DioperadData& d, Parity parity, int max_total) {
  ValidationReport vr = validate_dioperad(d);
  if (!vr.ok()) throw ContractViolation("power_module_dioperad: invalid dioperad\n" + vr.str());
  for (const auto& [k, r] : d.underlying.levels())
    if (!r.is_monomial()) throw ContractViolation("power_module_dioperad: dioperad levels must be monomial");
  if (max_total < 0) max_total = d.truncation;
  bool ext = parity == Parity::exterior;
  DownModule m;
  m.tag = power_module_tag(true, parity);
  m.truncation = max_total;
  std::map<Level, PowerLevel> lv;
  for (int n = 0; n <= max_total; ++n)
    for (int p = 0; p <= n; ++p) {
      int q = n - p;
      lv[{p, q}] = make_level(power_basis_dioperad(d, p, q));
      if (lv[{p, q}].basis.empty()) continue;
      auto block_rep = [&](const std::vector<int>& b) -> const SymRep& {
        int mm = static_cast<int>(std::count_if(b.begin(), b.end(), [&](int l) { return l < p; }));
        return d.underlying.level(mm, static_cast<int>(b.size()) - mm);
      };
      m.levels[{p, q}] = level_rep(lv[{p, q}], {p, q}, ext, block_rep);
      std::vector<int> deg;
      for (const auto& e : lv[{p, q}].basis) deg.push_back(static_cast<int>(e.blocks.size()));
      m.degree[{p, q}] = std::move(deg);
    }
  for (const auto& [key, top] : lv) {
    auto [p, q] = key;
    if (p < 1 || q < 1 || top.basis.empty()) continue;
    const PowerLevel& low = lv.at({p - 1, q - 1});
    if (low.basis.empty()) continue;
    Merge merge = [&, p = p](const std::vector<int>& a, std::size_t ia, int s, const std::vector<int>& b,
                             std::size_t ib, int t) {
      auto split = [&](const std::vector<int>& blk, std::size_t i) {
        LabeledElem2 e;
        for (int l : blk) (l < p ? e.ins : e.outs).push_back(l);
        e.vec = unit_vec(i);
        return e;
      };
      LabeledElem2 r = dioperad_contract(d, split(a, ia), s, split(b, ib), t);
      LabeledElem out;
      out.labels = r.ins;
      out.labels.insert(out.labels.end(), r.outs.begin(), r.outs.end());
      out.vec = std::move(r.vec);
      return out;
    };
    SparseMatrix k(low.basis.size(), top.basis.size());
    for (std::size_t j = 0; j < top.basis.size(); ++j)
      k.set_col(j, contract_elem(top.basis[j], p - 1, p + q - 1, ext, low, merge));
    if (!k.is_zero()) m.contraction[key] = std::move(k);
  }
  return m;
}

// ---------------------------------------------------------------- symplectic tensors

DownModule symplectic_tensor_module(int dim2n, int truncation) {
  if (dim2n < 2 || dim2n % 2) throw std::invalid_argument("symplectic_tensor_module: dimension must be even and >= 2");
  DownModule m;
  m.tag.shape = Shape::ub;
  m.tag.upward = false;
  m.tag.twist = {-1, 1};
  m.truncation = truncation;
  std::size_t v = static_cast<std::size_t>(dim2n), half = v / 2;
  std::vector<std::size_t> pw{1};
  for (int k = 1; k <= truncation; ++k) pw.push_back(pw.back() * v);
  auto omega = [&](std::size_t a, std::size_t b) -> int {
    if (a < half && b == a + half) return 1;
    if (b < half && a == b + half) return -1;
    return 0;
  };
  for (int k = 0; k <= truncation; ++k) {
    std::size_t dim = pw[k];
    std::vector<SignedPerm> gens;
    for (int i = 0; i + 1 < k; ++i) {
      SignedPerm g = SignedPerm::identity(dim);
      // digit of place i has weight v^(k-1-i)
      std::size_t wi = pw[k - 1 - i], wj = pw[k - 2 - i];
      for (std::size_t x = 0; x < dim; ++x) {
        std::size_t a = (x / wi) % v, b = (x / wj) % v;
        g.img[x] = static_cast<std::uint32_t>(x - a * wi - b * wj + b * wi + a * wj);
      }
      gens.push_back(std::move(g));
    }
    m.levels[{k, 0}] = SymRep::from_signed({k}, dim, gens);
    if (k >= 2) {
      SparseMatrix c(pw[k - 2], dim);
      for (std::size_t x = 0; x < dim; ++x) {
        int w = omega((x / v) % v, x % v);
        if (w) c.set_col(x, unit_vec(x / (v * v), w));
      }
      m.contraction[{k, 0}] = std::move(c);
    }
  }
  return m;
}

// ---------------------------------------------------------------- functors

namespace {

// The (+)-push of a walled family: basis (p, assignment, index) as in amalg_push.
struct PushLevel {
  std::vector<std::pair<int, std::vector<int>>> parts;  // (p, assignment)
  std::vector<std::size_t> offset;
  std::map<std::pair<int, std::vector<int>>, std::size_t> base;
  std::size_t dim = 0;
};

template <class Module>
PushLevel push_level(const Module& f, int n) {
  PushLevel pl;
  for (int p = 0; p <= n; ++p) {
    std::size_t d = f.dim({p, n - p});
    if (!d) continue;
    for (auto& a : young_assignments({p, n - p}, {n})) {
      pl.base[{p, a}] = pl.dim;
      pl.parts.emplace_back(p, a);
      pl.offset.push_back(pl.dim);
      pl.dim += d;
    }
  }
  return pl;
}

template <class Module>
SymRep push_rep(const Module& f, int n) {
  std::vector<SymRep> parts;
  for (int p = 0; p <= n; ++p)
    if (f.dim({p, n - p})) parts.push_back(induce_young(f.level({p, n - p}), {n}).rep);
  return direct_sum(parts, {n});
}

int max_total_level(const std::map<Level, SymRep>& levels) {
  int n = -1;
  for (const auto& [l, r] : levels) n = std::max(n, level_total(l));
  return n;
}

// dJ (both=true, sign) or dXi (both=false)
DownModule push_down(const DownModule& f, CatTag tag, bool both, int sign) {
  if (!is_walled(f.shape()) || f.tag.upward) throw std::invalid_argument("expected a downward walled module");
  DownModule out;
  out.tag = tag;
  out.truncation = f.truncation;
  int top = max_total_level(f.levels);
  std::map<int, PushLevel> pl;
  for (int n = 0; n <= top; ++n) {
    pl[n] = push_level(f, n);
    if (!pl[n].dim) continue;
    out.levels[{n, 0}] = push_rep(f, n);
    auto fd = f.degree;
    if (!fd.empty()) {
      std::vector<int> deg(pl[n].dim, 0);
      for (std::size_t k = 0; k < pl[n].parts.size(); ++k) {
        int p = pl[n].parts[k].first;
        auto it = fd.find({p, n - p});
        if (it == fd.end()) continue;
        for (std::size_t i = 0; i < it->second.size(); ++i) deg[pl[n].offset[k] + i] = it->second[i];
      }
      out.degree[{n, 0}] = std::move(deg);
    }
  }
  for (int n = 2; n <= top; ++n) {
    const PushLevel& hi = pl[n];
    const PushLevel& lo = pl[n - 2];
    if (!hi.dim || !lo.dim) continue;
    SparseMatrix k(lo.dim, hi.dim);
    for (std::size_t part = 0; part < hi.parts.size(); ++part) {
      const auto& [p, a] = hi.parts[part];
      int q = n - p;
      int ax = a[n - 2], ay = a[n - 1];
      if (ax == ay) continue;
      if (ax == 1 && !both) continue;
      int coeff = ax == 0 ? 1 : sign;
      SparseMatrix fk = f.canonical({p, q});
      if (fk.is_zero()) continue;
      std::vector<int> a2(a.begin(), a.end() - 2);
      std::size_t base = lo.base.at({p - 1, a2});
      for (std::size_t i = 0; i < fk.cols(); ++i) {
        SparseVec col;
        for (const auto& [r, v] : fk.col(i)) col.emplace_back(static_cast<std::uint32_t>(base + r), v * coeff);
        k.set_col(hi.offset[part] + i, std::move(col));
      }
    }
    if (!k.is_zero()) out.contraction[{n, 0}] = std::move(k);
  }
  return out;
}

}  // namespace

DownModule restrict_dupsilon(const DownModule& g) {
  if (g.shape() != Shape::ub || g.tag.upward) throw std::invalid_argument("restrict_dupsilon expects a downward ub module");
  DownModule out;
  out.tag.shape = Shape::uwb;
  out.tag.upward = false;
  out.tag.twist = {1, g.tag.twist.order};
  out.truncation = g.truncation;
  for (const auto& [l, r] : g.levels) {
    int n = l.first;
    for (int p = 0; p <= n; ++p) {
      out.levels[{p, n - p}] = restrict_young(r, {p, n - p});
      auto it = g.degree.find(l);
      if (it != g.degree.end()) out.degree[{p, n - p}] = it->second;
      if (p >= 1 && n - p >= 1) {
        SparseMatrix k = g.contract_matrix(l, {p - 1, n - 1});
        if (!k.is_zero()) out.contraction[{p, n - p}] = std::move(k);
      }
    }
  }
  return out;
}

DownModule dJ_apply(const DownModule& f, Twist target) {
  if (target.order != f.tag.twist.order) throw std::invalid_argument("dJ_apply: ordering sign must match the walled twist");
  CatTag t;
  t.shape = Shape::ub;
  t.upward = false;
  t.twist = target;
  return push_down(f, t, true, target.first);
}

DownModule dXi_push(const DownModule& f) {
  CatTag t;
  t.shape = Shape::dub;
  t.upward = false;
  t.twist = {1, f.tag.twist.order};
  return push_down(f, t, false, 1);
}

DownModule dTr_restrict(const DownModule& m, int sign) {
  if (m.shape() != Shape::dub || m.tag.upward) throw std::invalid_argument("dTr_restrict expects a downward dub module");
  DownModule out = m;
  out.tag.shape = Shape::ub;
  out.tag.twist = {sign, m.tag.twist.order};
  out.contraction.clear();
  for (const auto& [l, k] : m.contraction) {
    int n = l.first;
    SparseMatrix rev = k * m.levels.at(l).generator(n - 2);
    SparseMatrix sum = k + rev.scaled(sign);
    if (!sum.is_zero()) out.contraction[l] = std::move(sum);
  }
  return out;
}

DownModule mp_restrict(const DownModule& g) {
  if (g.shape() != Shape::ub || g.tag.upward) throw std::invalid_argument("mp_restrict expects a downward ub module");
  DownModule out = g;
  out.tag.shape = Shape::dub;
  out.tag.twist = {1, g.tag.twist.order};
  return out;
}

DownModule dUpsilon_restrict(const DownModule& m) {
  if (m.shape() != Shape::dub || m.tag.upward) throw std::invalid_argument("dUpsilon_restrict expects a downward dub module");
  DownModule out;
  out.tag.shape = Shape::uwb;
  out.tag.upward = false;
  out.tag.twist = {1, m.tag.twist.order};
  out.truncation = m.truncation;
  for (const auto& [l, r] : m.levels) {
    int n = l.first;
    for (int p = 0; p <= n; ++p) {
      out.levels[{p, n - p}] = restrict_young(r, {p, n - p});
      auto it = m.degree.find(l);
      if (it != m.degree.end()) out.degree[{p, n - p}] = it->second;
      if (p >= 1 && n - p >= 1) {
        SparseMatrix k = m.contract_matrix(l, {p - 1, n - 1});
        if (!k.is_zero()) out.contraction[{p, n - p}] = std::move(k);
      }
    }
  }
  return out;
}

UpModule J_apply(const UpModule& f, int sign) {
  if (f.shape() != Shape::uwb || !f.tag.upward) throw std::invalid_argument("J_apply expects an upward uwb module");
  UpModule out;
  out.tag.shape = Shape::ub;
  out.tag.upward = true;
  out.tag.twist = {sign, f.tag.twist.order};
  out.truncation = f.truncation;
  int top = max_total_level(f.levels);
  std::map<int, PushLevel> pl;
  for (int n = 0; n <= top; ++n) {
    pl[n] = push_level(f, n);
    if (pl[n].dim) out.levels[{n, 0}] = push_rep(f, n);
  }
  for (int n = 0; n + 2 <= top; ++n) {
    const PushLevel& lo = pl[n];
    const PushLevel& hi = pl[n + 2];
    if (!lo.dim || !hi.dim) continue;
    SparseMatrix r(hi.dim, lo.dim);
    for (std::size_t part = 0; part < lo.parts.size(); ++part) {
      const auto& [p, a] = lo.parts[part];
      SparseMatrix fr = f.canonical({p, n - p});
      if (fr.is_zero()) continue;
      auto a1 = a, a2 = a;
      a1.push_back(0);
      a1.push_back(1);
      a2.push_back(1);
      a2.push_back(0);
      std::size_t b1 = hi.base.at({p + 1, a1}), b2 = hi.base.at({p + 1, a2});
      for (std::size_t i = 0; i < fr.cols(); ++i) {
        std::vector<std::pair<std::uint32_t, Scalar>> col;
        for (const auto& [row, v] : fr.col(i)) {
          col.emplace_back(static_cast<std::uint32_t>(b1 + row), v);
          col.emplace_back(static_cast<std::uint32_t>(b2 + row), v * sign);
        }
        r.set_col(lo.offset[part] + i, sparse_from_unsorted(std::move(col)));
      }
    }
    if (!r.is_zero()) out.raising[{n, 0}] = std::move(r);
  }
  return out;
}

// ---------------------------------------------------------------- representables

UpModule representable_up(const CatTag& tag, Obj src, int truncation) {
  if (!tag.upward) throw std::invalid_argument("representable_up expects an upward tag");
  tag.validate();
  UpModule out;
  out.tag = tag;
  out.truncation = truncation;
  Shape s = tag.shape;
  Level step = level_step(s);
  Level start = is_walled(s) ? Level{src.left, src.right} : Level{src.total(), 0};
  std::map<Level, HomBasis> homs;
  for (Level l = start; level_total(l) <= truncation; l = add(l, step)) {
    Obj dst{l.first, is_walled(s) ? l.second : 0};
    HomBasis hb = hom_basis(tag, src, dst);
    int n = level_total(l);
    SymRep probe(level_young(s, l), 0);
    std::vector<SignedPerm> gens;
    for (int i = 0; i + 1 < n; ++i) {
      SignedPerm g = SignedPerm::identity(hb.size());
      if (probe.allowed(i)) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::swap(perm[i], perm[i + 1]);
        BrauerMorphism sw = permutation_morphism(tag, dst, perm);
        for (std::size_t j = 0; j < hb.size(); ++j) {
          auto loc = hb.locate(compose(hb.elements[j], sw));
          if (!loc) throw std::logic_error("representable_up: basis not closed under the group");
          g.img[j] = static_cast<std::uint32_t>(loc->first);
          g.sign[j] = loc->second > 0 ? 1 : -1;
        }
      }
      gens.push_back(std::move(g));
    }
    out.levels[l] = SymRep::from_signed(level_young(s, l), hb.size(), gens);
    homs.emplace(l, std::move(hb));
  }
  for (const auto& [l, hb] : homs) {
    Level u = add(l, step);
    auto it = homs.find(u);
    if (it == homs.end() || !hb.size() || !it->second.size()) continue;
    BrauerMorphism gen = degree_one(tag, s, u, canonical_pair(s, u));
    SparseMatrix r(it->second.size(), hb.size());
    for (std::size_t j = 0; j < hb.size(); ++j) {
      auto loc = it->second.locate(compose(hb.elements[j], gen));
      if (loc) r.set_col(j, unit_vec(loc->first, loc->second));
    }
    if (!r.is_zero()) out.raising[l] = std::move(r);
  }
  return out;
}

// ---------------------------------------------------------------- induction along upsilon

namespace {

struct Presented {
  // basis of the free presentation: (p, representative index, f basis index)
  std::vector<std::tuple<int, std::size_t, std::size_t>> basis;
  std::map<int, std::size_t> part_offset;  // p -> offset
  std::map<int, HomBasis> homs;            // p -> hom (p+q) -> n
  std::map<int, std::vector<std::size_t>> reps;  // p -> hom indices of representatives
  std::map<int, std::map<std::size_t, std::size_t>> rep_pos;
  std::size_t dim = 0;
};

bool block_increasing(const BrauerMorphism& h, int p) {
  for (int i = 0; i + 1 < p; ++i)
    if (h.inj[i] > h.inj[i + 1]) return false;
  for (std::size_t i = p; i + 1 < h.inj.size(); ++i)
    if (h.inj[i] > h.inj[i + 1]) return false;
  return true;
}

}  // namespace

InducedModule induce_L(const UpModule& f, int sign, int truncation) {
  if (f.shape() != Shape::uwb || !f.tag.upward) throw std::invalid_argument("induce_L expects an upward uwb module");
  CatTag T;
  T.shape = Shape::ub;
  T.upward = true;
  T.twist = {sign, f.tag.twist.order};
  CatTag W = f.tag;

  std::map<int, Presented> pres;
  for (int n = 0; n <= truncation; ++n) {
    Presented& P = pres[n];
    for (int p = 0; p <= n; ++p)
      for (int q = 0; p + q <= n; ++q) {
        if ((n - p - q) % 2 || !f.dim({p, q})) continue;
        // key p alone is ambiguous across q; encode as p * 64 + q
        int key = p * 64 + q;
        HomBasis hb = hom_basis(T, {p + q, 0}, {n, 0});
        std::vector<std::size_t> reps;
        for (std::size_t j = 0; j < hb.size(); ++j)
          if (block_increasing(hb.elements[j], p)) reps.push_back(j);
        P.part_offset[key] = P.dim;
        for (std::size_t r = 0; r < reps.size(); ++r) {
          P.rep_pos[key][reps[r]] = r;
          for (std::size_t i = 0; i < f.dim({p, q}); ++i) P.basis.emplace_back(key, r, i);
        }
        P.dim += reps.size() * f.dim({p, q});
        P.reps[key] = std::move(reps);
        P.homs.emplace(key, std::move(hb));
      }
  }

  // class of [h (x) v] for an arbitrary normal-form h in the (p,q) part
  auto reduce = [&](int n, int key, const BrauerMorphism& h, const SparseVec& v, SparseVec& acc, const Scalar& c) {
    Presented& P = pres[n];
    int p = key / 64, q = key % 64;
    std::vector<int> lefts(h.inj.begin(), h.inj.begin() + p), rights(h.inj.begin() + p, h.inj.end());
    std::vector<int> tau(p + q);
    auto sl = lefts, sr = rights;
    std::sort(sl.begin(), sl.end());
    std::sort(sr.begin(), sr.end());
    BrauerMorphism g = h;
    for (int i = 0; i < p; ++i) tau[i] = static_cast<int>(std::lower_bound(sl.begin(), sl.end(), lefts[i]) - sl.begin());
    for (int i = 0; i < q; ++i)
      tau[p + i] = p + static_cast<int>(std::lower_bound(sr.begin(), sr.end(), rights[i]) - sr.begin());
    for (int i = 0; i < p; ++i) g.inj[i] = sl[i];
    for (int i = 0; i < q; ++i) g.inj[p + i] = sr[i];
    g.coeff = 1;
    auto loc = P.homs.at(key).locate(g);
    if (!loc) throw std::logic_error("induce_L: representative not found");
    Scalar coeff = c * h.coeff * loc->second;
    std::size_t r = P.rep_pos[key].at(loc->first);
    SparseVec w = f.level({p, q}).eval_perm(Permutation(tau)).apply(v);
    std::size_t base = P.part_offset[key] + r * f.dim({p, q});
    for (const auto& [i, x] : w) sparse_axpy(acc, coeff * x, unit_vec(base + i));
  };

  InducedModule out;
  out.module.tag = T;
  out.module.truncation = truncation;
  std::map<int, std::vector<std::size_t>> pivots_of;
  std::map<int, ExactMatrix> rows_of;
  std::map<int, std::vector<long>> free_pos;

  for (int n = 0; n <= truncation; ++n) {
    Presented& P = pres[n];
    out.presentation_dim[{n, 0}] = P.dim;
    std::vector<SparseVec> rels;
    std::vector<int> keys;
    for (const auto& kv : P.homs) keys.push_back(kv.first);
    for (int key : keys) {
      int p = key / 64, q = key % 64;
      if (p + q + 2 > n) continue;
      int key2 = (p + 1) * 64 + (q + 1);
      bool upper_part = P.homs.count(key2) > 0;
      HomBasis hb = upper_part ? P.homs.at(key2) : hom_basis(T, {p + q + 2, 0}, {n, 0});
      SparseMatrix beta = f.canonical({p, q});
      BrauerMorphism ub = upsilon_morphism(beta_generator(W, p, q, p, q), sign);
      for (const auto& h : hb.elements)
        for (std::size_t i = 0; i < f.dim({p, q}); ++i) {
          SparseVec rel;
          if (upper_part) reduce(n, key2, h, beta.col(i), rel, 1);
          reduce(n, key, compose(ub, h), unit_vec(i), rel, -1);
          if (!rel.empty()) rels.push_back(std::move(rel));
        }
    }
    ExactMatrix R(rels.size(), P.dim);
    for (std::size_t r = 0; r < rels.size(); ++r)
      for (const auto& [j, x] : rels[r]) R(r, j) = x;
    auto piv = rref_in_place(R);
    std::vector<long> pos(P.dim, -1);
    std::vector<bool> is_piv(P.dim, false);
    for (auto c : piv) is_piv[c] = true;
    long k = 0;
    for (std::size_t j = 0; j < P.dim; ++j)
      if (!is_piv[j]) pos[j] = k++;
    SparseMatrix Q(static_cast<std::size_t>(k), P.dim);
    for (std::size_t j = 0; j < P.dim; ++j)
      if (!is_piv[j]) Q.set_col(j, unit_vec(pos[j]));
    for (std::size_t r = 0; r < piv.size(); ++r) {
      SparseVec col;
      for (std::size_t j = 0; j < P.dim; ++j)
        if (!is_piv[j] && R(r, j) != 0) col.emplace_back(static_cast<std::uint32_t>(pos[j]), -R(r, j));
      Q.set_col(piv[r], std::move(col));
    }
    out.quotient[{n, 0}] = Q;
    free_pos[n] = pos;
  }

  // lift of quotient basis vector k: the free coordinate carrying it
  auto lift = [&](int n) {
    std::vector<std::size_t> l;
    for (std::size_t j = 0; j < free_pos[n].size(); ++j)
      if (free_pos[n][j] >= 0) l.push_back(j);
    return l;
  };

  for (int n = 0; n <= truncation; ++n) {
    Presented& P = pres[n];
    const SparseMatrix& Q = out.quotient[{n, 0}];
    std::size_t qd = Q.rows();
    if (!qd) continue;
    auto lf = lift(n);
    std::vector<SparseMatrix> gens(std::max(n - 1, 0));
    for (int i = 0; i + 1 < n; ++i) {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::swap(perm[i], perm[i + 1]);
      BrauerMorphism sw = permutation_morphism(T, {n, 0}, perm);
      SparseMatrix g(qd, qd);
      for (std::size_t kq = 0; kq < qd; ++kq) {
        auto [key, r, fi] = P.basis[lf[kq]];
        SparseVec acc;
        const auto& hb = P.homs.at(key);
        reduce(n, key, compose(hb.elements[P.reps[key][r]], sw), unit_vec(fi), acc, 1);
        g.set_col(kq, Q.apply(acc));
      }
      gens[i] = std::move(g);
    }
    out.module.levels[{n, 0}] = SymRep({n}, qd, std::move(gens));
    if (n + 2 <= truncation) {
      const SparseMatrix& Q2 = out.quotient[{n + 2, 0}];
      if (Q2.rows()) {
        BrauerMorphism a = alpha_generator(T, n, n, n + 1);
        SparseMatrix rm(Q2.rows(), qd);
        for (std::size_t kq = 0; kq < qd; ++kq) {
          auto [key, r, fi] = P.basis[lf[kq]];
          SparseVec acc;
          const auto& hb = P.homs.at(key);
          reduce(n + 2, key, compose(hb.elements[P.reps[key][r]], a), unit_vec(fi), acc, 1);
          rm.set_col(kq, Q2.apply(acc));
        }
        if (!rm.is_zero()) out.module.raising[{n, 0}] = std::move(rm);
      }
    }
  }

  // J(f) -> induced module
  for (int n = 0; n <= truncation; ++n) {
    PushLevel pl = push_level(f, n);
    const SparseMatrix& Q = out.quotient[{n, 0}];
    SparseMatrix m(Q.rows(), pl.dim);
    for (std::size_t part = 0; part < pl.parts.size(); ++part) {
      const auto& [p, a] = pl.parts[part];
      int q = n - p;
      BrauerMorphism h = identity_morphism(T, {n, 0});
      int l = 0;
      for (int x = 0; x < n; ++x)
        if (a[x] == 0) h.inj[l++] = x;
      for (int x = 0; x < n; ++x)
        if (a[x] == 1) h.inj[l++] = x;
      for (std::size_t i = 0; i < f.dim({p, q}); ++i) {
        SparseVec acc;
        reduce(n, p * 64 + q, h, unit_vec(i), acc, 1);
        m.set_col(pl.offset[part] + i, Q.apply(acc));
      }
    }
    out.from_J[{n, 0}] = std::move(m);
  }
  return out;
}

// ---------------------------------------------------------------- comparison helpers

std::map<Level, SparseMatrix> dJ_power_identification(const DioperadData& d, Parity parity, int max_level) {
  bool ext = parity == Parity::exterior;
  CyclicOperadData c = to_cyclic(d);
  std::map<Level, SparseMatrix> out;
  // position of (inputs m, assignment, index) in the cyclic level k
  auto cyclic_index = [&](int k, int m, const std::vector<int>& a, std::size_t j) {
    std::size_t off = 0;
    for (int mm = 0; mm <= k; ++mm) {
      std::size_t dd = d.dim(mm, k - mm);
      if (!dd) continue;
      auto as = young_assignments({mm, k - mm}, {k});
      if (mm == m) {
        std::size_t ai = std::find(as.begin(), as.end(), a) - as.begin();
        return off + ai * dd + j;
      }
      off += as.size() * dd;
    }
    throw std::logic_error("dJ_power_identification: missing summand");
  };
  for (int n = 0; n <= max_level; ++n) {
    auto cyc = make_level(power_basis_cyclic(c, n));
    std::vector<std::pair<std::uint32_t, int>> cols;
    for (int p = 0; p <= n; ++p) {
      int q = n - p;
      auto wb = power_basis_dioperad(d, p, q);
      if (wb.empty()) continue;
      for (auto& a : young_assignments({p, q}, {n})) {
        std::vector<int> X1, X2;
        for (int x = 0; x < n; ++x) (a[x] == 0 ? X1 : X2).push_back(x);
        for (const auto& e : wb) {
          PowerBasisElem ce;
          for (std::size_t b = 0; b < e.blocks.size(); ++b) {
            std::vector<int> blk;
            for (int l : e.blocks[b]) blk.push_back(l < p ? X1[l] : X2[l - p]);
            std::sort(blk.begin(), blk.end());
            std::vector<int> asg;
            int m = 0;
            for (int l : blk) {
              bool in = std::binary_search(X1.begin(), X1.end(), l);
              asg.push_back(in ? 0 : 1);
              m += in;
            }
            ce.blocks.push_back(blk);
            ce.index.push_back(cyclic_index(static_cast<int>(blk.size()), m, asg, e.index[b]));
          }
          int s = sort_blocks(ce);
          cols.emplace_back(cyc.index.at(elem_key(ce)), ext ? s : 1);
        }
      }
    }
    if (cols.empty()) continue;
    SparseMatrix phi(cyc.basis.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) phi.set_col(j, unit_vec(cols[j].first, cols[j].second));
    out[{n, 0}] = std::move(phi);
  }
  return out;
}

bool same_module(const DownModule& a, const DownModule& b, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (!(a.tag == b.tag)) return fail("tags differ: " + a.tag.str() + " vs " + b.tag.str());
  std::set<Level> keys;
  for (const auto& [l, r] : a.levels) keys.insert(l);
  for (const auto& [l, r] : b.levels) keys.insert(l);
  for (Level l : keys) {
    if (a.dim(l) != b.dim(l)) return fail("dimension differs at " + level_str(l));
    if (!a.dim(l)) continue;
    if (!(a.level(l) == b.level(l))) return fail("group action differs at " + level_str(l));
    if (a.canonical(l) != b.canonical(l)) return fail("contraction differs at " + level_str(l));
  }
  return true;
}

}  // namespace twb
