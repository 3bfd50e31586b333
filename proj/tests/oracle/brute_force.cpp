#include "brute_force.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace oracle {
namespace {

using Q = mpq_class;
using Mat = std::vector<std::vector<Q>>;  // row-major

struct Block {
  std::vector<int> left, right;
  auto operator<=>(const Block&) const = default;
};
using Elem = std::vector<Block>;

struct Hom {
  std::vector<int> inj_left, inj_right;
  std::vector<std::pair<int, int>> pairs;
  auto operator<=>(const Hom&) const = default;
};

int parity_of(std::vector<int> seq) {
  int s = 1;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) s = -s;
  return s;
}

struct Setup {
  bool walled = false;
  bool exterior = false;
  bool operad_only = false;
  int first_c = 1, order_c = 1;  // twist of the hom category

  bool allowed(const Block& b) const {
    if (!walled) return b.left.size() >= 2;
    if (operad_only) return b.right.size() == 1 && !b.left.empty();
    return b.left.size() + b.right.size() >= 2;
  }
  int key(const Block& b, int p) const { return b.left.empty() ? p + b.right.front() : b.left.front(); }

  // sorts blocks into canonical order; returns the reordering sign
  int canonical(Elem& e, int p) const {
    for (auto& b : e) {
      std::sort(b.left.begin(), b.left.end());
      std::sort(b.right.begin(), b.right.end());
    }
    std::vector<int> keys;
    for (auto& b : e) keys.push_back(key(b, p));
    int s = exterior ? parity_of(keys) : 1;
    std::sort(e.begin(), e.end(), [&](const Block& a, const Block& b) { return key(a, p) < key(b, p); });
    return s;
  }

  std::vector<Elem> module_basis(int p, int q) const {
    std::vector<Elem> out;
    int total = p + q;
    std::vector<int> assign(total, 0);
    std::function<void(int, int)> rec = [&](int i, int used) {
      if (i == total) {
        Elem e(used);
        for (int x = 0; x < total; ++x) {
          if (x < p)
            e[assign[x]].left.push_back(x);
          else
            e[assign[x]].right.push_back(x - p);
        }
        for (auto& b : e)
          if (!allowed(b)) return;
        canonical(e, p);
        out.push_back(e);
        return;
      }
      for (int c = 0; c <= used; ++c) {
        assign[i] = c;
        rec(i + 1, std::max(used, c + 1));
      }
    };
    rec(0, 0);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::pair<Elem, int> act_module(const Elem& e, const std::vector<int>& gl, const std::vector<int>& gr, int p) const {
    Elem out = e;
    for (auto& b : out) {
      for (int& x : b.left) x = gl[x];
      for (int& y : b.right) y = gr[y];
    }
    int s = canonical(out, p);
    return {out, s};
  }

  // contraction at (a, b): unwalled a < b both left; walled a left, b right
  bool contract(const Elem& e, int a, int b, int p, Elem& out, int& sign) const {
    auto holds = [&](const Block& blk, bool left, int x) {
      const auto& v = left ? blk.left : blk.right;
      return std::find(v.begin(), v.end(), x) != v.end();
    };
    int ia = -1, ib = -1;
    for (int i = 0; i < int(e.size()); ++i) {
      if (holds(e[i], true, a)) ia = i;
      if (holds(e[i], !walled, b)) ib = i;
    }
    if (ia < 0 || ib < 0) throw std::logic_error("oracle: label missing");
    if (ia == ib) return false;
    std::vector<int> order{ia, ib};
    for (int i = 0; i < int(e.size()); ++i)
      if (i != ia && i != ib) order.push_back(i);
    sign = exterior ? parity_of(order) : 1;
    Block merged;
    for (int i : {ia, ib}) {
      for (int x : e[i].left)
        if (x != a && (walled || x != b)) merged.left.push_back(x);
      for (int y : e[i].right)
        if (!walled || y != b) merged.right.push_back(y);
    }
    out.clear();
    out.push_back(merged);
    for (std::size_t k = 2; k < order.size(); ++k) out.push_back(e[order[k]]);
    for (auto& blk : out) {
      for (int& x : blk.left) x = walled ? x - (x > a) : x - (x > a) - (x > b);
      for (int& y : blk.right) y = y - (y > b);
    }
    if (!allowed(out.front())) return false;
    sign *= canonical(out, walled ? p - 1 : p - 2);
    return true;
  }

  // pairs: orientation (unwalled) and sorting signs
  int normalize(Hom& h) const {
    int s = 1;
    if (!walled)
      for (auto& pr : h.pairs)
        if (pr.first > pr.second) {
          std::swap(pr.first, pr.second);
          s *= first_c;
        }
    std::vector<int> firsts;
    for (auto& pr : h.pairs) firsts.push_back(pr.first);
    if (order_c < 0) s *= parity_of(firsts);
    std::sort(h.pairs.begin(), h.pairs.end());
    return s;
  }

  // homs (x, y) -> (p, q)
  std::vector<Hom> hom_basis(int x, int y, int p, int q) const {
    std::vector<Hom> out;
    if (walled ? (p - x != q - y || p < x || q < y) : (p < x || (p - x) % 2)) return out;
    std::function<void(std::vector<int>&, int, int, std::vector<bool>&, std::vector<std::vector<int>>&)> inj =
        [&](std::vector<int>& c, int len, int range, std::vector<bool>& used, std::vector<std::vector<int>>& acc) {
          if (int(c.size()) == len) {
            acc.push_back(c);
            return;
          }
          for (int t = 0; t < range; ++t)
            if (!used[t]) {
              used[t] = true;
              c.push_back(t);
              inj(c, len, range, used, acc);
              c.pop_back();
              used[t] = false;
            }
        };
    std::vector<std::vector<int>> lefts, rights;
    {
      std::vector<bool> u(p, false);
      std::vector<int> c;
      inj(c, x, p, u, lefts);
    }
    {
      std::vector<bool> u(q, false);
      std::vector<int> c;
      inj(c, walled ? y : 0, walled ? q : 0, u, rights);
    }
    for (auto& l : lefts)
      for (auto& r : rights) {
        std::vector<int> freel, freer;
        for (int t = 0; t < p; ++t)
          if (std::find(l.begin(), l.end(), t) == l.end()) freel.push_back(t);
        for (int t = 0; t < q; ++t)
          if (std::find(r.begin(), r.end(), t) == r.end()) freer.push_back(t);
        if (walled) {
          std::sort(freer.begin(), freer.end());
          do {
            Hom h{l, r, {}};
            for (std::size_t k = 0; k < freel.size(); ++k) h.pairs.push_back({freel[k], freer[k]});
            out.push_back(h);
          } while (std::next_permutation(freer.begin(), freer.end()));
        } else {
          std::function<void(std::vector<int>, std::vector<std::pair<int, int>>)> match =
              [&](std::vector<int> rest, std::vector<std::pair<int, int>> acc) {
                if (rest.empty()) {
                  out.push_back(Hom{l, {}, acc});
                  return;
                }
                int a = rest.front();
                for (std::size_t k = 1; k < rest.size(); ++k) {
                  auto nxt = rest;
                  int b = rest[k];
                  nxt.erase(nxt.begin() + k);
                  nxt.erase(nxt.begin());
                  auto acc2 = acc;
                  acc2.push_back({a, b});
                  match(nxt, acc2);
                }
              };
          match(freel, {});
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  }
};

std::vector<std::vector<int>> all_perms(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

Mat zeros(std::size_t r, std::size_t c) { return Mat(r, std::vector<Q>(c, Q(0))); }

Mat mul(const Mat& a, const Mat& b) {
  if (a.empty() || b.empty()) return zeros(a.size(), b.empty() ? 0 : b[0].size());
  Mat out = zeros(a.size(), b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

bool is_zero(const Mat& m) {
  for (auto& r : m)
    for (auto& x : r)
      if (x != 0) return false;
  return true;
}

// One chain space: basis T = homs x module elements, with averaging projector.
struct Space {
  std::vector<Hom> homs;
  std::vector<Elem> elems;
  Mat projector;
  std::size_t size() const { return homs.size() * elems.size(); }
  std::size_t index(const Hom& h, const Elem& e) const {
    auto hi = std::lower_bound(homs.begin(), homs.end(), h) - homs.begin();
    auto ei = std::lower_bound(elems.begin(), elems.end(), e) - elems.begin();
    if (hi == long(homs.size()) || !(homs[hi] == h) || ei == long(elems.size()) || !(elems[ei] == e))
      throw std::logic_error("oracle: basis lookup failed");
    return hi * elems.size() + ei;
  }
};

struct Complex {
  std::vector<std::pair<int, int>> levels;  // increasing
  std::map<std::pair<int, int>, Space> spaces;
  std::map<std::pair<int, int>, Mat> diff;  // raw, level -> level - step
};

Result finish(Complex& c) {
  Result res;
  std::map<std::pair<int, int>, Mat> reduced;
  std::map<std::pair<int, int>, std::size_t> ranks;
  for (auto& l : c.levels) {
    auto it = c.diff.find(l);
    if (it == c.diff.end()) continue;
    auto lower = c.levels[std::find(c.levels.begin(), c.levels.end(), l) - c.levels.begin() - 1];
    const Mat& pl = c.spaces[l].projector;
    const Mat& pd = c.spaces[lower].projector;
    Mat pdd = mul(pd, it->second);
    Mat full = mul(pdd, pl);
    if (full != pdd) res.well_defined = false;
    reduced[l] = full;
    ranks[l] = dense_rank(full);
  }
  for (std::size_t i = 1; i + 1 < c.levels.size(); ++i) {
    auto hi = c.levels[i + 1];
    auto mid = c.levels[i];
    if (reduced.count(hi) && reduced.count(mid) && !is_zero(mul(reduced[mid], reduced[hi]))) res.square_zero = false;
  }
  for (auto& l : c.levels) {
    Spot s;
    s.internal = l;
    s.chain_dim = dense_rank(c.spaces[l].projector);
    std::size_t out = ranks.count(l) ? ranks[l] : 0;
    auto pos = std::find(c.levels.begin(), c.levels.end(), l) - c.levels.begin();
    std::size_t in = (pos + 1 < long(c.levels.size()) && ranks.count(c.levels[pos + 1])) ? ranks[c.levels[pos + 1]] : 0;
    s.homology = s.chain_dim - out - in;
    res.spots.push_back(s);
  }
  return res;
}

Space make_space(const Setup& st, std::vector<Hom> homs, std::vector<Elem> elems, int p, int q, bool precompose) {
  Space sp;
  sp.homs = std::move(homs);
  sp.elems = std::move(elems);
  std::size_t n = sp.size();
  sp.projector = zeros(n, n);
  auto gls = all_perms(p);
  auto grs = all_perms(q);
  Q weight(1, gls.size() * grs.size());
  for (auto& gl : gls)
    for (auto& gr : grs) {
      for (std::size_t hi = 0; hi < sp.homs.size(); ++hi) {
        Hom h = sp.homs[hi];
        int sh = 1;
        if (precompose) {
          // h o g^{-1}: the source letter g(i) goes where i went
          Hom g = h;
          for (int i = 0; i < p; ++i) g.inj_left[gl[i]] = h.inj_left[i];
          for (int i = 0; i < q; ++i) g.inj_right[gr[i]] = h.inj_right[i];
          h = g;
        } else {
          for (int& x : h.inj_left) x = gl[x];
          for (int& y : h.inj_right) y = gr[y];
          for (auto& pr : h.pairs) pr = {gl[pr.first], st.walled ? gr[pr.second] : gl[pr.second]};
          sh = st.normalize(h);
        }
        for (std::size_t ei = 0; ei < sp.elems.size(); ++ei) {
          auto [e2, se] = st.act_module(sp.elems[ei], gl, gr, p);
          std::size_t row = sp.index(h, e2);
          sp.projector[row][hi * sp.elems.size() + ei] += weight * sh * se;
        }
      }
    }
  return sp;
}

Setup make_setup(bool walled, bool exterior, bool operad_only) {
  Setup st;
  st.walled = walled;
  st.exterior = exterior;
  st.operad_only = operad_only;
  // module twist (+;+) or (-;-); the hom category keeps the first sign and flips the order
  int first_m = exterior ? -1 : 1, order_m = exterior ? -1 : 1;
  st.first_c = first_m;
  st.order_c = -order_m;
  return st;
}

Result second_complex(const Setup& st, std::pair<int, int> ext, int N) {
  Complex c;
  auto [x, y] = ext;
  for (int k = 0;; ++k) {
    std::pair<int, int> l = st.walled ? std::pair{x + k, y + k} : std::pair{x + 2 * k, 0};
    if (l.first + l.second > N) break;
    c.levels.push_back(l);
    c.spaces[l] = make_space(st, st.hom_basis(x, y, l.first, l.second), st.module_basis(l.first, l.second), l.first,
                             l.second, false);
  }
  for (std::size_t i = 1; i < c.levels.size(); ++i) {
    auto l = c.levels[i], lo = c.levels[i - 1];
    const Space& up = c.spaces[l];
    const Space& dn = c.spaces[lo];
    Mat d = zeros(dn.size(), up.size());
    for (std::size_t hi = 0; hi < up.homs.size(); ++hi) {
      const Hom& h = up.homs[hi];
      int t = int(h.pairs.size());
      for (int j = 0; j < t; ++j) {
        auto [a, b] = h.pairs[j];
        int eps = (st.order_c < 0 && (t - 1 - j) % 2) ? -1 : 1;
        Hom h2 = h;
        h2.pairs.erase(h2.pairs.begin() + j);
        auto shift_l = [&](int v) { return st.walled ? v - (v > a) : v - (v > a) - (v > b); };
        for (int& v : h2.inj_left) v = shift_l(v);
        for (int& v : h2.inj_right) v = v - (v > b);
        for (auto& pr : h2.pairs) pr = {shift_l(pr.first), st.walled ? pr.second - (pr.second > b) : shift_l(pr.second)};
        for (std::size_t ei = 0; ei < up.elems.size(); ++ei) {
          Elem e2;
          int s = 0;
          if (!st.contract(up.elems[ei], a, b, l.first, e2, s)) continue;
          d[dn.index(h2, e2)][hi * up.elems.size() + ei] += eps * s;
        }
      }
    }
    c.diff[l] = d;
  }
  return finish(c);
}

Result first_complex(const Setup& st, std::pair<int, int> ext, int N) {
  Complex c;
  auto [x, y] = ext;
  std::vector<std::pair<int, int>> levels;
  for (int k = 0;; ++k) {
    std::pair<int, int> l = st.walled ? std::pair{x - k, y - k} : std::pair{x - 2 * k, 0};
    if (l.first < 0 || l.second < 0) break;
    if (l.first + l.second <= N) levels.push_back(l);
  }
  std::reverse(levels.begin(), levels.end());
  c.levels = levels;
  for (auto& l : levels)
    c.spaces[l] = make_space(st, st.hom_basis(l.first, l.second, x, y), st.module_basis(l.first, l.second), l.first,
                             l.second, true);
  for (std::size_t i = 1; i < levels.size(); ++i) {
    auto l = levels[i], lo = levels[i - 1];
    const Space& up = c.spaces[l];
    const Space& dn = c.spaces[lo];
    Mat d = zeros(dn.size(), up.size());
    std::vector<std::pair<int, int>> cells;
    if (st.walled) {
      for (int a = 0; a < l.first; ++a)
        for (int b = 0; b < l.second; ++b) cells.push_back({a, b});
    } else {
      for (int a = 0; a < l.first; ++a)
        for (int b = a + 1; b < l.first; ++b) cells.push_back({a, b});
    }
    for (auto [a, b] : cells) {
      // order preserving embeddings of the lower level's letters
      std::vector<int> keep_l, keep_r;
      for (int v = 0; v < l.first; ++v)
        if (v != a && (st.walled || v != b)) keep_l.push_back(v);
      for (int v = 0; v < l.second; ++v)
        if (!st.walled || v != b) keep_r.push_back(v);
      for (std::size_t hi = 0; hi < up.homs.size(); ++hi) {
        const Hom& h = up.homs[hi];
        Hom h2;
        for (int v : keep_l) h2.inj_left.push_back(h.inj_left[v]);
        for (int v : keep_r) h2.inj_right.push_back(h.inj_right[v]);
        h2.pairs.push_back({h.inj_left[a], st.walled ? h.inj_right[b] : h.inj_left[b]});
        for (auto& pr : h.pairs) h2.pairs.push_back(pr);
        int sh = st.normalize(h2);
        for (std::size_t ei = 0; ei < up.elems.size(); ++ei) {
          Elem e2;
          int s = 0;
          if (!st.contract(up.elems[ei], a, b, l.first, e2, s)) continue;
          d[dn.index(h2, e2)][hi * up.elems.size() + ei] += sh * s;
        }
      }
    }
    c.diff[l] = d;
  }
  return finish(c);
}

}  // namespace

std::size_t dense_rank(std::vector<std::vector<mpq_class>> m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

Result unwalled_com(bool exterior, Flavor flavor, int external, int N) {
  Setup st = make_setup(false, exterior, false);
  return flavor == Flavor::second ? second_complex(st, {external, 0}, N) : first_complex(st, {external, 0}, N);
}

Result walled_com(bool exterior, bool operad_only, Flavor flavor, std::pair<int, int> external, int N) {
  Setup st = make_setup(true, exterior, operad_only);
  return flavor == Flavor::second ? second_complex(st, external, N) : first_complex(st, external, N);
}

}  // namespace oracle
