#include "twb/operad.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace twb {

SparseMatrix CyclicOperadData::mu_at(int p, int q) const {
  if (auto* m = find_mu(p, q)) return *m;
  return SparseMatrix(dim(p + q - 2), dim(p) * dim(q));
}

const SparseMatrix* CyclicOperadData::find_mu(int p, int q) const {
  auto it = mu.find({p, q});
  return it == mu.end() ? nullptr : &it->second;
}

SparseMatrix DioperadData::mu_at(int m1, int n1, int m2, int n2) const {
  if (auto* m = find_mu(m1, n1, m2, n2)) return *m;
  return SparseMatrix(dim(m1 - 1 + m2, n1 + n2 - 1), dim(m1, n1) * dim(m2, n2));
}

const SparseMatrix* DioperadData::find_mu(int m1, int n1, int m2, int n2) const {
  auto it = mu.find({m1, n1, m2, n2});
  return it == mu.end() ? nullptr : &it->second;
}

bool ValidationReport::has_failure(const std::string& check, int level) const {
  return std::any_of(failures.begin(), failures.end(),
                     [&](const ReportEntry& e) { return e.check == check && (level < 0 || e.level == level); });
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  for (const auto& n : notes) os << "note: " << n << "\n";
  for (const auto& f : failures)
    os << "FAIL " << f.check << " at level " << f.level << (f.detail.empty() ? "" : ": " + f.detail) << "\n";
  os << (ok() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

// ---------------------------------------------------------------- labeled elements

namespace {

SparseVec apply_signed(const SignedPerm& p, const SparseVec& v) {
  std::vector<std::pair<std::uint32_t, Scalar>> out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) out.emplace_back(p.img[i], p.sign[i] > 0 ? x : Scalar(-x));
  return sparse_from_unsorted(std::move(out));
}

SparseVec apply_perm(const SymRep& rep, const Permutation& g, const SparseVec& v) {
  if (g.is_identity() || v.empty()) return v;
  if (rep.is_monomial()) return apply_signed(rep.eval_signed(g), v);
  return rep.eval_perm(g).apply(v);
}

std::vector<int> without(const std::vector<int>& v, int x) {
  std::vector<int> out;
  for (int y : v)
    if (y != x) out.push_back(y);
  if (out.size() + 1 != v.size()) throw std::invalid_argument("label not present in element");
  return out;
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

SparseVec tensor_apply(const SparseMatrix& mu, const SparseVec& a, const SparseVec& b, std::size_t db) {
  std::vector<std::pair<std::uint32_t, Scalar>> acc;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) {
      Scalar xy = x * y;
      for (const auto& [r, v] : mu.col(i * db + j)) acc.emplace_back(r, xy * v);
    }
  return sparse_from_unsorted(std::move(acc));
}

}  // namespace

SparseVec reorder_labels(const SymRep& rep, const std::vector<int>& from, const std::vector<int>& to,
                         const SparseVec& v) {
  if (from.size() != to.size() || static_cast<int>(from.size()) != rep.letters())
    throw std::invalid_argument("reorder_labels: label count mismatch");
  std::vector<int> img(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    auto it = std::find(to.begin(), to.end(), from[i]);
    if (it == to.end()) throw std::invalid_argument("reorder_labels: label sets differ");
    img[i] = static_cast<int>(it - to.begin());
  }
  return apply_perm(rep, Permutation(std::move(img)), v);
}

LabeledElem cyclic_contract(const CyclicOperadData& c, const LabeledElem& a, int x, const LabeledElem& b, int y) {
  int p = static_cast<int>(a.labels.size()), q = static_cast<int>(b.labels.size());
  LabeledElem out;
  std::vector<int> la = without(a.labels, x), lb = without(b.labels, y);
  out.labels = la;
  out.labels.insert(out.labels.end(), lb.begin(), lb.end());
  std::vector<int> result_order = out.labels;
  out.labels = sorted(out.labels);
  int k = p + q - 2;
  const SparseMatrix* mu = c.find_mu(p, q);
  if (!mu || k > c.truncation || a.vec.empty() || b.vec.empty()) return out;
  la.push_back(x);
  lb.push_back(y);
  SparseVec va = reorder_labels(c.underlying.level(p), a.labels, la, a.vec);
  SparseVec vb = reorder_labels(c.underlying.level(q), b.labels, lb, b.vec);
  SparseVec r = tensor_apply(*mu, va, vb, c.dim(q));
  if (r.empty()) return out;
  out.vec = reorder_labels(c.underlying.level(k), result_order, out.labels, r);
  return out;
}

LabeledElem2 dioperad_contract(const DioperadData& d, const LabeledElem2& a, int s, const LabeledElem2& b, int t) {
  int m1 = static_cast<int>(a.ins.size()), n1 = static_cast<int>(a.outs.size());
  int m2 = static_cast<int>(b.ins.size()), n2 = static_cast<int>(b.outs.size());
  LabeledElem2 out;
  std::vector<int> ai = without(a.ins, s), bo = without(b.outs, t);
  std::vector<int> rin = ai, rout = a.outs;
  rin.insert(rin.end(), b.ins.begin(), b.ins.end());
  rout.insert(rout.end(), bo.begin(), bo.end());
  out.ins = sorted(rin);
  out.outs = sorted(rout);
  int M = m1 - 1 + m2, N = n1 + n2 - 1;
  const SparseMatrix* mu = d.find_mu(m1, n1, m2, n2);
  if (!mu || M + N > d.truncation || a.vec.empty() || b.vec.empty()) return out;
  auto cat = [](std::vector<int> x, const std::vector<int>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  std::vector<int> fa = cat(a.ins, a.outs), fb = cat(b.ins, b.outs);
  ai.push_back(s);
  bo.push_back(t);
  SparseVec va = reorder_labels(d.underlying.level(m1, n1), fa, cat(ai, a.outs), a.vec);
  SparseVec vb = reorder_labels(d.underlying.level(m2, n2), fb, cat(b.ins, bo), b.vec);
  SparseVec r = tensor_apply(*mu, va, vb, d.dim(m2, n2));
  if (r.empty()) return out;
  out.vec = reorder_labels(d.underlying.level(M, N), cat(rin, rout), cat(out.ins, out.outs), r);
  return out;
}

// ---------------------------------------------------------------- validation

namespace {

std::vector<int> iota_labels(int from, int count) {
  std::vector<int> v(count);
  std::iota(v.begin(), v.end(), from);
  return v;
}

SparseVec basis_vec(std::size_t i) { return {{static_cast<std::uint32_t>(i), Scalar(1)}}; }

std::string vec_str(const SparseVec& v) {
  std::string s = "{";
  for (std::size_t k = 0; k < v.size(); ++k)
    s += (k ? ", " : "") + std::to_string(v[k].first) + ":" + format_scalar(v[k].second);
  return s + "}";
}

// permutation of p+q-2 result letters moving the second block in front of the first
SparseMatrix swap_tensor(std::size_t dp, std::size_t dq) {
  SparseMatrix m(dq * dp, dp * dq);
  for (std::size_t i = 0; i < dp; ++i)
    for (std::size_t j = 0; j < dq; ++j) m.set_col(i * dq + j, {{static_cast<std::uint32_t>(j * dp + i), Scalar(1)}});
  return m;
}

}  // namespace

ValidationReport validate_cyclic(const CyclicOperadData& c) {
  ValidationReport rep;
  const int N = c.truncation;
  auto fail = [&](const std::string& check, int level, const std::string& detail) {
    rep.failures.push_back({check, level, detail});
  };
  if (c.dim(0) != 0) fail("zero-level", 0, "C(0) must vanish");
  for (int n : c.underlying.support())
    if (n > N) fail("truncation", n, "level beyond truncation");

  // shapes
  bool shapes_ok = true;
  for (const auto& [k, m] : c.mu) {
    auto [p, q] = k;
    if (p < 1 || q < 1 || p + q - 2 > N || p > N || q > N) {
      fail("mu-shape", p + q - 2, "component (" + std::to_string(p) + "," + std::to_string(q) + ") out of range");
      shapes_ok = false;
      continue;
    }
    if (m.rows() != c.dim(p + q - 2) || m.cols() != c.dim(p) * c.dim(q)) {
      fail("mu-shape", p + q - 2, "component (" + std::to_string(p) + "," + std::to_string(q) + ") has wrong size");
      shapes_ok = false;
    }
  }
  if (c.unit && (c.dim(2) == 0 || (!c.unit->empty() && c.unit->back().first >= c.dim(2)))) {
    fail("unit-shape", 2, "unit does not lie in C(2)");
    shapes_ok = false;
  }
  if (!shapes_ok) return rep;

  // equivariance under the stabilizer of the contracted labels
  for (const auto& [k, m] : c.mu) {
    auto [p, q] = k;
    int lvl = p + q - 2;
    SymRep rp = c.underlying.level(p), rq = c.underlying.level(q), rk = c.underlying.level(lvl);
    SparseMatrix ip = SparseMatrix::identity(rp.dim()), iq = SparseMatrix::identity(rq.dim());
    for (int i = 0; i + 2 < p; ++i)
      if (m * kronecker(rp.generator(i), iq) != rk.generator(i) * m)
        fail("equivariance", lvl, "first block, transposition " + std::to_string(i + 1));
    for (int j = 0; j + 2 < q; ++j)
      if (m * kronecker(ip, rq.generator(j)) != rk.generator(p - 1 + j) * m)
        fail("equivariance", lvl, "second block, transposition " + std::to_string(j + 1));
  }

  // symmetry: mu_{p,q}(a,b) = mu_{q,p}(b,a) after moving blocks back
  for (int p = 1; p <= N; ++p)
    for (int q = p; q <= N; ++q) {
      int lvl = p + q - 2;
      if (lvl > N || c.dim(p) == 0 || c.dim(q) == 0 || c.dim(lvl) == 0) continue;
      SparseMatrix a = c.mu_at(p, q), b = c.mu_at(q, p);
      std::vector<int> img(lvl);
      for (int i = 0; i < q - 1; ++i) img[i] = p - 1 + i;
      for (int i = 0; i < p - 1; ++i) img[q - 1 + i] = i;
      SparseMatrix rhs = c.underlying.level(lvl).eval_perm(Permutation(img)) * b * swap_tensor(c.dim(p), c.dim(q));
      if (a != rhs)
        fail("symmetry", lvl, "components (" + std::to_string(p) + "," + std::to_string(q) + ") and (" +
                                  std::to_string(q) + "," + std::to_string(p) + ")");
    }

  // associativity on a chain a - b - c; equivariance reduces to one labeling per shape
  for (int p = 1; p <= N; ++p)
    for (int q = 2; q <= N; ++q)
      for (int r = 1; r <= N; ++r) {
        int out = p + q + r - 4;
        if (out < 0 || out > N || p + q - 2 > N || q + r - 2 > N) continue;
        if (!c.dim(p) || !c.dim(q) || !c.dim(r)) continue;
        LabeledElem A{iota_labels(0, p), {}}, B{iota_labels(p, q), {}}, C{iota_labels(p + q, r), {}};
        int x = p - 1, y1 = p + q - 2, y2 = p + q - 1, z = p + q + r - 1;
        bool bad = false;
        for (std::size_t i = 0; i < c.dim(p) && !bad; ++i)
          for (std::size_t j = 0; j < c.dim(q) && !bad; ++j)
            for (std::size_t k = 0; k < c.dim(r) && !bad; ++k) {
              A.vec = basis_vec(i);
              B.vec = basis_vec(j);
              C.vec = basis_vec(k);
              LabeledElem left = cyclic_contract(c, cyclic_contract(c, A, x, B, y1), y2, C, z);
              LabeledElem right = cyclic_contract(c, A, x, cyclic_contract(c, B, y2, C, z), y1);
              if (left.vec != right.vec) {
                bad = true;
                fail("associativity", out,
                     "arities (" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) +
                         "), basis (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                         "): " + vec_str(left.vec) + " vs " + vec_str(right.vec));
              }
            }
      }

  // unit: contracting with the unit renames the contracted label
  if (c.unit) {
    LabeledElem eta{{0, 1}, *c.unit};
    for (int q = 1; q <= N; ++q) {
      if (!c.dim(q)) continue;
      for (std::size_t j = 0; j < c.dim(q); ++j) {
        LabeledElem e{iota_labels(2, q), basis_vec(j)};
        int y = q + 1;
        LabeledElem got = cyclic_contract(c, eta, 1, e, y);
        // y becomes label 0
        std::vector<int> renamed = e.labels;
        renamed.back() = 0;
        SparseVec want = reorder_labels(c.underlying.level(q), renamed, sorted(renamed), e.vec);
        if (got.vec != want) {
          fail("unit", q, "left unit on basis vector " + std::to_string(j));
          break;
        }
        LabeledElem got2 = cyclic_contract(c, e, y, eta, 1);
        std::vector<int> renamed2 = e.labels;
        renamed2.back() = 0;
        SparseVec want2 = reorder_labels(c.underlying.level(q), renamed2, sorted(renamed2), e.vec);
        if (got2.vec != want2) {
          fail("unit", q, "right unit on basis vector " + std::to_string(j));
          break;
        }
      }
    }
  }
  rep.notes.push_back("axioms checked where all participating levels are <= " + std::to_string(N));
  return rep;
}

namespace {

// dioperad elements laid out with inputs on small labels and outputs on large ones
struct Layout {
  int in_next = 0, out_next = 1000;
  LabeledElem2 make(int m, int n) {
    LabeledElem2 e{iota_labels(in_next, m), iota_labels(out_next, n), {}};
    in_next += m;
    out_next += n;
    return e;
  }
};

std::optional<LabeledElem2> contract_any(const DioperadData& d, const LabeledElem2& X, const LabeledElem2& Y, int s,
                                         int t) {
  auto has = [](const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); };
  if (has(X.ins, s) && has(Y.outs, t)) return dioperad_contract(d, X, s, Y, t);
  if (has(Y.ins, s) && has(X.outs, t)) return dioperad_contract(d, Y, s, X, t);
  return std::nullopt;
}

}  // namespace

ValidationReport validate_dioperad(const DioperadData& d) {
  ValidationReport rep;
  const int N = d.truncation;
  auto fail = [&](const std::string& check, int level, const std::string& detail) {
    rep.failures.push_back({check, level, detail});
  };
  if (d.dim(0, 0) != 0) fail("zero-level", 0, "D(0,0) must vanish");
  for (auto [m, n] : d.underlying.support())
    if (m + n > N) fail("truncation", m + n, "bi-level beyond truncation");
  bool shapes_ok = true;
  for (const auto& [k, mat] : d.mu) {
    auto [m1, n1, m2, n2] = k;
    int M = m1 - 1 + m2, Nn = n1 + n2 - 1;
    if (m1 < 1 || n2 < 1 || n1 < 0 || m2 < 0 || M + Nn > N || m1 + n1 > N || m2 + n2 > N) {
      fail("mu-shape", M + Nn, "component out of range");
      shapes_ok = false;
      continue;
    }
    if (mat.rows() != d.dim(M, Nn) || mat.cols() != d.dim(m1, n1) * d.dim(m2, n2)) {
      fail("mu-shape", M + Nn, "component has wrong size");
      shapes_ok = false;
    }
  }
  if (d.unit && (d.dim(1, 1) == 0 || (!d.unit->empty() && d.unit->back().first >= d.dim(1, 1)))) {
    fail("unit-shape", 2, "unit does not lie in D(1,1)");
    shapes_ok = false;
  }
  if (!shapes_ok) return rep;

  for (const auto& [k, mat] : d.mu) {
    auto [m1, n1, m2, n2] = k;
    int M = m1 - 1 + m2, Nn = n1 + n2 - 1;
    SymRep ra = d.underlying.level(m1, n1), rb = d.underlying.level(m2, n2), rr = d.underlying.level(M, Nn);
    SparseMatrix ia = SparseMatrix::identity(ra.dim()), ib = SparseMatrix::identity(rb.dim());
    auto check = [&](const SparseMatrix& lhs_gen, bool first, int res_letter) {
      SparseMatrix lhs = first ? mat * kronecker(lhs_gen, ib) : mat * kronecker(ia, lhs_gen);
      if (lhs != rr.generator(res_letter) * mat) fail("equivariance", M + Nn, "stabilizer generator");
    };
    for (int i = 0; i + 2 < m1; ++i) check(ra.generator(i), true, i);
    for (int j = 0; j + 1 < n1; ++j) check(ra.generator(m1 + j), true, M + j);
    for (int i = 0; i + 1 < m2; ++i) check(rb.generator(i), false, m1 - 1 + i);
    for (int j = 0; j + 2 < n2; ++j) check(rb.generator(m2 + j), false, M + n1 + j);
  }

  // associativity on chains a - b - c with each pair oriented either way
  auto levels = d.underlying.support();
  for (auto [ma, na] : levels)
    for (auto [mb, nb] : levels)
      for (auto [mc, nc] : levels) {
        int ta = ma + na, tb = mb + nb, tc = mc + nc;
        if (ta + tb - 2 > N || tb + tc - 2 > N || ta + tb + tc - 4 > N) continue;
        for (int dir1 = 0; dir1 < 2; ++dir1)
          for (int dir2 = 0; dir2 < 2; ++dir2) {
            // dir1 = 0: a's input takes b's output; 1: b's input takes a's output (same for dir2 with c)
            int b_in_used = (dir1 == 1) + (dir2 == 1), b_out_used = (dir1 == 0) + (dir2 == 0);
            if (mb < b_in_used || nb < b_out_used) continue;
            if (dir1 == 0 ? ma < 1 : na < 1) continue;
            if (dir2 == 0 ? mc < 1 : nc < 1) continue;
            Layout lay;
            LabeledElem2 A = lay.make(ma, na), B = lay.make(mb, nb), C = lay.make(mc, nc);
            int bi = mb - 1, bo = nb - 1;
            int s1, t1, s2, t2;
            if (dir1 == 0) {
              s1 = A.ins.back();
              t1 = B.outs[bo--];
            } else {
              s1 = B.ins[bi--];
              t1 = A.outs.back();
            }
            if (dir2 == 0) {
              s2 = C.ins.back();
              t2 = B.outs[bo];
            } else {
              s2 = B.ins[bi];
              t2 = C.outs.back();
            }
            int out = ta + tb + tc - 4;
            bool bad = false;
            for (std::size_t i = 0; i < d.dim(ma, na) && !bad; ++i)
              for (std::size_t j = 0; j < d.dim(mb, nb) && !bad; ++j)
                for (std::size_t k = 0; k < d.dim(mc, nc) && !bad; ++k) {
                  A.vec = basis_vec(i);
                  B.vec = basis_vec(j);
                  C.vec = basis_vec(k);
                  auto ab = contract_any(d, A, B, s1, t1);
                  auto left = contract_any(d, *ab, C, s2, t2);
                  auto bc = contract_any(d, B, C, s2, t2);
                  auto right = contract_any(d, A, *bc, s1, t1);
                  if (left->vec != right->vec) {
                    bad = true;
                    fail("associativity", out,
                         "bi-levels (" + std::to_string(ma) + "," + std::to_string(na) + "),(" + std::to_string(mb) +
                             "," + std::to_string(nb) + "),(" + std::to_string(mc) + "," + std::to_string(nc) + ")");
                  }
                }
          }
      }

  if (d.unit) {
    for (auto [m, n] : levels) {
      for (std::size_t j = 0; j < d.dim(m, n); ++j) {
        const int eta_in = -1, eta_out = 999;
        LabeledElem2 eta{{eta_in}, {eta_out}, *d.unit};
        LabeledElem2 e{iota_labels(0, m), iota_labels(1000, n), basis_vec(j)};
        SymRep r = d.underlying.level(m, n);
        auto cat = [](std::vector<int> x, const std::vector<int>& y) {
          x.insert(x.end(), y.begin(), y.end());
          return x;
        };
        if (n >= 1) {
          LabeledElem2 got = dioperad_contract(d, eta, eta_in, e, e.outs.back());
          std::vector<int> outs = e.outs;
          outs.back() = eta_out;
          SparseVec want = reorder_labels(r, cat(e.ins, outs), cat(e.ins, sorted(outs)), e.vec);
          if (got.vec != want) fail("unit", m + n, "output side");
        }
        if (m >= 1) {
          LabeledElem2 got = dioperad_contract(d, e, e.ins.back(), eta, eta_out);
          std::vector<int> ins = e.ins;
          ins.back() = eta_in;
          SparseVec want = reorder_labels(r, cat(ins, e.outs), cat(sorted(ins), e.outs), e.vec);
          if (got.vec != want) fail("unit", m + n, "input side");
        }
      }
    }
  }
  rep.notes.push_back("axioms checked where all participating bi-levels have total <= " + std::to_string(N));
  return rep;
}

// ---------------------------------------------------------------- builtins

CyclicOperadData zero_cyclic(int truncation) {
  CyclicOperadData c;
  c.truncation = truncation;
  return c;
}

DioperadData zero_dioperad(int truncation) {
  DioperadData d;
  d.truncation = truncation;
  return d;
}

CyclicOperadData builtin_com_cyclic(int N, bool unital) {
  if (N < 2) throw std::invalid_argument("truncation must be at least 2");
  CyclicOperadData c = zero_cyclic(N);
  for (int n = 2; n <= N; ++n) c.underlying.set_level(n, SymRep::trivial({n}));
  for (int p = 2; p <= N; ++p)
    for (int q = 2; q <= N; ++q)
      if (p + q - 2 <= N) {
        SparseMatrix m(1, 1);
        m.set_col(0, {{0, Scalar(1)}});
        c.mu[{p, q}] = m;
      }
  if (unital) c.unit = SparseVec{{0, Scalar(1)}};
  return c;
}

namespace {

// cyclic orders on n letters written from label 0, in lexicographic order
std::vector<std::vector<int>> cyclic_orders(int n) {
  std::vector<std::vector<int>> out;
  if (n < 1) return out;
  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 1);
  do {
    std::vector<int> c{0};
    c.insert(c.end(), rest.begin(), rest.end());
    out.push_back(c);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

std::vector<int> rotate_to_zero(std::vector<int> c) {
  auto it = std::find(c.begin(), c.end(), 0);
  std::rotate(c.begin(), it, c.end());
  return c;
}

}  // namespace

CyclicOperadData builtin_assoc_cyclic(int N) {
  if (N < 2) throw std::invalid_argument("truncation must be at least 2");
  CyclicOperadData c = zero_cyclic(N);
  std::map<int, std::map<std::vector<int>, std::uint32_t>> index;
  std::map<int, std::vector<std::vector<int>>> orders;
  for (int n = 2; n <= N; ++n) {
    orders[n] = cyclic_orders(n);
    for (std::size_t k = 0; k < orders[n].size(); ++k) index[n][orders[n][k]] = static_cast<std::uint32_t>(k);
    std::vector<SignedPerm> gens;
    for (int i = 0; i + 1 < n; ++i) {
      SignedPerm g;
      for (const auto& o : orders[n]) {
        std::vector<int> moved = o;
        for (int& x : moved) x = x == i ? i + 1 : (x == i + 1 ? i : x);
        g.img.push_back(index[n].at(rotate_to_zero(moved)));
        g.sign.push_back(1);
      }
      gens.push_back(std::move(g));
    }
    c.underlying.set_level(n, SymRep::from_signed({n}, orders[n].size(), gens));
  }
  for (int p = 2; p <= N; ++p)
    for (int q = 2; q <= N; ++q) {
      int k = p + q - 2;
      if (k > N) continue;
      const auto& op = orders[p];
      const auto& oq = orders[q];
      SparseMatrix m(orders[k].size(), op.size() * oq.size());
      for (std::size_t i = 0; i < op.size(); ++i)
        for (std::size_t j = 0; j < oq.size(); ++j) {
          // walk the first cycle after x = p-1, then the second after y = q-1 (shifted by p-1)
          std::vector<int> res;
          const auto& a = op[i];
          const auto& b = oq[j];
          int px = static_cast<int>(std::find(a.begin(), a.end(), p - 1) - a.begin());
          for (int s = 1; s < p; ++s) res.push_back(a[(px + s) % p]);
          int py = static_cast<int>(std::find(b.begin(), b.end(), q - 1) - b.begin());
          for (int s = 1; s < q; ++s) res.push_back(b[(py + s) % q] + p - 1);
          m.set_col(i * oq.size() + j, {{index[k].at(rotate_to_zero(res)), Scalar(1)}});
        }
      c.mu[{p, q}] = m;
    }
  return c;
}

DioperadData builtin_com_operad(int N, bool unital) {
  if (N < 2) throw std::invalid_argument("truncation must be at least 2");
  DioperadData d = zero_dioperad(N);
  for (int m = 1; m + 1 <= N; ++m) d.underlying.set_level(m, 1, SymRep::trivial({m, 1}));
  for (int m1 = 1; m1 + 1 <= N; ++m1)
    for (int m2 = 1; m2 + 1 <= N; ++m2)
      if (m1 - 1 + m2 + 1 <= N) {
        SparseMatrix m(1, 1);
        m.set_col(0, {{0, Scalar(1)}});
        d.mu[{m1, 1, m2, 1}] = m;
      }
  if (unital) d.unit = SparseVec{{0, Scalar(1)}};
  return d;
}

// ---------------------------------------------------------------- translations

DioperadData to_dioperad(const CyclicOperadData& c) {
  DioperadData d = zero_dioperad(c.truncation);
  d.underlying = amalg_pull(c.underlying);
  const int N = c.truncation;
  auto levels = d.underlying.support();
  for (auto [m1, n1] : levels)
    for (auto [m2, n2] : levels) {
      if (m1 < 1 || n2 < 1) continue;
      int M = m1 - 1 + m2, Nn = n1 + n2 - 1;
      if (M + Nn > N) continue;
      if (!c.find_mu(m1 + n1, m2 + n2)) continue;
      // global labels: inputs below outputs so cyclic labelings agree with walled ones
      LabeledElem a{}, b{};
      auto ain = iota_labels(0, m1), bin = iota_labels(m1, m2);
      auto aout = iota_labels(1000, n1), bout = iota_labels(1000 + n1, n2);
      a.labels = ain;
      a.labels.insert(a.labels.end(), aout.begin(), aout.end());
      b.labels = bin;
      b.labels.insert(b.labels.end(), bout.begin(), bout.end());
      std::size_t da = d.dim(m1, n1), db = d.dim(m2, n2);
      SparseMatrix mat(d.dim(M, Nn), da * db);
      for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j) {
          a.vec = basis_vec(i);
          b.vec = basis_vec(j);
          mat.set_col(i * db + j, cyclic_contract(c, a, ain.back(), b, bout.back()).vec);
        }
      d.mu[{m1, n1, m2, n2}] = std::move(mat);
    }
  d.unit = c.unit;
  return d;
}

namespace {

// basis of (amalg_push D)(n): (p, assignment over {0 = input, 1 = output}, index)
struct PushEntry {
  int p;
  std::vector<int> assignment;
  std::size_t index;
};

std::vector<PushEntry> push_basis(const FB2Module& g, int n) {
  std::vector<PushEntry> out;
  for (int p = 0; p <= n; ++p) {
    std::size_t dim = g.dim(p, n - p);
    if (!dim) continue;
    for (const auto& a : young_assignments({p, n - p}, {n}))
      for (std::size_t i = 0; i < dim; ++i) out.push_back({p, a, i});
  }
  return out;
}

}  // namespace

CyclicOperadData to_cyclic(const DioperadData& d) {
  CyclicOperadData c = zero_cyclic(d.truncation);
  c.underlying = amalg_push(d.underlying);
  const int N = d.truncation;
  std::map<int, std::vector<PushEntry>> bases;
  std::map<int, std::map<std::pair<std::vector<int>, std::size_t>, std::uint32_t>> lookup;
  for (int n = 0; n <= N; ++n) {
    bases[n] = push_basis(d.underlying, n);
    for (std::size_t k = 0; k < bases[n].size(); ++k)
      lookup[n][{bases[n][k].assignment, bases[n][k].index}] = static_cast<std::uint32_t>(k);
  }
  auto to_elem2 = [](const PushEntry& e, int offset) {
    LabeledElem2 x;
    for (std::size_t u = 0; u < e.assignment.size(); ++u)
      (e.assignment[u] == 0 ? x.ins : x.outs).push_back(offset + static_cast<int>(u));
    x.vec = basis_vec(e.index);
    return x;
  };
  for (int p = 1; p <= N; ++p)
    for (int q = 1; q <= N; ++q) {
      int k = p + q - 2;
      if (k > N || !c.dim(p) || !c.dim(q)) continue;
      SparseMatrix mat(c.dim(k), c.dim(p) * c.dim(q));
      const auto& bp = bases[p];
      const auto& bq = bases[q];
      int x = p - 1, y = p + q - 1;
      for (std::size_t i = 0; i < bp.size(); ++i)
        for (std::size_t j = 0; j < bq.size(); ++j) {
          LabeledElem2 a = to_elem2(bp[i], 0), b = to_elem2(bq[j], p);
          bool x_in = bp[i].assignment[x] == 0, y_in = bq[j].assignment[q - 1] == 0;
          LabeledElem2 r;
          if (x_in && !y_in) r = dioperad_contract(d, a, x, b, y);
          else if (!x_in && y_in) r = dioperad_contract(d, b, y, a, x);
          else continue;
          if (r.vec.empty()) continue;
          // result labels in increasing order become 0..k-1
          std::vector<int> all = r.ins;
          all.insert(all.end(), r.outs.begin(), r.outs.end());
          std::sort(all.begin(), all.end());
          std::vector<int> assign(k);
          for (int u = 0; u < k; ++u)
            assign[u] = std::binary_search(r.ins.begin(), r.ins.end(), all[u]) ? 0 : 1;
          SparseVec col;
          for (const auto& [idx, v] : r.vec) col.emplace_back(lookup[k].at({assign, idx}), v);
          mat.set_col(i * bq.size() + j, sparse_from_unsorted(std::move(col)));
        }
      if (!mat.is_zero()) c.mu[{p, q}] = std::move(mat);
    }
  if (d.unit) {
    // e + tau on the (1,1) summand; see the notes on the unit normalization
    SparseVec u;
    for (const auto& [idx, v] : *d.unit) {
      u.emplace_back(lookup[2].at({{0, 1}, idx}), v);
      u.emplace_back(lookup[2].at({{1, 0}, idx}), v);
    }
    c.unit = sparse_from_unsorted(std::move(u));
  }
  return c;
}

DioperadData underlying_operad(const DioperadData& d) {
  DioperadData o = zero_dioperad(d.truncation);
  for (const auto& [k, r] : d.underlying.levels())
    if (k.second == 1) o.underlying.set_level(k.first, k.second, r);
  for (const auto& [k, m] : d.mu)
    if (k[1] == 1 && k[3] == 1) o.mu[k] = m;
  o.unit = d.unit;
  return o;
}

DioperadData positive_part(const DioperadData& d) {
  DioperadData o = zero_dioperad(d.truncation);
  for (const auto& [k, r] : d.underlying.levels())
    if (k.first > 0 && k.second > 0) o.underlying.set_level(k.first, k.second, r);
  for (const auto& [k, m] : d.mu)
    if (k[0] > 0 && k[1] > 0 && k[2] > 0 && k[3] > 0) o.mu[k] = m;
  o.unit = d.unit;
  return o;
}

DioperadData opposite(const DioperadData& d) {
  DioperadData o = zero_dioperad(d.truncation);
  for (const auto& [k, r] : d.underlying.levels()) o.underlying.set_level(k.second, k.first, reorder_blocks(r, {1, 0}));
  auto levels = o.underlying.support();
  for (auto [m1, n1] : levels)
    for (auto [m2, n2] : levels) {
      if (m1 < 1 || n2 < 1) continue;
      int M = m1 - 1 + m2, Nn = n1 + n2 - 1;
      if (M + Nn > o.truncation) continue;
      // in d: a has inputs = op outputs; compose a's op input (a d-output) with b's op output (a d-input)
      if (!d.find_mu(n2, m2, n1, m1)) continue;
      std::size_t da = o.dim(m1, n1), db = o.dim(m2, n2);
      SparseMatrix mat(o.dim(M, Nn), da * db);
      LabeledElem2 a{iota_labels(1000, n1), iota_labels(0, m1), {}};
      LabeledElem2 b{iota_labels(1000 + n1, n2), iota_labels(m1, m2), {}};
      for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j) {
          a.vec = basis_vec(i);
          b.vec = basis_vec(j);
          // s = a's last op-input = a.outs.back(), t = b's last op-output = b.ins.back()
          LabeledElem2 r = dioperad_contract(d, b, b.ins.back(), a, a.outs.back());
          mat.set_col(i * db + j, r.vec);
        }
      if (!mat.is_zero()) o.mu[{m1, n1, m2, n2}] = std::move(mat);
    }
  o.unit = d.unit;
  return o;
}

bool same_data(const CyclicOperadData& a, const CyclicOperadData& b) {
  if (a.truncation != b.truncation || a.unit != b.unit) return false;
  if (a.underlying.levels().size() != b.underlying.levels().size()) return false;
  for (const auto& [n, r] : a.underlying.levels())
    if (!b.underlying.has_level(n) || !(b.underlying.level(n) == r)) return false;
  std::set<std::pair<int, int>> keys;
  for (const auto& [k, m] : a.mu) keys.insert(k);
  for (const auto& [k, m] : b.mu) keys.insert(k);
  for (auto [p, q] : keys)
    if (a.mu_at(p, q) != b.mu_at(p, q)) return false;
  return true;
}

bool same_data(const DioperadData& a, const DioperadData& b) {
  if (a.truncation != b.truncation || a.unit != b.unit) return false;
  if (a.underlying.levels().size() != b.underlying.levels().size()) return false;
  for (const auto& [k, r] : a.underlying.levels())
    if (!b.underlying.has_level(k.first, k.second) || !(b.underlying.level(k.first, k.second) == r)) return false;
  std::set<std::array<int, 4>> keys;
  for (const auto& [k, m] : a.mu) keys.insert(k);
  for (const auto& [k, m] : b.mu) keys.insert(k);
  for (const auto& k : keys)
    if (a.mu_at(k[0], k[1], k[2], k[3]) != b.mu_at(k[0], k[1], k[2], k[3])) return false;
  return true;
}

}  // namespace twb
