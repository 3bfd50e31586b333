#include "twb/brauer.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace twb {

bool is_walled(Shape s) { return s == Shape::uwb || s == Shape::uwb_ord; }

std::string shape_name(Shape s) {
  switch (s) {
    case Shape::dub_ord: return "dub_ord";
    case Shape::dub: return "dub";
    case Shape::ub: return "ub";
    case Shape::uwb_ord: return "uwb_ord";
    case Shape::uwb: return "uwb";
  }
  return "?";
}

Shape parse_shape(const std::string& s) {
  if (s == "dub_ord" || s == "dub^ord") return Shape::dub_ord;
  if (s == "dub" || s == "d->ub" || s == "dirub") return Shape::dub;
  if (s == "ub") return Shape::ub;
  if (s == "uwb_ord" || s == "uwb^ord") return Shape::uwb_ord;
  if (s == "uwb") return Shape::uwb;
  throw std::invalid_argument("unknown category shape '" + s + "'");
}

void CatTag::validate() const {
  auto sign_ok = [](int x) { return x == 1 || x == -1; };
  if (!sign_ok(twist.first) || !sign_ok(twist.order)) throw std::invalid_argument("twist signs must be +1 or -1");
  if (shape != Shape::ub && twist.first != 1) throw std::invalid_argument("reversal sign only exists on ub");
  if ((shape == Shape::dub_ord || shape == Shape::uwb_ord) && twist.order != 1)
    throw std::invalid_argument("ordered shapes carry no twist");
}

std::string CatTag::str() const {
  auto s = [](int x) { return x > 0 ? std::string("+") : std::string("-"); };
  std::string out = shape_name(shape);
  if (shape == Shape::ub) out += "(" + s(twist.first) + ";" + s(twist.order) + ")";
  else if (shape == Shape::dub || shape == Shape::uwb) out += "_" + s(twist.order);
  return out + (upward ? "" : "^op");
}

bool BrauerMorphism::same_diagram(const BrauerMorphism& o) const {
  return tag == o.tag && src == o.src && dst == o.dst && inj == o.inj && pairs == o.pairs;
}

std::vector<int> BrauerMorphism::key() const {
  std::vector<int> k = inj;
  k.push_back(-1);
  for (auto [a, b] : pairs) {
    k.push_back(a);
    k.push_back(b);
  }
  return k;
}

std::string BrauerMorphism::str() const {
  std::string s = format_scalar(coeff) + "*" + tag.str() + "[";
  for (std::size_t i = 0; i < inj.size(); ++i) s += (i ? "," : "") + std::to_string(inj[i] + 1);
  s += "|";
  for (std::size_t i = 0; i < pairs.size(); ++i)
    s += (i ? "," : "") + std::string("(") + std::to_string(pairs[i].first + 1) + " " +
         std::to_string(pairs[i].second + 1) + ")";
  return s + "]";
}

void check_morphism(const BrauerMorphism& m) {
  m.tag.validate();
  bool walled = is_walled(m.tag.shape);
  if (!walled && (m.src.right != 0 || m.dst.right != 0)) throw std::invalid_argument("unwalled object with a right part");
  int t = static_cast<int>(m.pairs.size());
  if (walled) {
    if (m.dst.left - m.src.left != t || m.dst.right - m.src.right != t)
      throw std::invalid_argument("degree inconsistency in walled morphism " + m.str());
  } else if (m.dst.left - m.src.left != 2 * t) {
    throw std::invalid_argument("degree inconsistency in morphism " + m.str());
  }
  if (static_cast<int>(m.inj.size()) != m.src.total()) throw std::invalid_argument("injection length mismatch");
  std::vector<int> hit(m.dst.total(), 0);
  auto mark = [&](int x) {
    if (x < 0 || x >= m.dst.total()) throw std::invalid_argument("label out of range in " + m.str());
    if (hit[x]++) throw std::invalid_argument("label used twice in " + m.str());
  };
  for (int i = 0; i < m.src.total(); ++i) {
    mark(m.inj[i]);
    if (walled && ((i < m.src.left) != (m.inj[i] < m.dst.left)))
      throw std::invalid_argument("injection crosses the wall in " + m.str());
  }
  for (auto [a, b] : m.pairs) {
    mark(a);
    mark(b);
    if (walled && ((a < m.dst.left) == (b < m.dst.left)))
      throw std::invalid_argument("walled pair does not cross the wall in " + m.str());
  }
}

BrauerMorphism normalize(const BrauerMorphism& m) {
  check_morphism(m);
  BrauerMorphism out = m;
  Shape s = m.tag.shape;
  if (s == Shape::dub_ord || s == Shape::uwb_ord) {
    // ordered shapes: only walled orientation is canonicalized
    if (s == Shape::uwb_ord)
      for (auto& p : out.pairs)
        if (p.first >= m.dst.left) std::swap(p.first, p.second);
    return out;
  }
  if (s == Shape::ub) {
    for (auto& p : out.pairs)
      if (p.first > p.second) {
        std::swap(p.first, p.second);
        out.coeff *= m.tag.twist.first;
      }
  } else if (s == Shape::uwb) {
    for (auto& p : out.pairs)
      if (p.first >= m.dst.left) std::swap(p.first, p.second);
  }
  // sort by smallest member, tracking the parity of the sorting permutation
  std::size_t t = out.pairs.size();
  std::vector<std::size_t> ord(t);
  std::iota(ord.begin(), ord.end(), 0);
  auto lo = [&](std::size_t k) { return std::min(out.pairs[k].first, out.pairs[k].second); };
  std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return lo(a) < lo(b); });
  int inversions = 0;
  for (std::size_t a = 0; a < t; ++a)
    for (std::size_t b = a + 1; b < t; ++b)
      if (ord[a] > ord[b]) ++inversions;
  std::vector<std::pair<int, int>> sorted;
  for (auto k : ord) sorted.push_back(out.pairs[k]);
  out.pairs = std::move(sorted);
  if (inversions % 2 == 1) out.coeff *= m.tag.twist.order;
  return out;
}

BrauerMorphism compose(const BrauerMorphism& f, const BrauerMorphism& g) {
  if (!(f.tag == g.tag)) throw std::invalid_argument("compose: tag mismatch " + f.tag.str() + " vs " + g.tag.str());
  if (!f.tag.upward) {
    BrauerMorphism fu = f, gu = g;
    fu.tag.upward = gu.tag.upward = true;
    BrauerMorphism r = compose(gu, fu);
    r.tag.upward = false;
    return r;
  }
  if (!(f.dst == g.src)) throw std::invalid_argument("compose: objects do not match");
  BrauerMorphism r;
  r.tag = f.tag;
  r.src = f.src;
  r.dst = g.dst;
  r.inj.resize(f.inj.size());
  for (std::size_t i = 0; i < f.inj.size(); ++i) r.inj[i] = g.inj[f.inj[i]];
  for (auto [a, b] : f.pairs) r.pairs.emplace_back(g.inj[a], g.inj[b]);
  r.pairs.insert(r.pairs.end(), g.pairs.begin(), g.pairs.end());
  r.coeff = f.coeff * g.coeff;
  return normalize(r);
}

BrauerMorphism identity_morphism(const CatTag& tag, Obj obj) {
  BrauerMorphism m;
  m.tag = tag;
  m.src = m.dst = obj;
  m.inj.resize(obj.total());
  std::iota(m.inj.begin(), m.inj.end(), 0);
  check_morphism(m);
  return m;
}

BrauerMorphism permutation_morphism(const CatTag& tag, Obj obj, const std::vector<int>& perm) {
  BrauerMorphism m = identity_morphism(tag, obj);
  if (static_cast<int>(perm.size()) != obj.total()) throw std::invalid_argument("permutation size mismatch");
  m.inj = perm;
  check_morphism(m);
  return m;
}

std::optional<std::pair<std::size_t, Scalar>> HomBasis::locate(const BrauerMorphism& m) const {
  BrauerMorphism n = normalize(m);
  auto it = index.find(n.key());
  if (it == index.end()) return std::nullopt;
  return std::make_pair(it->second, n.coeff);
}

namespace {

void injections(int a, const std::vector<int>& targets, std::vector<int>& cur, std::vector<bool>& used,
                std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == a) {
    out.push_back(cur);
    return;
  }
  for (std::size_t k = 0; k < targets.size(); ++k) {
    if (used[k]) continue;
    used[k] = true;
    cur.push_back(targets[k]);
    injections(a, targets, cur, used, out);
    cur.pop_back();
    used[k] = false;
  }
}

std::vector<std::vector<int>> all_injections(int a, const std::vector<int>& targets) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<bool> used(targets.size(), false);
  injections(a, targets, cur, used, out);
  return out;
}

void matchings(std::vector<int> rest, std::vector<std::pair<int, int>>& cur,
               std::vector<std::vector<std::pair<int, int>>>& out) {
  if (rest.empty()) {
    out.push_back(cur);
    return;
  }
  int a = rest[0];
  for (std::size_t k = 1; k < rest.size(); ++k) {
    std::vector<int> r2;
    for (std::size_t j = 1; j < rest.size(); ++j)
      if (j != k) r2.push_back(rest[j]);
    cur.emplace_back(a, rest[k]);
    matchings(r2, cur, out);
    cur.pop_back();
  }
}

mpz_class fact(int n) {
  mpz_class f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

HomBasis hom_basis(const CatTag& tag, Obj src, Obj dst) {
  tag.validate();
  HomBasis hb;
  hb.tag = tag;
  hb.src = src;
  hb.dst = dst;
  auto add = [&](BrauerMorphism m) {
    m = normalize(m);
    m.coeff = 1;
    auto k = m.key();
    if (hb.index.count(k)) return;
    hb.index.emplace(std::move(k), hb.elements.size());
    hb.elements.push_back(std::move(m));
  };
  BrauerMorphism proto;
  proto.tag = tag;
  proto.src = src;
  proto.dst = dst;
  if (!is_walled(tag.shape)) {
    if (src.right || dst.right) return hb;
    int diff = dst.left - src.left;
    if (diff < 0 || diff % 2) return hb;
    std::vector<int> all(dst.left);
    std::iota(all.begin(), all.end(), 0);
    for (const auto& inj : all_injections(src.left, all)) {
      std::vector<bool> used(dst.left, false);
      for (int x : inj) used[x] = true;
      std::vector<int> rest;
      for (int x = 0; x < dst.left; ++x)
        if (!used[x]) rest.push_back(x);
      BrauerMorphism m = proto;
      m.inj = inj;
      if (tag.shape == Shape::dub_ord) {
        std::vector<int> perm = rest;
        do {
          m.pairs.clear();
          for (std::size_t k = 0; k < perm.size(); k += 2) m.pairs.emplace_back(perm[k], perm[k + 1]);
          add(m);
        } while (std::next_permutation(perm.begin(), perm.end()));
        continue;
      }
      std::vector<std::vector<std::pair<int, int>>> ms;
      std::vector<std::pair<int, int>> cur;
      matchings(rest, cur, ms);
      for (const auto& mt : ms) {
        if (tag.shape == Shape::ub) {
          m.pairs = mt;
          add(m);
        } else {
          for (unsigned mask = 0; mask < (1u << mt.size()); ++mask) {
            m.pairs = mt;
            for (std::size_t k = 0; k < mt.size(); ++k)
              if (mask >> k & 1u) std::swap(m.pairs[k].first, m.pairs[k].second);
            add(m);
          }
        }
      }
    }
    return hb;
  }
  int k = dst.left - src.left;
  if (k < 0 || dst.right - src.right != k) return hb;
  std::vector<int> lt(dst.left), rt(dst.right);
  std::iota(lt.begin(), lt.end(), 0);
  std::iota(rt.begin(), rt.end(), dst.left);
  auto linj = all_injections(src.left, lt);
  auto rinj = all_injections(src.right, rt);
  for (const auto& li : linj)
    for (const auto& ri : rinj) {
      std::vector<bool> used(dst.total(), false);
      for (int x : li) used[x] = true;
      for (int x : ri) used[x] = true;
      std::vector<int> fl, fr;
      for (int x = 0; x < dst.left; ++x)
        if (!used[x]) fl.push_back(x);
      for (int x = dst.left; x < dst.total(); ++x)
        if (!used[x]) fr.push_back(x);
      BrauerMorphism m = proto;
      m.inj = li;
      m.inj.insert(m.inj.end(), ri.begin(), ri.end());
      std::vector<int> rp = fr;
      do {
        if (tag.shape == Shape::uwb) {
          m.pairs.clear();
          for (int a = 0; a < k; ++a) m.pairs.emplace_back(fl[a], rp[a]);
          add(m);
        } else {
          std::vector<int> lp = fl;
          do {
            m.pairs.clear();
            for (int a = 0; a < k; ++a) m.pairs.emplace_back(lp[a], rp[a]);
            add(m);
          } while (std::next_permutation(lp.begin(), lp.end()));
        }
      } while (std::next_permutation(rp.begin(), rp.end()));
    }
  return hb;
}

mpz_class hom_dimension_formula(const CatTag& tag, Obj src, Obj dst) {
  if (!is_walled(tag.shape)) {
    if (src.right || dst.right) return 0;
    int diff = dst.left - src.left;
    if (diff < 0 || diff % 2) return 0;
    int t = diff / 2;
    mpz_class two_t = 1;
    for (int k = 0; k < t; ++k) two_t *= 2;
    switch (tag.shape) {
      case Shape::ub: return fact(dst.left) / (two_t * fact(t));
      case Shape::dub: return fact(dst.left) / fact(t);
      default: return fact(dst.left);
    }
  }
  int k = dst.left - src.left;
  if (k < 0 || dst.right - src.right != k) return 0;
  mpz_class base = fact(dst.left) * fact(dst.right) / fact(k);
  return tag.shape == Shape::uwb ? base : base * fact(k);
}

BrauerMorphism unwall_morphism(const BrauerMorphism& f) {
  if (f.tag.shape != Shape::uwb_ord && f.tag.shape != Shape::uwb)
    throw std::invalid_argument("unwall_morphism expects a walled morphism");
  BrauerMorphism g = f;
  g.tag.shape = f.tag.shape == Shape::uwb_ord ? Shape::dub_ord : Shape::dub;
  g.src = {f.src.total(), 0};
  g.dst = {f.dst.total(), 0};
  for (auto& p : g.pairs)
    if (p.first >= f.dst.left) std::swap(p.first, p.second);
  check_morphism(g);
  return g;
}

std::optional<SplitResult> split_unwalled(const BrauerMorphism& f, int u1,
                                          const std::optional<std::vector<bool>>& forced_left) {
  if (f.tag.shape != Shape::dub_ord && f.tag.shape != Shape::dub)
    throw std::invalid_argument("split_unwalled expects a directed unwalled morphism");
  check_morphism(f);
  int n = f.dst.left;
  std::vector<int> side(n, -1);
  for (int i = 0; i < f.src.left; ++i) side[f.inj[i]] = i < u1 ? 0 : 1;
  for (auto [a, b] : f.pairs) {
    side[a] = 0;
    side[b] = 1;
  }
  SplitResult r;
  r.in_left.resize(n);
  for (int x = 0; x < n; ++x) r.in_left[x] = side[x] == 0;
  if (forced_left && *forced_left != r.in_left) return std::nullopt;
  std::vector<int> relabel(n);
  int nl = 0;
  for (int x = 0; x < n; ++x)
    if (r.in_left[x]) relabel[x] = nl++;
  int nr = nl;
  for (int x = 0; x < n; ++x)
    if (!r.in_left[x]) relabel[x] = nr++;
  BrauerMorphism w;
  w.tag = f.tag;
  w.tag.shape = f.tag.shape == Shape::dub_ord ? Shape::uwb_ord : Shape::uwb;
  w.src = {u1, f.src.left - u1};
  w.dst = {nl, n - nl};
  w.coeff = f.coeff;
  for (int i = 0; i < f.src.left; ++i) w.inj.push_back(relabel[f.inj[i]]);
  for (auto [a, b] : f.pairs) w.pairs.emplace_back(relabel[a], relabel[b]);
  try {
    check_morphism(w);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  r.walled = std::move(w);
  return r;
}

std::vector<BrauerMorphism> transfer_expand(const BrauerMorphism& f) {
  if (f.tag.shape != Shape::ub) throw std::invalid_argument("transfer_expand expects a ub morphism");
  BrauerMorphism n = normalize(f);
  std::vector<BrauerMorphism> out;
  std::size_t t = n.pairs.size();
  for (unsigned mask = 0; mask < (1u << t); ++mask) {
    BrauerMorphism m = n;
    m.tag.shape = Shape::dub;
    m.tag.twist.first = 1;
    for (std::size_t k = 0; k < t; ++k)
      if (mask >> k & 1u) {
        std::swap(m.pairs[k].first, m.pairs[k].second);
        m.coeff *= f.tag.twist.first;
      }
    out.push_back(normalize(m));
  }
  return out;
}

BrauerMorphism quotient_mp(const BrauerMorphism& f, int first_sign) {
  if (f.tag.shape != Shape::dub) throw std::invalid_argument("quotient_mp expects a d->ub morphism");
  BrauerMorphism m = f;
  m.tag.shape = Shape::ub;
  m.tag.twist.first = first_sign;
  return normalize(m);
}

BrauerMorphism weight_scale(const BrauerMorphism& f, const Scalar& lambda) {
  BrauerMorphism m = f;
  for (int k = 0; k < f.degree(); ++k) m.coeff *= lambda;
  return m;
}

BrauerMorphism upsilon_morphism(const BrauerMorphism& f, int first_sign) {
  if (f.tag.shape != Shape::uwb) throw std::invalid_argument("upsilon_morphism expects a uwb morphism");
  return quotient_mp(unwall_morphism(f), first_sign);
}

BrauerMorphism alpha_generator(const CatTag& tag, int n, int i, int j) {
  BrauerMorphism m;
  m.tag = tag;
  m.src = {n, 0};
  m.dst = {n + 2, 0};
  for (int x = 0; x < n + 2; ++x)
    if (x != i && x != j) m.inj.push_back(x);
  m.pairs = {{i, j}};
  check_morphism(m);
  return m;
}

BrauerMorphism beta_generator(const CatTag& tag, int m, int n, int i, int j) {
  BrauerMorphism b;
  b.tag = tag;
  b.src = {m, n};
  b.dst = {m + 1, n + 1};
  for (int x = 0; x < m + 1; ++x)
    if (x != i) b.inj.push_back(x);
  for (int x = 0; x < n + 1; ++x)
    if (x != j) b.inj.push_back(m + 1 + x);
  b.pairs = {{i, m + 1 + j}};
  check_morphism(b);
  return b;
}

}  // namespace twb
