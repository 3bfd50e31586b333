#include "twb/symfb.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace twb {

namespace {

std::optional<SignedPerm> as_signed(const SparseMatrix& m) {
  SignedPerm p;
  p.img.resize(m.cols());
  p.sign.resize(m.cols());
  std::vector<bool> hit(m.rows(), false);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const auto& c = m.col(j);
    if (c.size() != 1) return std::nullopt;
    const Scalar& v = c[0].second;
    if (v != 1 && v != -1) return std::nullopt;
    if (hit[c[0].first]) return std::nullopt;
    hit[c[0].first] = true;
    p.img[j] = c[0].first;
    p.sign[j] = v > 0 ? 1 : -1;
  }
  return p;
}

SparseMatrix from_signed_perm(const SignedPerm& p) {
  SparseMatrix m(p.size(), p.size());
  for (std::size_t j = 0; j < p.size(); ++j) m.set_col(j, {{p.img[j], Scalar(p.sign[j])}});
  return m;
}

std::vector<int> block_starts(const std::vector<int>& young) {
  std::vector<int> s(young.size() + 1, 0);
  for (std::size_t b = 0; b < young.size(); ++b) s[b + 1] = s[b] + young[b];
  return s;
}

}  // namespace

// ---------------------------------------------------------------- SymRep

SymRep::SymRep(std::vector<int> young, std::size_t dim) : young_(std::move(young)), dim_(dim) {
  letters_ = std::accumulate(young_.begin(), young_.end(), 0);
  for (int c : young_)
    if (c < 0) throw std::invalid_argument("negative Young block");
  gens_.assign(std::max(letters_ - 1, 0), SparseMatrix::identity(dim_));
  init_generators();
}

SymRep::SymRep(std::vector<int> young, std::size_t dim, std::vector<SparseMatrix> gens)
    : young_(std::move(young)), dim_(dim), gens_(std::move(gens)) {
  letters_ = std::accumulate(young_.begin(), young_.end(), 0);
  for (int c : young_)
    if (c < 0) throw std::invalid_argument("negative Young block");
  std::size_t need = std::max(letters_ - 1, 0);
  if (gens_.size() != need)
    throw DimensionError("expected " + std::to_string(need) + " generator matrices, got " +
                         std::to_string(gens_.size()));
  for (int i = 0; i < static_cast<int>(need); ++i) {
    if (!allowed(i)) {
      gens_[i] = SparseMatrix::identity(dim_);
      continue;
    }
    if (gens_[i].rows() != dim_ || gens_[i].cols() != dim_)
      throw DimensionError("generator " + std::to_string(i + 1) + " is not " + std::to_string(dim_) + "x" +
                           std::to_string(dim_));
  }
  init_generators();
  check_coxeter();
}

void SymRep::init_generators() {
  mono_.clear();
  std::vector<SignedPerm> m;
  for (const auto& g : gens_) {
    auto p = as_signed(g);
    if (!p) return;
    m.push_back(std::move(*p));
  }
  mono_ = std::move(m);
}

bool SymRep::allowed(int i) const {
  if (i < 0 || i + 1 >= letters_) return false;
  int off = 0;
  for (int c : young_) {
    if (i >= off && i + 1 < off + c) return true;
    off += c;
  }
  return false;
}

bool SymRep::contains(const Permutation& g) const {
  if (g.size() != letters_) return false;
  int off = 0;
  for (int c : young_) {
    for (int i = off; i < off + c; ++i)
      if (g(i) < off || g(i) >= off + c) return false;
    off += c;
  }
  return true;
}

const SparseMatrix& SymRep::generator(int i) const {
  if (!allowed(i)) throw std::invalid_argument("transposition (" + std::to_string(i + 1) + " " +
                                              std::to_string(i + 2) + ") is not in the group");
  return gens_[i];
}

const SignedPerm& SymRep::signed_generator(int i) const {
  if (!allowed(i)) throw std::invalid_argument("transposition outside the group");
  if (mono_.empty()) throw std::logic_error("representation is not monomial");
  return mono_[i];
}

void SymRep::check_coxeter() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("Coxeter relation fails: " + what); };
  int n = static_cast<int>(gens_.size());
  if (!mono_.empty()) {
    SignedPerm id = SignedPerm::identity(dim_);
    for (int i = 0; i < n; ++i) {
      if (!allowed(i)) continue;
      if (!(mono_[i] * mono_[i] == id)) fail("s" + std::to_string(i + 1) + "^2");
      for (int j = i + 1; j < n; ++j) {
        if (!allowed(j)) continue;
        SignedPerm ab = mono_[i] * mono_[j];
        if (j == i + 1) {
          if (!(ab * ab * ab == id)) fail("braid at " + std::to_string(i + 1));
        } else if (!(ab == mono_[j] * mono_[i])) {
          fail("commutation " + std::to_string(i + 1) + "," + std::to_string(j + 1));
        }
      }
    }
    return;
  }
  SparseMatrix id = SparseMatrix::identity(dim_);
  for (int i = 0; i < n; ++i) {
    if (!allowed(i)) continue;
    if (gens_[i] * gens_[i] != id) fail("s" + std::to_string(i + 1) + "^2");
    for (int j = i + 1; j < n; ++j) {
      if (!allowed(j)) continue;
      SparseMatrix ab = gens_[i] * gens_[j];
      if (j == i + 1) {
        if (ab * ab * ab != id) fail("braid at " + std::to_string(i + 1));
      } else if (ab != gens_[j] * gens_[i]) {
        fail("commutation " + std::to_string(i + 1) + "," + std::to_string(j + 1));
      }
    }
  }
}

SymRep SymRep::trivial(std::vector<int> young) {
  int n = std::accumulate(young.begin(), young.end(), 0);
  return SymRep(young, 1, std::vector<SparseMatrix>(std::max(n - 1, 0), SparseMatrix::identity(1)));
}

SymRep SymRep::sign(std::vector<int> young) {
  int n = std::accumulate(young.begin(), young.end(), 0);
  return SymRep(young, 1,
                std::vector<SparseMatrix>(std::max(n - 1, 0), SparseMatrix::identity(1).scaled(-1)));
}

SymRep SymRep::regular(int n) {
  auto elems = all_permutations(n);
  std::map<std::vector<int>, std::uint32_t> index;
  for (std::size_t k = 0; k < elems.size(); ++k) index[elems[k].img] = static_cast<std::uint32_t>(k);
  std::vector<SignedPerm> gens;
  for (int i = 0; i + 1 < n; ++i) {
    Permutation s = Permutation::adjacent(n, i);
    SignedPerm p;
    for (const auto& h : elems) {
      p.img.push_back(index.at((s * h).img));
      p.sign.push_back(1);
    }
    gens.push_back(std::move(p));
  }
  return from_signed({n}, elems.size(), gens);
}

SymRep SymRep::from_signed(std::vector<int> young, std::size_t dim, const std::vector<SignedPerm>& gens) {
  std::vector<SparseMatrix> m;
  m.reserve(gens.size());
  for (const auto& g : gens) m.push_back(from_signed_perm(g));
  return SymRep(std::move(young), dim, std::move(m));
}

SparseMatrix SymRep::eval_perm(const Permutation& g) const {
  if (!contains(g)) throw std::invalid_argument("permutation " + g.str() + " is not in the group");
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->dense.find(g.img);
    if (it != cache_->dense.end()) return it->second;
  }
  SparseMatrix out;
  if (!mono_.empty()) {
    out = from_signed_perm(eval_signed(g));
  } else {
    out = SparseMatrix::identity(dim_);
    for (int i : reduced_word(g)) out = out * gens_[i];
  }
  std::lock_guard<std::mutex> lock(cache_->mu);
  cache_->dense.emplace(g.img, out);
  return out;
}

SignedPerm SymRep::eval_signed(const Permutation& g) const {
  if (!contains(g)) throw std::invalid_argument("permutation " + g.str() + " is not in the group");
  if (mono_.empty() && dim_ > 0 && letters_ >= 2) throw std::logic_error("representation is not monomial");
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->mono.find(g.img);
    if (it != cache_->mono.end()) return it->second;
  }
  SignedPerm out = SignedPerm::identity(dim_);
  for (int i : reduced_word(g)) out = out * mono_[i];
  std::lock_guard<std::mutex> lock(cache_->mu);
  cache_->mono.emplace(g.img, out);
  return out;
}

Scalar SymRep::character(const Permutation& g) const {
  if (is_monomial()) {
    SignedPerm p = eval_signed(g);
    long t = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p.img[i] == i) t += p.sign[i];
    return t;
  }
  SparseMatrix m = eval_perm(g);
  Scalar t = 0;
  for (std::size_t i = 0; i < dim_; ++i) t += m.at(i, i);
  return t;
}

bool SymRep::operator==(const SymRep& rhs) const {
  if (young_ != rhs.young_ || dim_ != rhs.dim_) return false;
  for (int i = 0; i + 1 < letters_; ++i)
    if (allowed(i) && gens_[i] != rhs.gens_[i]) return false;
  return true;
}

// ---------------------------------------------------------------- constructions

SymRep external_tensor(const SymRep& a, const SymRep& b) {
  std::vector<int> young = a.young();
  young.insert(young.end(), b.young().begin(), b.young().end());
  int n = a.letters() + b.letters();
  std::vector<SparseMatrix> gens;
  SparseMatrix ia = SparseMatrix::identity(a.dim()), ib = SparseMatrix::identity(b.dim());
  for (int i = 0; i + 1 < n; ++i) {
    if (i + 1 < a.letters())
      gens.push_back(a.allowed(i) ? kronecker(a.generator(i), ib) : SparseMatrix::identity(a.dim() * b.dim()));
    else if (i >= a.letters())
      gens.push_back(b.allowed(i - a.letters()) ? kronecker(ia, b.generator(i - a.letters()))
                                                 : SparseMatrix::identity(a.dim() * b.dim()));
    else
      gens.push_back(SparseMatrix::identity(a.dim() * b.dim()));
  }
  return SymRep(young, a.dim() * b.dim(), std::move(gens));
}

SymRep reorder_blocks(const SymRep& r, const std::vector<int>& order) {
  const auto& old = r.young();
  if (order.size() != old.size()) throw std::invalid_argument("block order length mismatch");
  std::vector<int> young;
  for (int k : order) young.push_back(old.at(k));
  auto old_start = block_starts(old), new_start = block_starts(young);
  std::vector<SparseMatrix> gens(std::max(r.letters() - 1, 0), SparseMatrix::identity(r.dim()));
  for (std::size_t k = 0; k < order.size(); ++k)
    for (int t = 0; t + 1 < young[k]; ++t) gens[new_start[k] + t] = r.generator(old_start[order[k]] + t);
  return SymRep(young, r.dim(), std::move(gens));
}

SymRep restrict_young(const SymRep& r, const std::vector<int>& finer) {
  if (std::accumulate(finer.begin(), finer.end(), 0) != r.letters())
    throw std::invalid_argument("restriction changes the number of letters");
  SymRep probe(finer, 0);
  std::vector<SparseMatrix> gens(std::max(r.letters() - 1, 0), SparseMatrix::identity(r.dim()));
  for (int i = 0; i + 1 < r.letters(); ++i) {
    if (!probe.allowed(i)) continue;
    if (!r.allowed(i)) throw std::invalid_argument("restriction target is not a subgroup");
    gens[i] = r.generator(i);
  }
  return SymRep(finer, r.dim(), std::move(gens));
}

SymRep direct_sum(const std::vector<SymRep>& parts, const std::vector<int>& young) {
  int n = std::accumulate(young.begin(), young.end(), 0);
  std::size_t dim = 0;
  for (const auto& p : parts) {
    if (p.young() != young) throw std::invalid_argument("direct sum of representations of different groups");
    dim += p.dim();
  }
  if (parts.empty()) return SymRep(young, 0);
  std::vector<SparseMatrix> gens;
  SymRep probe(young, 0);
  for (int i = 0; i + 1 < n; ++i) {
    SparseMatrix g(dim, dim);
    std::size_t off = 0;
    for (const auto& p : parts) {
      for (std::size_t j = 0; j < p.dim(); ++j) {
        SparseVec c;
        if (probe.allowed(i)) {
          for (const auto& [r, v] : p.generator(i).col(j)) c.emplace_back(static_cast<std::uint32_t>(r + off), v);
        } else {
          c.emplace_back(static_cast<std::uint32_t>(off + j), Scalar(1));
        }
        g.set_col(off + j, std::move(c));
      }
      off += p.dim();
    }
    gens.push_back(std::move(g));
  }
  return SymRep(young, dim, std::move(gens));
}

namespace {

// target block t is the union of source blocks groups[t]
std::vector<std::vector<int>> group_blocks(const std::vector<int>& source, const std::vector<int>& target) {
  std::vector<std::vector<int>> groups(target.size());
  std::size_t b = 0;
  for (std::size_t t = 0; t < target.size(); ++t) {
    int acc = 0;
    while (acc < target[t]) {
      if (b == source.size() || acc + source[b] > target[t])
        throw std::invalid_argument("source composition does not refine the target");
      acc += source[b];
      groups[t].push_back(static_cast<int>(b++));
    }
  }
  for (; b < source.size(); ++b) {
    if (source[b] != 0 || groups.empty()) throw std::invalid_argument("source composition does not refine the target");
    groups.back().push_back(static_cast<int>(b));
  }
  return groups;
}

void sequences(const std::vector<int>& blocks, std::vector<int>& remaining, int len, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (remaining[k] == 0) continue;
    --remaining[k];
    cur.push_back(blocks[k]);
    sequences(blocks, remaining, len, cur, out);
    cur.pop_back();
    ++remaining[k];
  }
}

}  // namespace

std::vector<std::vector<int>> young_assignments(const std::vector<int>& source_young,
                                                const std::vector<int>& target_young) {
  auto groups = group_blocks(source_young, target_young);
  std::vector<std::vector<int>> out{{}};
  for (std::size_t t = 0; t < target_young.size(); ++t) {
    std::vector<int> rem;
    for (int b : groups[t]) rem.push_back(source_young[b]);
    std::vector<std::vector<int>> local;
    std::vector<int> cur;
    sequences(groups[t], rem, target_young[t], cur, local);
    std::vector<std::vector<int>> next;
    for (const auto& prefix : out)
      for (const auto& l : local) {
        auto v = prefix;
        v.insert(v.end(), l.begin(), l.end());
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

InducedRep induce_young(const SymRep& source, const std::vector<int>& target_young) {
  InducedRep out;
  out.assignments = young_assignments(source.young(), target_young);
  out.source_dim = source.dim();
  const auto& sy = source.young();
  auto starts = block_starts(sy);
  int n = source.letters();
  std::size_t na = out.assignments.size(), sd = source.dim();
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t a = 0; a < na; ++a) index[out.assignments[a]] = a;

  SymRep probe(target_young, 0);
  std::vector<SparseMatrix> gens(std::max(n - 1, 0), SparseMatrix::identity(na * sd));
  for (int l = 0; l + 1 < n; ++l) {
    if (!probe.allowed(l)) continue;
    SparseMatrix g(na * sd, na * sd);
    for (std::size_t a = 0; a < na; ++a) {
      const auto& A = out.assignments[a];
      if (A[l] == A[l + 1]) {
        int b = A[l];
        int rank = 0;
        for (int x = 0; x < l; ++x) rank += (A[x] == b);
        const SparseMatrix& sg = source.generator(starts[b] + rank);
        for (std::size_t i = 0; i < sd; ++i) {
          SparseVec c;
          for (const auto& [r, v] : sg.col(i)) c.emplace_back(static_cast<std::uint32_t>(a * sd + r), v);
          g.set_col(a * sd + i, std::move(c));
        }
      } else {
        auto B = A;
        std::swap(B[l], B[l + 1]);
        std::size_t a2 = index.at(B);
        for (std::size_t i = 0; i < sd; ++i) g.set_col(a * sd + i, {{static_cast<std::uint32_t>(a2 * sd + i), Scalar(1)}});
      }
    }
    gens[l] = std::move(g);
  }
  out.rep = SymRep(target_young, na * sd, std::move(gens));
  return out;
}

// ---------------------------------------------------------------- classes

namespace {
void partitions(int n, int maxpart, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, maxpart); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

mpz_class factorial(int n) {
  mpz_class f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}
}  // namespace

mpz_class young_order(const std::vector<int>& young) {
  mpz_class o = 1;
  for (int c : young) o *= factorial(c);
  return o;
}

std::vector<ConjClass> conjugacy_classes(const std::vector<int>& young) {
  int n = std::accumulate(young.begin(), young.end(), 0);
  std::vector<ConjClass> out{{Permutation::identity(n), 1}};
  int off = 0;
  for (int c : young) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(c, c, cur, parts);
    std::vector<ConjClass> next;
    for (const auto& cls : out)
      for (const auto& lam : parts) {
        Permutation p = cls.rep;
        int pos = off;
        mpz_class z = 1;
        std::map<int, int> mult;
        for (int len : lam) {
          for (int k = 0; k < len; ++k) p.img[pos + k] = pos + (k + 1) % len;
          pos += len;
          z *= len;
          ++mult[len];
        }
        for (const auto& [len, m] : mult) z *= factorial(m);
        next.push_back({p, cls.size * (factorial(c) / z)});
      }
    out = std::move(next);
    off += c;
  }
  return out;
}

// ---------------------------------------------------------------- modules

FBModule FBModule::unit() { return k_at(0); }

FBModule FBModule::k_at(int n) {
  FBModule m;
  m.set_level(n, SymRep::trivial({n}));
  return m;
}

void FBModule::set_level(int n, SymRep rep) {
  if (n < 0) throw std::invalid_argument("negative level");
  if (rep.young() != std::vector<int>{n}) throw std::invalid_argument("level " + std::to_string(n) + " needs an S_n representation");
  if (rep.dim() == 0) {
    levels_.erase(n);
    return;
  }
  levels_.insert_or_assign(n, std::move(rep));
}

namespace {
const SymRep& zero_rep(const std::vector<int>& young) {
  static std::mutex mu;
  static std::map<std::vector<int>, std::unique_ptr<SymRep>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[young];
  if (!slot) slot = std::make_unique<SymRep>(young, 0);
  return *slot;
}
}  // namespace

const SymRep& FBModule::level(int n) const {
  auto it = levels_.find(n);
  return it == levels_.end() ? zero_rep({n}) : it->second;
}

std::size_t FBModule::dim(int n) const {
  auto it = levels_.find(n);
  return it == levels_.end() ? 0 : it->second.dim();
}

std::vector<int> FBModule::support() const {
  std::vector<int> s;
  for (const auto& [n, r] : levels_) s.push_back(n);
  return s;
}

int FBModule::max_level() const { return levels_.empty() ? -1 : levels_.rbegin()->first; }

bool FBModule::is_zero() const { return levels_.empty(); }

FB2Module FB2Module::unit() { return k_at(0, 0); }

FB2Module FB2Module::k_at(int m, int n) {
  FB2Module g;
  g.set_level(m, n, SymRep::trivial({m, n}));
  return g;
}

void FB2Module::set_level(int m, int n, SymRep rep) {
  if (m < 0 || n < 0) throw std::invalid_argument("negative bi-level");
  if (rep.young() != std::vector<int>{m, n})
    throw std::invalid_argument("bi-level (" + std::to_string(m) + "," + std::to_string(n) +
                                ") needs an S_m x S_n representation");
  if (rep.dim() == 0) {
    levels_.erase({m, n});
    return;
  }
  levels_.insert_or_assign({m, n}, std::move(rep));
}

const SymRep& FB2Module::level(int m, int n) const {
  auto it = levels_.find({m, n});
  return it == levels_.end() ? zero_rep({m, n}) : it->second;
}

std::size_t FB2Module::dim(int m, int n) const {
  auto it = levels_.find({m, n});
  return it == levels_.end() ? 0 : it->second.dim();
}

std::vector<FB2Module::Bilevel> FB2Module::support() const {
  std::vector<Bilevel> s;
  for (const auto& [k, r] : levels_) s.push_back(k);
  return s;
}

bool FB2Module::is_zero() const { return levels_.empty(); }

FBModule day_convolve(const FBModule& a, const FBModule& b) {
  FBModule out;
  if (a.is_zero() || b.is_zero()) return out;
  int top = a.max_level() + b.max_level();
  for (int n = 0; n <= top; ++n) {
    std::vector<SymRep> parts;
    for (int p = 0; p <= n; ++p) {
      if (!a.has_level(p) || !b.has_level(n - p)) continue;
      parts.push_back(induce_young(external_tensor(a.level(p), b.level(n - p)), {n}).rep);
    }
    if (!parts.empty()) out.set_level(n, direct_sum(parts, {n}));
  }
  return out;
}

FB2Module day_convolve(const FB2Module& a, const FB2Module& b) {
  FB2Module out;
  // enumerate target bi-levels in order and sources in lexicographic order of the first factor
  std::set<FB2Module::Bilevel> targets;
  for (const auto& [ka, ra] : a.levels())
    for (const auto& [kb, rb] : b.levels()) targets.insert({ka.first + kb.first, ka.second + kb.second});
  for (const auto& [m, n] : targets) {
    std::vector<SymRep> ps;
    for (const auto& [ka, ra] : a.levels()) {
      int p2 = m - ka.first, q2 = n - ka.second;
      if (p2 < 0 || q2 < 0 || !b.has_level(p2, q2)) continue;
      SymRep t = reorder_blocks(external_tensor(ra, b.level(p2, q2)), {0, 2, 1, 3});
      ps.push_back(induce_young(t, {m, n}).rep);
    }
    out.set_level(m, n, direct_sum(ps, {m, n}));
  }
  return out;
}

namespace {

// Basis bookkeeping for the d-fold convolution at one target level.
struct PowerSummand {
  std::vector<std::vector<int>> sizes;  // per factor: its composition (1 or 2 entries)
  InducedRep induced;
  std::vector<std::size_t> factor_dims;
  std::size_t offset = 0;
};

SymRep power_level(const std::function<SymRep(const std::vector<int>&)>& factor,
                   const std::vector<std::vector<int>>& support, int d, const std::vector<int>& target,
                   Parity parity) {
  std::size_t r = target.size();
  // enumerate ordered d-tuples of support elements summing to target
  std::vector<PowerSummand> summands;
  std::vector<std::vector<int>> cur;
  std::function<void(std::vector<int>)> rec = [&](std::vector<int> rem) {
    if (static_cast<int>(cur.size()) == d) {
      if (std::all_of(rem.begin(), rem.end(), [](int x) { return x == 0; })) summands.push_back({cur, {}, {}, 0});
      return;
    }
    for (const auto& s : support) {
      bool ok = true;
      for (std::size_t k = 0; k < r; ++k) ok = ok && s[k] <= rem[k];
      if (!ok) continue;
      auto next = rem;
      for (std::size_t k = 0; k < r; ++k) next[k] -= s[k];
      cur.push_back(s);
      rec(next);
      cur.pop_back();
    }
  };
  rec(target);
  if (summands.empty()) return SymRep(target, 0);

  std::size_t total = 0;
  std::vector<SymRep> parts;
  for (auto& s : summands) {
    SymRep t = factor(s.sizes[0]);
    s.factor_dims.push_back(t.dim());
    for (int k = 1; k < d; ++k) {
      SymRep f = factor(s.sizes[k]);
      s.factor_dims.push_back(f.dim());
      t = external_tensor(t, f);
    }
    // group blocks by side: new block (side, k) is old block k*r + side
    std::vector<int> order;
    for (std::size_t side = 0; side < r; ++side)
      for (int k = 0; k < d; ++k) order.push_back(static_cast<int>(k * r + side));
    if (d > 0) t = reorder_blocks(t, order);
    s.induced = induce_young(t, target);
    s.offset = total;
    total += s.induced.rep.dim();
    parts.push_back(s.induced.rep);
  }
  SymRep space = direct_sum(parts, target);
  if (d <= 1) return space;

  std::map<std::vector<std::vector<int>>, std::size_t> by_sizes;
  for (std::size_t k = 0; k < summands.size(); ++k) by_sizes[summands[k].sizes] = k;

  // adjacent factor swaps, each a signed permutation of the basis
  std::vector<SignedPerm> swaps;
  for (int j = 0; j + 1 < d; ++j) {
    SignedPerm m = SignedPerm::identity(total);
    for (const auto& s : summands) {
      auto sz = s.sizes;
      std::swap(sz[j], sz[j + 1]);
      const auto& t = summands[by_sizes.at(sz)];
      std::map<std::vector<int>, std::size_t> aidx;
      for (std::size_t a = 0; a < t.induced.assignments.size(); ++a) aidx[t.induced.assignments[a]] = a;
      for (std::size_t a = 0; a < s.induced.assignments.size(); ++a) {
        auto A = s.induced.assignments[a];
        for (int& x : A) {
          int side = x / d, k = x % d;
          if (k == j) x = side * d + j + 1;
          else if (k == j + 1) x = side * d + j;
        }
        std::size_t a2 = aidx.at(A);
        for (std::size_t i = 0; i < s.induced.source_dim; ++i) {
          // mixed radix digits, first factor most significant
          std::vector<std::size_t> dig(d);
          std::size_t rem = i;
          for (int k = d - 1; k >= 0; --k) {
            dig[k] = rem % s.factor_dims[k];
            rem /= s.factor_dims[k];
          }
          std::swap(dig[j], dig[j + 1]);
          std::size_t i2 = 0;
          for (int k = 0; k < d; ++k) i2 = i2 * t.factor_dims[k] + dig[k];
          std::size_t col = s.offset + a * s.induced.source_dim + i;
          m.img[col] = static_cast<std::uint32_t>(t.offset + a2 * t.induced.source_dim + i2);
          m.sign[col] = parity == Parity::exterior ? -1 : 1;
        }
      }
    }
    swaps.push_back(std::move(m));
  }
  // all of S_d by closure under the swaps; the average is accumulated entrywise
  std::map<std::vector<int>, SignedPerm> elems;
  elems.emplace(Permutation::identity(d).img, SignedPerm::identity(total));
  std::vector<std::vector<int>> frontier{Permutation::identity(d).img};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& p : frontier)
      for (int j = 0; j + 1 < d; ++j) {
        Permutation q = Permutation::adjacent(d, j) * Permutation(p);
        if (elems.count(q.img)) continue;
        elems.emplace(q.img, swaps[j] * elems.at(p));
        next.push_back(q.img);
      }
    frontier = std::move(next);
  }
  ExactMatrix projector(total, total);
  Scalar inv(1, static_cast<unsigned long>(elems.size()));
  for (const auto& [k, g] : elems)
    for (std::size_t c = 0; c < total; ++c) {
      if (g.sign[c] > 0)
        projector(g.img[c], c) += inv;
      else
        projector(g.img[c], c) -= inv;
    }
  return image_rep(space, projector);
}

}  // namespace

FBModule power(const FBModule& a, int d, Parity parity, int max_level) {
  if (d < 0) throw std::invalid_argument("negative power");
  FBModule out;
  if (d == 0) return FBModule::unit();
  if (a.is_zero()) return out;
  std::vector<std::vector<int>> support;
  for (int n : a.support()) support.push_back({n});
  int top = d * a.max_level();
  if (max_level >= 0) top = std::min(top, max_level);
  auto factor = [&](const std::vector<int>& s) { return a.level(s[0]); };
  for (int n = 0; n <= top; ++n) out.set_level(n, power_level(factor, support, d, {n}, parity));
  return out;
}

FB2Module power(const FB2Module& a, int d, Parity parity, int max_total) {
  if (d < 0) throw std::invalid_argument("negative power");
  FB2Module out;
  if (d == 0) return FB2Module::unit();
  if (a.is_zero()) return out;
  std::vector<std::vector<int>> support;
  int mm = 0, mn = 0;
  for (auto [m, n] : a.support()) {
    support.push_back({m, n});
    mm = std::max(mm, m);
    mn = std::max(mn, n);
  }
  auto factor = [&](const std::vector<int>& s) { return a.level(s[0], s[1]); };
  for (int m = 0; m <= d * mm; ++m)
    for (int n = 0; n <= d * mn; ++n) {
      if (max_total >= 0 && m + n > max_total) continue;
      out.set_level(m, n, power_level(factor, support, d, {m, n}, parity));
    }
  return out;
}

FB2Module amalg_pull(const FBModule& m) {
  FB2Module out;
  for (const auto& [n, r] : m.levels())
    for (int p = 0; p <= n; ++p) out.set_level(p, n - p, restrict_young(r, {p, n - p}));
  return out;
}

FBModule amalg_push(const FB2Module& g) {
  std::map<int, std::vector<SymRep>> parts;
  for (const auto& [k, r] : g.levels()) {
    int n = k.first + k.second;
    parts[n].push_back(induce_young(r, {n}).rep);
  }
  FBModule out;
  for (auto& [n, ps] : parts) out.set_level(n, direct_sum(ps, {n}));
  return out;
}

ExactMatrix tensor_over_sym(const SymRep& a, const SymRep& b) {
  if (a.young() != b.young()) throw std::invalid_argument("tensor_over_sym: group mismatch");
  std::vector<ExactMatrix> mats;
  for (const auto& g : young_subgroup_elements(a.young()))
    mats.push_back(kronecker(a.eval_perm(g), b.eval_perm(g)).to_dense());
  if (a.dim() * b.dim() == 0) return ExactMatrix(0, 0);
  return image_basis(averaging_projector(mats)).basis;
}

std::size_t tensor_over_sym_dim(const SymRep& a, const SymRep& b) {
  if (a.young() != b.young()) throw std::invalid_argument("tensor_over_sym: group mismatch");
  if (a.dim() * b.dim() == 0) return 0;
  Scalar acc = 0;
  for (const auto& c : conjugacy_classes(a.young())) acc += Scalar(c.size) * a.character(c.rep) * b.character(c.rep);
  acc /= Scalar(young_order(a.young()));
  if (acc.get_den() != 1 || acc < 0) throw std::logic_error("character inner product is not a dimension");
  return acc.get_num().get_ui();
}

SymRep image_rep(const SymRep& space, const ExactMatrix& projector) {
  ImageBasis ib = image_basis(projector);
  std::size_t k = ib.pivots.size();
  int n = space.letters();
  SparseMatrix basis = SparseMatrix::from_dense(ib.basis);
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t c = 0; c < k; ++c) pos[ib.pivots[c]] = c;
  std::vector<SparseMatrix> gens(std::max(n - 1, 0), SparseMatrix::identity(k));
  for (int i = 0; i + 1 < n; ++i) {
    if (!space.allowed(i)) continue;
    SparseMatrix gb = space.generator(i) * basis;
    SparseMatrix g(k, k);
    for (std::size_t c = 0; c < k; ++c) {
      SparseVec col;
      for (const auto& [r, v] : gb.col(c)) {
        auto it = pos.find(r);
        if (it != pos.end()) col.emplace_back(static_cast<std::uint32_t>(it->second), v);
      }
      g.set_col(c, sparse_from_unsorted(std::move(col)));
    }
    gens[i] = std::move(g);
  }
  return SymRep(space.young(), k, std::move(gens));
}

mpz_class schur_eval(const FBModule& m, int v_dim) {
  if (v_dim < 0) throw std::invalid_argument("negative dimension");
  Scalar total = 0;
  for (const auto& [n, r] : m.levels()) {
    Scalar acc = 0;
    for (const auto& c : conjugacy_classes({n})) {
      mpz_class pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), v_dim, c.rep.cycle_count());
      acc += Scalar(c.size * pw) * r.character(c.rep);
    }
    total += acc / Scalar(young_order({n}));
  }
  if (total.get_den() != 1) throw std::logic_error("Schur evaluation is not integral");
  return total.get_num();
}

mpz_class schur_eval(const FB2Module& m, int v_dim, int w_dim) {
  if (v_dim < 0 || w_dim < 0) throw std::invalid_argument("negative dimension");
  Scalar total = 0;
  for (const auto& [k, r] : m.levels()) {
    auto [p, q] = k;
    Scalar acc = 0;
    for (const auto& c : conjugacy_classes({p, q})) {
      int cl = 0, cr = 0;
      std::vector<bool> seen(p + q, false);
      for (int i = 0; i < p + q; ++i) {
        if (seen[i]) continue;
        (i < p ? cl : cr)++;
        for (int j = i; !seen[j]; j = c.rep(j)) seen[j] = true;
      }
      mpz_class a, b;
      mpz_ui_pow_ui(a.get_mpz_t(), v_dim, cl);
      mpz_ui_pow_ui(b.get_mpz_t(), w_dim, cr);
      acc += Scalar(c.size * a * b) * r.character(c.rep);
    }
    total += acc / Scalar(young_order({p, q}));
  }
  if (total.get_den() != 1) throw std::logic_error("Schur evaluation is not integral");
  return total.get_num();
}

}  // namespace twb
