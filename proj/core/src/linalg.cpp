#include "twb/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace twb {

Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& x) {
    while (!x.empty() && (x.back() == ' ' || x.back() == '\t')) x.pop_back();
    std::size_t k = 0;
    while (k < x.size() && (x[k] == ' ' || x[k] == '\t')) ++k;
    x.erase(0, k);
  };
  trim(s);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  Scalar q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string format_scalar(const Scalar& s) { return s.get_str(10); }

// ---------------------------------------------------------------- dense

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  ExactMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw DimensionError("ragged row list");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionError("matrix product shape mismatch");
  ExactMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        if (sgn(rhs(k, j)) != 0) out(i, j) += a * rhs(k, j);
    }
  return out;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("matrix sum shape mismatch");
  ExactMatrix out = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] += rhs.data_[k];
  return out;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& rhs) const { return *this + rhs.scaled(-1); }

ExactMatrix ExactMatrix::scaled(const Scalar& s) const {
  ExactMatrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

std::vector<Scalar> ExactMatrix::apply(const std::vector<Scalar>& v) const {
  if (v.size() != cols_) throw DimensionError("vector length mismatch");
  std::vector<Scalar> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn(v[j]) != 0) out[i] += (*this)(i, j) * v[j];
  return out;
}

bool ExactMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

bool ExactMatrix::operator==(const ExactMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

// ---------------------------------------------------------------- sparse

void sparse_axpy(SparseVec& y, const Scalar& a, const SparseVec& x) {
  if (sgn(a) == 0 || x.empty()) return;
  SparseVec out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(std::move(y[i++]));
    } else if (i == y.size() || x[j].first < y[i].first) {
      out.emplace_back(x[j].first, a * x[j].second);
      ++j;
    } else {
      Scalar v = y[i].second + a * x[j].second;
      if (sgn(v) != 0) out.emplace_back(y[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

SparseVec sparse_scaled(const SparseVec& x, const Scalar& a) {
  SparseVec out;
  if (sgn(a) == 0) return out;
  out.reserve(x.size());
  for (const auto& [i, v] : x) out.emplace_back(i, v * a);
  return out;
}

SparseVec sparse_from_unsorted(std::vector<std::pair<std::uint32_t, Scalar>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  for (auto& e : entries) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
      if (sgn(out.back().second) == 0) out.pop_back();
    } else if (sgn(e.second) != 0) {
      out.push_back(std::move(e));
    }
  }
  return out;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.cols_[i].emplace_back(static_cast<std::uint32_t>(i), Scalar(1));
  return m;
}

SparseMatrix SparseMatrix::from_dense(const ExactMatrix& d) {
  SparseMatrix m(d.rows(), d.cols());
  for (std::size_t j = 0; j < d.cols(); ++j)
    for (std::size_t i = 0; i < d.rows(); ++i)
      if (sgn(d(i, j)) != 0) m.cols_[j].emplace_back(static_cast<std::uint32_t>(i), d(i, j));
  return m;
}

void SparseMatrix::set_col(std::size_t j, SparseVec v) {
  for (const auto& e : v)
    if (e.first >= rows_) throw DimensionError("sparse column entry out of range");
  cols_.at(j) = std::move(v);
}

void SparseMatrix::add_to(std::size_t i, std::size_t j, const Scalar& s) {
  if (i >= rows_) throw DimensionError("row index out of range");
  SparseVec e{{static_cast<std::uint32_t>(i), s}};
  sparse_axpy(cols_.at(j), 1, e);
}

Scalar SparseMatrix::at(std::size_t i, std::size_t j) const {
  for (const auto& [r, v] : cols_.at(j))
    if (r == i) return v;
  return 0;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
  std::vector<std::pair<std::uint32_t, Scalar>> acc;
  for (const auto& [j, a] : v) {
    if (j >= cols_.size()) throw DimensionError("sparse apply index out of range");
    for (const auto& [i, b] : cols_[j]) acc.emplace_back(i, a * b);
  }
  return sparse_from_unsorted(std::move(acc));
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const {
  if (cols() != rhs.rows()) throw DimensionError("sparse product shape mismatch");
  SparseMatrix out(rows_, rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j) out.cols_[j] = apply(rhs.cols_[j]);
  return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols() != rhs.cols()) throw DimensionError("sparse sum shape mismatch");
  SparseMatrix out = *this;
  for (std::size_t j = 0; j < cols(); ++j) sparse_axpy(out.cols_[j], 1, rhs.cols_[j]);
  return out;
}

SparseMatrix SparseMatrix::scaled(const Scalar& s) const {
  SparseMatrix out(rows_, cols());
  for (std::size_t j = 0; j < cols(); ++j) out.cols_[j] = sparse_scaled(cols_[j], s);
  return out;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix out(cols(), rows_);
  for (std::size_t j = 0; j < cols(); ++j)
    for (const auto& [i, v] : cols_[j]) out.cols_[i].emplace_back(static_cast<std::uint32_t>(j), v);
  return out;
}

ExactMatrix SparseMatrix::to_dense() const {
  ExactMatrix d(rows_, cols());
  for (std::size_t j = 0; j < cols(); ++j)
    for (const auto& [i, v] : cols_[j]) d(i, j) = v;
  return d;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(cols_.begin(), cols_.end(), [](const SparseVec& c) { return c.empty(); });
}

bool SparseMatrix::operator==(const SparseMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_;
}

SparseMatrix kronecker(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ja = 0; ja < a.cols(); ++ja)
    for (std::size_t jb = 0; jb < b.cols(); ++jb) {
      SparseVec c;
      for (const auto& [ia, va] : a.col(ja))
        for (const auto& [ib, vb] : b.col(jb))
          c.emplace_back(static_cast<std::uint32_t>(ia * b.rows() + ib), va * vb);
      out.set_col(ja * b.cols() + jb, std::move(c));
    }
  return out;
}

// ---------------------------------------------------------------- elimination

namespace {

using IntRow = std::vector<std::pair<std::uint32_t, mpz_class>>;

void remove_content(IntRow& r) {
  if (r.empty()) return;
  mpz_class g = abs(r[0].second);
  for (std::size_t k = 1; k < r.size() && g != 1; ++k) g = gcd(g, r[k].second);
  if (g != 1)
    for (auto& e : r) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
  if (r[0].second < 0)
    for (auto& e : r) e.second = -e.second;
}

IntRow integral_row(const SparseVec& v) {
  mpz_class l = 1;
  for (const auto& e : v) l = lcm(l, e.second.get_den());
  IntRow r;
  r.reserve(v.size());
  for (const auto& [i, q] : v) {
    mpz_class x = q.get_num() * (l / q.get_den());
    r.emplace_back(i, std::move(x));
  }
  remove_content(r);
  return r;
}

// r := a*r - b*p, where a = lead(p), b = lead(r), both already divided by their gcd.
void eliminate(IntRow& r, const IntRow& p) {
  mpz_class a = p[0].second, b = r[0].second;
  mpz_class g = gcd(a, b);
  a /= g;
  b /= g;
  IntRow out;
  out.reserve(r.size() + p.size());
  std::size_t i = 1, j = 1;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.emplace_back(r[i].first, a * r[i].second);
      ++i;
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.emplace_back(p[j].first, -b * p[j].second);
      ++j;
    } else {
      mpz_class v = a * r[i].second - b * p[j].second;
      if (v != 0) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  r = std::move(out);
  remove_content(r);
}

std::size_t rank_of_rows(std::vector<SparseVec> rows) {
  std::vector<IntRow> work;
  work.reserve(rows.size());
  for (auto& r : rows)
    if (!r.empty()) work.push_back(integral_row(r));
  std::sort(work.begin(), work.end(), [](const IntRow& a, const IntRow& b) {
    return a.size() != b.size() ? a.size() < b.size() : a[0].first < b[0].first;
  });
  std::map<std::uint32_t, IntRow> pivots;
  for (auto& r : work) {
    while (!r.empty()) {
      auto it = pivots.find(r[0].first);
      if (it == pivots.end()) {
        std::uint32_t c = r[0].first;
        pivots.emplace(c, std::move(r));
        break;
      }
      // keep the sparser row as pivot
      if (r.size() < it->second.size()) std::swap(r, it->second);
      eliminate(r, it->second);
    }
  }
  return pivots.size();
}

}  // namespace

std::size_t rank(const SparseMatrix& m) {
  // eliminate along whichever side has fewer vectors
  if (m.cols() <= m.rows()) {
    std::vector<SparseVec> rows(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) rows[j] = m.col(j);
    return rank_of_rows(std::move(rows));
  }
  SparseMatrix t = m.transpose();
  std::vector<SparseVec> rows(t.cols());
  for (std::size_t j = 0; j < t.cols(); ++j) rows[j] = t.col(j);
  return rank_of_rows(std::move(rows));
}

std::size_t rank(const ExactMatrix& m) { return rank(SparseMatrix::from_dense(m)); }

std::vector<std::size_t> rref_in_place(ExactMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Scalar inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<Scalar>> kernel_basis(const ExactMatrix& m) {
  ExactMatrix a = m;
  auto pivots = rref_in_place(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(m.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a(k, f);
    out.push_back(std::move(v));
  }
  return out;
}

ImageBasis image_basis(const ExactMatrix& m) {
  ExactMatrix t = m.transpose();
  auto pivots = rref_in_place(t);
  ImageBasis out{ExactMatrix(m.rows(), pivots.size()), pivots};
  for (std::size_t k = 0; k < pivots.size(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) out.basis(i, k) = t(k, i);
  return out;
}

ExactMatrix averaging_projector(const std::vector<ExactMatrix>& mats) {
  if (mats.empty()) throw DimensionError("averaging over an empty group");
  std::size_t n = mats[0].rows();
  ExactMatrix acc(n, n);
  for (const auto& g : mats) {
    if (g.rows() != n || g.cols() != n) throw DimensionError("group matrices must be square of equal size");
    acc = acc + g;
  }
  return acc.scaled(Scalar(1, mats.size()));
}

namespace {
void check_composable(std::size_t in_rows, std::size_t out_cols) {
  if (in_rows != out_cols)
    throw ContractViolation("homology_dim: d_in codomain (" + std::to_string(in_rows) +
                            ") differs from d_out domain (" + std::to_string(out_cols) + ")");
}
}  // namespace

std::size_t homology_dim(const ExactMatrix& d_in, const ExactMatrix& d_out) {
  return homology_dim(SparseMatrix::from_dense(d_in), SparseMatrix::from_dense(d_out));
}

std::size_t homology_dim(const SparseMatrix& d_in, const SparseMatrix& d_out) {
  check_composable(d_in.rows(), d_out.cols());
  if (!(d_out * d_in).is_zero()) throw ContractViolation("homology_dim: composite of differentials is nonzero");
  std::size_t r_out = rank(d_out), r_in = rank(d_in);
  return d_out.cols() - r_out - r_in;
}

}  // namespace twb
