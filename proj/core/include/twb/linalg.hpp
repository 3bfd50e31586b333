#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace twb {

// mpq_class keeps values canonical (lowest terms, positive denominator) as long
// as every assignment from raw mpq_t goes through canonicalize(); all helpers here do.
using Scalar = mpq_class;

Scalar parse_scalar(std::string_view text);
std::string format_scalar(const Scalar& s);

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_rows(const std::vector<std::vector<Scalar>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ExactMatrix operator*(const ExactMatrix& rhs) const;
  ExactMatrix operator+(const ExactMatrix& rhs) const;
  ExactMatrix operator-(const ExactMatrix& rhs) const;
  ExactMatrix scaled(const Scalar& s) const;
  ExactMatrix transpose() const;
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

  bool is_zero() const;
  bool operator==(const ExactMatrix& rhs) const;
  bool operator!=(const ExactMatrix& rhs) const { return !(*this == rhs); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

// Sparse vectors are sorted by index with no explicit zeros.
using SparseVec = std::vector<std::pair<std::uint32_t, Scalar>>;

void sparse_axpy(SparseVec& y, const Scalar& a, const SparseVec& x);
SparseVec sparse_scaled(const SparseVec& x, const Scalar& a);
SparseVec sparse_from_unsorted(std::vector<std::pair<std::uint32_t, Scalar>> entries);

// Column-compressed matrix; used where the dense grid would not fit.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const ExactMatrix& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }

  const SparseVec& col(std::size_t j) const { return cols_[j]; }
  void set_col(std::size_t j, SparseVec v);
  void add_to(std::size_t i, std::size_t j, const Scalar& s);

  Scalar at(std::size_t i, std::size_t j) const;
  SparseVec apply(const SparseVec& v) const;
  SparseMatrix operator*(const SparseMatrix& rhs) const;
  SparseMatrix operator+(const SparseMatrix& rhs) const;
  SparseMatrix scaled(const Scalar& s) const;
  SparseMatrix transpose() const;
  ExactMatrix to_dense() const;
  std::size_t nonzeros() const;

  bool is_zero() const;
  bool operator==(const SparseMatrix& rhs) const;
  bool operator!=(const SparseMatrix& rhs) const { return !(*this == rhs); }

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVec> cols_;
};

// Kronecker product a (x) b with index (i,j) -> i*dim(b)+j.
SparseMatrix kronecker(const SparseMatrix& a, const SparseMatrix& b);

std::size_t rank(const ExactMatrix& m);
std::size_t rank(const SparseMatrix& m);

std::vector<std::vector<Scalar>> kernel_basis(const ExactMatrix& m);

// Reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref_in_place(ExactMatrix& m);

// Basis of the column space, as columns of the result, in reduced echelon order:
// column k has a 1 in row pivots[k] and 0 in the other pivot rows.
struct ImageBasis {
  ExactMatrix basis;
  std::vector<std::size_t> pivots;
};
ImageBasis image_basis(const ExactMatrix& m);

ExactMatrix averaging_projector(const std::vector<ExactMatrix>& mats);

std::size_t homology_dim(const ExactMatrix& d_in, const ExactMatrix& d_out);
std::size_t homology_dim(const SparseMatrix& d_in, const SparseMatrix& d_out);

}  // namespace twb
