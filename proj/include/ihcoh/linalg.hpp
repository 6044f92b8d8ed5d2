#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ihcoh/error.hpp"

namespace ihcoh {

using Int = mpz_class;
using Rat = mpq_class;
using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

// Dense row-major matrix. Column count is stored explicitly so 0×n matrices keep their shape.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(ErrorKind::RankMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw Error(ErrorKind::RankMismatch, "ragged matrix columns");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<T> row(std::size_t i) const { return std::vector<T>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<std::vector<T>> row_list() const {
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < r_; ++i) out.push_back(row(i));
    return out;
  }
  std::vector<std::vector<T>> col_list() const {
    std::vector<std::vector<T>> out;
    for (std::size_t j = 0; j < c_; ++j) out.push_back(col(j));
    return out;
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Drop column j.
  Matrix without_col(std::size_t j) const {
    Matrix m(r_, c_ - 1);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0, kk = 0; k < c_; ++k)
        if (k != j) m(i, kk++) = (*this)(i, k);
    return m;
  }
  Matrix without_row(std::size_t i) const {
    Matrix m(r_ - 1, c_);
    for (std::size_t k = 0, kk = 0; k < r_; ++k) {
      if (k == i) continue;
      for (std::size_t j = 0; j < c_; ++j) m(kk, j) = (*this)(k, j);
      ++kk;
    }
    return m;
  }

  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (v.size() != c_) throw Error(ErrorKind::RankMismatch, "matrix-vector size mismatch");
    std::vector<T> out(r_);
    for (std::size_t i = 0; i < r_; ++i) {
      T s = 0;
      for (std::size_t j = 0; j < c_; ++j) s += (*this)(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw Error(ErrorKind::RankMismatch, "matrix product size mismatch");
    Matrix m(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += a(i, k) * b(k, j);
      }
    return m;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using IMat = Matrix<Int>;
using QMat = Matrix<Rat>;

// Vector helpers.
Int dot(const IVec& a, const IVec& b);
Rat dot(const QVec& a, const QVec& b);
Rat dot(const IVec& a, const QVec& b);
Int content(const IVec& v);  // gcd of entries, 0 for the zero vector
bool is_zero(const IVec& v);
bool is_zero(const QVec& v);
IVec primitive(const IVec& v);  // throws ZeroVector
IVec primitive_or_zero(const IVec& v);
IVec primitive_direction(const QVec& v);  // positive rescaling to a primitive integer vector
IVec clear_denominators(const QVec& v);   // multiply by the lcm of denominators
QVec to_rational(const IVec& v);
IVec add(const IVec& a, const IVec& b);
IVec sub(const IVec& a, const IVec& b);
IVec scale(const Int& c, const IVec& v);
IVec negate(const IVec& v);
QMat to_rational(const IMat& m);

// Rank over Q of a list of row vectors.
std::size_t rank(const std::vector<IVec>& rows, std::size_t ncols);
std::size_t rank(const IMat& m);

// Canonical basis of the row space: reduced echelon rows scaled to primitive integers.
std::vector<IVec> row_space_basis(const std::vector<IVec>& rows, std::size_t ncols);
// Canonical integer basis of {x : rows·x = 0}.
std::vector<IVec> nullspace(const std::vector<IVec>& rows, std::size_t ncols);
// Reduce f modulo a canonical row_space_basis (pivot entries zeroed), keeping the functional on
// the orthogonal complement up to positive scaling. Returns a primitive vector or zero.
IVec reduce_modulo(const IVec& f, const std::vector<IVec>& basis);

// Smith normal form: U·M·V = D with d1 | d2 | ... and d_i >= 0.
struct SmithForm {
  IMat U, D, V;
  std::size_t rank = 0;
  std::vector<Int> divisors() const;
};
SmithForm smith_normal_form(const IMat& m);

IMat inverse_unimodular(const IMat& m);
Int determinant(const IMat& m);

// 0 -> Z^n --F--> Z^ell --P--> Z^s -> 0 with section S (S·F = I).
struct MatrixFactorization {
  IMat F, S, P;
  bool saturated = true;
  bool supplied = false;  // S/P were user supplied and verified
};
MatrixFactorization matrix_factorization(const IMat& F, const std::optional<IMat>& S = std::nullopt,
                                         const std::optional<IMat>& P = std::nullopt);

// Saturated integer basis of ker A, as the columns of the result.
IMat integer_kernel(const IMat& a);

// Saturation of the span of some integer vectors, with a unimodular change of basis U such that
// U maps the saturated sublattice onto Z^dim × 0.
struct SubLattice {
  IMat U, Uinv;
  std::size_t ambient = 0, dim = 0;
  IVec coords(const IVec& x) const;    // first dim coordinates of U·x
  IVec quotient(const IVec& x) const;  // last ambient−dim coordinates of U·x
  QVec quotient(const QVec& x) const;
  // Functional m on Z^ambient vanishing on the sublattice, written on the quotient coordinates.
  IVec quotient_functional(const IVec& m) const;
  // Functional m written on the span coordinates (restriction).
  IVec span_functional(const IVec& m) const;
};
SubLattice saturated_span(const std::vector<IVec>& vecs, std::size_t ambient);

std::string to_string(const Rat& q);
std::string to_string(const Int& z);
Rat parse_rational(const std::string& s);  // "p", "p/q"; throws MalformedInput

}  // namespace ihcoh
