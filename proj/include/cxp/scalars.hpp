#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

namespace cxp {

/// Raised when an operation's precondition does not hold (malformed or
/// inconsistent input). The message names the offending data.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Rational = mpq_class;

/// An element re + im*i of the Gaussian rationals Q(i).
///
/// Both parts are kept canonical by GMP (lowest terms, positive
/// denominator), so structural equality is field equality.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Scalar i() { return Scalar(0, 1); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }
  /// |z|^2 as an exact rational.
  Rational norm2() const { return re_ * re_ + im_ * im_; }
  Scalar inverse() const;

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a) { return Scalar(-a.re_, -a.im_); }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Canonical text form: "p/q", "r/s i", "p/q+r/s i" or "p/q-r/s i".
  std::string to_string() const;
  /// Parses the canonical form and loose variants ("i", "-2i", "1+i", "3/4 - i").
  static Scalar parse(std::string_view text);

 private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

using Vector = std::vector<Scalar>;

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t k);
bool is_zero(const Vector& v);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Scalar& s, const Vector& v);
Vector conj(const Vector& v);
/// a += s * b
void axpy(Vector& a, const Scalar& s, const Vector& b);

/// One nonzero coordinate of a sparse vector.
struct Term {
  std::uint32_t index;
  Scalar value;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sorted list of nonzero coordinates. Used for structure constants, which
/// are overwhelmingly sparse for matrix-unit bases.
using SparseVector = std::vector<Term>;

SparseVector sparsify(const Vector& v);
Vector densify(const SparseVector& v, std::size_t n);
/// out += s * v
void accumulate(Vector& out, const Scalar& s, const SparseVector& v);

/// Dense exact matrix over Q(i), row-major.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  ExactMatrix(std::size_t rows, std::size_t cols, std::vector<Scalar> data);

  static ExactMatrix identity(std::size_t n);
  /// Rows given as nested lists; all rows must have equal length.
  static ExactMatrix from_rows(const std::vector<std::vector<Scalar>>& rows);
  static ExactMatrix from_columns(std::size_t rows, const std::vector<Vector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<Scalar>& data() const { return data_; }

  Vector column(std::size_t c) const;
  Vector row(std::size_t r) const;

  ExactMatrix transpose() const;
  ExactMatrix conj() const;
  ExactMatrix adjoint() const;
  bool is_zero() const;

  Vector apply(const Vector& v) const;

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator*(const Scalar& s, const ExactMatrix& m);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Entries flattened row-major; the coordinates of the matrix in the
  /// matrix-unit basis.
  Vector vec() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Rank over Q(i) by fraction-free (Bareiss) elimination over Z[i].
std::size_t exact_rank(const ExactMatrix& m);

/// Reduced row echelon form over Q(i).
struct Echelon {
  ExactMatrix reduced;               // same shape as the input
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};
Echelon row_echelon(const ExactMatrix& m);

/// Basis of {v : m v = 0}; one vector per non-pivot column, with a 1 in that
/// column.
std::vector<Vector> exact_kernel_basis(const ExactMatrix& m);

/// Some x with m x = b, or nullopt if the system is inconsistent.
std::optional<Vector> solve(const ExactMatrix& m, const Vector& b);

/// Maximal linearly independent subfamily, scanning in order.
std::vector<std::size_t> independent_subset(const std::vector<Vector>& vectors, std::size_t dim);

/// Coordinates of v in the basis given as the columns of `basis`, if v lies
/// in their span. The columns must be independent.
std::optional<Vector> coordinates_in(const ExactMatrix& basis, const Vector& v);

/// Inverse of a square matrix, or nullopt if singular.
std::optional<ExactMatrix> inverse(const ExactMatrix& m);

/// Coordinate map for a fixed subspace given by independent columns. The
/// inverse of a maximal nonsingular row selection is computed once, so each
/// lookup costs one small product plus a membership check.
class SpanChart {
 public:
  SpanChart() = default;
  explicit SpanChart(ExactMatrix basis);

  std::size_t dim() const { return basis_.cols(); }
  std::size_t ambient_dim() const { return basis_.rows(); }
  const ExactMatrix& basis() const { return basis_; }

  /// Coordinates of v, or nullopt when v is outside the span.
  std::optional<Vector> coords(const Vector& v) const;
  bool contains(const Vector& v) const { return coords(v).has_value(); }

 private:
  ExactMatrix basis_;
  std::vector<std::size_t> rows_;
  ExactMatrix inv_;
};

// ---------------------------------------------------------------------------
// Numeric layer

using NumericMatrix = Eigen::MatrixXcd;

/// Global numeric tolerances. `equality` governs comparisons of computed
/// norms; `residual` bounds backward errors of factorizations.
struct Tolerances {
  double equality = 1e-8;
  double residual = 1e-10;
};
Tolerances& tolerances();

NumericMatrix to_numeric(const ExactMatrix& m);
bool all_finite(const NumericMatrix& m);

/// Largest singular value.
double operator_norm(const NumericMatrix& m);

struct HermitianEigen {
  Eigen::VectorXd values;  // ascending
  NumericMatrix vectors;   // columns
};
HermitianEigen hermitian_eigen(const NumericMatrix& m);

}  // namespace cxp
