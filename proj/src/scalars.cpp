#include "cxp/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace cxp {

Scalar Scalar::inverse() const {
  Rational n = norm2();
  if (sgn(n) == 0) throw Error("division by zero scalar");
  return Scalar(re_ / n, -im_ / n);
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string Scalar::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  if (sgn(re_) == 0) return im_.get_str() + " i";
  Rational mag = abs(im_);
  return re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + mag.get_str() + " i";
}

namespace {

Rational parse_rational(std::string_view token, std::string_view whole) {
  if (token.empty()) throw Error("malformed scalar '" + std::string(whole) + "'");
  for (char ch : token) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-'))
      throw Error("malformed scalar '" + std::string(whole) + "'");
  }
  auto slash = token.find('/');
  if (slash != std::string_view::npos) {
    std::string_view den = token.substr(slash + 1);
    if (den.empty() || den.find_first_not_of('0') == std::string_view::npos)
      throw Error("zero or missing denominator in scalar '" + std::string(whole) + "'");
  }
  Rational q;
  if (q.set_str(std::string(token), 10) != 0)
    throw Error("malformed scalar '" + std::string(whole) + "'");
  q.canonicalize();
  return q;
}

}  // namespace

Scalar Scalar::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw Error("empty scalar");

  // Split into signed terms at top-level '+'/'-' (not the leading one, and
  // not one directly following a '/').
  std::vector<std::string> terms;
  std::size_t start = 0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
      terms.push_back(s.substr(start, k - start));
      start = k;
    }
  }
  terms.push_back(s.substr(start));
  if (terms.size() > 2) throw Error("malformed scalar '" + std::string(text) + "'");

  Rational re = 0, im = 0;
  bool seen_re = false, seen_im = false;
  for (std::string t : terms) {
    bool negative = false;
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
      negative = t[0] == '-';
      t.erase(0, 1);
    }
    if (!t.empty() && t.back() == 'i') {
      if (seen_im) throw Error("malformed scalar '" + std::string(text) + "'");
      seen_im = true;
      t.pop_back();
      if (!t.empty() && t.back() == '*') t.pop_back();
      im = t.empty() ? Rational(1) : parse_rational(t, text);
      if (negative) im = -im;
    } else {
      if (seen_re) throw Error("malformed scalar '" + std::string(text) + "'");
      seen_re = true;
      re = parse_rational(t, text);
      if (negative) re = -re;
    }
  }
  return Scalar(re, im);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

// ---------------------------------------------------------------------------

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t k) {
  Vector v(n);
  v.at(k) = Scalar(1);
  return v;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vector add(const Vector& a, const Vector& b) {
  Vector out = a;
  for (std::size_t k = 0; k < b.size(); ++k) out[k] += b[k];
  return out;
}

Vector sub(const Vector& a, const Vector& b) {
  Vector out = a;
  for (std::size_t k = 0; k < b.size(); ++k) out[k] -= b[k];
  return out;
}

Vector scale(const Scalar& s, const Vector& v) {
  Vector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(s * x);
  return out;
}

Vector conj(const Vector& v) {
  Vector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.conj());
  return out;
}

void axpy(Vector& a, const Scalar& s, const Vector& b) {
  if (s.is_zero()) return;
  for (std::size_t k = 0; k < b.size(); ++k)
    if (!b[k].is_zero()) a[k] += s * b[k];
}

SparseVector sparsify(const Vector& v) {
  SparseVector out;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) out.push_back({static_cast<std::uint32_t>(k), v[k]});
  return out;
}

Vector densify(const SparseVector& v, std::size_t n) {
  Vector out(n);
  for (const auto& t : v) out.at(t.index) = t.value;
  return out;
}

void accumulate(Vector& out, const Scalar& s, const SparseVector& v) {
  if (s.is_zero()) return;
  for (const auto& t : v) out[t.index] += s * t.value;
}

// ---------------------------------------------------------------------------

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols, std::vector<Scalar> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw Error("matrix data does not match its shape");
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = Scalar(1);
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  if (rows.empty()) return {};
  ExactMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw Error("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

ExactMatrix ExactMatrix::from_columns(std::size_t rows, const std::vector<Vector>& cols) {
  ExactMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw Error("column length does not match row count");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Vector ExactMatrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vector ExactMatrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

ExactMatrix ExactMatrix::conj() const {
  ExactMatrix t(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) t.data_[k] = data_[k].conj();
  return t;
}

ExactMatrix ExactMatrix::adjoint() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c).conj();
  return t;
}

bool ExactMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vector ExactMatrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw Error("matrix-vector shape mismatch");
  Vector out(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Scalar& e = (*this)(r, c);
      if (!e.is_zero()) out[r] += e * v[c];
    }
  }
  return out;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw Error("matrix product shape mismatch");
  ExactMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) {
        const Scalar& y = b(k, c);
        if (!y.is_zero()) out(r, c) += x * y;
      }
    }
  return out;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix sum shape mismatch");
  ExactMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix difference shape mismatch");
  ExactMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
  return out;
}

ExactMatrix operator*(const Scalar& s, const ExactMatrix& m) {
  ExactMatrix out = m;
  for (auto& x : out.data_) x *= s;
  return out;
}

// ---------------------------------------------------------------------------
// Fraction-free elimination over the Gaussian integers.

namespace {

struct GaussInt {
  mpz_class re{0};
  mpz_class im{0};
  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

GaussInt mul(const GaussInt& a, const GaussInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussInt sub(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }

// a / b, where b divides a in Z[i].
GaussInt divexact(const GaussInt& a, const GaussInt& b) {
  mpz_class n = b.re * b.re + b.im * b.im;
  mpz_class re = a.re * b.re + a.im * b.im;
  mpz_class im = a.im * b.re - a.re * b.im;
  GaussInt q;
  mpz_divexact(q.re.get_mpz_t(), re.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(q.im.get_mpz_t(), im.get_mpz_t(), n.get_mpz_t());
  return q;
}

}  // namespace

std::size_t exact_rank(const ExactMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return 0;
  std::vector<std::vector<GaussInt>> a(rows, std::vector<GaussInt>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < cols; ++c) {
      const Scalar& x = m(r, c);
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.re().get_den_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.im().get_den_mpz_t());
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const Scalar& x = m(r, c);
      a[r][c].re = x.re().get_num() * (l / x.re().get_den());
      a[r][c].im = x.im().get_num() * (l / x.im().get_den());
    }
  }
  GaussInt prev{1, 0};
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        GaussInt num = sub(mul(a[rank][c], a[r][j]), mul(a[r][c], a[rank][j]));
        a[r][j] = divexact(num, prev);
      }
      a[r][c] = GaussInt{};
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

Echelon row_echelon(const ExactMatrix& m) {
  Echelon e{m, {}};
  ExactMatrix& a = e.reduced;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    Scalar inv = a(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j)
      if (!a(r, j).is_zero()) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Scalar f = a(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
    }
    e.pivots.push_back(c);
    ++r;
  }
  return e;
}

std::vector<Vector> exact_kernel_basis(const ExactMatrix& m) {
  Echelon e = row_echelon(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols);
    v[free] = Scalar(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const ExactMatrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw Error("right-hand side length does not match row count");
  ExactMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  Echelon e = row_echelon(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
  return x;
}

std::vector<std::size_t> independent_subset(const std::vector<Vector>& vectors, std::size_t dim) {
  // Incremental echelon basis: keep rows reduced against earlier pivots.
  std::vector<Vector> rows;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> chosen;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    Vector v = vectors[k];
    if (v.size() != dim) throw Error("vector length mismatch in independence test");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (v[pivots[r]].is_zero()) continue;
      Scalar f = v[pivots[r]];
      axpy(v, -f, rows[r]);
    }
    auto it = std::find_if(v.begin(), v.end(), [](const Scalar& s) { return !s.is_zero(); });
    if (it == v.end()) continue;
    std::size_t p = static_cast<std::size_t>(it - v.begin());
    Scalar inv = v[p].inverse();
    for (auto& x : v) x *= inv;
    rows.push_back(std::move(v));
    pivots.push_back(p);
    chosen.push_back(k);
  }
  return chosen;
}

std::optional<Vector> coordinates_in(const ExactMatrix& basis, const Vector& v) {
  if (basis.cols() == 0) {
    if (is_zero(v)) return Vector{};
    return std::nullopt;
  }
  return solve(basis, v);
}

std::optional<ExactMatrix> inverse(const ExactMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error("inverse of a non-square matrix");
  ExactMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = Scalar(1);
  }
  Echelon e = row_echelon(aug);
  if (e.rank() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  ExactMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = e.reduced(r, n + c);
  return out;
}

SpanChart::SpanChart(ExactMatrix basis) : basis_(std::move(basis)) {
  const std::size_t k = basis_.cols();
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < basis_.rows(); ++r) rows.push_back(basis_.row(r));
  rows_ = independent_subset(rows, k);
  if (rows_.size() != k) throw Error("chart basis columns are not independent");
  ExactMatrix sub(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < k; ++c) sub(i, c) = basis_(rows_[i], c);
  inv_ = *inverse(sub);
}

std::optional<Vector> SpanChart::coords(const Vector& v) const {
  if (v.size() != basis_.rows()) throw Error("chart lookup with a vector of the wrong length");
  const std::size_t k = basis_.cols();
  Vector picked(k);
  for (std::size_t i = 0; i < k; ++i) picked[i] = v[rows_[i]];
  Vector x = inv_.apply(picked);
  if (basis_.apply(x) != v) return std::nullopt;
  return x;
}

// ---------------------------------------------------------------------------

Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

NumericMatrix to_numeric(const ExactMatrix& m) {
  NumericMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c).to_complex();
  return out;
}

bool all_finite(const NumericMatrix& m) {
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    const auto& z = m.data()[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double operator_norm(const NumericMatrix& m) {
  if (!all_finite(m)) throw Error("operator_norm: non-finite matrix entry");
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<NumericMatrix> svd(m);
  return svd.singularValues()(0);
}

HermitianEigen hermitian_eigen(const NumericMatrix& m) {
  if (!all_finite(m)) throw Error("hermitian_eigen: non-finite matrix entry");
  if (m.rows() != m.cols()) throw Error("hermitian_eigen: matrix is not square");
  if (m.size() == 0) return {Eigen::VectorXd(0), NumericMatrix(0, 0)};
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tolerances().residual * scale)
    throw Error("hermitian_eigen: matrix is not self-adjoint");
  Eigen::SelfAdjointEigenSolver<NumericMatrix> es(m);
  if (es.info() != Eigen::Success) throw Error("hermitian_eigen: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace cxp
