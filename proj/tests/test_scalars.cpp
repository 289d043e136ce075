#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cxp/scalars.hpp"

using namespace cxp;

namespace {

Scalar small_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::uniform_int_distribution<int> q(1, 3);
  return Scalar(Rational(d(rng), q(rng)), Rational(d(rng), q(rng)));
}

ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int zero_bias) {
  ExactMatrix m(r, c);
  std::uniform_int_distribution<int> z(0, 9);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (z(rng) >= zero_bias) m(i, j) = small_scalar(rng);
  return m;
}

// Low-rank product so that rank deficiency is common.
ExactMatrix random_low_rank(std::mt19937_64& rng, std::size_t r, std::size_t c, std::size_t k) {
  return random_matrix(rng, r, k, 2) * random_matrix(rng, k, c, 2);
}

NumericMatrix random_numeric(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> g;
  NumericMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

}  // namespace

TEST_CASE("scalar arithmetic and canonical text") {
  Scalar a(Rational(2, 4), Rational(-3, 6));
  CHECK(a.to_string() == "1/2-1/2 i");
  CHECK((a * a.inverse()) == Scalar(1));
  CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
  CHECK(a.conj() == Scalar(Rational(1, 2), Rational(1, 2)));
  CHECK(a.norm2() == Rational(1, 2));
  CHECK(Scalar(0, 1).to_string() == "1 i");
  CHECK(Scalar(3).to_string() == "3");
  CHECK(Scalar(Rational(-7, 3), Rational(1)).to_string() == "-7/3+1 i");
  CHECK(Scalar(0).to_string() == "0");
}

TEST_CASE("scalar parsing") {
  CHECK(Scalar::parse("i") == Scalar::i());
  CHECK(Scalar::parse("-i") == -Scalar::i());
  CHECK(Scalar::parse("2i") == Scalar(0, 2));
  CHECK(Scalar::parse("1+i") == Scalar(1, 1));
  CHECK(Scalar::parse("3/4 - i") == Scalar(Rational(3, 4), -1));
  CHECK(Scalar::parse("-1/2+3/5 i") == Scalar(Rational(-1, 2), Rational(3, 5)));
  CHECK(Scalar::parse("4/6") == Scalar(Rational(2, 3)));
  CHECK_THROWS_AS(Scalar::parse("1/0"), Error);
  CHECK_THROWS_AS(Scalar::parse("abc"), Error);
  CHECK_THROWS_AS(Scalar::parse(""), Error);

  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    Scalar s = small_scalar(rng);
    CHECK(Scalar::parse(s.to_string()) == s);
  }
}

TEST_CASE("exact_rank examples") {
  CHECK(exact_rank(ExactMatrix::identity(2)) == 2);
  CHECK(exact_rank(ExactMatrix::from_rows({{1, 1}, {1, 1}})) == 1);
  ExactMatrix h = ExactMatrix::from_rows({{1, Scalar::i()}, {-Scalar::i(), 1}});
  CHECK(exact_rank(h) == 1);
  CHECK(exact_rank(ExactMatrix(3, 0)) == 0);
  CHECK(exact_rank(ExactMatrix(2, 2)) == 0);
}

TEST_CASE("exact_kernel_basis examples") {
  auto z = exact_kernel_basis(ExactMatrix(2, 2));
  REQUIRE(z.size() == 2);
  CHECK(exact_rank(ExactMatrix::from_columns(2, z)) == 2);
  CHECK(exact_kernel_basis(ExactMatrix::identity(3)).empty());
  auto k = exact_kernel_basis(ExactMatrix::from_rows({{1, 1}}));
  REQUIRE(k.size() == 1);
  // proportional to (1, -1)
  CHECK(k[0][0] == -k[0][1]);
  CHECK(!k[0][0].is_zero());
}

TEST_CASE("rank properties on random matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6, k = rng() % 4;
    ExactMatrix m = (trial % 2) ? random_low_rank(rng, r, c, k) : random_matrix(rng, r, c, 5);
    std::size_t rk = exact_rank(m);
    CHECK(rk <= std::min(r, c));
    CHECK(rk == exact_rank(m.transpose()));
    CHECK(rk == exact_rank(m.adjoint()));
    // the RREF route must agree with the fraction-free route
    CHECK(rk == row_echelon(m).rank());
    auto ker = exact_kernel_basis(m);
    CHECK(rk + ker.size() == c);
    for (const auto& v : ker) CHECK(is_zero(m.apply(v)));
    if (!ker.empty()) CHECK(exact_rank(ExactMatrix::from_columns(c, ker)) == ker.size());
  }
}

TEST_CASE("solve, inverse and charts") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + rng() % 5;
    ExactMatrix m = random_matrix(rng, n, n, 0);
    Vector x(n);
    for (auto& e : x) e = small_scalar(rng);
    Vector b = m.apply(x);
    auto sol = solve(m, b);
    REQUIRE(sol.has_value());
    CHECK(m.apply(*sol) == b);
    auto inv = inverse(m);
    if (exact_rank(m) == n) {
      REQUIRE(inv.has_value());
      CHECK(*inv * m == ExactMatrix::identity(n));
    } else {
      CHECK(!inv.has_value());
    }
  }
  // inconsistent system
  CHECK(!solve(ExactMatrix::from_rows({{1, 1}, {2, 2}}), Vector{1, 3}).has_value());

  ExactMatrix basis = ExactMatrix::from_columns(3, {Vector{1, 0, 1}, Vector{0, Scalar::i(), 0}});
  SpanChart chart(basis);
  auto c = chart.coords(Vector{2, Scalar(0, 3), 2});
  REQUIRE(c.has_value());
  CHECK((*c)[0] == Scalar(2));
  CHECK((*c)[1] == Scalar(3));
  CHECK(!chart.contains(Vector{1, 0, 0}));
  CHECK_THROWS_AS(SpanChart(ExactMatrix::from_columns(2, {Vector{1, 1}, Vector{2, 2}})), Error);
}

TEST_CASE("independent_subset scans in order") {
  std::vector<Vector> vs{{1, 0}, {2, 0}, {0, 1}, {1, 1}};
  auto idx = independent_subset(vs, 2);
  CHECK(idx == std::vector<std::size_t>{0, 2});
}

TEST_CASE("operator_norm examples") {
  CHECK(operator_norm(NumericMatrix::Identity(4, 4)) == doctest::Approx(1.0).epsilon(1e-12));
  NumericMatrix flip(2, 2);
  flip << 0, 1, 1, 0;
  CHECK(std::abs(operator_norm(flip) - 1.0) < 1e-10);
  NumericMatrix ones = NumericMatrix::Ones(2, 2);
  CHECK(std::abs(operator_norm(ones) - 2.0) < 1e-10);
  NumericMatrix bad = NumericMatrix::Zero(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(operator_norm(bad), Error);
  CHECK(operator_norm(NumericMatrix(0, 3)) == 0.0);
}

TEST_CASE("operator_norm C*-properties on random matrices") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    // sizes straddle the JacobiSVD / BDCSVD switch
    Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 30);
    Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % 30);
    NumericMatrix a = random_numeric(rng, n, m);
    NumericMatrix b = random_numeric(rng, m, n);
    double na = operator_norm(a), nb = operator_norm(b);
    double tol = 1e-8 * std::max(1.0, na * na);
    CHECK(operator_norm(a * b) <= na * nb + tol);
    CHECK(std::abs(operator_norm(a.adjoint()) - na) <= tol);
    CHECK(std::abs(operator_norm(a.adjoint() * a) - na * na) <= tol);
  }
}

TEST_CASE("hermitian_eigen examples") {
  NumericMatrix d = NumericMatrix::Zero(2, 2);
  d(0, 0) = 5;
  d(1, 1) = 2;
  auto e = hermitian_eigen(d);
  CHECK(std::abs(e.values(0) - 2) < 1e-12);
  CHECK(std::abs(e.values(1) - 5) < 1e-12);
  NumericMatrix flip(2, 2);
  flip << 0, 1, 1, 0;
  e = hermitian_eigen(flip);
  CHECK(std::abs(e.values(0) + 1) < 1e-12);
  CHECK(std::abs(e.values(1) - 1) < 1e-12);
  e = hermitian_eigen(NumericMatrix::Zero(3, 3));
  CHECK(e.values.cwiseAbs().maxCoeff() == 0.0);
  NumericMatrix skew(2, 2);
  skew << 0, 1, -1, 0;
  CHECK_THROWS_AS(hermitian_eigen(skew), Error);
}

TEST_CASE("hermitian_eigen residual bound") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 20);
    NumericMatrix a = random_numeric(rng, n, n);
    NumericMatrix h = a + a.adjoint();
    auto e = hermitian_eigen(h);
    for (Eigen::Index k = 1; k < n; ++k) CHECK(e.values(k - 1) <= e.values(k));
    NumericMatrix res = h * e.vectors - e.vectors * e.values.cast<std::complex<double>>().asDiagonal();
    CHECK(operator_norm(res) <= 1e-8 * operator_norm(h));
  }
}
