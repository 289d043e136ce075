#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "cxp/matrixbridge.hpp"

using namespace cxp;

namespace {

ExactMatrix flip() { return ExactMatrix::from_rows({{0, 1}, {1, 0}}); }

CategoryPtr diag2() {
  auto s = empty_spans({"X"}, {2});
  s.at(0, 0) = {ExactMatrix::from_rows({{1, 0}, {0, 0}}), ExactMatrix::from_rows({{0, 0}, {0, 1}})};
  return make_category(presentation_from_concrete(s));
}

// C[X] for X = {x, y}: only identities.
CategoryPtr discrete2() {
  auto s = empty_spans({"x", "y"}, {1, 1});
  s.at(0, 0) = {ExactMatrix::identity(1)};
  s.at(1, 1) = {ExactMatrix::identity(1)};
  return make_category(presentation_from_concrete(s));
}

GroupAction swap_action() {
  return action_from_spatial(FiniteGroup::cyclic(2), diag2(), {{0}, {0}}, {{ExactMatrix::identity(2)}, {flip()}});
}

GroupAction trivial_on_c(std::size_t n) {
  return trivial_action(FiniteGroup::cyclic(n), make_category(full_matrix_category({"*"}, {1})));
}

std::size_t center_dim(const Category& c) {
  const std::size_t d = c.hom_dim(0, 0);
  std::vector<Vector> rows;
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t r = 0; r < d; ++r) {
      Vector row(d);
      for (std::size_t k = 0; k < d; ++k) {
        Vector col = sub(c.compose(0, 0, 0, unit_vector(d, k), unit_vector(d, b)),
                         c.compose(0, 0, 0, unit_vector(d, b), unit_vector(d, k)));
        row[k] = col[r];
      }
      rows.push_back(row);
    }
  return exact_kernel_basis(ExactMatrix::from_rows(rows)).size();
}

}  // namespace

TEST_CASE("a_alg examples") {
  TotalAlgebra t = a_alg(discrete2());
  CHECK(t.dimension() == 2);
  CHECK(validate_presentation(*t.algebra).ok());
  CHECK(center_dim(*t.algebra) == 2);
  // cross products vanish
  CHECK(is_zero(t.algebra->compose(0, 0, 0, unit_vector(2, 0), unit_vector(2, 1))));

  TotalAlgebra m = a_alg(make_category(full_matrix_category({"x", "y"}, {1, 1})));
  CHECK(m.dimension() == 4);
  CHECK(validate_presentation(*m.algebra).ok());
  CHECK(center_dim(*m.algebra) == 1);
  Vector fxy = unit_vector(4, m.index(0, 1, 0)), fyx = unit_vector(4, m.index(1, 0, 0));
  CHECK(m.algebra->compose(0, 0, 0, fxy, fyx) == unit_vector(4, m.index(1, 1, 0)));
  CHECK(m.algebra->unital());
  CHECK(validate_concrete(*m.algebra).ok());

  auto d = diag2();
  TotalAlgebra one = a_alg(d);
  CHECK(one.dimension() == 2);
  CHECK(same_functor(one.rho, [&] {
    StarFunctor f = blank_functor(d, one.algebra, {0});
    f.hom_map(0, 0) = ExactMatrix::identity(2);
    return f;
  }()));
  CHECK(validate_functor(one.rho).ok());
}

TEST_CASE("rho into the total algebra is isometric") {
  auto c = make_category(full_matrix_category({"a", "b"}, {2, 1}));
  TotalAlgebra t = a_alg(c);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> dist(-4, 4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      Vector f(c->hom_dim(a, b));
      for (auto& x : f) x = Scalar(dist(rng), dist(rng));
      double lhs = norm(*c, {a, b, f});
      double rhs = norm(*t.algebra, {0, 0, t.rho.apply(a, b, f)});
      CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, lhs));
    }
}

TEST_CASE("algebra exactness for a central ideal") {
  auto d = diag2();
  IdealInclusion inc = ideal_from_subspaces(d, {{Vector{1, 0}}});
  Quotient q = quotient_by_ideal(inc);
  TotalAlgebra ac = a_alg(inc.ideal), ad = a_alg(d), aq = a_alg(q.cat);
  StarFunctor ai = a_alg_map(inc.inclusion, ac, ad);
  StarFunctor aqm = a_alg_map(q.qmap, ad, aq);
  CHECK(check_algebra_exact(ai, aqm).verified());
  CHECK(!check_algebra_exact(ai, a_alg_map(identity_functor(d), ad, ad)).verified());
}

TEST_CASE("nu examples") {
  NuMap t = nu_map(trivial_action(FiniteGroup::trivial(), diag2()));
  CHECK(t.verdict.verified());
  CHECK(same_functor(compose(t.nu, t.left.iota), [&] {
    StarFunctor f = blank_functor(t.base.algebra, t.right.algebra, {0});
    f.hom_map(0, 0) = ExactMatrix::identity(2);
    return f;
  }()));

  NuMap c2 = nu_map(trivial_on_c(2));
  CHECK(c2.verdict.verified());
  CHECK(c2.nu.hom_map(0, 0).rows() == 2);

  GroupAction sw = swap_action();
  NuMap s = nu_map(sw);
  CHECK(s.verdict.verified());
  CHECK(s.nu.hom_map(0, 0).rows() == 4);
  // ([e1], g) |-> [(e1, g)]
  CHECK(s.nu.apply(0, 0, unit_vector(4, s.left.index(0, 0, 1, 0))) ==
        unit_vector(4, s.right.index(0, 0, s.cp.index(0, 0, 1, 0))));

  // intertwines norms
  RegularRep lreg = regular_representation(s.left);
  RegularRep creg = regular_representation(s.cp);
  TotalAlgebra rconc = a_alg(creg.category);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (int k = 0; k < 10; ++k) {
    Vector x(4);
    for (auto& v : x) v = Scalar(dist(rng), dist(rng));
    double lhs = max_norm(lreg, {0, 0, x});
    double rhs = norm(*rconc.algebra, {0, 0, s.nu.apply(0, 0, x)});
    CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, lhs));
  }
}

TEST_CASE("nu on a three-object Z/3 instance") {
  auto m = make_category(full_matrix_category({"a", "b", "c"}, {1, 1, 1}));
  FiniteGroup z3 = FiniteGroup::cyclic(3);
  GroupAction act = action_from_spatial(z3, m, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}},
                                        std::vector<std::vector<ExactMatrix>>(3, std::vector<ExactMatrix>(3, ExactMatrix::identity(1))));
  NuMap nm = nu_map(act);
  CHECK(nm.verdict.verified());
  CHECK(nm.nu.hom_map(0, 0).rows() == 27);
}

TEST_CASE("regular_representation examples") {
  auto d = diag2();
  CrossedProduct t = crossed_product(trivial_action(FiniteGroup::trivial(), d));
  RegularRep tr = regular_representation(t);
  CHECK(tr.verdict.verified());
  CHECK(tr.category->concrete->hom_basis(0, 0) == d->concrete->hom_basis(0, 0));

  CrossedProduct c2 = crossed_product(trivial_on_c(2));
  RegularRep r2 = regular_representation(c2);
  CHECK(r2.verdict.verified());
  Vector x(2);
  x[c2.index(0, 0, 0, 0)] = Scalar(1);
  x[c2.index(0, 0, 1, 0)] = Scalar(1);
  CHECK(realize(*r2.category, 0, 0, x) == ExactMatrix::from_rows({{1, 1}, {1, 1}}));

  CrossedProduct sw = crossed_product(swap_action());
  RegularRep rs = regular_representation(sw);
  CHECK(rs.verdict.verified());
  Vector e1g = unit_vector(4, sw.index(0, 0, 1, 0));
  ExactMatrix b = realize(*rs.category, 0, 0, e1g);
  ExactMatrix expect(4, 4);
  expect(2, 0) = Scalar(1);  // fiber e -> fiber g: e11
  expect(1, 3) = Scalar(1);  // fiber g -> fiber e: flip e11 flip = e22
  CHECK(b == expect);
  CHECK(b * b == ExactMatrix(4, 4));

  GroupAction no_spatial = trivial_on_c(2);
  no_spatial.spatial.reset();
  CHECK_THROWS_AS(regular_representation(crossed_product(no_spatial)), Error);
}

TEST_CASE("max_norm examples") {
  CrossedProduct c2 = crossed_product(trivial_on_c(2));
  RegularRep r2 = regular_representation(c2);
  CHECK(std::abs(max_norm(r2, {0, 0, Vector{1, 1}}) - 2.0) <= 1e-8);
  CHECK(std::abs(max_norm(r2, {0, 0, Vector{0, 1}}) - 1.0) <= 1e-8);

  // DFT oracle
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> dist(-5, 5);
  for (std::size_t n : {3u, 4u, 5u}) {
    CrossedProduct cn = crossed_product(trivial_on_c(n));
    RegularRep rn = regular_representation(cn);
    for (int t = 0; t < 5; ++t) {
      Vector c(n);
      std::vector<std::complex<double>> cz(n);
      for (std::size_t k = 0; k < n; ++k) {
        c[cn.index(0, 0, k, 0)] = Scalar(dist(rng), dist(rng));
        cz[k] = c[cn.index(0, 0, k, 0)].to_complex();
      }
      double best = 0;
      for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> s = 0;
        for (std::size_t k = 0; k < n; ++k) s += cz[k] * std::polar(1.0, 2 * M_PI * double(j * k) / double(n));
        best = std::max(best, std::abs(s));
      }
      CHECK(std::abs(max_norm(rn, {0, 0, c}) - best) <= 1e-8 * std::max(1.0, best));
    }
  }
}

TEST_CASE("iota is isometric and (f, g) is bounded by f") {
  GroupAction sw = swap_action();
  CrossedProduct cp = crossed_product(sw);
  RegularRep reg = regular_representation(cp);
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> dist(-4, 4);
  for (int t = 0; t < 10; ++t) {
    Vector f{Scalar(dist(rng), dist(rng)), Scalar(dist(rng), dist(rng))};
    double nf = norm(*sw.category, {0, 0, f});
    CHECK(std::abs(max_norm(reg, {0, 0, cp.iota.apply(0, 0, f)}) - nf) <= 1e-8 * std::max(1.0, nf));
    Vector fg(4);
    fg[cp.index(0, 0, 1, 0)] = f[0];
    fg[cp.index(0, 0, 1, 1)] = f[1];
    CHECK(max_norm(reg, {0, 0, fg}) <= nf + 1e-8);
  }
}

TEST_CASE("covariant family norm agrees with the regular norm") {
  CrossedProduct cp = crossed_product(swap_action());
  RegularRep reg = regular_representation(cp);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (int t = 0; t < 5; ++t) {
    Vector x(4);
    for (auto& v : x) v = Scalar(dist(rng), dist(rng));
    CovariantFamilyCheck fc = covariant_family_check(reg, {0, 0, x}, 100 + t);
    CHECK(fc.verdict.verified());
    CHECK(fc.family_size >= 2);
  }
  CrossedProduct c3 = crossed_product(trivial_on_c(3));
  CovariantFamilyCheck f3 = covariant_family_check(regular_representation(c3), {0, 0, Vector{1, 2, 0}}, 3);
  CHECK(f3.verdict.verified());
  CHECK(f3.family_size == 4);  // regular plus three characters
}

TEST_CASE("complete examples") {
  auto d = diag2();
  Completion same = complete(seminormed_from_concrete(d));
  CHECK(same.null_space_zero);
  CHECK(same.quotient.cat->hom_dim(0, 0) == 2);

  SeminormedCategory killed{d, {{ExactMatrix::identity(1), ExactMatrix(1, 1)}}};
  CHECK(killed.seminorm({0, 0, Vector{0, 5}}) == 0.0);
  CHECK(killed.seminorm({0, 0, Vector{3, 5}}) == doctest::Approx(3.0));
  Completion drop = complete(killed);
  CHECK(!drop.null_space_zero);
  CHECK(drop.quotient.cat->hom_dim(0, 0) == 1);

  CrossedProduct cp = crossed_product(swap_action());
  RegularRep reg = regular_representation(cp);
  Completion c = complete(seminormed_from_concrete(reg.category));
  CHECK(c.null_space_zero);
  CHECK(c.quotient.cat->hom_dim(0, 0) == 4);
}

TEST_CASE("multiplier_shift examples") {
  CrossedProduct c2 = crossed_product(trivial_on_c(2));
  TotalAlgebra alg = a_alg(c2.category);
  MultiplierShift e = multiplier_shift(c2, alg, 0);
  CHECK(e.verdict.verified());
  CHECK(e.left == ExactMatrix::identity(2));
  CHECK(e.right == ExactMatrix::identity(2));

  MultiplierShift s = multiplier_shift(c2, alg, 1);
  CHECK(s.verdict.verified());
  CHECK(s.nu == unit_vector(2, alg.index(0, 0, c2.index(0, 0, 1, 0))));
  CHECK(alg.algebra->compose(0, 0, 0, s.nu, s.nu) == *alg.algebra->unit(0));

  auto m = make_category(full_matrix_category({"a", "b"}, {1, 2}));
  GroupAction sw = action_from_spatial(FiniteGroup::cyclic(2), m, {{0, 1}, {0, 1}},
                                       {{ExactMatrix::identity(1), ExactMatrix::identity(2)},
                                        {ExactMatrix::identity(1), ExactMatrix::from_rows({{1, 0}, {0, -1}})}});
  CrossedProduct cp = crossed_product(sw);
  MultiplierShift ms = multiplier_shift(cp, a_alg(cp.category), 1);
  CHECK(ms.verdict.verified());

  // a nilpotent one-dimensional *-category has no identity
  Category nil({"X"}, {1});
  nil.set_star(0, 0, ExactMatrix::identity(1));
  nil.set_unital(false);
  auto np = make_category(std::move(nil));
  CrossedProduct ncp = crossed_product(trivial_action(FiniteGroup::cyclic(2), np));
  CHECK_THROWS_AS(multiplier_shift(ncp, a_alg(ncp.category), 1), Error);
}
