#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cxp/starcat.hpp"

using namespace cxp;

namespace {

Category scalar_line(const Scalar& star_factor) {
  Category c({"X"}, {1});
  c.set_comp(0, 0, 0, 0, 0, {Term{0, Scalar(1)}});
  c.set_star(0, 0, ExactMatrix::from_rows({{star_factor}}));
  c.set_unit(0, Vector{1});
  c.set_unital(true);
  return c;
}

// Oracle: a hom element of a full matrix category is just its matrix.
ExactMatrix as_matrix(std::size_t rows, std::size_t cols, const Vector& v) {
  return ExactMatrix(rows, cols, v);
}

}  // namespace

TEST_CASE("validate_presentation examples") {
  auto z = zero_category({"a", "b", "c"});
  CHECK(validate_presentation(z).ok());
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) CHECK(z.hom_dim(a, b) == 0);

  CHECK(validate_presentation(scalar_line(1)).ok());

  auto bad = validate_presentation(scalar_line(2));
  REQUIRE(!bad.ok());
  CHECK(bad.violations.front().kind == "star not involutive");
}

TEST_CASE("compose and adjoint on matrix units") {
  Category m2 = full_matrix_category({"X"}, {2});
  REQUIRE(validate_presentation(m2).ok());
  // basis index r*2+s is e_{r+1,s+1}
  Morphism e12 = basis_morphism(m2, 0, 0, 1);
  Morphism e21 = basis_morphism(m2, 0, 0, 2);
  Morphism e11 = basis_morphism(m2, 0, 0, 0);
  CHECK(compose(m2, e12, e21).coords == e11.coords);
  CHECK(adjoint(m2, e12).coords == e21.coords);
  Morphism id{0, 0, m2.identity(0)};
  Morphism f{0, 0, Vector{1, Scalar::i(), Scalar(Rational(1, 2)), 3}};
  CHECK(compose(m2, id, f).coords == f.coords);
  CHECK(compose(m2, f, id).coords == f.coords);
  CHECK(is_zero(compose(m2, zero_morphism(m2, 0, 0), f).coords));
  CHECK(is_zero(adjoint(m2, zero_morphism(m2, 0, 0)).coords));
  Scalar lam(2, 3);
  CHECK(adjoint(m2, Morphism{0, 0, scale(lam, id.coords)}).coords == scale(lam.conj(), id.coords));
  CHECK(adjoint(m2, adjoint(m2, f)).coords == f.coords);
}

TEST_CASE("compose rejects mismatched morphisms") {
  Category c = full_matrix_category({"X", "Y"}, {1, 2});
  Morphism f = basis_morphism(c, 0, 1, 0);
  try {
    (void)compose(c, f, f);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("X->Y") != std::string::npos);
  }
}

TEST_CASE("full matrix categories agree with matrix arithmetic") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> d(-2, 2);
  std::vector<std::size_t> hd{1, 2, 3};
  Category c = full_matrix_category({"A", "B", "C"}, hd);
  REQUIRE(validate_presentation(c).ok());
  auto rnd = [&](std::size_t n) {
    Vector v(n);
    for (auto& x : v) x = Scalar(d(rng), d(rng));
    return v;
  };
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t a = rng() % 3, b = rng() % 3, e = rng() % 3;
    Vector f = rnd(hd[a] * hd[b]), g = rnd(hd[b] * hd[e]);
    ExactMatrix F = as_matrix(hd[b], hd[a], f), G = as_matrix(hd[e], hd[b], g);
    CHECK(as_matrix(hd[e], hd[a], c.compose(a, b, e, g, f)) == G * F);
    CHECK(as_matrix(hd[a], hd[b], c.adjoint(a, b, f)) == F.adjoint());
    CHECK(realize(c, a, b, f) == F);
  }
}

TEST_CASE("presentation_from_concrete examples") {
  auto s = empty_spans({"X", "Y"}, {1, 1});
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) s.at(a, b) = {ExactMatrix::from_rows({{1}})};
  Category full = presentation_from_concrete(s);
  CHECK(validate_presentation(full).ok());
  CHECK(full.unital());
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) CHECK(full.hom_dim(a, b) == 1);

  auto diag = empty_spans({"X"}, {2});
  diag.at(0, 0) = {ExactMatrix::from_rows({{1, 0}, {0, 0}}), ExactMatrix::from_rows({{0, 0}, {0, 1}}),
                   ExactMatrix::from_rows({{2, 0}, {0, 3}})};
  Category dc = presentation_from_concrete(diag);
  CHECK(validate_presentation(dc).ok());
  CHECK(dc.hom_dim(0, 0) == 2);
  CHECK(dc.unital());

  auto nil = empty_spans({"X"}, {2});
  nil.at(0, 0) = {ExactMatrix::from_rows({{0, 1}, {0, 0}})};
  CHECK_THROWS_AS(presentation_from_concrete(nil), Error);
}

TEST_CASE("presentation_from_concrete detects projection units") {
  // End spanned by e11 inside 2x2 matrices: unit is e11, not the identity matrix
  auto s = empty_spans({"X"}, {2});
  s.at(0, 0) = {ExactMatrix::from_rows({{1, 0}, {0, 0}})};
  Category c = presentation_from_concrete(s);
  CHECK(c.unital());
  CHECK(validate_presentation(c).ok());
  CHECK(realize(c, 0, 0, c.identity(0)) == ExactMatrix::from_rows({{1, 0}, {0, 0}}));
}

TEST_CASE("concrete round trip reproduces compose and adjoint") {
  // upper and lower triangle spans generate a non-standard basis of M2
  auto s = empty_spans({"X", "Y"}, {2, 1});
  s.at(0, 0) = {ExactMatrix::from_rows({{1, 1}, {0, 1}}), ExactMatrix::from_rows({{1, 0}, {1, 1}}),
                ExactMatrix::from_rows({{1, 0}, {0, 0}}), ExactMatrix::from_rows({{0, Scalar::i()}, {0, 0}})};
  s.at(0, 1) = {ExactMatrix::from_rows({{1, 2}}), ExactMatrix::from_rows({{0, 1}})};
  s.at(1, 0) = {ExactMatrix::from_rows({{1}, {0}}), ExactMatrix::from_rows({{0}, {1}})};
  s.at(1, 1) = {ExactMatrix::from_rows({{5}})};
  Category c = presentation_from_concrete(s);
  REQUIRE(validate_presentation(c).ok());
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int t = 0; t < 40; ++t) {
    std::size_t a = rng() % 2, b = rng() % 2, e = rng() % 2;
    Vector f(c.hom_dim(a, b)), g(c.hom_dim(b, e));
    for (auto& x : f) x = Scalar(d(rng), d(rng));
    for (auto& x : g) x = Scalar(d(rng), d(rng));
    CHECK(realize(c, a, e, c.compose(a, b, e, g, f)) == realize(c, b, e, g) * realize(c, a, b, f));
    CHECK(realize(c, b, a, c.adjoint(a, b, f)) == realize(c, a, b, f).adjoint());
    // C*-identity for the concrete norm
    Morphism m{a, b, f};
    double n = norm(c, m);
    CHECK(std::abs(norm(c, compose(c, adjoint(c, m), m)) - n * n) <= 1e-8 * std::max(1.0, n * n));
  }
}

TEST_CASE("validate_functor examples") {
  auto m2 = make_category(full_matrix_category({"X"}, {2}));
  StarFunctor id = identity_functor(m2);
  auto rep = validate_functor(id);
  CHECK(rep.ok());
  CHECK(rep.notes == std::vector<std::string>{"unital"});

  // a non-unital source (one nilpotent self-adjoint generator) into 0[*]
  Category nonunital({"X"}, {1});
  nonunital.set_star(0, 0, ExactMatrix::from_rows({{1}}));
  REQUIRE(validate_presentation(nonunital).ok());
  REQUIRE(!solve_unit(nonunital, 0).has_value());
  auto nu = make_category(nonunital);
  auto z = make_category(zero_category({"*"}));
  StarFunctor to_zero = blank_functor(nu, z, {0});
  auto zr = validate_functor(to_zero);
  CHECK(zr.ok());
  CHECK(zr.notes == std::vector<std::string>{"non-unital"});

  StarFunctor broken = identity_functor(m2);
  broken.hom_map(0, 0)(1, 1) = Scalar(2);
  bool star_flagged = false;
  for (const auto& v : validate_functor(broken).violations)
    star_flagged = star_flagged || v.kind == "star not preserved";
  CHECK(star_flagged);
}

TEST_CASE("functor composition, inversion and transformations") {
  auto c = make_category(full_matrix_category({"X", "Y"}, {1, 1}));
  // swap the two objects
  StarFunctor sw = blank_functor(c, c, {1, 0});
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) sw.hom_map(a, b) = ExactMatrix::identity(1);
  REQUIRE(validate_functor(sw).ok());
  CHECK(same_functor(compose(sw, sw), identity_functor(c)));
  CHECK(same_functor(invert_isomorphism(sw), sw));
  CHECK(is_fully_faithful(sw));
  CHECK(is_bijective_on_objects(sw));

  // kappa: id -> sw with components the unique morphisms X->Y, Y->X
  NaturalTransformation k{identity_functor(c), sw, {Vector{1}, Vector{1}}};
  CHECK(validate_transformation(k, true).ok());
  NaturalTransformation bad{identity_functor(c), sw, {Vector{2}, Vector{1}}};
  CHECK(!validate_transformation(bad, true).ok());
  CHECK(validate_transformation(identity_transformation(sw), true).ok());
}
