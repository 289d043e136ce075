#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cxp/constructions.hpp"

using namespace cxp;

namespace {

// One object with End = diagonal 2x2 matrices, basis e11, e22.
CategoryPtr diag2() {
  auto s = empty_spans({"X"}, {2});
  s.at(0, 0) = {ExactMatrix::from_rows({{1, 0}, {0, 0}}), ExactMatrix::from_rows({{0, 0}, {0, 1}})};
  return make_category(presentation_from_concrete(s));
}

// The ideal spanned by e11 in diag2.
IdealInclusion first_coordinate(CategoryPtr d) {
  return ideal_from_subspaces(d, {{Vector{1, 0}}});
}

}  // namespace

TEST_CASE("unitalize examples") {
  auto pt = make_category(zero_category({"*"}));
  Unitalization u = unitalize(pt);
  CHECK(u.plus->size() == 1);
  CHECK(u.plus->hom_dim(0, 0) == 1);
  CHECK(validate_presentation(*u.plus).ok());

  // 0[X]+ = C[X]
  Unitalization u2 = unitalize(make_category(zero_category({"x", "y"})));
  CHECK(u2.plus->hom_dim(0, 0) == 1);
  CHECK(u2.plus->hom_dim(1, 1) == 1);
  CHECK(u2.plus->hom_dim(0, 1) == 0);
  CHECK(u2.plus->hom_dim(1, 0) == 0);
  CHECK(validate_presentation(*u2.plus).ok());

  auto m2 = make_category(full_matrix_category({"X"}, {2}));
  Unitalization u3 = unitalize(m2);
  CHECK(u3.plus->hom_dim(0, 0) == 5);
  CHECK(validate_presentation(*u3.plus).ok());
  CHECK(validate_functor(u3.alpha).ok());
  CHECK(!is_unital_functor(u3.alpha));
}

TEST_CASE("unitalization product rule") {
  auto m2 = make_category(full_matrix_category({"X"}, {2}));
  Unitalization u = unitalize(m2);
  const Category& p = *u.plus;
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 20; ++t) {
    Vector f(4), g(4);
    for (auto& x : f) x = Scalar(d(rng), d(rng));
    for (auto& x : g) x = Scalar(d(rng), d(rng));
    Scalar lf(d(rng), d(rng)), lg(d(rng), d(rng));
    Vector fp = f, gp = g;
    fp.push_back(lf);
    gp.push_back(lg);
    // (g, lg)(f, lf) = (g f + lg f + lf g, lg lf), computed in M2 directly
    Vector expect = add(add(m2->compose(0, 0, 0, g, f), scale(lg, f)), scale(lf, g));
    expect.push_back(lg * lf);
    CHECK(p.compose(0, 0, 0, gp, fp) == expect);
    Vector star = m2->adjoint(0, 0, f);
    star.push_back(lf.conj());
    CHECK(p.adjoint(0, 0, fp) == star);
  }
}

TEST_CASE("unitalization adjunction") {
  auto c = make_category(full_matrix_category({"X", "Y"}, {1, 2}));
  Unitalization cu = unitalize(c);
  StarFunctor phi = identity_functor(c);
  StarFunctor ext = extend_to_unitalization(cu, phi);
  CHECK(validate_functor(ext).ok());
  CHECK(is_unital_functor(ext));
  CHECK(same_functor(compose(ext, cu.alpha), phi));
  CHECK(extension_is_unique(cu));

  Unitalization pu = unitalize(cu.plus);
  StarFunctor eps_plus = unitalization_counit(pu);
  // epsilon_{C+} o (alpha_C)+ = id_{C+}
  CHECK(same_functor(compose(eps_plus, unitalization_map(cu, pu, cu.alpha)), identity_functor(cu.plus)));
  // epsilon_D o alpha_D = id_D for unital D
  Unitalization du = unitalize(c);
  CHECK(same_functor(compose(unitalization_counit(du), du.alpha), identity_functor(c)));
}

TEST_CASE("projection_subcategory examples") {
  auto m2 = make_category(full_matrix_category({"D"}, {2}));
  Subcategory same = projection_subcategory(m2, {{0, m2->identity(0)}});
  CHECK(same.cat->hom_dim(0, 0) == 4);
  Subcategory corner = projection_subcategory(m2, {{0, Vector{1, 0, 0, 0}}});
  CHECK(corner.cat->hom_dim(0, 0) == 1);
  CHECK(corner.cat->unital());
  CHECK(validate_presentation(*corner.cat).ok());
  Subcategory zero = projection_subcategory(m2, {{0, Vector{0, 0, 0, 0}}});
  CHECK(zero.cat->hom_dim(0, 0) == 0);
  CHECK_THROWS_AS(projection_subcategory(m2, {{0, Vector{0, 1, 0, 0}}}), Error);
  // two corners of the same object: Hom spaces e_jj M2 e_ii are one-dimensional
  Subcategory two = projection_subcategory(m2, {{0, Vector{1, 0, 0, 0}}, {0, Vector{0, 0, 0, 1}}});
  CHECK(two.cat->hom_dim(0, 1) == 1);
  CHECK(validate_presentation(*two.cat).ok());
  CHECK(validate_functor(two.inclusion).ok());
}

TEST_CASE("kernel_ideal examples") {
  auto d = diag2();
  IdealInclusion k0 = kernel_ideal(identity_functor(d));
  CHECK(k0.ideal->hom_dim(0, 0) == 0);

  // projection onto the second coordinate
  auto line = make_category(full_matrix_category({"X"}, {1}));
  StarFunctor second = blank_functor(d, line, {0});
  second.hom_map(0, 0) = ExactMatrix::from_rows({{0, 1}});
  REQUIRE(validate_functor(second).ok());
  IdealInclusion k = kernel_ideal(second);
  CHECK(k.ideal->hom_dim(0, 0) == 1);
  CHECK(validate_ideal(k).ok());
  CHECK(validate_presentation(*k.ideal).ok());
  CHECK(k.ideal->concrete.has_value());

  auto z = make_category(zero_category({"X"}));
  IdealInclusion all = kernel_ideal(blank_functor(d, z, {0}));
  CHECK(all.ideal->hom_dim(0, 0) == 2);
}

TEST_CASE("quotient_by_ideal examples") {
  auto d = diag2();
  Quotient q0 = quotient_by_ideal(kernel_ideal(identity_functor(d)));
  CHECK(q0.cat->hom_dim(0, 0) == 2);
  CHECK(q0.has_rep);

  IdealInclusion inc = first_coordinate(d);
  Quotient q = quotient_by_ideal(inc);
  CHECK(q.cat->hom_dim(0, 0) == 1);
  CHECK(validate_presentation(*q.cat).ok());
  REQUIRE(q.has_rep);
  // diag(3,2) = 3 e11 + 2 e22 has quotient norm 2
  Morphism x{0, 0, Vector{3, 2}};
  Morphism qx = q.qmap.apply(x);
  CHECK(std::abs(norm(*q.cat, qx) - 2.0) < 1e-8);
  CHECK(norm(*q.cat, qx) <= norm(*d, x) + 1e-8);

  Quotient qa = quotient_by_ideal(ideal_from_subspaces(d, {{Vector{1, 0}, Vector{0, 1}}}));
  CHECK(qa.cat->hom_dim(0, 0) == 0);
}

TEST_CASE("kernel of quotient map is the ideal") {
  auto c = make_category(full_matrix_category({"A", "B"}, {2, 1}));
  // ideal: everything factoring through B
  std::vector<std::vector<Vector>> spans(4);
  spans[0 * 2 + 1] = {unit_vector(2, 0), unit_vector(2, 1)};
  spans[1 * 2 + 0] = {unit_vector(2, 0), unit_vector(2, 1)};
  spans[1 * 2 + 1] = {unit_vector(1, 0)};
  // in End(A) = M2 the maps factoring through the 1-dim B are all of M2
  for (std::size_t k = 0; k < 4; ++k) spans[0].push_back(unit_vector(4, k));
  IdealInclusion inc = ideal_from_subspaces(c, spans);
  REQUIRE(validate_ideal(inc).ok());
  Quotient q = quotient_by_ideal(inc);
  IdealInclusion back = kernel_ideal(q.qmap);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      CHECK(back.ideal->hom_dim(a, b) == inc.ideal->hom_dim(a, b));
      // same subspace: stacking both spans does not raise the rank
      std::vector<Vector> cols;
      for (std::size_t k = 0; k < back.inclusion.hom_map(a, b).cols(); ++k)
        cols.push_back(back.inclusion.hom_map(a, b).column(k));
      for (std::size_t k = 0; k < inc.inclusion.hom_map(a, b).cols(); ++k)
        cols.push_back(inc.inclusion.hom_map(a, b).column(k));
      if (!cols.empty())
        CHECK(exact_rank(ExactMatrix::from_columns(c->hom_dim(a, b), cols)) == inc.ideal->hom_dim(a, b));
    }
  CHECK(check_exact(inc.inclusion, q.qmap).verified());
}

TEST_CASE("is_quotient_morphism and check_exact") {
  auto d = diag2();
  CHECK(is_quotient_morphism(identity_functor(d)).verified());
  IdealInclusion inc = first_coordinate(d);
  CHECK(!is_quotient_morphism(inc.inclusion).verified());
  auto line = make_category(full_matrix_category({"X"}, {1}));
  StarFunctor second = blank_functor(d, line, {0});
  second.hom_map(0, 0) = ExactMatrix::from_rows({{0, 1}});
  CHECK(is_quotient_morphism(second).verified());

  // 0 -> 0 -> D -> D -> 0
  IdealInclusion zero = kernel_ideal(identity_functor(d));
  CHECK(check_exact(zero.inclusion, identity_functor(d)).verified());
  Quotient q = quotient_by_ideal(inc);
  CHECK(check_exact(inc.inclusion, q.qmap).verified());
  // ideal strictly smaller than the kernel
  CHECK(!check_exact(zero.inclusion, second).verified());
}

TEST_CASE("unitarily_isomorphic examples") {
  auto c = make_category(full_matrix_category({"X", "Y", "Z"}, {2, 2, 1}));
  auto same = unitarily_isomorphic(*c, 0, 0);
  CHECK(same.verdict.verified());
  auto xy = unitarily_isomorphic(*c, 0, 1);
  CHECK(xy.verdict.verified());
  REQUIRE(xy.witness.has_value());
  CHECK(xy.witness->residual <= 1e-8);
  auto xz = unitarily_isomorphic(*c, 0, 2);
  CHECK(xz.verdict.status == Status::refuted);
  CHECK(unitarily_isomorphic(*c, 2, 0).verdict.status == Status::refuted);

  // direct sums: objects C^2 (+) C and C (+) C^2 inside a block-diagonal
  // category where the two summand types are orthogonal
  auto s = empty_spans({"P", "Q"}, {3, 3});
  auto blk = [](std::size_t r, std::size_t c) {
    ExactMatrix m(3, 3);
    m(r, c) = Scalar(1);
    return m;
  };
  // P = C^2 (block 1) (+) C (block 2); Q = C (block 1) (+) C^2 (block 2)
  std::vector<std::pair<std::size_t, std::size_t>> p1{{0, 0}, {0, 1}, {1, 0}, {1, 1}}, p2{{2, 2}};
  for (auto [r, cc] : p1) s.at(0, 0).push_back(blk(r, cc));
  for (auto [r, cc] : p2) s.at(0, 0).push_back(blk(r, cc));
  s.at(1, 1) = {blk(0, 0), blk(1, 1), blk(1, 2), blk(2, 1), blk(2, 2)};
  // Hom(P,Q): block 1 maps C^2 -> C (row 0, cols 0..1); block 2 maps C -> C^2 (rows 1..2, col 2)
  s.at(0, 1) = {blk(0, 0), blk(0, 1), blk(1, 2), blk(2, 2)};
  s.at(1, 0) = {blk(0, 0), blk(1, 0), blk(2, 1), blk(2, 2)};
  auto pq = make_category(presentation_from_concrete(s));
  REQUIRE(validate_presentation(*pq).ok());
  CHECK(unitarily_isomorphic(*pq, 0, 1).verdict.status == Status::refuted);
}

TEST_CASE("unitarily_isomorphic is symmetric and transitive on decided instances") {
  auto c = make_category(full_matrix_category({"A", "B", "C", "D"}, {1, 2, 1, 2}));
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) {
      auto xy = unitarily_isomorphic(*c, x, y).verdict.status;
      auto yx = unitarily_isomorphic(*c, y, x).verdict.status;
      CHECK(xy == yx);
      for (std::size_t z = 0; z < 4; ++z) {
        auto yz = unitarily_isomorphic(*c, y, z).verdict.status;
        if (xy == Status::verified && yz == Status::verified)
          CHECK(unitarily_isomorphic(*c, x, z).verdict.status == Status::verified);
      }
    }
}

TEST_CASE("verify_unitary_equivalence examples") {
  auto c = make_category(full_matrix_category({"X", "Y"}, {1, 1}));
  CHECK(verify_unitary_equivalence(identity_certificate(c)).verified());

  UnitaryEquivalenceCertificate bad = identity_certificate(c);
  bad.eta.components[0] = Vector{2};
  CHECK(!verify_unitary_equivalence(bad).verified());

  // inclusion of {X} into {X, Y}, X and Y unitarily isomorphic via u = 1
  auto x = make_category(full_matrix_category({"X"}, {1}));
  StarFunctor inc = blank_functor(x, c, {0});
  inc.hom_map(0, 0) = ExactMatrix::identity(1);
  StarFunctor back = blank_functor(c, x, {0, 0});
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) back.hom_map(a, b) = ExactMatrix::identity(1);
  UnitaryEquivalenceCertificate cert;
  cert.forward = inc;
  cert.backward = back;
  cert.eta = NaturalTransformation{compose(back, inc), identity_functor(x), {Vector{1}}};
  // eps_X : X -> X is id, eps_Y : X -> Y is the witness
  cert.eps = NaturalTransformation{compose(inc, back), identity_functor(c), {Vector{1}, Vector{1}}};
  CHECK(verify_unitary_equivalence(cert).verified());

  // transport along the object swap of the target
  StarFunctor sw = blank_functor(c, c, {1, 0});
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) sw.hom_map(a, b) = ExactMatrix::identity(1);
  auto moved = transport_certificate(cert, identity_functor(x), sw);
  CHECK(moved.forward.object_map == std::vector<std::size_t>{1});
  CHECK(verify_unitary_equivalence(moved).verified());
}

TEST_CASE("check_excisive examples") {
  auto d = diag2();
  IdealInclusion inc = first_coordinate(d);
  // A = C, B = D with identities
  ExcisiveSquare trivial{inc.inclusion, inc.inclusion, identity_functor(inc.ideal), identity_functor(d), {}};
  auto r = check_excisive(trivial);
  CHECK(r.verdict.verified());
  REQUIRE(r.top.has_value());
  trivial.certificate = identity_certificate(r.top->cat);
  CHECK(check_excisive(trivial).verdict.verified());

  // B/A -> D/C not surjective: A = e11 in B = diag2, C = e11 in D = diag3
  // D: End spanned by diagonal 3x3; C: the e11 line
  auto s = empty_spans({"X"}, {3});
  for (std::size_t k = 0; k < 3; ++k) {
    ExactMatrix m(3, 3);
    m(k, k) = Scalar(1);
    s.at(0, 0).push_back(m);
  }
  auto d3 = make_category(presentation_from_concrete(s));
  IdealInclusion c3 = ideal_from_subspaces(d3, {{unit_vector(3, 0)}});
  StarFunctor beta = blank_functor(d, d3, {0});
  beta.hom_map(0, 0) = ExactMatrix::from_rows({{1, 0}, {0, 1}, {0, 0}});
  StarFunctor alpha = blank_functor(inc.ideal, c3.ideal, {0});
  alpha.hom_map(0, 0) = ExactMatrix::identity(1);
  ExcisiveSquare sq{inc.inclusion, c3.inclusion, alpha, beta, {}};
  auto rr = check_excisive(sq);
  CHECK(rr.verdict.status == Status::refuted);
}
