#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cxp/gaction.hpp"

using namespace cxp;

namespace {

ExactMatrix flip() { return ExactMatrix::from_rows({{0, 1}, {1, 0}}); }

// One object X with End = diagonal 2x2 matrices, basis e11, e22.
CategoryPtr diag2() {
  auto s = empty_spans({"X"}, {2});
  s.at(0, 0) = {ExactMatrix::from_rows({{1, 0}, {0, 0}}), ExactMatrix::from_rows({{0, 0}, {0, 1}})};
  return make_category(presentation_from_concrete(s));
}

// Z/2 swapping the two summands of C (+) C by conjugation with the flip.
GroupAction swap_action() {
  auto c = diag2();
  return action_from_spatial(FiniteGroup::cyclic(2), c, {{0}, {0}},
                             {{ExactMatrix::identity(2)}, {flip()}});
}

CategoryPtr complex_numbers() { return make_category(full_matrix_category({"*"}, {1})); }

// Dimension of the center of End(X), by brute force over the basis.
std::size_t center_dim(const Category& c, std::size_t x) {
  const std::size_t d = c.hom_dim(x, x);
  std::vector<Vector> rows;
  for (std::size_t b = 0; b < d; ++b) {
    Vector eb = unit_vector(d, b);
    // the map z |-> z b - b z, written as a d x d block
    ExactMatrix block(d, d);
    for (std::size_t k = 0; k < d; ++k) {
      Vector ek = unit_vector(d, k);
      Vector col = sub(c.compose(x, x, x, ek, eb), c.compose(x, x, x, eb, ek));
      for (std::size_t r = 0; r < d; ++r) block(r, k) = col[r];
    }
    for (std::size_t r = 0; r < d; ++r) rows.push_back(block.row(r));
  }
  return exact_kernel_basis(ExactMatrix::from_rows(rows)).size();
}

bool commutative_end(const Category& c, std::size_t x) { return center_dim(c, x) == c.hom_dim(x, x); }

// phi = id, rho(g) = chi(g) on a one-object category with trivial action.
WeaklyEquivariant character_twist(ActionPtr act, const std::vector<Scalar>& chi) {
  WeaklyEquivariant wf{act, act, identity_functor(act->category), {}};
  for (std::size_t g = 0; g < act->group.size(); ++g)
    wf.rho.push_back({scale(chi[g], act->category->identity(0))});
  return wf;
}

}  // namespace

TEST_CASE("finite groups") {
  FiniteGroup z3 = FiniteGroup::cyclic(3);
  CHECK(z3.size() == 3);
  CHECK(z3.abelian());
  CHECK(z3.mul(1, 2) == z3.identity());
  CHECK(z3.inv(1) == 2);

  FiniteGroup s3 = FiniteGroup::symmetric3();
  CHECK(s3.size() == 6);
  CHECK(!s3.abelian());
  for (std::size_t g = 0; g < 6; ++g) CHECK(s3.mul(g, s3.inv(g)) == s3.identity());
  auto s = s3.find("s"), r = s3.find("r");
  REQUIRE(s);
  REQUIRE(r);
  CHECK(s3.mul(*s, *s) == s3.identity());
  CHECK(s3.mul(*r, s3.mul(*r, *r)) == s3.identity());

  CHECK(FiniteGroup::by_name("Z4").size() == 4);
  CHECK(FiniteGroup::by_name("S3").size() == 6);
  CHECK(FiniteGroup::by_name("1").size() == 1);
  CHECK_THROWS_AS(FiniteGroup::by_name("Q8"), Error);
  // not associative: a 3-element loop
  CHECK_THROWS_AS(FiniteGroup({"e", "a", "b"}, {0, 1, 2, 1, 0, 0, 2, 0, 0}), Error);
  // identity need not be element 0
  FiniteGroup shifted({"a", "e"}, {1, 0, 0, 1});
  CHECK(shifted.identity() == 1);
}

TEST_CASE("validate_action") {
  GroupAction sw = swap_action();
  CHECK(validate_action(sw).ok());
  CHECK(sw.act(1, 0, 0, Vector{1, 0}) == Vector{0, 1});

  GroupAction bad = sw;
  bad.phi[1] = identity_functor(sw.category);  // spatial form still says flip
  CHECK(!validate_action(bad).ok());

  GroupAction bad2 = sw;
  (*bad2.spatial)[1][0] = ExactMatrix::from_rows({{0, 2}, {1, 0}});
  CHECK(!validate_action(bad2).ok());

  // V f V* leaving the hom space
  auto c = diag2();
  ExactMatrix h = ExactMatrix::from_rows({{1, 1}, {1, -1}});
  CHECK_THROWS_AS(action_from_spatial(FiniteGroup::cyclic(2), c, {{0}, {0}},
                                      {{ExactMatrix::identity(2)}, {h}}),
                  Error);
}

TEST_CASE("crossed product by the trivial group is the input") {
  auto m = make_category(full_matrix_category({"a", "b"}, {1, 2}));
  CrossedProduct cp = crossed_product(trivial_action(FiniteGroup::trivial(), m));
  CHECK(validate_presentation(*cp.category).ok());
  CHECK(validate_functor(cp.iota).ok());
  CHECK(is_fully_faithful(cp.iota));
  CHECK(is_bijective_on_objects(cp.iota));
  CHECK(is_unital_functor(cp.iota));
}

TEST_CASE("C x| Z/2 with trivial action") {
  CrossedProduct cp = crossed_product(trivial_action(FiniteGroup::cyclic(2), complex_numbers()));
  const Category& c = *cp.category;
  CHECK(c.hom_dim(0, 0) == 2);
  CHECK(validate_presentation(c).ok());
  CHECK(commutative_end(c, 0));
  // (1, g)^2 = (1, e)
  Vector s = unit_vector(2, cp.index(0, 0, 1, 0));
  CHECK(c.compose(0, 0, 0, s, s) == c.identity(0));
  CHECK(c.adjoint(0, 0, s) == s);
  CHECK(validate_functor(cp.iota).ok());
}

TEST_CASE("swap action: (C + C) x| Z/2 is M2") {
  GroupAction sw = swap_action();
  CrossedProduct cp = crossed_product(sw);
  const Category& c = *cp.category;
  CHECK(c.hom_dim(0, 0) == 4);
  CHECK(validate_presentation(c).ok());
  CHECK(center_dim(c, 0) == 1);

  // covariant rep: diag2 inside M2, pi(g) = flip
  auto m2 = make_category(full_matrix_category({"H"}, {2}));
  StarFunctor rho = blank_functor(sw.category, m2, {0});
  rho.hom_map(0, 0)(0, 0) = Scalar(1);
  rho.hom_map(0, 0)(3, 1) = Scalar(1);
  CovariantRep rep{rho, {{m2->identity(0)}, {Vector{0, 1, 1, 0}}}};
  CHECK(validate_covariant(rep, sw).ok());

  StarFunctor sigma = sigma_from_covariant(rep, cp);
  CHECK(validate_functor(sigma).ok());
  CHECK(is_fully_faithful(sigma));  // bijective on the 4-dim End
  // sigma((e1, g)) = flip diag(1, 0)
  Vector e1g = unit_vector(4, cp.index(0, 0, 1, 0));
  CHECK(realize(*m2, 0, 0, sigma.apply(0, 0, e1g)) == flip() * ExactMatrix::from_rows({{1, 0}, {0, 0}}));

  CovariantRep back = covariant_from_sigma(sigma, cp);
  CHECK(same_functor(back.rho, rho));
  CHECK(back.pi == rep.pi);

  CovariantRep broken = rep;
  broken.pi[1][0] = m2->identity(0);  // not natural for the swap
  CHECK(!validate_covariant(broken, sw).ok());
  CHECK_THROWS_AS(sigma_from_covariant(broken, cp), Error);
}

TEST_CASE("dimension law for S3 permuting three objects") {
  auto m = make_category(full_matrix_category({"a", "b", "c"}, {1, 1, 1}));
  FiniteGroup s3 = FiniteGroup::symmetric3();
  // permutation of {a, b, c} by the group element; 1x1 identity unitaries
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::vector<ExactMatrix>> V;
  auto r = *s3.find("r"), s = *s3.find("s");
  std::vector<std::size_t> pr{1, 2, 0}, ps{1, 0, 2};
  for (std::size_t g = 0; g < 6; ++g) {
    // express g as r^i s^j and compose the permutations accordingly
    std::vector<std::size_t> p{0, 1, 2};
    for (std::size_t i = 0; i < 3 && perms.size() == g; ++i)
      for (std::size_t j = 0; j < 2 && perms.size() == g; ++j) {
        std::size_t h = s3.identity();
        for (std::size_t k = 0; k < j; ++k) h = s3.mul(s, h);
        for (std::size_t k = 0; k < i; ++k) h = s3.mul(h, r);
        if (h != g) continue;
        std::vector<std::size_t> q{0, 1, 2};
        for (std::size_t k = 0; k < i; ++k)
          for (auto& x : q) x = pr[x];
        for (std::size_t k = 0; k < j; ++k)
          for (auto& x : q) x = ps[x];
        perms.push_back(q);
      }
    V.push_back(std::vector<ExactMatrix>(3, ExactMatrix::identity(1)));
  }
  REQUIRE(perms.size() == 6);
  GroupAction act = action_from_spatial(s3, m, perms, V);
  REQUIRE(validate_action(act).ok());
  CrossedProduct cp = crossed_product(act);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) CHECK(cp.category->hom_dim(a, b) == 6);
  CHECK(cp.category->total_dim() == 6 * m->total_dim());
  CHECK(validate_presentation(*cp.category).ok());
}

TEST_CASE("L(C) and the colimit presentation") {
  GroupAction sw = swap_action();
  CrossedProduct cp = crossed_product(sw);
  LConstruction l = L_of(sw, cp);
  const Category& lc = *l.lambda.source;
  CHECK(lc.size() == 2);
  CHECK(lc.object_name(0) == "X@e");
  CHECK(lc.object_name(1) == "X@g");
  CHECK(validate_presentation(lc).ok());
  CHECK(validate_action(l.action).ok());
  CHECK(validate_functor(l.lambda).ok());
  CHECK(is_equivariant(l.lambda, l.action, sw));
  CHECK(verify_unitary_equivalence(lambda_certificate(l)).verified());

  CHECK(validate_functor(l.c_alg).ok());
  CHECK(is_invariant(l.c_alg, l.action));
  CHECK(!is_invariant(l.lambda, l.action));

  StarFunctor id = colimit_factorization(l, cp, l.c_alg);
  CHECK(same_functor(id, identity_functor(cp.category)));

  // sigma' o c = phi and colimit(sigma' o c) = sigma'
  auto m2 = make_category(full_matrix_category({"H"}, {2}));
  StarFunctor rho = blank_functor(sw.category, m2, {0});
  rho.hom_map(0, 0)(0, 0) = Scalar(1);
  rho.hom_map(0, 0)(3, 1) = Scalar(1);
  StarFunctor sigma = sigma_from_covariant({rho, {{m2->identity(0)}, {Vector{0, 1, 1, 0}}}}, cp);
  StarFunctor phi = compose(sigma, l.c_alg);
  CHECK(is_invariant(phi, l.action));
  CHECK(same_functor(colimit_factorization(l, cp, phi), sigma));
  CHECK_THROWS_AS(colimit_factorization(l, cp, compose(rho, l.lambda)), Error);
}

TEST_CASE("weakly equivariant functors") {
  auto act = std::make_shared<const GroupAction>(trivial_action(FiniteGroup::cyclic(2), complex_numbers()));
  CrossedProduct cp = crossed_product(*act);

  WeaklyEquivariant id = strictly_equivariant(identity_functor(act->category), act, act);
  CHECK(validate_weakly_equivariant(id).ok());
  CHECK(same_functor(crossed_of_weakly_equivariant(id, cp, cp), identity_functor(cp.category)));

  WeaklyEquivariant chi = character_twist(act, {Scalar(1), Scalar(-1)});
  CHECK(validate_weakly_equivariant(chi).ok());
  StarFunctor twisted = crossed_of_weakly_equivariant(chi, cp, cp);
  CHECK(validate_functor(twisted).ok());
  CHECK(is_fully_faithful(twisted));
  Vector s = unit_vector(2, cp.index(0, 0, 1, 0));
  CHECK(twisted.apply(0, 0, s) == scale(Scalar(-1), s));
  // chi o chi is the trivial cocycle
  CHECK(compose(chi, chi).rho == id.rho);

  // i is not a cocycle on Z/2: rho(g)^2 = -1 != rho(e)
  WeaklyEquivariant bad = character_twist(act, {Scalar(1), Scalar(0, 1)});
  CHECK(!validate_weakly_equivariant(bad).ok());
  CHECK_THROWS_AS(crossed_of_weakly_equivariant(bad, cp, cp), Error);

  // kappa = 1 is compatible chi -> chi but not chi -> id
  std::vector<Vector> one{act->category->identity(0)};
  CHECK(validate_equivariant_transformation(chi, chi, one).ok());
  CHECK(!validate_equivariant_transformation(chi, id, one).ok());
  NaturalTransformation k = crossed_of_transformation(chi, chi, one, cp, cp);
  CHECK(validate_transformation(k, true).ok());
}

TEST_CASE("invert_weak_equivalence") {
  auto act = std::make_shared<const GroupAction>(trivial_action(FiniteGroup::cyclic(2), complex_numbers()));
  WeaklyEquivariant chi = character_twist(act, {Scalar(1), Scalar(-1)});
  WeakInverse inv = invert_weak_equivalence(chi, identity_functor(act->category), {act->category->identity(0)});
  REQUIRE(inv.verdict.verified());
  REQUIRE(inv.inverse);
  CHECK(inv.inverse->rho == chi.rho);  // chi is its own inverse

  // lambda : L(C) -> C with the section as inverse
  GroupAction sw = swap_action();
  CrossedProduct cp = crossed_product(sw);
  LConstruction l = L_of(sw, cp);
  auto la = std::make_shared<const GroupAction>(l.action);
  auto base = std::make_shared<const GroupAction>(sw);
  WeaklyEquivariant lam = strictly_equivariant(l.lambda, la, base);
  std::vector<Vector> kappa{sw.category->identity(0)};
  WeakInverse li = invert_weak_equivalence(lam, l.section, kappa);
  REQUIRE(li.verdict.verified());
  // lambda(g)_C : (C, e) -> g^-1 (gC, e) = (C, g^-1), the identity of C
  CHECK(li.inverse->rho[1][0] == sw.category->identity(0));

  // a non-fully-faithful phi is rejected
  auto pt = std::make_shared<const GroupAction>(trivial_action(FiniteGroup::cyclic(2), make_category(zero_category({"*"}))));
  StarFunctor z = blank_functor(act->category, pt->category, {0});
  WeaklyEquivariant zw{act, pt, z, {{Vector{}}, {Vector{}}}};
  CHECK_THROWS_AS(invert_weak_equivalence(zw, blank_functor(pt->category, act->category, {0}), {Vector{}}), Error);
}
