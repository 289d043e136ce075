#include "cxp/matrixbridge.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cxp {

namespace {

Verdict from_report(const ValidationReport& r, const std::string& ok_note) {
  return r.ok() ? Verdict::yes(ok_note) : Verdict::no(r.summary());
}

}  // namespace

// ---------------------------------------------------------------------------
// Total algebra

std::array<std::size_t, 3> TotalAlgebra::block(std::size_t k) const {
  const std::size_t n = source->size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t off = offsets[a * n + b];
      if (k >= off && k < off + source->hom_dim(a, b)) return {a, b, k - off};
    }
  throw Error("total algebra index out of range");
}

TotalAlgebra a_alg(CategoryPtr cp) {
  const Category& c = *cp;
  const std::size_t n = c.size();
  std::vector<std::size_t> offsets(n * n);
  std::size_t total = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      offsets[a * n + b] = total;
      total += c.hom_dim(a, b);
    }
  auto idx = [&](std::size_t a, std::size_t b, std::size_t f) { return offsets[a * n + b] + f; };

  Category alg({"A"}, {total});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t e = 0; e < n; ++e)
        for (std::size_t g = 0; g < c.hom_dim(b, e); ++g)
          for (std::size_t f = 0; f < c.hom_dim(a, b); ++f) {
            SparseVector v = c.comp(a, b, e, g, f);
            if (v.empty()) continue;
            for (auto& t : v) t.index = static_cast<std::uint32_t>(idx(a, e, t.index));
            alg.set_comp(0, 0, 0, idx(b, e, g), idx(a, b, f), std::move(v));
          }
  ExactMatrix star(total, total);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const ExactMatrix& s = c.star(a, b);
      for (std::size_t f = 0; f < s.cols(); ++f)
        for (std::size_t r = 0; r < s.rows(); ++r)
          if (!s(r, f).is_zero()) star(idx(b, a, r), idx(a, b, f)) = s(r, f);
    }
  alg.set_star(0, 0, std::move(star));
  bool unital = c.unital();
  for (std::size_t a = 0; a < n; ++a) unital = unital && c.unit(a).has_value();
  if (unital) {
    Vector u(total);
    for (std::size_t a = 0; a < n; ++a) {
      const Vector& id = *c.unit(a);
      for (std::size_t k = 0; k < id.size(); ++k) u[idx(a, a, k)] = id[k];
    }
    alg.set_unit(0, std::move(u));
  }
  alg.set_unital(unital);

  if (c.concrete) {
    const auto& hd = c.concrete->hilbert_dims;
    std::vector<std::size_t> hoff(n + 1, 0);
    for (std::size_t a = 0; a < n; ++a) hoff[a + 1] = hoff[a] + hd[a];
    ConcreteRep rep{{hoff[n]}, {std::vector<ExactMatrix>(total)}};
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t f = 0; f < c.hom_dim(a, b); ++f) {
          const ExactMatrix& m = c.concrete->hom_basis(a, b)[f];
          ExactMatrix big(hoff[n], hoff[n]);
          for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t s = 0; s < m.cols(); ++s) big(hoff[b] + r, hoff[a] + s) = m(r, s);
          rep.basis[0][idx(a, b, f)] = std::move(big);
        }
    alg.concrete = std::move(rep);
  }

  TotalAlgebra out{cp, make_category(std::move(alg)), {}, std::move(offsets)};
  out.rho = blank_functor(cp, out.algebra, std::vector<std::size_t>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t f = 0; f < c.hom_dim(a, b); ++f) out.rho.hom_map(a, b)(out.index(a, b, f), f) = Scalar(1);
  return out;
}

StarFunctor a_alg_map(const StarFunctor& phi, const TotalAlgebra& src, const TotalAlgebra& tgt) {
  StarFunctor out = blank_functor(src.algebra, tgt.algebra, {0});
  ExactMatrix& m = out.hom_map(0, 0);
  const std::size_t n = src.source->size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const ExactMatrix& h = phi.hom_map(a, b);
      const std::size_t x = phi.object_map[a], y = phi.object_map[b];
      for (std::size_t f = 0; f < h.cols(); ++f)
        for (std::size_t r = 0; r < h.rows(); ++r)
          if (!h(r, f).is_zero()) m(tgt.index(x, y, r), src.index(a, b, f)) = h(r, f);
    }
  return out;
}

Verdict check_algebra_exact(const StarFunctor& ai, const StarFunctor& aq) {
  const ExactMatrix& mi = ai.hom_map(0, 0);
  const ExactMatrix& mq = aq.hom_map(0, 0);
  if (mi.rows() != mq.cols()) return Verdict::no("A(i) and A(q) are not composable");
  if (mi.cols() + mq.rows() != mi.rows())
    return Verdict::no("dim A(D) = " + std::to_string(mi.rows()) + " but dim A(C) + dim A(Q) = " +
                       std::to_string(mi.cols() + mq.rows()));
  if (exact_rank(mi) != mi.cols()) return Verdict::no("A(i) is not injective");
  if (exact_rank(mq) != mq.rows()) return Verdict::no("A(q) is not surjective");
  ExactMatrix prod = mq * mi;
  for (std::size_t r = 0; r < prod.rows(); ++r)
    for (std::size_t c = 0; c < prod.cols(); ++c)
      if (!prod(r, c).is_zero()) return Verdict::no("A(q) A(i) != 0");
  return Verdict::yes("dim " + std::to_string(mi.rows()) + " = " + std::to_string(mi.cols()) + " + " +
                      std::to_string(mq.rows()) + ", kernel = image");
}

// ---------------------------------------------------------------------------
// nu

GroupAction algebra_action(const GroupAction& act, const TotalAlgebra& alg) {
  const FiniteGroup& G = act.group;
  GroupAction out{G, alg.algebra, {}, std::nullopt};
  for (std::size_t g = 0; g < G.size(); ++g) out.phi.push_back(a_alg_map(act.phi[g], alg, alg));
  const Category& c = *act.category;
  if (act.spatial && c.concrete) {
    const auto& hd = c.concrete->hilbert_dims;
    const std::size_t n = c.size();
    std::vector<std::size_t> hoff(n + 1, 0);
    for (std::size_t a = 0; a < n; ++a) hoff[a + 1] = hoff[a] + hd[a];
    out.spatial.emplace();
    for (std::size_t g = 0; g < G.size(); ++g) {
      ExactMatrix big(hoff[n], hoff[n]);
      for (std::size_t a = 0; a < n; ++a) {
        const ExactMatrix& v = (*act.spatial)[g][a];
        const std::size_t ga = act.act(g, a);
        for (std::size_t r = 0; r < v.rows(); ++r)
          for (std::size_t s = 0; s < v.cols(); ++s) big(hoff[ga] + r, hoff[a] + s) = v(r, s);
      }
      out.spatial->push_back({std::move(big)});
    }
  }
  return out;
}

NuMap nu_map(const GroupAction& act) {
  const FiniteGroup& G = act.group;
  TotalAlgebra base = a_alg(act.category);
  CrossedProduct left = crossed_product(algebra_action(act, base));
  CrossedProduct cp = crossed_product(act);
  TotalAlgebra right = a_alg(cp.category);
  StarFunctor nu = blank_functor(left.category, right.algebra, {0});
  ExactMatrix& m = nu.hom_map(0, 0);
  for (std::size_t g = 0; g < G.size(); ++g)
    for (std::size_t k = 0; k < base.dimension(); ++k) {
      auto [a, b, j] = base.block(k);
      const std::size_t gb = act.act(g, b);
      m(right.index(a, gb, cp.index(a, gb, g, j)), left.index(0, 0, g, k)) = Scalar(1);
    }
  NuMap out{std::move(base), std::move(left), std::move(cp), std::move(right), std::move(nu), {}};
  const ExactMatrix& h = out.nu.hom_map(0, 0);
  if (h.rows() != h.cols()) {
    out.verdict = Verdict::no("dimensions differ: " + std::to_string(h.cols()) + " vs " + std::to_string(h.rows()));
    return out;
  }
  if (exact_rank(h) != h.rows()) {
    out.verdict = Verdict::no("nu is not bijective");
    return out;
  }
  out.verdict = from_report(validate_functor(out.nu),
                            "bijective *-homomorphism of dimension " + std::to_string(h.rows()));
  return out;
}

// ---------------------------------------------------------------------------
// Regular representation

RegularRep regular_representation(const CrossedProduct& cp) {
  const GroupAction& act = cp.action;
  const Category& c = *act.category;
  if (!act.spatial) throw Error("regular_representation: the action has no spatial form");
  if (!c.concrete) throw Error("regular_representation: the category is not concrete");
  const FiniteGroup& G = act.group;
  const std::size_t n = c.size(), m = G.size();
  const auto& hd = c.concrete->hilbert_dims;
  const auto& V = *act.spatial;

  RegularRep out;
  out.fiber_offsets.assign(n, std::vector<std::size_t>(m + 1, 0));
  ConcreteRep rep{std::vector<std::size_t>(n), std::vector<std::vector<ExactMatrix>>(n * n)};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t h = 0; h < m; ++h)
      out.fiber_offsets[a][h + 1] = out.fiber_offsets[a][h] + hd[act.act(G.inv(h), a)];
    rep.hilbert_dims[a] = out.fiber_offsets[a][m];
  }
  const Category& x = *cp.category;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < x.hom_dim(a, b); ++k) {
        auto [g, j] = cp.summand(a, b, k);
        const std::size_t gib = act.act(G.inv(g), b);
        const ExactMatrix& mf = c.concrete->hom_basis(a, gib)[j];
        ExactMatrix big(rep.hilbert_dims[b], rep.hilbert_dims[a]);
        for (std::size_t h = 0; h < m; ++h) {
          const std::size_t hi = G.inv(h);
          ExactMatrix blk = V[hi][gib] * mf * V[hi][a].adjoint();
          const std::size_t r0 = out.fiber_offsets[b][G.mul(g, h)], c0 = out.fiber_offsets[a][h];
          for (std::size_t r = 0; r < blk.rows(); ++r)
            for (std::size_t s = 0; s < blk.cols(); ++s) big(r0 + r, c0 + s) = blk(r, s);
        }
        rep.basis[a * n + b].push_back(std::move(big));
      }
  Category withrep = x;
  withrep.concrete = std::move(rep);
  out.verdict = from_report(validate_concrete(withrep), "faithful *-representation, exact");
  out.category = make_category(std::move(withrep));
  return out;
}

double max_norm(const RegularRep& reg, const Morphism& x) { return norm(*reg.category, x); }

CovariantFamilyCheck covariant_family_check(const RegularRep& reg, const Morphism& x, std::uint64_t seed,
                                            double tol) {
  CovariantFamilyCheck out;
  const Category& c = *reg.category;
  if (x.source != x.target) throw Error("covariant_family_check: element must be an endomorphism");
  const std::size_t a = x.source;
  const std::size_t N = c.concrete->hilbert_dims[a];
  out.regular = max_norm(reg, x);
  out.supremum = out.regular;
  out.family_size = 1;
  if (N == 0) {
    out.verdict = Verdict::yes("zero Hilbert space");
    return out;
  }
  if (N > 24) {
    out.verdict = Verdict::unsure("Hilbert space of dimension " + std::to_string(N) + " is too large for the commutant");
    return out;
  }
  // commutant of the representation of End(a): null space of sum_k A_k* A_k
  // with A_k vec(T) = vec(T B_k - B_k T)
  const std::size_t N2 = N * N;
  NumericMatrix gram = NumericMatrix::Zero(N2, N2);
  NumericMatrix I = NumericMatrix::Identity(N, N);
  for (const auto& bk : c.concrete->hom_basis(a, a)) {
    NumericMatrix B = to_numeric(bk);
    NumericMatrix A(N2, N2);
    // column-major vec: vec(T B) = (B^T (x) I) vec T, vec(B T) = (I (x) B) vec T
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        A.block(i * N, j * N, N, N) = B(j, i) * I;
        if (i == j) A.block(i * N, j * N, N, N) -= B;
      }
    gram += A.adjoint() * A;
  }
  HermitianEigen ge = hermitian_eigen(gram);
  const double top = std::max(1.0, ge.values.cwiseAbs().maxCoeff());
  std::vector<NumericMatrix> commutant;
  for (Eigen::Index k = 0; k < ge.values.size(); ++k)
    if (std::abs(ge.values[k]) <= 1e-9 * top)
      commutant.push_back(Eigen::Map<const NumericMatrix>(ge.vectors.col(k).data(), N, N));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  NumericMatrix T = NumericMatrix::Zero(N, N);
  const std::complex<double> i(0.0, 1.0);
  for (const auto& z : commutant) T += nd(rng) * (z + z.adjoint()) + nd(rng) * i * (z - z.adjoint());
  HermitianEigen te = hermitian_eigen(T);
  const double scale = std::max(1.0, te.values.cwiseAbs().maxCoeff());

  NumericMatrix X = realize_numeric(c, a, a, x.coords);
  Eigen::Index start = 0;
  for (Eigen::Index k = 1; k <= te.values.size(); ++k) {
    if (k < te.values.size() && te.values[k] - te.values[k - 1] <= 1e-6 * scale) continue;
    NumericMatrix P = te.vectors.middleCols(start, k - start);
    out.supremum = std::max(out.supremum, operator_norm(P.adjoint() * X * P));
    ++out.family_size;
    start = k;
  }
  double diff = std::abs(out.supremum - out.regular);
  std::string ev = "regular " + std::to_string(out.regular) + ", supremum over " +
                   std::to_string(out.family_size) + " covariant pairs " + std::to_string(out.supremum);
  out.verdict = diff <= tol * std::max(1.0, out.regular) ? Verdict::yes(ev) : Verdict::no(ev);
  return out;
}

// ---------------------------------------------------------------------------
// Completion

double SeminormedCategory::seminorm(const Morphism& x) const {
  const auto& ms = maps[x.source * cat->size() + x.target];
  if (ms.empty()) return 0.0;
  NumericMatrix acc = NumericMatrix::Zero(ms[0].rows(), ms[0].cols());
  for (std::size_t k = 0; k < ms.size(); ++k)
    if (!x.coords[k].is_zero()) acc += x.coords[k].to_complex() * to_numeric(ms[k]);
  return operator_norm(acc);
}

std::vector<Vector> SeminormedCategory::null_space(std::size_t a, std::size_t b) const {
  const auto& ms = maps[a * cat->size() + b];
  const std::size_t d = cat->hom_dim(a, b);
  if (ms.empty()) {
    std::vector<Vector> all;
    for (std::size_t k = 0; k < d; ++k) all.push_back(unit_vector(d, k));
    return all;
  }
  std::vector<Vector> cols;
  for (const auto& m : ms) cols.push_back(m.vec());
  return exact_kernel_basis(ExactMatrix::from_columns(ms[0].rows() * ms[0].cols(), cols));
}

SeminormedCategory seminormed_from_concrete(CategoryPtr c) {
  if (!c->concrete) throw Error("seminormed_from_concrete: no concrete representation");
  return {c, c->concrete->basis};
}

Completion complete(const SeminormedCategory& sn) {
  const std::size_t n = sn.cat->size();
  std::vector<std::vector<Vector>> spans(n * n);
  bool zero = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      spans[a * n + b] = sn.null_space(a, b);
      zero = zero && spans[a * n + b].empty();
    }
  if (!zero) return {quotient_by_ideal(ideal_from_subspaces(sn.cat, spans)), false};
  Quotient q;
  q.cat = sn.cat;
  q.qmap = identity_functor(sn.cat);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) q.lifts.push_back(ExactMatrix::identity(sn.cat->hom_dim(a, b)));
  q.has_rep = sn.cat->concrete.has_value();
  return {std::move(q), true};
}

// ---------------------------------------------------------------------------
// Multipliers

namespace {

Vector nu_of(const CrossedProduct& cp, const TotalAlgebra& alg, std::size_t g) {
  const Category& c = *cp.action.category;
  Vector v(alg.dimension());
  for (std::size_t a = 0; a < c.size(); ++a) {
    const std::size_t ga = cp.action.act(g, a);
    const Vector& id = *c.unit(a);
    for (std::size_t k = 0; k < id.size(); ++k) v[alg.index(a, ga, cp.index(a, ga, g, k))] = id[k];
  }
  return v;
}

}  // namespace

MultiplierShift multiplier_shift(const CrossedProduct& cp, const TotalAlgebra& alg, std::size_t g) {
  const GroupAction& act = cp.action;
  if (!act.category->unital() || !alg.algebra->unital())
    throw Error("multiplier_shift: the crossed product is not unital");
  const FiniteGroup& G = act.group;
  const std::size_t D = alg.dimension();
  const std::size_t gi = G.inv(g);
  MultiplierShift out{ExactMatrix(D, D), ExactMatrix(D, D), nu_of(cp, alg, g), {}};
  for (std::size_t k = 0; k < D; ++k) {
    auto [a, b, j] = alg.block(k);
    auto [h, f] = cp.summand(a, b, j);
    const std::size_t gb = act.act(g, b);
    out.left(alg.index(a, gb, cp.index(a, gb, G.mul(g, h), f)), k) = Scalar(1);
    const std::size_t hib = act.act(G.inv(h), b), gia = act.act(gi, a);
    Vector moved = act.act(gi, a, hib, unit_vector(act.category->hom_dim(a, hib), f));
    for (std::size_t r = 0; r < moved.size(); ++r)
      if (!moved[r].is_zero()) out.right(alg.index(gia, b, cp.index(gia, b, G.mul(h, g), r)), k) = moved[r];
  }

  const Category& A = *alg.algebra;
  auto mul = [&](const Vector& y, const Vector& x) { return A.compose(0, 0, 0, y, x); };
  const Vector& one = *A.unit(0);
  auto fail = [&](std::string why) {
    out.verdict = Verdict::no(std::move(why));
    return out;
  };
  for (std::size_t k = 0; k < D; ++k) {
    Vector x = unit_vector(D, k);
    if (out.left.apply(x) != mul(out.nu, x)) return fail("L(g) x != nu(g) x at basis " + std::to_string(k));
    if (out.right.apply(x) != mul(x, out.nu)) return fail("R(g) x != x nu(g) at basis " + std::to_string(k));
  }
  for (std::size_t k = 0; k < D; ++k)
    for (std::size_t l = 0; l < D; ++l) {
      Vector y = unit_vector(D, k), x = unit_vector(D, l);
      if (mul(out.right.apply(y), x) != mul(y, out.left.apply(x)))
        return fail("centralizer relation fails at (" + std::to_string(k) + "," + std::to_string(l) + ")");
    }
  Vector adj = A.adjoint(0, 0, out.nu);
  if (mul(adj, out.nu) != one || mul(out.nu, adj) != one) return fail("nu(g) is not unitary");
  for (std::size_t h = 0; h < G.size(); ++h)
    if (mul(out.nu, nu_of(cp, alg, h)) != nu_of(cp, alg, G.mul(g, h)))
      return fail("nu(g) nu(" + G.name(h) + ") != nu(g" + G.name(h) + ")");
  out.verdict = Verdict::yes("centralizer relation, unitarity and group law hold exactly");
  return out;
}

}  // namespace cxp
