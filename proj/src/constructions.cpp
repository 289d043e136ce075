#include "cxp/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace cxp {

namespace {

std::string hom_label(const Category& c, std::size_t a, std::size_t b) {
  return c.object_name(a) + "->" + c.object_name(b);
}

// Echelon data of a subspace of a coordinate space: the echelon complement
// (non-pivot standard vectors) spans a complement, and `quotient` maps v to
// its coordinates modulo the subspace along that complement.
struct SubspaceEchelon {
  std::size_t dim = 0;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> free;
  ExactMatrix quotient;  // free.size() x dim
  ExactMatrix lift;      // dim x free.size()

  explicit SubspaceEchelon(std::size_t d, const std::vector<Vector>& span) : dim(d) {
    ExactMatrix rows = span.empty() ? ExactMatrix(0, d) : ExactMatrix::from_rows(span);
    Echelon e = row_echelon(rows);
    pivots = e.pivots;
    std::vector<bool> is_pivot(d, false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t k = 0; k < d; ++k)
      if (!is_pivot[k]) free.push_back(k);
    quotient = ExactMatrix(free.size(), d);
    lift = ExactMatrix(d, free.size());
    for (std::size_t j = 0; j < free.size(); ++j) {
      quotient(j, free[j]) = Scalar(1);
      lift(free[j], j) = Scalar(1);
      for (std::size_t i = 0; i < pivots.size(); ++i)
        if (!e.reduced(i, free[j]).is_zero()) quotient(j, pivots[i]) = -e.reduced(i, free[j]);
    }
  }

  bool contains(const Vector& v) const { return is_zero(quotient.apply(v)); }
};

}  // namespace

// ---------------------------------------------------------------------------
// Unitalization

Unitalization unitalize(CategoryPtr cp) {
  const Category& c = *cp;
  const std::size_t n = c.size();
  std::vector<std::size_t> dims(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) dims[a * n + b] = c.hom_dim(a, b) + (a == b ? 1 : 0);
  Category p(c.objects(), dims);
  auto extra = [&](std::size_t a) { return static_cast<std::uint32_t>(c.hom_dim(a, a)); };

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      ExactMatrix s(dims[b * n + a], dims[a * n + b]);
      const ExactMatrix& old = c.star(a, b);
      for (std::size_t r = 0; r < old.rows(); ++r)
        for (std::size_t k = 0; k < old.cols(); ++k) s(r, k) = old(r, k);
      if (a == b) s(extra(a), extra(a)) = Scalar(1);
      p.set_star(a, b, std::move(s));
      for (std::size_t e = 0; e < n; ++e) {
        for (std::size_t g = 0; g < c.hom_dim(b, e); ++g)
          for (std::size_t f = 0; f < c.hom_dim(a, b); ++f) {
            const SparseVector& v = c.comp(a, b, e, g, f);
            if (!v.empty()) p.set_comp(a, b, e, g, f, v);
          }
        // the adjoined identity
        if (a == b)
          for (std::size_t g = 0; g < dims[b * n + e]; ++g)
            p.set_comp(a, a, e, g, extra(a), {Term{static_cast<std::uint32_t>(g), Scalar(1)}});
        if (b == e)
          for (std::size_t f = 0; f < dims[a * n + b]; ++f)
            p.set_comp(a, b, b, extra(b), f, {Term{static_cast<std::uint32_t>(f), Scalar(1)}});
      }
    }
  for (std::size_t a = 0; a < n; ++a) p.set_unit(a, unit_vector(dims[a * n + a], extra(a)));
  p.set_unital(true);

  if (c.concrete) {
    const ConcreteRep& r = *c.concrete;
    ConcreteRep rp{r.hilbert_dims, std::vector<std::vector<ExactMatrix>>(n * n)};
    for (auto& h : rp.hilbert_dims) ++h;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        for (const auto& m : r.hom_basis(a, b)) {
          ExactMatrix big(rp.hilbert_dims[b], rp.hilbert_dims[a]);
          for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) big(i, j) = m(i, j);
          rp.basis[a * n + b].push_back(std::move(big));
        }
        if (a == b) rp.basis[a * n + a].push_back(ExactMatrix::identity(rp.hilbert_dims[a]));
      }
    p.concrete = std::move(rp);
  }

  auto plus = make_category(std::move(p));
  std::vector<std::size_t> ids(n);
  for (std::size_t a = 0; a < n; ++a) ids[a] = a;
  StarFunctor alpha = blank_functor(cp, plus, ids);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < c.hom_dim(a, b); ++k) alpha.hom_map(a, b)(k, k) = Scalar(1);
  return {plus, std::move(alpha)};
}

StarFunctor extend_to_unitalization(const Unitalization& u, const StarFunctor& phi) {
  const Category& d = *phi.target;
  if (phi.source->objects() != u.alpha.source->objects())
    throw Error("extension: functor does not start at the unitalized category");
  StarFunctor out = blank_functor(u.plus, phi.target, phi.object_map);
  const std::size_t n = u.plus->size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      ExactMatrix& m = out.hom_map(a, b);
      const ExactMatrix& src = phi.hom_map(a, b);
      for (std::size_t r = 0; r < src.rows(); ++r)
        for (std::size_t k = 0; k < src.cols(); ++k) m(r, k) = src(r, k);
      if (a == b) {
        if (!d.unit(phi.object_map[a]))
          throw Error("extension: target has no identity at " + d.object_name(phi.object_map[a]));
        const Vector& id = *d.unit(phi.object_map[a]);
        for (std::size_t r = 0; r < id.size(); ++r) m(r, src.cols()) = id[r];
      }
    }
  return out;
}

StarFunctor unitalization_counit(const Unitalization& du) {
  return extend_to_unitalization(du, identity_functor(du.alpha.source));
}

StarFunctor unitalization_map(const Unitalization& cu, const Unitalization& du,
                              const StarFunctor& phi) {
  return extend_to_unitalization(cu, compose(du.alpha, phi));
}

bool extension_is_unique(const Unitalization& u) {
  const Category& p = *u.plus;
  const std::size_t n = p.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<Vector> cols;
      const ExactMatrix& al = u.alpha.hom_map(a, b);
      for (std::size_t k = 0; k < al.cols(); ++k) cols.push_back(al.column(k));
      if (a == b) cols.push_back(*p.unit(a));
      if (cols.empty()) {
        if (p.hom_dim(a, b) != 0) return false;
        continue;
      }
      if (exact_rank(ExactMatrix::from_columns(p.hom_dim(a, b), cols)) != p.hom_dim(a, b))
        return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Subcategories

Subcategory embed_subspaces(CategoryPtr ambient, const std::vector<std::size_t>& objects,
                            std::vector<std::string> names,
                            const std::vector<std::vector<Vector>>& spans,
                            const std::optional<std::vector<Vector>>& units) {
  const Category& d = *ambient;
  const std::size_t k = objects.size();
  if (names.size() != k || spans.size() != k * k)
    throw Error("subcategory: one name per object and one span per object pair are required");
  std::vector<SpanChart> charts(k * k);
  std::vector<std::size_t> dims(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t amb = d.hom_dim(objects[i], objects[j]);
      std::vector<Vector> kept;
      const auto& span = spans[i * k + j];
      for (auto idx : independent_subset(span, amb)) kept.push_back(span[idx]);
      dims[i * k + j] = kept.size();
      charts[i * k + j] = SpanChart(ExactMatrix::from_columns(amb, kept));
    }

  Category sub(std::move(names), dims);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const ExactMatrix& bij = charts[i * k + j].basis();
      std::vector<Vector> star_cols;
      for (std::size_t f = 0; f < bij.cols(); ++f) {
        auto c = charts[j * k + i].coords(d.adjoint(objects[i], objects[j], bij.column(f)));
        if (!c)
          throw Error("subcategory: hom space " + sub.object_name(i) + "->" + sub.object_name(j) +
                      " is not closed under adjoints");
        star_cols.push_back(std::move(*c));
      }
      sub.set_star(i, j, ExactMatrix::from_columns(dims[j * k + i], star_cols));
      for (std::size_t l = 0; l < k; ++l) {
        const ExactMatrix& bjl = charts[j * k + l].basis();
        for (std::size_t g = 0; g < bjl.cols(); ++g) {
          Vector gv = bjl.column(g);
          for (std::size_t f = 0; f < bij.cols(); ++f) {
            Vector prod = d.compose(objects[i], objects[j], objects[l], gv, bij.column(f));
            if (is_zero(prod)) continue;
            auto c = charts[i * k + l].coords(prod);
            if (!c)
              throw Error("subcategory: composition " + sub.object_name(i) + "->" +
                          sub.object_name(j) + "->" + sub.object_name(l) + " leaves the subspace");
            sub.set_comp(i, j, l, g, f, sparsify(*c));
          }
        }
      }
    }

  if (d.concrete) {
    ConcreteRep rep{{}, std::vector<std::vector<ExactMatrix>>(k * k)};
    for (auto o : objects) rep.hilbert_dims.push_back(d.concrete->hilbert_dims[o]);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        const ExactMatrix& b = charts[i * k + j].basis();
        for (std::size_t f = 0; f < b.cols(); ++f)
          rep.basis[i * k + j].push_back(realize(d, objects[i], objects[j], b.column(f)));
      }
    sub.concrete = std::move(rep);
  }

  bool all = true;
  for (std::size_t i = 0; i < k; ++i) {
    std::optional<Vector> u;
    if (units) {
      u = charts[i * k + i].coords((*units)[i]);
      if (!u) throw Error("subcategory: supplied identity of " + sub.object_name(i) + " is not in End");
    } else {
      u = solve_unit(sub, i);
    }
    all = all && u.has_value();
    sub.set_unit(i, std::move(u));
  }
  sub.set_unital(all);

  auto cat = make_category(std::move(sub));
  StarFunctor inc = blank_functor(cat, ambient, objects);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) inc.hom_map(i, j) = charts[i * k + j].basis();
  return {cat, std::move(inc)};
}

Subcategory full_subcategory(CategoryPtr ambient, const std::vector<std::size_t>& objects) {
  const std::size_t k = objects.size();
  std::vector<std::string> names;
  std::vector<std::vector<Vector>> spans(k * k);
  for (auto o : objects) names.push_back(ambient->object_name(o));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t dim = ambient->hom_dim(objects[i], objects[j]);
      for (std::size_t f = 0; f < dim; ++f) spans[i * k + j].push_back(unit_vector(dim, f));
    }
  std::optional<std::vector<Vector>> units;
  bool all = true;
  for (auto o : objects) all = all && ambient->unit(o).has_value();
  if (all) {
    units.emplace();
    for (auto o : objects) units->push_back(*ambient->unit(o));
  }
  return embed_subspaces(ambient, objects, std::move(names), spans, units);
}

Subcategory projection_subcategory(CategoryPtr ambient,
                                   const std::vector<std::pair<std::size_t, Vector>>& projections) {
  const Category& d = *ambient;
  const std::size_t k = projections.size();
  std::vector<std::size_t> objects;
  std::vector<std::string> names;
  std::vector<Vector> units;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& [o, p] = projections[i];
    if (o >= d.size() || p.size() != d.hom_dim(o, o))
      throw Error("projection " + std::to_string(i) + " does not live in an End space");
    std::ostringstream name;
    name << "(" << d.object_name(o) << ",p" << i << ")";
    if (d.adjoint(o, o, p) != p)
      throw Error("projection " + name.str() + " is not self-adjoint");
    if (d.compose(o, o, o, p, p) != p) throw Error("projection " + name.str() + " is not idempotent");
    objects.push_back(o);
    names.push_back(name.str());
    units.push_back(p);
  }
  std::vector<std::vector<Vector>> spans(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t a = objects[i], b = objects[j];
      for (std::size_t f = 0; f < d.hom_dim(a, b); ++f) {
        Vector v = d.compose(a, a, b, unit_vector(d.hom_dim(a, b), f), units[i]);
        spans[i * k + j].push_back(d.compose(a, b, b, units[j], v));
      }
    }
  return embed_subspaces(ambient, objects, std::move(names), spans, units);
}

// ---------------------------------------------------------------------------
// Ideals and quotients

ValidationReport validate_ideal(const IdealInclusion& inc) {
  ValidationReport rep;
  const StarFunctor& i = inc.inclusion;
  const Category& d = *inc.ambient;
  const std::size_t n = d.size();
  if (!is_bijective_on_objects(i)) {
    rep.add("not bijective on objects", "inclusion");
    return rep;
  }
  rep.merge(validate_functor(i), "inclusion");
  rep.notes.clear();
  std::vector<std::size_t> inv(n);
  for (std::size_t a = 0; a < n; ++a) inv[i.object_map[a]] = a;

  std::vector<SubspaceEchelon> image;
  image.reserve(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      // ambient pair (a, b) corresponds to ideal pair (inv a, inv b)
      const ExactMatrix& m = i.hom_map(inv[a], inv[b]);
      if (exact_rank(m) != m.cols()) rep.add("inclusion not injective", hom_label(d, a, b));
      std::vector<Vector> span;
      for (std::size_t k = 0; k < m.cols(); ++k) span.push_back(m.column(k));
      image.emplace_back(d.hom_dim(a, b), span);
    }
  if (!rep.ok()) return rep;

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const ExactMatrix& ideal_ab = i.hom_map(inv[a], inv[b]);
      for (std::size_t c = 0; c < n; ++c) {
        // ambient after ideal: Hom_D(b,c) o I(a,b)
        for (std::size_t h = 0; h < d.hom_dim(b, c); ++h) {
          Vector hv = unit_vector(d.hom_dim(b, c), h);
          for (std::size_t f = 0; f < ideal_ab.cols(); ++f)
            if (!image[a * n + c].contains(d.compose(a, b, c, hv, ideal_ab.column(f)))) {
              rep.add("left absorption", "ambient basis " + std::to_string(h) + " of " +
                                             hom_label(d, b, c) + " after ideal basis " +
                                             std::to_string(f) + " of " + hom_label(d, a, b));
              return rep;
            }
        }
        // ideal after ambient: I(b,c) o Hom_D(a,b)
        const ExactMatrix& ideal_bc = i.hom_map(inv[b], inv[c]);
        for (std::size_t h = 0; h < d.hom_dim(a, b); ++h) {
          Vector hv = unit_vector(d.hom_dim(a, b), h);
          for (std::size_t f = 0; f < ideal_bc.cols(); ++f)
            if (!image[a * n + c].contains(d.compose(a, b, c, ideal_bc.column(f), hv))) {
              rep.add("right absorption", "ideal basis " + std::to_string(f) + " of " +
                                              hom_label(d, b, c) + " after ambient basis " +
                                              std::to_string(h) + " of " + hom_label(d, a, b));
              return rep;
            }
        }
      }
    }
  return rep;
}

IdealInclusion ideal_from_subspaces(CategoryPtr ambient, const std::vector<std::vector<Vector>>& spans) {
  const std::size_t n = ambient->size();
  std::vector<std::size_t> ids(n);
  for (std::size_t a = 0; a < n; ++a) ids[a] = a;
  Subcategory s = embed_subspaces(ambient, ids, ambient->objects(), spans);
  return {s.cat, ambient, std::move(s.inclusion)};
}

IdealInclusion kernel_ideal(const StarFunctor& phi) {
  if (!is_bijective_on_objects(phi)) throw Error("kernel_ideal: functor is not bijective on objects");
  const std::size_t n = phi.source->size();
  std::vector<std::vector<Vector>> spans(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) spans[a * n + b] = exact_kernel_basis(phi.hom_map(a, b));
  return ideal_from_subspaces(phi.source, spans);
}

Quotient quotient_by_ideal(const IdealInclusion& inc) {
  const Category& d = *inc.ambient;
  const StarFunctor& i = inc.inclusion;
  const std::size_t n = d.size();
  if (!is_bijective_on_objects(i)) throw Error("quotient: inclusion is not bijective on objects");
  std::vector<std::size_t> inv(n);
  for (std::size_t a = 0; a < n; ++a) inv[i.object_map[a]] = a;

  std::vector<SubspaceEchelon> ech;
  std::vector<std::size_t> dims(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const ExactMatrix& m = i.hom_map(inv[a], inv[b]);
      std::vector<Vector> span;
      for (std::size_t k = 0; k < m.cols(); ++k) span.push_back(m.column(k));
      ech.emplace_back(d.hom_dim(a, b), span);
      dims[a * n + b] = ech.back().free.size();
    }

  Category q(d.objects(), dims);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const SubspaceEchelon& ab = ech[a * n + b];
      std::vector<Vector> star_cols;
      for (std::size_t f = 0; f < ab.free.size(); ++f)
        star_cols.push_back(ech[b * n + a].quotient.apply(
            d.adjoint(a, b, unit_vector(ab.dim, ab.free[f]))));
      q.set_star(a, b, ExactMatrix::from_columns(dims[b * n + a], star_cols));
      for (std::size_t c = 0; c < n; ++c) {
        const SubspaceEchelon& bc = ech[b * n + c];
        for (std::size_t g = 0; g < bc.free.size(); ++g)
          for (std::size_t f = 0; f < ab.free.size(); ++f) {
            const SparseVector& v = d.comp(a, b, c, bc.free[g], ab.free[f]);
            if (v.empty()) continue;
            Vector img = ech[a * n + c].quotient.apply(densify(v, ech[a * n + c].dim));
            if (!is_zero(img)) q.set_comp(a, b, c, g, f, sparsify(img));
          }
      }
    }

  bool all = true;
  for (std::size_t a = 0; a < n; ++a) {
    std::optional<Vector> u;
    if (d.unit(a)) u = ech[a * n + a].quotient.apply(*d.unit(a));
    else u = solve_unit(q, a);
    all = all && u.has_value();
    q.set_unit(a, std::move(u));
  }
  q.set_unital(all);

  Quotient out;
  if (d.concrete) {
    // central unit of the ideal, one component per object
    const Category& id = *inc.ideal;
    std::vector<ExactMatrix> z(n);
    bool found = true;
    for (std::size_t a = 0; a < n && found; ++a) {
      std::optional<Vector> u = id.unit(inv[a]) ? id.unit(inv[a]) : solve_unit(id, inv[a]);
      if (!u) {
        found = false;
        out.rep_note = "ideal has no unit at " + d.object_name(a);
        break;
      }
      z[a] = realize(d, a, a, i.apply(inv[a], inv[a], *u));
    }
    if (found) {
      ConcreteRep rep{d.concrete->hilbert_dims, std::vector<std::vector<ExactMatrix>>(n * n)};
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          ExactMatrix comp = ExactMatrix::identity(rep.hilbert_dims[b]) - z[b];
          for (auto fcol : ech[a * n + b].free)
            rep.basis[a * n + b].push_back(comp * realize(d, a, b, unit_vector(ech[a * n + b].dim, fcol)));
        }
      q.concrete = std::move(rep);
      ValidationReport vr = validate_concrete(q);
      if (vr.ok()) {
        out.has_rep = true;
      } else {
        out.rep_note = "compression is not a faithful representation: " + vr.summary();
        q.concrete.reset();
      }
    }
  }

  out.cat = make_category(std::move(q));
  std::vector<std::size_t> ids(n);
  for (std::size_t a = 0; a < n; ++a) ids[a] = a;
  out.qmap = blank_functor(inc.ambient, out.cat, ids);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      out.qmap.hom_map(a, b) = ech[a * n + b].quotient;
      out.lifts.push_back(ech[a * n + b].lift);
    }
  return out;
}

Verdict is_quotient_morphism(const StarFunctor& phi) {
  if (!is_bijective_on_objects(phi)) return Verdict::no("not bijective on objects");
  const std::size_t n = phi.source->size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const ExactMatrix& m = phi.hom_map(a, b);
      const std::size_t rk = exact_rank(m);
      if (rk != m.rows()) {
        std::ostringstream os;
        os << "hom map on " << hom_label(*phi.source, a, b) << " has rank " << rk
           << " < target dimension " << m.rows();
        return Verdict::no(os.str());
      }
    }
  return Verdict::yes("bijective on objects and surjective on every hom space");
}

Verdict check_exact(const StarFunctor& i, const StarFunctor& q) {
  if (i.target->objects() != q.source->objects())
    return Verdict::no("the inclusion and the quotient map do not share the middle category");
  IdealInclusion inc{i.source, i.target, i};
  ValidationReport ir = validate_ideal(inc);
  if (!ir.ok()) return Verdict::no("not an ideal inclusion: " + ir.summary());
  ValidationReport qr = validate_functor(q);
  if (!qr.ok()) return Verdict::no("quotient map is not a *-functor: " + qr.summary());
  Verdict qv = is_quotient_morphism(q);
  if (!qv.verified()) return Verdict::no("not a quotient morphism: " + qv.evidence);
  const Category& d = *i.target;
  const std::size_t n = d.size();
  std::vector<std::size_t> inv(n);
  for (std::size_t a = 0; a < n; ++a) inv[i.object_map[a]] = a;
  std::size_t total = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const ExactMatrix& im = i.hom_map(inv[a], inv[b]);
      const ExactMatrix& qm = q.hom_map(a, b);
      if (!(qm * im).is_zero())
        return Verdict::no("q o i is nonzero on " + hom_label(d, a, b));
      // i injective and q surjective, so ker q = im i iff the dimensions add up
      if (im.cols() + qm.rows() != d.hom_dim(a, b)) {
        std::ostringstream os;
        os << "on " << hom_label(d, a, b) << ": dim kernel " << d.hom_dim(a, b) - qm.rows()
           << " != dim image " << im.cols();
        return Verdict::no(os.str());
      }
      total += d.hom_dim(a, b);
    }
  return Verdict::yes("exact on " + std::to_string(n * n) + " hom spaces of total dimension " +
                      std::to_string(total));
}

StarFunctor induced_quotient_functor(const Quotient& from, const Quotient& to,
                                     const StarFunctor& beta) {
  StarFunctor out = blank_functor(from.cat, to.cat, beta.object_map);
  const std::size_t n = from.cat->size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      out.hom_map(a, b) = to.qmap.hom_map(beta.object_map[a], beta.object_map[b]) *
                          beta.hom_map(a, b) * from.lifts[a * n + b];
  return out;
}

// ---------------------------------------------------------------------------
// Unitary isomorphism

namespace {

NumericMatrix block_embed(const NumericMatrix& m, Eigen::Index row0, Eigen::Index col0,
                          Eigen::Index total) {
  NumericMatrix out = NumericMatrix::Zero(total, total);
  out.block(row0, col0, m.rows(), m.cols()) = m;
  return out;
}

NumericMatrix realize_basis(const Category& cat, std::size_t a, std::size_t b, std::size_t k) {
  return realize_numeric(cat, a, b, unit_vector(cat.hom_dim(a, b), k));
}

}  // namespace

IsomorphismDecision unitarily_isomorphic(const Category& cat, std::size_t x, std::size_t y,
                                         std::uint64_t seed) {
  if (!cat.concrete) throw Error("unitarily_isomorphic needs a concrete representation");
  if (!cat.unit(x) || !cat.unit(y)) throw Error("unitarily_isomorphic needs identities at both objects");
  if (x == y) {
    NumericMorphism id{x, x, {}, 0.0};
    for (const auto& s : *cat.unit(x)) id.coords.push_back(s.to_complex());
    return {Verdict::yes("same object"), id};
  }
  const Eigen::Index hx = static_cast<Eigen::Index>(cat.concrete->hilbert_dims[x]);
  const Eigen::Index hy = static_cast<Eigen::Index>(cat.concrete->hilbert_dims[y]);
  const Eigen::Index N = hx + hy;
  const std::size_t objs[2] = {x, y};
  const Eigen::Index off[2] = {0, hx};

  // basis of the total algebra of the full subcategory on {x, y}
  std::vector<NumericMatrix> basis;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      for (std::size_t k = 0; k < cat.hom_dim(objs[s], objs[t]); ++k)
        basis.push_back(block_embed(realize_basis(cat, objs[s], objs[t], k), off[t], off[s], N));
  const Eigen::Index m = static_cast<Eigen::Index>(basis.size());
  double scale = 1.0;
  for (const auto& b : basis) scale = std::max(scale, b.cwiseAbs().maxCoeff());

  // center: c with [sum c_k B_k, B_j] = 0 for all j, via the Gram matrix of the commutator map
  NumericMatrix gram = NumericMatrix::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    NumericMatrix cols(N * N, m);
    for (Eigen::Index k = 0; k < m; ++k) {
      NumericMatrix comm = basis[k] * basis[j] - basis[j] * basis[k];
      cols.col(k) = Eigen::Map<Eigen::VectorXcd>(comm.data(), N * N);
    }
    gram += cols.adjoint() * cols;
  }
  HermitianEigen ge = hermitian_eigen(0.5 * (gram + gram.adjoint()));
  const double gram_scale = std::max(1.0, ge.values.cwiseAbs().maxCoeff());
  std::vector<NumericMatrix> center;
  for (Eigen::Index k = 0; k < m; ++k) {
    const double v = ge.values(k);
    if (v < 1e-10 * gram_scale) {
      NumericMatrix z = NumericMatrix::Zero(N, N);
      for (Eigen::Index l = 0; l < m; ++l) z += ge.vectors(l, k) * basis[l];
      center.push_back(z);
    } else if (v < 1e-6 * gram_scale) {
      return {Verdict::unsure("center dimension is numerically ambiguous"), std::nullopt};
    }
  }

  NumericMatrix px = block_embed(realize_numeric(cat, x, x, *cat.unit(x)), 0, 0, N);
  NumericMatrix py = block_embed(realize_numeric(cat, y, y, *cat.unit(y)), hx, hx, N);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(1.0, 2.0);
  NumericMatrix h = NumericMatrix::Zero(N, N);
  double bound = 0.0;
  for (const auto& z : center) {
    NumericMatrix herm = 0.5 * (z + z.adjoint());
    double r = coef(rng);
    h += r * herm;
    bound += r * operator_norm(herm);
  }
  // push the part of H outside the algebra's support away from every block
  h += (2.0 * bound + 1.0) * (NumericMatrix::Identity(N, N) - px - py);

  HermitianEigen he = hermitian_eigen(0.5 * (h + h.adjoint()));
  const double hs = std::max(1.0, 2.0 * bound + 1.0);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;
  Eigen::Index start = 0;
  for (Eigen::Index k = 1; k <= N; ++k) {
    if (k < N) {
      double gap = he.values(k) - he.values(k - 1);
      if (gap < 1e-9 * hs) continue;
      if (gap < 1e-5 * hs)
        return {Verdict::unsure("eigengap " + std::to_string(gap) + " of the central element is too small"),
                std::nullopt};
    }
    clusters.push_back({start, k});
    start = k;
  }
  std::ostringstream ev;
  bool same = true;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    auto [s, e] = clusters[c];
    NumericMatrix v = he.vectors.middleCols(s, e - s);
    double tx = (v.adjoint() * px * v).trace().real();
    double ty = (v.adjoint() * py * v).trace().real();
    if (std::abs(tx - std::round(tx)) > 1e-6 || std::abs(ty - std::round(ty)) > 1e-6)
      return {Verdict::unsure("non-integral block rank"), std::nullopt};
    long rx = std::lround(tx), ry = std::lround(ty);
    if (rx != ry) {
      same = false;
      ev << "block " << c << ": rank(id_" << cat.object_name(x) << ")=" << rx << " vs rank(id_"
         << cat.object_name(y) << ")=" << ry << "; ";
    }
  }
  if (!same) return {Verdict::no(ev.str()), std::nullopt};

  // witness: polar part of a random a in Hom(x, y)
  const std::size_t dxy = cat.hom_dim(x, y);
  std::normal_distribution<double> g;
  NumericMatrix pxs = px.topLeftCorner(hx, hx), pys = py.bottomRightCorner(hy, hy);
  const long rank_x = std::lround(pxs.trace().real());
  NumericMatrix hb(hy * hx, static_cast<Eigen::Index>(dxy));
  for (std::size_t k = 0; k < dxy; ++k) {
    NumericMatrix b = realize_basis(cat, x, y, k);
    hb.col(static_cast<Eigen::Index>(k)) = Eigen::Map<Eigen::VectorXcd>(b.data(), hy * hx);
  }
  for (int attempt = 0; attempt < 3; ++attempt) {
    Eigen::VectorXcd c(static_cast<Eigen::Index>(dxy));
    for (auto& ci : c) ci = {g(rng), g(rng)};
    Eigen::VectorXcd avec = hb * c;
    NumericMatrix a = Eigen::Map<NumericMatrix>(avec.data(), hy, hx);
    HermitianEigen te = hermitian_eigen(0.5 * (a.adjoint() * a + (a.adjoint() * a).adjoint()));
    const double ts = std::max(1e-300, te.values.cwiseAbs().maxCoeff());
    NumericMatrix inv_sqrt = NumericMatrix::Zero(hx, hx);
    long support = 0;
    for (Eigen::Index k = 0; k < hx; ++k)
      if (te.values(k) > 1e-9 * ts) {
        ++support;
        inv_sqrt += (1.0 / std::sqrt(te.values(k))) * te.vectors.col(k) * te.vectors.col(k).adjoint();
      }
    if (support != rank_x) continue;
    NumericMatrix u = a * inv_sqrt;
    Eigen::VectorXcd uvec = Eigen::Map<Eigen::VectorXcd>(u.data(), hy * hx);
    Eigen::VectorXcd coords = hb.colPivHouseholderQr().solve(uvec);
    NumericMatrix fit = u;
    Eigen::VectorXcd fitvec = hb * coords;
    fit = Eigen::Map<NumericMatrix>(fitvec.data(), hy, hx);
    double res = std::max({operator_norm(fit - u), operator_norm(fit.adjoint() * fit - pxs),
                           operator_norm(fit * fit.adjoint() - pys)});
    if (res > 1e-8) continue;
    NumericMorphism w{x, y, {}, res};
    for (auto ci : coords) w.coords.push_back(ci);
    return {Verdict::yes("equal ranks in all " + std::to_string(clusters.size()) +
                         " central blocks; witness residual " + std::to_string(res)),
            w};
  }
  return {Verdict::unsure("ranks agree but no well-conditioned witness was found"), std::nullopt};
}

// ---------------------------------------------------------------------------
// Equivalences and excision

UnitaryEquivalenceCertificate identity_certificate(CategoryPtr c) {
  StarFunctor id = identity_functor(c);
  NaturalTransformation t = identity_transformation(id);
  return {id, id, t, t};
}

Verdict verify_unitary_equivalence(const UnitaryEquivalenceCertificate& cert) {
  ValidationReport fr = validate_functor(cert.forward);
  if (!fr.ok()) return Verdict::no("forward functor: " + fr.summary());
  ValidationReport br = validate_functor(cert.backward);
  if (!br.ok()) return Verdict::no("backward functor: " + br.summary());
  if (!same_functor(cert.eta.from, compose(cert.backward, cert.forward)) ||
      !same_functor(cert.eta.to, identity_functor(cert.forward.source)))
    return Verdict::no("eta is not a transformation psi phi -> id");
  if (!same_functor(cert.eps.from, compose(cert.forward, cert.backward)) ||
      !same_functor(cert.eps.to, identity_functor(cert.forward.target)))
    return Verdict::no("epsilon is not a transformation phi psi -> id");
  ValidationReport er = validate_transformation(cert.eta, true);
  if (!er.ok()) return Verdict::no("eta: " + er.summary());
  ValidationReport sr = validate_transformation(cert.eps, true);
  if (!sr.ok()) return Verdict::no("epsilon: " + sr.summary());
  return Verdict::yes("functors valid; eta and epsilon natural and unitary");
}

UnitaryEquivalenceCertificate transport_certificate(const UnitaryEquivalenceCertificate& cert,
                                                    const StarFunctor& a, const StarFunctor& b) {
  StarFunctor ai = invert_isomorphism(a), bi = invert_isomorphism(b);
  UnitaryEquivalenceCertificate out;
  out.forward = compose(b, compose(cert.forward, ai));
  out.backward = compose(a, compose(cert.backward, bi));
  auto conjugate = [](const NaturalTransformation& t, const StarFunctor& iso, const StarFunctor& inv,
                      const StarFunctor& from) {
    NaturalTransformation r{from, identity_functor(iso.target), {}};
    for (std::size_t o = 0; o < iso.target->size(); ++o) {
      std::size_t c = inv.object_map[o];
      r.components.push_back(iso.apply(t.from.object_map[c], c, t.components[c]));
    }
    return r;
  };
  out.eta = conjugate(cert.eta, a, ai, compose(out.backward, out.forward));
  out.eps = conjugate(cert.eps, b, bi, compose(out.forward, out.backward));
  return out;
}

ExcisionReport check_excisive(const ExcisiveSquare& sq) {
  ExcisionReport rep;
  IdealInclusion top{sq.i.source, sq.i.target, sq.i};
  IdealInclusion bottom{sq.j.source, sq.j.target, sq.j};
  ValidationReport tr = validate_ideal(top);
  if (!tr.ok()) return {Verdict::no("A -> B is not an ideal: " + tr.summary()), {}, {}, {}};
  ValidationReport br = validate_ideal(bottom);
  if (!br.ok()) return {Verdict::no("C -> D is not an ideal: " + br.summary()), {}, {}, {}};
  ValidationReport ar = validate_functor(sq.alpha);
  ValidationReport betar = validate_functor(sq.beta);
  if (!ar.ok() || !betar.ok()) return {Verdict::no("a side of the square is not a *-functor"), {}, {}, {}};
  if (!same_functor(compose(sq.beta, sq.i), compose(sq.j, sq.alpha)))
    return {Verdict::no("square does not commute"), {}, {}, {}};

  rep.top = quotient_by_ideal(top);
  rep.bottom = quotient_by_ideal(bottom);
  if (!rep.top->cat->unital()) {
    rep.verdict = Verdict::no("B/A is not unital");
    return rep;
  }
  if (!rep.bottom->cat->unital()) {
    rep.verdict = Verdict::no("D/C is not unital");
    return rep;
  }
  rep.induced = induced_quotient_functor(*rep.top, *rep.bottom, sq.beta);
  const StarFunctor& g = *rep.induced;
  ValidationReport gr = validate_functor(g);
  if (!gr.ok()) {
    rep.verdict = Verdict::no("induced functor B/A -> D/C is not a *-functor: " + gr.summary());
    return rep;
  }
  if (!is_unital_functor(g)) {
    rep.verdict = Verdict::no("induced functor B/A -> D/C is not unital");
    return rep;
  }

  if (sq.certificate) {
    if (!same_functor(sq.certificate->forward, g)) {
      rep.verdict = Verdict::no("certificate's forward functor is not the induced functor");
      return rep;
    }
    Verdict v = verify_unitary_equivalence(*sq.certificate);
    rep.verdict = v.verified() ? Verdict::yes("ideals, unitality and certificate verified")
                               : Verdict::no("certificate rejected: " + v.evidence);
    return rep;
  }

  for (std::size_t a = 0; a < g.source->size(); ++a)
    for (std::size_t b = 0; b < g.source->size(); ++b) {
      const ExactMatrix& m = g.hom_map(a, b);
      if (m.rows() != m.cols() || exact_rank(m) != m.cols()) {
        rep.verdict = Verdict::no("induced functor not fully faithful on " + hom_label(*g.source, a, b));
        return rep;
      }
    }
  const Category& dq = *rep.bottom->cat;
  if (!dq.concrete) {
    rep.verdict = Verdict::unsure("D/C has no concrete representation for the isomorphism decision");
    return rep;
  }
  bool unsure = false;
  for (std::size_t d = 0; d < dq.size(); ++d) {
    bool hit = false;
    for (std::size_t b = 0; b < g.source->size() && !hit; ++b) {
      IsomorphismDecision dec = unitarily_isomorphic(dq, g.object_map[b], d);
      if (dec.verdict.status == Status::verified) hit = true;
      if (dec.verdict.status == Status::inconclusive) unsure = true;
    }
    if (!hit) {
      rep.verdict = unsure ? Verdict::unsure("essential surjectivity undecided at " + dq.object_name(d))
                           : Verdict::no("object " + dq.object_name(d) + " is not in the essential image");
      return rep;
    }
  }
  rep.verdict = Verdict::yes("fully faithful and essentially surjective up to unitary isomorphism");
  return rep;
}

}  // namespace cxp
