#include "cxp/gaction.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace cxp {

// ---------------------------------------------------------------------------
// Groups

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<std::size_t> table)
    : names_(std::move(names)), table_(std::move(table)) {
  const std::size_t n = names_.size();
  if (n == 0) throw Error("group must have at least one element");
  if (table_.size() != n * n) throw Error("multiplication table must have n*n entries");
  for (auto x : table_)
    if (x >= n) throw Error("multiplication table entry out of range");
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) ok = mul(e, g) == g && mul(g, e) == g;
    if (ok) {
      e_ = e;
      found = true;
    }
  }
  if (!found) throw Error("multiplication table has no identity");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw Error("multiplication is not associative at (" + names_[a] + "," + names_[b] +
                      "," + names_[c] + ")");
  inv_.assign(n, n);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      if (mul(g, h) == e_ && mul(h, g) == e_) inv_[g] = h;
  for (std::size_t g = 0; g < n; ++g)
    if (inv_[g] == n) throw Error("element " + names_[g] + " has no inverse");
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = g + 1; h < n; ++h)
      if (names_[g] == names_[h]) throw Error("duplicate group element name " + names_[g]);
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw Error("cyclic group of order 0");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k)
    names.push_back(k == 0 ? "e" : k == 1 ? "g" : "g" + std::to_string(k));
  std::vector<std::size_t> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = (a + b) % n;
  return FiniteGroup(std::move(names), std::move(table));
}

FiniteGroup FiniteGroup::symmetric3() {
  using Perm = std::array<int, 3>;
  auto comp = [](const Perm& p, const Perm& q) {
    return Perm{p[q[0]], p[q[1]], p[q[2]]};
  };
  const Perm e{0, 1, 2}, r{1, 2, 0}, s{1, 0, 2};
  const Perm r2 = comp(r, r);
  std::vector<Perm> els{e, r, r2, s, comp(s, r), comp(s, r2)};
  std::vector<std::string> names{"e", "r", "r2", "s", "sr", "sr2"};
  std::vector<std::size_t> table(36);
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      Perm p = comp(els[a], els[b]);
      table[a * 6 + b] = static_cast<std::size_t>(std::find(els.begin(), els.end(), p) - els.begin());
    }
  return FiniteGroup(std::move(names), std::move(table));
}

FiniteGroup FiniteGroup::by_name(const std::string& name) {
  if (name == "1" || name == "trivial") return trivial();
  if (name == "S3") return symmetric3();
  if (name.size() > 1 && name[0] == 'Z') {
    std::size_t n = std::stoul(name.substr(1));
    return cyclic(n);
  }
  throw Error("unknown group " + name);
}

std::optional<std::size_t> FiniteGroup::find(const std::string& name) const {
  for (std::size_t g = 0; g < names_.size(); ++g)
    if (names_[g] == name) return g;
  return std::nullopt;
}

bool FiniteGroup::abelian() const {
  for (std::size_t g = 0; g < size(); ++g)
    for (std::size_t h = 0; h < size(); ++h)
      if (mul(g, h) != mul(h, g)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Actions

ValidationReport validate_action(const GroupAction& act) {
  ValidationReport rep;
  const FiniteGroup& G = act.group;
  const Category& c = *act.category;
  if (act.phi.size() != G.size()) {
    rep.add("action", "one automorphism per group element is required");
    return rep;
  }
  for (std::size_t g = 0; g < G.size(); ++g) {
    const StarFunctor& f = act.phi[g];
    if (f.source->objects() != c.objects() || f.target->objects() != c.objects()) {
      rep.add("action", "phi_" + G.name(g) + " is not an endofunctor of the category");
      return rep;
    }
    if (!is_bijective_on_objects(f)) rep.add("action", "phi_" + G.name(g) + " is not bijective on objects");
    rep.merge(validate_functor(f), "phi_" + G.name(g));
  }
  rep.notes.clear();
  if (!rep.ok()) return rep;
  if (!same_functor(act.phi[G.identity()], identity_functor(act.category)))
    rep.add("action", "phi_e is not the identity");
  for (std::size_t g = 0; g < G.size(); ++g)
    for (std::size_t h = 0; h < G.size(); ++h)
      if (!same_functor(compose(act.phi[g], act.phi[h]), act.phi[G.mul(g, h)]))
        rep.add("action", "phi_" + G.name(g) + " o phi_" + G.name(h) + " != phi_" + G.name(G.mul(g, h)));
  if (act.spatial) {
    if (!c.concrete) {
      rep.add("spatial", "spatial form given for a category without concrete representation");
      return rep;
    }
    const auto& V = *act.spatial;
    const auto& hd = c.concrete->hilbert_dims;
    if (V.size() != G.size()) {
      rep.add("spatial", "one family of unitaries per group element is required");
      return rep;
    }
    for (std::size_t g = 0; g < G.size(); ++g) {
      if (V[g].size() != c.size()) {
        rep.add("spatial", "one unitary per object is required");
        return rep;
      }
      for (std::size_t a = 0; a < c.size(); ++a) {
        const ExactMatrix& v = V[g][a];
        if (v.rows() != hd[act.act(g, a)] || v.cols() != hd[a]) {
          rep.add("spatial", "V_" + G.name(g) + "," + c.object_name(a) + " has the wrong shape");
          return rep;
        }
        if (!(v.adjoint() * v == ExactMatrix::identity(hd[a])) ||
            !(v * v.adjoint() == ExactMatrix::identity(hd[act.act(g, a)])))
          rep.add("spatial", "V_" + G.name(g) + "," + c.object_name(a) + " is not unitary");
      }
      for (std::size_t a = 0; a < c.size(); ++a)
        for (std::size_t b = 0; b < c.size(); ++b)
          for (std::size_t f = 0; f < c.hom_dim(a, b); ++f) {
            Vector e = unit_vector(c.hom_dim(a, b), f);
            ExactMatrix lhs = realize(c, act.act(g, a), act.act(g, b), act.act(g, a, b, e));
            ExactMatrix rhs = V[g][b] * realize(c, a, b, e) * V[g][a].adjoint();
            if (!(lhs == rhs))
              rep.add("spatial", "V f V* differs from phi_" + G.name(g) + " on basis " +
                                     std::to_string(f) + " of " + c.object_name(a) + "->" +
                                     c.object_name(b));
          }
    }
  }
  return rep;
}

GroupAction trivial_action(const FiniteGroup& g, CategoryPtr cat) {
  GroupAction act{g, cat, std::vector<StarFunctor>(g.size(), identity_functor(cat)), std::nullopt};
  if (cat->concrete) {
    std::vector<ExactMatrix> ids;
    for (auto h : cat->concrete->hilbert_dims) ids.push_back(ExactMatrix::identity(h));
    act.spatial = std::vector<std::vector<ExactMatrix>>(g.size(), ids);
  }
  return act;
}

GroupAction action_from_spatial(const FiniteGroup& G, CategoryPtr cat,
                                const std::vector<std::vector<std::size_t>>& perms,
                                std::vector<std::vector<ExactMatrix>> V) {
  const Category& c = *cat;
  if (!c.concrete) throw Error("spatial action needs a concrete representation");
  if (perms.size() != G.size() || V.size() != G.size())
    throw Error("spatial action: one permutation and unitary family per group element");
  const std::size_t n = c.size();
  std::vector<SpanChart> charts(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<Vector> cols;
      for (const auto& m : c.concrete->hom_basis(a, b)) cols.push_back(m.vec());
      std::size_t amb = c.concrete->hilbert_dims[a] * c.concrete->hilbert_dims[b];
      charts[a * n + b] = SpanChart(ExactMatrix::from_columns(amb, cols));
    }
  GroupAction act{G, cat, {}, std::move(V)};
  for (std::size_t g = 0; g < G.size(); ++g) {
    if (perms[g].size() != n) throw Error("spatial action: permutation has the wrong length");
    if (act.spatial->at(g).size() != n) throw Error("spatial action: one unitary per object");
    StarFunctor f = blank_functor(cat, cat, perms[g]);
    const auto& Vg = act.spatial->at(g);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const auto& basis = c.concrete->hom_basis(a, b);
        std::vector<Vector> cols;
        for (std::size_t k = 0; k < basis.size(); ++k) {
          ExactMatrix img = Vg[b] * basis[k] * Vg[a].adjoint();
          auto coords = charts[perms[g][a] * n + perms[g][b]].coords(img.vec());
          if (!coords)
            throw Error("spatial action: V f V* leaves the hom space for " + G.name(g) + " on " +
                        c.object_name(a) + "->" + c.object_name(b));
          cols.push_back(std::move(*coords));
        }
        f.hom_map(a, b) = ExactMatrix::from_columns(c.hom_dim(perms[g][a], perms[g][b]), cols);
      }
    act.phi.push_back(std::move(f));
  }
  return act;
}

// ---------------------------------------------------------------------------
// Crossed product

std::pair<std::size_t, std::size_t> CrossedProduct::summand(std::size_t a, std::size_t b,
                                                            std::size_t k) const {
  const auto& off = offsets[a * category->size() + b];
  for (std::size_t g = off.size(); g-- > 0;)
    if (off[g] <= k) return {g, k - off[g]};
  throw Error("crossed product index out of range");
}

CrossedProduct crossed_product(const GroupAction& act) {
  const Category& c = *act.category;
  const FiniteGroup& G = act.group;
  const std::size_t n = c.size(), m = G.size();
  std::vector<std::vector<std::size_t>> offsets(n * n, std::vector<std::size_t>(m));
  std::vector<std::size_t> dims(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t total = 0;
      for (std::size_t g = 0; g < m; ++g) {
        offsets[a * n + b][g] = total;
        total += c.hom_dim(a, act.act(G.inv(g), b));
      }
      dims[a * n + b] = total;
    }
  Category cp(c.objects(), dims);
  auto idx = [&](std::size_t a, std::size_t b, std::size_t g, std::size_t f) {
    return offsets[a * n + b][g] + f;
  };

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t g = 0; g < m; ++g) {
        const std::size_t gi = G.inv(g);
        const std::size_t gib = act.act(gi, b);  // f in Hom(a, g^-1 b)
        const std::size_t df = c.hom_dim(a, gib);
        for (std::size_t e = 0; e < n; ++e)
          for (std::size_t g2 = 0; g2 < m; ++g2) {
            const std::size_t g2ie = act.act(G.inv(g2), e);  // f' in Hom(b, g'^-1 e)
            const std::size_t prod = G.mul(g2, g);
            const std::size_t target = act.act(gi, g2ie);  // (g'g)^-1 e
            const ExactMatrix& lift = act.phi[gi].hom_map(b, g2ie);
            for (std::size_t j = 0; j < c.hom_dim(b, g2ie); ++j) {
              Vector w = lift.column(j);  // g^-1 f' in Hom(g^-1 b, (g'g)^-1 e)
              for (std::size_t i = 0; i < df; ++i) {
                Vector v = c.compose(a, gib, target, w, unit_vector(df, i));
                if (is_zero(v)) continue;
                SparseVector sv = sparsify(v);
                for (auto& t : sv) t.index = static_cast<std::uint32_t>(idx(a, e, prod, t.index));
                cp.set_comp(a, b, e, idx(b, e, g2, j), idx(a, b, g, i), std::move(sv));
              }
            }
          }
      }

  // (f, g)* = (g f*, g^-1), a summand of Hom(b, a)
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      ExactMatrix s(dims[b * n + a], dims[a * n + b]);
      for (std::size_t g = 0; g < m; ++g) {
        const std::size_t gib = act.act(G.inv(g), b);
        for (std::size_t i = 0; i < c.hom_dim(a, gib); ++i) {
          Vector fs = c.adjoint(a, gib, unit_vector(c.hom_dim(a, gib), i));  // Hom(g^-1 b, a)
          Vector gfs = act.act(g, gib, a, fs);                                 // Hom(b, g a)
          for (std::size_t r = 0; r < gfs.size(); ++r)
            if (!gfs[r].is_zero()) s(idx(b, a, G.inv(g), r), idx(a, b, g, i)) = gfs[r];
        }
      }
      cp.set_star(a, b, std::move(s));
    }

  bool all = true;
  for (std::size_t a = 0; a < n; ++a) {
    if (!c.unit(a)) {
      all = false;
      cp.set_unit(a, std::nullopt);
      continue;
    }
    Vector u(dims[a * n + a]);
    const Vector& id = *c.unit(a);
    for (std::size_t k = 0; k < id.size(); ++k) u[idx(a, a, G.identity(), k)] = id[k];
    cp.set_unit(a, std::move(u));
  }
  cp.set_unital(all && c.unital());

  CrossedProduct out{act, make_category(std::move(cp)), {}, std::move(offsets)};
  std::vector<std::size_t> ids(n);
  for (std::size_t a = 0; a < n; ++a) ids[a] = a;
  out.iota = blank_functor(act.category, out.category, ids);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t f = 0; f < c.hom_dim(a, b); ++f)
        out.iota.hom_map(a, b)(out.index(a, b, G.identity(), f), f) = Scalar(1);
  return out;
}

bool is_equivariant(const StarFunctor& phi, const GroupAction& src, const GroupAction& tgt) {
  for (std::size_t g = 0; g < src.group.size(); ++g)
    if (!same_functor(compose(phi, src.phi[g]), compose(tgt.phi[g], phi))) return false;
  return true;
}

StarFunctor crossed_functor(const StarFunctor& phi, const CrossedProduct& src, const CrossedProduct& tgt) {
  const GroupAction& sa = src.action;
  const GroupAction& ta = tgt.action;
  if (!is_equivariant(phi, sa, ta)) throw Error("crossed_functor: functor is not equivariant");
  const FiniteGroup& G = sa.group;
  StarFunctor out = blank_functor(src.category, tgt.category, phi.object_map);
  const std::size_t n = sa.category->size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      ExactMatrix& m = out.hom_map(a, b);
      for (std::size_t g = 0; g < G.size(); ++g) {
        const std::size_t gib = sa.act(G.inv(g), b);
        const ExactMatrix& h = phi.hom_map(a, gib);
        for (std::size_t i = 0; i < h.cols(); ++i)
          for (std::size_t r = 0; r < h.rows(); ++r)
            if (!h(r, i).is_zero())
              m(tgt.index(phi.object_map[a], phi.object_map[b], g, r), src.index(a, b, g, i)) = h(r, i);
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Covariant representations

ValidationReport validate_covariant(const CovariantRep& rep, const GroupAction& act) {
  ValidationReport out = validate_functor(rep.rho);
  out.notes.clear();
  if (!out.ok()) return out;
  const FiniteGroup& G = act.group;
  const Category& c = *act.category;
  const Category& d = *rep.rho.target;
  const auto& rm = rep.rho.object_map;
  if (rep.pi.size() != G.size()) {
    out.add("covariant", "one family per group element is required");
    return out;
  }
  for (std::size_t g = 0; g < G.size(); ++g)
    for (std::size_t a = 0; a < c.size(); ++a)
      if (rep.pi[g].size() != c.size() ||
          rep.pi[g][a].size() != d.hom_dim(rm[a], rm[act.act(g, a)])) {
        out.add("covariant", "pi(" + G.name(g) + ") has the wrong shape");
        return out;
      }
  for (std::size_t g = 0; g < G.size(); ++g)
    for (std::size_t a = 0; a < c.size(); ++a) {
      Morphism p{rm[a], rm[act.act(g, a)], rep.pi[g][a]};
      if (!is_unitary(d, p)) out.add("pi not unitary", G.name(g) + " at " + c.object_name(a));
      if (g == G.identity() && d.unit(rm[a]) && rep.pi[g][a] != *d.unit(rm[a]))
        out.add("pi(e) not the identity", c.object_name(a));
      // naturality: pi(g)_b rho(f) = rho(gf) pi(g)_a
      for (std::size_t b = 0; b < c.size(); ++b)
        for (std::size_t f = 0; f < c.hom_dim(a, b); ++f) {
          Vector e = unit_vector(c.hom_dim(a, b), f);
          const std::size_t ga = act.act(g, a), gb = act.act(g, b);
          Vector lhs = d.compose(rm[a], rm[b], rm[gb], rep.pi[g][b], rep.rho.apply(a, b, e));
          Vector rhs = d.compose(rm[a], rm[ga], rm[gb], rep.rho.apply(ga, gb, act.act(g, a, b, e)),
                                 rep.pi[g][a]);
          if (lhs != rhs)
            out.add("pi not natural", G.name(g) + " on basis " + std::to_string(f) + " of " +
                                          c.object_name(a) + "->" + c.object_name(b));
        }
      // cocycle: pi(h)_{ga} pi(g)_a = pi(hg)_a
      for (std::size_t h = 0; h < G.size(); ++h) {
        const std::size_t ga = act.act(g, a), hga = act.act(h, ga);
        Vector lhs = d.compose(rm[a], rm[ga], rm[hga], rep.pi[h][ga], rep.pi[g][a]);
        if (lhs != rep.pi[G.mul(h, g)][a])
          out.add("pi cocycle", "(" + G.name(h) + "," + G.name(g) + ") at " + c.object_name(a));
      }
    }
  return out;
}

StarFunctor sigma_from_covariant(const CovariantRep& rep, const CrossedProduct& cp) {
  const GroupAction& act = cp.action;
  ValidationReport vr = validate_covariant(rep, act);
  if (!vr.ok()) throw Error("sigma_from_covariant: invalid covariant representation: " + vr.summary());
  const FiniteGroup& G = act.group;
  const Category& c = *act.category;
  const Category& d = *rep.rho.target;
  const auto& rm = rep.rho.object_map;
  StarFunctor out = blank_functor(cp.category, rep.rho.target, rm);
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b) {
      ExactMatrix& m = out.hom_map(a, b);
      for (std::size_t g = 0; g < G.size(); ++g) {
        const std::size_t gib = act.act(G.inv(g), b);
        for (std::size_t i = 0; i < c.hom_dim(a, gib); ++i) {
          Vector rf = rep.rho.apply(a, gib, unit_vector(c.hom_dim(a, gib), i));
          Vector v = d.compose(rm[a], rm[gib], rm[b], rep.pi[g][gib], rf);
          for (std::size_t r = 0; r < v.size(); ++r) m(r, cp.index(a, b, g, i)) = v[r];
        }
      }
    }
  return out;
}

CovariantRep covariant_from_sigma(const StarFunctor& sigma, const CrossedProduct& cp) {
  const GroupAction& act = cp.action;
  const Category& c = *act.category;
  if (!c.unital()) throw Error("covariant_from_sigma: the category is not unital");
  if (!is_unital_functor(sigma)) throw Error("covariant_from_sigma: sigma is not unital");
  const FiniteGroup& G = act.group;
  CovariantRep rep{compose(sigma, cp.iota), std::vector<std::vector<Vector>>(G.size())};
  for (std::size_t g = 0; g < G.size(); ++g)
    for (std::size_t a = 0; a < c.size(); ++a) {
      const std::size_t ga = act.act(g, a);
      Vector idg(cp.category->hom_dim(a, ga));
      const Vector& id = *c.unit(a);
      for (std::size_t k = 0; k < id.size(); ++k) idg[cp.index(a, ga, g, k)] = id[k];
      rep.pi[g].push_back(sigma.apply(a, ga, idg));
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Weakly equivariant functors

namespace {

// g^-1 phi g as a functor C -> D.
StarFunctor conjugated(const WeaklyEquivariant& wf, std::size_t g) {
  const FiniteGroup& G = wf.source->group;
  return compose(wf.target->phi[G.inv(g)], compose(wf.phi, wf.source->phi[g]));
}

}  // namespace

WeaklyEquivariant strictly_equivariant(const StarFunctor& phi, ActionPtr src, ActionPtr tgt) {
  if (!is_equivariant(phi, *src, *tgt)) throw Error("functor is not strictly equivariant");
  const Category& d = *tgt->category;
  WeaklyEquivariant wf{src, tgt, phi, std::vector<std::vector<Vector>>(src->group.size())};
  for (auto& fam : wf.rho)
    for (std::size_t c = 0; c < phi.source->size(); ++c) fam.push_back(d.identity(phi.object_map[c]));
  return wf;
}

ValidationReport validate_weakly_equivariant(const WeaklyEquivariant& wf) {
  ValidationReport rep = validate_functor(wf.phi);
  rep.notes.clear();
  if (!rep.ok()) return rep;
  const FiniteGroup& G = wf.source->group;
  const Category& c = *wf.source->category;
  const Category& d = *wf.target->category;
  if (wf.rho.size() != G.size()) {
    rep.add("cocycle", "one family per group element is required");
    return rep;
  }
  std::vector<StarFunctor> conj;
  for (std::size_t g = 0; g < G.size(); ++g) {
    conj.push_back(conjugated(wf, g));
    if (wf.rho[g].size() != c.size()) {
      rep.add("cocycle", "rho(" + G.name(g) + ") has the wrong number of components");
      return rep;
    }
    for (std::size_t a = 0; a < c.size(); ++a)
      if (wf.rho[g][a].size() != d.hom_dim(wf.phi.object_map[a], conj[g].object_map[a])) {
        rep.add("cocycle", "rho(" + G.name(g) + ") has a component of the wrong shape");
        return rep;
      }
    NaturalTransformation t{wf.phi, conj[g], wf.rho[g]};
    rep.merge(validate_transformation(t, true), "rho(" + G.name(g) + ")");
  }
  if (!rep.ok()) return rep;
  for (std::size_t g = 0; g < G.size(); ++g)
    for (std::size_t h = 0; h < G.size(); ++h)
      for (std::size_t a = 0; a < c.size(); ++a) {
        const std::size_t ga = wf.source->act(g, a);
        const std::size_t x = wf.phi.object_map[a];
        const std::size_t y = conj[g].object_map[a];             // g^-1 phi(ga)
        const std::size_t z = conj[G.mul(h, g)].object_map[a];  // (hg)^-1 phi(hga)
        // g^-1 applied to rho(h)_{ga} : phi(ga) -> h^-1 phi(hga)
        Vector moved = wf.target->act(G.inv(g), wf.phi.object_map[ga], conj[h].object_map[ga],
                                      wf.rho[h][ga]);
        if (d.compose(x, y, z, moved, wf.rho[g][a]) != wf.rho[G.mul(h, g)][a])
          rep.add("cocycle", "(" + G.name(h) + "," + G.name(g) + ") at " + c.object_name(a));
      }
  return rep;
}

WeaklyEquivariant compose(const WeaklyEquivariant& later, const WeaklyEquivariant& earlier) {
  const FiniteGroup& G = earlier.source->group;
  const Category& e = *later.target->category;
  WeaklyEquivariant out{earlier.source, later.target, compose(later.phi, earlier.phi),
                        std::vector<std::vector<Vector>>(G.size())};
  for (std::size_t g = 0; g < G.size(); ++g) {
    StarFunctor ce = conjugated(earlier, g);
    StarFunctor cl = conjugated(later, g);
    for (std::size_t a = 0; a < earlier.phi.source->size(); ++a) {
      const std::size_t x = earlier.phi.object_map[a];
      const std::size_t y = ce.object_map[a];  // g^-1 phi(ga)
      Vector lifted = later.phi.apply(x, y, earlier.rho[g][a]);
      out.rho[g].push_back(e.compose(later.phi.object_map[x], later.phi.object_map[y], cl.object_map[y],
                                     later.rho[g][y], lifted));
    }
  }
  return out;
}

StarFunctor crossed_of_weakly_equivariant(const WeaklyEquivariant& wf, const CrossedProduct& src,
                                          const CrossedProduct& tgt) {
  ValidationReport vr = validate_weakly_equivariant(wf);
  if (!vr.ok()) throw Error("crossed_of_weakly_equivariant: " + vr.summary());
  const GroupAction& sa = *wf.source;
  const FiniteGroup& G = sa.group;
  const Category& c = *sa.category;
  const Category& d = *wf.target->category;
  const auto& om = wf.phi.object_map;
  StarFunctor out = blank_functor(src.category, tgt.category, om);
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b) {
      ExactMatrix& m = out.hom_map(a, b);
      for (std::size_t g = 0; g < G.size(); ++g) {
        const std::size_t gib = sa.act(G.inv(g), b);
        // rho(g)_{g^-1 b} : phi(g^-1 b) -> g^-1 phi(b)
        const std::size_t gphib = wf.target->act(G.inv(g), om[b]);
        for (std::size_t i = 0; i < c.hom_dim(a, gib); ++i) {
          Vector pf = wf.phi.apply(a, gib, unit_vector(c.hom_dim(a, gib), i));
          Vector v = d.compose(om[a], om[gib], gphib, wf.rho[g][gib], pf);
          for (std::size_t r = 0; r < v.size(); ++r)
            if (!v[r].is_zero()) m(tgt.index(om[a], om[b], g, r), src.index(a, b, g, i)) = v[r];
        }
      }
    }
  return out;
}

ValidationReport validate_equivariant_transformation(const WeaklyEquivariant& from,
                                                     const WeaklyEquivariant& to,
                                                     const std::vector<Vector>& kappa) {
  NaturalTransformation t{from.phi, to.phi, kappa};
  ValidationReport rep = validate_transformation(t, false);
  if (!rep.ok()) return rep;
  const FiniteGroup& G = from.source->group;
  const Category& c = *from.source->category;
  const Category& d = *from.target->category;
  for (std::size_t g = 0; g < G.size(); ++g) {
    StarFunctor cf = conjugated(from, g), ct = conjugated(to, g);
    for (std::size_t a = 0; a < c.size(); ++a) {
      const std::size_t ga = from.source->act(g, a);
      Vector moved = from.target->act(G.inv(g), from.phi.object_map[ga], to.phi.object_map[ga], kappa[ga]);
      Vector lhs = d.compose(from.phi.object_map[a], cf.object_map[a], ct.object_map[a], moved,
                             from.rho[g][a]);
      Vector rhs = d.compose(from.phi.object_map[a], to.phi.object_map[a], ct.object_map[a],
                             to.rho[g][a], kappa[a]);
      if (lhs != rhs) rep.add("cocycle compatibility", G.name(g) + " at " + c.object_name(a));
    }
  }
  return rep;
}

NaturalTransformation crossed_of_transformation(const WeaklyEquivariant& from,
                                                const WeaklyEquivariant& to,
                                                const std::vector<Vector>& kappa,
                                                const CrossedProduct& src, const CrossedProduct& tgt) {
  ValidationReport vr = validate_equivariant_transformation(from, to, kappa);
  if (!vr.ok()) throw Error("crossed_of_transformation: " + vr.summary());
  const FiniteGroup& G = from.source->group;
  NaturalTransformation out{crossed_of_weakly_equivariant(from, src, tgt),
                            crossed_of_weakly_equivariant(to, src, tgt), {}};
  for (std::size_t a = 0; a < kappa.size(); ++a) {
    const std::size_t x = from.phi.object_map[a], y = to.phi.object_map[a];
    Vector comp(tgt.category->hom_dim(x, y));
    for (std::size_t k = 0; k < kappa[a].size(); ++k) comp[tgt.index(x, y, G.identity(), k)] = kappa[a][k];
    out.components.push_back(std::move(comp));
  }
  return out;
}

WeakInverse invert_weak_equivalence(const WeaklyEquivariant& wf, const StarFunctor& psi,
                                    const std::vector<Vector>& kappa) {
  if (!is_fully_faithful(wf.phi)) throw Error("invert_weak_equivalence: phi is not fully faithful");
  const GroupAction& sa = *wf.source;
  const GroupAction& ta = *wf.target;
  const FiniteGroup& G = sa.group;
  const Category& d = *ta.category;
  NaturalTransformation kt{compose(wf.phi, psi), identity_functor(ta.category), kappa};
  ValidationReport kr = validate_transformation(kt, true);
  if (!kr.ok()) throw Error("invert_weak_equivalence: kappa is not a unitary transformation: " + kr.summary());
  const auto& pm = psi.object_map;
  const auto& fm = wf.phi.object_map;

  WeaklyEquivariant inv{wf.target, wf.source, psi, std::vector<std::vector<Vector>>(G.size())};
  for (std::size_t g = 0; g < G.size(); ++g) {
    const std::size_t gi = G.inv(g);
    for (std::size_t x = 0; x < d.size(); ++x) {
      const std::size_t gx = ta.act(g, x);
      const std::size_t y = sa.act(gi, pm[gx]);  // g^-1 psi(gx)
      // g^-1 kappa_{gx} : g^-1 phi psi gx -> x, then its adjoint
      const std::size_t top = ta.act(gi, fm[pm[gx]]);
      Vector gk = ta.act(gi, fm[pm[gx]], gx, kappa[gx]);
      Vector gks = d.adjoint(top, x, gk);
      // rho(g)_y : phi y -> g^-1 phi(g y) = top
      Vector rs = d.adjoint(fm[y], top, wf.rho[g][y]);
      Vector rhs = d.compose(fm[pm[x]], top, fm[y], rs, d.compose(fm[pm[x]], x, top, gks, kappa[x]));
      auto sol = solve(wf.phi.hom_map(pm[x], y), rhs);
      if (!sol) {
        return {Verdict::no("no lambda(" + G.name(g) + ") at " + d.object_name(x) +
                            ": the forced morphism is not in the image of phi"),
                std::nullopt};
      }
      inv.rho[g].push_back(std::move(*sol));
    }
  }
  ValidationReport ir = validate_weakly_equivariant(inv);
  if (!ir.ok()) return {Verdict::no("solved lambda is not a unitary cocycle: " + ir.summary()), std::nullopt};
  WeaklyEquivariant id = strictly_equivariant(identity_functor(ta.category), wf.target, wf.target);
  ValidationReport cr = validate_equivariant_transformation(compose(wf, inv), id, kappa);
  if (!cr.ok()) return {Verdict::no("kappa is not compatible with the solved cocycle: " + cr.summary()), std::nullopt};
  return {Verdict::yes("lambda solved through the fully faithful phi and re-validated"), std::move(inv)};
}

// ---------------------------------------------------------------------------
// L(C)

LConstruction L_of(const GroupAction& act, const CrossedProduct& cp) {
  const Category& c = *act.category;
  const FiniteGroup& G = act.group;
  const std::size_t n = c.size(), m = G.size(), N = n * m;
  auto obj = [&](std::size_t x, std::size_t g) { return x * m + g; };
  std::vector<std::string> names;
  std::vector<std::size_t> dims(N * N);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t g = 0; g < m; ++g) names.push_back(c.object_name(x) + "@" + G.name(g));
  for (std::size_t p = 0; p < N; ++p)
    for (std::size_t q = 0; q < N; ++q) dims[p * N + q] = c.hom_dim(p / m, q / m);
  Category l(names, dims);
  for (std::size_t p = 0; p < N; ++p)
    for (std::size_t q = 0; q < N; ++q) {
      l.set_star(p, q, c.star(p / m, q / m));
      for (std::size_t r = 0; r < N; ++r)
        for (std::size_t g = 0; g < c.hom_dim(q / m, r / m); ++g)
          for (std::size_t f = 0; f < c.hom_dim(p / m, q / m); ++f) {
            const SparseVector& v = c.comp(p / m, q / m, r / m, g, f);
            if (!v.empty()) l.set_comp(p, q, r, g, f, v);
          }
    }
  for (std::size_t p = 0; p < N; ++p) l.set_unit(p, c.unit(p / m));
  l.set_unital(c.unital());
  if (c.concrete) {
    ConcreteRep rep{std::vector<std::size_t>(N), std::vector<std::vector<ExactMatrix>>(N * N)};
    for (std::size_t p = 0; p < N; ++p) rep.hilbert_dims[p] = c.concrete->hilbert_dims[p / m];
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = 0; q < N; ++q) rep.basis[p * N + q] = c.concrete->hom_basis(p / m, q / m);
    l.concrete = std::move(rep);
  }
  auto lp = make_category(std::move(l));

  GroupAction la{G, lp, {}, std::nullopt};
  for (std::size_t h = 0; h < m; ++h) {
    std::vector<std::size_t> om(N);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t g = 0; g < m; ++g) om[obj(x, g)] = obj(act.act(h, x), G.mul(h, g));
    StarFunctor f = blank_functor(lp, lp, om);
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = 0; q < N; ++q) f.hom_map(p, q) = act.phi[h].hom_map(p / m, q / m);
    la.phi.push_back(std::move(f));
  }
  if (act.spatial) {
    la.spatial.emplace(m);
    for (std::size_t h = 0; h < m; ++h)
      for (std::size_t p = 0; p < N; ++p) (*la.spatial)[h].push_back((*act.spatial)[h][p / m]);
  }

  std::vector<std::size_t> forget(N), section(n), calg(N);
  for (std::size_t p = 0; p < N; ++p) forget[p] = p / m;
  for (std::size_t x = 0; x < n; ++x) section[x] = obj(x, G.identity());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t g = 0; g < m; ++g) calg[obj(x, g)] = act.act(G.inv(g), x);

  LConstruction out{std::move(la), blank_functor(lp, act.category, forget),
                    blank_functor(lp, cp.category, calg), blank_functor(act.category, lp, section)};
  for (std::size_t p = 0; p < N; ++p)
    for (std::size_t q = 0; q < N; ++q) out.lambda.hom_map(p, q) = ExactMatrix::identity(dims[p * N + q]);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) out.section.hom_map(x, y) = ExactMatrix::identity(c.hom_dim(x, y));
  // (f : (x,g) -> (y,g')) |-> (g^-1 f, g'^-1 g)
  for (std::size_t p = 0; p < N; ++p)
    for (std::size_t q = 0; q < N; ++q) {
      const std::size_t x = p / m, g = p % m, y = q / m, g2 = q % m;
      const std::size_t k = G.mul(G.inv(g2), g);
      const ExactMatrix& h = act.phi[G.inv(g)].hom_map(x, y);
      ExactMatrix& mm = out.c_alg.hom_map(p, q);
      for (std::size_t f = 0; f < h.cols(); ++f)
        for (std::size_t r = 0; r < h.rows(); ++r)
          if (!h(r, f).is_zero()) mm(cp.index(calg[p], calg[q], k, r), f) = h(r, f);
    }
  return out;
}

UnitaryEquivalenceCertificate lambda_certificate(const LConstruction& l) {
  const Category& c = *l.lambda.target;
  const Category& lc = *l.lambda.source;
  if (!c.unital()) throw Error("lambda_certificate: the category is not unital");
  UnitaryEquivalenceCertificate cert;
  cert.forward = l.lambda;
  cert.backward = l.section;
  cert.eta = NaturalTransformation{compose(l.section, l.lambda), identity_functor(l.lambda.source), {}};
  for (std::size_t p = 0; p < lc.size(); ++p) cert.eta.components.push_back(c.identity(l.lambda.object_map[p]));
  cert.eps = NaturalTransformation{compose(l.lambda, l.section), identity_functor(l.lambda.target), {}};
  for (std::size_t x = 0; x < c.size(); ++x) cert.eps.components.push_back(c.identity(x));
  return cert;
}

bool is_invariant(const StarFunctor& phi, const GroupAction& act) {
  for (const auto& g : act.phi)
    if (!same_functor(compose(phi, g), phi)) return false;
  return true;
}

StarFunctor colimit_factorization(const LConstruction& l, const CrossedProduct& cp,
                                  const StarFunctor& phi) {
  if (!is_invariant(phi, l.action)) throw Error("colimit_factorization: functor is not invariant");
  const GroupAction& act = cp.action;
  const FiniteGroup& G = act.group;
  const Category& c = *act.category;
  const std::size_t n = c.size(), m = G.size();
  std::vector<std::size_t> om(n);
  for (std::size_t x = 0; x < n; ++x) om[x] = phi.object_map[x * m + G.identity()];
  StarFunctor out = blank_functor(cp.category, phi.target, om);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      ExactMatrix& mm = out.hom_map(a, b);
      for (std::size_t g = 0; g < m; ++g) {
        const std::size_t gi = G.inv(g);
        const std::size_t gib = act.act(gi, b);
        // f : (a, e) -> (g^-1 b, g^-1) in L(C)
        const ExactMatrix& h = phi.hom_map(a * m + G.identity(), gib * m + gi);
        for (std::size_t i = 0; i < h.cols(); ++i)
          for (std::size_t r = 0; r < h.rows(); ++r)
            if (!h(r, i).is_zero()) mm(r, cp.index(a, b, g, i)) = h(r, i);
      }
    }
  return out;
}

}  // namespace cxp
