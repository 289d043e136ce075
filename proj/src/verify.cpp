#include "cxp/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <thread>

namespace cxp {

FiniteGroup InstanceParams::resolve_group() const {
  return group_table ? *group_table : FiniteGroup::by_name(group);
}

void validate_params(const InstanceParams& p) {
  if (p.max_objects == 0) throw Error("max_objects must be positive");
  if (p.max_hilbert_dim == 0) throw Error("max_hilbert_dim must be positive");
  if (p.instances == 0) throw Error("instances must be positive");
  if (p.jobs == 0) throw Error("jobs must be positive");
  if (!(p.tol > 0.0)) throw Error("tol must be positive");
  const std::size_t order = p.resolve_group().size();
  if (p.ceiling < order)
    throw Error("ceiling " + std::to_string(p.ceiling) + " is below |G| = " + std::to_string(order) +
                "; no instance fits");
}

namespace {

using Rng = std::mt19937_64;

Rng make_rng(const InstanceParams& p, std::uint64_t index, std::uint32_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(p.seed), static_cast<std::uint32_t>(p.seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), salt};
  return Rng(seq);
}

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

std::size_t between(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// Unit-modulus Gaussian rationals.
Scalar random_phase(Rng& rng) {
  static const std::vector<Scalar> phases = {
      Scalar(1),
      Scalar(-1),
      Scalar::i(),
      -Scalar::i(),
      Scalar(Rational(3, 5), Rational(4, 5)),
      Scalar(Rational(3, 5), Rational(-4, 5)),
      Scalar(Rational(-4, 5), Rational(3, 5)),
      Scalar(Rational(4, 5), Rational(3, 5)),
  };
  return phases[pick(rng, phases.size())];
}

Scalar small_gaussian(Rng& rng) {
  const long re = static_cast<long>(between(rng, 0, 4)) - 2;
  const long im = static_cast<long>(between(rng, 0, 4)) - 2;
  return Scalar(Rational(re), Rational(im));
}

Vector random_vector(Rng& rng, std::size_t n) {
  Vector v(n);
  for (auto& x : v) x = small_gaussian(rng);
  return v;
}

ExactMatrix random_monomial_unitary(Rng& rng, std::size_t d) {
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  ExactMatrix u(d, d);
  for (std::size_t j = 0; j < d; ++j) u(perm[j], j) = random_phase(rng);
  return u;
}

// ---------------------------------------------------------------------------
// Group data

using Subgroup = std::vector<std::size_t>;

bool closed(const FiniteGroup& G, const Subgroup& s) {
  std::vector<bool> in(G.size(), false);
  for (auto x : s) in[x] = true;
  for (auto x : s)
    for (auto y : s)
      if (!in[G.mul(x, y)]) return false;
  return true;
}

Subgroup generated(const FiniteGroup& G, std::size_t g) {
  Subgroup s{G.identity()};
  for (std::size_t x = g; x != G.identity(); x = G.mul(g, x)) s.push_back(x);
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<Subgroup> subgroups(const FiniteGroup& G) {
  std::set<Subgroup> found;
  const std::size_t m = G.size();
  if (m <= 12) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      if (!(mask >> G.identity() & 1)) continue;
      Subgroup s;
      for (std::size_t x = 0; x < m; ++x)
        if (mask >> x & 1) s.push_back(x);
      if (closed(G, s)) found.insert(s);
    }
  } else {
    for (std::size_t g = 0; g < m; ++g) found.insert(generated(G, g));
    Subgroup all(m);
    std::iota(all.begin(), all.end(), 0);
    found.insert(all);
  }
  return {found.begin(), found.end()};
}

// Left cosets gH: coset_of[g] and the permutation action of G on them.
struct CosetSpace {
  std::vector<std::size_t> coset_of;
  std::vector<std::size_t> reps;
  std::vector<std::vector<std::size_t>> act;  // [g][coset]
};

CosetSpace cosets(const FiniteGroup& G, const Subgroup& H) {
  const std::size_t m = G.size();
  CosetSpace cs;
  cs.coset_of.assign(m, m);
  for (std::size_t g = 0; g < m; ++g) {
    if (cs.coset_of[g] != m) continue;
    const std::size_t label = cs.reps.size();
    cs.reps.push_back(g);
    for (auto h : H) cs.coset_of[G.mul(g, h)] = label;
  }
  cs.act.assign(m, std::vector<std::size_t>(cs.reps.size()));
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t i = 0; i < cs.reps.size(); ++i) cs.act[g][i] = cs.coset_of[G.mul(g, cs.reps[i])];
  return cs;
}

// Homomorphisms G -> {1, i, -1, -i}, as exponents of i.
std::vector<std::vector<int>> mu4_characters(const FiniteGroup& G) {
  const std::size_t m = G.size();
  std::vector<std::vector<int>> out;
  std::vector<int> k(m, -1);
  std::function<void(std::size_t)> extend = [&](std::size_t next) {
    if (next == m) {
      out.push_back(k);
      return;
    }
    for (int v = 0; v < 4; ++v) {
      if (next == G.identity() && v != 0) continue;
      k[next] = v;
      bool ok = true;
      for (std::size_t x = 0; x <= next && ok; ++x)
        for (std::size_t y = 0; y <= next && ok; ++y) {
          const std::size_t xy = G.mul(x, y);
          if (xy <= next && k[xy] != (k[x] + k[y]) % 4) ok = false;
        }
      if (ok) extend(next + 1);
    }
    k[next] = -1;
  };
  extend(0);
  return out;
}

Scalar i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return Scalar(1);
    case 1: return Scalar::i();
    case 2: return Scalar(-1);
    default: return -Scalar::i();
  }
}

std::vector<Scalar> random_character(Rng& rng, const FiniteGroup& G) {
  const auto chars = mu4_characters(G);
  const auto& k = chars[pick(rng, chars.size())];
  std::vector<Scalar> chi;
  for (int v : k) chi.push_back(i_power(v));
  return chi;
}

// g |-> chi(g) P(g) for a random G-set on d points.
std::vector<ExactMatrix> random_representation(Rng& rng, const FiniteGroup& G,
                                               const std::vector<Subgroup>& subs, std::size_t d) {
  const std::size_t m = G.size();
  std::vector<std::vector<std::size_t>> perm(m);
  std::size_t filled = 0;
  while (filled < d) {
    std::vector<std::size_t> fit;
    for (std::size_t s = 0; s < subs.size(); ++s)
      if (m / subs[s].size() <= d - filled) fit.push_back(s);
    const CosetSpace cs = cosets(G, subs[fit[pick(rng, fit.size())]]);
    for (std::size_t g = 0; g < m; ++g)
      for (auto c : cs.act[g]) perm[g].push_back(filled + c);
    filled += cs.reps.size();
  }
  const auto chi = random_character(rng, G);
  std::vector<ExactMatrix> rep;
  for (std::size_t g = 0; g < m; ++g) {
    ExactMatrix r(d, d);
    for (std::size_t p = 0; p < d; ++p) r(perm[g][p], p) = chi[g];
    rep.push_back(std::move(r));
  }
  return rep;
}

std::string orbit_name(std::size_t o, std::size_t i) {
  std::string base = o < 26 ? std::string(1, static_cast<char>('a' + o)) : "o" + std::to_string(o) + "_";
  return base + std::to_string(i);
}

// ---------------------------------------------------------------------------
// Shared pieces

ActionPtr share(GroupAction act) { return std::make_shared<const GroupAction>(std::move(act)); }

std::vector<std::vector<std::size_t>> permutations(const GroupAction& act) {
  std::vector<std::vector<std::size_t>> perms;
  for (const auto& f : act.phi) perms.push_back(f.object_map);
  return perms;
}

// The action restricted to an invariant list of objects, on a category whose
// objects are that list in order and whose Hilbert spaces are unchanged.
ActionPtr restrict_action(const GroupAction& act, CategoryPtr cat, const std::vector<std::size_t>& objects) {
  const std::size_t m = act.group.size();
  std::vector<std::size_t> pos(act.category->size(), objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) pos[objects[i]] = i;
  std::vector<std::vector<std::size_t>> perms(m);
  std::vector<std::vector<ExactMatrix>> V(m);
  for (std::size_t g = 0; g < m; ++g)
    for (auto o : objects) {
      const std::size_t image = pos[act.act(g, o)];
      if (image == objects.size()) throw Error("restrict_action: object list is not invariant");
      perms[g].push_back(image);
      V[g].push_back((*act.spatial)[g][o]);
    }
  return share(action_from_spatial(act.group, std::move(cat), perms, std::move(V)));
}

std::vector<std::size_t> kept_objects(const GeneratedInstance& inst) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < inst.kept.size(); ++x)
    if (inst.kept[x]) out.push_back(x);
  return out;
}

// Identity matrix as a morphism x -> y between same-block objects of equal
// Hilbert dimension, in the matrix-unit basis.
Vector identity_between(const Category& c, std::size_t x, std::size_t y) {
  const std::size_t d = c.concrete->hilbert_dims[x];
  if (c.concrete->hilbert_dims[y] != d || c.hom_dim(x, y) != d * d)
    throw Error("identity_between: objects are not in one block with equal dimensions");
  Vector v(d * d);
  for (std::size_t r = 0; r < d; ++r) v[r * d + r] = Scalar(1);
  return v;
}

// Block orbits of an instance: orbit label per block label.
std::map<std::size_t, std::size_t> block_orbits(const GeneratedInstance& inst) {
  const GroupAction& act = *inst.action;
  std::map<std::size_t, std::size_t> parent;
  for (auto b : inst.block) parent[b] = b;
  std::function<std::size_t(std::size_t)> root = [&](std::size_t b) {
    return parent[b] == b ? b : parent[b] = root(parent[b]);
  };
  for (std::size_t g = 0; g < act.group.size(); ++g)
    for (std::size_t x = 0; x < inst.block.size(); ++x)
      parent[root(inst.block[x])] = root(inst.block[act.act(g, x)]);
  std::map<std::size_t, std::size_t> label;
  std::map<std::size_t, std::size_t> out;
  for (auto& [b, _] : parent) {
    const std::size_t r = root(b);
    if (!label.count(r)) label.emplace(r, label.size());
    out[b] = label[r];
  }
  return out;
}

// Full hom spaces between objects of the chosen blocks, for a list of objects.
std::vector<std::vector<Vector>> block_spans(const Category& ambient, const GeneratedInstance& inst,
                                             const std::vector<std::size_t>& objects,
                                             const std::set<std::size_t>& blocks) {
  const std::size_t k = objects.size();
  std::vector<std::vector<Vector>> spans(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t a = objects[i], b = objects[j];
      if (inst.block[a] != inst.block[b] || !blocks.count(inst.block[a])) continue;
      const std::size_t dim = ambient.hom_dim(a, b);
      for (std::size_t f = 0; f < dim; ++f) spans[i * k + j].push_back(unit_vector(dim, f));
    }
  return spans;
}

// A random nonempty proper union of block orbits, as a set of block labels.
std::set<std::size_t> random_invariant_blocks(Rng& rng, const GeneratedInstance& inst) {
  const auto orbit = block_orbits(inst);
  std::size_t count = 0;
  for (auto& [_, o] : orbit) count = std::max(count, o + 1);
  if (count < 2) throw Error("instance has a single block orbit");
  std::vector<bool> chosen(count);
  bool any = false, all = true;
  while (!any || all) {
    any = false;
    all = true;
    for (std::size_t o = 0; o < count; ++o) {
      chosen[o] = coin(rng);
      any = any || chosen[o];
      all = all && chosen[o];
    }
  }
  std::set<std::size_t> blocks;
  for (auto& [b, o] : orbit)
    if (chosen[o]) blocks.insert(b);
  return blocks;
}

std::vector<std::size_t> iota_range(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// phi with mono o phi = f, object by object and column by column.
StarFunctor factor_through(const StarFunctor& mono, const StarFunctor& f, CategoryPtr source) {
  std::vector<std::size_t> objects;
  for (auto o : f.object_map) {
    auto it = std::find(mono.object_map.begin(), mono.object_map.end(), o);
    if (it == mono.object_map.end()) throw Error("factor_through: object outside the image");
    objects.push_back(static_cast<std::size_t>(it - mono.object_map.begin()));
  }
  StarFunctor out = blank_functor(source, mono.source, objects);
  const std::size_t n = source->size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const ExactMatrix& fm = f.hom_map(a, b);
      std::vector<Vector> cols;
      for (std::size_t k = 0; k < fm.cols(); ++k) {
        auto x = solve(mono.hom_map(objects[a], objects[b]), fm.column(k));
        if (!x) throw Error("factor_through: morphism outside the image");
        cols.push_back(std::move(*x));
      }
      out.hom_map(a, b) = ExactMatrix::from_columns(mono.source->hom_dim(objects[a], objects[b]), cols);
    }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Instance generation

GeneratedInstance random_instance(const InstanceParams& p, std::uint64_t index, GeneratorShape shape) {
  Rng rng = make_rng(p, index, 1);
  const FiniteGroup G = p.resolve_group();
  const std::size_t m = G.size();
  const auto subs = subgroups(G);

  const std::size_t lo = (shape.two_block_orbits ? 2 : 1) + (shape.duplicate_orbit ? 1 : 0);
  const std::size_t hilbert_budget = p.ceiling / m;
  if (p.max_objects < lo || hilbert_budget < lo)
    throw Error("budget too small: this shape needs at least " + std::to_string(lo) + " objects");

  struct Orbit {
    CosetSpace space;
    std::size_t dim;
    std::vector<ExactMatrix> rep;
    std::size_t copy_of;
  };
  std::vector<Orbit> orbits;
  // With a duplicate, room for a second copy of the first orbit is held back.
  const std::size_t target = between(rng, lo, p.max_objects);
  std::size_t objects = 0, hilbert = 0;
  while (objects < target) {
    const bool first_orbit = orbits.empty();
    const std::size_t copies = first_orbit && shape.duplicate_orbit ? 2 : 1;
    const std::size_t hold = first_orbit && shape.two_block_orbits ? 1 : 0;
    const std::size_t room_obj = target - objects - hold;
    const std::size_t room_h = hilbert_budget - hilbert - hold;
    std::vector<std::size_t> fit;
    for (std::size_t s = 0; s < subs.size(); ++s) {
      const std::size_t idx = m / subs[s].size();
      if (copies * idx <= room_obj && copies * idx <= room_h) fit.push_back(s);
    }
    if (fit.empty()) break;
    CosetSpace cs = cosets(G, subs[fit[pick(rng, fit.size())]]);
    const std::size_t k = cs.reps.size();
    const std::size_t d = between(rng, 1, std::min(p.max_hilbert_dim, room_h / (copies * k)));
    orbits.push_back({std::move(cs), d, random_representation(rng, G, subs, d), orbits.size()});
    objects += copies * k;
    hilbert += copies * k * d;
  }
  if (orbits.empty() || (shape.two_block_orbits && orbits.size() < 2))
    throw Error("generator could not place enough orbits within the budget");

  // Blocks: a connected orbit lies in one block (possibly shared with other
  // connected orbits); a split orbit has one block per object, possibly
  // shared coset-wise with an earlier split orbit of the same subgroup.
  const std::size_t base = orbits.size();
  std::vector<std::vector<std::size_t>> labels(base);
  std::vector<bool> connected(base);
  std::vector<std::size_t> connected_groups;
  std::vector<std::size_t> split_owners;
  std::size_t next_label = 0;
  auto assign = [&](std::size_t o, bool allow_share) {
    const std::size_t k = orbits[o].space.reps.size();
    connected[o] = coin(rng);
    if (connected[o]) {
      std::size_t label = next_label;
      if (allow_share && !connected_groups.empty() && coin(rng, 1.0 / 3)) {
        label = connected_groups[pick(rng, connected_groups.size())];
      } else {
        connected_groups.push_back(next_label++);
      }
      labels[o].assign(k, label);
      return;
    }
    std::vector<std::size_t> partners;
    for (auto q : split_owners)
      if (orbits[q].space.coset_of == orbits[o].space.coset_of) partners.push_back(q);
    if (allow_share && !partners.empty() && coin(rng, 1.0 / 3)) {
      labels[o] = labels[partners[pick(rng, partners.size())]];
      return;
    }
    labels[o].clear();
    for (std::size_t i = 0; i < k; ++i) labels[o].push_back(next_label++);
    split_owners.push_back(o);
  };
  for (std::size_t o = 0; o < base; ++o) assign(o, true);
  if (shape.two_block_orbits) {
    std::set<std::vector<std::size_t>> distinct;
    for (std::size_t o = 0; o < base; ++o) {
      if (connected[o]) distinct.insert({labels[o][0]});
      else distinct.insert(labels[o]);
    }
    if (distinct.size() < 2) {
      connected[base - 1] = true;
      labels[base - 1].assign(orbits[base - 1].space.reps.size(), next_label++);
    }
  }
  if (shape.duplicate_orbit) {
    std::size_t base_objects = 0, base_hilbert = 0;
    for (const auto& orb : orbits) {
      base_objects += orb.space.reps.size();
      base_hilbert += orb.space.reps.size() * orb.dim;
    }
    std::vector<std::size_t> fits;
    for (std::size_t q = 0; q < base; ++q) {
      const std::size_t k = orbits[q].space.reps.size();
      if (base_objects + k <= p.max_objects && base_hilbert + k * orbits[q].dim <= hilbert_budget)
        fits.push_back(q);
    }
    const std::size_t o = fits[pick(rng, fits.size())];
    Orbit copy{orbits[o].space, orbits[o].dim, random_representation(rng, G, subs, orbits[o].dim), o};
    orbits.push_back(std::move(copy));
    labels.push_back(labels[o]);
  }

  GeneratedInstance inst;
  std::vector<std::string> names;
  std::vector<std::size_t> dims;
  std::vector<std::pair<std::size_t, std::size_t>> where;  // object -> (orbit, coset)
  std::vector<std::vector<std::size_t>> first(orbits.size());
  for (std::size_t o = 0; o < orbits.size(); ++o)
    for (std::size_t i = 0; i < orbits[o].space.reps.size(); ++i) {
      first[o].push_back(names.size());
      names.push_back(orbit_name(o, i));
      dims.push_back(orbits[o].dim);
      inst.block.push_back(labels[o][i]);
      where.emplace_back(o, i);
    }
  const std::size_t n = names.size();
  for (std::size_t x = 0; x < n; ++x) {
    const auto [o, i] = where[x];
    const bool dup = orbits[o].copy_of != o;
    inst.kept.push_back(!dup);
    inst.representative.push_back(dup ? first[orbits[o].copy_of][i] : x);
  }

  std::vector<ExactMatrix> U;
  for (std::size_t x = 0; x < n; ++x) U.push_back(random_monomial_unitary(rng, dims[x]));
  std::vector<std::vector<std::size_t>> perms(m, std::vector<std::size_t>(n));
  std::vector<std::vector<ExactMatrix>> V(m);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t x = 0; x < n; ++x) {
      const auto [o, i] = where[x];
      const std::size_t y = first[o][orbits[o].space.act[g][i]];
      perms[g][x] = y;
      V[g].push_back(U[y] * orbits[o].rep[g] * U[x].adjoint());
    }

  CategoryPtr cat = make_category(block_matrix_category(names, dims, inst.block));
  inst.action = share(action_from_spatial(G, cat, perms, std::move(V)));
  std::set<std::size_t> distinct_blocks(inst.block.begin(), inst.block.end());
  inst.label = "seed " + std::to_string(p.seed) + " index " + std::to_string(index) + ": " +
               std::to_string(n) + " objects, Hilbert total " +
               std::to_string(std::accumulate(dims.begin(), dims.end(), std::size_t{0})) + ", " +
               std::to_string(distinct_blocks.size()) + " blocks";
  return inst;
}

ExactSequenceInstance random_exact_sequence(const InstanceParams& p, std::uint64_t index) {
  ExactSequenceInstance es;
  es.middle = random_instance(p, index, {false, true});
  Rng rng = make_rng(p, index, 2);
  const GroupAction& act = *es.middle.action;
  CategoryPtr d = act.category;
  const auto blocks = random_invariant_blocks(rng, es.middle);
  es.ideal = ideal_from_subspaces(d, block_spans(*d, es.middle, iota_range(d->size()), blocks));
  es.ideal_action = share(action_from_spatial(act.group, es.ideal.ideal, permutations(act), *act.spatial));
  es.quotient = quotient_by_ideal(es.ideal);
  if (!es.quotient.has_rep) throw Error("quotient has no concrete representation: " + es.quotient.rep_note);
  es.quotient_action = share(action_from_spatial(act.group, es.quotient.cat, permutations(act), *act.spatial));
  return es;
}

std::vector<Vector> unit_from_counit(const WeaklyEquivariant& wf, const StarFunctor& psi,
                                     const std::vector<Vector>& kappa) {
  std::vector<Vector> eta;
  for (std::size_t b = 0; b < wf.phi.source->size(); ++b) {
    const std::size_t pb = wf.phi.object_map[b];
    auto x = solve(wf.phi.hom_map(psi.object_map[pb], b), kappa[pb]);
    if (!x) throw Error("unit_from_counit: kappa is not in the image of phi at " +
                        wf.phi.source->object_name(b));
    eta.push_back(std::move(*x));
  }
  return eta;
}

WeakEquivalenceInstance random_weak_equivalence(const InstanceParams& p, std::uint64_t index) {
  Rng rng = make_rng(p, index, 3);
  WeakEquivalenceInstance w;
  if (index % 2 == 0) {
    InstanceParams small = p;
    small.max_objects = std::min<std::size_t>(p.max_objects, 2);
    GeneratedInstance inst = random_instance(small, index);
    const GroupAction& act = *inst.action;
    const Category& c = *act.category;
    CrossedProduct cp = crossed_product(act);
    LConstruction l = L_of(act, cp);
    const auto chi = random_character(rng, act.group);
    std::vector<std::vector<Vector>> rho(act.group.size());
    for (std::size_t g = 0; g < act.group.size(); ++g)
      for (std::size_t x = 0; x < l.lambda.source->size(); ++x)
        rho[g].push_back(scale(chi[g], c.identity(l.lambda.object_map[x])));
    w.wf = {share(l.action), inst.action, l.lambda, std::move(rho)};
    w.psi = l.section;
    for (std::size_t x = 0; x < c.size(); ++x) w.kappa.push_back(c.identity(x));
    w.family = "lambda: L(C) -> C, " + inst.label;
    return w;
  }

  GeneratedInstance inst = random_instance(p, index, {true, false});
  const GroupAction& act = *inst.action;
  const Category& d = *act.category;
  const auto kept = kept_objects(inst);
  Subcategory sub = full_subcategory(act.category, kept);
  ActionPtr src = restrict_action(act, sub.cat, kept);
  const auto chi = random_character(rng, act.group);
  std::vector<std::vector<Vector>> rho(act.group.size());
  for (std::size_t g = 0; g < act.group.size(); ++g)
    for (auto x : kept) rho[g].push_back(scale(chi[g], d.identity(x)));
  w.wf = {src, inst.action, sub.inclusion, std::move(rho)};

  std::vector<std::size_t> pos(d.size());
  for (std::size_t i = 0; i < kept.size(); ++i) pos[kept[i]] = i;
  std::vector<std::size_t> objects;
  for (std::size_t x = 0; x < d.size(); ++x) objects.push_back(pos[inst.representative[x]]);
  w.psi = blank_functor(act.category, sub.cat, objects);
  for (std::size_t x = 0; x < d.size(); ++x)
    for (std::size_t y = 0; y < d.size(); ++y) {
      const std::size_t rx = inst.representative[x], ry = inst.representative[y];
      const Vector ux_star = d.adjoint(x, rx, identity_between(d, x, rx));
      const Vector uy = identity_between(d, y, ry);
      std::vector<Vector> cols;
      for (std::size_t f = 0; f < d.hom_dim(x, y); ++f) {
        Vector v = d.compose(rx, y, ry, uy, d.compose(rx, x, y, unit_vector(d.hom_dim(x, y), f), ux_star));
        auto c = solve(sub.inclusion.hom_map(pos[rx], pos[ry]), v);
        if (!c) throw Error("inclusion family: conjugate leaves the subcategory");
        cols.push_back(std::move(*c));
      }
      w.psi.hom_map(x, y) = ExactMatrix::from_columns(sub.cat->hom_dim(pos[rx], pos[ry]), cols);
    }
  for (std::size_t x = 0; x < d.size(); ++x) {
    const std::size_t rx = inst.representative[x];
    w.kappa.push_back(d.adjoint(x, rx, identity_between(d, x, rx)));
  }
  w.family = "inclusion of kept objects, " + inst.label;
  return w;
}

CrossedEquivalence cross_weak_equivalence(const WeakEquivalenceInstance& w, const CrossedProduct& src,
                                          const CrossedProduct& tgt) {
  WeakInverse inv = invert_weak_equivalence(w.wf, w.psi, w.kappa);
  if (!inv.verdict.verified()) return {inv.verdict, std::nullopt};
  const WeaklyEquivariant& back = *inv.inverse;
  const std::vector<Vector> eta = unit_from_counit(w.wf, w.psi, w.kappa);
  WeaklyEquivariant id_src = strictly_equivariant(identity_functor(w.wf.source->category), w.wf.source, w.wf.source);
  WeaklyEquivariant id_tgt = strictly_equivariant(identity_functor(w.wf.target->category), w.wf.target, w.wf.target);
  UnitaryEquivalenceCertificate cert;
  cert.forward = crossed_of_weakly_equivariant(w.wf, src, tgt);
  cert.backward = crossed_of_weakly_equivariant(back, tgt, src);
  cert.eta = crossed_of_transformation(compose(back, w.wf), id_src, eta, src, src);
  cert.eps = crossed_of_transformation(compose(w.wf, back), id_tgt, w.kappa, tgt, tgt);
  Verdict v = verify_unitary_equivalence(cert);
  return {v, std::move(cert)};
}

ExcisiveInstance random_excisive_square(const InstanceParams& p, std::uint64_t index) {
  GeneratedInstance inst = random_instance(p, index, {true, true});
  Rng rng = make_rng(p, index, 4);
  const GroupAction& act = *inst.action;
  CategoryPtr d = act.category;
  const Category& dc = *d;
  const std::size_t n = dc.size();
  const auto blocks = random_invariant_blocks(rng, inst);
  const auto kept = kept_objects(inst);

  ExcisiveInstance ex;
  ex.d = inst.action;
  IdealInclusion jinc = ideal_from_subspaces(d, block_spans(dc, inst, iota_range(n), blocks));
  ex.c = share(action_from_spatial(act.group, jinc.ideal, permutations(act), *act.spatial));
  Subcategory sub = full_subcategory(d, kept);
  ex.b = restrict_action(act, sub.cat, kept);
  IdealInclusion iinc = ideal_from_subspaces(sub.cat, block_spans(dc, inst, kept, blocks));
  ex.a = restrict_action(act, iinc.ideal, kept);

  ex.square.i = iinc.inclusion;
  ex.square.j = jinc.inclusion;
  ex.square.beta = sub.inclusion;
  ex.square.alpha = factor_through(jinc.inclusion, compose(sub.inclusion, iinc.inclusion), iinc.ideal);

  ex.top_quotient = quotient_by_ideal(iinc);
  ex.bottom_quotient = quotient_by_ideal(jinc);
  if (!ex.top_quotient.has_rep || !ex.bottom_quotient.has_rep)
    throw Error("excisive square: quotients lack concrete representations");
  ex.top_action = restrict_action(act, ex.top_quotient.cat, kept);
  ex.bottom_action = share(action_from_spatial(act.group, ex.bottom_quotient.cat, permutations(act), *act.spatial));

  const Quotient& top = ex.top_quotient;
  const Quotient& bottom = ex.bottom_quotient;
  StarFunctor induced = induced_quotient_functor(top, bottom, sub.inclusion);
  WeakEquivalenceInstance& w = ex.quotient_equivalence;
  w.wf = strictly_equivariant(induced, ex.top_action, ex.bottom_action);
  w.family = "induced quotient functor, " + inst.label;

  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < kept.size(); ++i) pos[kept[i]] = i;
  std::vector<std::size_t> objects;
  for (std::size_t x = 0; x < n; ++x) objects.push_back(pos[inst.representative[x]]);
  w.psi = blank_functor(bottom.cat, top.cat, objects);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t rx = inst.representative[x], ry = inst.representative[y];
      const Vector ux_star = dc.adjoint(x, rx, identity_between(dc, x, rx));
      const Vector uy = identity_between(dc, y, ry);
      const ExactMatrix& lift = bottom.lifts[x * n + y];
      std::vector<Vector> cols;
      for (std::size_t f = 0; f < lift.cols(); ++f) {
        Vector v = dc.compose(rx, y, ry, uy, dc.compose(rx, x, y, lift.column(f), ux_star));
        auto c = solve(sub.inclusion.hom_map(pos[rx], pos[ry]), v);
        if (!c) throw Error("excisive square: conjugate leaves the subcategory");
        cols.push_back(top.qmap.apply(pos[rx], pos[ry], *c));
      }
      w.psi.hom_map(x, y) = ExactMatrix::from_columns(top.cat->hom_dim(pos[rx], pos[ry]), cols);
    }
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t rx = inst.representative[x];
    w.kappa.push_back(bottom.qmap.apply(rx, x, dc.adjoint(x, rx, identity_between(dc, x, rx))));
  }

  UnitaryEquivalenceCertificate cert;
  cert.forward = induced;
  cert.backward = w.psi;
  cert.eta = {compose(w.psi, induced), identity_functor(top.cat), unit_from_counit(w.wf, w.psi, w.kappa)};
  cert.eps = {compose(induced, w.psi), identity_functor(bottom.cat), w.kappa};
  ex.square.certificate = std::move(cert);
  return ex;
}

ExcisiveSquare cross_square(const ExcisiveInstance& inst) {
  const CrossedProduct cpa = crossed_product(*inst.a), cpb = crossed_product(*inst.b);
  const CrossedProduct cpc = crossed_product(*inst.c), cpd = crossed_product(*inst.d);
  ExcisiveSquare out;
  out.i = crossed_functor(inst.square.i, cpa, cpb);
  out.j = crossed_functor(inst.square.j, cpc, cpd);
  out.alpha = crossed_functor(inst.square.alpha, cpa, cpc);
  out.beta = crossed_functor(inst.square.beta, cpb, cpd);

  const CrossedProduct cpt = crossed_product(*inst.top_action);
  const CrossedProduct cpq = crossed_product(*inst.bottom_action);
  CrossedEquivalence ce = cross_weak_equivalence(inst.quotient_equivalence, cpt, cpq);
  if (!ce.certificate) return out;

  // (X x| G)/(Y x| G) -> (X/Y) x| G: the crossed quotient map on lifts.
  auto comparison = [](const CrossedProduct& big, const CrossedProduct& small, const StarFunctor& inc,
                       const Quotient& q, const CrossedProduct& crossed_q) {
    Quotient crossed_quot = quotient_by_ideal({small.category, big.category, inc});
    StarFunctor cq = crossed_functor(q.qmap, big, crossed_q);
    const std::size_t n = big.category->size();
    StarFunctor iso = blank_functor(crossed_quot.cat, crossed_q.category, iota_range(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) iso.hom_map(a, b) = cq.hom_map(a, b) * crossed_quot.lifts[a * n + b];
    return iso;
  };
  StarFunctor top_iso = comparison(cpb, cpa, out.i, inst.top_quotient, cpt);
  StarFunctor bottom_iso = comparison(cpd, cpc, out.j, inst.bottom_quotient, cpq);
  out.certificate =
      transport_certificate(*ce.certificate, invert_isomorphism(top_iso), invert_isomorphism(bottom_iso));
  return out;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

struct Checks {
  std::vector<std::string> lines;
  std::optional<Verdict> failure;

  bool expect(bool ok, const std::string& what, const std::string& detail = {}) {
    lines.push_back(std::string(ok ? "[ok] " : "[fail] ") + what + (detail.empty() ? "" : ": " + detail));
    if (!ok && !failure) failure = Verdict::no(what + (detail.empty() ? "" : ": " + detail));
    return ok;
  }
  bool expect(const ValidationReport& r, const std::string& what) {
    return expect(r.ok(), what, r.ok() ? std::string{} : r.summary());
  }
  bool expect(const Verdict& v, const std::string& what) {
    if (v.status == Status::inconclusive) {
      lines.push_back("[inconclusive] " + what + ": " + v.evidence);
      if (!failure) failure = Verdict::unsure(what + ": " + v.evidence);
      return false;
    }
    return expect(v.verified(), what, v.verified() ? std::string{} : v.evidence);
  }
  Verdict verdict(const std::string& success) const { return failure ? *failure : Verdict::yes(success); }
};

json params_json(const InstanceParams& p) {
  return {{"seed", p.seed},
          {"max_objects", p.max_objects},
          {"max_hilbert_dim", p.max_hilbert_dim},
          {"group", p.group_table ? to_json(*p.group_table) : json(p.group)},
          {"instances", p.instances},
          {"tol", p.tol},
          {"ceiling", p.ceiling},
          {"jobs", p.jobs}};
}

std::size_t hom_total(const Category& c) { return c.total_dim(); }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::size_t center_dim(const Category& alg) {
  const std::size_t d = alg.hom_dim(0, 0);
  ExactMatrix m(d * d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      Vector left = densify(alg.comp(0, 0, 0, k, j), d);
      Vector right = densify(alg.comp(0, 0, 0, j, k), d);
      for (std::size_t r = 0; r < d; ++r) m(j * d + r, k) = left[r] - right[r];
    }
  return d - exact_rank(m);
}

bool injective(const ExactMatrix& m) { return exact_rank(m) == m.cols(); }

bool all_injective(const StarFunctor& f) {
  const std::size_t n = f.source->size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!injective(f.hom_map(a, b))) return false;
  return true;
}

// Random presentations with at most four objects and hom dimensions at most
// four: concrete block categories, optionally with a diagonal endomorphism
// algebra, in a randomly mixed basis.
Category random_presentation(Rng& rng) {
  const std::size_t n = between(rng, 1, 4);
  std::vector<std::string> names;
  std::vector<std::size_t> hd, block;
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back("X" + std::to_string(a));
    hd.push_back(between(rng, a == 0 ? 1 : 0, 2));
    block.push_back(pick(rng, n));
  }
  ConcreteSpans raw = empty_spans(names, hd);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (block[a] != block[b]) continue;
      std::vector<ExactMatrix> units;
      const bool alone = std::count(block.begin(), block.end(), block[a]) == 1;
      const bool diagonal = a == b && alone && hd[a] == 2 && coin(rng);
      for (std::size_t r = 0; r < hd[b]; ++r)
        for (std::size_t s = 0; s < hd[a]; ++s) {
          if (diagonal && r != s) continue;
          ExactMatrix e(hd[b], hd[a]);
          e(r, s) = Scalar(1);
          units.push_back(std::move(e));
        }
      static const std::vector<Scalar> mix = {Scalar(0), Scalar(1), Scalar(-1), Scalar::i()};
      std::vector<ExactMatrix> mixed;
      for (std::size_t k = 0; k < units.size(); ++k) {
        ExactMatrix v = units[k];
        for (std::size_t j = k + 1; j < units.size(); ++j) v = v + mix[pick(rng, mix.size())] * units[j];
        mixed.push_back(std::move(v));
      }
      std::shuffle(mixed.begin(), mixed.end(), rng);
      raw.at(a, b) = std::move(mixed);
    }
  Category c = presentation_from_concrete(raw);
  if (coin(rng)) c.concrete.reset();
  return c;
}

struct Mutation {
  Category cat;
  std::string object;
  std::string kind;
};

std::optional<Mutation> mutate(Rng& rng, const Category& c) {
  const std::size_t n = c.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> ends;
  for (std::size_t a = 0; a < n; ++a) {
    if (c.hom_dim(a, a) > 0 && c.unit(a)) ends.push_back(a);
    for (std::size_t b = 0; b < n; ++b)
      if (c.hom_dim(a, b) > 0) pairs.emplace_back(a, b);
  }
  if (pairs.empty()) return std::nullopt;
  Mutation m{c, {}, {}};
  const std::size_t kind = ends.empty() ? 0 : pick(rng, 3);
  if (kind == 0) {
    const auto [a, b] = pairs[pick(rng, pairs.size())];
    m.cat.set_star(a, b, Scalar(2) * c.star(a, b));
    m.object = c.object_name(a);
    m.kind = "star scaled on " + c.object_name(a) + "->" + c.object_name(b);
  } else if (kind == 1) {
    const std::size_t a = ends[pick(rng, ends.size())];
    m.cat.set_unit(a, scale(Scalar(2), *c.unit(a)));
    m.object = c.object_name(a);
    m.kind = "unit scaled at " + c.object_name(a);
  } else {
    const std::size_t a = ends[pick(rng, ends.size())];
    const std::size_t d = c.hom_dim(a, a);
    for (std::size_t g = 0; g < d; ++g)
      for (std::size_t f = 0; f < d; ++f) {
        SparseVector v = c.comp(a, a, a, g, f);
        for (auto& t : v) t.value = Scalar(2) * t.value;
        m.cat.set_comp(a, a, a, g, f, std::move(v));
      }
    m.object = c.object_name(a);
    m.kind = "composition scaled on End(" + c.object_name(a) + ")";
  }
  return m;
}

Verdict run_axioms(const InstanceParams& p, std::size_t index, Checks& ck, json& repro) {
  Rng rng = make_rng(p, index, 10);
  Category c = random_presentation(rng);
  repro = instance_file("category", to_json(c));
  bool bounded = c.size() <= 4;
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b) bounded = bounded && c.hom_dim(a, b) <= 4;
  ck.expect(bounded, "presentation within bounds");
  ck.expect(validate_presentation(c), "valid presentation accepted");
  Reader reader;
  CategoryPtr back = reader.category(to_json(c), "/body");
  ck.expect(dump_canonical(to_json(*back)) == dump_canonical(to_json(c)), "serialization round trip");

  auto m = mutate(rng, c);
  if (!m) {
    ck.expect(true, "mutation", "all hom spaces zero; nothing to corrupt");
    return ck.verdict("zero presentation accepted");
  }
  ValidationReport r = validate_presentation(m->cat);
  bool located = false;
  for (const auto& v : r.violations) located = located || v.location.find(m->object) != std::string::npos;
  ck.expect(!r.ok(), "mutated presentation rejected", m->kind);
  ck.expect(located, "violation located at the mutated object",
            r.ok() ? std::string{} : r.violations.front().kind + " at " + r.violations.front().location);
  return ck.verdict("valid accepted; " + m->kind + " rejected at " +
                    (r.ok() ? std::string{} : r.violations.front().location));
}

Verdict run_dimension(const InstanceParams& p, std::size_t index, Checks& ck, json& repro) {
  GeneratedInstance inst = random_instance(p, index);
  repro = instance_file("action", to_json(*inst.action));
  const GroupAction& act = *inst.action;
  const Category& c = *act.category;
  const FiniteGroup& G = act.group;
  ck.expect(validate_action(act), "generated action valid");
  CrossedProduct cp = crossed_product(act);
  bool law = true;
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b) {
      std::size_t sum = 0;
      for (std::size_t g = 0; g < G.size(); ++g) sum += c.hom_dim(a, act.act(G.inv(g), b));
      law = law && cp.category->hom_dim(a, b) == sum;
    }
  ck.expect(law, "dim Hom(C,C') = sum_g dim Hom(C, g^-1 C')");
  ck.expect(hom_total(*cp.category) == G.size() * hom_total(c), "total dimension |G| dim C",
            std::to_string(hom_total(*cp.category)));
  ck.expect(validate_presentation(*cp.category), "crossed product axioms");
  ck.expect(validate_functor(cp.iota), "iota is a *-functor");
  ck.expect(all_injective(cp.iota), "iota injective on homs");

  CrossedProduct trivial = crossed_product(trivial_action(FiniteGroup::trivial(), act.category));
  bool identity = true;
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b)
      identity = identity && trivial.iota.hom_map(a, b) == ExactMatrix::identity(c.hom_dim(a, b));
  ck.expect(identity && is_bijective_on_objects(trivial.iota), "trivial group: iota is the identity on homs");
  ck.expect(validate_functor(invert_isomorphism(trivial.iota)), "trivial group: inverse of iota is a *-functor");
  return ck.verdict(inst.label);
}

Verdict run_worked(const InstanceParams& p, Checks& ck) {
  const double tol = p.tol;
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  {
    CategoryPtr c = make_category(full_matrix_category({"C"}, {1}));
    CrossedProduct cp = crossed_product(trivial_action(z2, c));
    ck.expect(cp.category->hom_dim(0, 0) == 2, "C x| Z/2: End has dimension 2");
    TotalAlgebra alg = a_alg(cp.category);
    ck.expect(center_dim(*alg.algebra) == 2, "C x| Z/2 commutative");
    RegularRep reg = regular_representation(cp);
    ck.expect(reg.verdict, "regular representation");
    Morphism sum{0, 0, Vector(2)};
    sum.coords[cp.index(0, 0, z2.identity(), 0)] = Scalar(1);
    Morphism s{0, 0, Vector(2)};
    const std::size_t sigma = z2.find("g").value();
    s.coords[cp.index(0, 0, sigma, 0)] = Scalar(1);
    sum.coords[cp.index(0, 0, sigma, 0)] = Scalar(1);
    const double n_sum = max_norm(reg, sum), n_s = max_norm(reg, s);
    ck.expect(std::abs(n_sum - 2.0) <= tol, "||(1,e)+(1,sigma)|| = 2", std::to_string(n_sum));
    ck.expect(std::abs(n_s - 1.0) <= tol, "||(1,sigma)|| = 1", std::to_string(n_s));
  }
  {
    CategoryPtr c = make_category(block_matrix_category({"x", "y"}, {1, 1}, {0, 1}));
    const std::size_t sigma = z2.find("g").value();
    std::vector<std::vector<std::size_t>> perms(2);
    perms[z2.identity()] = {0, 1};
    perms[sigma] = {1, 0};
    std::vector<std::vector<ExactMatrix>> V(2, {ExactMatrix::identity(1), ExactMatrix::identity(1)});
    // the swap as the one-object algebra C (+) C with the flip
    TotalAlgebra base = a_alg(c);
    GroupAction act = action_from_spatial(z2, c, perms, V);
    CrossedProduct cp = crossed_product(act);
    TotalAlgebra alg = a_alg(cp.category);
    ck.expect(base.dimension() == 2, "C (+) C has dimension 2");
    ck.expect(alg.dimension() == 4, "(C (+) C) x| Z/2 has dimension 4", std::to_string(alg.dimension()));
    ck.expect(center_dim(*alg.algebra) == 1, "center is one-dimensional",
              std::to_string(center_dim(*alg.algebra)));
    TotalAlgebra m2 = a_alg(make_category(full_matrix_category({"H"}, {2})));
    ck.expect(m2.dimension() == alg.dimension() && center_dim(*m2.algebra) == center_dim(*alg.algebra),
              "matches M_2(C): dimension 4, center 1");
  }
  return ck.verdict("worked examples");
}

Verdict run_iota(const InstanceParams& p, std::size_t index, Checks& ck, json& repro) {
  GeneratedInstance inst = random_instance(p, index);
  repro = instance_file("action", to_json(*inst.action));
  Rng rng = make_rng(p, index, 11);
  const Category& c = *inst.action->category;
  CrossedProduct cp = crossed_product(*inst.action);
  RegularRep reg = regular_representation(cp);
  ck.expect(reg.verdict, "regular representation");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b)
      if (c.hom_dim(a, b) > 0) pairs.emplace_back(a, b);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const auto [a, b] = pairs[pick(rng, pairs.size())];
    Morphism f{a, b, random_vector(rng, c.hom_dim(a, b))};
    const double lhs = max_norm(reg, cp.iota.apply(f)), rhs = norm(c, f);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  ck.expect(worst <= p.tol, "|| iota f || = || f || on 10 morphisms", "max deviation " + sci(worst));
  return ck.verdict(inst.label);
}

Verdict run_nu(const InstanceParams& p, std::size_t index, Checks& ck, json& repro) {
  GeneratedInstance inst = random_instance(p, index);
  repro = instance_file("action", to_json(*inst.action));
  Rng rng = make_rng(p, index, 12);
  NuMap nm = nu_map(*inst.action);
  ck.expect(nm.verdict, "nu bijective *-homomorphism");
  RegularRep left_reg = regular_representation(nm.left);
  RegularRep reg = regular_representation(nm.cp);
  TotalAlgebra right = a_alg(reg.category);
  ck.expect(left_reg.verdict, "regular representation of A(C) x| G");
  double worst = 0.0;
  const std::size_t dim = nm.left.category->hom_dim(0, 0);
  for (int t = 0; t < 10; ++t) {
    Morphism x{0, 0, random_vector(rng, dim)};
    Morphism y = nm.nu.apply(x);
    worst = std::max(worst, std::abs(max_norm(left_reg, x) - norm(*right.algebra, y)));
  }
  ck.expect(worst <= p.tol, "|| nu x || = || x || on 10 elements", "max deviation " + sci(worst));
  return ck.verdict(inst.label);
}

Verdict run_exactness(const InstanceParams& p, std::size_t index, Checks& ck, json& repro) {
  ExactSequenceInstance es = random_exact_sequence(p, index);
  repro = instance_file("action", to_json(*es.middle.action));
  const StarFunctor& i = es.ideal.inclusion;
  const StarFunctor& q = es.quotient.qmap;
  ck.expect(es.middle.action->category->unital(), "middle term unital");
  ck.expect(validate_ideal(es.ideal), "ideal");
  ck.expect(validate_action(*es.ideal_action), "action on the ideal");
  ck.expect(validate_action(*es.quotient_action), "action on the quotient");
  ck.expect(check_exact(i, q), "base sequence exact");

  CrossedProduct cpi = crossed_product(*es.ideal_action);
  CrossedProduct cpd = crossed_product(*es.middle.action);
  CrossedProduct cpq = crossed_product(*es.quotient_action);
  StarFunctor ci = crossed_functor(i, cpi, cpd), cq = crossed_functor(q, cpd, cpq);
  ck.expect(check_exact(ci, cq), "crossed sequence exact (algebraic)");

  RegularRep ri = regular_representation(cpi), rd = regular_representation(cpd), rq = regular_representation(cpq);
  bool zero = true;
  Completion comp[3];
  const RegularRep* regs[3] = {&ri, &rd, &rq};
  for (int t = 0; t < 3; ++t) {
    SeminormedCategory sn = seminormed_from_concrete(regs[t]->category);
    comp[t] = complete(sn);
    zero = zero && comp[t].null_space_zero;
  }
  ck.expect(zero, "null spaces of the crossed terms are zero");
  StarFunctor ti = compose(comp[1].quotient.qmap, compose(ci, invert_isomorphism(comp[0].quotient.qmap)));
  StarFunctor tq = compose(comp[2].quotient.qmap, compose(cq, invert_isomorphism(comp[1].quotient.qmap)));
  ck.expect(check_exact(ti, tq), "crossed sequence exact (completed)");

  TotalAlgebra ai = a_alg(es.ideal.ideal), ad = a_alg(es.ideal.ambient), aq = a_alg(es.quotient.cat);
  ck.expect(check_algebra_exact(a_alg_map(i, ai, ad), a_alg_map(q, ad, aq)), "A^alg exact (base)");
  TotalAlgebra xi = a_alg(cpi.category), xd = a_alg(cpd.category), xq = a_alg(cpq.category);
  ck.expect(check_algebra_exact(a_alg_map(ci, xi, xd), a_alg_map(cq, xd, xq)), "A^alg exact (crossed)");
  return ck.verdict(es.middle.label);
}

Verdict run_excision(const InstanceParams& p, std::size_t index, Checks& ck, json& repro) {
  ExcisiveInstance ex = random_excisive_square(p, index);
  repro = instance_file("square", to_json(ex.square));
  ck.expect(check_excisive(ex.square).verdict, "base square excisive");
  ExcisiveSquare crossed = cross_square(ex);
  ck.expect(crossed.certificate.has_value(), "crossed certificate built");
  ck.expect(check_excisive(crossed).verdict, "crossed square excisive");
  return ck.verdict(ex.quotient_equivalence.family);
}

Verdict run_colimit(const InstanceParams& p, std::size_t index, Checks& ck, json& repro) {
  GeneratedInstance inst = random_instance(p, index);
  repro = instance_file("action", to_json(*inst.action));
  const GroupAction& act = *inst.action;
  CrossedProduct cp = crossed_product(act);
  LConstruction l = L_of(act, cp);
  ck.expect(validate_action(l.action), "action on L(C)");
  ck.expect(validate_functor(l.c_alg), "c_alg is a *-functor");
  ck.expect(is_invariant(l.c_alg, l.action), "c_alg invariant");

  StarFunctor id = identity_functor(cp.category);
  ck.expect(same_functor(colimit_factorization(l, cp, l.c_alg), id), "c_alg factors through the identity");

  TotalAlgebra alg = a_alg(cp.category);
  StarFunctor phi = compose(alg.rho, l.c_alg);
  ck.expect(is_invariant(phi, l.action), "rho c_alg invariant");
  StarFunctor sigma = colimit_factorization(l, cp, phi);
  ck.expect(same_functor(sigma, alg.rho), "sigma -> sigma c_alg -> sigma");
  ck.expect(same_functor(compose(sigma, l.c_alg), phi), "phi -> sigma -> sigma c_alg = phi");

  CovariantRep cov = covariant_from_sigma(id, cp);
  ck.expect(validate_covariant(cov, act), "covariant pair of the identity");
  ck.expect(same_functor(sigma_from_covariant(cov, cp), id), "covariant round trip");
  return ck.verdict(inst.label);
}

Verdict run_weakequiv(const InstanceParams& p, std::size_t index, Checks& ck, json& repro) {
  WeakEquivalenceInstance w = random_weak_equivalence(p, index);
  repro = instance_file("action", to_json(*w.wf.target));
  ck.expect(validate_weakly_equivariant(w.wf), "weakly equivariant functor");
  ck.expect(is_fully_faithful(w.wf.phi), "fully faithful");
  CrossedProduct src = crossed_product(*w.wf.source), tgt = crossed_product(*w.wf.target);
  CrossedEquivalence ce = cross_weak_equivalence(w, src, tgt);
  ck.expect(ce.certificate.has_value(), "invert_weak_equivalence succeeded",
            ce.certificate ? std::string{} : ce.verdict.evidence);
  if (ce.certificate) ck.expect(ce.verdict, "crossed certificate verifies");
  return ck.verdict(w.family);
}

Verdict run_adjunctions(const InstanceParams& p, std::size_t index, Checks& ck, json& repro) {
  ExactSequenceInstance es = random_exact_sequence(p, index);
  repro = instance_file("action", to_json(*es.middle.action));
  CategoryPtr c = es.ideal.ideal, d = es.ideal.ambient;
  const StarFunctor& phi = es.ideal.inclusion;
  Unitalization u = unitalize(c);
  ck.expect(validate_presentation(*u.plus), "C+ axioms");
  ck.expect(u.plus->unital(), "C+ unital");
  bool shape = true;
  for (std::size_t a = 0; a < c->size(); ++a)
    for (std::size_t b = 0; b < c->size(); ++b) {
      const std::size_t dim = c->hom_dim(a, b);
      ExactMatrix expect(u.plus->hom_dim(a, b), dim);
      for (std::size_t k = 0; k < dim; ++k) expect(k, k) = Scalar(1);
      shape = shape && u.alpha.hom_map(a, b) == expect;
    }
  ck.expect(shape, "alpha(f) = (f, 0)");
  ck.expect(validate_functor(u.alpha), "alpha is a *-functor");

  StarFunctor ext = extend_to_unitalization(u, phi);
  ck.expect(validate_functor(ext), "extension is a *-functor");
  ck.expect(is_unital_functor(ext), "extension unital");
  ck.expect(same_functor(compose(ext, u.alpha), phi), "extension restricts to phi");
  ck.expect(extension_is_unique(u), "alpha image and identities span C+");

  Unitalization du = unitalize(d);
  StarFunctor counit = unitalization_counit(du);
  StarFunctor other = compose(counit, unitalization_map(u, du, phi));
  ck.expect(is_unital_functor(other) && same_functor(other, ext), "second unital extension equals the first");
  ck.expect(same_functor(compose(counit, du.alpha), identity_functor(d)), "triangle epsilon_D alpha_D = id");
  Unitalization uu = unitalize(u.plus);
  ck.expect(same_functor(compose(unitalization_counit(uu), unitalization_map(u, uu, u.alpha)),
                         identity_functor(u.plus)),
            "triangle epsilon_{C+} (alpha_C)+ = id");
  return ck.verdict(es.middle.label);
}

InstanceResult run_once(const std::string& name, const InstanceParams& p, std::size_t index) {
  InstanceResult res;
  res.index = index;
  const auto start = std::chrono::steady_clock::now();
  Checks ck;
  json repro;
  try {
    if (name == "axioms") res.verdict = run_axioms(p, index, ck, repro);
    else if (name == "dimension") res.verdict = run_dimension(p, index, ck, repro);
    else if (name == "worked") res.verdict = run_worked(p, ck);
    else if (name == "iota") res.verdict = run_iota(p, index, ck, repro);
    else if (name == "nu") res.verdict = run_nu(p, index, ck, repro);
    else if (name == "exactness") res.verdict = run_exactness(p, index, ck, repro);
    else if (name == "excision") res.verdict = run_excision(p, index, ck, repro);
    else if (name == "colimit") res.verdict = run_colimit(p, index, ck, repro);
    else if (name == "weakequiv") res.verdict = run_weakequiv(p, index, ck, repro);
    else if (name == "adjunctions") res.verdict = run_adjunctions(p, index, ck, repro);
    else throw Error("unknown suite " + name);
  } catch (const std::exception& e) {
    ck.lines.push_back(std::string("[fail] exception: ") + e.what());
    res.verdict = Verdict::no(std::string("exception: ") + e.what());
  }
  res.checks = std::move(ck.lines);
  if (res.verdict.status == Status::refuted) {
    json r = {{"suite", name}, {"index", index}, {"params", params_json(p)}};
    if (!repro.is_null()) r["instance"] = std::move(repro);
    res.reproducer = std::move(r);
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"axioms", "dimension", "worked",    "iota",
                                                 "nu",     "exactness", "excision",  "colimit",
                                                 "weakequiv", "adjunctions"};
  return names;
}

InstanceResult run_instance(const std::string& name, const InstanceParams& params, std::size_t index) {
  InstanceResult res = run_once(name, params, index);
  if (res.verdict.status != Status::inconclusive) return res;
  InstanceParams tight = params;
  tight.tol = params.tol / 100.0;
  InstanceResult again = run_once(name, tight, index);
  again.rerun = true;
  again.seconds += res.seconds;
  return again;
}

VerificationReport verify_suite(const std::string& name, const InstanceParams& params) {
  validate_params(params);
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) throw Error("unknown suite " + name);
  VerificationReport rep;
  rep.suite = name;
  rep.params = params;
  const std::size_t count = name == "worked" ? 1 : params.instances;
  rep.results.resize(count);
  const auto start = std::chrono::steady_clock::now();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) rep.results[k] = run_instance(name, params, k);
  };
  const std::size_t threads = std::min(params.jobs, count);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::size_t VerificationReport::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [&](const InstanceResult& r) { return r.verdict.status == s; }));
}

json VerificationReport::to_json() const {
  json results_json = json::array();
  for (const auto& r : results) {
    json j = {{"index", r.index},
              {"status", to_string(r.verdict.status)},
              {"evidence", r.verdict.evidence},
              {"checks", r.checks},
              {"seconds", r.seconds},
              {"rerun", r.rerun}};
    if (r.reproducer) j["reproducer"] = *r.reproducer;
    results_json.push_back(std::move(j));
  }
  return {{"suite", suite},
          {"params", params_json(params)},
          {"summary",
           {{"verified", count(Status::verified)},
            {"refuted", count(Status::refuted)},
            {"inconclusive", count(Status::inconclusive)},
            {"total", results.size()}}},
          {"seconds", seconds},
          {"results", std::move(results_json)}};
}

}  // namespace cxp
