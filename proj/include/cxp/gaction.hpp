#pragma once

#include <string>
#include <vector>

#include "cxp/constructions.hpp"

namespace cxp {

/// Finite group given by its multiplication table. Element 0 need not be the
/// identity; it is located from the table.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup({"e"}, {0}) {}
  FiniteGroup(std::vector<std::string> names, std::vector<std::size_t> table);

  static FiniteGroup trivial() { return FiniteGroup(); }
  static FiniteGroup cyclic(std::size_t n);
  /// S3 with elements e, r, r2, s, sr, sr2 (r a 3-cycle, s a transposition).
  static FiniteGroup symmetric3();
  /// "Z2", "Z3", "Z4", "S3", "1", or "Z<n>".
  static FiniteGroup by_name(const std::string& name);

  std::size_t size() const { return names_.size(); }
  std::size_t mul(std::size_t g, std::size_t h) const { return table_[g * size() + h]; }
  std::size_t inv(std::size_t g) const { return inv_[g]; }
  std::size_t identity() const { return e_; }
  const std::string& name(std::size_t g) const { return names_.at(g); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::size_t>& table() const { return table_; }
  std::optional<std::size_t> find(const std::string& name) const;
  bool abelian() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inv_;
  std::size_t e_ = 0;
};

/// G acting by *-automorphisms phi_g. The optional spatial form gives
/// unitaries V_{g,C} : H_C -> H_{gC} with phi_g(f) = V_{g,C'} f V_{g,C}*.
struct GroupAction {
  FiniteGroup group;
  CategoryPtr category;
  std::vector<StarFunctor> phi;  // one per group element
  std::optional<std::vector<std::vector<ExactMatrix>>> spatial;  // [g][C]

  std::size_t act(std::size_t g, std::size_t c) const { return phi[g].object_map[c]; }
  Vector act(std::size_t g, std::size_t a, std::size_t b, const Vector& f) const {
    return phi[g].apply(a, b, f);
  }
};

/// Group axioms, phi_e = id, phi_g phi_h = phi_{gh}, every phi_g a *-functor
/// bijective on objects, and consistency of the spatial form.
ValidationReport validate_action(const GroupAction& act);

using ActionPtr = std::shared_ptr<const GroupAction>;

GroupAction trivial_action(const FiniteGroup& g, CategoryPtr cat);

/// Action determined by object permutations and unitaries on a concrete
/// category; hom maps are computed exactly from V f V*.
GroupAction action_from_spatial(const FiniteGroup& g, CategoryPtr cat,
                                const std::vector<std::vector<std::size_t>>& object_perms,
                                std::vector<std::vector<ExactMatrix>> unitaries);

// ---------------------------------------------------------------------------
// Crossed product

struct CrossedProduct {
  GroupAction action;
  CategoryPtr category;
  StarFunctor iota;
  std::vector<std::vector<std::size_t>> offsets;  // [a * n + b][g]

  /// Basis index of (f, g) in Hom(a, b), f a basis index of Hom(a, g^-1 b).
  std::size_t index(std::size_t a, std::size_t b, std::size_t g, std::size_t f) const {
    return offsets[a * category->size() + b][g] + f;
  }
  /// Inverse of index: (g, f).
  std::pair<std::size_t, std::size_t> summand(std::size_t a, std::size_t b, std::size_t k) const;
};

/// Hom(C, C') = (+)_g Hom(C, g^-1 C') ordered by group element, then by the
/// basis of each summand; (f', g')(f, g) = (g^-1 f' o f, g'g), (f, g)* =
/// (g f*, g^-1), identities (id_C, e).
CrossedProduct crossed_product(const GroupAction& act);

/// Strictly equivariant phi (phi o g = g o phi) crossed with G: (f, g) |-> (phi f, g).
StarFunctor crossed_functor(const StarFunctor& phi, const CrossedProduct& src, const CrossedProduct& tgt);

bool is_equivariant(const StarFunctor& phi, const GroupAction& src, const GroupAction& tgt);

// ---------------------------------------------------------------------------
// Covariant representations

/// rho : C -> D with unitaries pi(g)_C : rho C -> rho(gC).
struct CovariantRep {
  StarFunctor rho;
  std::vector<std::vector<Vector>> pi;  // [g][C]
};

ValidationReport validate_covariant(const CovariantRep& rep, const GroupAction& act);

/// sigma(f, g) = pi(g)_{g^-1 C'} o rho(f).
StarFunctor sigma_from_covariant(const CovariantRep& rep, const CrossedProduct& cp);

/// rho = sigma o iota, pi(g)_C = sigma(id_C, g).
CovariantRep covariant_from_sigma(const StarFunctor& sigma, const CrossedProduct& cp);

// ---------------------------------------------------------------------------
// Weakly equivariant functors

/// phi : C -> D with unitaries rho(g)_C : phi C -> g^-1 phi(gC) satisfying
/// g^-1(rho(h)_{gC}) o rho(g)_C = rho(hg)_C.
struct WeaklyEquivariant {
  ActionPtr source;
  ActionPtr target;
  StarFunctor phi;
  std::vector<std::vector<Vector>> rho;  // [g][C]
};

WeaklyEquivariant strictly_equivariant(const StarFunctor& phi, ActionPtr src, ActionPtr tgt);

ValidationReport validate_weakly_equivariant(const WeaklyEquivariant& wf);

/// (phi', rho') o (phi, rho) = (phi' phi, rho'(g)_{g^-1 phi gC} o phi'(rho(g)_C)).
WeaklyEquivariant compose(const WeaklyEquivariant& later, const WeaklyEquivariant& earlier);

/// (f, g) |-> (rho(g)_{g^-1 C'} o phi(f), g).
StarFunctor crossed_of_weakly_equivariant(const WeaklyEquivariant& wf, const CrossedProduct& src,
                                          const CrossedProduct& tgt);

/// kappa : phi -> phi' compatible with the cocycles,
/// g^-1(kappa_{gC}) o rho(g)_C = rho'(g)_C o kappa_C.
ValidationReport validate_equivariant_transformation(const WeaklyEquivariant& from,
                                                     const WeaklyEquivariant& to,
                                                     const std::vector<Vector>& kappa);

/// Components (kappa_C, e) between the crossed functors.
NaturalTransformation crossed_of_transformation(const WeaklyEquivariant& from,
                                                const WeaklyEquivariant& to,
                                                const std::vector<Vector>& kappa,
                                                const CrossedProduct& src, const CrossedProduct& tgt);

/// Given (phi, rho) with phi fully faithful, psi : D -> C and a unitary
/// kappa : phi psi -> id_D, returns the unique lambda making (psi, lambda)
/// weakly equivariant with kappa compatible:
/// phi(lambda(g)_D) = rho(g)_{g^-1 psi gD}* o g^-1(kappa_{gD})* o kappa_D.
struct WeakInverse {
  Verdict verdict;
  std::optional<WeaklyEquivariant> inverse;
};
WeakInverse invert_weak_equivalence(const WeaklyEquivariant& wf, const StarFunctor& psi,
                                    const std::vector<Vector>& kappa);

// ---------------------------------------------------------------------------
// The functor L and the colimit presentation

/// L(C): objects (C, g) at index c |G| + g, Hom((C,g),(C',g')) = Hom(C,C'),
/// with h(f : (C,g) -> (C',g')) = (hf : (hC,hg) -> (hC',hg')).
struct LConstruction {
  GroupAction action;  // on L(C)
  StarFunctor lambda;  // L(C) -> C, forgets the group label
  StarFunctor c_alg;   // L(C) -> C x| G, (C,g) |-> g^-1 C
  StarFunctor section; // C -> L(C), C |-> (C, e)
};

LConstruction L_of(const GroupAction& act, const CrossedProduct& cp);

/// lambda is a unitary equivalence with inverse the section when C is unital.
UnitaryEquivalenceCertificate lambda_certificate(const LConstruction& l);

/// The functor sigma : C x| G -> D with sigma o c_alg = phi, for phi : L(C) -> D
/// invariant under the action on L(C): sigma(C) = phi(C,e),
/// sigma(f, g) = phi(f : (C,e) -> (g^-1 C', g^-1)).
StarFunctor colimit_factorization(const LConstruction& l, const CrossedProduct& cp,
                                  const StarFunctor& phi);

bool is_invariant(const StarFunctor& phi, const GroupAction& act);

}  // namespace cxp
