#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "cxp/starcat.hpp"

namespace cxp {

// ---------------------------------------------------------------------------
// Unitalization

struct Unitalization {
  CategoryPtr plus;
  StarFunctor alpha;  // C -> C+, f |-> (f, 0)
};

/// End_{C+}(X) = End_C(X) (+) C, the adjoined basis vector coming last and
/// acting as the identity. Other hom spaces are unchanged. A concrete
/// representation of C extends to C+ on H_X (+) C.
Unitalization unitalize(CategoryPtr c);

/// The unique unital phi+ : C+ -> D with phi+ o alpha = phi (D unital).
StarFunctor extend_to_unitalization(const Unitalization& u, const StarFunctor& phi);

/// epsilon_D : D+ -> D, (f, lambda) |-> f + lambda id.
StarFunctor unitalization_counit(const Unitalization& du);

/// Functoriality of (-)+ : phi : C -> D gives C+ -> D+.
StarFunctor unitalization_map(const Unitalization& cu, const Unitalization& du,
                              const StarFunctor& phi);

/// Every unital functor out of C+ is fixed by its values on alpha's image and
/// on the identities iff these span each hom space of C+.
bool extension_is_unique(const Unitalization& u);

// ---------------------------------------------------------------------------
// Subcategories

/// A category whose hom spaces are subspaces of an ambient category's hom
/// spaces, with the (possibly non-unital) inclusion functor.
struct Subcategory {
  CategoryPtr cat;
  StarFunctor inclusion;
};

/// Builds the subcategory on the listed ambient objects with hom spaces
/// spanned by the given vectors (indexed a * k + b for the listed objects).
/// Closure under composition and adjoints is checked exactly. Units are taken
/// from `units` when given, else detected. Concrete data is inherited.
Subcategory embed_subspaces(CategoryPtr ambient, const std::vector<std::size_t>& objects,
                            std::vector<std::string> names,
                            const std::vector<std::vector<Vector>>& spans,
                            const std::optional<std::vector<Vector>>& units = std::nullopt);

Subcategory full_subcategory(CategoryPtr ambient, const std::vector<std::size_t>& objects);

/// U restricted to the supplied pairs (object, self-adjoint idempotent p):
/// Hom((D,p),(D',p')) = p' Hom(D,D') p, with identities p.
Subcategory projection_subcategory(CategoryPtr ambient,
                                   const std::vector<std::pair<std::size_t, Vector>>& projections);

// ---------------------------------------------------------------------------
// Ideals, quotients, exact sequences

struct IdealInclusion {
  CategoryPtr ideal;
  CategoryPtr ambient;
  StarFunctor inclusion;
};

/// Bijective on objects, injective on homs, two-sided absorption.
ValidationReport validate_ideal(const IdealInclusion& inc);

/// The kernel of a functor that is bijective on objects, as an ideal.
IdealInclusion kernel_ideal(const StarFunctor& phi);

/// Ideal given by subspaces of the ambient hom spaces (indexed a * n + b).
IdealInclusion ideal_from_subspaces(CategoryPtr ambient, const std::vector<std::vector<Vector>>& spans);

struct Quotient {
  CategoryPtr cat;
  StarFunctor qmap;
  /// Lift Hom_Q(a,b) -> Hom_D(a,b) onto the echelon complement.
  std::vector<ExactMatrix> lifts;
  bool has_rep = false;
  std::string rep_note;
};

/// Quotient hom spaces use the echelon complement of the ideal subspace as a
/// basis. When the ambient is concrete and each object of the ideal has a
/// unit z_C, Q is represented by x |-> (1 - z) x.
Quotient quotient_by_ideal(const IdealInclusion& inc);

Verdict is_quotient_morphism(const StarFunctor& phi);

/// 0 -> C -i-> D -q-> Q -> 0: i an ideal inclusion, q a quotient morphism,
/// q o i = 0 and the kernel of q is the image of i on every hom space.
Verdict check_exact(const StarFunctor& i, const StarFunctor& q);

/// Induced functor B/A -> D/C of a square morphism beta : B -> D carrying the
/// first ideal into the second.
StarFunctor induced_quotient_functor(const Quotient& from, const Quotient& to,
                                     const StarFunctor& beta);

// ---------------------------------------------------------------------------
// Unitary isomorphism and equivalence

struct NumericMorphism {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::complex<double>> coords;
  double residual = 0.0;
};

struct IsomorphismDecision {
  Verdict verdict;
  std::optional<NumericMorphism> witness;
};

/// Decides whether X and Y are unitarily isomorphic in a unital concrete
/// category by comparing the ranks of id_X and id_Y in the simple blocks of
/// the total algebra of the full subcategory on {X, Y}. `seed` fixes the
/// random central element and the random morphism used for the witness.
IsomorphismDecision unitarily_isomorphic(const Category& cat, std::size_t x, std::size_t y,
                                         std::uint64_t seed = 1);

struct UnitaryEquivalenceCertificate {
  StarFunctor forward;   // phi : A -> B
  StarFunctor backward;  // psi : B -> A
  NaturalTransformation eta;  // psi phi -> id_A
  NaturalTransformation eps;  // phi psi -> id_B
};

UnitaryEquivalenceCertificate identity_certificate(CategoryPtr c);

Verdict verify_unitary_equivalence(const UnitaryEquivalenceCertificate& cert);

/// Conjugates a certificate for phi : A -> B by isomorphisms a : A -> A' and
/// b : B -> B', giving one for b phi a^{-1}.
UnitaryEquivalenceCertificate transport_certificate(const UnitaryEquivalenceCertificate& cert,
                                                    const StarFunctor& a, const StarFunctor& b);

/// Commuting square A -i-> B, C -j-> D, alpha : A -> C, beta : B -> D.
struct ExcisiveSquare {
  StarFunctor i;
  StarFunctor j;
  StarFunctor alpha;
  StarFunctor beta;
  std::optional<UnitaryEquivalenceCertificate> certificate;
};

struct ExcisionReport {
  Verdict verdict;
  std::optional<Quotient> top;     // B/A
  std::optional<Quotient> bottom;  // D/C
  std::optional<StarFunctor> induced;
};

/// i and j ideal inclusions, square commutes, both quotients unital, the
/// induced functor unital and a unitary equivalence. The last condition uses
/// the certificate when given (its forward functor must equal the induced
/// one), else full faithfulness plus the unitary-isomorphism decision.
ExcisionReport check_excisive(const ExcisiveSquare& sq);

}  // namespace cxp
