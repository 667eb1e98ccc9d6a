#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freecat/category.hpp"

namespace freecat {

// A presheaf on finite K with finite pointwise sets. Elements of F(A) are
// 0..sizes[A]-1; for h: A → B, action[h] is F(h): F(B) → F(A).
struct Presheaf {
  std::vector<int> sizes;
  std::vector<std::vector<int>> action;
  int total() const;
  auto operator<=>(const Presheaf&) const = default;
};

// Components α_A: F(A) → G(A); dom and cod travel alongside.
struct NatTrans {
  std::vector<std::vector<int>> components;
  auto operator<=>(const NatTrans&) const = default;
};

// Per object, a membership flag for each element of the base.
struct Subfunctor {
  std::vector<std::vector<char>> members;
  int total() const;
  auto operator<=>(const Subfunctor&) const = default;
};

std::vector<std::string> presheaf_violations(const FiniteCategory& k, const Presheaf& f);
// Throws InvalidArgument.
void check_presheaf(const FiniteCategory& k, const Presheaf& f);
bool is_natural(const FiniteCategory& k, const Presheaf& f, const Presheaf& g, const NatTrans& a);
bool is_subfunctor(const FiniteCategory& k, const Presheaf& f, const Subfunctor& s);

NatTrans identity_nat(const Presheaf& f);
// β∘α
NatTrans compose_nat(const NatTrans& beta, const NatTrans& alpha);
bool is_pointwise_injective(const NatTrans& a, const Presheaf& cod);
bool is_pointwise_surjective(const NatTrans& a, const Presheaf& cod);
bool is_pointwise_bijective(const NatTrans& a, const Presheaf& cod);

// Every natural transformation F → G, lexicographic in (object, element).
std::vector<NatTrans> nat_transformations(const FiniteCategory& k, const Presheaf& f, const Presheaf& g);
std::size_t count_nat_transformations(const FiniteCategory& k, const Presheaf& f, const Presheaf& g);

Presheaf yoneda(const FiniteCategory& k, ObjectId a);
// y(h): yA → yB
NatTrans yoneda_map(const FiniteCategory& k, MorphismId h);
Presheaf terminal_presheaf(const FiniteCategory& k);
Presheaf initial_presheaf(const FiniteCategory& k);

// Every presheaf whose pointwise sets have at most `max_pointwise` elements
// and whose total size is at most `max_total` (negative: unbounded).
std::vector<Presheaf> enumerate_presheaves(const FiniteCategory& k, int max_pointwise, int max_total = -1);
std::optional<NatTrans> find_presheaf_iso(const FiniteCategory& k, const Presheaf& f, const Presheaf& g);
// One representative per isomorphism class, in enumeration order.
std::vector<Presheaf> presheaves_up_to_iso(const FiniteCategory& k, int max_pointwise, int max_total = -1);

struct PresheafDiagram {
  FiniteCategory shape;
  std::vector<Presheaf> objects;  // per shape object
  std::vector<NatTrans> arrows;   // per shape morphism, identities included
};

struct PresheafCone {
  Presheaf apex;
  std::vector<NatTrans> legs;  // per shape object; toward the diagram for limits, away for colimits
};

PresheafDiagram discrete_presheaf_diagram(const FiniteCategory& k, std::span<const Presheaf> objects);
PresheafDiagram parallel_presheaf_diagram(const Presheaf& f, const Presheaf& g, const NatTrans& a,
                                          const NatTrans& b);
PresheafDiagram cospan_presheaf_diagram(const Presheaf& f, const Presheaf& g, const Presheaf& c,
                                        const NatTrans& a, const NatTrans& b);
// a: C → F, b: C → G
PresheafDiagram span_presheaf_diagram(const Presheaf& c, const Presheaf& f, const Presheaf& g,
                                      const NatTrans& a, const NatTrans& b);

// Pointwise: compatible tuples, lexicographic.
PresheafCone presheaf_limit(const FiniteCategory& k, const PresheafDiagram& d);
// Pointwise: disjoint union modulo the generated equivalence, classes
// numbered by first element.
PresheafCone presheaf_colimit(const FiniteCategory& k, const PresheafDiagram& d);

// Every cone from each test presheaf factors through `cone` exactly once.
bool limit_ump_holds(const FiniteCategory& k, const PresheafDiagram& d, const PresheafCone& cone,
                     std::span<const Presheaf> tests);
bool colimit_ump_holds(const FiniteCategory& k, const PresheafDiagram& d, const PresheafCone& cocone,
                       std::span<const Presheaf> tests);

// F × G with element (x, y) at x * |G(A)| + y.
PresheafCone binary_product(const FiniteCategory& k, const Presheaf& f, const Presheaf& g);
// F + G with F's elements first.
PresheafCone binary_coproduct(const FiniteCategory& k, const Presheaf& f, const Presheaf& g);
// ⟨a, b⟩: H → F × G
NatTrans pair_nat(const Presheaf& f, const Presheaf& g, const NatTrans& a, const NatTrans& b,
                  const Presheaf& h);

struct PresheafExponential {
  Presheaf object;                                   // [F, G]
  std::vector<std::vector<NatTrans>> elements;       // [F,G](A) = Nat(yA × F, G)
  PresheafCone with_base;                            // [F,G] × F
  NatTrans evaluation;                               // [F,G] × F → G
};

PresheafExponential presheaf_exponential(const FiniteCategory& k, const Presheaf& f, const Presheaf& g);
// h ↦ ev∘(h × F) is a bijection hom(H, [F,G]) ≅ hom(H × F, G).
bool exponential_ump_holds(const FiniteCategory& k, const Presheaf& f, const Presheaf& g,
                           const PresheafExponential& e, const Presheaf& h);

// Every subfunctor, empty first and full last.
std::vector<Subfunctor> subfunctors(const FiniteCategory& k, const Presheaf& f);
struct Restriction {
  Presheaf object;
  NatTrans inclusion;
};
Restriction restrict_to(const FiniteCategory& k, const Presheaf& f, const Subfunctor& s);
Subfunctor image(const NatTrans& a, const Presheaf& cod);

struct Omega {
  Presheaf object;                            // Ω(A) = sieves on A
  std::vector<std::vector<Subfunctor>> sieves;  // subfunctors of yA, per A
  NatTrans truth;                             // 1 → Ω, the maximal sieve
};

Omega omega(const FiniteCategory& k);

// χ_m: G → Ω; throws NotMono when m is not pointwise injective.
NatTrans classify_subobject(const FiniteCategory& k, const Omega& om, const Presheaf& g,
                            const NatTrans& m, const Presheaf& f);
NatTrans classify_subfunctor(const FiniteCategory& k, const Omega& om, const Presheaf& g,
                             const Subfunctor& s);
// The pullback of true along χ, computed as a limit, as a subfunctor of G.
Subfunctor pull_back_truth(const FiniteCategory& k, const Omega& om, const Presheaf& g, const NatTrans& chi);

struct ClassificationReport {
  std::size_t subobjects = 0;
  std::size_t maps_to_omega = 0;
  bool bijective = false;
  std::optional<Subfunctor> witness;  // a subobject classified wrongly or not uniquely
};

// Sub(G) → hom(G, Ω) is a bijection whose inverse is pulling back true.
ClassificationReport classification_bijection(const FiniteCategory& k, const Omega& om, const Presheaf& g);

struct RegularityVerdict {
  std::optional<bool> mono_regular;  // empty when α is not mono
  std::optional<bool> epi_regular;   // empty when α is not epi
};

RegularityVerdict regularity_suite(const FiniteCategory& k, const Presheaf& f, const Presheaf& g,
                                   const NatTrans& a);

// Subfunctor R of F × F, indexed as in binary_product(F, F). Throws
// NotEquivalenceRelation when R is not pointwise an equivalence relation.
bool effective_equivalence_check(const FiniteCategory& k, const Presheaf& f, const Subfunctor& r);
// All subfunctors of F × F that are pointwise equivalence relations.
std::vector<Subfunctor> equivalence_relations(const FiniteCategory& k, const Presheaf& f);

// Disjoint injections and pullback-stability of F + G along every map from
// each test presheaf.
struct ExtensivityReport {
  bool disjoint = false;
  bool universal = false;
};
ExtensivityReport coproduct_extensivity(const FiniteCategory& k, const Presheaf& f, const Presheaf& g,
                                        std::span<const Presheaf> tests);

struct ElementsCategory {
  FiniteCategory category;
  // Object i is (object[i], element[i]); f: (X,x) → (Y,y) when F(f)(y) = x.
  std::vector<ObjectId> object;
  std::vector<int> element;
  Functor projection;
};

ElementsCategory elements_category(const FiniteCategory& k, const Presheaf& f);
// Greedily minimized set of elements such that every element maps into one of them.
std::vector<int> weakly_initial_set(const ElementsCategory& el);
bool covers_elements(const ElementsCategory& el, std::span<const int> members);
// colim over el F of y∘π is isomorphic to F via the canonical map.
bool elements_reconstruction_holds(const FiniteCategory& k, const Presheaf& f);

// Pointwise partitions closed under the action, as class labels per element.
using Congruence = std::vector<std::vector<int>>;
std::vector<Congruence> congruences(const FiniteCategory& k, const Presheaf& f);
// Kernel of a natural transformation out of F, canonically labelled.
Congruence kernel(const NatTrans& a, const Presheaf& f);
struct Quotient {
  Presheaf object;
  NatTrans projection;
};
// F → F/c; throws InvalidArgument when c is not closed under the action.
Quotient quotient(const FiniteCategory& k, const Presheaf& f, const Congruence& c);

struct Census {
  std::size_t subobjects = 0;
  std::size_t quotients = 0;
  bool pushouts_distinct = false;
  std::optional<std::pair<std::size_t, std::size_t>> collision;  // subobject indices
};

// Pushout of each subobject inclusion along itself is a quotient of F + F;
// distinct subobjects must give distinct quotients.
Census subobject_quotient_census(const FiniteCategory& k, const Presheaf& f);
Congruence pushout_quotient(const FiniteCategory& k, const Presheaf& f, const Subfunctor& s);

}  // namespace freecat
