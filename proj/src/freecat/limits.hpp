#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "freecat/category.hpp"

namespace freecat {

struct Cone {
  ObjectId apex = 0;
  std::vector<MorphismId> legs;  // indexed by shape object
  auto operator<=>(const Cone&) const = default;
};

// All cones over d, ordered by apex and then lexicographically by legs.
std::vector<Cone> enumerate_cones(const FiniteCategory& k, const Diagram& d);
bool is_cone(const FiniteCategory& k, const Diagram& d, const Cone& c);

// Morphisms h: from.apex → to.apex with to.legs[x]∘h = from.legs[x] for all x.
std::vector<MorphismId> cone_morphisms(const FiniteCategory& k, const Cone& from, const Cone& to);

struct Factorization {
  std::size_t member = 0;
  MorphismId via = 0;
};

// Multi-terminal set of an abstract finite category with n nodes:
// connected components plus one terminal node per component.
struct TerminalSearch {
  std::vector<std::size_t> members;
  std::vector<Factorization> certificate;  // per node; empty when failing
  std::optional<std::size_t> failing_node;
};

using HomFunction = std::function<std::vector<MorphismId>(std::size_t, std::size_t)>;
TerminalSearch multi_terminal(std::size_t n, const HomFunction& hom);

struct MultiLimit {
  std::vector<Cone> cones;
  std::vector<Cone> all_cones;
  // For all_cones[i]: the unique member and the unique factorizing morphism.
  std::vector<Factorization> certificate;
};

struct NoMultiLimit {
  Cone witness;  // a cone whose component of the cone category has no terminal cone
};

using MultiLimitOutcome = std::variant<MultiLimit, NoMultiLimit>;

MultiLimitOutcome multi_limit(const FiniteCategory& k, const Diagram& d);

// Definitional check: every cone of d factors through exactly one member via
// exactly one morphism.
bool verify_unique_factorization(const FiniteCategory& k, const Diagram& d,
                                 std::span<const Cone> members);

// Weakly terminal set of cones, greedily minimized.
std::vector<Cone> pre_limit(const FiniteCategory& k, const Diagram& d);
bool covers_all_cones(const FiniteCategory& k, const Diagram& d, std::span<const Cone> members);

// Unique factorization of `c` through a multi-limit, if one exists.
std::optional<Factorization> factor_through(const FiniteCategory& k, std::span<const Cone> members,
                                            const Cone& c);

struct BinaryProduct {
  ObjectId apex = 0;
  MorphismId first = 0;
  MorphismId second = 0;
};

// Binary products, canonicalized once per ordered pair. A pair has a
// product exactly when its multi-product is a singleton.
class ProductTable {
 public:
  explicit ProductTable(const FiniteCategory& k);

  const std::optional<BinaryProduct>& get(ObjectId a, ObjectId c) const;
  bool complete() const { return !first_missing_.has_value(); }
  std::optional<std::pair<ObjectId, ObjectId>> first_missing() const { return first_missing_; }
  // First C with no product a×C.
  std::optional<ObjectId> missing_with(ObjectId a) const;

  // ⟨f, g⟩: X → a×c
  MorphismId pair(ObjectId a, ObjectId c, MorphismId f, MorphismId g) const;
  // a×h: a×C → a×C'
  MorphismId times(ObjectId a, MorphismId h) const;

  const FiniteCategory& category() const { return *k_; }

 private:
  const FiniteCategory* k_;
  std::vector<std::optional<BinaryProduct>> table_;
  std::optional<std::pair<ObjectId, ObjectId>> first_missing_;
};

struct ExponentialMember {
  ObjectId object = 0;     // [A,B]_i
  MorphismId evaluation = 0;  // ev_i: A×[A,B]_i → B
};

struct MultiUniversalFamily {
  ObjectId base = 0;    // A
  ObjectId target = 0;  // B
  std::vector<ExponentialMember> members;
};

// An object (C, c: A×C → B) of the comma category whose component has no
// terminal object.
struct NoFamily {
  ObjectId object = 0;
  MorphismId map = 0;
};

using MultiExponentialOutcome = std::variant<MultiUniversalFamily, NoFamily>;

// Multi-terminal set of (A×−)/B. Throws NotProductComplete when some A×C is missing.
MultiExponentialOutcome multi_exponential(const ProductTable& products, ObjectId a, ObjectId b);

// |hom(A×C, B)| = Σ_i |hom(C, [A,B]_i)| for every C, realized bijectively by
// (i, h) ↦ ev_i∘(A×h).
bool verify_multi_universal(const ProductTable& products, const MultiUniversalFamily& family);

struct DependentTriple {
  ObjectId object = 0;       // P
  MorphismId epsilon = 0;    // A×P → B
  MorphismId w = 0;          // P → X
  bool operator==(const DependentTriple&) const = default;
};

// Every (P, ε, w) with b∘ε = A×w, for b: B → A×X. Throws InvalidArgument
// when cod b is not the canonical A×X, NotProductComplete when products are missing.
std::vector<DependentTriple> dependent_triples(const ProductTable& products, MorphismId b,
                                               ObjectId a, ObjectId x);

// Whether `competitor` factors through `member`: some f: P′ → P with
// ε′ = ε∘(A×f) and w′ = w∘f.
bool triple_covers(const ProductTable& products, ObjectId a, const DependentTriple& member,
                   const DependentTriple& competitor);

std::optional<DependentTriple> weak_simple_product(const ProductTable& products, MorphismId b,
                                                   ObjectId a, ObjectId x);

// A covering set of triples; the singleton weak simple product when one
// exists, otherwise the candidate set minimized greedily.
std::vector<DependentTriple> approximate_dependent_product(const ProductTable& products,
                                                           MorphismId b, ObjectId a, ObjectId x);

struct KPullback {
  ObjectId apex = 0;
  MorphismId first = 0;   // to dom f
  MorphismId second = 0;  // to dom g
};

// Pullback of the cospan f, g when its multi-limit is a singleton.
std::optional<KPullback> pullback(const FiniteCategory& k, MorphismId f, MorphismId g);
std::optional<std::pair<MorphismId, MorphismId>> first_cospan_without_pullback(const FiniteCategory& k);

// Commutes, and every competing square factors through it uniquely.
bool is_pullback_square(const FiniteCategory& k, MorphismId f, MorphismId g, MorphismId p,
                        MorphismId q);

struct GenericProofVerdict {
  bool holds = false;
  std::optional<MorphismId> witness;  // a map f with no suitable g
};

// Throws NoPullbacks when some cospan lacks a pullback.
GenericProofVerdict is_generic_proof(const FiniteCategory& k, MorphismId theta);

}  // namespace freecat
