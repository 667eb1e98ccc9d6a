#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "freecat/category.hpp"
#include "freecat/limits.hpp"

namespace freecat {

// A finite family (A_i) of K-objects; index set 0..n-1. The empty family is
// the initial object.
struct SigmaObject {
  std::vector<ObjectId> family;
  std::size_t size() const noexcept { return family.size(); }
  auto operator<=>(const SigmaObject&) const = default;
};

// (index function, components): component i is a K-morphism
// A_i → B_{index[i]}.
struct SigmaMorphism {
  SigmaObject dom;
  SigmaObject cod;
  std::vector<int> index;
  std::vector<MorphismId> components;
  auto operator<=>(const SigmaMorphism&) const = default;
};

struct SigmaCoproduct {
  SigmaObject object;
  std::vector<SigmaMorphism> injections;
};

struct SigmaPullback {
  SigmaObject object;
  SigmaMorphism first;   // to dom f
  SigmaMorphism second;  // to dom g
};

// A K-cospan whose multi-limit is missing.
struct NoPullback {
  MorphismId f = 0;
  MorphismId g = 0;
  Cone witness;
};

using SigmaPullbackOutcome = std::variant<SigmaPullback, NoPullback>;

struct SigmaProduct {
  std::vector<SigmaObject> factors;
  SigmaObject object;
  std::vector<SigmaMorphism> projections;
  std::vector<std::vector<int>> choices;   // every φ, lexicographic
  std::vector<std::vector<Cone>> members;  // multi-product in K of (A_{jφ(j)})_j, per φ
  std::vector<std::size_t> offsets;        // first position of each φ's block
};

struct NoProduct {
  std::vector<int> choice;  // φ
  Cone witness;             // cone whose component has no terminal cone
};

using SigmaProductOutcome = std::variant<SigmaProduct, NoProduct>;

// Where member e of [A_l, B] comes from: B_j and the member of the
// multi-universal family for (A_l, B_j).
struct ExponentialSource {
  int target_index = 0;
  ExponentialMember member;
};

struct SigmaExponential {
  SigmaObject base;    // A
  SigmaObject target;  // B
  std::vector<SigmaObject> partial;                              // [A_l, B]
  std::vector<std::vector<ExponentialSource>> partial_sources;  // per l, per position
  SigmaProduct product;    // [A,B] = Π_l [A_l, B]
  SigmaProduct with_base;  // A × [A,B]
  SigmaMorphism evaluation;
  const SigmaObject& object() const { return product.object; }
};

struct NoExponential {
  enum class Kind { MissingProduct, NoFamily, NoProduct };
  Kind kind = Kind::MissingProduct;
  std::optional<std::pair<ObjectId, ObjectId>> missing;  // K pair without product
  int l = -1;                                            // position in A
  int j = -1;                                            // position in B
  std::optional<NoFamily> family;
  std::optional<NoProduct> product;
};

using SigmaExponentialOutcome = std::variant<SigmaExponential, NoExponential>;

// ε: 1 → Ω in K together with the terminal it starts from.
struct KClassifier {
  ObjectId terminal = 0;
  ObjectId omega = 0;
  MorphismId epsilon = 0;
};

struct SigmaClassifier {
  KClassifier base;
  SigmaObject terminal;  // (1)
  SigmaObject omega;     // (Ω, 1)
  SigmaMorphism truth;   // ε̄
};

// Terminal object plus every pullback; throws NotFinitelyComplete otherwise.
void require_finitely_complete(const FiniteCategory& k);

// A K-mono classified by no or several maps into cod ε, if any.
// Throws NotFinitelyComplete; throws NotAClassifier when dom ε is not terminal.
std::optional<MorphismId> classifier_counterexample(const FiniteCategory& k, MorphismId epsilon);
// First ε in id order that classifies every mono.
std::optional<KClassifier> find_classifier(const FiniteCategory& k);
// The unique χ with m the pullback of ε along χ.
MorphismId k_characteristic(const FiniteCategory& k, MorphismId epsilon, MorphismId mono);

// Every family with at most n members, by size then lexicographically.
std::vector<SigmaObject> families_up_to(const FiniteCategory& k, std::size_t n);

class SigmaCompletion {
 public:
  explicit SigmaCompletion(const FiniteCategory& k);

  const FiniteCategory& base() const { return *k_; }
  const ProductTable& products() const { return products_; }

  // Throw InvalidArgument on ill-typed data.
  void check(const SigmaObject& a) const;
  void check(const SigmaMorphism& f) const;

  SigmaObject embed(ObjectId a) const;
  SigmaMorphism embed_morphism(MorphismId f) const;

  SigmaMorphism identity(const SigmaObject& a) const;
  // g∘f; throws NotComposable.
  SigmaMorphism compose(const SigmaMorphism& g, const SigmaMorphism& f) const;

  SigmaCoproduct coproduct(std::span<const SigmaObject> parts) const;
  // [f_0, ..., f_n]: ΣA → C
  SigmaMorphism copair(const SigmaCoproduct& sum, std::span<const SigmaMorphism> maps) const;

  // Index pairs (i_a, i_b) with f̂(i_a) = ĝ(i_b) in lexicographic order, each
  // contributing the members of the K multi-pullback of (f_{i_a}, g_{i_b}).
  SigmaPullbackOutcome pullback(const SigmaMorphism& f, const SigmaMorphism& g) const;

  bool is_mono(const SigmaMorphism& f) const;
  bool is_epi(const SigmaMorphism& f) const;
  bool is_iso(const SigmaMorphism& f) const;

  SigmaProductOutcome product(std::span<const SigmaObject> factors) const;
  // ⟨legs⟩: c → Π; throws InvalidArgument when legs do not form a cone.
  SigmaMorphism mediate(const SigmaProduct& p, const SigmaObject& c,
                        std::span<const SigmaMorphism> legs) const;

  SigmaExponentialOutcome exponential(const SigmaObject& a, const SigmaObject& b) const;
  // h ↦ ev∘(A×h) is a bijection Σhom(C, [A,B]) ≅ Σhom(A×C, B).
  bool exponential_bijection(const SigmaExponential& e, const SigmaObject& c) const;

  // ε̄: (1) → (Ω, 1); validates ε first. Throws NotFinitelyComplete / NotAClassifier.
  SigmaClassifier subobject_classifier(MorphismId epsilon) const;
  // Throws NotMono.
  SigmaMorphism characteristic(const SigmaClassifier& c, const SigmaMorphism& mono) const;
  // Whether the pullback of ε̄ along chi is the subobject `mono`.
  bool classifies(const SigmaClassifier& c, const SigmaMorphism& chi, const SigmaMorphism& mono) const;

  // Σhom(a, b) in lexicographic order of (index, component) per position.
  std::vector<SigmaMorphism> homs(const SigmaObject& a, const SigmaObject& b) const;
  std::size_t hom_count(const SigmaObject& a, const SigmaObject& b) const;
  // Some u with g∘u = f.
  std::optional<SigmaMorphism> factor(const SigmaMorphism& f, const SigmaMorphism& g) const;
  std::optional<SigmaMorphism> find_iso(const SigmaObject& a, const SigmaObject& b) const;
  SigmaMorphism terminal_map(const SigmaObject& a, const SigmaObject& terminal) const;

  // Commutes, and every competing square with apex family of size ≤ bound
  // factors uniquely.
  bool is_pullback_square(const SigmaMorphism& f, const SigmaMorphism& g, const SigmaMorphism& p,
                          const SigmaMorphism& q, std::size_t bound) const;

 private:
  const FiniteCategory* k_;
  ProductTable products_;
  std::vector<MorphismClass> classes_;
  std::vector<std::optional<std::vector<Cone>>> cospans_;  // f * morphism_count + g
  std::vector<Cone> cospan_witness_;
};

std::string describe(const FiniteCategory& k, const SigmaObject& a);

}  // namespace freecat
