#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freecat/error.hpp"

namespace freecat {

// Objects and morphisms are dense 0-based ids. Every enumeration in the
// engine runs in id order so results are deterministic.
using ObjectId = int;
using MorphismId = int;

struct MorphismDecl {
  ObjectId dom = 0;
  ObjectId cod = 0;
};

// g∘f = h
struct CompositionEntry {
  MorphismId g = 0;
  MorphismId f = 0;
  MorphismId h = 0;
};

// Unvalidated tables as they come from a file or from a construction.
struct RawCategory {
  int object_count = 0;
  std::vector<MorphismDecl> morphisms;
  std::vector<MorphismId> identity;
  std::vector<CompositionEntry> compose;
  std::vector<std::string> object_names;
  std::vector<std::string> morphism_names;
};

struct Violation {
  enum class Kind {
    DanglingId,
    DuplicateEntry,
    NonComposablePair,
    MissingComposite,
    WrongHomSet,
    IdentityLaw,
    Associativity,
  };
  Kind kind;
  std::vector<int> ids;
  std::string message;
};

std::string_view to_string(Violation::Kind kind);

class CategoryError : public Error {
 public:
  CategoryError(ErrorCode code, std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

class FiniteCategory {
 public:
  FiniteCategory() = default;

  // Returns every violated table constraint; empty iff the tables form a
  // category. Table problems (dangling ids, missing or misplaced entries)
  // are reported before law checks, which only run on complete tables.
  static std::vector<Violation> violations(const RawCategory& raw);

  // Throws CategoryError: MalformedTable for table problems, LawViolation
  // when the tables are complete but a category law fails.
  static FiniteCategory validate(const RawCategory& raw);

  int object_count() const noexcept { return object_count_; }
  int morphism_count() const noexcept { return static_cast<int>(dom_.size()); }
  bool empty() const noexcept { return object_count_ == 0; }

  ObjectId dom(MorphismId f) const { return dom_.at(check_morphism(f)); }
  ObjectId cod(MorphismId f) const { return cod_.at(check_morphism(f)); }
  MorphismId identity(ObjectId a) const { return identity_.at(check_object(a)); }
  bool is_identity(MorphismId f) const { return identity_[dom(f)] == f; }
  bool composable(MorphismId g, MorphismId f) const { return cod(f) == dom(g); }

  // g∘f; throws NotComposable when cod f != dom g.
  MorphismId compose(MorphismId g, MorphismId f) const;

  // Morphisms a → b in id order.
  std::span<const MorphismId> hom(ObjectId a, ObjectId b) const;

  const std::string& object_name(ObjectId a) const { return object_names_.at(check_object(a)); }
  const std::string& morphism_name(MorphismId f) const {
    return morphism_names_.at(check_morphism(f));
  }
  std::optional<ObjectId> find_object(const std::string& name) const;
  std::optional<MorphismId> find_morphism(const std::string& name) const;

  // Throws UnknownObject / UnknownMorphism.
  ObjectId check_object(ObjectId a) const;
  MorphismId check_morphism(MorphismId f) const;

  RawCategory raw() const;

 private:
  int object_count_ = 0;
  std::vector<ObjectId> dom_;
  std::vector<ObjectId> cod_;
  std::vector<MorphismId> identity_;
  std::vector<MorphismId> compose_;  // row g, column f; -1 when not composable
  std::vector<std::vector<MorphismId>> hom_;  // a * object_count_ + b
  std::vector<std::string> object_names_;
  std::vector<std::string> morphism_names_;
};

// A functor between finite categories, stored as its two maps. The source
// and target are passed alongside wherever it matters.
struct Functor {
  std::vector<ObjectId> on_objects;
  std::vector<MorphismId> on_morphisms;
  bool operator==(const Functor&) const = default;
};

// Empty iff F preserves dom/cod, identities and composition.
std::vector<std::string> functor_violations(const FiniteCategory& source,
                                            const FiniteCategory& target, const Functor& f);
bool is_functor(const FiniteCategory& source, const FiniteCategory& target, const Functor& f);
bool is_faithful(const FiniteCategory& source, const Functor& f);
bool is_full(const FiniteCategory& source, const FiniteCategory& target, const Functor& f);

struct Diagram {
  FiniteCategory shape;
  Functor labeling;
};

// Throws InvalidArgument when the labeling is not a functor into `ambient`.
void check_diagram(const FiniteCategory& ambient, const Diagram& d);

// Shape helpers.
FiniteCategory discrete_category(int n);
FiniteCategory cospan_shape();         // 0 → 2 ← 1
FiniteCategory parallel_pair_shape();  // 0 ⇉ 1

Diagram empty_diagram();
Diagram discrete_diagram(const FiniteCategory& k, std::span<const ObjectId> objects);
Diagram cospan_diagram(const FiniteCategory& k, MorphismId f, MorphismId g);

struct MorphismClass {
  bool mono = false;
  bool epi = false;
  bool split_mono = false;
  bool split_epi = false;
  bool iso = false;
  bool operator==(const MorphismClass&) const = default;
};

MorphismClass classify_morphism(const FiniteCategory& k, MorphismId f);

struct SliceCategory {
  FiniteCategory category;
  ObjectId anchor = 0;
  // Slice object i is the base morphism object_morphism[i] into the anchor.
  std::vector<MorphismId> object_morphism;
  Functor projection;
};

SliceCategory slice_category(const FiniteCategory& k, ObjectId anchor);

bool is_initial(const FiniteCategory& k, ObjectId x);
bool is_terminal(const FiniteCategory& k, ObjectId x);
bool is_strict_initial(const FiniteCategory& k, ObjectId x);
std::optional<ObjectId> find_terminal(const FiniteCategory& k);

// Formal dual: same ids, dom/cod swapped, g∘ᵒᵖf = f∘g.
FiniteCategory dual_category(const FiniteCategory& k);

// Isomorphism of categories by backtracking over object bijections and then
// hom-set bijections; intended for small fixtures.
std::optional<Functor> find_isomorphism(const FiniteCategory& a, const FiniteCategory& b);

// Every category with at most `max_objects` objects and `max_arrows`
// non-identity morphisms, one per isomorphism class.
std::vector<FiniteCategory> enumerate_shapes(int max_objects, int max_arrows);

// Every functor shape → k, in lexicographic order of (object map, arrow map).
std::vector<Functor> enumerate_functors(const FiniteCategory& shape, const FiniteCategory& k);

}  // namespace freecat
