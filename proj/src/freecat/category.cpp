#include "freecat/category.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

namespace freecat {

namespace {

std::string join_violations(const std::vector<Violation>& vs) {
  std::ostringstream os;
  os << vs.size() << " violation(s)";
  for (const auto& v : vs) os << "; " << v.message;
  return os.str();
}

bool is_table_problem(Violation::Kind k) {
  return k == Violation::Kind::DanglingId || k == Violation::Kind::DuplicateEntry ||
         k == Violation::Kind::NonComposablePair || k == Violation::Kind::MissingComposite;
}

}  // namespace

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::DanglingId: return "dangling-id";
    case Violation::Kind::DuplicateEntry: return "duplicate-entry";
    case Violation::Kind::NonComposablePair: return "non-composable-pair";
    case Violation::Kind::MissingComposite: return "missing-composite";
    case Violation::Kind::WrongHomSet: return "wrong-hom-set";
    case Violation::Kind::IdentityLaw: return "identity-law";
    case Violation::Kind::Associativity: return "associativity";
  }
  return "unknown";
}

CategoryError::CategoryError(ErrorCode code, std::vector<Violation> violations)
    : Error(code, join_violations(violations)), violations_(std::move(violations)) {}

std::vector<Violation> FiniteCategory::violations(const RawCategory& raw) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  const int n = raw.object_count;
  const int m = static_cast<int>(raw.morphisms.size());
  auto obj_ok = [&](int a) { return a >= 0 && a < n; };
  auto mor_ok = [&](int f) { return f >= 0 && f < m; };
  auto mn = [&](int f) {
    return mor_ok(f) && f < static_cast<int>(raw.morphism_names.size()) ? raw.morphism_names[f]
                                                                         : std::to_string(f);
  };

  if (n < 0) {
    out.push_back({K::DanglingId, {n}, "negative object count"});
    return out;
  }
  for (int f = 0; f < m; ++f) {
    const auto& d = raw.morphisms[f];
    if (!obj_ok(d.dom) || !obj_ok(d.cod)) {
      std::ostringstream os;
      os << "morphism " << mn(f) << " has dangling endpoint (" << d.dom << " -> " << d.cod << ")";
      out.push_back({K::DanglingId, {f}, os.str()});
    }
  }
  if (static_cast<int>(raw.identity.size()) != n) {
    out.push_back({K::DanglingId, {static_cast<int>(raw.identity.size())},
                   "identity table size does not match object count"});
  } else {
    for (int a = 0; a < n; ++a) {
      const int i = raw.identity[a];
      if (!mor_ok(i)) {
        std::ostringstream os;
        os << "identity of object " << a << " is dangling morphism " << i;
        out.push_back({K::DanglingId, {a, i}, os.str()});
      }
    }
  }
  if (!out.empty()) return out;

  std::vector<int> table(static_cast<std::size_t>(m) * m, -1);
  for (const auto& e : raw.compose) {
    if (!mor_ok(e.g) || !mor_ok(e.f) || !mor_ok(e.h)) {
      std::ostringstream os;
      os << "composition entry " << mn(e.g) << " o " << mn(e.f) << " = " << mn(e.h) << " has a dangling id";
      out.push_back({K::DanglingId, {e.g, e.f, e.h}, os.str()});
      continue;
    }
    if (raw.morphisms[e.f].cod != raw.morphisms[e.g].dom) {
      std::ostringstream os;
      os << "composition entry " << mn(e.g) << " o " << mn(e.f) << " is not composable";
      out.push_back({K::NonComposablePair, {e.g, e.f}, os.str()});
      continue;
    }
    int& slot = table[static_cast<std::size_t>(e.g) * m + e.f];
    if (slot != -1 && slot != e.h) {
      std::ostringstream os;
      os << "conflicting composites for " << mn(e.g) << " o " << mn(e.f) << ": " << mn(slot) << " and " << mn(e.h);
      out.push_back({K::DuplicateEntry, {e.g, e.f, slot, e.h}, os.str()});
      continue;
    }
    slot = e.h;
  }
  for (int g = 0; g < m; ++g) {
    for (int f = 0; f < m; ++f) {
      if (raw.morphisms[f].cod != raw.morphisms[g].dom) continue;
      if (table[static_cast<std::size_t>(g) * m + f] == -1) {
        std::ostringstream os;
        os << "missing composite " << mn(g) << " o " << mn(f);
        out.push_back({K::MissingComposite, {g, f}, os.str()});
      }
    }
  }
  if (!out.empty()) return out;

  auto comp = [&](int g, int f) { return table[static_cast<std::size_t>(g) * m + f]; };
  for (int a = 0; a < n; ++a) {
    const int i = raw.identity[a];
    if (raw.morphisms[i].dom != a || raw.morphisms[i].cod != a) {
      std::ostringstream os;
      os << "identity " << i << " of object " << a << " is not an endomorphism of it";
      out.push_back({K::WrongHomSet, {a, i}, os.str()});
    }
  }
  for (int g = 0; g < m; ++g) {
    for (int f = 0; f < m; ++f) {
      const int h = comp(g, f);
      if (h < 0) continue;
      if (raw.morphisms[h].dom != raw.morphisms[f].dom ||
          raw.morphisms[h].cod != raw.morphisms[g].cod) {
        std::ostringstream os;
        os << "composite " << mn(g) << " o " << mn(f) << " = " << mn(h) << " lands outside its hom-set";
        out.push_back({K::WrongHomSet, {g, f, h}, os.str()});
      }
    }
  }
  if (!out.empty()) return out;

  for (int f = 0; f < m; ++f) {
    const int id_cod = raw.identity[raw.morphisms[f].cod];
    const int id_dom = raw.identity[raw.morphisms[f].dom];
    if (comp(id_cod, f) != f) {
      std::ostringstream os;
      os << "left identity fails for morphism " << mn(f) << " (identity " << mn(id_cod) << ")";
      out.push_back({K::IdentityLaw, {id_cod, f}, os.str()});
    }
    if (comp(f, id_dom) != f) {
      std::ostringstream os;
      os << "right identity fails for morphism " << mn(f) << " (identity " << mn(id_dom) << ")";
      out.push_back({K::IdentityLaw, {f, id_dom}, os.str()});
    }
  }
  for (int f = 0; f < m; ++f) {
    for (int g = 0; g < m; ++g) {
      if (raw.morphisms[f].cod != raw.morphisms[g].dom) continue;
      for (int h = 0; h < m; ++h) {
        if (raw.morphisms[g].cod != raw.morphisms[h].dom) continue;
        if (comp(h, comp(g, f)) != comp(comp(h, g), f)) {
          std::ostringstream os;
          os << "associativity fails for " << mn(h) << " o " << mn(g) << " o " << mn(f);
          out.push_back({K::Associativity, {h, g, f}, os.str()});
        }
      }
    }
  }
  return out;
}

FiniteCategory FiniteCategory::validate(const RawCategory& raw) {
  auto vs = violations(raw);
  if (!vs.empty()) {
    const bool table = std::any_of(vs.begin(), vs.end(),
                                   [](const Violation& v) { return is_table_problem(v.kind); });
    throw CategoryError(table ? ErrorCode::MalformedTable : ErrorCode::LawViolation, std::move(vs));
  }
  FiniteCategory k;
  const int n = raw.object_count;
  const int m = static_cast<int>(raw.morphisms.size());
  k.object_count_ = n;
  k.dom_.reserve(m);
  k.cod_.reserve(m);
  for (const auto& d : raw.morphisms) {
    k.dom_.push_back(d.dom);
    k.cod_.push_back(d.cod);
  }
  k.identity_ = raw.identity;
  k.compose_.assign(static_cast<std::size_t>(m) * m, -1);
  for (const auto& e : raw.compose) k.compose_[static_cast<std::size_t>(e.g) * m + e.f] = e.h;
  k.hom_.assign(static_cast<std::size_t>(n) * n, {});
  for (int f = 0; f < m; ++f) k.hom_[static_cast<std::size_t>(k.dom_[f]) * n + k.cod_[f]].push_back(f);

  k.object_names_ = raw.object_names;
  if (static_cast<int>(k.object_names_.size()) != n) {
    k.object_names_.clear();
    for (int a = 0; a < n; ++a) k.object_names_.push_back(std::to_string(a));
  }
  k.morphism_names_ = raw.morphism_names;
  if (static_cast<int>(k.morphism_names_.size()) != m) {
    k.morphism_names_.clear();
    for (int f = 0; f < m; ++f) k.morphism_names_.push_back("m" + std::to_string(f));
  }
  return k;
}

ObjectId FiniteCategory::check_object(ObjectId a) const {
  if (a < 0 || a >= object_count_) {
    throw Error(ErrorCode::UnknownObject, "unknown object " + std::to_string(a));
  }
  return a;
}

MorphismId FiniteCategory::check_morphism(MorphismId f) const {
  if (f < 0 || f >= morphism_count()) {
    throw Error(ErrorCode::UnknownMorphism, "unknown morphism " + std::to_string(f));
  }
  return f;
}

MorphismId FiniteCategory::compose(MorphismId g, MorphismId f) const {
  check_morphism(g);
  check_morphism(f);
  const MorphismId h = compose_[static_cast<std::size_t>(g) * morphism_count() + f];
  if (h < 0) {
    throw Error(ErrorCode::NotComposable, "morphisms " + morphism_names_[g] + " and " +
                                              morphism_names_[f] + " are not composable");
  }
  return h;
}

std::span<const MorphismId> FiniteCategory::hom(ObjectId a, ObjectId b) const {
  check_object(a);
  check_object(b);
  return hom_[static_cast<std::size_t>(a) * object_count_ + b];
}

std::optional<ObjectId> FiniteCategory::find_object(const std::string& name) const {
  for (int a = 0; a < object_count_; ++a)
    if (object_names_[a] == name) return a;
  return std::nullopt;
}

std::optional<MorphismId> FiniteCategory::find_morphism(const std::string& name) const {
  for (int f = 0; f < morphism_count(); ++f)
    if (morphism_names_[f] == name) return f;
  return std::nullopt;
}

RawCategory FiniteCategory::raw() const {
  RawCategory r;
  r.object_count = object_count_;
  for (int f = 0; f < morphism_count(); ++f) r.morphisms.push_back({dom_[f], cod_[f]});
  r.identity = identity_;
  const int m = morphism_count();
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) {
      const int h = compose_[static_cast<std::size_t>(g) * m + f];
      if (h >= 0) r.compose.push_back({g, f, h});
    }
  r.object_names = object_names_;
  r.morphism_names = morphism_names_;
  return r;
}

std::vector<std::string> functor_violations(const FiniteCategory& source,
                                            const FiniteCategory& target, const Functor& F) {
  std::vector<std::string> out;
  if (static_cast<int>(F.on_objects.size()) != source.object_count() ||
      static_cast<int>(F.on_morphisms.size()) != source.morphism_count()) {
    out.push_back("functor maps have the wrong size");
    return out;
  }
  for (int a = 0; a < source.object_count(); ++a) {
    const int b = F.on_objects[a];
    if (b < 0 || b >= target.object_count()) {
      out.push_back("object " + std::to_string(a) + " maps outside the target");
      return out;
    }
  }
  for (int f = 0; f < source.morphism_count(); ++f) {
    const int g = F.on_morphisms[f];
    if (g < 0 || g >= target.morphism_count()) {
      out.push_back("morphism " + std::to_string(f) + " maps outside the target");
      return out;
    }
    if (target.dom(g) != F.on_objects[source.dom(f)] ||
        target.cod(g) != F.on_objects[source.cod(f)]) {
      out.push_back("morphism " + std::to_string(f) + " does not preserve dom/cod");
    }
  }
  if (!out.empty()) return out;
  for (int a = 0; a < source.object_count(); ++a) {
    if (F.on_morphisms[source.identity(a)] != target.identity(F.on_objects[a]))
      out.push_back("identity of object " + std::to_string(a) + " is not preserved");
  }
  for (int g = 0; g < source.morphism_count(); ++g)
    for (int f = 0; f < source.morphism_count(); ++f) {
      if (!source.composable(g, f)) continue;
      if (F.on_morphisms[source.compose(g, f)] !=
          target.compose(F.on_morphisms[g], F.on_morphisms[f]))
        out.push_back("composite " + std::to_string(g) + " o " + std::to_string(f) +
                      " is not preserved");
    }
  return out;
}

bool is_functor(const FiniteCategory& source, const FiniteCategory& target, const Functor& f) {
  return functor_violations(source, target, f).empty();
}

bool is_faithful(const FiniteCategory& source, const Functor& F) {
  for (int a = 0; a < source.object_count(); ++a)
    for (int b = 0; b < source.object_count(); ++b) {
      auto h = source.hom(a, b);
      for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = i + 1; j < h.size(); ++j)
          if (F.on_morphisms[h[i]] == F.on_morphisms[h[j]]) return false;
    }
  return true;
}

bool is_full(const FiniteCategory& source, const FiniteCategory& target, const Functor& F) {
  for (int a = 0; a < source.object_count(); ++a)
    for (int b = 0; b < source.object_count(); ++b) {
      for (MorphismId g : target.hom(F.on_objects[a], F.on_objects[b])) {
        auto h = source.hom(a, b);
        if (std::none_of(h.begin(), h.end(), [&](MorphismId f) { return F.on_morphisms[f] == g; }))
          return false;
      }
    }
  return true;
}

void check_diagram(const FiniteCategory& ambient, const Diagram& d) {
  auto vs = functor_violations(d.shape, ambient, d.labeling);
  if (!vs.empty()) throw Error(ErrorCode::InvalidArgument, "invalid diagram: " + vs.front());
}

namespace {

// Categories whose only composites involve identities.
FiniteCategory free_on_arrows(int n, const std::vector<MorphismDecl>& arrows) {
  RawCategory r;
  r.object_count = n;
  for (int a = 0; a < n; ++a) {
    r.morphisms.push_back({a, a});
    r.identity.push_back(a);
  }
  for (const auto& d : arrows) r.morphisms.push_back(d);
  const int m = static_cast<int>(r.morphisms.size());
  for (int f = 0; f < m; ++f) {
    r.compose.push_back({r.identity[r.morphisms[f].cod], f, f});
    if (f >= n) r.compose.push_back({f, r.identity[r.morphisms[f].dom], f});
  }
  return FiniteCategory::validate(r);
}

}  // namespace

FiniteCategory discrete_category(int n) { return free_on_arrows(n, {}); }
FiniteCategory cospan_shape() { return free_on_arrows(3, {{0, 2}, {1, 2}}); }
FiniteCategory parallel_pair_shape() { return free_on_arrows(2, {{0, 1}, {0, 1}}); }

Diagram empty_diagram() { return Diagram{discrete_category(0), Functor{}}; }

Diagram discrete_diagram(const FiniteCategory& k, std::span<const ObjectId> objects) {
  Diagram d{discrete_category(static_cast<int>(objects.size())), {}};
  d.labeling.on_objects.assign(objects.begin(), objects.end());
  for (ObjectId a : objects) d.labeling.on_morphisms.push_back(k.identity(a));
  return d;
}

Diagram cospan_diagram(const FiniteCategory& k, MorphismId f, MorphismId g) {
  if (k.cod(f) != k.cod(g))
    throw Error(ErrorCode::InvalidArgument, "cospan legs must share a codomain");
  Diagram d{cospan_shape(), {}};
  d.labeling.on_objects = {k.dom(f), k.dom(g), k.cod(f)};
  d.labeling.on_morphisms = {k.identity(k.dom(f)), k.identity(k.dom(g)), k.identity(k.cod(f)), f, g};
  return d;
}

MorphismClass classify_morphism(const FiniteCategory& k, MorphismId f) {
  k.check_morphism(f);
  const ObjectId a = k.dom(f);
  const ObjectId b = k.cod(f);
  MorphismClass c;
  c.mono = true;
  for (int x = 0; x < k.object_count() && c.mono; ++x) {
    auto h = k.hom(x, a);
    for (std::size_t i = 0; i < h.size() && c.mono; ++i)
      for (std::size_t j = i + 1; j < h.size(); ++j)
        if (k.compose(f, h[i]) == k.compose(f, h[j])) {
          c.mono = false;
          break;
        }
  }
  c.epi = true;
  for (int y = 0; y < k.object_count() && c.epi; ++y) {
    auto h = k.hom(b, y);
    for (std::size_t i = 0; i < h.size() && c.epi; ++i)
      for (std::size_t j = i + 1; j < h.size(); ++j)
        if (k.compose(h[i], f) == k.compose(h[j], f)) {
          c.epi = false;
          break;
        }
  }
  for (MorphismId r : k.hom(b, a)) {
    if (k.compose(r, f) == k.identity(a)) c.split_mono = true;
    if (k.compose(f, r) == k.identity(b)) c.split_epi = true;
  }
  c.iso = c.split_mono && c.split_epi;
  return c;
}

SliceCategory slice_category(const FiniteCategory& k, ObjectId anchor) {
  k.check_object(anchor);
  SliceCategory s;
  s.anchor = anchor;
  for (int f = 0; f < k.morphism_count(); ++f)
    if (k.cod(f) == anchor) s.object_morphism.push_back(f);

  RawCategory r;
  r.object_count = static_cast<int>(s.object_morphism.size());
  std::map<std::tuple<int, int, MorphismId>, int> index;
  std::vector<std::tuple<int, int, MorphismId>> arrows;
  for (int x = 0; x < r.object_count; ++x)
    for (int y = 0; y < r.object_count; ++y) {
      const MorphismId fx = s.object_morphism[x];
      const MorphismId fy = s.object_morphism[y];
      for (MorphismId h : k.hom(k.dom(fx), k.dom(fy))) {
        if (k.compose(fy, h) != fx) continue;
        index[{x, y, h}] = static_cast<int>(arrows.size());
        arrows.emplace_back(x, y, h);
        r.morphisms.push_back({x, y});
        r.morphism_names.push_back(k.morphism_name(h) + ":" + k.morphism_name(fx) + "->" +
                                   k.morphism_name(fy));
      }
    }
  for (int x = 0; x < r.object_count; ++x) {
    const MorphismId fx = s.object_morphism[x];
    r.identity.push_back(index.at({x, x, k.identity(k.dom(fx))}));
    r.object_names.push_back(k.morphism_name(fx));
  }
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const auto& [x, y, h1] = arrows[i];
    for (std::size_t j = 0; j < arrows.size(); ++j) {
      const auto& [y2, z, h2] = arrows[j];
      if (y2 != y) continue;
      r.compose.push_back({static_cast<int>(j), static_cast<int>(i), index.at({x, z, k.compose(h2, h1)})});
    }
  }
  s.category = FiniteCategory::validate(r);
  for (int x = 0; x < r.object_count; ++x) s.projection.on_objects.push_back(k.dom(s.object_morphism[x]));
  for (const auto& arrow : arrows) s.projection.on_morphisms.push_back(std::get<2>(arrow));
  return s;
}

bool is_initial(const FiniteCategory& k, ObjectId x) {
  k.check_object(x);
  for (int y = 0; y < k.object_count(); ++y)
    if (k.hom(x, y).size() != 1) return false;
  return true;
}

bool is_terminal(const FiniteCategory& k, ObjectId x) {
  k.check_object(x);
  for (int y = 0; y < k.object_count(); ++y)
    if (k.hom(y, x).size() != 1) return false;
  return true;
}

bool is_strict_initial(const FiniteCategory& k, ObjectId x) {
  if (!is_initial(k, x)) return false;
  for (int y = 0; y < k.object_count(); ++y)
    if (!k.hom(y, x).empty() && !is_initial(k, y)) return false;
  return true;
}

std::optional<ObjectId> find_terminal(const FiniteCategory& k) {
  for (int x = 0; x < k.object_count(); ++x)
    if (is_terminal(k, x)) return x;
  return std::nullopt;
}

FiniteCategory dual_category(const FiniteCategory& k) {
  RawCategory r = k.raw();
  for (auto& d : r.morphisms) std::swap(d.dom, d.cod);
  for (auto& e : r.compose) std::swap(e.g, e.f);
  return FiniteCategory::validate(r);
}

namespace {

// (g, f, g∘f) triples grouped by each participant.
std::vector<std::vector<std::array<MorphismId, 3>>> composition_triples(const FiniteCategory& k) {
  std::vector<std::vector<std::array<MorphismId, 3>>> by(k.morphism_count());
  for (int g = 0; g < k.morphism_count(); ++g)
    for (int f = 0; f < k.morphism_count(); ++f) {
      if (!k.composable(g, f)) continue;
      const std::array<MorphismId, 3> t{g, f, k.compose(g, f)};
      by[g].push_back(t);
      if (f != g) by[f].push_back(t);
      if (t[2] != g && t[2] != f) by[t[2]].push_back(t);
    }
  return by;
}

bool triples_consistent(const FiniteCategory& target, const std::vector<MorphismId>& map,
                        const std::vector<std::array<MorphismId, 3>>& triples) {
  for (const auto& t : triples) {
    const int g = map[t[0]], f = map[t[1]], h = map[t[2]];
    if (g < 0 || f < 0 || h < 0) continue;
    if (!target.composable(g, f) || target.compose(g, f) != h) return false;
  }
  return true;
}

// Extends an object map to morphisms. `injective` restricts to bijections
// between hom-sets. Calls `emit` for each completion; stops when it returns false.
void extend_to_morphisms(const FiniteCategory& source, const FiniteCategory& target,
                         const std::vector<ObjectId>& objects, bool injective,
                         const std::function<bool(const Functor&)>& emit) {
  const auto triples = composition_triples(source);
  std::vector<MorphismId> map(source.morphism_count(), -1);
  std::vector<char> used(target.morphism_count(), 0);
  std::vector<MorphismId> order;
  for (int a = 0; a < source.object_count(); ++a) {
    map[source.identity(a)] = target.identity(objects[a]);
    used[target.identity(objects[a])] = 1;
  }
  for (int f = 0; f < source.morphism_count(); ++f)
    if (!source.is_identity(f)) order.push_back(f);
  for (int a = 0; a < source.object_count(); ++a)
    if (!triples_consistent(target, map, triples[source.identity(a)])) return;

  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == order.size()) {
      Functor F{objects, map};
      if (!emit(F)) stop = true;
      return;
    }
    const MorphismId f = order[i];
    for (MorphismId g : target.hom(objects[source.dom(f)], objects[source.cod(f)])) {
      if (injective && (used[g] || target.is_identity(g))) continue;
      map[f] = g;
      if (injective) used[g] = 1;
      if (triples_consistent(target, map, triples[f])) rec(i + 1);
      if (injective) used[g] = 0;
      map[f] = -1;
      if (stop) return;
    }
  };
  rec(0);
}

}  // namespace

std::optional<Functor> find_isomorphism(const FiniteCategory& a, const FiniteCategory& b) {
  const int n = a.object_count();
  if (n != b.object_count() || a.morphism_count() != b.morphism_count()) return std::nullopt;
  std::vector<ObjectId> sigma(n, -1);
  std::vector<char> used(n, 0);
  std::optional<Functor> found;
  std::function<void(int)> rec = [&](int i) {
    if (found) return;
    if (i == n) {
      extend_to_morphisms(a, b, sigma, true, [&](const Functor& F) {
        found = F;
        return false;
      });
      return;
    }
    for (int t = 0; t < n; ++t) {
      if (used[t]) continue;
      bool ok = true;
      for (int j = 0; j <= i && ok; ++j) {
        const int sj = j == i ? t : sigma[j];
        ok = a.hom(i, j).size() == b.hom(t, sj).size() && a.hom(j, i).size() == b.hom(sj, t).size();
      }
      if (!ok) continue;
      sigma[i] = t;
      used[t] = 1;
      rec(i + 1);
      used[t] = 0;
      sigma[i] = -1;
      if (found) return;
    }
  };
  rec(0);
  return found;
}

std::vector<Functor> enumerate_functors(const FiniteCategory& shape, const FiniteCategory& k) {
  std::vector<Functor> out;
  const int n = shape.object_count();
  if (k.object_count() == 0 && n > 0) return out;
  std::vector<ObjectId> objects(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      extend_to_morphisms(shape, k, objects, false, [&](const Functor& F) {
        out.push_back(F);
        return true;
      });
      return;
    }
    for (int t = 0; t < k.object_count(); ++t) {
      objects[i] = t;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<FiniteCategory> enumerate_shapes(int max_objects, int max_arrows) {
  std::vector<FiniteCategory> out;
  for (int n = 0; n <= max_objects; ++n) {
    for (int k = 0; k <= max_arrows; ++k) {
      if (n == 0 && k > 0) break;
      std::vector<FiniteCategory> bucket;
      std::vector<MorphismDecl> arrows(k);
      // dom/cod assignments with arrows sorted by (dom, cod)
      std::function<void(int)> place = [&](int i) {
        if (i == k) {
          RawCategory r;
          r.object_count = n;
          for (int a = 0; a < n; ++a) {
            r.morphisms.push_back({a, a});
            r.identity.push_back(a);
          }
          for (const auto& d : arrows) r.morphisms.push_back(d);
          const int m = n + k;
          std::vector<std::pair<int, int>> pairs;  // non-identity composable pairs (g, f)
          for (int g = n; g < m; ++g)
            for (int f = n; f < m; ++f)
              if (r.morphisms[f].cod == r.morphisms[g].dom) pairs.emplace_back(g, f);
          for (int f = 0; f < m; ++f) {
            r.compose.push_back({r.morphisms[f].cod, f, f});
            if (f >= n) r.compose.push_back({f, r.morphisms[f].dom, f});
          }
          const std::size_t base = r.compose.size();
          r.compose.resize(base + pairs.size());
          // Partial table; associativity is checked as soon as both sides are known.
          std::vector<int> t(m * m, -1);
          for (int f = 0; f < m; ++f) {
            t[r.morphisms[f].cod * m + f] = f;
            t[f * m + r.morphisms[f].dom] = f;
          }
          auto at = [&](int g, int f) { return g < 0 || f < 0 ? -1 : t[g * m + f]; };
          auto associative_so_far = [&] {
            for (int a = 0; a < m; ++a)
              for (int b = 0; b < m; ++b) {
                if (r.morphisms[b].cod != r.morphisms[a].dom) continue;
                const int ab = at(a, b);
                for (int c = 0; c < m; ++c) {
                  if (r.morphisms[c].cod != r.morphisms[b].dom) continue;
                  const int left = at(ab, c);
                  const int right = at(a, at(b, c));
                  if (left >= 0 && right >= 0 && left != right) return false;
                }
              }
            return true;
          };
          std::function<void(std::size_t)> choose = [&](std::size_t p) {
            if (p == pairs.size()) {
              if (!FiniteCategory::violations(r).empty()) return;
              FiniteCategory c = FiniteCategory::validate(r);
              for (const auto& seen : bucket)
                if (find_isomorphism(seen, c)) return;
              bucket.push_back(std::move(c));
              return;
            }
            const auto [g, f] = pairs[p];
            const int dom = r.morphisms[f].dom;
            const int cod = r.morphisms[g].cod;
            for (int h = 0; h < m; ++h) {
              if (r.morphisms[h].dom != dom || r.morphisms[h].cod != cod) continue;
              if (h < n && h != dom) continue;
              r.compose[base + p] = {g, f, h};
              t[g * m + f] = h;
              if (associative_so_far()) choose(p + 1);
              t[g * m + f] = -1;
            }
          };
          choose(0);
          return;
        }
        for (int d = 0; d < n; ++d)
          for (int c = 0; c < n; ++c) {
            if (i > 0 && std::pair(d, c) < std::pair(arrows[i - 1].dom, arrows[i - 1].cod)) continue;
            arrows[i] = {d, c};
            place(i + 1);
          }
      };
      place(0);
      for (auto& c : bucket) out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace freecat
