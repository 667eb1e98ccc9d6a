#include "freecat/limits.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace freecat {

namespace {

std::vector<MorphismId> non_identity_arrows(const FiniteCategory& shape) {
  std::vector<MorphismId> out;
  for (int d = 0; d < shape.morphism_count(); ++d)
    if (!shape.is_identity(d)) out.push_back(d);
  return out;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<Cone> enumerate_cones(const FiniteCategory& k, const Diagram& d) {
  const int n = d.shape.object_count();
  const auto arrows = non_identity_arrows(d.shape);
  std::vector<Cone> out;
  Cone c;
  c.legs.assign(n, -1);
  std::function<void(int)> rec = [&](int x) {
    if (x == n) {
      out.push_back(c);
      return;
    }
    for (MorphismId leg : k.hom(c.apex, d.labeling.on_objects[x])) {
      c.legs[x] = leg;
      bool ok = true;
      for (MorphismId a : arrows) {
        const int s = d.shape.dom(a);
        const int t = d.shape.cod(a);
        if (s > x || t > x) continue;
        if (k.compose(d.labeling.on_morphisms[a], c.legs[s]) != c.legs[t]) {
          ok = false;
          break;
        }
      }
      if (ok) rec(x + 1);
    }
    c.legs[x] = -1;
  };
  for (int apex = 0; apex < k.object_count(); ++apex) {
    c.apex = apex;
    rec(0);
  }
  return out;
}

bool is_cone(const FiniteCategory& k, const Diagram& d, const Cone& c) {
  if (static_cast<int>(c.legs.size()) != d.shape.object_count()) return false;
  for (int x = 0; x < d.shape.object_count(); ++x) {
    const MorphismId leg = c.legs[x];
    if (leg < 0 || leg >= k.morphism_count()) return false;
    if (k.dom(leg) != c.apex || k.cod(leg) != d.labeling.on_objects[x]) return false;
  }
  for (int a = 0; a < d.shape.morphism_count(); ++a) {
    if (k.compose(d.labeling.on_morphisms[a], c.legs[d.shape.dom(a)]) != c.legs[d.shape.cod(a)])
      return false;
  }
  return true;
}

std::vector<MorphismId> cone_morphisms(const FiniteCategory& k, const Cone& from, const Cone& to) {
  std::vector<MorphismId> out;
  for (MorphismId h : k.hom(from.apex, to.apex)) {
    bool ok = true;
    for (std::size_t x = 0; x < from.legs.size() && ok; ++x)
      ok = k.compose(to.legs[x], h) == from.legs[x];
    if (ok) out.push_back(h);
  }
  return out;
}

TerminalSearch multi_terminal(std::size_t n, const HomFunction& hom) {
  std::vector<std::vector<std::vector<MorphismId>>> homs(n, std::vector<std::vector<MorphismId>>(n));
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      homs[i][j] = hom(i, j);
      if (!homs[i][j].empty()) uf.join(i, j);
    }
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> component_of(n);
  {
    std::vector<long> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = uf.find(i);
      if (slot[r] < 0) {
        slot[r] = static_cast<long>(components.size());
        components.emplace_back();
      }
      components[slot[r]].push_back(i);
      component_of[i] = static_cast<std::size_t>(slot[r]);
    }
  }
  TerminalSearch out;
  std::vector<std::size_t> terminal_of(components.size());
  for (std::size_t ci = 0; ci < components.size(); ++ci) {
    const auto& comp = components[ci];
    std::optional<std::size_t> terminal;
    for (std::size_t t : comp) {
      if (std::all_of(comp.begin(), comp.end(), [&](std::size_t c) { return homs[c][t].size() == 1; })) {
        terminal = t;
        break;
      }
    }
    if (!terminal) {
      out.failing_node = comp.front();
      return out;
    }
    terminal_of[ci] = out.members.size();
    out.members.push_back(*terminal);
  }
  out.certificate.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m = terminal_of[component_of[i]];
    out.certificate[i] = {m, homs[i][out.members[m]].front()};
  }
  return out;
}

MultiLimitOutcome multi_limit(const FiniteCategory& k, const Diagram& d) {
  auto cones = enumerate_cones(k, d);
  auto search = multi_terminal(cones.size(), [&](std::size_t i, std::size_t j) {
    return cone_morphisms(k, cones[i], cones[j]);
  });
  if (search.failing_node) return NoMultiLimit{cones[*search.failing_node]};
  MultiLimit out;
  for (std::size_t m : search.members) out.cones.push_back(cones[m]);
  out.all_cones = std::move(cones);
  out.certificate = std::move(search.certificate);
  return out;
}

bool verify_unique_factorization(const FiniteCategory& k, const Diagram& d,
                                 std::span<const Cone> members) {
  for (const auto& m : members)
    if (!is_cone(k, d, m)) return false;
  for (const auto& c : enumerate_cones(k, d)) {
    std::size_t count = 0;
    for (const auto& m : members) count += cone_morphisms(k, c, m).size();
    if (count != 1) return false;
  }
  return true;
}

bool covers_all_cones(const FiniteCategory& k, const Diagram& d, std::span<const Cone> members) {
  for (const auto& m : members)
    if (!is_cone(k, d, m)) return false;
  for (const auto& c : enumerate_cones(k, d)) {
    if (std::none_of(members.begin(), members.end(),
                     [&](const Cone& m) { return !cone_morphisms(k, c, m).empty(); }))
      return false;
  }
  return true;
}

std::vector<Cone> pre_limit(const FiniteCategory& k, const Diagram& d) {
  const auto cones = enumerate_cones(k, d);
  const std::size_t n = cones.size();
  std::vector<std::vector<char>> factors(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) factors[i][j] = !cone_morphisms(k, cones[i], cones[j]).empty();
  std::vector<char> keep(n, 1);
  for (std::size_t c = 0; c < n; ++c) {
    bool droppable = true;
    for (std::size_t i = 0; i < n && droppable; ++i) {
      if (!factors[i][c]) continue;
      bool other = false;
      for (std::size_t j = 0; j < n && !other; ++j) other = j != c && keep[j] && factors[i][j];
      droppable = other;
    }
    if (droppable) keep[c] = 0;
  }
  std::vector<Cone> out;
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) out.push_back(cones[i]);
  return out;
}

std::optional<Factorization> factor_through(const FiniteCategory& k, std::span<const Cone> members,
                                            const Cone& c) {
  std::optional<Factorization> found;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (MorphismId h : cone_morphisms(k, c, members[i])) {
      if (found) return std::nullopt;
      found = Factorization{i, h};
    }
  }
  return found;
}

ProductTable::ProductTable(const FiniteCategory& k) : k_(&k) {
  const int n = k.object_count();
  table_.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      const ObjectId pair[2] = {a, c};
      auto outcome = multi_limit(k, discrete_diagram(k, pair));
      const auto* limit = std::get_if<MultiLimit>(&outcome);
      if (limit && limit->cones.size() == 1) {
        const Cone& cone = limit->cones.front();
        table_[static_cast<std::size_t>(a) * n + c] = BinaryProduct{cone.apex, cone.legs[0], cone.legs[1]};
      } else if (!first_missing_) {
        first_missing_ = std::pair(a, c);
      }
    }
}

const std::optional<BinaryProduct>& ProductTable::get(ObjectId a, ObjectId c) const {
  k_->check_object(a);
  k_->check_object(c);
  return table_[static_cast<std::size_t>(a) * k_->object_count() + c];
}

std::optional<ObjectId> ProductTable::missing_with(ObjectId a) const {
  for (int c = 0; c < k_->object_count(); ++c)
    if (!get(a, c)) return c;
  return std::nullopt;
}

MorphismId ProductTable::pair(ObjectId a, ObjectId c, MorphismId f, MorphismId g) const {
  const auto& p = get(a, c);
  if (!p) {
    throw Error(ErrorCode::NotProductComplete,
                "no product " + k_->object_name(a) + " x " + k_->object_name(c));
  }
  if (k_->dom(f) != k_->dom(g) || k_->cod(f) != a || k_->cod(g) != c)
    throw Error(ErrorCode::InvalidArgument, "pairing needs a span into the factors");
  for (MorphismId m : k_->hom(k_->dom(f), p->apex))
    if (k_->compose(p->first, m) == f && k_->compose(p->second, m) == g) return m;
  throw Error(ErrorCode::InvalidArgument, "product table is inconsistent");
}

MorphismId ProductTable::times(ObjectId a, MorphismId h) const {
  const ObjectId c = k_->dom(h);
  const auto& src = get(a, c);
  if (!src) {
    throw Error(ErrorCode::NotProductComplete,
                "no product " + k_->object_name(a) + " x " + k_->object_name(c));
  }
  return pair(a, k_->cod(h), src->first, k_->compose(h, src->second));
}

namespace {

void require_products_with(const ProductTable& products, ObjectId a) {
  if (auto c = products.missing_with(a)) {
    const auto& k = products.category();
    throw Error(ErrorCode::NotProductComplete,
                "no product " + k.object_name(a) + " x " + k.object_name(*c));
  }
}

}  // namespace

MultiExponentialOutcome multi_exponential(const ProductTable& products, ObjectId a, ObjectId b) {
  const auto& k = products.category();
  k.check_object(a);
  k.check_object(b);
  require_products_with(products, a);
  struct Node {
    ObjectId object;
    MorphismId map;
  };
  std::vector<Node> nodes;
  for (int c = 0; c < k.object_count(); ++c)
    for (MorphismId m : k.hom(products.get(a, c)->apex, b)) nodes.push_back({c, m});
  auto search = multi_terminal(nodes.size(), [&](std::size_t i, std::size_t j) {
    std::vector<MorphismId> out;
    for (MorphismId h : k.hom(nodes[i].object, nodes[j].object))
      if (k.compose(nodes[j].map, products.times(a, h)) == nodes[i].map) out.push_back(h);
    return out;
  });
  if (search.failing_node) {
    const auto& n = nodes[*search.failing_node];
    return NoFamily{n.object, n.map};
  }
  MultiUniversalFamily family{a, b, {}};
  for (std::size_t m : search.members) family.members.push_back({nodes[m].object, nodes[m].map});
  return family;
}

bool verify_multi_universal(const ProductTable& products, const MultiUniversalFamily& family) {
  const auto& k = products.category();
  const ObjectId a = family.base;
  for (const auto& m : family.members) {
    const auto& p = products.get(a, m.object);
    if (!p || k.dom(m.evaluation) != p->apex || k.cod(m.evaluation) != family.target) return false;
  }
  for (int c = 0; c < k.object_count(); ++c) {
    const auto& ac = products.get(a, c);
    if (!ac) return false;
    std::set<MorphismId> image;
    std::size_t count = 0;
    for (const auto& m : family.members)
      for (MorphismId h : k.hom(c, m.object)) {
        image.insert(k.compose(m.evaluation, products.times(a, h)));
        ++count;
      }
    if (image.size() != count || count != k.hom(ac->apex, family.target).size()) return false;
  }
  return true;
}

std::vector<DependentTriple> dependent_triples(const ProductTable& products, MorphismId b,
                                               ObjectId a, ObjectId x) {
  const auto& k = products.category();
  k.check_morphism(b);
  require_products_with(products, a);
  const auto& ax = products.get(a, x);
  if (k.cod(b) != ax->apex)
    throw Error(ErrorCode::InvalidArgument, "codomain of b is not the product A x X");
  std::vector<DependentTriple> out;
  for (int p = 0; p < k.object_count(); ++p) {
    const ObjectId ap = products.get(a, p)->apex;
    for (MorphismId eps : k.hom(ap, k.dom(b)))
      for (MorphismId w : k.hom(p, x))
        if (k.compose(b, eps) == products.times(a, w)) out.push_back({p, eps, w});
  }
  return out;
}

bool triple_covers(const ProductTable& products, ObjectId a, const DependentTriple& member,
                   const DependentTriple& competitor) {
  const auto& k = products.category();
  for (MorphismId f : k.hom(competitor.object, member.object)) {
    if (k.compose(member.w, f) != competitor.w) continue;
    if (k.compose(member.epsilon, products.times(a, f)) == competitor.epsilon) return true;
  }
  return false;
}

std::optional<DependentTriple> weak_simple_product(const ProductTable& products, MorphismId b,
                                                   ObjectId a, ObjectId x) {
  const auto triples = dependent_triples(products, b, a, x);
  for (const auto& t : triples) {
    if (std::all_of(triples.begin(), triples.end(),
                    [&](const DependentTriple& c) { return triple_covers(products, a, t, c); }))
      return t;
  }
  return std::nullopt;
}

std::vector<DependentTriple> approximate_dependent_product(const ProductTable& products,
                                                           MorphismId b, ObjectId a, ObjectId x) {
  if (auto single = weak_simple_product(products, b, a, x)) return {*single};
  const auto triples = dependent_triples(products, b, a, x);
  const std::size_t n = triples.size();
  std::vector<std::vector<char>> covers(n, std::vector<char>(n, 0));  // covers[member][competitor]
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) covers[i][j] = triple_covers(products, a, triples[i], triples[j]);
  std::vector<char> keep(n, 1);
  for (std::size_t c = 0; c < n; ++c) {
    bool droppable = true;
    for (std::size_t j = 0; j < n && droppable; ++j) {
      if (!covers[c][j]) continue;
      bool other = false;
      for (std::size_t i = 0; i < n && !other; ++i) other = i != c && keep[i] && covers[i][j];
      droppable = other;
    }
    if (droppable) keep[c] = 0;
  }
  std::vector<DependentTriple> out;
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) out.push_back(triples[i]);
  return out;
}

std::optional<KPullback> pullback(const FiniteCategory& k, MorphismId f, MorphismId g) {
  auto outcome = multi_limit(k, cospan_diagram(k, f, g));
  const auto* limit = std::get_if<MultiLimit>(&outcome);
  if (!limit || limit->cones.size() != 1) return std::nullopt;
  const Cone& c = limit->cones.front();
  return KPullback{c.apex, c.legs[0], c.legs[1]};
}

std::optional<std::pair<MorphismId, MorphismId>> first_cospan_without_pullback(const FiniteCategory& k) {
  for (int f = 0; f < k.morphism_count(); ++f)
    for (int g = 0; g < k.morphism_count(); ++g)
      if (k.cod(f) == k.cod(g) && !pullback(k, f, g)) return std::pair(f, g);
  return std::nullopt;
}

bool is_pullback_square(const FiniteCategory& k, MorphismId f, MorphismId g, MorphismId p,
                        MorphismId q) {
  if (k.cod(f) != k.cod(g) || k.dom(p) != k.dom(q) || k.cod(p) != k.dom(f) || k.cod(q) != k.dom(g))
    return false;
  if (k.compose(f, p) != k.compose(g, q)) return false;
  const ObjectId apex = k.dom(p);
  for (int w = 0; w < k.object_count(); ++w)
    for (MorphismId u : k.hom(w, k.dom(f)))
      for (MorphismId v : k.hom(w, k.dom(g))) {
        if (k.compose(f, u) != k.compose(g, v)) continue;
        int count = 0;
        for (MorphismId h : k.hom(w, apex))
          if (k.compose(p, h) == u && k.compose(q, h) == v) ++count;
        if (count != 1) return false;
      }
  return true;
}

GenericProofVerdict is_generic_proof(const FiniteCategory& k, MorphismId theta) {
  k.check_morphism(theta);
  if (auto bad = first_cospan_without_pullback(k)) {
    throw Error(ErrorCode::NoPullbacks, "no pullback of " + k.morphism_name(bad->first) + " and " +
                                            k.morphism_name(bad->second));
  }
  const ObjectId lambda = k.cod(theta);
  for (int f = 0; f < k.morphism_count(); ++f) {
    const ObjectId y = k.dom(f);
    const ObjectId x = k.cod(f);
    bool found = false;
    for (MorphismId g : k.hom(x, lambda)) {
      const auto pb = pullback(k, g, theta);
      const MorphismId along = pb->first;  // g*θ : P → X
      bool forward = false;
      for (MorphismId m : k.hom(y, pb->apex))
        if (k.compose(along, m) == f) forward = true;
      bool backward = false;
      for (MorphismId m : k.hom(pb->apex, y))
        if (k.compose(f, m) == along) backward = true;
      if (forward && backward) {
        found = true;
        break;
      }
    }
    if (!found) return {false, f};
  }
  return {true, std::nullopt};
}

}  // namespace freecat
