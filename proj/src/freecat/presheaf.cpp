#include "freecat/presheaf.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace freecat {

namespace {

int hom_position(const FiniteCategory& k, MorphismId u) {
  const auto h = k.hom(k.dom(u), k.cod(u));
  return static_cast<int>(std::find(h.begin(), h.end(), u) - h.begin());
}

std::vector<MorphismId> non_identities(const FiniteCategory& k) {
  std::vector<MorphismId> out;
  for (int f = 0; f < k.morphism_count(); ++f)
    if (!k.is_identity(f)) out.push_back(f);
  return out;
}

// Canonical labels: classes numbered by first occurrence.
std::vector<int> canonical_labels(const std::vector<int>& raw) {
  std::map<int, int> seen;
  std::vector<int> out;
  for (int r : raw) out.push_back(seen.emplace(r, static_cast<int>(seen.size())).first->second);
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Backtracking over element-level maps F → G satisfying naturality. Visit
// returns false to stop.
std::vector<int> flatten(const NatTrans& t) {
  std::vector<int> out;
  for (const auto& c : t.components) out.insert(out.end(), c.begin(), c.end());
  return out;
}

class NatSearch {
 public:
  NatSearch(const FiniteCategory& k, const Presheaf& f, const Presheaf& g, bool injective)
      : f_(f), g_(g), injective_(injective) {
    const int n = k.object_count();
    offset_.assign(n + 1, 0);
    for (int a = 0; a < n; ++a) offset_[a + 1] = offset_[a] + f.sizes[a];
    for (int a = 0; a < n; ++a)
      for (int e = 0; e < f.sizes[a]; ++e) {
        object_.push_back(a);
        element_.push_back(e);
      }
    checks_.resize(object_.size());
    for (MorphismId h : non_identities(k)) {
      const ObjectId x = k.dom(h);
      const ObjectId y = k.cod(h);
      for (int e = 0; e < f.sizes[y]; ++e) {
        const int u = offset_[y] + e;
        const int v = offset_[x] + f.action[h][e];
        checks_[std::max(u, v)].push_back({h, u, v});
      }
    }
    value_.assign(object_.size(), -1);
    components_.resize(n);
    for (int a = 0; a < n; ++a) components_[a].assign(f.sizes[a], -1);
  }

  void run(const std::function<bool(const NatTrans&)>& visit) {
    for (std::size_t a = 0; a < components_.size(); ++a)
      if (f_.sizes[a] > 0 && g_.sizes[a] == 0) return;
    visit_ = &visit;
    rec(0);
  }

  std::size_t count() {
    for (std::size_t a = 0; a < components_.size(); ++a)
      if (f_.sizes[a] > 0 && g_.sizes[a] == 0) return 0;
    visit_ = nullptr;
    count_ = 0;
    rec(0);
    return count_;
  }

 private:
  struct Check {
    MorphismId h;
    int u;  // (Y, e)
    int v;  // (X, F(h)(e))
  };

  bool rec(std::size_t i) {
    if (i == object_.size()) {
      if (!visit_) {
        ++count_;
        return true;
      }
      NatTrans t{components_};
      return (*visit_)(t);
    }
    const int a = object_[i];
    for (int c = 0; c < g_.sizes[a]; ++c) {
      if (injective_) {
        bool used = false;
        for (int e = 0; e < element_[i] && !used; ++e) used = components_[a][e] == c;
        if (used) continue;
      }
      value_[i] = c;
      components_[a][element_[i]] = c;
      bool ok = true;
      for (const auto& chk : checks_[i]) {
        if (value_[chk.v] != g_.action[chk.h][value_[chk.u]]) {
          ok = false;
          break;
        }
      }
      if (ok && !rec(i + 1)) return false;
    }
    value_[i] = -1;
    components_[a][element_[i]] = -1;
    return true;
  }

  const Presheaf& f_;
  const Presheaf& g_;
  bool injective_;
  std::vector<int> offset_;
  std::vector<int> object_;
  std::vector<int> element_;
  std::vector<std::vector<Check>> checks_;
  std::vector<int> value_;
  std::vector<std::vector<int>> components_;
  const std::function<bool(const NatTrans&)>* visit_ = nullptr;
  std::size_t count_ = 0;
};

}  // namespace

int Presheaf::total() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }

int Subfunctor::total() const {
  int n = 0;
  for (const auto& m : members) n += static_cast<int>(std::count(m.begin(), m.end(), 1));
  return n;
}

std::vector<std::string> presheaf_violations(const FiniteCategory& k, const Presheaf& f) {
  std::vector<std::string> out;
  if (static_cast<int>(f.sizes.size()) != k.object_count()) {
    out.push_back("one set per object is needed");
    return out;
  }
  if (static_cast<int>(f.action.size()) != k.morphism_count()) {
    out.push_back("one action per morphism is needed");
    return out;
  }
  for (int a = 0; a < k.object_count(); ++a)
    if (f.sizes[a] < 0) out.push_back("negative size at " + k.object_name(a));
  if (!out.empty()) return out;
  for (int h = 0; h < k.morphism_count(); ++h) {
    const auto& act = f.action[h];
    if (static_cast<int>(act.size()) != f.sizes[k.cod(h)]) {
      out.push_back("action of " + k.morphism_name(h) + " has the wrong length");
      continue;
    }
    for (int v : act)
      if (v < 0 || v >= f.sizes[k.dom(h)]) {
        out.push_back("action of " + k.morphism_name(h) + " leaves its target");
        break;
      }
  }
  if (!out.empty()) return out;
  for (int a = 0; a < k.object_count(); ++a) {
    const auto& act = f.action[k.identity(a)];
    for (int e = 0; e < f.sizes[a]; ++e)
      if (act[e] != e) {
        out.push_back("identity of " + k.object_name(a) + " acts nontrivially");
        break;
      }
  }
  for (int g = 0; g < k.morphism_count(); ++g)
    for (int h = 0; h < k.morphism_count(); ++h) {
      if (!k.composable(g, h)) continue;
      const MorphismId gh = k.compose(g, h);
      for (int e = 0; e < f.sizes[k.cod(g)]; ++e)
        if (f.action[gh][e] != f.action[h][f.action[g][e]]) {
          out.push_back("action of " + k.morphism_name(g) + " then " + k.morphism_name(h) +
                        " differs from " + k.morphism_name(gh));
          break;
        }
    }
  return out;
}

void check_presheaf(const FiniteCategory& k, const Presheaf& f) {
  auto vs = presheaf_violations(k, f);
  if (!vs.empty()) throw Error(ErrorCode::InvalidArgument, "invalid presheaf: " + vs.front());
}

bool is_natural(const FiniteCategory& k, const Presheaf& f, const Presheaf& g, const NatTrans& a) {
  if (static_cast<int>(a.components.size()) != k.object_count()) return false;
  for (int x = 0; x < k.object_count(); ++x) {
    if (static_cast<int>(a.components[x].size()) != f.sizes[x]) return false;
    for (int v : a.components[x])
      if (v < 0 || v >= g.sizes[x]) return false;
  }
  for (int h = 0; h < k.morphism_count(); ++h) {
    const ObjectId x = k.dom(h);
    const ObjectId y = k.cod(h);
    for (int e = 0; e < f.sizes[y]; ++e)
      if (a.components[x][f.action[h][e]] != g.action[h][a.components[y][e]]) return false;
  }
  return true;
}

bool is_subfunctor(const FiniteCategory& k, const Presheaf& f, const Subfunctor& s) {
  if (static_cast<int>(s.members.size()) != k.object_count()) return false;
  for (int a = 0; a < k.object_count(); ++a)
    if (static_cast<int>(s.members[a].size()) != f.sizes[a]) return false;
  for (int h = 0; h < k.morphism_count(); ++h)
    for (int e = 0; e < f.sizes[k.cod(h)]; ++e)
      if (s.members[k.cod(h)][e] && !s.members[k.dom(h)][f.action[h][e]]) return false;
  return true;
}

NatTrans identity_nat(const Presheaf& f) {
  NatTrans out;
  for (int n : f.sizes) {
    out.components.emplace_back(n);
    std::iota(out.components.back().begin(), out.components.back().end(), 0);
  }
  return out;
}

NatTrans compose_nat(const NatTrans& beta, const NatTrans& alpha) {
  NatTrans out;
  for (std::size_t a = 0; a < alpha.components.size(); ++a) {
    out.components.emplace_back();
    for (int v : alpha.components[a]) out.components.back().push_back(beta.components[a][v]);
  }
  return out;
}

bool is_pointwise_injective(const NatTrans& a, const Presheaf& cod) {
  for (std::size_t x = 0; x < a.components.size(); ++x) {
    std::vector<char> hit(cod.sizes[x], 0);
    for (int v : a.components[x]) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
  }
  return true;
}

bool is_pointwise_surjective(const NatTrans& a, const Presheaf& cod) {
  for (std::size_t x = 0; x < a.components.size(); ++x) {
    std::vector<char> hit(cod.sizes[x], 0);
    for (int v : a.components[x]) hit[v] = 1;
    if (std::count(hit.begin(), hit.end(), 0) != 0) return false;
  }
  return true;
}

bool is_pointwise_bijective(const NatTrans& a, const Presheaf& cod) {
  return is_pointwise_injective(a, cod) && is_pointwise_surjective(a, cod);
}

std::vector<NatTrans> nat_transformations(const FiniteCategory& k, const Presheaf& f, const Presheaf& g) {
  std::vector<NatTrans> out;
  NatSearch(k, f, g, false).run([&](const NatTrans& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

std::size_t count_nat_transformations(const FiniteCategory& k, const Presheaf& f, const Presheaf& g) {
  return NatSearch(k, f, g, false).count();
}

Presheaf yoneda(const FiniteCategory& k, ObjectId a) {
  k.check_object(a);
  Presheaf out;
  for (int x = 0; x < k.object_count(); ++x) out.sizes.push_back(static_cast<int>(k.hom(x, a).size()));
  out.action.resize(k.morphism_count());
  for (int h = 0; h < k.morphism_count(); ++h)
    for (MorphismId u : k.hom(k.cod(h), a)) out.action[h].push_back(hom_position(k, k.compose(u, h)));
  return out;
}

NatTrans yoneda_map(const FiniteCategory& k, MorphismId h) {
  NatTrans out;
  for (int x = 0; x < k.object_count(); ++x) {
    out.components.emplace_back();
    for (MorphismId u : k.hom(x, k.dom(h))) out.components.back().push_back(hom_position(k, k.compose(h, u)));
  }
  return out;
}

Presheaf terminal_presheaf(const FiniteCategory& k) {
  Presheaf out;
  out.sizes.assign(k.object_count(), 1);
  out.action.assign(k.morphism_count(), std::vector<int>{0});
  return out;
}

Presheaf initial_presheaf(const FiniteCategory& k) {
  Presheaf out;
  out.sizes.assign(k.object_count(), 0);
  out.action.assign(k.morphism_count(), std::vector<int>{});
  return out;
}

std::vector<Presheaf> enumerate_presheaves(const FiniteCategory& k, int max_pointwise, int max_total) {
  const int n = k.object_count();
  const auto arrows = non_identities(k);
  // order[h]: position at which h is assigned; identities count as assigned up front.
  std::vector<int> order(k.morphism_count(), -1);
  for (std::size_t t = 0; t < arrows.size(); ++t) order[arrows[t]] = static_cast<int>(t);
  struct Entry {
    MorphismId g, f, gf;
  };
  std::vector<std::vector<Entry>> entries(arrows.size());
  for (int g = 0; g < k.morphism_count(); ++g)
    for (int f = 0; f < k.morphism_count(); ++f) {
      if (k.is_identity(g) || k.is_identity(f) || !k.composable(g, f)) continue;
      const MorphismId gf = k.compose(g, f);
      const int last = std::max({order[g], order[f], order[gf]});
      entries[last].push_back({g, f, gf});
    }

  std::vector<Presheaf> out;
  std::vector<int> sizes(n, 0);
  Presheaf p;
  p.action.resize(k.morphism_count());
  std::function<void(std::size_t)> rec = [&](std::size_t t) {
    if (t == arrows.size()) {
      out.push_back(p);
      return;
    }
    const MorphismId h = arrows[t];
    const int from = p.sizes[k.cod(h)];
    const int to = p.sizes[k.dom(h)];
    if (from > 0 && to == 0) return;
    std::vector<int> act(from, 0);
    while (true) {
      p.action[h] = act;
      bool ok = true;
      for (const auto& e : entries[t]) {
        for (int x = 0; x < p.sizes[k.cod(e.g)] && ok; ++x)
          ok = p.action[e.gf][x] == p.action[e.f][p.action[e.g][x]];
        if (!ok) break;
      }
      if (ok) rec(t + 1);
      int i = from - 1;
      while (i >= 0 && ++act[i] == to) act[i--] = 0;
      if (i < 0) break;
    }
  };
  while (true) {
    const int total = std::accumulate(sizes.begin(), sizes.end(), 0);
    if (max_total < 0 || total <= max_total) {
      p.sizes = sizes;
      for (int a = 0; a < n; ++a) {
        p.action[k.identity(a)].resize(sizes[a]);
        std::iota(p.action[k.identity(a)].begin(), p.action[k.identity(a)].end(), 0);
      }
      rec(0);
    }
    int i = n - 1;
    while (i >= 0 && ++sizes[i] > max_pointwise) sizes[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

std::optional<NatTrans> find_presheaf_iso(const FiniteCategory& k, const Presheaf& f, const Presheaf& g) {
  if (f.sizes != g.sizes) return std::nullopt;
  std::optional<NatTrans> found;
  NatSearch(k, f, g, true).run([&](const NatTrans& t) {
    found = t;
    return false;
  });
  return found;
}

namespace {

// Invariant under isomorphism: sizes and the sorted fibre sizes of every action.
std::vector<int> iso_invariant(const Presheaf& f) {
  std::vector<int> out = f.sizes;
  for (std::size_t h = 0; h < f.action.size(); ++h) {
    std::map<int, int> fibres;
    for (int v : f.action[h]) ++fibres[v];
    std::vector<int> counts;
    for (auto [v, c] : fibres) counts.push_back(c);
    std::sort(counts.begin(), counts.end());
    out.push_back(-1);
    out.insert(out.end(), counts.begin(), counts.end());
  }
  return out;
}

}  // namespace

std::vector<Presheaf> presheaves_up_to_iso(const FiniteCategory& k, int max_pointwise, int max_total) {
  std::vector<Presheaf> out;
  std::map<std::vector<int>, std::vector<std::size_t>> buckets;
  for (auto& p : enumerate_presheaves(k, max_pointwise, max_total)) {
    auto& bucket = buckets[iso_invariant(p)];
    if (std::any_of(bucket.begin(), bucket.end(),
                    [&](std::size_t i) { return find_presheaf_iso(k, out[i], p).has_value(); }))
      continue;
    bucket.push_back(out.size());
    out.push_back(std::move(p));
  }
  return out;
}

PresheafDiagram discrete_presheaf_diagram(const FiniteCategory& k, std::span<const Presheaf> objects) {
  (void)k;
  PresheafDiagram d{discrete_category(static_cast<int>(objects.size())), {objects.begin(), objects.end()}, {}};
  for (const auto& p : objects) d.arrows.push_back(identity_nat(p));
  return d;
}

PresheafDiagram parallel_presheaf_diagram(const Presheaf& f, const Presheaf& g, const NatTrans& a,
                                          const NatTrans& b) {
  return PresheafDiagram{parallel_pair_shape(), {f, g}, {identity_nat(f), identity_nat(g), a, b}};
}

PresheafDiagram cospan_presheaf_diagram(const Presheaf& f, const Presheaf& g, const Presheaf& c,
                                        const NatTrans& a, const NatTrans& b) {
  return PresheafDiagram{cospan_shape(), {f, g, c}, {identity_nat(f), identity_nat(g), identity_nat(c), a, b}};
}

PresheafDiagram span_presheaf_diagram(const Presheaf& c, const Presheaf& f, const Presheaf& g,
                                      const NatTrans& a, const NatTrans& b) {
  return PresheafDiagram{dual_category(cospan_shape()), {f, g, c},
                         {identity_nat(f), identity_nat(g), identity_nat(c), a, b}};
}

PresheafCone presheaf_limit(const FiniteCategory& k, const PresheafDiagram& d) {
  const int n = d.shape.object_count();
  const int objects = k.object_count();
  std::vector<std::vector<std::vector<int>>> tuples(objects);
  std::vector<std::map<std::vector<int>, int>> lookup(objects);
  std::vector<MorphismId> arrows = non_identities(d.shape);
  for (int a = 0; a < objects; ++a) {
    std::vector<int> t(n, -1);
    std::function<void(int)> rec = [&](int x) {
      if (x == n) {
        lookup[a].emplace(t, static_cast<int>(tuples[a].size()));
        tuples[a].push_back(t);
        return;
      }
      for (int e = 0; e < d.objects[x].sizes[a]; ++e) {
        t[x] = e;
        bool ok = true;
        for (MorphismId s : arrows) {
          const int from = d.shape.dom(s);
          const int to = d.shape.cod(s);
          if (from > x || to > x) continue;
          if (d.arrows[s].components[a][t[from]] != t[to]) {
            ok = false;
            break;
          }
        }
        if (ok) rec(x + 1);
      }
      t[x] = -1;
    };
    rec(0);
  }
  PresheafCone out;
  for (int a = 0; a < objects; ++a) out.apex.sizes.push_back(static_cast<int>(tuples[a].size()));
  out.apex.action.resize(k.morphism_count());
  for (int h = 0; h < k.morphism_count(); ++h) {
    const ObjectId x = k.dom(h);
    const ObjectId y = k.cod(h);
    for (const auto& t : tuples[y]) {
      std::vector<int> image(n);
      for (int s = 0; s < n; ++s) image[s] = d.objects[s].action[h][t[s]];
      out.apex.action[h].push_back(lookup[x].at(image));
    }
  }
  out.legs.resize(n);
  for (int s = 0; s < n; ++s)
    for (int a = 0; a < objects; ++a) {
      out.legs[s].components.emplace_back();
      for (const auto& t : tuples[a]) out.legs[s].components.back().push_back(t[s]);
    }
  return out;
}

PresheafCone presheaf_colimit(const FiniteCategory& k, const PresheafDiagram& d) {
  const int n = d.shape.object_count();
  const int objects = k.object_count();
  std::vector<MorphismId> arrows = non_identities(d.shape);
  std::vector<std::vector<int>> offset(objects, std::vector<int>(n + 1, 0));
  std::vector<std::vector<int>> cls(objects);
  std::vector<std::vector<std::pair<int, int>>> rep(objects);
  for (int a = 0; a < objects; ++a) {
    for (int s = 0; s < n; ++s) offset[a][s + 1] = offset[a][s] + d.objects[s].sizes[a];
    UnionFind uf(offset[a][n]);
    for (MorphismId s : arrows) {
      const int from = d.shape.dom(s);
      const int to = d.shape.cod(s);
      for (int e = 0; e < d.objects[from].sizes[a]; ++e)
        uf.join(offset[a][from] + e, offset[a][to] + d.arrows[s].components[a][e]);
    }
    std::map<int, int> number;
    for (int s = 0; s < n; ++s)
      for (int e = 0; e < d.objects[s].sizes[a]; ++e) {
        const int root = uf.find(offset[a][s] + e);
        auto [it, fresh] = number.emplace(root, static_cast<int>(number.size()));
        if (fresh) rep[a].emplace_back(s, e);
        cls[a].push_back(it->second);
      }
  }
  PresheafCone out;
  for (int a = 0; a < objects; ++a) out.apex.sizes.push_back(static_cast<int>(rep[a].size()));
  out.apex.action.resize(k.morphism_count());
  for (int h = 0; h < k.morphism_count(); ++h) {
    const ObjectId x = k.dom(h);
    const ObjectId y = k.cod(h);
    for (auto [s, e] : rep[y]) out.apex.action[h].push_back(cls[x][offset[x][s] + d.objects[s].action[h][e]]);
  }
  out.legs.resize(n);
  for (int s = 0; s < n; ++s)
    for (int a = 0; a < objects; ++a) {
      out.legs[s].components.emplace_back();
      for (int e = 0; e < d.objects[s].sizes[a]; ++e)
        out.legs[s].components.back().push_back(cls[a][offset[a][s] + e]);
    }
  return out;
}

namespace {

// Every family (c_x: H → D_x) compatible with the diagram arrows, in the
// direction given by `toward` (limit cones) or away from it (cocones).
std::size_t for_each_compatible(const FiniteCategory& k, const PresheafDiagram& d, const Presheaf& h,
                                bool toward, const std::function<bool(const std::vector<NatTrans>&)>& visit) {
  const int n = d.shape.object_count();
  std::vector<std::vector<NatTrans>> options(n);
  for (int x = 0; x < n; ++x)
    options[x] = toward ? nat_transformations(k, h, d.objects[x]) : nat_transformations(k, d.objects[x], h);
  const auto arrows = non_identities(d.shape);
  std::vector<NatTrans> chosen(n);
  std::size_t count = 0;
  bool stop = false;
  std::function<void(int)> rec = [&](int x) {
    if (stop) return;
    if (x == n) {
      ++count;
      if (!visit(chosen)) stop = true;
      return;
    }
    for (const auto& c : options[x]) {
      chosen[x] = c;
      bool ok = true;
      for (MorphismId s : arrows) {
        const int from = d.shape.dom(s);
        const int to = d.shape.cod(s);
        if (from > x || to > x) continue;
        ok = toward ? compose_nat(d.arrows[s], chosen[from]) == chosen[to]
                    : compose_nat(chosen[to], d.arrows[s]) == chosen[from];
        if (!ok) break;
      }
      if (ok) rec(x + 1);
      if (stop) return;
    }
  };
  rec(0);
  return count;
}

}  // namespace

bool limit_ump_holds(const FiniteCategory& k, const PresheafDiagram& d, const PresheafCone& cone,
                     std::span<const Presheaf> tests) {
  for (const auto& h : tests) {
    std::set<std::vector<NatTrans>> through;
    std::size_t maps = 0;
    for (const auto& m : nat_transformations(k, h, cone.apex)) {
      std::vector<NatTrans> legs;
      for (const auto& l : cone.legs) legs.push_back(compose_nat(l, m));
      through.insert(std::move(legs));
      ++maps;
    }
    if (through.size() != maps) return false;
    bool all = true;
    const std::size_t cones = for_each_compatible(k, d, h, true, [&](const std::vector<NatTrans>& c) {
      all = through.count(c) == 1;
      return all;
    });
    if (!all || cones != maps) return false;
  }
  return true;
}

bool colimit_ump_holds(const FiniteCategory& k, const PresheafDiagram& d, const PresheafCone& cocone,
                       std::span<const Presheaf> tests) {
  for (const auto& h : tests) {
    std::set<std::vector<NatTrans>> through;
    std::size_t maps = 0;
    for (const auto& m : nat_transformations(k, cocone.apex, h)) {
      std::vector<NatTrans> legs;
      for (const auto& l : cocone.legs) legs.push_back(compose_nat(m, l));
      through.insert(std::move(legs));
      ++maps;
    }
    if (through.size() != maps) return false;
    bool all = true;
    const std::size_t cocones = for_each_compatible(k, d, h, false, [&](const std::vector<NatTrans>& c) {
      all = through.count(c) == 1;
      return all;
    });
    if (!all || cocones != maps) return false;
  }
  return true;
}

PresheafCone binary_product(const FiniteCategory& k, const Presheaf& f, const Presheaf& g) {
  PresheafCone out;
  const int objects = k.object_count();
  for (int a = 0; a < objects; ++a) out.apex.sizes.push_back(f.sizes[a] * g.sizes[a]);
  out.apex.action.resize(k.morphism_count());
  for (int h = 0; h < k.morphism_count(); ++h) {
    const ObjectId x = k.dom(h);
    const ObjectId y = k.cod(h);
    for (int u = 0; u < f.sizes[y]; ++u)
      for (int v = 0; v < g.sizes[y]; ++v)
        out.apex.action[h].push_back(f.action[h][u] * g.sizes[x] + g.action[h][v]);
  }
  out.legs.resize(2);
  for (int a = 0; a < objects; ++a) {
    out.legs[0].components.emplace_back();
    out.legs[1].components.emplace_back();
    for (int u = 0; u < f.sizes[a]; ++u)
      for (int v = 0; v < g.sizes[a]; ++v) {
        out.legs[0].components.back().push_back(u);
        out.legs[1].components.back().push_back(v);
      }
  }
  return out;
}

PresheafCone binary_coproduct(const FiniteCategory& k, const Presheaf& f, const Presheaf& g) {
  PresheafCone out;
  const int objects = k.object_count();
  for (int a = 0; a < objects; ++a) out.apex.sizes.push_back(f.sizes[a] + g.sizes[a]);
  out.apex.action.resize(k.morphism_count());
  for (int h = 0; h < k.morphism_count(); ++h) {
    const ObjectId x = k.dom(h);
    const ObjectId y = k.cod(h);
    for (int u = 0; u < f.sizes[y]; ++u) out.apex.action[h].push_back(f.action[h][u]);
    for (int v = 0; v < g.sizes[y]; ++v) out.apex.action[h].push_back(f.sizes[x] + g.action[h][v]);
  }
  out.legs.resize(2);
  for (int a = 0; a < objects; ++a) {
    out.legs[0].components.emplace_back(f.sizes[a]);
    std::iota(out.legs[0].components.back().begin(), out.legs[0].components.back().end(), 0);
    out.legs[1].components.emplace_back(g.sizes[a]);
    std::iota(out.legs[1].components.back().begin(), out.legs[1].components.back().end(), f.sizes[a]);
  }
  return out;
}

NatTrans pair_nat(const Presheaf& f, const Presheaf& g, const NatTrans& a, const NatTrans& b,
                  const Presheaf& h) {
  (void)f;
  NatTrans out;
  for (std::size_t x = 0; x < h.sizes.size(); ++x) {
    out.components.emplace_back();
    for (int e = 0; e < h.sizes[x]; ++e)
      out.components.back().push_back(a.components[x][e] * g.sizes[x] + b.components[x][e]);
  }
  return out;
}

PresheafExponential presheaf_exponential(const FiniteCategory& k, const Presheaf& f, const Presheaf& g) {
  const int objects = k.object_count();
  PresheafExponential out;
  std::vector<std::map<std::vector<int>, int>> lookup(objects);
  for (int a = 0; a < objects; ++a) {
    const Presheaf ya_f = binary_product(k, yoneda(k, a), f).apex;
    out.elements.push_back(nat_transformations(k, ya_f, g));
    for (std::size_t i = 0; i < out.elements[a].size(); ++i)
      lookup[a].emplace(flatten(out.elements[a][i]), static_cast<int>(i));
    out.object.sizes.push_back(static_cast<int>(out.elements[a].size()));
  }
  out.object.action.resize(k.morphism_count());
  for (int h = 0; h < k.morphism_count(); ++h) {
    const ObjectId a = k.dom(h);
    const ObjectId b = k.cod(h);
    std::vector<int> pulled;
    for (const auto& theta : out.elements[b]) {
      // θ∘(y(h) × F) at X sends (u, e) to θ_X(h∘u, e).
      pulled.clear();
      for (int x = 0; x < objects; ++x)
        for (MorphismId u : k.hom(x, a))
          for (int e = 0; e < f.sizes[x]; ++e)
            pulled.push_back(theta.components[x][hom_position(k, k.compose(h, u)) * f.sizes[x] + e]);
      out.object.action[h].push_back(lookup[a].at(pulled));
    }
  }
  out.with_base = binary_product(k, out.object, f);
  for (int x = 0; x < objects; ++x) {
    out.evaluation.components.emplace_back();
    const int id_pos = hom_position(k, k.identity(x));
    for (int t = 0; t < out.object.sizes[x]; ++t)
      for (int e = 0; e < f.sizes[x]; ++e)
        out.evaluation.components.back().push_back(
            out.elements[x][t].components[x][id_pos * f.sizes[x] + e]);
  }
  return out;
}

bool exponential_ump_holds(const FiniteCategory& k, const Presheaf& f, const Presheaf& g,
                           const PresheafExponential& e, const Presheaf& h) {
  const auto hf = binary_product(k, h, f);
  std::vector<std::vector<int>> image;
  NatSearch(k, h, e.object, false).run([&](const NatTrans& m) {
    const NatTrans m_times_f = pair_nat(e.object, f, compose_nat(m, hf.legs[0]), hf.legs[1], hf.apex);
    image.push_back(flatten(compose_nat(e.evaluation, m_times_f)));
    return true;
  });
  const std::size_t maps = image.size();
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  return image.size() == maps && maps == count_nat_transformations(k, hf.apex, g);
}

std::vector<Subfunctor> subfunctors(const FiniteCategory& k, const Presheaf& f) {
  const int objects = k.object_count();
  std::vector<int> offset(objects + 1, 0);
  for (int a = 0; a < objects; ++a) offset[a + 1] = offset[a] + f.sizes[a];
  std::vector<int> obj, elem;
  for (int a = 0; a < objects; ++a)
    for (int e = 0; e < f.sizes[a]; ++e) {
      obj.push_back(a);
      elem.push_back(e);
    }
  // in(u) ⇒ in(v)
  std::vector<std::vector<std::pair<int, int>>> checks(obj.size());
  for (MorphismId h : non_identities(k))
    for (int e = 0; e < f.sizes[k.cod(h)]; ++e) {
      const int u = offset[k.cod(h)] + e;
      const int v = offset[k.dom(h)] + f.action[h][e];
      checks[std::max(u, v)].emplace_back(u, v);
    }
  std::vector<Subfunctor> out;
  Subfunctor s;
  for (int a = 0; a < objects; ++a) s.members.emplace_back(f.sizes[a], 0);
  std::vector<char> flag(obj.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == obj.size()) {
      out.push_back(s);
      return;
    }
    for (char in : {0, 1}) {
      flag[i] = in;
      s.members[obj[i]][elem[i]] = in;
      bool ok = true;
      for (auto [u, v] : checks[i])
        if (flag[u] && !flag[v]) {
          ok = false;
          break;
        }
      if (ok) rec(i + 1);
    }
    flag[i] = 0;
    s.members[obj[i]][elem[i]] = 0;
  };
  rec(0);
  return out;
}

Restriction restrict_to(const FiniteCategory& k, const Presheaf& f, const Subfunctor& s) {
  const int objects = k.object_count();
  Restriction out;
  std::vector<std::vector<int>> renumber(objects);
  for (int a = 0; a < objects; ++a) {
    renumber[a].assign(f.sizes[a], -1);
    out.inclusion.components.emplace_back();
    for (int e = 0; e < f.sizes[a]; ++e)
      if (s.members[a][e]) {
        renumber[a][e] = static_cast<int>(out.inclusion.components.back().size());
        out.inclusion.components.back().push_back(e);
      }
    out.object.sizes.push_back(static_cast<int>(out.inclusion.components.back().size()));
  }
  out.object.action.resize(k.morphism_count());
  for (int h = 0; h < k.morphism_count(); ++h)
    for (int e : out.inclusion.components[k.cod(h)])
      out.object.action[h].push_back(renumber[k.dom(h)][f.action[h][e]]);
  return out;
}

Subfunctor image(const NatTrans& a, const Presheaf& cod) {
  Subfunctor out;
  for (std::size_t x = 0; x < a.components.size(); ++x) {
    out.members.emplace_back(cod.sizes[x], 0);
    for (int v : a.components[x]) out.members.back()[v] = 1;
  }
  return out;
}

Omega omega(const FiniteCategory& k) {
  const int objects = k.object_count();
  Omega out;
  std::vector<std::map<Subfunctor, int>> lookup(objects);
  for (int a = 0; a < objects; ++a) {
    out.sieves.push_back(subfunctors(k, yoneda(k, a)));
    for (std::size_t i = 0; i < out.sieves[a].size(); ++i) lookup[a].emplace(out.sieves[a][i], static_cast<int>(i));
    out.object.sizes.push_back(static_cast<int>(out.sieves[a].size()));
  }
  out.object.action.resize(k.morphism_count());
  for (int h = 0; h < k.morphism_count(); ++h) {
    const ObjectId a = k.dom(h);
    const ObjectId b = k.cod(h);
    for (const auto& sieve : out.sieves[b]) {
      // preimage under y(h)
      Subfunctor pre;
      for (int x = 0; x < objects; ++x) {
        pre.members.emplace_back();
        for (MorphismId u : k.hom(x, a)) pre.members.back().push_back(sieve.members[x][hom_position(k, k.compose(h, u))]);
      }
      out.object.action[h].push_back(lookup[a].at(pre));
    }
  }
  for (int a = 0; a < objects; ++a) {
    Subfunctor full;
    for (int x = 0; x < objects; ++x) full.members.emplace_back(k.hom(x, a).size(), 1);
    out.truth.components.push_back({lookup[a].at(full)});
  }
  return out;
}

NatTrans classify_subfunctor(const FiniteCategory& k, const Omega& om, const Presheaf& g, const Subfunctor& s) {
  const int objects = k.object_count();
  NatTrans out;
  for (int a = 0; a < objects; ++a) {
    out.components.emplace_back();
    for (int u = 0; u < g.sizes[a]; ++u) {
      Subfunctor sieve;
      for (int x = 0; x < objects; ++x) {
        sieve.members.emplace_back();
        for (MorphismId f : k.hom(x, a)) sieve.members.back().push_back(s.members[x][g.action[f][u]]);
      }
      const auto& options = om.sieves[a];
      out.components.back().push_back(
          static_cast<int>(std::find(options.begin(), options.end(), sieve) - options.begin()));
    }
  }
  return out;
}

NatTrans classify_subobject(const FiniteCategory& k, const Omega& om, const Presheaf& g, const NatTrans& m,
                            const Presheaf& f) {
  if (!is_natural(k, f, g, m)) throw Error(ErrorCode::InvalidArgument, "not a natural transformation");
  if (!is_pointwise_injective(m, g)) throw Error(ErrorCode::NotMono, "not pointwise injective");
  return classify_subfunctor(k, om, g, image(m, g));
}

Subfunctor pull_back_truth(const FiniteCategory& k, const Omega& om, const Presheaf& g, const NatTrans& chi) {
  const auto pb = presheaf_limit(k, cospan_presheaf_diagram(g, terminal_presheaf(k), om.object, chi, om.truth));
  return image(pb.legs[0], g);
}

ClassificationReport classification_bijection(const FiniteCategory& k, const Omega& om, const Presheaf& g) {
  ClassificationReport out;
  const auto subs = subfunctors(k, g);
  const auto maps = nat_transformations(k, g, om.object);
  out.subobjects = subs.size();
  out.maps_to_omega = maps.size();
  std::map<Subfunctor, std::vector<std::size_t>> pulled;
  for (std::size_t i = 0; i < maps.size(); ++i) pulled[pull_back_truth(k, om, g, maps[i])].push_back(i);
  out.bijective = subs.size() == maps.size();
  for (const auto& s : subs) {
    const NatTrans chi = classify_subfunctor(k, om, g, s);
    auto it = pulled.find(s);
    const bool ok = is_natural(k, g, om.object, chi) && it != pulled.end() && it->second.size() == 1 &&
                    maps[it->second.front()] == chi;
    if (!ok) {
      out.bijective = false;
      out.witness = s;
      break;
    }
  }
  return out;
}

RegularityVerdict regularity_suite(const FiniteCategory& k, const Presheaf& f, const Presheaf& g, const NatTrans& a) {
  RegularityVerdict out;
  if (is_pointwise_injective(a, g)) {
    const auto cokernel = presheaf_colimit(k, span_presheaf_diagram(f, g, g, a, a));
    const auto eq = presheaf_limit(k, parallel_presheaf_diagram(g, cokernel.apex, cokernel.legs[0], cokernel.legs[1]));
    out.mono_regular = image(eq.legs[0], g) == image(a, g) && is_pointwise_injective(eq.legs[0], g);
  }
  if (is_pointwise_surjective(a, g)) {
    const auto kernel_pair = presheaf_limit(k, cospan_presheaf_diagram(f, f, g, a, a));
    const auto coeq = presheaf_colimit(
        k, parallel_presheaf_diagram(kernel_pair.apex, f, kernel_pair.legs[0], kernel_pair.legs[1]));
    const NatTrans& q = coeq.legs[1];
    bool ok = true;
    NatTrans induced;
    for (std::size_t x = 0; x < g.sizes.size() && ok; ++x) {
      induced.components.emplace_back(coeq.apex.sizes[x], -1);
      for (int e = 0; e < f.sizes[x] && ok; ++e) {
        int& slot = induced.components[x][q.components[x][e]];
        if (slot >= 0 && slot != a.components[x][e]) ok = false;
        slot = a.components[x][e];
      }
    }
    out.epi_regular = ok && is_pointwise_bijective(induced, g);
  }
  return out;
}

namespace {

void require_equivalence(const FiniteCategory& k, const Presheaf& f, const Subfunctor& r) {
  const auto ff = binary_product(k, f, f).apex;
  if (!is_subfunctor(k, ff, r)) throw Error(ErrorCode::InvalidArgument, "relation is not a subfunctor of F x F");
  for (int a = 0; a < k.object_count(); ++a) {
    const int n = f.sizes[a];
    auto in = [&](int x, int y) { return r.members[a][x * n + y] != 0; };
    const std::string at = " at " + k.object_name(a);
    for (int x = 0; x < n; ++x)
      if (!in(x, x))
        throw Error(ErrorCode::NotEquivalenceRelation, "not reflexive" + at + " on " + std::to_string(x));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (in(x, y) && !in(y, x))
          throw Error(ErrorCode::NotEquivalenceRelation,
                      "not symmetric" + at + " on " + std::to_string(x) + "," + std::to_string(y));
        for (int z = 0; z < n; ++z)
          if (in(x, y) && in(y, z) && !in(x, z))
            throw Error(ErrorCode::NotEquivalenceRelation, "not transitive" + at + " on " + std::to_string(x) +
                                                               "," + std::to_string(y) + "," + std::to_string(z));
      }
  }
}

}  // namespace

bool effective_equivalence_check(const FiniteCategory& k, const Presheaf& f, const Subfunctor& r) {
  require_equivalence(k, f, r);
  const auto ff = binary_product(k, f, f);
  const auto rel = restrict_to(k, ff.apex, r);
  const NatTrans r1 = compose_nat(ff.legs[0], rel.inclusion);
  const NatTrans r2 = compose_nat(ff.legs[1], rel.inclusion);
  const auto quotient = presheaf_colimit(k, parallel_presheaf_diagram(rel.object, f, r1, r2));
  const NatTrans& q = quotient.legs[1];
  const auto kp = presheaf_limit(k, cospan_presheaf_diagram(f, f, quotient.apex, q, q));
  const NatTrans into = pair_nat(f, f, kp.legs[0], kp.legs[1], kp.apex);
  return image(into, ff.apex) == r;
}

std::vector<Congruence> congruences(const FiniteCategory& k, const Presheaf& f) {
  const int objects = k.object_count();
  std::vector<Congruence> out;
  Congruence c(objects);
  const auto arrows = non_identities(k);
  // Restricted growth strings per object, objects in id order.
  std::function<void(int, int, int)> rec = [&](int a, int e, int used) {
    if (a == objects) {
      out.push_back(c);
      return;
    }
    if (e == f.sizes[a]) {
      for (MorphismId h : arrows) {
        const ObjectId x = k.dom(h);
        const ObjectId y = k.cod(h);
        if (std::max(x, y) != a) continue;
        for (int u = 0; u < f.sizes[y]; ++u)
          for (int v = u + 1; v < f.sizes[y]; ++v)
            if (c[y][u] == c[y][v] && c[x][f.action[h][u]] != c[x][f.action[h][v]]) return;
      }
      rec(a + 1, 0, 0);
      return;
    }
    c[a].resize(f.sizes[a]);
    for (int label = 0; label <= used && label < f.sizes[a]; ++label) {
      c[a][e] = label;
      rec(a, e + 1, std::max(used, label + 1));
    }
  };
  rec(0, 0, 0);
  return out;
}

Congruence kernel(const NatTrans& a, const Presheaf& f) {
  Congruence out;
  for (std::size_t x = 0; x < f.sizes.size(); ++x) out.push_back(canonical_labels(a.components[x]));
  return out;
}

std::vector<Subfunctor> equivalence_relations(const FiniteCategory& k, const Presheaf& f) {
  std::vector<Subfunctor> out;
  for (const auto& c : congruences(k, f)) {
    Subfunctor r;
    for (int a = 0; a < k.object_count(); ++a) {
      const int n = f.sizes[a];
      r.members.emplace_back(n * n, 0);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) r.members.back()[x * n + y] = c[a][x] == c[a][y];
    }
    out.push_back(std::move(r));
  }
  return out;
}

Quotient quotient(const FiniteCategory& k, const Presheaf& f, const Congruence& c) {
  Quotient q;
  const int objects = k.object_count();
  if (static_cast<int>(c.size()) != objects)
    throw Error(ErrorCode::InvalidArgument, "congruence does not match the presheaf");
  for (int a = 0; a < objects; ++a) {
    if (static_cast<int>(c[a].size()) != f.sizes[a])
      throw Error(ErrorCode::InvalidArgument, "congruence does not match the presheaf");
    int classes = 0;
    for (int label : c[a]) classes = std::max(classes, label + 1);
    q.object.sizes.push_back(classes);
    q.projection.components.push_back(c[a]);
  }
  for (MorphismId h = 0; h < k.morphism_count(); ++h) {
    const ObjectId x = k.dom(h);
    const ObjectId y = k.cod(h);
    std::vector<int> act(q.object.sizes[y], -1);
    for (int u = 0; u < f.sizes[y]; ++u) {
      const int image = c[x][f.action[h][u]];
      int& slot = act[c[y][u]];
      if (slot >= 0 && slot != image)
        throw Error(ErrorCode::InvalidArgument, "partition is not closed under " + k.morphism_name(h));
      slot = image;
    }
    q.object.action.push_back(std::move(act));
  }
  return q;
}

ExtensivityReport coproduct_extensivity(const FiniteCategory& k, const Presheaf& f, const Presheaf& g,
                                        std::span<const Presheaf> tests) {
  ExtensivityReport out;
  const auto sum = binary_coproduct(k, f, g);
  const auto meet = presheaf_limit(k, cospan_presheaf_diagram(f, g, sum.apex, sum.legs[0], sum.legs[1]));
  out.disjoint = meet.apex.total() == 0 && is_pointwise_injective(sum.legs[0], sum.apex) &&
                 is_pointwise_injective(sum.legs[1], sum.apex);
  out.universal = true;
  for (const auto& h : tests) {
    for (const auto& a : nat_transformations(k, h, sum.apex)) {
      const auto p1 = presheaf_limit(k, cospan_presheaf_diagram(f, h, sum.apex, sum.legs[0], a));
      const auto p2 = presheaf_limit(k, cospan_presheaf_diagram(g, h, sum.apex, sum.legs[1], a));
      NatTrans copair;
      for (int x = 0; x < k.object_count(); ++x) {
        copair.components.push_back(p1.legs[1].components[x]);
        copair.components.back().insert(copair.components.back().end(), p2.legs[1].components[x].begin(),
                                        p2.legs[1].components[x].end());
      }
      if (!is_pointwise_bijective(copair, h)) {
        out.universal = false;
        return out;
      }
    }
  }
  return out;
}

ElementsCategory elements_category(const FiniteCategory& k, const Presheaf& f) {
  ElementsCategory out;
  RawCategory raw;
  for (int a = 0; a < k.object_count(); ++a)
    for (int e = 0; e < f.sizes[a]; ++e) {
      out.object.push_back(a);
      out.element.push_back(e);
      raw.object_names.push_back(k.object_name(a) + ":" + std::to_string(e));
    }
  const int n = static_cast<int>(out.object.size());
  raw.object_count = n;
  raw.identity.assign(n, -1);
  std::map<std::tuple<int, int, MorphismId>, int> id_of;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (MorphismId h : k.hom(out.object[i], out.object[j])) {
        if (f.action[h][out.element[j]] != out.element[i]) continue;
        const int id = static_cast<int>(raw.morphisms.size());
        id_of[{i, j, h}] = id;
        raw.morphisms.push_back({i, j});
        raw.morphism_names.push_back(k.morphism_name(h) + "@" + raw.object_names[i]);
        out.projection.on_morphisms.push_back(h);
        if (i == j && h == k.identity(out.object[i])) raw.identity[i] = id;
      }
  for (const auto& [g_key, g_id] : id_of)
    for (const auto& [f_key, f_id] : id_of) {
      const auto [gi, gj, gh] = g_key;
      const auto [fi, fj, fh] = f_key;
      if (fj != gi) continue;
      raw.compose.push_back({g_id, f_id, id_of.at({fi, gj, k.compose(gh, fh)})});
    }
  out.category = FiniteCategory::validate(raw);
  out.projection.on_objects = out.object;
  return out;
}

std::vector<int> weakly_initial_set(const ElementsCategory& el) {
  const auto& c = el.category;
  const int n = c.object_count();
  std::vector<char> keep(n, 1);
  for (int cand = 0; cand < n; ++cand) {
    bool droppable = true;
    for (int i = 0; i < n && droppable; ++i) {
      if (c.hom(i, cand).empty()) continue;
      bool other = false;
      for (int j = 0; j < n && !other; ++j) other = j != cand && keep[j] && !c.hom(i, j).empty();
      droppable = other;
    }
    if (droppable) keep[cand] = 0;
  }
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (keep[i]) out.push_back(i);
  return out;
}

bool covers_elements(const ElementsCategory& el, std::span<const int> members) {
  const auto& c = el.category;
  for (int i = 0; i < c.object_count(); ++i)
    if (std::none_of(members.begin(), members.end(), [&](int m) { return !c.hom(i, m).empty(); })) return false;
  return true;
}

bool elements_reconstruction_holds(const FiniteCategory& k, const Presheaf& f) {
  const auto el = elements_category(k, f);
  PresheafDiagram d{el.category, {}, {}};
  for (int i = 0; i < el.category.object_count(); ++i) d.objects.push_back(yoneda(k, el.object[i]));
  for (int m = 0; m < el.category.morphism_count(); ++m) d.arrows.push_back(yoneda_map(k, el.projection.on_morphisms[m]));
  const auto colim = presheaf_colimit(k, d);
  for (int z = 0; z < k.object_count(); ++z) {
    std::vector<int> value(colim.apex.sizes[z], -1);
    for (int i = 0; i < el.category.object_count(); ++i) {
      const auto h = k.hom(z, el.object[i]);
      for (std::size_t p = 0; p < h.size(); ++p) {
        const int cls = colim.legs[i].components[z][p];
        const int v = f.action[h[p]][el.element[i]];
        if (value[cls] >= 0 && value[cls] != v) return false;
        value[cls] = v;
      }
    }
    std::vector<int> sorted = value;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected(f.sizes[z]);
    std::iota(expected.begin(), expected.end(), 0);
    if (sorted != expected) return false;
  }
  return true;
}

Congruence pushout_quotient(const FiniteCategory& k, const Presheaf& f, const Subfunctor& s) {
  const auto sub = restrict_to(k, f, s);
  const auto po = presheaf_colimit(k, span_presheaf_diagram(sub.object, f, f, sub.inclusion, sub.inclusion));
  NatTrans q;
  for (int a = 0; a < k.object_count(); ++a) {
    q.components.push_back(po.legs[0].components[a]);
    q.components.back().insert(q.components.back().end(), po.legs[1].components[a].begin(),
                               po.legs[1].components[a].end());
  }
  return kernel(q, binary_coproduct(k, f, f).apex);
}

Census subobject_quotient_census(const FiniteCategory& k, const Presheaf& f) {
  Census out;
  const auto subs = subfunctors(k, f);
  out.subobjects = subs.size();
  out.quotients = congruences(k, f).size();
  out.pushouts_distinct = true;
  std::map<Congruence, std::size_t> seen;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    auto [it, fresh] = seen.emplace(pushout_quotient(k, f, subs[i]), i);
    if (!fresh) {
      out.pushouts_distinct = false;
      out.collision = std::pair(it->second, i);
      break;
    }
  }
  return out;
}

}  // namespace freecat
