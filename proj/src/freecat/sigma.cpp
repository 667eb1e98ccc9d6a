#include "freecat/sigma.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace freecat {

namespace {

// Odometer over ∏ [0, sizes[j]), last position fastest.
bool next_digits(std::vector<int>& digits, std::span<const std::size_t> sizes) {
  for (std::size_t j = digits.size(); j-- > 0;) {
    if (static_cast<std::size_t>(++digits[j]) < sizes[j]) return true;
    digits[j] = 0;
  }
  return false;
}

}  // namespace

void require_finitely_complete(const FiniteCategory& k) {
  if (!find_terminal(k)) throw Error(ErrorCode::NotFinitelyComplete, "no terminal object");
  if (auto bad = first_cospan_without_pullback(k)) {
    throw Error(ErrorCode::NotFinitelyComplete, "no pullback of " + k.morphism_name(bad->first) +
                                                    " and " + k.morphism_name(bad->second));
  }
}

namespace {

std::vector<MorphismId> characteristic_candidates(const FiniteCategory& k, MorphismId epsilon,
                                                  MorphismId mono) {
  const ObjectId t = k.dom(epsilon);
  const MorphismId bang = k.hom(k.dom(mono), t).front();
  std::vector<MorphismId> out;
  for (MorphismId chi : k.hom(k.cod(mono), k.cod(epsilon)))
    if (is_pullback_square(k, chi, epsilon, mono, bang)) out.push_back(chi);
  return out;
}

void require_terminal_source(const FiniteCategory& k, MorphismId epsilon) {
  k.check_morphism(epsilon);
  if (!is_terminal(k, k.dom(epsilon))) {
    throw Error(ErrorCode::NotAClassifier,
                "domain of " + k.morphism_name(epsilon) + " is not terminal");
  }
}

}  // namespace

std::optional<MorphismId> classifier_counterexample(const FiniteCategory& k, MorphismId epsilon) {
  require_finitely_complete(k);
  require_terminal_source(k, epsilon);
  for (int m = 0; m < k.morphism_count(); ++m) {
    if (!classify_morphism(k, m).mono) continue;
    if (characteristic_candidates(k, epsilon, m).size() != 1) return m;
  }
  return std::nullopt;
}

std::optional<KClassifier> find_classifier(const FiniteCategory& k) {
  require_finitely_complete(k);
  const ObjectId t = *find_terminal(k);
  for (int omega = 0; omega < k.object_count(); ++omega)
    for (MorphismId eps : k.hom(t, omega))
      if (!classifier_counterexample(k, eps)) return KClassifier{t, omega, eps};
  return std::nullopt;
}

MorphismId k_characteristic(const FiniteCategory& k, MorphismId epsilon, MorphismId mono) {
  require_terminal_source(k, epsilon);
  if (!classify_morphism(k, mono).mono)
    throw Error(ErrorCode::NotMono, k.morphism_name(mono) + " is not a mono");
  auto found = characteristic_candidates(k, epsilon, mono);
  if (found.size() != 1) {
    throw Error(ErrorCode::NotAClassifier,
                k.morphism_name(mono) + " has " + std::to_string(found.size()) + " characteristic maps");
  }
  return found.front();
}

std::vector<SigmaObject> families_up_to(const FiniteCategory& k, std::size_t n) {
  std::vector<SigmaObject> out;
  const auto objects = static_cast<std::size_t>(k.object_count());
  for (std::size_t len = 0; len <= n; ++len) {
    if (len > 0 && objects == 0) break;
    std::vector<int> digits(len, 0);
    std::vector<std::size_t> sizes(len, objects);
    do {
      out.push_back(SigmaObject{std::vector<ObjectId>(digits.begin(), digits.end())});
    } while (next_digits(digits, sizes));
  }
  return out;
}

SigmaCompletion::SigmaCompletion(const FiniteCategory& k) : k_(&k), products_(k) {
  const int m = k.morphism_count();
  for (int f = 0; f < m; ++f) classes_.push_back(classify_morphism(k, f));
  cospans_.resize(static_cast<std::size_t>(m) * m);
  cospan_witness_.resize(static_cast<std::size_t>(m) * m);
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) {
      if (k.cod(f) != k.cod(g)) continue;
      const std::size_t slot = static_cast<std::size_t>(f) * m + g;
      auto outcome = multi_limit(k, cospan_diagram(k, f, g));
      if (auto* limit = std::get_if<MultiLimit>(&outcome))
        cospans_[slot] = std::move(limit->cones);
      else
        cospan_witness_[slot] = std::get<NoMultiLimit>(outcome).witness;
    }
}

void SigmaCompletion::check(const SigmaObject& a) const {
  for (ObjectId x : a.family)
    if (x < 0 || x >= k_->object_count())
      throw Error(ErrorCode::InvalidArgument, "family member " + std::to_string(x) + " is not an object");
}

void SigmaCompletion::check(const SigmaMorphism& f) const {
  check(f.dom);
  check(f.cod);
  if (f.index.size() != f.dom.size() || f.components.size() != f.dom.size())
    throw Error(ErrorCode::InvalidArgument, "index function and components must cover the domain");
  for (std::size_t i = 0; i < f.dom.size(); ++i) {
    const int j = f.index[i];
    if (j < 0 || static_cast<std::size_t>(j) >= f.cod.size())
      throw Error(ErrorCode::InvalidArgument, "index " + std::to_string(j) + " out of range");
    const MorphismId c = f.components[i];
    if (c < 0 || c >= k_->morphism_count() || k_->dom(c) != f.dom.family[i] ||
        k_->cod(c) != f.cod.family[j])
      throw Error(ErrorCode::InvalidArgument, "component " + std::to_string(i) + " has the wrong type");
  }
}

SigmaObject SigmaCompletion::embed(ObjectId a) const { return SigmaObject{{k_->check_object(a)}}; }

SigmaMorphism SigmaCompletion::embed_morphism(MorphismId f) const {
  return SigmaMorphism{embed(k_->dom(f)), embed(k_->cod(f)), {0}, {f}};
}

SigmaMorphism SigmaCompletion::identity(const SigmaObject& a) const {
  SigmaMorphism out{a, a, {}, {}};
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.index.push_back(static_cast<int>(i));
    out.components.push_back(k_->identity(a.family[i]));
  }
  return out;
}

SigmaMorphism SigmaCompletion::compose(const SigmaMorphism& g, const SigmaMorphism& f) const {
  if (f.cod != g.dom) throw Error(ErrorCode::NotComposable, "codomain of f is not the domain of g");
  SigmaMorphism out{f.dom, g.cod, {}, {}};
  out.index.reserve(f.dom.size());
  out.components.reserve(f.dom.size());
  for (std::size_t i = 0; i < f.dom.size(); ++i) {
    const int j = f.index[i];
    out.index.push_back(g.index[j]);
    out.components.push_back(k_->compose(g.components[j], f.components[i]));
  }
  return out;
}

SigmaCoproduct SigmaCompletion::coproduct(std::span<const SigmaObject> parts) const {
  SigmaCoproduct out;
  for (const auto& p : parts) out.object.family.insert(out.object.family.end(), p.family.begin(), p.family.end());
  int offset = 0;
  for (const auto& p : parts) {
    SigmaMorphism inj{p, out.object, {}, {}};
    for (std::size_t i = 0; i < p.size(); ++i) {
      inj.index.push_back(offset + static_cast<int>(i));
      inj.components.push_back(k_->identity(p.family[i]));
    }
    offset += static_cast<int>(p.size());
    out.injections.push_back(std::move(inj));
  }
  return out;
}

SigmaMorphism SigmaCompletion::copair(const SigmaCoproduct& sum, std::span<const SigmaMorphism> maps) const {
  if (maps.size() != sum.injections.size())
    throw Error(ErrorCode::InvalidArgument, "one map per summand is needed");
  if (maps.empty()) throw Error(ErrorCode::InvalidArgument, "copairing needs a codomain");
  SigmaMorphism out{sum.object, maps.front().cod, {}, {}};
  for (std::size_t t = 0; t < maps.size(); ++t) {
    if (maps[t].dom != sum.injections[t].dom || maps[t].cod != out.cod)
      throw Error(ErrorCode::InvalidArgument, "copairing maps do not match the summands");
    out.index.insert(out.index.end(), maps[t].index.begin(), maps[t].index.end());
    out.components.insert(out.components.end(), maps[t].components.begin(), maps[t].components.end());
  }
  return out;
}

SigmaPullbackOutcome SigmaCompletion::pullback(const SigmaMorphism& f, const SigmaMorphism& g) const {
  if (f.cod != g.cod) throw Error(ErrorCode::InvalidArgument, "pullback needs a common codomain");
  const std::size_t m = static_cast<std::size_t>(k_->morphism_count());
  SigmaPullback out;
  out.first.cod = f.dom;
  out.second.cod = g.dom;
  for (std::size_t ia = 0; ia < f.dom.size(); ++ia)
    for (std::size_t ib = 0; ib < g.dom.size(); ++ib) {
      if (f.index[ia] != g.index[ib]) continue;
      const std::size_t slot = static_cast<std::size_t>(f.components[ia]) * m + g.components[ib];
      const auto& cones = cospans_[slot];
      if (!cones) return NoPullback{f.components[ia], g.components[ib], cospan_witness_[slot]};
      for (const Cone& c : *cones) {
        out.object.family.push_back(c.apex);
        out.first.index.push_back(static_cast<int>(ia));
        out.first.components.push_back(c.legs[0]);
        out.second.index.push_back(static_cast<int>(ib));
        out.second.components.push_back(c.legs[1]);
      }
    }
  out.first.dom = out.object;
  out.second.dom = out.object;
  return out;
}

bool SigmaCompletion::is_mono(const SigmaMorphism& f) const {
  std::set<int> seen(f.index.begin(), f.index.end());
  if (seen.size() != f.index.size()) return false;
  return std::all_of(f.components.begin(), f.components.end(),
                     [&](MorphismId c) { return classes_[c].mono; });
}

bool SigmaCompletion::is_epi(const SigmaMorphism& f) const {
  std::set<int> seen(f.index.begin(), f.index.end());
  if (seen.size() != f.cod.size()) return false;
  // Components landing on B_j must be jointly epi.
  const auto& k = *k_;
  for (std::size_t j = 0; j < f.cod.size(); ++j) {
    std::vector<MorphismId> in;
    for (std::size_t i = 0; i < f.index.size(); ++i)
      if (f.index[i] == static_cast<int>(j)) in.push_back(f.components[i]);
    if (std::any_of(in.begin(), in.end(), [&](MorphismId c) { return classes_[c].epi; })) continue;
    for (ObjectId x = 0; x < k.object_count(); ++x) {
      const auto& maps = k.hom(f.cod.family[j], x);
      for (std::size_t a = 0; a < maps.size(); ++a)
        for (std::size_t b = a + 1; b < maps.size(); ++b)
          if (std::all_of(in.begin(), in.end(), [&](MorphismId c) {
                return k.compose(maps[a], c) == k.compose(maps[b], c);
              }))
            return false;
    }
  }
  return true;
}

bool SigmaCompletion::is_iso(const SigmaMorphism& f) const {
  if (f.dom.size() != f.cod.size()) return false;
  std::set<int> seen(f.index.begin(), f.index.end());
  if (seen.size() != f.index.size()) return false;
  return std::all_of(f.components.begin(), f.components.end(),
                     [&](MorphismId c) { return classes_[c].iso; });
}

SigmaProductOutcome SigmaCompletion::product(std::span<const SigmaObject> factors) const {
  SigmaProduct out;
  out.factors.assign(factors.begin(), factors.end());
  for (const auto& a : factors) out.projections.push_back(SigmaMorphism{{}, a, {}, {}});
  std::vector<std::size_t> sizes;
  for (const auto& a : factors) sizes.push_back(a.size());
  const bool any_empty = std::any_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 0; });
  if (!any_empty) {
    std::vector<int> phi(factors.size(), 0);
    do {
      std::vector<ObjectId> objects;
      for (std::size_t j = 0; j < factors.size(); ++j) objects.push_back(factors[j].family[phi[j]]);
      auto outcome = multi_limit(*k_, discrete_diagram(*k_, objects));
      if (auto* none = std::get_if<NoMultiLimit>(&outcome)) return NoProduct{phi, none->witness};
      auto& limit = std::get<MultiLimit>(outcome);
      out.choices.push_back(phi);
      out.offsets.push_back(out.object.size());
      for (const Cone& c : limit.cones) {
        out.object.family.push_back(c.apex);
        for (std::size_t j = 0; j < factors.size(); ++j) {
          out.projections[j].index.push_back(phi[j]);
          out.projections[j].components.push_back(c.legs[j]);
        }
      }
      out.members.push_back(std::move(limit.cones));
    } while (next_digits(phi, sizes));
  }
  for (auto& p : out.projections) p.dom = out.object;
  return out;
}

SigmaMorphism SigmaCompletion::mediate(const SigmaProduct& p, const SigmaObject& c,
                                       std::span<const SigmaMorphism> legs) const {
  if (legs.size() != p.factors.size()) throw Error(ErrorCode::InvalidArgument, "one leg per factor is needed");
  for (std::size_t j = 0; j < legs.size(); ++j)
    if (legs[j].dom != c || legs[j].cod != p.factors[j])
      throw Error(ErrorCode::InvalidArgument, "legs do not form a cone over the factors");
  SigmaMorphism out{c, p.object, {}, {}};
  for (std::size_t pos = 0; pos < c.size(); ++pos) {
    std::size_t rank = 0;
    Cone cone{c.family[pos], {}};
    for (std::size_t j = 0; j < legs.size(); ++j) {
      rank = rank * p.factors[j].size() + static_cast<std::size_t>(legs[j].index[pos]);
      cone.legs.push_back(legs[j].components[pos]);
    }
    auto f = factor_through(*k_, p.members[rank], cone);
    if (!f) throw Error(ErrorCode::InvalidArgument, "leg does not factor through the product");
    out.index.push_back(static_cast<int>(p.offsets[rank] + f->member));
    out.components.push_back(f->via);
  }
  return out;
}

SigmaExponentialOutcome SigmaCompletion::exponential(const SigmaObject& a, const SigmaObject& b) const {
  check(a);
  check(b);
  for (ObjectId al : a.family)
    if (auto c = products_.missing_with(al)) {
      NoExponential none;
      none.missing = std::pair(al, *c);
      return none;
    }
  SigmaExponential out;
  out.base = a;
  out.target = b;
  for (std::size_t l = 0; l < a.size(); ++l) {
    SigmaObject partial;
    std::vector<ExponentialSource> sources;
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto outcome = multi_exponential(products_, a.family[l], b.family[j]);
      if (auto* none = std::get_if<NoFamily>(&outcome)) {
        NoExponential failure;
        failure.kind = NoExponential::Kind::NoFamily;
        failure.l = static_cast<int>(l);
        failure.j = static_cast<int>(j);
        failure.family = *none;
        return failure;
      }
      for (const auto& member : std::get<MultiUniversalFamily>(outcome).members) {
        partial.family.push_back(member.object);
        sources.push_back({static_cast<int>(j), member});
      }
    }
    out.partial.push_back(std::move(partial));
    out.partial_sources.push_back(std::move(sources));
  }
  auto product = this->product(out.partial);
  if (auto* none = std::get_if<NoProduct>(&product)) {
    NoExponential failure;
    failure.kind = NoExponential::Kind::NoProduct;
    failure.product = *none;
    return failure;
  }
  out.product = std::move(std::get<SigmaProduct>(product));
  const SigmaObject pair[2] = {a, out.product.object};
  auto with_base = this->product(pair);
  if (auto* none = std::get_if<NoProduct>(&with_base)) {
    NoExponential failure;
    failure.kind = NoExponential::Kind::NoProduct;
    failure.product = *none;
    return failure;
  }
  out.with_base = std::move(std::get<SigmaProduct>(with_base));

  // ev at (l, e): A_l × E_e → A_l × [A_l, B_j]_i → B_j, through the projection of E_e onto [A_l, B].
  const auto& wb = out.with_base;
  out.evaluation = SigmaMorphism{wb.object, b, {}, {}};
  for (std::size_t pos = 0; pos < wb.object.size(); ++pos) {
    const int l = wb.projections[0].index[pos];
    const int e = wb.projections[1].index[pos];
    const MorphismId p1 = wb.projections[0].components[pos];
    const MorphismId p2 = wb.projections[1].components[pos];
    const auto& proj = out.product.projections[l];
    const auto& source = out.partial_sources[l][proj.index[e]];
    const MorphismId into = products_.pair(a.family[l], source.member.object, p1,
                                           k_->compose(proj.components[e], p2));
    out.evaluation.index.push_back(source.target_index);
    out.evaluation.components.push_back(k_->compose(source.member.evaluation, into));
  }
  return out;
}

bool SigmaCompletion::exponential_bijection(const SigmaExponential& e, const SigmaObject& c) const {
  const SigmaObject pair[2] = {e.base, c};
  auto outcome = product(pair);
  const auto* ac = std::get_if<SigmaProduct>(&outcome);
  if (!ac) return false;
  std::set<SigmaMorphism> image;
  std::size_t count = 0;
  for (const auto& h : homs(c, e.object())) {
    const SigmaMorphism legs[2] = {ac->projections[0], compose(h, ac->projections[1])};
    image.insert(compose(e.evaluation, mediate(e.with_base, ac->object, legs)));
    ++count;
  }
  return image.size() == count && count == hom_count(ac->object, e.target);
}

SigmaClassifier SigmaCompletion::subobject_classifier(MorphismId epsilon) const {
  if (auto bad = classifier_counterexample(*k_, epsilon)) {
    throw Error(ErrorCode::NotAClassifier,
                "mono " + k_->morphism_name(*bad) + " is not classified uniquely");
  }
  SigmaClassifier out;
  out.base = KClassifier{k_->dom(epsilon), k_->cod(epsilon), epsilon};
  out.terminal = SigmaObject{{out.base.terminal}};
  out.omega = SigmaObject{{out.base.omega, out.base.terminal}};
  out.truth = SigmaMorphism{out.terminal, out.omega, {0}, {epsilon}};
  return out;
}

SigmaMorphism SigmaCompletion::characteristic(const SigmaClassifier& c, const SigmaMorphism& mono) const {
  check(mono);
  if (!is_mono(mono)) throw Error(ErrorCode::NotMono, "not a mono in the coproduct completion");
  SigmaMorphism out{mono.cod, c.omega, {}, {}};
  for (std::size_t j = 0; j < mono.cod.size(); ++j) {
    const auto hit = std::find(mono.index.begin(), mono.index.end(), static_cast<int>(j));
    if (hit != mono.index.end()) {
      const auto i = static_cast<std::size_t>(hit - mono.index.begin());
      out.index.push_back(0);
      out.components.push_back(k_characteristic(*k_, c.base.epsilon, mono.components[i]));
    } else {
      out.index.push_back(1);
      out.components.push_back(k_->hom(mono.cod.family[j], c.base.terminal).front());
    }
  }
  return out;
}

bool SigmaCompletion::classifies(const SigmaClassifier& c, const SigmaMorphism& chi,
                                 const SigmaMorphism& mono) const {
  if (chi.dom != mono.cod || chi.cod != c.omega) return false;
  auto outcome = pullback(chi, c.truth);
  const auto* pb = std::get_if<SigmaPullback>(&outcome);
  if (!pb) return false;
  return factor(mono, pb->first).has_value() && factor(pb->first, mono).has_value();
}

std::vector<SigmaMorphism> SigmaCompletion::homs(const SigmaObject& a, const SigmaObject& b) const {
  std::vector<std::vector<std::pair<int, MorphismId>>> options(a.size());
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j)
      for (MorphismId h : k_->hom(a.family[i], b.family[j])) options[i].emplace_back(static_cast<int>(j), h);
    if (options[i].empty()) return {};
    sizes.push_back(options[i].size());
  }
  std::vector<SigmaMorphism> out;
  std::vector<int> digits(a.size(), 0);
  do {
    SigmaMorphism f{a, b, {}, {}};
    for (std::size_t i = 0; i < a.size(); ++i) {
      f.index.push_back(options[i][digits[i]].first);
      f.components.push_back(options[i][digits[i]].second);
    }
    out.push_back(std::move(f));
  } while (next_digits(digits, sizes));
  return out;
}

std::size_t SigmaCompletion::hom_count(const SigmaObject& a, const SigmaObject& b) const {
  std::size_t total = 1;
  for (ObjectId x : a.family) {
    std::size_t row = 0;
    for (ObjectId y : b.family) row += k_->hom(x, y).size();
    total *= row;
  }
  return total;
}

std::optional<SigmaMorphism> SigmaCompletion::factor(const SigmaMorphism& f, const SigmaMorphism& g) const {
  if (f.cod != g.cod) return std::nullopt;
  SigmaMorphism out{f.dom, g.dom, {}, {}};
  for (std::size_t w = 0; w < f.dom.size(); ++w) {
    bool found = false;
    for (std::size_t i = 0; i < g.dom.size() && !found; ++i) {
      if (g.index[i] != f.index[w]) continue;
      for (MorphismId h : k_->hom(f.dom.family[w], g.dom.family[i]))
        if (k_->compose(g.components[i], h) == f.components[w]) {
          out.index.push_back(static_cast<int>(i));
          out.components.push_back(h);
          found = true;
          break;
        }
    }
    if (!found) return std::nullopt;
  }
  return out;
}

std::optional<SigmaMorphism> SigmaCompletion::find_iso(const SigmaObject& a, const SigmaObject& b) const {
  if (a.size() != b.size()) return std::nullopt;
  SigmaMorphism out{a, b, std::vector<int>(a.size(), -1), std::vector<MorphismId>(a.size(), -1)};
  std::vector<char> used(b.size(), 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == a.size()) return true;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      for (MorphismId h : k_->hom(a.family[i], b.family[j])) {
        if (!classes_[h].iso) continue;
        used[j] = 1;
        out.index[i] = static_cast<int>(j);
        out.components[i] = h;
        if (rec(i + 1)) return true;
        used[j] = 0;
      }
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return out;
}

SigmaMorphism SigmaCompletion::terminal_map(const SigmaObject& a, const SigmaObject& terminal) const {
  auto maps = homs(a, terminal);
  if (maps.size() != 1) throw Error(ErrorCode::InvalidArgument, "target is not terminal");
  return maps.front();
}

bool SigmaCompletion::is_pullback_square(const SigmaMorphism& f, const SigmaMorphism& g,
                                         const SigmaMorphism& p, const SigmaMorphism& q,
                                         std::size_t bound) const {
  if (f.cod != g.cod || p.dom != q.dom || p.cod != f.dom || q.cod != g.dom) return false;
  if (compose(f, p) != compose(g, q)) return false;
  for (const auto& w : families_up_to(*k_, bound)) {
    std::map<std::pair<SigmaMorphism, SigmaMorphism>, int> through;
    for (const auto& h : homs(w, p.dom)) ++through[{compose(p, h), compose(q, h)}];
    const auto vs = homs(w, g.dom);
    for (const auto& u : homs(w, f.dom)) {
      const auto fu = compose(f, u);
      for (const auto& v : vs) {
        if (compose(g, v) != fu) continue;
        auto it = through.find({u, v});
        if (it == through.end() || it->second != 1) return false;
      }
    }
  }
  return true;
}

std::string describe(const FiniteCategory& k, const SigmaObject& a) {
  std::string out = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ", ";
    out += k.object_name(a.family[i]);
  }
  return out + ")";
}

}  // namespace freecat
