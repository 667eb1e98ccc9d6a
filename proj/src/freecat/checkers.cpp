#include "freecat/checkers.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "freecat/io.hpp"
#include "freecat/limits.hpp"
#include "freecat/presheaf.hpp"
#include "freecat/sigma.hpp"

namespace freecat {

namespace {

ObjectId object_from(const FiniteCategory& k, const Json& j) {
  const auto a = k.find_object(j.get<std::string>());
  if (!a) throw Error(ErrorCode::UnknownObject, "unknown object " + j.dump());
  return *a;
}

MorphismId morphism_from(const FiniteCategory& k, const Json& j) {
  const auto f = k.find_morphism(j.get<std::string>());
  if (!f) throw Error(ErrorCode::UnknownMorphism, "unknown morphism " + j.dump());
  return *f;
}

Json family_json(const FiniteCategory& k, const SigmaObject& a) {
  Json j = Json::array();
  for (ObjectId x : a.family) j.push_back(k.object_name(x));
  return j;
}

SigmaObject family_from(const FiniteCategory& k, const Json& j) {
  SigmaObject a;
  for (const auto& x : j) a.family.push_back(object_from(k, x));
  return a;
}

Json sigma_morphism_json(const FiniteCategory& k, const SigmaMorphism& f) {
  Json j;
  j["dom"] = family_json(k, f.dom);
  j["cod"] = family_json(k, f.cod);
  j["index"] = f.index;
  j["components"] = Json::array();
  for (MorphismId c : f.components) j["components"].push_back(k.morphism_name(c));
  return j;
}

Json cone_json(const FiniteCategory& k, const Cone& c) {
  Json j;
  j["apex"] = k.object_name(c.apex);
  j["legs"] = Json::array();
  for (MorphismId l : c.legs) j["legs"].push_back(k.morphism_name(l));
  return j;
}

Cone cone_from(const FiniteCategory& k, const Json& j) {
  Cone c;
  c.apex = object_from(k, j.at("apex"));
  for (const auto& l : j.at("legs")) c.legs.push_back(morphism_from(k, l));
  return c;
}

Json shape_json(const FiniteCategory& s) {
  const auto raw = s.raw();
  Json j;
  j["objects"] = raw.object_count;
  j["morphisms"] = Json::array();
  for (const auto& m : raw.morphisms) j["morphisms"].push_back({m.dom, m.cod});
  j["identity"] = raw.identity;
  j["compose"] = Json::array();
  for (const auto& e : raw.compose) j["compose"].push_back({e.g, e.f, e.h});
  return j;
}

FiniteCategory shape_from(const Json& j) {
  RawCategory raw;
  raw.object_count = j.at("objects").get<int>();
  for (const auto& m : j.at("morphisms")) raw.morphisms.push_back({m.at(0).get<int>(), m.at(1).get<int>()});
  raw.identity = j.at("identity").get<std::vector<int>>();
  for (const auto& e : j.at("compose"))
    raw.compose.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
  return FiniteCategory::validate(raw);
}

Json diagram_json(const FiniteCategory& k, const Diagram& d) {
  Json j;
  j["shape"] = shape_json(d.shape);
  j["objects"] = Json::array();
  for (ObjectId a : d.labeling.on_objects) j["objects"].push_back(k.object_name(a));
  j["arrows"] = Json::array();
  for (MorphismId f : d.labeling.on_morphisms) j["arrows"].push_back(k.morphism_name(f));
  return j;
}

Diagram diagram_from(const FiniteCategory& k, const Json& j) {
  Diagram d;
  d.shape = shape_from(j.at("shape"));
  for (const auto& a : j.at("objects")) d.labeling.on_objects.push_back(object_from(k, a));
  for (const auto& f : j.at("arrows")) d.labeling.on_morphisms.push_back(morphism_from(k, f));
  check_diagram(k, d);
  return d;
}

Json pair_json(const FiniteCategory& k, ObjectId a, ObjectId b) {
  return Json::array({k.object_name(a), k.object_name(b)});
}

PropertyReport holds(std::string name, int bound, std::string summary, Json certificate) {
  PropertyReport r;
  r.name = std::move(name);
  r.verdict = Verdict::HoldsConstructively;
  r.bound = bound;
  r.payload["summary"] = std::move(summary);
  r.payload["certificate"] = std::move(certificate);
  return r;
}

PropertyReport fails(std::string name, int bound, std::string summary, Json witness) {
  PropertyReport r;
  r.name = std::move(name);
  r.verdict = Verdict::FailsWithWitness;
  r.bound = bound;
  r.payload["summary"] = std::move(summary);
  r.payload["witness"] = std::move(witness);
  return r;
}

PropertyReport not_applicable(std::string name, int bound, std::string reason) {
  PropertyReport r;
  r.name = std::move(name);
  r.verdict = Verdict::NotApplicable;
  r.bound = bound;
  r.payload["reason"] = std::move(reason);
  return r;
}

std::string describe_family(const FiniteCategory& k, const SigmaObject& a) { return describe(k, a); }

// Cartesian multi-closedness of one category, named `name`.
PropertyReport cmc_report(const FiniteCategory& k, const std::string& name) {
  const auto terminal = find_terminal(k);
  if (!terminal) return fails(name, 0, "no terminal object", Json{{"kind", "missing-terminal"}});
  const ProductTable products(k);
  if (const auto missing = products.first_missing()) {
    const auto [a, c] = *missing;
    return fails(name, 0, k.object_name(a) + " × " + k.object_name(c) + " does not exist",
                 Json{{"kind", "missing-product"}, {"pair", pair_json(k, a, c)}});
  }
  Json families = Json::array();
  for (ObjectId a = 0; a < k.object_count(); ++a)
    for (ObjectId b = 0; b < k.object_count(); ++b) {
      const auto out = multi_exponential(products, a, b);
      if (const auto* no = std::get_if<NoFamily>(&out)) {
        Json w{{"kind", "no-family"},
               {"pair", pair_json(k, a, b)},
               {"object", k.object_name(no->object)},
               {"map", k.morphism_name(no->map)}};
        return fails(name, 0,
                     k.object_name(a) + " × − has no multi-universal family into " + k.object_name(b) +
                         "; the component of (" + k.object_name(no->object) + ", " +
                         k.morphism_name(no->map) + ") has no terminal object",
                     std::move(w));
      }
      Json members = Json::array();
      for (const auto& m : std::get<MultiUniversalFamily>(out).members)
        members.push_back({{"object", k.object_name(m.object)}, {"evaluation", k.morphism_name(m.evaluation)}});
      families.push_back({{"pair", pair_json(k, a, b)}, {"members", std::move(members)}});
    }
  const std::size_t n = families.size();
  return holds(name, 0, "finite products and a multi-universal family for each of the " + std::to_string(n) + " pairs",
               Json{{"terminal", k.object_name(*terminal)}, {"families", std::move(families)}});
}

bool replay_cmc(const FiniteCategory& k, const PropertyReport& r) {
  const ProductTable products(k);
  if (r.verdict == Verdict::FailsWithWitness) {
    const auto& w = r.payload.at("witness");
    const auto kind = w.at("kind").get<std::string>();
    if (kind == "missing-terminal") return !find_terminal(k).has_value();
    if (kind == "missing-product")
      return !products.get(object_from(k, w.at("pair").at(0)), object_from(k, w.at("pair").at(1))).has_value();
    if (kind == "no-family") {
      const auto out = multi_exponential(products, object_from(k, w.at("pair").at(0)),
                                         object_from(k, w.at("pair").at(1)));
      return std::holds_alternative<NoFamily>(out);
    }
    return false;
  }
  if (r.verdict != Verdict::HoldsConstructively) return false;
  const auto& cert = r.payload.at("certificate");
  if (!is_terminal(k, object_from(k, cert.at("terminal"))) || !products.complete()) return false;
  const auto& families = cert.at("families");
  if (families.size() != static_cast<std::size_t>(k.object_count() * k.object_count())) return false;
  std::size_t i = 0;
  for (ObjectId a = 0; a < k.object_count(); ++a)
    for (ObjectId b = 0; b < k.object_count(); ++b, ++i) {
      const auto& entry = families.at(i);
      if (object_from(k, entry.at("pair").at(0)) != a || object_from(k, entry.at("pair").at(1)) != b) return false;
      MultiUniversalFamily fam{a, b, {}};
      for (const auto& m : entry.at("members"))
        fam.members.push_back({object_from(k, m.at("object")), morphism_from(k, m.at("evaluation"))});
      if (!verify_multi_universal(products, fam)) return false;
    }
  return true;
}

// First bounded diagram whose multi-limit is missing or not a singleton.
std::optional<Json> first_non_singleton_limit(const FiniteCategory& k, int max_shape) {
  for (const auto& shape : enumerate_shapes(max_shape, max_shape))
    for (const auto& f : enumerate_functors(shape, k)) {
      const Diagram d{shape, f};
      const auto out = multi_limit(k, d);
      if (const auto* no = std::get_if<NoMultiLimit>(&out))
        return Json{{"diagram", diagram_json(k, d)}, {"cone", cone_json(k, no->witness)}};
      const auto& lim = std::get<MultiLimit>(out);
      if (lim.cones.size() != 1) return Json{{"diagram", diagram_json(k, d)}, {"members", lim.cones.size()}};
    }
  return std::nullopt;
}

bool diagram_lacks_limit(const FiniteCategory& k, const Json& w) {
  const auto d = diagram_from(k, w.at("diagram"));
  const auto out = multi_limit(k, d);
  if (w.contains("cone")) return std::holds_alternative<NoMultiLimit>(out) && is_cone(k, d, cone_from(k, w.at("cone")));
  const auto* lim = std::get_if<MultiLimit>(&out);
  return lim && lim->cones.size() == w.at("members").get<std::size_t>() && lim->cones.size() != 1;
}

Json classifier_json(const FiniteCategory& k, const KClassifier& c) {
  return Json{{"terminal", k.object_name(c.terminal)},
              {"omega", k.object_name(c.omega)},
              {"epsilon", k.morphism_name(c.epsilon)}};
}

// Sub(B) ≅ ΣK(B, (Ω,1)) for every family B of size ≤ bound.
std::optional<PropertyReport> sigma_classification(const FiniteCategory& k, const KClassifier& kc, int bound,
                                                   Json& cert) {
  const std::string name = "multi-topos";
  const SigmaCompletion sc(k);
  const auto cl = sc.subobject_classifier(kc.epsilon);
  std::size_t families = 0, subobjects = 0, maps = 0;
  for (const auto& b : families_up_to(k, static_cast<std::size_t>(bound))) {
    std::vector<SigmaMorphism> reps, chis;
    for (const auto& a : families_up_to(k, b.size()))
      for (const auto& m : sc.homs(a, b)) {
        if (!sc.is_mono(m)) continue;
        const auto chi = sc.characteristic(cl, m);
        auto fail = [&](const std::string& why) {
          return fails(name, bound, "ΣK classification fails at " + describe_family(k, b) + ": " + why,
                       Json{{"stage", "sigma-classification"}, {"mono", sigma_morphism_json(k, m)}});
        };
        if (!sc.classifies(cl, chi, m)) return fail("characteristic map does not classify");
        const auto at = std::find(chis.begin(), chis.end(), chi);
        bool same_class = false;
        for (const auto& rep : reps)
          if (sc.factor(m, rep) && sc.factor(rep, m)) same_class = true;
        if (at != chis.end()) {
          const auto& rep = reps[at - chis.begin()];
          if (!(sc.factor(m, rep) && sc.factor(rep, m))) return fail("distinct subobjects share a characteristic map");
        } else {
          if (same_class) return fail("one subobject has two characteristic maps");
          reps.push_back(m);
          chis.push_back(chi);
        }
      }
    const auto all = sc.homs(b, cl.omega);
    for (const auto& rep : reps) {
      std::size_t count = 0;
      for (const auto& x : all) count += sc.classifies(cl, x, rep);
      if (count != 1)
        return fails(name, bound, "characteristic map not unique at " + describe_family(k, b),
                     Json{{"stage", "sigma-classification"}, {"mono", sigma_morphism_json(k, rep)}});
    }
    if (all.size() != chis.size())
      return fails(name, bound, "some map into (Ω, 1) classifies no subobject of " + describe_family(k, b),
                   Json{{"stage", "sigma-classification"}, {"family", family_json(k, b)}});
    ++families;
    subobjects += reps.size();
    maps += all.size();
  }
  cert["sigma_omega"] = family_json(k, cl.omega);
  cert["sigma_truth"] = sigma_morphism_json(k, cl.truth);
  cert["families"] = families;
  cert["subobjects"] = subobjects;
  cert["maps"] = maps;
  return std::nullopt;
}

std::vector<MorphismId> classifier_candidates(const FiniteCategory& k, ObjectId terminal) {
  std::vector<MorphismId> out;
  for (MorphismId e = 0; e < k.morphism_count(); ++e)
    if (k.dom(e) == terminal) out.push_back(e);
  return out;
}

PropertyReport rerun(const FiniteCategory& k, const PropertyReport& r, const CheckOptions& opts) {
  CheckOptions o = opts;
  o.bound = r.bound;
  return run_check(r.name, k, o);
}

}  // namespace

PropertyReport check_finitely_multi_complete(const FiniteCategory& k, int max_shape) {
  const std::string name = "finitely-multi-complete";
  const auto shapes = enumerate_shapes(max_shape, max_shape);
  Json diagrams = Json::array();
  for (std::size_t si = 0; si < shapes.size(); ++si)
    for (const auto& f : enumerate_functors(shapes[si], k)) {
      const Diagram d{shapes[si], f};
      const auto out = multi_limit(k, d);
      if (const auto* no = std::get_if<NoMultiLimit>(&out)) {
        return fails(name, 0,
                     "a diagram over a shape with " + std::to_string(shapes[si].object_count()) +
                         " objects has no multi-limit; the component of the witness cone has no terminal cone",
                     Json{{"max_shape", max_shape}, {"diagram", diagram_json(k, d)}, {"cone", cone_json(k, no->witness)}});
      }
      Json cones = Json::array();
      for (const auto& c : std::get<MultiLimit>(out).cones) {
        Json row = Json::array({c.apex});
        for (MorphismId l : c.legs) row.push_back(l);
        cones.push_back(std::move(row));
      }
      diagrams.push_back({{"shape", si}, {"objects", f.on_objects}, {"arrows", f.on_morphisms}, {"cones", std::move(cones)}});
    }
  Json shape_list = Json::array();
  for (const auto& s : shapes) shape_list.push_back(shape_json(s));
  const std::size_t n = diagrams.size();
  return holds(name, 0,
               std::to_string(n) + " diagrams over " + std::to_string(shapes.size()) +
                   " shapes, each with a certified multi-limit",
               Json{{"max_shape", max_shape}, {"shapes", std::move(shape_list)}, {"diagrams", std::move(diagrams)}});
}

PropertyReport check_sigma_extensive(const FiniteCategory& k, const CheckOptions& opts) {
  const std::string name = "sigma-extensive";
  const auto complete = check_finitely_multi_complete(k, opts.max_shape);
  if (complete.verdict != Verdict::HoldsConstructively) {
    auto r = not_applicable(name, opts.bound, "K is not finitely multi-complete: " +
                                                  complete.payload["summary"].get<std::string>());
    r.payload["witness"] = complete.payload["witness"];
    return r;
  }
  const SigmaCompletion sc(k);
  const auto n = static_cast<std::size_t>(std::max(opts.bound, 0));
  const auto fams = families_up_to(k, n);
  std::size_t pairs = 0, maps = 0;
  for (const auto& x : fams)
    for (const auto& y : fams) {
      if (x.size() + y.size() > n) continue;
      const SigmaObject parts[] = {x, y};
      const auto sum = sc.coproduct(parts);
      const auto meet = sc.pullback(sum.injections[0], sum.injections[1]);
      const auto* pb = std::get_if<SigmaPullback>(&meet);
      if (!sc.is_mono(sum.injections[0]) || !sc.is_mono(sum.injections[1]) || !pb || pb->object.size() != 0)
        return fails(name, opts.bound, "coproduct " + describe(k, x) + " + " + describe(k, y) + " is not disjoint",
                     Json{{"property", "disjoint"}, {"left", family_json(k, x)}, {"right", family_json(k, y)}});
      ++pairs;
      for (const auto& z : fams) {
        if (x.size() + y.size() + z.size() > n) continue;
        for (const auto& f : sc.homs(z, sum.object)) {
          const auto p1 = sc.pullback(sum.injections[0], f);
          const auto p2 = sc.pullback(sum.injections[1], f);
          bool ok = std::holds_alternative<SigmaPullback>(p1) && std::holds_alternative<SigmaPullback>(p2);
          if (ok) {
            const auto& a = std::get<SigmaPullback>(p1);
            const auto& b = std::get<SigmaPullback>(p2);
            const SigmaObject pieces[] = {a.object, b.object};
            const auto split = sc.coproduct(pieces);
            const SigmaMorphism legs[] = {a.second, b.second};
            ok = sc.is_iso(sc.copair(split, legs));
          }
          if (!ok)
            return fails(name, opts.bound,
                         "coproduct " + describe(k, x) + " + " + describe(k, y) + " is not stable under pullback",
                         Json{{"property", "universal"},
                              {"left", family_json(k, x)},
                              {"right", family_json(k, y)},
                              {"map", sigma_morphism_json(k, f)}});
          ++maps;
        }
      }
    }
  return holds(name, opts.bound,
               std::to_string(pairs) + " coproducts disjoint; pullback-stable along " + std::to_string(maps) + " maps",
               Json{{"coproducts", pairs}, {"maps", maps}});
}

PropertyReport check_cartesian_multi_closed(const FiniteCategory& k) {
  return cmc_report(k, "cartesian-multi-closed");
}

PropertyReport check_locally_cartesian_multi_closed(const FiniteCategory& k) {
  const std::string name = "locally-cartesian-multi-closed";
  Json slices = Json::array();
  for (ObjectId a = 0; a < k.object_count(); ++a) {
    const auto s = slice_category(k, a);
    const auto r = cmc_report(s.category, name);
    if (r.verdict != Verdict::HoldsConstructively)
      return fails(name, 0, "slice over " + k.object_name(a) + ": " + r.payload["summary"].get<std::string>(),
                   Json{{"anchor", k.object_name(a)}, {"slice", r.payload["witness"]}});
    slices.push_back({{"anchor", k.object_name(a)}, {"certificate", r.payload["certificate"]}});
  }
  const std::size_t n = slices.size();
  return holds(name, 0, "all " + std::to_string(n) + " slices are cartesian multi-closed",
               Json{{"slices", std::move(slices)}});
}

PropertyReport check_multi_topos(const FiniteCategory& k, const CheckOptions& opts) {
  const std::string name = "multi-topos";
  const auto terminal = find_terminal(k);
  if (!terminal)
    return fails(name, opts.bound, "not finitely complete: no terminal object",
                 Json{{"stage", "finite-completeness"}, {"missing", "terminal"}});
  if (const auto cospan = first_cospan_without_pullback(k))
    return fails(name, opts.bound,
                 "not finitely complete: " + k.morphism_name(cospan->first) + ", " +
                     k.morphism_name(cospan->second) + " has no pullback",
                 Json{{"stage", "finite-completeness"},
                      {"cospan", {k.morphism_name(cospan->first), k.morphism_name(cospan->second)}}});
  if (auto w = first_non_singleton_limit(k, opts.max_shape)) {
    (*w)["stage"] = "finite-completeness";
    return fails(name, opts.bound, "not finitely complete: a bounded diagram has no limit", std::move(*w));
  }
  const auto cmc = check_cartesian_multi_closed(k);
  if (cmc.verdict != Verdict::HoldsConstructively)
    return fails(name, opts.bound, "not cartesian multi-closed: " + cmc.payload["summary"].get<std::string>(),
                 Json{{"stage", "cartesian-multi-closed"}, {"detail", cmc.payload["witness"]}});
  const auto kc = find_classifier(k);
  if (!kc) {
    Json candidates = Json::array();
    for (MorphismId e : classifier_candidates(k, *terminal))
      candidates.push_back({{"epsilon", k.morphism_name(e)}, {"mono", k.morphism_name(*classifier_counterexample(k, e))}});
    const std::size_t n = candidates.size();
    return fails(name, opts.bound,
                 "no subobject classifier: each of the " + std::to_string(n) +
                     " candidates misclassifies some mono",
                 Json{{"stage", "classifier"}, {"terminal", k.object_name(*terminal)}, {"candidates", std::move(candidates)}});
  }
  Json cert{{"classifier", classifier_json(k, *kc)}};
  if (auto failure = sigma_classification(k, *kc, opts.bound, cert)) return *failure;
  const auto summary = "classifier " + k.morphism_name(kc->epsilon) + "; ΣK classification bijective on " +
                       std::to_string(cert["families"].get<std::size_t>()) + " families";
  return holds(name, opts.bound, summary, std::move(cert));
}

PropertyReport strict_initial_consistency(const FiniteCategory& k) {
  const std::string name = "strict-initial";
  std::optional<ObjectId> initial;
  for (ObjectId x = 0; x < k.object_count() && !initial; ++x)
    if (is_strict_initial(k, x)) initial = x;
  if (!initial) return not_applicable(name, 0, "no strict initial object");
  const ProductTable products(k);
  Json families = Json::array();
  for (ObjectId a = 0; a < k.object_count(); ++a) {
    if (products.missing_with(a)) continue;
    for (ObjectId b = 0; b < k.object_count(); ++b) {
      const auto out = multi_exponential(products, a, b);
      const auto* fam = std::get_if<MultiUniversalFamily>(&out);
      if (!fam) continue;
      if (fam->members.size() != 1)
        return fails(name, 0,
                     "the family for " + k.object_name(a) + ", " + k.object_name(b) + " has " +
                         std::to_string(fam->members.size()) + " members despite a strict initial object",
                     Json{{"pair", pair_json(k, a, b)}, {"members", fam->members.size()}});
      families.push_back({{"pair", pair_json(k, a, b)},
                          {"object", k.object_name(fam->members[0].object)},
                          {"evaluation", k.morphism_name(fam->members[0].evaluation)}});
    }
  }
  const std::size_t n = families.size();
  return holds(name, 0,
               "strict initial " + k.object_name(*initial) + "; all " + std::to_string(n) +
                   " multi-universal families are singletons",
               Json{{"initial", k.object_name(*initial)}, {"families", std::move(families)}});
}

PropertyReport check_sigma_products(const FiniteCategory& k, const CheckOptions& opts) {
  const std::string name = "sigma-products";
  const SigmaCompletion sc(k);
  const auto small = static_cast<std::size_t>(std::clamp(opts.bound, 0, 2));
  const auto fams = families_up_to(k, small);
  Json products = Json::array();
  std::size_t cones = 0;
  for (const auto& a : fams)
    for (const auto& b : fams) {
      const SigmaObject factors[] = {a, b};
      const auto out = sc.product(factors);
      if (const auto* no = std::get_if<NoProduct>(&out))
        return fails(name, opts.bound,
                     describe(k, a) + " × " + describe(k, b) + " does not exist: no multi-product in K for the choice " +
                         Json(no->choice).dump(),
                     Json{{"factors", {family_json(k, a), family_json(k, b)}},
                          {"choice", no->choice},
                          {"cone", cone_json(k, no->witness)}});
      const auto& p = std::get<SigmaProduct>(out);
      for (const auto& c : fams) {
        const auto to_a = sc.homs(c, a);
        const auto to_b = sc.homs(c, b);
        bool ok = sc.hom_count(c, p.object) == to_a.size() * to_b.size();
        for (std::size_t i = 0; ok && i < to_a.size(); ++i)
          for (std::size_t j = 0; ok && j < to_b.size(); ++j) {
            const SigmaMorphism legs[] = {to_a[i], to_b[j]};
            const auto m = sc.mediate(p, c, legs);
            ok = sc.compose(p.projections[0], m) == to_a[i] && sc.compose(p.projections[1], m) == to_b[j];
            ++cones;
          }
        if (!ok)
          return fails(name, opts.bound, "the product " + describe(k, a) + " × " + describe(k, b) +
                                             " fails its universal property at " + describe(k, c),
                       Json{{"factors", {family_json(k, a), family_json(k, b)}}, {"test", family_json(k, c)}});
      }
      products.push_back({{"factors", {family_json(k, a), family_json(k, b)}}, {"object", family_json(k, p.object)}});
    }
  const std::size_t n = products.size();
  return holds(name, opts.bound,
               std::to_string(n) + " products of families of size ≤ " + std::to_string(small) + "; " +
                   std::to_string(cones) + " cones factor uniquely",
               Json{{"factor_size", small}, {"test_size", small}, {"products", std::move(products)}});
}

PropertyReport check_sigma_cartesian_closed(const FiniteCategory& k, const CheckOptions& opts) {
  const std::string name = "sigma-cartesian-closed";
  const auto cmc = check_cartesian_multi_closed(k);
  if (cmc.verdict != Verdict::HoldsConstructively)
    return fails(name, opts.bound, "K is not cartesian multi-closed: " + cmc.payload["summary"].get<std::string>(),
                 Json{{"k_condition", "cartesian-multi-closed"}, {"detail", cmc.payload["witness"]}});
  const SigmaCompletion sc(k);
  const auto small = static_cast<std::size_t>(std::clamp(opts.bound, 0, 2));
  const auto fams = families_up_to(k, small);
  Json exponentials = Json::array();
  for (const auto& a : fams)
    for (const auto& b : fams) {
      const auto out = sc.exponential(a, b);
      if (std::holds_alternative<NoExponential>(out))
        return fails(name, opts.bound, "[" + describe(k, a) + ", " + describe(k, b) + "] could not be built",
                     Json{{"base", family_json(k, a)}, {"target", family_json(k, b)}});
      const auto& e = std::get<SigmaExponential>(out);
      for (const auto& c : fams)
        if (!sc.exponential_bijection(e, c))
          return fails(name, opts.bound,
                       "[" + describe(k, a) + ", " + describe(k, b) + "] fails its bijection at " + describe(k, c),
                       Json{{"base", family_json(k, a)}, {"target", family_json(k, b)}, {"test", family_json(k, c)}});
      exponentials.push_back(
          {{"base", family_json(k, a)}, {"target", family_json(k, b)}, {"object", family_json(k, e.object())}});
    }
  const std::size_t n = exponentials.size();
  return holds(name, opts.bound,
               std::to_string(n) + " exponentials of families of size ≤ " + std::to_string(small) +
                   " with bijective evaluation",
               Json{{"family_size", small}, {"exponentials", std::move(exponentials)}});
}

PropertyReport check_presheaf_topos(const FiniteCategory& k, const CheckOptions& opts) {
  const std::string name = "presheaf-topos";
  const int n = std::max(opts.bound, 0);
  const int pair_bound = std::min(n, 2);
  const auto om = omega(k);
  Json omega_sizes = Json::object();
  for (ObjectId a = 0; a < k.object_count(); ++a) {
    omega_sizes[k.object_name(a)] = om.object.sizes[a];
    if (static_cast<std::size_t>(om.object.sizes[a]) != subfunctors(k, yoneda(k, a)).size())
      return fails(name, opts.bound, "Ω(" + k.object_name(a) + ") does not list the sieves",
                   Json{{"property", "omega"}, {"object", k.object_name(a)}});
  }
  auto fail = [&](const std::string& property, const std::string& what, Json witness) {
    witness["property"] = property;
    return fails(name, opts.bound, property + " fails for " + what, std::move(witness));
  };
  const auto pool = presheaves_up_to_iso(k, n, n);
  std::size_t subobjects = 0, quotients = 0, relations = 0;
  for (const auto& f : pool) {
    const auto shown = format_presheaf(k, f);
    if (!classification_bijection(k, om, f).bijective)
      return fail("classification", "a presheaf", Json{{"presheaf", shown}});
    for (const auto& s : subfunctors(k, f)) {
      const auto r = restrict_to(k, f, s);
      if (!regularity_suite(k, r.object, f, r.inclusion).mono_regular.value_or(false))
        return fail("regular-mono", "a subobject inclusion", Json{{"presheaf", shown}, {"subobject", s.members}});
      ++subobjects;
    }
    for (const auto& c : congruences(k, f)) {
      const auto q = quotient(k, f, c);
      if (!regularity_suite(k, f, q.object, q.projection).epi_regular.value_or(false))
        return fail("regular-epi", "a quotient map", Json{{"presheaf", shown}, {"congruence", c}});
      ++quotients;
    }
    for (const auto& r : equivalence_relations(k, f)) {
      if (!effective_equivalence_check(k, f, r))
        return fail("effective-equivalence", "an equivalence relation", Json{{"presheaf", shown}, {"relation", r.members}});
      ++relations;
    }
  }
  const auto small = presheaves_up_to_iso(k, pair_bound, pair_bound);
  std::size_t pairs = 0;
  for (const auto& f : small)
    for (const auto& g : small) {
      const auto e = presheaf_exponential(k, f, g);
      for (const auto& h : small)
        if (!exponential_ump_holds(k, f, g, e, h))
          return fail("exponential", "a triple",
                      Json{{"base", format_presheaf(k, f)}, {"target", format_presheaf(k, g)}, {"test", format_presheaf(k, h)}});
      const auto ext = coproduct_extensivity(k, f, g, small);
      if (!ext.disjoint || !ext.universal)
        return fail(ext.disjoint ? "universal-coproducts" : "disjoint-coproducts", "a pair",
                    Json{{"left", format_presheaf(k, f)}, {"right", format_presheaf(k, g)}});
      ++pairs;
    }
  const std::size_t count = pool.size();
  return holds(name, opts.bound,
               std::to_string(count) + " presheaves up to iso (total ≤ " + std::to_string(n) +
                   "): classification bijective, " + std::to_string(subobjects) + " monos and " +
                   std::to_string(quotients) + " epis regular, " + std::to_string(relations) +
                   " equivalence relations effective; " + std::to_string(pairs) +
                   " pairs (total ≤ " + std::to_string(pair_bound) + ") with exponential bijections and extensive coproducts",
               Json{{"omega", std::move(omega_sizes)},
                    {"presheaves", count},
                    {"pair_bound", pair_bound},
                    {"pairs", pairs},
                    {"monos", subobjects},
                    {"epis", quotients},
                    {"relations", relations}});
}

std::vector<PropertyReport> theorem_crosscheck(const FiniteCategory& k, const CheckOptions& opts) {
  std::vector<PropertyReport> out;
  for (std::string_view name : {"finitely-multi-complete", "sigma-extensive", "sigma-products",
                                "sigma-cartesian-closed", "multi-topos", "presheaf-topos"})
    out.push_back(run_check(name, k, opts));
  return out;
}

const std::vector<std::string_view>& check_names() {
  static const std::vector<std::string_view> names = {
      "finitely-multi-complete", "sigma-extensive", "cartesian-multi-closed",
      "locally-cartesian-multi-closed", "multi-topos", "strict-initial",
      "sigma-products", "sigma-cartesian-closed", "presheaf-topos"};
  return names;
}

PropertyReport run_check(std::string_view name, const FiniteCategory& k, const CheckOptions& opts) {
  if (name == "finitely-multi-complete") return check_finitely_multi_complete(k, opts.max_shape);
  if (name == "sigma-extensive") return check_sigma_extensive(k, opts);
  if (name == "cartesian-multi-closed") return check_cartesian_multi_closed(k);
  if (name == "locally-cartesian-multi-closed") return check_locally_cartesian_multi_closed(k);
  if (name == "multi-topos") return check_multi_topos(k, opts);
  if (name == "strict-initial") return strict_initial_consistency(k);
  if (name == "sigma-products") return check_sigma_products(k, opts);
  if (name == "sigma-cartesian-closed") return check_sigma_cartesian_closed(k, opts);
  if (name == "presheaf-topos") return check_presheaf_topos(k, opts);
  throw Error(ErrorCode::InvalidArgument, "unknown check '" + std::string(name) + "'");
}

bool replay(const FiniteCategory& k, const PropertyReport& r, const CheckOptions& opts) {
  try {
    if (r.name == "finitely-multi-complete") {
      if (r.verdict == Verdict::FailsWithWitness) return diagram_lacks_limit(k, r.payload.at("witness"));
      const auto& cert = r.payload.at("certificate");
      const int max_shape = cert.at("max_shape").get<int>();
      const auto& shapes = cert.at("shapes");
      if (shapes.size() != enumerate_shapes(max_shape, max_shape).size()) return false;
      std::vector<FiniteCategory> built;
      std::vector<std::size_t> seen(shapes.size(), 0);
      for (const auto& s : shapes) built.push_back(shape_from(s));
      for (const auto& entry : cert.at("diagrams")) {
        const auto si = entry.at("shape").get<std::size_t>();
        Diagram d{built.at(si), {entry.at("objects").get<std::vector<int>>(), entry.at("arrows").get<std::vector<int>>()}};
        check_diagram(k, d);
        std::vector<Cone> cones;
        for (const auto& row : entry.at("cones")) {
          const auto ids = row.get<std::vector<int>>();
          cones.push_back(Cone{ids.at(0), {ids.begin() + 1, ids.end()}});
        }
        if (!verify_unique_factorization(k, d, cones)) return false;
        ++seen[si];
      }
      for (std::size_t si = 0; si < built.size(); ++si)
        if (seen[si] != enumerate_functors(built[si], k).size()) return false;
      return true;
    }
    if (r.name == "cartesian-multi-closed") return replay_cmc(k, r);
    if (r.name == "locally-cartesian-multi-closed") {
      auto slice_of = [&](const Json& anchor) { return slice_category(k, object_from(k, anchor)).category; };
      if (r.verdict == Verdict::FailsWithWitness) {
        const auto& w = r.payload.at("witness");
        PropertyReport inner;
        inner.verdict = Verdict::FailsWithWitness;
        inner.payload["witness"] = w.at("slice");
        return replay_cmc(slice_of(w.at("anchor")), inner);
      }
      const auto& slices = r.payload.at("certificate").at("slices");
      if (slices.size() != static_cast<std::size_t>(k.object_count())) return false;
      for (const auto& s : slices) {
        PropertyReport inner;
        inner.verdict = Verdict::HoldsConstructively;
        inner.payload["certificate"] = s.at("certificate");
        if (!replay_cmc(slice_of(s.at("anchor")), inner)) return false;
      }
      return true;
    }
    if (r.name == "multi-topos" && r.verdict == Verdict::FailsWithWitness) {
      const auto& w = r.payload.at("witness");
      const auto stage = w.at("stage").get<std::string>();
      if (stage == "finite-completeness") {
        if (w.contains("missing")) return !find_terminal(k).has_value();
        if (w.contains("cospan")) {
          const auto f = morphism_from(k, w.at("cospan").at(0));
          const auto g = morphism_from(k, w.at("cospan").at(1));
          return k.cod(f) == k.cod(g) && !pullback(k, f, g).has_value();
        }
        return diagram_lacks_limit(k, w);
      }
      if (stage == "cartesian-multi-closed") {
        PropertyReport inner;
        inner.verdict = Verdict::FailsWithWitness;
        inner.payload["witness"] = w.at("detail");
        return replay_cmc(k, inner);
      }
      if (stage == "classifier") {
        const auto terminal = object_from(k, w.at("terminal"));
        if (!is_terminal(k, terminal)) return false;
        const auto candidates = classifier_candidates(k, terminal);
        if (w.at("candidates").size() != candidates.size()) return false;
        std::size_t i = 0;
        for (const auto& c : w.at("candidates")) {
          const auto e = morphism_from(k, c.at("epsilon"));
          if (e != candidates[i++]) return false;
          if (classifier_counterexample(k, e) != morphism_from(k, c.at("mono"))) return false;
        }
        return true;
      }
      return rerun(k, r, opts) == r;
    }
    if (r.name == "multi-topos" && r.verdict == Verdict::HoldsConstructively) {
      const auto& c = r.payload.at("certificate").at("classifier");
      const auto e = morphism_from(k, c.at("epsilon"));
      if (!is_terminal(k, k.dom(e)) || classifier_counterexample(k, e).has_value()) return false;
      return rerun(k, r, opts) == r;
    }
    if (r.name == "sigma-products" && r.verdict == Verdict::FailsWithWitness && r.payload.at("witness").contains("choice")) {
      const auto& w = r.payload.at("witness");
      const auto choice = w.at("choice").get<std::vector<int>>();
      std::vector<ObjectId> picked;
      for (std::size_t j = 0; j < choice.size(); ++j)
        picked.push_back(family_from(k, w.at("factors").at(j)).family.at(choice[j]));
      const auto d = discrete_diagram(k, picked);
      return std::holds_alternative<NoMultiLimit>(multi_limit(k, d)) && is_cone(k, d, cone_from(k, w.at("cone")));
    }
    if (r.name == "sigma-cartesian-closed" && r.verdict == Verdict::FailsWithWitness &&
        r.payload.at("witness").contains("k_condition")) {
      PropertyReport inner;
      inner.verdict = Verdict::FailsWithWitness;
      inner.payload["witness"] = r.payload.at("witness").at("detail");
      return replay_cmc(k, inner);
    }
    return rerun(k, r, opts) == r;
  } catch (const Error&) {
    return false;
  } catch (const Json::exception&) {
    return false;
  }
}

}  // namespace freecat
