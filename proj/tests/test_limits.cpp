#include <doctest.h>

#include <variant>

#include "freecat/limits.hpp"
#include "support.hpp"

using namespace freecat;

namespace {

// Every cone factors through exactly one (member, morphism) pair.
bool unique_factorization_oracle(const FiniteCategory& k, const Diagram& d, const std::vector<Cone>& members) {
  for (const auto& c : enumerate_cones(k, d)) {
    int hits = 0;
    for (const auto& m : members)
      for (MorphismId h : k.hom(c.apex, m.apex)) {
        bool ok = true;
        for (std::size_t x = 0; x < c.legs.size() && ok; ++x) ok = k.compose(m.legs[x], h) == c.legs[x];
        hits += ok;
      }
    if (hits != 1) return false;
  }
  return true;
}

// Greatest lower bound in a poset, by brute force.
std::optional<ObjectId> meet(const FiniteCategory& k, ObjectId a, ObjectId b) {
  auto le = [&](ObjectId x, ObjectId y) { return !k.hom(x, y).empty(); };
  for (ObjectId m = 0; m < k.object_count(); ++m) {
    if (!le(m, a) || !le(m, b)) continue;
    bool greatest = true;
    for (ObjectId x = 0; x < k.object_count(); ++x)
      if (le(x, a) && le(x, b) && !le(x, m)) greatest = false;
    if (greatest) return m;
  }
  return std::nullopt;
}

ObjectId obj(const FiniteCategory& k, const char* name) { return *k.find_object(name); }
MorphismId mor(const FiniteCategory& k, const char* name) { return *k.find_morphism(name); }

}  // namespace

TEST_CASE("cones over small diagrams") {
  auto c = fixture("chain2").category;
  CHECK(enumerate_cones(c, empty_diagram()).size() == 2);

  auto d2 = fixture("discrete2").category;
  const ObjectId ab[] = {0, 1};
  const auto disc = discrete_diagram(d2, ab);
  CHECK(enumerate_cones(d2, disc).empty());
  auto out = multi_limit(d2, disc);
  REQUIRE(std::holds_alternative<MultiLimit>(out));
  CHECK(std::get<MultiLimit>(out).cones.empty());

  const auto pair = discrete_diagram(c, ab);
  const auto cones = enumerate_cones(c, pair);
  REQUIRE(cones.size() == 1);
  CHECK(cones[0].apex == 0);
}

TEST_CASE("multi-limit of the meet in the 2-chain") {
  auto c = fixture("chain2").category;
  const ObjectId ab[] = {0, 1};
  const auto d = discrete_diagram(c, ab);
  auto out = multi_limit(c, d);
  REQUIRE(std::holds_alternative<MultiLimit>(out));
  const auto& lim = std::get<MultiLimit>(out);
  REQUIRE(lim.cones.size() == 1);
  CHECK(lim.cones[0] == Cone{0, {c.identity(0), mor(c, "u")}});
  CHECK(unique_factorization_oracle(c, d, lim.cones));
}

TEST_CASE("parallel pair has no multi-terminal set") {
  auto p = fixture("parallel_pair").category;
  const auto d = empty_diagram();
  CHECK(std::holds_alternative<NoMultiLimit>(multi_limit(p, d)));
  // Subset search over all cone sets.
  const auto cones = enumerate_cones(p, d);
  for (unsigned mask = 0; mask < (1u << cones.size()); ++mask) {
    std::vector<Cone> members;
    for (std::size_t i = 0; i < cones.size(); ++i)
      if (mask >> i & 1) members.push_back(cones[i]);
    CHECK_FALSE(unique_factorization_oracle(p, d, members));
  }
}

TEST_CASE("multi-limit results pass the definitional oracle on every fixture") {
  for (const char* name : {"terminal", "chain2", "discrete2", "parallel_pair", "z2", "idempotent",
                           "idempotent_pair", "bool4", "m3", "square"}) {
    auto k = fixture(name).category;
    for (const auto& shape : enumerate_shapes(2, 2))
      for (const auto& f : enumerate_functors(shape, k)) {
        const Diagram d{shape, f};
        const auto out = multi_limit(k, d);
        if (const auto* lim = std::get_if<MultiLimit>(&out)) {
          CHECK(unique_factorization_oracle(k, d, lim->cones));
          CHECK(verify_unique_factorization(k, d, lim->cones));
          CHECK(covers_all_cones(k, d, lim->cones));
          REQUIRE(lim->certificate.size() == lim->all_cones.size());
          for (std::size_t i = 0; i < lim->all_cones.size(); ++i) {
            const auto& fac = lim->certificate[i];
            const auto& m = lim->cones[fac.member];
            for (std::size_t x = 0; x < m.legs.size(); ++x)
              CHECK(k.compose(m.legs[x], fac.via) == lim->all_cones[i].legs[x]);
          }
        } else {
          CHECK(is_cone(k, d, std::get<NoMultiLimit>(out).witness));
        }
        const auto pre = pre_limit(k, d);
        CHECK(covers_all_cones(k, d, pre));
      }
  }
}

TEST_CASE("terminal objects give singleton multi-terminal sets") {
  for (const char* name : {"terminal", "chain2", "bool4", "m3", "square"}) {
    auto k = fixture(name).category;
    auto out = multi_limit(k, empty_diagram());
    REQUIRE(std::holds_alternative<MultiLimit>(out));
    const auto& lim = std::get<MultiLimit>(out);
    REQUIRE(lim.cones.size() == 1);
    CHECK(is_terminal(k, lim.cones[0].apex));
  }
}

TEST_CASE("pre-limits") {
  auto c = fixture("chain2").category;
  const ObjectId ab[] = {0, 1};
  const auto pre = pre_limit(c, discrete_diagram(c, ab));
  REQUIRE(pre.size() == 1);
  CHECK(pre[0].apex == 0);
  const auto top = pre_limit(c, empty_diagram());
  REQUIRE(top.size() == 1);
  CHECK(top[0].apex == 1);
  // The full cone list always covers.
  const auto d = discrete_diagram(c, ab);
  CHECK(covers_all_cones(c, d, enumerate_cones(c, d)));
}

TEST_CASE("binary products") {
  auto b = fixture("bool4").category;
  ProductTable pt(b);
  CHECK(pt.complete());
  for (ObjectId x = 0; x < b.object_count(); ++x)
    for (ObjectId y = 0; y < b.object_count(); ++y) CHECK(pt.get(x, y)->apex == *meet(b, x, y));
  auto ip = fixture("idempotent_pair").category;
  ProductTable bad(ip);
  CHECK_FALSE(bad.complete());
  CHECK_FALSE(bad.get(obj(ip, "b"), obj(ip, "b")).has_value());
}

TEST_CASE("multi-universal families") {
  auto t = fixture("terminal").category;
  ProductTable tp(t);
  auto one = multi_exponential(tp, 0, 0);
  REQUIRE(std::holds_alternative<MultiUniversalFamily>(one));
  CHECK(std::get<MultiUniversalFamily>(one).members.size() == 1);
  CHECK(std::get<MultiUniversalFamily>(one).members[0].object == 0);
  CHECK(std::get<MultiUniversalFamily>(one).members[0].evaluation == 0);

  // Heyting implication in the four-element Boolean algebra.
  auto b = fixture("bool4").category;
  ProductTable bp(b);
  for (ObjectId x = 0; x < b.object_count(); ++x)
    for (ObjectId y = 0; y < b.object_count(); ++y) {
      std::optional<ObjectId> implication;
      for (ObjectId c = 0; c < b.object_count(); ++c) {
        if (b.hom(*meet(b, x, c), y).empty()) continue;
        bool largest = true;
        for (ObjectId e = 0; e < b.object_count(); ++e)
          if (!b.hom(*meet(b, x, e), y).empty() && b.hom(e, c).empty()) largest = false;
        if (largest) implication = c;
      }
      auto out = multi_exponential(bp, x, y);
      REQUIRE(std::holds_alternative<MultiUniversalFamily>(out));
      const auto& fam = std::get<MultiUniversalFamily>(out);
      REQUIRE(fam.members.size() == 1);
      CHECK(fam.members[0].object == *implication);
      CHECK(verify_multi_universal(bp, fam));
      // Bijection counts computed directly.
      for (ObjectId c = 0; c < b.object_count(); ++c)
        CHECK(b.hom(bp.get(x, c)->apex, y).size() == b.hom(c, fam.members[0].object).size());
    }
  CHECK(std::get<MultiUniversalFamily>(multi_exponential(bp, obj(b, "a"), obj(b, "0"))).members[0].object ==
        obj(b, "b"));

  auto m = fixture("m3").category;
  ProductTable mp(m);
  CHECK(std::holds_alternative<NoFamily>(multi_exponential(mp, obj(m, "a"), obj(m, "0"))));

  auto ip = fixture("idempotent_pair").category;
  ProductTable ipp(ip);
  CHECK_THROWS_AS(multi_exponential(ipp, obj(ip, "b"), obj(ip, "b")), Error);
}

TEST_CASE("weak simple products") {
  auto b = fixture("bool4").category;
  ProductTable bp(b);
  const ObjectId top = obj(b, "1");
  // A terminal: A × X is X, and b itself is the answer up to the projection.
  for (MorphismId f = 0; f < b.morphism_count(); ++f) {
    const ObjectId x = b.cod(f);
    if (bp.get(top, x)->apex != x) continue;
    const auto w = weak_simple_product(bp, f, top, x);
    REQUIRE(w.has_value());
    CHECK(b.compose(f, w->epsilon) == bp.times(top, w->w));
    for (const auto& t : dependent_triples(bp, f, top, x)) CHECK(triple_covers(bp, top, *w, t));
  }
  // b = id on A × X: (X, id, id) is among the triples and covers them all.
  const ObjectId a = obj(b, "a");
  for (ObjectId x = 0; x < b.object_count(); ++x) {
    const ObjectId ax = bp.get(a, x)->apex;
    const auto triples = dependent_triples(bp, b.identity(ax), a, x);
    const auto w = weak_simple_product(bp, b.identity(ax), a, x);
    REQUIRE(w.has_value());
    CHECK(b.compose(b.identity(ax), w->epsilon) == bp.times(a, w->w));
    for (const auto& t : triples) CHECK(triple_covers(bp, a, *w, t));
  }
  // A nontrivial b: 0 → a × 1 over a; every triple is covered.
  const auto zb = b.hom(obj(b, "0"), a)[0];
  const auto ws = weak_simple_product(bp, zb, a, top);
  REQUIRE(ws.has_value());
  CHECK(ws->object == obj(b, "b"));
  const auto approx = approximate_dependent_product(bp, zb, a, top);
  REQUIRE(approx.size() == 1);
  CHECK(approx[0] == *ws);
}

TEST_CASE("approximate dependent products in M3") {
  auto m = fixture("m3").category;
  ProductTable mp(m);
  const ObjectId a = obj(m, "a");
  const ObjectId top = obj(m, "1");
  const MorphismId zb = m.hom(obj(m, "0"), a)[0];
  CHECK_FALSE(weak_simple_product(mp, zb, a, top).has_value());
  const auto approx = approximate_dependent_product(mp, zb, a, top);
  REQUIRE(approx.size() == 2);
  CHECK(approx[0].object == obj(m, "b"));
  CHECK(approx[1].object == obj(m, "c"));
  for (const auto& t : dependent_triples(mp, zb, a, top))
    CHECK((triple_covers(mp, a, approx[0], t) || triple_covers(mp, a, approx[1], t)));
}

TEST_CASE("pullbacks and generic proofs") {
  auto t = fixture("terminal").category;
  CHECK(is_generic_proof(t, 0).holds);

  auto c = fixture("chain2").category;
  const auto u = mor(c, "u");
  const auto pb = pullback(c, u, u);
  REQUIRE(pb.has_value());
  CHECK(pb->apex == 0);
  CHECK(is_pullback_square(c, u, u, pb->first, pb->second));
  const auto verdict = is_generic_proof(c, c.identity(1));
  CHECK_FALSE(verdict.holds);
  CHECK(verdict.witness == u);

  auto b = fixture("bool4").category;
  const auto bottom_top = b.hom(obj(b, "0"), obj(b, "1"))[0];
  const auto gp = is_generic_proof(b, bottom_top);
  // Oracle: for every f: Y → X some g: X → 1 with f and g*θ factoring through each other.
  bool expected = true;
  for (MorphismId f = 0; f < b.morphism_count(); ++f) {
    bool found = false;
    for (MorphismId g : b.hom(b.cod(f), obj(b, "1"))) {
      const auto p = pullback(b, g, bottom_top);
      found = found || (!b.hom(b.dom(f), p->apex).empty() && !b.hom(p->apex, b.dom(f)).empty());
    }
    expected = expected && found;
  }
  CHECK(gp.holds == expected);

  auto pp = fixture("parallel_pair").category;
  CHECK(first_cospan_without_pullback(pp).has_value());
  CHECK_THROWS_AS(is_generic_proof(pp, 0), Error);
}
