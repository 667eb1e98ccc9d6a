#include <doctest.h>

#include <random>
#include <variant>

#include "freecat/sigma.hpp"
#include "support.hpp"

using namespace freecat;

namespace {

ObjectId obj(const FiniteCategory& k, const char* name) { return *k.find_object(name); }
MorphismId mor(const FiniteCategory& k, const char* name) { return *k.find_morphism(name); }

SigmaMorphism random_morphism(const SigmaCompletion& sc, const SigmaObject& a, const SigmaObject& b,
                              std::mt19937& rng) {
  const auto all = sc.homs(a, b);
  if (all.empty()) return {};
  return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
}

// Left cancellation over every pair of maps from each test family.
bool mono_oracle(const SigmaCompletion& sc, const SigmaMorphism& f, std::size_t bound) {
  for (const auto& w : families_up_to(sc.base(), bound)) {
    const auto maps = sc.homs(w, f.dom);
    for (const auto& g : maps)
      for (const auto& h : maps)
        if (g != h && sc.compose(f, g) == sc.compose(f, h)) return false;
  }
  return true;
}

bool epi_oracle(const SigmaCompletion& sc, const SigmaMorphism& f, std::size_t bound) {
  for (const auto& w : families_up_to(sc.base(), bound)) {
    const auto maps = sc.homs(f.cod, w);
    for (const auto& g : maps)
      for (const auto& h : maps)
        if (g != h && sc.compose(g, f) == sc.compose(h, f)) return false;
  }
  return true;
}

// Pullback UMP by direct enumeration of competing squares.
bool pullback_oracle(const SigmaCompletion& sc, const SigmaMorphism& f, const SigmaMorphism& g,
                     const SigmaPullback& p, std::size_t bound) {
  if (sc.compose(f, p.first) != sc.compose(g, p.second)) return false;
  for (const auto& w : families_up_to(sc.base(), bound))
    for (const auto& x : sc.homs(w, f.dom))
      for (const auto& y : sc.homs(w, g.dom)) {
        if (sc.compose(f, x) != sc.compose(g, y)) continue;
        int hits = 0;
        for (const auto& h : sc.homs(w, p.object))
          hits += sc.compose(p.first, h) == x && sc.compose(p.second, h) == y;
        if (hits != 1) return false;
      }
  return true;
}

}  // namespace

TEST_CASE("composition is associative and unital on random bounded morphisms") {
  std::mt19937 rng(7);
  for (const char* name : {"chain2", "idempotent_pair", "z2", "bool4"}) {
    auto k = fixture(name).category;
    SigmaCompletion sc(k);
    const auto fams = families_up_to(k, 2);
    for (int trial = 0; trial < 200; ++trial) {
      std::uniform_int_distribution<std::size_t> pick(0, fams.size() - 1);
      const auto& a = fams[pick(rng)];
      const auto& b = fams[pick(rng)];
      const auto& c = fams[pick(rng)];
      const auto& d = fams[pick(rng)];
      if (sc.homs(a, b).empty() || sc.homs(b, c).empty() || sc.homs(c, d).empty()) continue;
      const auto f = random_morphism(sc, a, b, rng);
      const auto g = random_morphism(sc, b, c, rng);
      const auto h = random_morphism(sc, c, d, rng);
      CHECK(sc.compose(h, sc.compose(g, f)) == sc.compose(sc.compose(h, g), f));
      CHECK(sc.compose(f, sc.identity(a)) == f);
      CHECK(sc.compose(sc.identity(b), f) == f);
    }
  }
}

TEST_CASE("index functions compose as set maps") {
  auto c = fixture("chain2").category;
  SigmaCompletion sc(c);
  const SigmaObject two{{0, 0}}, one{{1}}, pair{{1, 1}};
  const SigmaMorphism f{two, one, {0, 0}, {mor(c, "u"), mor(c, "u")}};
  const SigmaMorphism g{one, pair, {1}, {c.identity(1)}};
  const auto gf = sc.compose(g, f);
  CHECK(gf.index == std::vector<int>{1, 1});
  CHECK(gf.components == std::vector<MorphismId>{mor(c, "u"), mor(c, "u")});
  // Singleton families compose as in K.
  const auto e = sc.embed_morphism(mor(c, "u"));
  CHECK(sc.compose(sc.embed_morphism(c.identity(1)), e) == e);
  CHECK_THROWS_AS(sc.compose(f, g), Error);
}

TEST_CASE("coproducts and disjointness") {
  auto c = fixture("chain2").category;
  SigmaCompletion sc(c);
  const SigmaObject parts[] = {sc.embed(0), sc.embed(1)};
  const auto sum = sc.coproduct(parts);
  CHECK(sum.object.family == std::vector<ObjectId>{0, 1});
  CHECK(sc.is_mono(sum.injections[0]));
  CHECK(sc.is_mono(sum.injections[1]));
  const auto meet = sc.pullback(sum.injections[0], sum.injections[1]);
  REQUIRE(std::holds_alternative<SigmaPullback>(meet));
  CHECK(std::get<SigmaPullback>(meet).object.size() == 0);
  CHECK(sc.coproduct(std::span<const SigmaObject>{}).object.size() == 0);
}

TEST_CASE("pullbacks") {
  auto c = fixture("chain2").category;
  SigmaCompletion sc(c);
  const auto u = sc.embed_morphism(mor(c, "u"));
  const auto out = sc.pullback(u, u);
  REQUIRE(std::holds_alternative<SigmaPullback>(out));
  const auto& p = std::get<SigmaPullback>(out);
  CHECK(p.object.family == std::vector<ObjectId>{0});
  CHECK(pullback_oracle(sc, u, u, p, 3));

  // Along an identity: dom f up to iso.
  for (const auto& a : families_up_to(c, 2))
    for (const auto& b : families_up_to(c, 2))
      for (const auto& f : sc.homs(a, b)) {
        const auto q = sc.pullback(f, sc.identity(b));
        REQUIRE(std::holds_alternative<SigmaPullback>(q));
        CHECK(sc.find_iso(std::get<SigmaPullback>(q).object, a).has_value());
        CHECK(pullback_oracle(sc, f, sc.identity(b), std::get<SigmaPullback>(q), 2));
      }

  auto pp = fixture("parallel_pair").category;
  SigmaCompletion sp(pp);
  const auto s = sp.embed_morphism(mor(pp, "s"));
  const auto t = sp.embed_morphism(mor(pp, "t"));
  const auto none = sp.pullback(s, t);
  // The multi-pullback of s, t is empty, so the pullback is the empty family.
  REQUIRE(std::holds_alternative<SigmaPullback>(none));
  CHECK(std::get<SigmaPullback>(none).object.size() == 0);
  CHECK(pullback_oracle(sp, s, t, std::get<SigmaPullback>(none), 2));
}

TEST_CASE("monos and epis agree with cancellation") {
  for (const char* name : {"chain2", "idempotent", "z2", "idempotent_pair"}) {
    auto k = fixture(name).category;
    SigmaCompletion sc(k);
    for (const auto& a : families_up_to(k, 2))
      for (const auto& b : families_up_to(k, 2))
        for (const auto& f : sc.homs(a, b)) {
          CHECK(sc.is_mono(f) == mono_oracle(sc, f, 2));
          CHECK(sc.is_epi(f) == epi_oracle(sc, f, 2));
        }
  }
  auto c = fixture("chain2").category;
  SigmaCompletion sc(c);
  const SigmaMorphism fold{SigmaObject{{1, 1}}, SigmaObject{{1}}, {0, 0}, {c.identity(1), c.identity(1)}};
  CHECK(sc.is_epi(fold));
  CHECK_FALSE(sc.is_mono(fold));
}

TEST_CASE("products of families") {
  auto c = fixture("chain2").category;
  SigmaCompletion sc(c);
  const SigmaObject ab{{0, 1}};
  const SigmaObject factors[] = {ab, ab};
  const auto out = sc.product(factors);
  REQUIRE(std::holds_alternative<SigmaProduct>(out));
  const auto& p = std::get<SigmaProduct>(out);
  CHECK(p.object.family == std::vector<ObjectId>{0, 0, 0, 1});
  for (const auto& w : families_up_to(c, 2)) {
    const auto to_a = sc.homs(w, ab);
    CHECK(sc.hom_count(w, p.object) == to_a.size() * to_a.size());
    for (const auto& f : to_a)
      for (const auto& g : to_a) {
        const SigmaMorphism legs[] = {f, g};
        const auto m = sc.mediate(p, w, legs);
        CHECK(sc.compose(p.projections[0], m) == f);
        CHECK(sc.compose(p.projections[1], m) == g);
      }
  }

  auto b = fixture("bool4").category;
  SigmaCompletion sb(b);
  const SigmaObject single[] = {sb.embed(obj(b, "a")), sb.embed(obj(b, "b"))};
  const auto ps = sb.product(single);
  REQUIRE(std::holds_alternative<SigmaProduct>(ps));
  CHECK(std::get<SigmaProduct>(ps).object.family == std::vector<ObjectId>{obj(b, "0")});

  auto ip = fixture("idempotent_pair").category;
  SigmaCompletion si(ip);
  const SigmaObject bb[] = {si.embed(obj(ip, "b")), si.embed(obj(ip, "b"))};
  const auto none = si.product(bb);
  REQUIRE(std::holds_alternative<NoProduct>(none));
  const auto& np = std::get<NoProduct>(none);
  CHECK(np.choice == std::vector<int>{0, 0});
  CHECK(np.witness.apex == obj(ip, "a"));
  CHECK(np.witness.legs == std::vector<MorphismId>{mor(ip, "u"), mor(ip, "v")});
}

TEST_CASE("exponentials") {
  auto b = fixture("bool4").category;
  SigmaCompletion sb(b);
  const auto out = sb.exponential(sb.embed(obj(b, "a")), sb.embed(obj(b, "0")));
  REQUIRE(std::holds_alternative<SigmaExponential>(out));
  const auto& e = std::get<SigmaExponential>(out);
  CHECK(e.object().family == std::vector<ObjectId>{obj(b, "b")});
  for (const auto& w : families_up_to(b, 2)) CHECK(sb.exponential_bijection(e, w));

  // Empty base: the empty product, i.e. the terminal family.
  const auto empty = sb.exponential(SigmaObject{}, sb.embed(obj(b, "0")));
  REQUIRE(std::holds_alternative<SigmaExponential>(empty));
  CHECK(std::get<SigmaExponential>(empty).object().family == std::vector<ObjectId>{obj(b, "1")});

  auto m = fixture("m3").category;
  SigmaCompletion sm(m);
  const auto none = sm.exponential(sm.embed(obj(m, "a")), sm.embed(obj(m, "0")));
  REQUIRE(std::holds_alternative<NoExponential>(none));
  CHECK(std::get<NoExponential>(none).kind == NoExponential::Kind::NoFamily);
}

TEST_CASE("classifier over the terminal category matches subsets") {
  auto t = fixture("terminal").category;
  SigmaCompletion sc(t);
  const auto cl = sc.subobject_classifier(0);
  CHECK(cl.omega.size() == 2);
  CHECK(cl.truth.index == std::vector<int>{0});
  for (std::size_t n = 0; n <= 4; ++n) {
    const SigmaObject b{std::vector<ObjectId>(n, 0)};
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      SigmaMorphism m;
      m.cod = b;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) {
          m.dom.family.push_back(0);
          m.index.push_back(static_cast<int>(i));
          m.components.push_back(0);
        }
      const auto chi = sc.characteristic(cl, m);
      for (std::size_t i = 0; i < n; ++i) CHECK(chi.index[i] == ((mask >> i & 1) ? 0 : 1));
      CHECK(sc.classifies(cl, chi, m));
      int count = 0;
      for (const auto& other : sc.homs(b, cl.omega)) count += sc.classifies(cl, other, m);
      CHECK(count == 1);
    }
  }
  // The identity is classified by the constant map at the Ω member.
  const SigmaObject three{{0, 0, 0}};
  const auto chi = sc.characteristic(cl, sc.identity(three));
  CHECK(chi.index == std::vector<int>{0, 0, 0});
}

TEST_CASE("the 2-chain has no classifier") {
  auto c = fixture("chain2").category;
  CHECK_FALSE(find_classifier(c).has_value());
  SigmaCompletion sc(c);
  try {
    (void)sc.subobject_classifier(c.identity(1));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAClassifier);
  }
  auto pp = fixture("parallel_pair").category;
  SigmaCompletion sp(pp);
  CHECK_THROWS_AS((void)sp.subobject_classifier(0), Error);
}

TEST_CASE("the embedding is full, faithful and keeps products and pullbacks") {
  for (const char* name : {"chain2", "bool4", "idempotent_pair", "square"}) {
    auto k = fixture(name).category;
    SigmaCompletion sc(k);
    for (ObjectId a = 0; a < k.object_count(); ++a)
      for (ObjectId b = 0; b < k.object_count(); ++b) {
        const auto maps = sc.homs(sc.embed(a), sc.embed(b));
        REQUIRE(maps.size() == k.hom(a, b).size());
        for (std::size_t i = 0; i < maps.size(); ++i) CHECK(maps[i] == sc.embed_morphism(k.hom(a, b)[i]));
        if (const auto& p = sc.products().get(a, b)) {
          const SigmaObject f[] = {sc.embed(a), sc.embed(b)};
          const auto out = sc.product(f);
          REQUIRE(std::holds_alternative<SigmaProduct>(out));
          CHECK(std::get<SigmaProduct>(out).object.family == std::vector<ObjectId>{p->apex});
        }
      }
    for (MorphismId f = 0; f < k.morphism_count(); ++f)
      for (MorphismId g = 0; g < k.morphism_count(); ++g) {
        if (k.cod(f) != k.cod(g)) continue;
        const auto p = pullback(k, f, g);
        if (!p) continue;
        const auto q = sc.pullback(sc.embed_morphism(f), sc.embed_morphism(g));
        REQUIRE(std::holds_alternative<SigmaPullback>(q));
        CHECK(std::get<SigmaPullback>(q).object.family == std::vector<ObjectId>{p->apex});
      }
  }
}

TEST_CASE("families over the terminal category count like finite sets") {
  auto t = fixture("terminal").category;
  SigmaCompletion sc(t);
  for (std::size_t m = 0; m <= 4; ++m)
    for (std::size_t n = 0; n <= 4; ++n) {
      std::size_t expected = 1;
      for (std::size_t i = 0; i < m; ++i) expected *= n;
      CHECK(sc.hom_count(SigmaObject{std::vector<ObjectId>(m, 0)}, SigmaObject{std::vector<ObjectId>(n, 0)}) ==
            expected);
    }
  CHECK(families_up_to(t, 4).size() == 5);
}

TEST_CASE("ill-typed data is rejected") {
  auto c = fixture("chain2").category;
  SigmaCompletion sc(c);
  CHECK_THROWS_AS(sc.check(SigmaObject{{5}}), Error);
  const SigmaMorphism bad{SigmaObject{{1}}, SigmaObject{{0}}, {0}, {mor(c, "u")}};
  CHECK_THROWS_AS(sc.check(bad), Error);
}
