#include <doctest.h>

#include <map>

#include "freecat/category.hpp"
#include "support.hpp"

using namespace freecat;

namespace {

const char* kFixtures[] = {"terminal", "chain2",   "bool2", "discrete2", "parallel_pair", "z2",
                           "idempotent", "idempotent_pair", "bool4", "m3", "square"};

bool mono_by_cancellation(const FiniteCategory& k, MorphismId f) {
  for (int w = 0; w < k.object_count(); ++w) {
    auto maps = k.hom(w, k.dom(f));
    for (MorphismId g : maps)
      for (MorphismId h : maps)
        if (g != h && k.compose(f, g) == k.compose(f, h)) return false;
  }
  return true;
}

bool epi_by_cancellation(const FiniteCategory& k, MorphismId f) {
  for (int w = 0; w < k.object_count(); ++w) {
    auto maps = k.hom(k.cod(f), w);
    for (MorphismId g : maps)
      for (MorphismId h : maps)
        if (g != h && k.compose(g, f) == k.compose(h, f)) return false;
  }
  return true;
}

RawCategory idempotent_raw() {
  RawCategory r;
  r.object_count = 1;
  r.morphisms = {{0, 0}, {0, 0}};
  r.identity = {0};
  r.compose = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
  return r;
}

}  // namespace

TEST_CASE("validation accepts the small fixtures") {
  auto t = fixture("terminal").category;
  CHECK(t.object_count() == 1);
  CHECK(t.morphism_count() == 1);
  auto c = fixture("chain2").category;
  CHECK(c.object_count() == 2);
  CHECK(c.morphism_count() == 3);
  for (const char* name : kFixtures) CHECK_NOTHROW(fixture(name));
}

TEST_CASE("missing composite is a malformed table") {
  auto r = idempotent_raw();
  r.compose.pop_back();
  auto vs = FiniteCategory::violations(r);
  REQUIRE_FALSE(vs.empty());
  CHECK(vs.front().kind == Violation::Kind::MissingComposite);
  try {
    FiniteCategory::validate(r);
    FAIL("expected an error");
  } catch (const CategoryError& e) {
    CHECK(e.code() == ErrorCode::MalformedTable);
  }
}

TEST_CASE("law violations name the offending morphisms") {
  // e∘e = id breaks nothing, but declaring id∘e = id breaks the identity law.
  auto r = idempotent_raw();
  r.compose[1] = {0, 1, 0};
  try {
    FiniteCategory::validate(r);
    FAIL("expected an error");
  } catch (const CategoryError& e) {
    CHECK(e.code() == ErrorCode::LawViolation);
    REQUIRE_FALSE(e.violations().empty());
    CHECK(e.violations().front().kind == Violation::Kind::IdentityLaw);
  }
}

TEST_CASE("every one-object table on three morphisms is judged by associativity") {
  // Morphisms id, x, y; the four products among x and y range over all 81 tables.
  for (int code = 0; code < 81; ++code) {
    int t[3][3];
    for (int f = 0; f < 3; ++f) t[0][f] = f, t[f][0] = f;
    int c = code;
    for (int g = 1; g < 3; ++g)
      for (int f = 1; f < 3; ++f) t[g][f] = c % 3, c /= 3;
    RawCategory r;
    r.object_count = 1;
    r.morphisms = {{0, 0}, {0, 0}, {0, 0}};
    r.identity = {0};
    for (int g = 0; g < 3; ++g)
      for (int f = 0; f < 3; ++f) r.compose.push_back({g, f, t[g][f]});
    bool assoc = true;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int d = 0; d < 3; ++d) assoc = assoc && t[a][t[b][d]] == t[t[a][b]][d];
    const auto vs = FiniteCategory::violations(r);
    CHECK(vs.empty() == assoc);
    if (!assoc) {
      REQUIRE_FALSE(vs.empty());
      CHECK(vs.front().kind == Violation::Kind::Associativity);
    }
  }
}

TEST_CASE("fuzzed composition tables are rejected exactly when a law breaks") {
  // Every single-entry mutation of a valid table is checked against a direct law oracle.
  for (const char* name : {"idempotent", "z2", "idempotent_pair", "chain2", "parallel_pair"}) {
    const auto base = fixture(name).category.raw();
    for (std::size_t i = 0; i < base.compose.size(); ++i)
      for (int h = 0; h < static_cast<int>(base.morphisms.size()); ++h) {
        RawCategory r = base;
        if (r.compose[i].h == h) continue;
        r.compose[i].h = h;
        const auto& e = r.compose[i];
        const bool typed = r.morphisms[h].dom == r.morphisms[e.f].dom && r.morphisms[h].cod == r.morphisms[e.g].cod;
        bool lawful = typed;
        if (typed) {
          std::map<std::pair<int, int>, int> table;
          for (const auto& c : r.compose) table[{c.g, c.f}] = c.h;
          const int m = static_cast<int>(r.morphisms.size());
          for (int f = 0; f < m && lawful; ++f) {
            lawful = table[{r.identity[r.morphisms[f].cod], f}] == f && table[{f, r.identity[r.morphisms[f].dom]}] == f;
            for (int g = 0; g < m && lawful; ++g)
              for (int k = 0; k < m && lawful; ++k) {
                if (r.morphisms[f].cod != r.morphisms[g].dom || r.morphisms[g].cod != r.morphisms[k].dom) continue;
                lawful = table[{k, table[{g, f}]}] == table[{table[{k, g}], f}];
              }
          }
        }
        CHECK(FiniteCategory::violations(r).empty() == lawful);
      }
  }
}

TEST_CASE("classification agrees with cancellation on every fixture") {
  for (const char* name : kFixtures) {
    auto k = fixture(name).category;
    for (int f = 0; f < k.morphism_count(); ++f) {
      auto c = classify_morphism(k, f);
      CHECK(c.mono == mono_by_cancellation(k, f));
      CHECK(c.epi == epi_by_cancellation(k, f));
      CHECK(c.iso == (c.split_mono && c.split_epi));
      if (k.is_identity(f)) CHECK(c == MorphismClass{true, true, true, true, true});
    }
  }
  auto p = fixture("bool4").category;
  for (int f = 0; f < p.morphism_count(); ++f) {
    CHECK(classify_morphism(p, f).mono);
    CHECK(classify_morphism(p, f).epi);
  }
  auto m = fixture("idempotent").category;
  auto e = *m.find_morphism("e");
  CHECK_FALSE(classify_morphism(m, e).mono);
  CHECK_FALSE(classify_morphism(m, e).epi);
  auto z = fixture("z2").category;
  CHECK(classify_morphism(z, *z.find_morphism("g")).iso);
  CHECK_THROWS_AS(classify_morphism(m, 7), Error);
}

TEST_CASE("slices") {
  auto t = fixture("terminal").category;
  auto st = slice_category(t, 0);
  CHECK(find_isomorphism(st.category, t).has_value());

  auto c = fixture("chain2").category;
  CHECK(slice_category(c, 1).category.object_count() == 2);
  CHECK(slice_category(c, 0).category.object_count() == 1);

  for (const char* name : kFixtures) {
    auto k = fixture(name).category;
    for (int a = 0; a < k.object_count(); ++a) {
      auto s = slice_category(k, a);
      int into = 0;
      for (int f = 0; f < k.morphism_count(); ++f) into += k.cod(f) == a;
      CHECK(s.category.object_count() == into);
      CHECK(is_functor(s.category, k, s.projection));
      CHECK(is_faithful(s.category, s.projection));
      if (is_terminal(k, a)) CHECK(find_isomorphism(s.category, k).has_value());
    }
  }
  CHECK_THROWS_AS(slice_category(c, 5), Error);
}

TEST_CASE("strict initial objects") {
  auto b = fixture("bool4").category;
  CHECK(is_strict_initial(b, *b.find_object("0")));
  CHECK_FALSE(is_strict_initial(b, *b.find_object("a")));
  auto c = fixture("chain2").category;
  CHECK_FALSE(is_strict_initial(c, 1));
  CHECK(is_strict_initial(c, 0));
  CHECK(is_strict_initial(fixture("terminal").category, 0));
  // The idempotent monoid's object is not initial at all.
  CHECK_FALSE(is_strict_initial(fixture("idempotent").category, 0));
}

TEST_CASE("duals") {
  auto t = fixture("terminal").category;
  CHECK(find_isomorphism(dual_category(t), t).has_value());
  auto c = fixture("chain2").category;
  auto d = dual_category(c);
  auto u = *c.find_morphism("u");
  CHECK(d.dom(u) == 1);
  CHECK(d.cod(u) == 0);
  for (const char* name : kFixtures) {
    auto k = fixture(name).category;
    auto dd = dual_category(dual_category(k));
    CHECK(dd.raw().compose.size() == k.raw().compose.size());
    CHECK(find_isomorphism(dd, k).has_value());
  }
  auto p = fixture("parallel_pair").category;
  CHECK_FALSE(find_isomorphism(dual_category(p), fixture("chain2").category).has_value());
}

TEST_CASE("isomorphism search separates non-isomorphic fixtures") {
  CHECK(find_isomorphism(fixture("chain2").category, fixture("bool2").category).has_value());
  CHECK(find_isomorphism(fixture("bool4").category, fixture("square").category).has_value());
  CHECK_FALSE(find_isomorphism(fixture("z2").category, fixture("idempotent").category).has_value());
  CHECK_FALSE(find_isomorphism(fixture("m3").category, fixture("bool4").category).has_value());
}

TEST_CASE("shape enumeration up to isomorphism") {
  // Hand count: empty; one object with no arrow, an involution, or an idempotent.
  CHECK(enumerate_shapes(1, 1).size() == 4);
  // Plus: two discrete objects; an arrow between two objects; an involution or
  // an idempotent beside a second object.
  CHECK(enumerate_shapes(2, 1).size() == 8);
  auto shapes = enumerate_shapes(3, 3);
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    CHECK(shapes[i].object_count() <= 3);
    for (std::size_t j = i + 1; j < shapes.size(); ++j)
      CHECK_FALSE(find_isomorphism(shapes[i], shapes[j]).has_value());
  }
  for (const char* name : {"terminal", "chain2", "discrete2", "parallel_pair", "z2", "idempotent", "idempotent_pair"}) {
    auto k = fixture(name).category;
    int hits = 0;
    for (const auto& s : shapes) hits += find_isomorphism(s, k).has_value();
    CHECK(hits == 1);
  }
}

TEST_CASE("functor enumeration") {
  auto c = fixture("chain2").category;
  auto p = fixture("parallel_pair").category;
  // Functors from the arrow category pick a morphism.
  CHECK(enumerate_functors(c, p).size() == static_cast<std::size_t>(p.morphism_count()));
  for (const auto& f : enumerate_functors(p, c)) CHECK(is_functor(p, c, f));
  CHECK(enumerate_functors(p, c).size() == 3);
}
