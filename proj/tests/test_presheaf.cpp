#include <doctest.h>

#include <set>

#include "freecat/io.hpp"
#include "freecat/presheaf.hpp"
#include "support.hpp"

using namespace freecat;

namespace {

// Subsets of the elements closed under the action, by bitmask over all elements.
std::size_t brute_subfunctors(const FiniteCategory& k, const Presheaf& f) {
  std::vector<std::pair<ObjectId, int>> elems;
  for (ObjectId a = 0; a < k.object_count(); ++a)
    for (int x = 0; x < f.sizes[a]; ++x) elems.emplace_back(a, x);
  std::size_t count = 0;
  for (unsigned mask = 0; mask < (1u << elems.size()); ++mask) {
    auto in = [&](ObjectId a, int x) {
      for (std::size_t i = 0; i < elems.size(); ++i)
        if (elems[i] == std::pair{a, x}) return (mask >> i & 1) != 0;
      return false;
    };
    bool closed = true;
    for (MorphismId h = 0; h < k.morphism_count() && closed; ++h)
      for (int y = 0; y < f.sizes[k.cod(h)] && closed; ++y)
        if (in(k.cod(h), y) && !in(k.dom(h), f.action[h][y])) closed = false;
    count += closed;
  }
  return count;
}

// Sieves on A: sets of arrows into A closed under precomposition.
std::size_t brute_sieves(const FiniteCategory& k, ObjectId a) {
  std::vector<MorphismId> into;
  for (MorphismId h = 0; h < k.morphism_count(); ++h)
    if (k.cod(h) == a) into.push_back(h);
  std::size_t count = 0;
  for (unsigned mask = 0; mask < (1u << into.size()); ++mask) {
    std::set<MorphismId> s;
    for (std::size_t i = 0; i < into.size(); ++i)
      if (mask >> i & 1) s.insert(into[i]);
    bool closed = true;
    for (MorphismId h : s)
      for (MorphismId g = 0; g < k.morphism_count(); ++g)
        if (k.cod(g) == k.dom(h) && !s.count(k.compose(h, g))) closed = false;
    count += closed;
  }
  return count;
}

std::size_t bell(int n) {
  static const std::size_t b[] = {1, 1, 2, 5, 15, 52};
  return b[n];
}

Presheaf constant_set(int n) { return Presheaf{{n}, {[&] {
                                                  std::vector<int> id(n);
                                                  for (int i = 0; i < n; ++i) id[i] = i;
                                                  return id;
                                                }()}}; }

const char* const small_fixtures[] = {"terminal", "chain2", "parallel_pair", "square", "discrete2"};

}  // namespace

TEST_CASE("representables and the Yoneda count") {
  for (const char* name : small_fixtures) {
    auto k = fixture(name).category;
    for (ObjectId a = 0; a < k.object_count(); ++a) {
      const auto y = yoneda(k, a);
      CHECK(presheaf_violations(k, y).empty());
      for (ObjectId x = 0; x < k.object_count(); ++x)
        CHECK(static_cast<std::size_t>(y.sizes[x]) == k.hom(x, a).size());
      for (const auto& f : enumerate_presheaves(k, 2, 4))
        CHECK(count_nat_transformations(k, y, f) == static_cast<std::size_t>(f.sizes[a]));
    }
    for (MorphismId h = 0; h < k.morphism_count(); ++h)
      CHECK(is_natural(k, yoneda(k, k.dom(h)), yoneda(k, k.cod(h)), yoneda_map(k, h)));
  }
}

TEST_CASE("action laws are validated") {
  auto c = fixture("chain2").category;
  const auto f = parse_presheaf(c, read_file(fixture_path("chain2_pair.psh")));
  CHECK(presheaf_violations(c, f).empty());
  Presheaf bad = f;
  bad.action[0] = {1, 0};  // identity acting non-trivially
  CHECK_FALSE(presheaf_violations(c, bad).empty());
  CHECK_THROWS_AS(check_presheaf(c, bad), Error);
  bad = f;
  bad.action[2] = {0, 5};
  CHECK_THROWS_AS(check_presheaf(c, bad), Error);

  auto sq = fixture("square").category;
  for (const auto& p : enumerate_presheaves(sq, 2, 5)) CHECK(presheaf_violations(sq, p).empty());
}

TEST_CASE("limits and colimits are pointwise") {
  auto c = fixture("chain2").category;
  const auto pool = presheaves_up_to_iso(c, 2);
  for (const auto& f : pool)
    for (const auto& g : pool) {
      const auto p = binary_product(c, f, g);
      const auto s = binary_coproduct(c, f, g);
      for (ObjectId a = 0; a < 2; ++a) {
        CHECK(p.apex.sizes[a] == f.sizes[a] * g.sizes[a]);
        CHECK(s.apex.sizes[a] == f.sizes[a] + g.sizes[a]);
      }
      const Presheaf pair[] = {f, g};
      const auto d = discrete_presheaf_diagram(c, pair);
      CHECK(limit_ump_holds(c, d, p, pool));
      CHECK(colimit_ump_holds(c, d, s, pool));
      CHECK(presheaf_limit(c, d).apex == p.apex);

      // Equalizers: elements where the two maps agree.
      const auto maps = nat_transformations(c, f, g);
      for (const auto& a : maps)
        for (const auto& b : maps) {
          const auto pd = parallel_presheaf_diagram(f, g, a, b);
          const auto eq = presheaf_limit(c, pd);
          for (ObjectId o = 0; o < 2; ++o) {
            int agree = 0;
            for (int x = 0; x < f.sizes[o]; ++x) agree += a.components[o][x] == b.components[o][x];
            CHECK(eq.apex.sizes[o] == agree);
          }
          CHECK(limit_ump_holds(c, pd, eq, pool));
          CHECK(colimit_ump_holds(c, pd, presheaf_colimit(c, pd), pool));
        }
    }
}

TEST_CASE("exponentials") {
  auto t = fixture("terminal").category;
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      const auto e = presheaf_exponential(t, constant_set(m), constant_set(n));
      int expected = 1;
      for (int i = 0; i < m; ++i) expected *= n;
      CHECK(e.object.sizes[0] == expected);
    }

  for (const char* name : {"chain2", "parallel_pair"}) {
    auto k = fixture(name).category;
    const auto pool = presheaves_up_to_iso(k, 2, 3);
    const auto one = terminal_presheaf(k);
    for (const auto& g : pool) {
      const auto e = presheaf_exponential(k, one, g);
      CHECK(find_presheaf_iso(k, e.object, g).has_value());
      for (const auto& f : pool) {
        const auto ef = presheaf_exponential(k, f, g);
        CHECK(presheaf_violations(k, ef.object).empty());
        for (const auto& h : pool) CHECK(exponential_ump_holds(k, f, g, ef, h));
      }
    }
  }
}

TEST_CASE("subfunctors and sieves") {
  for (const char* name : small_fixtures) {
    auto k = fixture(name).category;
    const auto om = omega(k);
    for (ObjectId a = 0; a < k.object_count(); ++a) {
      CHECK(static_cast<std::size_t>(om.object.sizes[a]) == brute_sieves(k, a));
      CHECK(om.sieves[a].size() == subfunctors(k, yoneda(k, a)).size());
    }
    CHECK(presheaf_violations(k, om.object).empty());
    for (const auto& f : presheaves_up_to_iso(k, 2, 4))
      CHECK(subfunctors(k, f).size() == brute_subfunctors(k, f));
  }
  auto c = fixture("chain2").category;
  CHECK(omega(c).object.sizes == std::vector<int>{2, 3});
  CHECK(omega(fixture("terminal").category).object.sizes == std::vector<int>{2});
}

TEST_CASE("the sieve presheaf classifies subobjects") {
  for (const char* name : small_fixtures) {
    auto k = fixture(name).category;
    const auto om = omega(k);
    for (const auto& g : presheaves_up_to_iso(k, 2, 4)) {
      const auto r = classification_bijection(k, om, g);
      CHECK(r.bijective);
      CHECK(r.subobjects == brute_subfunctors(k, g));
      CHECK(r.maps_to_omega == count_nat_transformations(k, g, om.object));
      for (const auto& s : subfunctors(k, g)) {
        const auto chi = classify_subfunctor(k, om, g, s);
        CHECK(pull_back_truth(k, om, g, chi) == s);
        const auto sub = restrict_to(k, g, s);
        CHECK(classify_subobject(k, om, g, sub.inclusion, sub.object) == chi);
      }
    }
  }
  auto t = fixture("terminal").category;
  const auto om = omega(t);
  const NatTrans fold{{{0, 0}}};
  CHECK_THROWS_AS(classify_subobject(t, om, constant_set(1), fold, constant_set(2)), Error);
}

TEST_CASE("monos and epis are regular") {
  for (const char* name : {"chain2", "parallel_pair", "terminal"}) {
    auto k = fixture(name).category;
    const auto pool = presheaves_up_to_iso(k, 2, 3);
    for (const auto& f : pool)
      for (const auto& g : pool)
        for (const auto& a : nat_transformations(k, f, g)) {
          const auto v = regularity_suite(k, f, g, a);
          CHECK(v.mono_regular.has_value() == is_pointwise_injective(a, g));
          CHECK(v.epi_regular.has_value() == is_pointwise_surjective(a, g));
          if (v.mono_regular) CHECK(*v.mono_regular);
          if (v.epi_regular) CHECK(*v.epi_regular);
        }
  }
}

TEST_CASE("equivalence relations are effective and match congruences") {
  auto t = fixture("terminal").category;
  for (int n = 0; n <= 4; ++n) {
    const auto f = constant_set(n);
    CHECK(congruences(t, f).size() == bell(n));
    CHECK(equivalence_relations(t, f).size() == bell(n));
  }
  // 2+1 on a three-element set.
  const auto f = constant_set(3);
  Subfunctor r{{std::vector<char>(9, 0)}};
  for (int x = 0; x < 3; ++x) r.members[0][x * 3 + x] = 1;
  r.members[0][0 * 3 + 1] = r.members[0][1 * 3 + 0] = 1;
  CHECK(effective_equivalence_check(t, f, r));
  Subfunctor bad = r;
  bad.members[0][1 * 3 + 0] = 0;
  CHECK_THROWS_AS(effective_equivalence_check(t, f, bad), Error);

  for (const char* name : {"chain2", "parallel_pair", "square"}) {
    auto k = fixture(name).category;
    for (const auto& p : presheaves_up_to_iso(k, 2, 4)) {
      const auto rels = equivalence_relations(k, p);
      CHECK(rels.size() == congruences(k, p).size());
      for (const auto& rel : rels) CHECK(effective_equivalence_check(k, p, rel));
    }
  }
}

TEST_CASE("quotients by congruences") {
  for (const char* name : {"chain2", "parallel_pair"}) {
    auto k = fixture(name).category;
    for (const auto& p : presheaves_up_to_iso(k, 2, 4))
      for (const auto& c : congruences(k, p)) {
        const auto q = quotient(k, p, c);
        CHECK(presheaf_violations(k, q.object).empty());
        CHECK(is_natural(k, p, q.object, q.projection));
        CHECK(is_pointwise_surjective(q.projection, q.object));
        CHECK(kernel(q.projection, p) == c);
      }
  }
  auto c = fixture("chain2").category;
  const auto f = parse_presheaf(c, read_file(fixture_path("chain2_pair.psh")));
  // Identify the two elements over 1 but not over 0: not closed.
  CHECK_THROWS_AS(quotient(c, f, Congruence{{0, 1}, {0, 0}}), Error);
}

TEST_CASE("extensive coproducts") {
  for (const char* name : {"chain2", "parallel_pair"}) {
    auto k = fixture(name).category;
    const auto pool = presheaves_up_to_iso(k, 2, 2);
    for (const auto& f : pool)
      for (const auto& g : pool) {
        const auto r = coproduct_extensivity(k, f, g, pool);
        CHECK(r.disjoint);
        CHECK(r.universal);
      }
  }
}

TEST_CASE("category of elements") {
  for (const char* name : small_fixtures) {
    auto k = fixture(name).category;
    for (const auto& f : presheaves_up_to_iso(k, 2, 4)) {
      const auto el = elements_category(k, f);
      CHECK(el.category.object_count() == static_cast<std::size_t>(f.total()));
      std::size_t arrows = 0;
      for (MorphismId h = 0; h < k.morphism_count(); ++h) arrows += f.sizes[k.cod(h)];
      CHECK(el.category.morphism_count() == arrows);
      const auto w = weakly_initial_set(el);
      CHECK(covers_elements(el, w));
      for (std::size_t i = 0; i < w.size(); ++i) {
        std::vector<int> fewer = w;
        fewer.erase(fewer.begin() + static_cast<long>(i));
        CHECK_FALSE(covers_elements(el, fewer));
      }
      CHECK(elements_reconstruction_holds(k, f));
    }
  }
  auto c = fixture("chain2").category;
  const auto el = elements_category(c, yoneda(c, 1));
  const auto w = weakly_initial_set(el);
  REQUIRE(w.size() == 1);
}

TEST_CASE("subobject and quotient census") {
  auto t = fixture("terminal").category;
  const auto two = subobject_quotient_census(t, constant_set(2));
  CHECK(two.subobjects == 4);
  CHECK(two.quotients == 2);
  CHECK(two.pushouts_distinct);
  const auto none = subobject_quotient_census(t, constant_set(0));
  CHECK(none.subobjects == 1);
  CHECK(none.quotients == 1);
  CHECK(none.pushouts_distinct);

  auto c = fixture("chain2").category;
  const auto y1 = subobject_quotient_census(c, yoneda(c, 1));
  CHECK(y1.subobjects == 3);
  CHECK(y1.pushouts_distinct);
  CHECK_FALSE(y1.collision.has_value());

  // The pushout of s along itself keeps F's elements outside s apart.
  const auto f = constant_set(3);
  for (const auto& s : subfunctors(t, f)) {
    const auto q = pushout_quotient(t, f, s);
    std::set<int> classes(q[0].begin(), q[0].end());
    CHECK(static_cast<int>(classes.size()) == 3 + 3 - s.total());
  }
}
