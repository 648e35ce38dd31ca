#include <doctest.h>

#include <algorithm>
#include <set>

#include "conduche/completion.hpp"
#include "conduche/corpus.hpp"
#include "conduche/enumerate.hpp"
#include "conduche/exponentiable.hpp"
#include "conduche/fiber.hpp"
#include "helpers.hpp"

using namespace conduche;
using testing::mor;

TEST_CASE("gluing for the identity of [2] is the walking horn") {
  const CatPtr two = interval_cat(2);
  const FinFunctor id = identity_functor(two);
  const HornGluing h = horn_gluing(id, mor(*two, "01"), mor(*two, "12"));
  CHECK(h.num_objects() == 3);
  CHECK(h.num_morphisms() == two->num_morphisms() - 1);
  CHECK(h.shape.composites.empty());

  const CompletionResult c = complete_horn_gluing(h);
  CHECK(c.added.size() == 1);
  CHECK(find_isomorphism(c.completed, two).has_value());
  CHECK(find_isomorphism(c.completed, c.full.cat).has_value());
  CHECK(c.comparison.dom().num_morphisms() == c.full.cat->num_morphisms());
}

TEST_CASE("gluing for d1 has only identities") {
  const auto ws = testing::load_fixture("d1.fincat");
  const FinFunctor& d1 = *ws.find_functor("d1");
  const FinCat& b = d1.cod();
  const HornGluing h = horn_gluing(d1, mor(b, "u"), mor(b, "v"));
  REQUIRE(h.num_objects() == 2);
  CHECK(h.num_morphisms() == 2);
  CHECK(d1.dom().object_name(h.object_e[0]) == "a");
  CHECK(h.object_level[0] == 0);
  CHECK(d1.dom().object_name(h.object_e[1]) == "c");
  CHECK(h.object_level[1] == 2);

  const CompletionResult c = complete_horn_gluing(h);
  CHECK(c.added.empty());
  // E x_B [2] still has m over the long edge.
  CHECK(c.full.cat->num_morphisms() == 3);
  CHECK(c.completed->num_morphisms() == 2);
}

TEST_CASE("gluing for a product projection is two squares sharing an edge") {
  const SpanCat prod = product_cat(interval_cat(1), interval_cat(2));
  const FinFunctor& p = prod.second;
  const FinCat& two = p.cod();
  const HornGluing h = horn_gluing(p, mor(two, "01"), mor(two, "12"));
  // Oracle from the pieces: |lower| + |upper| - |shared|.
  const std::size_t objects =
      h.lower.cat->num_objects() + h.upper.cat->num_objects() - h.shared.category->num_objects();
  const std::size_t morphisms =
      h.lower.cat->num_morphisms() + h.upper.cat->num_morphisms() - h.shared.category->num_morphisms();
  const CatPtr square = product_cat(interval_cat(1), interval_cat(1)).cat;
  CHECK(find_isomorphism(h.lower.cat, square).has_value());
  CHECK(find_isomorphism(h.upper.cat, square).has_value());
  CHECK(find_isomorphism(h.shared.category, interval_cat(1)).has_value());
  CHECK(h.num_objects() == objects);
  CHECK(h.num_morphisms() == morphisms);
  CHECK(objects == 6);
  CHECK(morphisms == 15);

  const CompletionResult c = complete_horn_gluing(h);
  CHECK(find_isomorphism(c.completed, c.full.cat).has_value());
  CHECK(find_isomorphism(c.completed, prod.cat).has_value());
}

TEST_CASE("completion is unique up to isomorphism") {
  const SpanCat left = product_cat(interval_cat(1), interval_cat(2));
  const SpanCat right = product_cat(interval_cat(2), interval_cat(1));
  const FinCat& two = *interval_cat(2);
  const CompletionResult a = complete_horn_gluing(horn_gluing(left.second, mor(two, "01"), mor(two, "12")));
  const CompletionResult b = complete_horn_gluing(horn_gluing(right.first, mor(two, "01"), mor(two, "12")));
  CHECK(find_isomorphism_over(a.levels, b.levels).has_value());
}

TEST_CASE("comparison is a map over [2], injective on old cells") {
  for (const CorpusInstance& inst : generate_corpus(6, {4, 12}, 30)) {
    const FinFunctor& f = inst.functor;
    const FinCat& b = f.cod();
    const FunctorIndex index(f);
    for (Mor u = 0; u < b.num_morphisms(); ++u)
      for (Mor v : b.outgoing(b.tgt(u))) {
        const CompletionResult c = complete_horn_gluing(horn_gluing(f, u, v));
        const auto members = relative_hom(c.levels, c.full.second).members;
        CHECK(std::find(members.begin(), members.end(), c.comparison) != members.end());
        std::set<Mor> images;
        for (Mor k : c.unit) images.insert(c.comparison.map_morphism(k));
        CHECK(images.size() == c.unit.size());

        // Bijective over the long edge iff every coend there is.
        bool coends = true;
        for (Obj x : index.objects_over(b.src(u)))
          for (Obj z : index.objects_over(b.tgt(v))) coends = coends && coend_compose(index, u, v, x, z).bijective();
        const bool iso = c.completed->num_morphisms() == c.full.cat->num_morphisms() &&
                         std::set<Mor>(c.comparison.morphism_map().begin(), c.comparison.morphism_map().end()).size() ==
                             c.full.cat->num_morphisms();
        CHECK(iso == coends);
      }
  }
}

TEST_CASE("universal property of the completion") {
  const CatPtr two = interval_cat(2);
  const FinFunctor id = identity_functor(two);
  const CompletionResult c = complete_horn_gluing(horn_gluing(id, mor(*two, "01"), mor(*two, "12")));

  SUBCASE("against itself") {
    const UniversalReport r = verify_completion_universal(c, c.projection);
    CHECK(r.bijective);
  }
  SUBCASE("against [2] over [2]") {
    const UniversalReport r = verify_completion_universal(c, id);
    CHECK(r.bijective);
    CHECK(r.extensions == 1);
    CHECK(r.cones == 1);
  }
  SUBCASE("against plain targets") {
    const RelativeAbsoluteReport point = verify_relative_vs_absolute(c, terminal_cat());
    CHECK(point.agree);
    CHECK(point.absolute.extensions == 1);
    CHECK(point.absolute.cones == 1);

    // Both sides: chains x0 <= x1 <= x2 in {0, 1}.
    std::size_t chains = 0;
    for (int a = 0; a <= 1; ++a)
      for (int b = a; b <= 1; ++b)
        for (int d = b; d <= 1; ++d) ++chains;
    const RelativeAbsoluteReport one = verify_relative_vs_absolute(c, interval_cat(1));
    CHECK(one.agree);
    CHECK(one.absolute.extensions == chains);
    CHECK(one.absolute.cones == chains);
    CHECK(one.via_product.extensions == chains);
  }
}

TEST_CASE("completion is idempotent") {
  for (const CorpusInstance& inst : generate_corpus(8, {4, 10}, 20)) {
    const FinFunctor& f = inst.functor;
    const FinCat& b = f.cod();
    for (Mor u = 0; u < b.num_morphisms(); ++u)
      for (Mor v : b.outgoing(b.tgt(u))) CHECK(completion_idempotent(complete_horn_gluing(horn_gluing(f, u, v))));
  }
}
