#include <doctest.h>

#include "conduche/catalog.hpp"
#include "conduche/corpus.hpp"
#include "conduche/error.hpp"
#include "conduche/exponential.hpp"
#include "conduche/exponentiable.hpp"
#include "conduche/fiber.hpp"
#include "helpers.hpp"

using namespace conduche;

namespace {

FinFunctor to_point(const CatPtr& c) { return constant_functor(c, terminal_cat(), 0); }

}  // namespace

TEST_CASE("exponential of [1] by [1] over a point") {
  const CatPtr one = interval_cat(1);
  const FinFunctor f = to_point(one);
  const ExpCat exp = build_exponential(f, f);

  // Oracles: objects are functors [1] -> [1]; morphisms are functors
  // [1] x [1] -> [1].
  const std::size_t objects = count_functors(one, one);
  const std::size_t morphisms = count_functors(product_cat(one, one).cat, one);
  CHECK(objects == 3);
  CHECK(morphisms == 6);
  CHECK(exp.category->num_objects() == objects);
  CHECK(exp.category->num_morphisms() == morphisms);

  SUBCASE("evaluation at the identity functor") {
    const Evaluation ev = evaluation(exp);
    const Obj id_obj = exp.find_object(ExpObject{0, {0, 1}, {0, 1, 2}}).value();
    bool found = false;
    for (Obj o = 0; o < ev.domain.cat->num_objects(); ++o)
      if (ev.domain.first(o) == id_obj && ev.domain.second(o) == 0) {
        CHECK(ev.functor(o) == 0);
        found = true;
      }
    CHECK(found);
  }

  SUBCASE("universal property against a point and [1]") {
    const UniversalPropertyReport at_point = verify_universal_property(exp, to_point(terminal_cat()));
    CHECK(at_point.bijective);
    CHECK(at_point.lhs == objects);
    CHECK(at_point.rhs == objects);
    const UniversalPropertyReport at_one = verify_universal_property(exp, to_point(one));
    CHECK(at_one.bijective);
    CHECK(at_one.lhs == morphisms);
    const UniversalPropertyReport at_empty = verify_universal_property(exp, to_point(empty_cat()));
    CHECK(at_empty.bijective);
    CHECK(at_empty.lhs == 1);
    CHECK(at_empty.rhs == 1);
  }
}

TEST_CASE("exponential along an identity is the exponent") {
  for (const CorpusInstance& inst : generate_corpus(4, {4, 10}, 25)) {
    const FinFunctor& g = inst.functor;
    const ExpCat exp = build_exponential(identity_functor(g.target()), g);
    CHECK(find_isomorphism_over(exp.projection, g).has_value());
  }
}

TEST_CASE("exponential with an empty domain is the base") {
  const auto ws = testing::load_fixture("projection.fincat");
  const FinFunctor& g = *ws.find_functor("pr");
  const CatPtr b = g.target();
  const FinFunctor f = unchecked_functor("empty", empty_cat(), b, {}, {});
  const ExpCat exp = build_exponential(f, g);
  CHECK(find_isomorphism_over(exp.projection, identity_functor(b)).has_value());
}

TEST_CASE("fibers of the exponential are functor categories") {
  const auto ws = testing::load_fixture("projection.fincat");
  const FinFunctor& f = *ws.find_functor("pr");
  const SpanCat p = product_cat(f.target(), interval_cat(1));
  const ExpCat exp = build_exponential(f, p.first);
  for (Obj b = 0; b < f.cod().num_objects(); ++b) {
    const CatPtr eb = fiber(f, b).category;
    const CatPtr pb = fiber(p.first, b).category;
    const Subcategory sub = exp_fiber(exp, b);
    CHECK(sub.cat->num_objects() == count_functors(eb, pb));
    CHECK(sub.cat->num_morphisms() == count_functors(product_cat(eb, interval_cat(1)).cat, pb));
  }
}

TEST_CASE("the refuting face cannot be exponentiated") {
  const auto ws = testing::load_fixture("d1.fincat");
  const FinFunctor& d1 = *ws.find_functor("d1");
  ErrorKind refused = ErrorKind::InvalidArgument;
  try {
    build_exponential(d1, d1);
  } catch (const Error& e) {
    refused = e.kind();
  }
  CHECK(refused == ErrorKind::NotExponentiable);

  ErrorKind forced = ErrorKind::InvalidArgument;
  try {
    build_exponential(d1, d1, ExpOptions{{}, true});
  } catch (const Error& e) {
    forced = e.kind();
  }
  CHECK(forced == ErrorKind::AmbiguousComposition);
}

TEST_CASE("evaluation is a functor on accepted corpus instances") {
  std::size_t built = 0;
  for (const CorpusInstance& inst : generate_corpus(0, {4, 10}, 40)) {
    const FinFunctor& f = inst.functor;
    if (!check_exponentiable(f, CheckOptions{true}).accepted()) continue;
    const SpanCat p = product_cat(f.target(), interval_cat(1));
    const ExpCat exp = build_exponential(f, p.first);
    const Evaluation ev = evaluation(exp);
    const FinCat& d = *ev.domain.cat;
    const FinCat& target = p.first.dom();
    for (Mor a = 0; a < d.num_morphisms(); ++a)
      for (Mor b : d.outgoing(d.tgt(a)))
        CHECK(ev.functor.map_morphism(d.compose(b, a)) ==
              target.compose(ev.functor.map_morphism(b), ev.functor.map_morphism(a)));
    ++built;
  }
  CHECK(built > 0);
}

TEST_CASE("forced construction never fully succeeds on refuted instances") {
  const auto tests = enumerate_categories(2, 4);
  std::size_t refuted = 0, ambiguous = 0, broken = 0;
  for (const CorpusInstance& inst : generate_corpus(0, {4, 10}, 60)) {
    const FinFunctor& f = inst.functor;
    if (check_exponentiable(f, CheckOptions{true}).accepted()) continue;
    ++refuted;
    try {
      const ExpCat exp = build_exponential(f, f, ExpOptions{{}, true});
      evaluation(exp);
      bool all = true;
      for (const CatPtr& x : tests)
        for (const FinFunctor& over : enumerate_functors(x, f.target()))
          all = all && verify_universal_property(exp, over).bijective;
      CHECK_FALSE(all);
      broken += !all;
    } catch (const Error& e) {
      CHECK((e.kind() == ErrorKind::AmbiguousComposition || e.kind() == ErrorKind::NotAFunctor));
      ambiguous += 1;
    }
  }
  CHECK(refuted > 0);
  CHECK(ambiguous + broken == refuted);
}
