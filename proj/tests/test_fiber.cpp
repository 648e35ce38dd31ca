#include <doctest.h>

#include <set>

#include "conduche/corpus.hpp"
#include "conduche/enumerate.hpp"
#include "conduche/error.hpp"
#include "conduche/fiber.hpp"
#include "helpers.hpp"

using namespace conduche;
using testing::mor;
using testing::obj;

TEST_CASE("fibers") {
  const auto ws = testing::load_fixture("d1.fincat");
  const FinFunctor& d1 = *ws.find_functor("d1");
  const CatPtr b = d1.target();

  const FiberCat over_id = fiber(identity_functor(b), 1);
  CHECK(over_id.category->num_objects() == 1);
  CHECK(over_id.category->num_morphisms() == 1);

  // Nothing in E maps to 1.
  std::size_t over_one = 0;
  for (Obj x = 0; x < d1.dom().num_objects(); ++x) over_one += d1(x) == 1;
  const FiberCat empty = fiber(d1, 1);
  CHECK(empty.category->num_objects() == over_one);
  CHECK(empty.category->num_morphisms() == 0);

  const auto pr = testing::load_fixture("projection.fincat");
  const FinFunctor& p = *pr.find_functor("pr");
  for (Obj t = 0; t < 2; ++t) CHECK(find_isomorphism(fiber(p, t).category, interval_cat(1)).has_value());
}

TEST_CASE("arrow hom-sets") {
  const auto ws = testing::load_fixture("d1.fincat");
  const FinFunctor& d1 = *ws.find_functor("d1");
  const FinCat& e = d1.dom();
  const FinCat& b = d1.cod();
  const Mor u = mor(b, "u"), w = mor(b, "w");

  const ArrowHomSet over_u = arrow_hom(identity_functor(d1.target()), u, 0, 1);
  CHECK(over_u.members == std::vector<Mor>{u});

  // Scan of E for arrows a -> c over w.
  std::vector<Mor> scan;
  for (Mor k = 0; k < e.num_morphisms(); ++k)
    if (e.src(k) == obj(e, "a") && e.tgt(k) == obj(e, "c") && d1.map_morphism(k) == w) scan.push_back(k);
  const ArrowHomSet over_w = arrow_hom(d1, w, obj(e, "a"), obj(e, "c"));
  CHECK(over_w.members == scan);
  CHECK(scan == std::vector<Mor>{mor(e, "m")});

  const auto pr = testing::load_fixture("projection.fincat");
  const FinFunctor& p = *pr.find_functor("pr");
  const FiberCat f0 = fiber(p, 0);
  const FinCat& sq = p.dom();
  const ArrowHomSet over_id = arrow_hom(p, 0, obj(sq, "p0"), obj(sq, "q0"));
  CHECK(over_id.members == std::vector<Mor>{mor(sq, "r0")});
  CHECK(f0.category->hom(0, 1).size() == over_id.members.size());
}

TEST_CASE("fiber actions") {
  const CatPtr two = interval_cat(2);
  const FinFunctor id = identity_functor(two);
  const FinCat& c = *two;
  const Mor u = mor(c, "01"), v = mor(c, "12"), w = mor(c, "02");
  CHECK(act_left(id, c.identity(1), u) == u);
  CHECK(act_right(id, u, c.identity(0)) == u);

  const auto pr = testing::load_fixture("projection.fincat");
  const FinFunctor& p = *pr.find_functor("pr");
  const FinCat& sq = p.dom();
  CHECK(act_left(p, mor(sq, "r1"), mor(sq, "sp")) == mor(sq, "d"));
  CHECK(act_right(p, mor(sq, "sq"), mor(sq, "r0")) == mor(sq, "d"));

  // Over the identity functor only identities lie over identities.
  bool threw = false;
  try {
    act_left(id, v, u);
  } catch (const Error& e) {
    threw = e.kind() == ErrorKind::NotComposable;
  }
  CHECK(threw);
  CHECK(c.compose(v, u) == w);
}

TEST_CASE("hom-sets partition the arrows over u, and actions are compatible") {
  for (const CorpusInstance& inst : generate_corpus(3, {4, 10}, 40)) {
    const FinFunctor& f = inst.functor;
    const FinCat& e = f.dom();
    const FinCat& b = f.cod();
    const FunctorIndex index(f);
    for (Mor u = 0; u < b.num_morphisms(); ++u) {
      std::multiset<Mor> seen;
      for (Obj x : index.objects_over(b.src(u)))
        for (Obj y : index.objects_over(b.tgt(u)))
          for (Mor j : arrow_hom(f, u, x, y).members) {
            CHECK(f.map_morphism(j) == u);
            seen.insert(j);
          }
      std::multiset<Mor> all;
      for (Mor j = 0; j < e.num_morphisms(); ++j)
        if (f.map_morphism(j) == u) all.insert(j);
      CHECK(seen == all);
    }
    for (Mor j = 0; j < e.num_morphisms(); ++j) {
      const Obj x = e.src(j), y = e.tgt(j);
      for (Mor k : e.outgoing(y)) {
        if (!b.is_identity(f.map_morphism(k))) continue;
        CHECK(f.map_morphism(act_left(f, k, j)) == f.map_morphism(j));
        for (Mor k2 : e.outgoing(e.tgt(k)))
          if (b.is_identity(f.map_morphism(k2)))
            CHECK(act_left(f, e.compose(k2, k), j) == act_left(f, k2, act_left(f, k, j)));
        for (Mor k3 : e.incoming(x))
          if (b.is_identity(f.map_morphism(k3)))
            CHECK(act_left(f, k, act_right(f, j, k3)) == act_right(f, act_left(f, k, j), k3));
      }
    }
  }
}
