#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "conduche/completion.hpp"
#include "conduche/corpus.hpp"
#include "conduche/exponentiable.hpp"
#include "helpers.hpp"

using namespace conduche;
using testing::mor;
using testing::obj;

namespace {

struct Relabel {
  CatPtr cat;
  std::vector<Obj> obj;  // old -> new
  std::vector<Mor> mor;
};

// Shuffles declaration order and renames every cell.
Relabel relabel(const FinCat& c, std::mt19937_64& rng, const std::string& prefix) {
  const std::size_t n = c.num_objects();
  std::vector<Obj> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Mor> arrows(c.num_morphisms() - n);
  std::iota(arrows.begin(), arrows.end(), static_cast<Mor>(n));
  std::shuffle(arrows.begin(), arrows.end(), rng);

  Relabel r;
  r.obj.assign(n, 0);
  r.mor.assign(c.num_morphisms(), 0);
  RawCategory raw;
  raw.name = prefix + c.name();
  for (Obj i = 0; i < n; ++i) {
    r.obj[order[i]] = i;
    r.mor[order[i]] = i;
    raw.objects.push_back(prefix + "o" + std::to_string(i));
  }
  for (std::size_t k = 0; k < arrows.size(); ++k) r.mor[arrows[k]] = static_cast<Mor>(n + k);
  for (Mor k : arrows) raw.arrows.push_back({prefix + "m" + std::to_string(r.mor[k]), r.obj[c.src(k)], r.obj[c.tgt(k)]});
  for (Mor f = static_cast<Mor>(n); f < c.num_morphisms(); ++f)
    for (Mor g : c.outgoing(c.tgt(f)))
      if (!c.is_identity(g)) raw.composites.push_back({r.mor[g], r.mor[f], r.mor[c.compose(g, f)]});
  r.cat = make_cat(validate_category(raw));
  return r;
}

FinFunctor relabel_functor(const FinFunctor& f, const Relabel& e, const Relabel& b) {
  RawFunctor raw{f.name(), std::vector<Obj>(f.dom().num_objects()), std::vector<Mor>(f.dom().num_morphisms())};
  for (Obj o = 0; o < f.dom().num_objects(); ++o) raw.object_map[e.obj[o]] = b.obj[f(o)];
  for (Mor k = 0; k < f.dom().num_morphisms(); ++k) raw.morphism_map[e.mor[k]] = b.mor[f.map_morphism(k)];
  return validate_functor(raw, e.cat, b.cat);
}

}  // namespace

TEST_CASE("identity functors are exponentiable") {
  for (const CorpusInstance& inst : generate_corpus(11, {4, 12}, 20)) {
    const Certificate c = check_exponentiable(identity_functor(inst.functor.target()));
    CHECK(c.accepted());
    CHECK(c.witnesses.empty());
  }
}

TEST_CASE("product projection over [1] is exponentiable") {
  const auto ws = testing::load_fixture("projection.fincat");
  const FinFunctor& p = *ws.find_functor("pr");
  // Oracle: every coend instance is checked by hand below.
  const FinCat& b = p.cod();
  const FunctorIndex index(p);
  bool all = true;
  for (Mor u = 0; u < b.num_morphisms(); ++u)
    for (Mor v : b.outgoing(b.tgt(u)))
      for (Obj x : index.objects_over(b.src(u)))
        for (Obj z : index.objects_over(b.tgt(v))) all = all && coend_compose(index, u, v, x, z).bijective();
  CHECK(all);
  const Certificate c = check_exponentiable(p);
  CHECK(c.accepted());
  CHECK(check_pushout_condition(p).accepted());
}

TEST_CASE("d1 is refuted with one witness") {
  const auto ws = testing::load_fixture("d1.fincat");
  const FinFunctor& d1 = *ws.find_functor("d1");
  const FinCat& e = d1.dom();
  const FinCat& b = d1.cod();
  const Certificate c = check_exponentiable(d1);
  CHECK_FALSE(c.accepted());
  REQUIRE(c.witnesses.size() == 1);
  const Witness& w = c.witnesses[0];
  CHECK(w.u == mor(b, "u"));
  CHECK(w.v == mor(b, "v"));
  CHECK(w.x == obj(e, "a"));
  CHECK(w.z == obj(e, "c"));
  CHECK(w.kind == FailureKind::NonSurjective);
  CHECK(w.composite == mor(e, "m"));
  CHECK(recheck_witness(d1, w));

  const Certificate pushout = check_pushout_condition(d1);
  CHECK(pushout.witnesses == c.witnesses);
}

TEST_CASE("fail-fast stops at the first witness") {
  for (const CorpusInstance& inst : generate_corpus(0, {5, 15}, 60)) {
    const Certificate full = check_exponentiable(inst.functor);
    const Certificate quick = check_exponentiable(inst.functor, CheckOptions{true});
    CHECK(full.verdict == quick.verdict);
    if (!full.accepted()) {
      REQUIRE(quick.witnesses.size() == 1);
      CHECK(quick.witnesses[0] == full.witnesses[0]);
    }
  }
}

TEST_CASE("witnesses replay and verdicts agree with the pushout check") {
  std::size_t refuted = 0, replayed = 0;
  for (const CorpusInstance& inst : generate_corpus(0, {5, 15}, 200)) {
    const Certificate c = check_exponentiable(inst.functor);
    CHECK((c.witnesses.empty() == c.accepted()));
    CHECK(check_pushout_condition(inst.functor).verdict == c.verdict);
    refuted += !c.accepted();
    for (const Witness& w : c.witnesses) {
      CHECK(recheck_witness(inst.functor, w));
      ++replayed;
    }
  }
  CHECK(refuted > 0);
  CHECK(refuted < 200);
  CHECK(replayed >= refuted);
}

TEST_CASE("a tampered witness does not replay") {
  const auto ws = testing::load_fixture("projection.fincat");
  const FinFunctor& p = *ws.find_functor("pr");
  Witness w;
  w.u = 0;
  w.v = 0;
  w.x = 0;
  w.z = 0;
  w.composite = 0;
  CHECK_FALSE(recheck_witness(p, w));
}

TEST_CASE("verdict is invariant under relabeling") {
  std::mt19937_64 rng(42);
  for (const CorpusInstance& inst : generate_corpus(2, {5, 15}, 60)) {
    const FinFunctor& f = inst.functor;
    const Relabel e = relabel(f.dom(), rng, "e");
    const Relabel b = relabel(f.cod(), rng, "b");
    const FinFunctor g = relabel_functor(f, e, b);
    const Certificate c1 = check_exponentiable(f);
    const Certificate c2 = check_exponentiable(g);
    CHECK(c1.verdict == c2.verdict);
    CHECK(c1.witnesses.size() == c2.witnesses.size());
    CHECK(c1.stats.instances == c2.stats.instances);
  }
}
