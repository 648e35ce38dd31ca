#include <doctest.h>

#include <json.hpp>

#include "conduche/commands.hpp"
#include "conduche/corpus.hpp"
#include "conduche/enumerate.hpp"
#include "conduche/dsl.hpp"
#include "conduche/error.hpp"
#include "conduche/exponentiable.hpp"
#include "helpers.hpp"

using namespace conduche;

namespace {

Error parse_error(const std::string& text) {
  try {
    parse_workspace(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("parsed");
  return Error(ErrorKind::InvalidArgument, "");
}

}  // namespace

TEST_CASE("the [2] block is interval_cat(2)") {
  const auto ws = testing::parse(testing::kSimplex);
  CHECK(find_isomorphism(*ws.find_category("B"), interval_cat(2)).has_value());
}

TEST_CASE("identities and closure") {
  const auto ws = testing::parse("category C { objects: a, b, c; arrows: f: a -> b, g: b -> c }");
  const FinCat& c = **ws.find_category("C");
  CHECK(c.num_morphisms() == 6);
  CHECK(c.find_morphism("id_a").has_value());
  CHECK(c.find_morphism("g.f").has_value());

  const Error e = parse_error("category M { objects: o; arrows: e: o -> o }");
  CHECK(e.kind() == ErrorKind::ClosureBudgetExceeded);
}

TEST_CASE("diagnostics carry locations") {
  const Error unresolved = parse_error("category A { objects: x }\nfunctor f : A -> Nope { objects: x -> x }\n");
  CHECK(unresolved.kind() == ErrorKind::UnresolvedName);
  REQUIRE(unresolved.has_location());
  CHECK(unresolved.location().line == 2);

  const Error syntax = parse_error("category A { objects x }");
  CHECK(syntax.kind() == ErrorKind::Syntax);
  CHECK(syntax.has_location());
}

TEST_CASE("fixtures parse") {
  for (const char* name : {"d1.fincat", "identity.fincat", "projection.fincat", "cube.fincat", "broken_horn.fincat",
                           "parallel_fillers.fincat"})
    CHECK_NOTHROW(testing::load_fixture(name));
}

TEST_CASE("printing round-trips") {
  for (const CorpusInstance& inst : generate_corpus(0, {5, 15}, 50)) {
    const FinFunctor& f = inst.functor;
    const std::string text = print_category(f.dom()) + print_category(f.cod()) + print_functor(f);
    const Workspace ws = parse_workspace(text);
    CHECK(ws.categories[0].value->same_structure(f.dom()));
    CHECK(ws.categories[1].value->same_structure(f.cod()));
    CHECK(ws.functors[0].value == f);
    CHECK(print_category(*ws.categories[0].value) + print_category(*ws.categories[1].value) +
              print_functor(ws.functors[0].value) ==
          text);
  }
  const auto ws = testing::load_fixture("parallel_fillers.fincat");
  const TruncSSet& s = *ws.find_sset("parallel");
  const Workspace again = parse_workspace(print_sset(s));
  CHECK(print_sset(again.ssets[0].value) == print_sset(s));
}

TEST_CASE("odd names are quoted") {
  const auto ws = testing::parse("category \"my cat\" { objects: \"x y\", z; arrows: \"f:1\": \"x y\" -> z }");
  const FinCat& c = *ws.categories[0].value;
  CHECK(c.name() == "my cat");
  CHECK(parse_workspace(print_category(c)).categories[0].value->same_structure(c));
}

TEST_CASE("corpus is deterministic") {
  const auto a = generate_corpus(0, {3, 8}, 100);
  const auto b = generate_corpus(0, {3, 8}, 100);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].functor == b[i].functor);
    CHECK(a[i].functor.dom().same_structure(b[i].functor.dom()));
    CHECK(a[i].functor.cod().same_structure(b[i].functor.cod()));
    CHECK(a[i].functor.dom().num_objects() <= 3);
    CHECK(a[i].functor.dom().num_morphisms() <= 8);
    CHECK(a[i].functor.cod().num_morphisms() <= 8);
  }
  CHECK(generate_corpus(1, {3, 8}, 20)[0].functor.dom().name() == "E0");
}

TEST_CASE("corpus mixes families and verdicts") {
  const auto corpus = generate_corpus(0, {5, 15}, 200);
  CHECK(corpus.size() == 200);
  std::size_t families[3] = {0, 0, 0};
  std::size_t accepted = 0;
  for (const CorpusInstance& inst : corpus) {
    ++families[static_cast<int>(inst.source_family)];
    ++families[static_cast<int>(inst.target_family)];
    accepted += check_exponentiable(inst.functor, CheckOptions{true}).accepted();
  }
  for (std::size_t n : families) CHECK(n > 0);
  CHECK(accepted > 0);
  CHECK(accepted < corpus.size());
}

TEST_CASE("JSON certificates replay") {
  const std::string text = testing::read_text(testing::source_path("fixtures/d1.fincat"));
  CommandOptions o;
  o.json = true;
  const CommandResult r = run_command("check-exp", "d1.fincat", text, o);
  CHECK(r.exit_code == 1);
  const auto doc = nlohmann::json::parse(r.output);
  CHECK(doc["verdict"] == "not_exponentiable");
  REQUIRE(doc["witnesses"].size() == 1);

  const Workspace ws = parse_workspace(text);
  const FinFunctor& f = *ws.find_functor("d1");
  const auto& j = doc["witnesses"][0];
  Witness w;
  w.u = f.cod().find_morphism(j["u"].get<std::string>()).value();
  w.v = f.cod().find_morphism(j["v"].get<std::string>()).value();
  w.x = f.dom().find_object(j["x"].get<std::string>()).value();
  w.z = f.dom().find_object(j["z"].get<std::string>()).value();
  w.kind = j["failure"] == "non_surjective" ? FailureKind::NonSurjective : FailureKind::NonInjective;
  w.composite = f.dom().find_morphism(j["evidence"]["missing"].get<std::string>()).value();
  CHECK(recheck_witness(f, w));
}

TEST_CASE("non-injective witnesses replay from JSON") {
  std::size_t replayed = 0;
  for (const CorpusInstance& inst : generate_corpus(0, {5, 15}, 200)) {
    const FinFunctor& f = inst.functor;
    const Certificate c = check_exponentiable(f);
    if (c.accepted()) continue;
    const auto doc = nlohmann::json::parse(certificate_json("check-exp", "corpus", f, c, 0));
    for (const auto& j : doc["witnesses"]) {
      if (j["failure"] != "non_injective") continue;
      Witness w;
      w.u = f.cod().find_morphism(j["u"].get<std::string>()).value();
      w.v = f.cod().find_morphism(j["v"].get<std::string>()).value();
      w.x = f.dom().find_object(j["x"].get<std::string>()).value();
      w.z = f.dom().find_object(j["z"].get<std::string>()).value();
      w.kind = FailureKind::NonInjective;
      const auto& ev = j["evidence"];
      w.composite = f.dom().find_morphism(ev["composite"].get<std::string>()).value();
      auto generator = [&](const nlohmann::json& g) {
        return CoendGenerator{f.dom().find_object(g["y"].get<std::string>()).value(),
                              f.dom().find_morphism(g["j"].get<std::string>()).value(),
                              f.dom().find_morphism(g["l"].get<std::string>()).value()};
      };
      w.first = generator(ev["first"]);
      w.second = generator(ev["second"]);
      CHECK(recheck_witness(f, w));
      ++replayed;
    }
  }
  CHECK(replayed > 0);
}
