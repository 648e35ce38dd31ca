#include "conduche/commands.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "conduche/catalog.hpp"
#include "conduche/completion.hpp"
#include "conduche/corpus.hpp"
#include "conduche/enumerate.hpp"
#include "conduche/error.hpp"
#include "conduche/exponentiable.hpp"
#include "conduche/exponential.hpp"
#include "conduche/nerve.hpp"
#include "conduche/profunctor.hpp"

namespace conduche {

namespace {

using json = nlohmann::ordered_json;

json make_report(std::string_view kind, json input, std::string_view verdict, json witnesses, json stats,
                 std::uint64_t seed) {
  json r;
  r["kind"] = kind;
  r["input"] = std::move(input);
  r["verdict"] = verdict;
  r["witnesses"] = std::move(witnesses);
  r["stats"] = std::move(stats);
  r["tool_version"] = kToolVersion;
  r["seed"] = seed;
  return r;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json functor_input(std::string_view file, const FinFunctor& f) {
  return json{{"file", file}, {"functor", f.name()}, {"source", f.dom().name()}, {"target", f.cod().name()}};
}

json generator_json(const FinCat& E, const CoendGenerator& g) {
  return json{{"y", E.object_name(g.y)}, {"j", E.morphism_name(g.j)}, {"l", E.morphism_name(g.l)}};
}

json witness_json(const FinFunctor& f, const Witness& w) {
  const FinCat& E = f.dom();
  const FinCat& B = f.cod();
  json evidence;
  if (w.kind == FailureKind::NonSurjective) {
    evidence["missing"] = E.morphism_name(w.composite);
  } else {
    evidence["composite"] = E.morphism_name(w.composite);
    evidence["first"] = generator_json(E, w.first);
    evidence["second"] = generator_json(E, w.second);
  }
  return json{{"u", B.morphism_name(w.u)}, {"v", B.morphism_name(w.v)}, {"x", E.object_name(w.x)},
              {"z", E.object_name(w.z)},   {"failure", to_string(w.kind)},  {"evidence", std::move(evidence)}};
}

json witnesses_json(const FinFunctor& f, const std::vector<Witness>& ws) {
  json out = json::array();
  for (const Witness& w : ws) out.push_back(witness_json(f, w));
  return out;
}

json certificate_stats(const Certificate& c) {
  return json{{"composable_pairs", c.stats.composable_pairs},
              {"instances", c.stats.instances},
              {"generators", c.stats.generators}};
}

std::string generator_text(const FinCat& E, const CoendGenerator& g) {
  return E.morphism_name(g.l) + "." + E.morphism_name(g.j) + " through " + E.object_name(g.y);
}

std::string witness_text(const FinFunctor& f, const Witness& w) {
  const FinCat& E = f.dom();
  const FinCat& B = f.cod();
  std::string s = std::string(to_string(w.kind)) + " at (" + B.morphism_name(w.u) + ", " + B.morphism_name(w.v) +
                  ", " + E.object_name(w.x) + ", " + E.object_name(w.z) + "): ";
  if (w.kind == FailureKind::NonSurjective)
    return s + E.morphism_name(w.composite) + " has no factorization";
  return s + E.morphism_name(w.composite) + " = " + generator_text(E, w.first) + " = " + generator_text(E, w.second) +
         " in different classes";
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class BudgetScope {
 public:
  explicit BudgetScope(const std::optional<std::uint64_t>& budget) : previous_(default_search_budget()) {
    if (budget) set_default_search_budget(*budget);
  }
  ~BudgetScope() { set_default_search_budget(previous_); }
  BudgetScope(const BudgetScope&) = delete;
  BudgetScope& operator=(const BudgetScope&) = delete;

 private:
  std::uint64_t previous_;
};

const FinFunctor& pick_functor(const Workspace& ws, const CommandOptions& o, std::size_t index) {
  if (index < o.functors.size() && !o.functors[index].empty()) {
    const FinFunctor* f = ws.find_functor(o.functors[index]);
    if (!f) throw UsageError("no functor named '" + o.functors[index] + "'");
    return *f;
  }
  if (index > 0) return pick_functor(ws, o, 0);
  if (ws.functors.empty()) throw UsageError("the workspace declares no functor");
  if (ws.functors.size() > 1) throw UsageError("the workspace declares several functors; choose one with --functor");
  return ws.functors.front().value;
}

Mor pick_morphism(const FinCat& c, const std::string& name) {
  const auto m = c.find_morphism(name);
  if (!m) throw UsageError("no morphism named '" + name + "' in " + c.name());
  return *m;
}

std::string certificate_text_impl(const FinFunctor& f, const Certificate& cert) {
  std::ostringstream os;
  os << "functor " << f.name() << " : " << f.dom().name() << " -> " << f.cod().name() << "\n";
  os << "verdict: " << to_string(cert.verdict) << "\n";
  for (const Witness& w : cert.witnesses) os << "  " << witness_text(f, w) << "\n";
  os << "stats: composable_pairs " << cert.stats.composable_pairs << ", instances " << cert.stats.instances
     << ", generators " << cert.stats.generators << "\n";
  return os.str();
}

CommandResult finish(const CommandOptions& o, const json& report, const std::string& text, int exit_code) {
  return CommandResult{exit_code, o.json ? dump(report) : text, {}};
}

// ---------------------------------------------------------------------------

CommandResult run_validate(const Workspace& ws, std::string_view input, const CommandOptions& o) {
  std::ostringstream os;
  os << "valid: " << input << "\n";
  for (const auto& c : ws.categories)
    os << "category " << c.name << ": " << c.value->num_objects() << " objects, " << c.value->num_morphisms()
       << " morphisms\n";
  for (const auto& f : ws.functors)
    os << "functor " << f.name << " : " << f.value.dom().name() << " -> " << f.value.cod().name() << "\n";
  for (const auto& s : ws.ssets)
    os << "sset " << s.name << ": " << s.value.size(0) << " vertices, " << s.value.size(1) << " edges, "
       << s.value.size(2) << " triangles, " << s.value.size(3) << " tetrahedra\n";
  for (const auto& p : ws.profunctors)
    os << "profunctor " << p.name << " = hom(" << p.value.functor << ", " << p.value.morphism << ")\n";
  const json stats{{"categories", ws.categories.size()},
                   {"functors", ws.functors.size()},
                   {"ssets", ws.ssets.size()},
                   {"profunctors", ws.profunctors.size()}};
  return finish(o, make_report("validate", json{{"file", input}}, "valid", json::array(), stats, o.seed), os.str(), 0);
}

CommandResult run_check(std::string_view kind, const Workspace& ws, std::string_view input, const CommandOptions& o) {
  const FinFunctor& f = pick_functor(ws, o, 0);
  const CheckOptions co{o.fail_fast};
  const Certificate cert = kind == "check-exp" ? check_exponentiable(f, co) : check_pushout_condition(f, co);
  const json report = make_report(kind, functor_input(input, f), to_string(cert.verdict),
                                  witnesses_json(f, cert.witnesses), certificate_stats(cert), o.seed);
  return finish(o, report, certificate_text_impl(f, cert), cert.accepted() ? 0 : 1);
}

struct BuiltExp {
  std::optional<ExpCat> exp;
  Certificate cert;
  std::string failure;  // verdict when construction was refused or failed
  std::string message;
};

BuiltExp build_checked(const FinFunctor& f, const FinFunctor& g, const CommandOptions& o) {
  BuiltExp b;
  b.cert = check_exponentiable(f, CheckOptions{o.fail_fast});
  if (!b.cert.accepted() && !o.force) {
    b.failure = to_string(b.cert.verdict);
    return b;
  }
  try {
    ExpOptions eo;
    eo.force = o.force;
    ExpCat exp = build_exponential(f, g, eo);
    evaluation(exp);
    b.exp = std::move(exp);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::AmbiguousComposition) b.failure = "ambiguous_composition";
    else if (e.kind() == ErrorKind::NotAFunctor || e.kind() == ErrorKind::FunctorialityFailure)
      b.failure = "evaluation_not_functorial";
    else throw;
    b.message = e.what();
  }
  if (b.failure.empty() && !b.cert.accepted()) b.failure = to_string(b.cert.verdict);
  return b;
}

json exp_input(std::string_view input, const FinFunctor& f, const FinFunctor& g) {
  json in = functor_input(input, f);
  in["over"] = g.name();
  return in;
}

std::string failure_text(const FinFunctor& f, const BuiltExp& b) {
  std::string s = certificate_text_impl(f, b.cert);
  if (b.failure != to_string(b.cert.verdict)) s += "construction failed: " + b.failure + "\n";
  if (!b.message.empty()) s += "  " + b.message + "\n";
  return s;
}

json failure_stats(const BuiltExp& b) {
  json stats = certificate_stats(b.cert);
  if (!b.message.empty()) stats["error"] = b.message;
  return stats;
}

CommandResult run_build_exp(const Workspace& ws, std::string_view input, const CommandOptions& o) {
  const FinFunctor& f = pick_functor(ws, o, 0);
  const FinFunctor& g = pick_functor(ws, o, 1);
  const BuiltExp b = build_checked(f, g, o);
  if (!b.exp) {
    const json report = make_report("build-exp", exp_input(input, f, g), b.failure,
                                     witnesses_json(f, b.cert.witnesses), failure_stats(b), o.seed);
    return finish(o, report, failure_text(f, b), 1);
  }
  const ExpCat& exp = *b.exp;
  const std::string dsl = print_category(f.cod()) + "\n" + print_category(*exp.category) + "\n" +
                          print_functor(exp.projection);
  const bool ok = b.failure.empty();
  json stats{{"objects", exp.category->num_objects()}, {"morphisms", exp.category->num_morphisms()}};
  json report = make_report("build-exp", exp_input(input, f, g), ok ? "built" : b.failure,
                            witnesses_json(f, b.cert.witnesses), stats, o.seed);
  report["exponential"] = dsl;
  std::ostringstream os;
  os << "# exponential of " << f.name() << " and " << g.name() << ": " << exp.category->num_objects()
     << " objects, " << exp.category->num_morphisms() << " morphisms\n";
  if (!ok) os << "# built with --force; " << f.name() << " is " << b.failure << "\n";
  os << dsl;
  return finish(o, report, os.str(), ok ? 0 : 1);
}

std::string over_text(const FinFunctor& p) {
  const FinCat& X = p.dom();
  const FinCat& B = p.cod();
  std::string s;
  for (Obj x = 0; x < X.num_objects(); ++x) s += (x ? ", " : "") + X.object_name(x) + "->" + B.object_name(p(x));
  bool first = true;
  for (Mor k = static_cast<Mor>(X.num_objects()); k < X.num_morphisms(); ++k) {
    s += (first ? "; " : ", ") + X.morphism_name(k) + "->" + B.morphism_name(p.map_morphism(k));
    first = false;
  }
  return s;
}

json over_json(const FinFunctor& p) {
  json objects = json::array(), morphisms = json::array();
  for (Obj x = 0; x < p.dom().num_objects(); ++x) objects.push_back(p.cod().object_name(p(x)));
  for (Mor k = 0; k < p.dom().num_morphisms(); ++k) morphisms.push_back(p.cod().morphism_name(p.map_morphism(k)));
  return json{{"objects", std::move(objects)}, {"morphisms", std::move(morphisms)}};
}

CommandResult run_verify_up(const Workspace& ws, std::string_view input, const CommandOptions& o) {
  const FinFunctor& f = pick_functor(ws, o, 0);
  const FinFunctor& g = pick_functor(ws, o, 1);
  const BuiltExp b = build_checked(f, g, o);
  json in = exp_input(input, f, g);
  in["x_bound"] = json::array({o.x_objects, o.x_morphisms});
  if (!b.exp) {
    const json report =
        make_report("verify-up", in, b.failure, witnesses_json(f, b.cert.witnesses), failure_stats(b), o.seed);
    return finish(o, report, failure_text(f, b), 1);
  }
  const ExpCat& exp = *b.exp;
  std::ostringstream os;
  os << "exponential: " << exp.category->num_objects() << " objects, " << exp.category->num_morphisms()
     << " morphisms\n";
  json rows = json::array();
  json failures = json::array();
  std::size_t tests = 0, bijective = 0;
  for (const CatPtr& x : enumerate_categories(o.x_objects, o.x_morphisms)) {
    for (const FinFunctor& p : enumerate_functors(x, f.target())) {
      const UniversalPropertyReport r = verify_universal_property(exp, p);
      ++tests;
      if (r.bijective) ++bijective;
      os << x->name() << " over (" << over_text(p) << "): " << r.lhs << " <-> " << r.rhs << " "
         << (r.bijective ? "bijective" : "NOT bijective") << "\n";
      json row{{"x", x->name()}, {"over", over_json(p)}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"bijective", r.bijective}};
      if (!r.bijective)
        failures.push_back(json{{"u", nullptr},
                                {"v", nullptr},
                                {"x", nullptr},
                                {"z", nullptr},
                                {"failure", "not_bijective"},
                                {"evidence", row}});
      rows.push_back(std::move(row));
    }
  }
  const bool ok = b.failure.empty() && bijective == tests;
  os << "summary: " << bijective << " of " << tests << " test categories bijective\n";
  if (!b.failure.empty()) os << "built with --force; " << f.name() << " is " << b.failure << "\n";
  json stats{{"objects", exp.category->num_objects()},
             {"morphisms", exp.category->num_morphisms()},
             {"tests", tests},
             {"bijective", bijective}};
  json report = make_report("verify-up", in, ok ? "verified" : (b.failure.empty() ? "not_verified" : b.failure),
                            failures, stats, o.seed);
  report["tables"] = std::move(rows);
  return finish(o, report, os.str(), ok ? 0 : 1);
}

CommandResult run_complete_horn(const Workspace& ws, std::string_view input, const CommandOptions& o) {
  const FinFunctor& f = pick_functor(ws, o, 0);
  const FinCat& B = f.cod();
  std::vector<std::pair<Mor, Mor>> pairs;
  if (o.pair) {
    const Mor u = pick_morphism(B, o.pair->first), v = pick_morphism(B, o.pair->second);
    if (B.tgt(u) != B.src(v)) throw UsageError(o.pair->first + " and " + o.pair->second + " are not composable");
    pairs.emplace_back(u, v);
  } else {
    for (Mor u = 0; u < B.num_morphisms(); ++u)
      for (Mor v : B.outgoing(B.tgt(u))) pairs.emplace_back(u, v);
  }
  std::ostringstream os;
  json completions = json::array();
  bool all_iso = true;
  for (auto [u, v] : pairs) {
    const CompletionResult c = complete_horn_gluing(horn_gluing(f, u, v));
    std::vector<bool> hit(c.full.cat->num_morphisms(), false);
    bool iso = c.completed->num_morphisms() == c.full.cat->num_morphisms();
    for (Mor k = 0; k < c.completed->num_morphisms() && iso; ++k) {
      const Mor img = c.comparison.map_morphism(k);
      iso = !hit[img];
      hit[img] = true;
    }
    all_iso = all_iso && iso;
    const FinCat& C = *c.completed;
    json added = json::array();
    for (const auto& a : c.added)
      added.push_back(json{{"name", C.morphism_name(a.morphism)},
                           {"first", c.gluing.morphism_names[a.first]},
                           {"second", c.gluing.morphism_names[a.second]}});
    const std::string dsl = print_category(C);
    os << "# (" << B.morphism_name(u) << ", " << B.morphism_name(v) << "): gluing " << c.gluing.num_objects()
       << " objects, " << c.gluing.num_morphisms() << " morphisms; completion adds " << c.added.size()
       << "; comparison " << (iso ? "is an isomorphism" : "is NOT an isomorphism") << " ("
       << C.num_morphisms() << " vs " << c.full.cat->num_morphisms() << " morphisms)\n"
       << dsl;
    completions.push_back(json{{"u", B.morphism_name(u)},
                               {"v", B.morphism_name(v)},
                               {"gluing", {{"objects", c.gluing.num_objects()}, {"morphisms", c.gluing.num_morphisms()}}},
                               {"completed", {{"objects", C.num_objects()}, {"morphisms", C.num_morphisms()}}},
                               {"full", {{"objects", c.full.cat->num_objects()}, {"morphisms", c.full.cat->num_morphisms()}}},
                               {"added", std::move(added)},
                               {"comparison", iso ? "isomorphism" : "not_isomorphism"},
                               {"dsl", dsl}});
  }
  Certificate cert = check_pushout_condition(f, CheckOptions{false});
  std::erase_if(cert.witnesses, [&](const Witness& w) {
    return std::find(pairs.begin(), pairs.end(), std::pair<Mor, Mor>{w.u, w.v}) == pairs.end();
  });
  if (o.fail_fast && cert.witnesses.size() > 1) cert.witnesses.resize(1);
  const bool ok = all_iso && cert.witnesses.empty();
  for (const Witness& w : cert.witnesses) os << "# " << witness_text(f, w) << "\n";
  json in = functor_input(input, f);
  if (o.pair) in["pair"] = json::array({o.pair->first, o.pair->second});
  json report = make_report("complete-horn", in, ok ? "isomorphism" : "not_isomorphism",
                            witnesses_json(f, cert.witnesses), json{{"pairs", pairs.size()}}, o.seed);
  report["completions"] = std::move(completions);
  return finish(o, report, os.str(), ok ? 0 : 1);
}

CommandResult run_compose_prof(const Workspace& ws, std::string_view input, const CommandOptions& o) {
  if (ws.profunctors.size() < 2) throw UsageError("compose-prof needs at least two profunctor declarations");
  const auto& decls = ws.profunctors;
  const FinFunctor* f = ws.find_functor(decls.front().value.functor);
  bool same_functor = true;
  for (const auto& d : decls) same_functor = same_functor && d.value.functor == decls.front().value.functor;

  // Running composite, with the arrow of E each class composes to.
  Profunctor acc = decls.front().value.value.profunctor;
  std::vector<Mor> arrows = decls.front().value.value.morphisms;
  std::vector<std::size_t> raw_sizes;
  for (std::size_t i = 1; i < decls.size(); ++i) {
    const HomProfunctor& next = decls[i].value.value;
    const DiscreteCompletion d = discrete_completion(acc, next.profunctor);
    raw_sizes.push_back(d.raw.total());
    std::vector<Mor> composed(d.result.num_elements(), kNoMorphism);
    for (const auto& cell : d.raw.cells)
      for (const RawTerm& t : cell) {
        const std::size_t e = d.element_of(t.p, t.q);
        const Mor m = same_functor ? f->dom().compose(next.morphisms[t.q], arrows[t.p]) : kNoMorphism;
        if (composed[e] == kNoMorphism) composed[e] = m;
        else if (composed[e] != m) throw Error(ErrorKind::FunctorialityFailure, "composite is not constant on a class");
      }
    acc = d.result;
    arrows = std::move(composed);
  }

  std::ostringstream os;
  json witnesses = json::array();
  json values = json::array();
  std::string chain;
  for (const auto& d : decls) chain += (chain.empty() ? "" : " . ") + d.name;
  os << "composite of " << chain << ": " << acc.num_elements() << " classes\n";
  const FinCat& A = *acc.source();
  const FinCat& C = *acc.target();
  const auto& first = decls.front().value.value;
  const auto& last = decls.back().value.value;
  for (Obj a = 0; a < A.num_objects(); ++a)
    for (Obj c = 0; c < C.num_objects(); ++c) {
      const auto classes = acc.value(a, c);
      if (classes.empty()) continue;
      json labels = json::array();
      os << "  (" << A.object_name(a) << ", " << C.object_name(c) << "):";
      for (std::size_t e : classes) {
        os << " " << acc.label(e);
        labels.push_back(acc.label(e));
      }
      os << "\n";
      values.push_back(json{{"a", A.object_name(a)}, {"c", C.object_name(c)}, {"classes", std::move(labels)}});
    }

  bool ok = true;
  json stats{{"profunctors", decls.size()}, {"raw", raw_sizes}, {"classes", acc.num_elements()}};
  if (same_functor) {
    // Comparison into hom over the composite base arrow.
    const FinCat& E = f->dom();
    const FinCat& B = f->cod();
    Mor w = pick_morphism(B, decls.front().value.morphism);
    for (std::size_t i = 1; i < decls.size(); ++i) {
      const Mor next = pick_morphism(B, decls[i].value.morphism);
      if (B.tgt(w) != B.src(next)) throw UsageError("profunctor base arrows are not composable");
      w = B.compose(next, w);
    }
    const Mor u = pick_morphism(B, decls.front().value.morphism);
    const Mor v = pick_morphism(B, decls.back().value.morphism);
    for (Obj a = 0; a < A.num_objects(); ++a)
      for (Obj c = 0; c < C.num_objects(); ++c) {
        const Obj x = first.source_inclusion.map_object(a);
        const Obj z = last.target_inclusion.map_object(c);
        std::vector<Mor> target;
        for (Mor m : E.hom(x, z))
          if (f->map_morphism(m) == w) target.push_back(m);
        std::vector<std::size_t> hits(target.size(), 0);
        std::vector<std::size_t> first_class(target.size(), kNoElement);
        json collision;
        for (std::size_t e : acc.value(a, c)) {
          const auto it = std::find(target.begin(), target.end(), arrows[e]);
          if (it == target.end()) throw Error(ErrorKind::FunctorialityFailure, "class composite lies outside the hom set");
          const std::size_t t = static_cast<std::size_t>(it - target.begin());
          if (++hits[t] == 1) first_class[t] = e;
          else if (collision.is_null())
            collision = json{{"composite", E.morphism_name(arrows[e])},
                             {"first", acc.label(first_class[t])},
                             {"second", acc.label(e)}};
        }
        auto witness = [&](const char* failure, json evidence) {
          ok = false;
          witnesses.push_back(json{{"u", B.morphism_name(u)},
                                   {"v", B.morphism_name(v)},
                                   {"x", E.object_name(x)},
                                   {"z", E.object_name(z)},
                                   {"failure", failure},
                                   {"evidence", std::move(evidence)}});
          os << "  " << failure << " at (" << E.object_name(x) << ", " << E.object_name(z) << ")\n";
        };
        for (std::size_t t = 0; t < target.size(); ++t)
          if (hits[t] == 0) {
            witness("non_surjective", json{{"missing", E.morphism_name(target[t])}});
            break;
          }
        if (!collision.is_null()) witness("non_injective", std::move(collision));
      }
    os << "comparison into hom over " << B.morphism_name(w) << ": " << (ok ? "bijective" : "NOT bijective") << "\n";
    stats["comparison"] = ok ? "bijective" : "not_bijective";
  }
  if (decls.size() == 3) {
    const AssociativityReport r =
        check_associativity(decls[0].value.value.profunctor, decls[1].value.value.profunctor,
                            decls[2].value.value.profunctor);
    os << "associativity: " << r.left_classes << " and " << r.right_classes << " classes over " << r.triples
       << " triples, " << (r.bijective ? "canonical bijection" : "NO canonical bijection") << "\n";
    stats["associativity"] = r.bijective;
    ok = ok && r.bijective;
  }
  if (o.fail_fast && witnesses.size() > 1) witnesses.erase(witnesses.begin() + 1, witnesses.end());
  json report = make_report("compose-prof", json{{"file", input}, {"chain", chain}}, ok ? "bijective" : "not_bijective",
                            witnesses, stats, o.seed);
  report["values"] = std::move(values);
  return finish(o, report, os.str(), ok ? 0 : 1);
}

json cell_names(const TruncSSet& s, int level, const std::vector<Cell>& cells) {
  json out = json::array();
  for (Cell c : cells) out.push_back(s.cells[level][c]);
  return out;
}

CommandResult run_nerve_check(const Workspace& ws, std::string_view input, const CommandOptions& o) {
  std::ostringstream os;
  json witnesses = json::array();
  std::size_t horns = 0, spines = 0;
  auto record = [&](const std::string& what, const TruncSSet& s, const SegalReport& r, const TruncSSet* base) {
    horns += r.horns;
    spines += r.spines;
    os << what << ": " << r.horns << " horns, " << r.spines << " spines, "
       << (r.passes() ? "ok" : std::to_string(r.violations.size()) + " violations") << "\n";
    for (const SegalViolation& v : r.violations) {
      const bool horn = v.spine.size() == 2;
      const int filler_level = horn ? 2 : 3;
      const Cell first = v.spine.front(), last = v.spine.back();
      json evidence{{"sset", s.name},
                    {"spine", cell_names(s, 1, v.spine)},
                    {"fillers", cell_names(s, filler_level, v.fillers)}};
      if (base && v.base != kNoCell) evidence["base"] = base->cells[2][v.base];
      json w{{"u", horn ? json(s.cells[1][first]) : json(nullptr)},
             {"v", horn ? json(s.cells[1][last]) : json(nullptr)},
             {"x", s.cells[0][s.face(1, 1, first)]},
             {"z", s.cells[0][s.face(1, 0, last)]},
             {"failure", to_string(v.kind)},
             {"evidence", std::move(evidence)}};
      os << "  " << to_string(v.kind) << " at (";
      for (std::size_t i = 0; i < v.spine.size(); ++i) os << (i ? ", " : "") << s.cells[1][v.spine[i]];
      os << ")";
      if (!v.fillers.empty()) {
        os << ":";
        for (Cell c : v.fillers) os << " " << s.cells[filler_level][c];
      }
      os << "\n";
      witnesses.push_back(std::move(w));
    }
  };
  for (const auto& s : ws.ssets) record("sset " + s.name, s.value, segal_check(s.value), nullptr);
  for (const auto& c : ws.categories) {
    const TruncSSet n = nerve_trunc(*c.value);
    record("nerve of " + c.name, n, segal_check(n), nullptr);
  }
  for (const auto& f : ws.functors) {
    const TruncSSet src = nerve_trunc(f.value.dom());
    const TruncSSet tgt = nerve_trunc(f.value.cod());
    record("inner lifts of " + f.name, src, inner_lift_check(src, tgt, nerve_map(f.value, src, tgt)), &tgt);
  }
  if (o.fail_fast && witnesses.size() > 1) witnesses.erase(witnesses.begin() + 1, witnesses.end());
  const bool ok = witnesses.empty();
  const json stats{{"ssets", ws.ssets.size()},
                   {"categories", ws.categories.size()},
                   {"functors", ws.functors.size()},
                   {"horns", horns},
                   {"spines", spines}};
  const json report =
      make_report("nerve-check", json{{"file", input}}, ok ? "segal" : "not_segal", witnesses, stats, o.seed);
  return finish(o, report, os.str(), ok ? 0 : 1);
}

CommandResult run_corpus(const CommandOptions& o) {
  const auto instances = generate_corpus(o.seed, CorpusBounds{o.max_objects, o.max_morphisms}, o.count);
  std::ostringstream os;
  os << "# corpus seed " << o.seed << ", bounds (" << o.max_objects << ", " << o.max_morphisms << "), "
     << instances.size() << " instances\n";
  json list = json::array();
  std::size_t accepted = 0;
  for (const CorpusInstance& i : instances) {
    const FinFunctor& f = i.functor;
    const Certificate cert = check_exponentiable(f);
    accepted += cert.accepted();
    os << "\n# " << f.name() << ": " << to_string(i.source_family) << " -> " << to_string(i.target_family) << ", "
       << to_string(cert.verdict) << "\n"
       << print_category(f.dom()) << print_category(f.cod()) << print_functor(f);
    list.push_back(json{{"functor", f.name()},
                        {"source", f.dom().name()},
                        {"target", f.cod().name()},
                        {"source_family", to_string(i.source_family)},
                        {"target_family", to_string(i.target_family)},
                        {"source_size", {f.dom().num_objects(), f.dom().num_morphisms()}},
                        {"target_size", {f.cod().num_objects(), f.cod().num_morphisms()}},
                        {"verdict", to_string(cert.verdict)}});
  }
  const json in{{"bounds", {o.max_objects, o.max_morphisms}}, {"count", o.count}};
  const json stats{{"instances", instances.size()}, {"accepted", accepted}, {"refuted", instances.size() - accepted}};
  json report = make_report("corpus", in, "generated", json::array(), stats, o.seed);
  report["instances"] = std::move(list);
  return finish(o, report, os.str(), 0);
}

CommandResult error_result(std::string_view command, std::string_view input, const CommandOptions& o,
                           std::string_view kind, const std::string& message, const Error* located) {
  CommandResult r{2, {}, message};
  if (o.json) {
    json report = make_report(command, json{{"file", input}}, "error", json::array(), json::object(), o.seed);
    json err{{"kind", kind}, {"message", message}};
    if (located && located->has_location()) {
      err["line"] = located->location().line;
      err["column"] = located->location().column;
    }
    report["error"] = std::move(err);
    r.output = dump(report);
  }
  return r;
}

template <typename Body>
CommandResult guarded(std::string_view command, std::string_view input, const CommandOptions& o, Body&& body) {
  try {
    BudgetScope scope(o.budget);
    return body();
  } catch (const UsageError& e) {
    return error_result(command, input, o, "usage", e.what(), nullptr);
  } catch (const Error& e) {
    return error_result(command, input, o, to_string(e.kind()), e.what(), &e);
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"validate",      "check-exp",    "check-pushout",
                                              "build-exp",     "verify-up",    "complete-horn",
                                              "compose-prof",  "nerve-check",  "corpus"};
  return names;
}

std::string certificate_json(std::string_view kind, std::string_view input, const FinFunctor& f,
                             const Certificate& cert, std::uint64_t seed) {
  return dump(make_report(kind, functor_input(input, f), to_string(cert.verdict), witnesses_json(f, cert.witnesses),
                          certificate_stats(cert), seed));
}

std::string certificate_text(const FinFunctor& f, const Certificate& cert) { return certificate_text_impl(f, cert); }

CommandResult run_command(std::string_view command, const Workspace& ws, std::string_view input,
                          const CommandOptions& o) {
  return guarded(command, input, o, [&]() -> CommandResult {
    if (command == "validate") return run_validate(ws, input, o);
    if (command == "check-exp" || command == "check-pushout") return run_check(command, ws, input, o);
    if (command == "build-exp") return run_build_exp(ws, input, o);
    if (command == "verify-up") return run_verify_up(ws, input, o);
    if (command == "complete-horn") return run_complete_horn(ws, input, o);
    if (command == "compose-prof") return run_compose_prof(ws, input, o);
    if (command == "nerve-check") return run_nerve_check(ws, input, o);
    if (command == "corpus") return run_corpus(o);
    throw UsageError("unknown command '" + std::string(command) + "'");
  });
}

CommandResult run_command(std::string_view command, std::string_view input, std::string_view text,
                          const CommandOptions& o) {
  if (command == "corpus") return guarded(command, input, o, [&] { return run_corpus(o); });
  if (std::find(command_names().begin(), command_names().end(), command) == command_names().end())
    return error_result(command, input, o, "usage", "unknown command '" + std::string(command) + "'", nullptr);
  std::optional<Workspace> ws;
  const CommandResult failed = guarded(command, input, o, [&] {
    ParseOptions po;
    po.closure_budget = o.budget.value_or(std::min<std::uint64_t>(default_search_budget(), kDefaultClosureBudget));
    ws = parse_workspace(text, po);
    return CommandResult{};
  });
  if (!ws) return failed;
  return run_command(command, *ws, input, o);
}

}  // namespace conduche
