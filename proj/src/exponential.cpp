#include "conduche/exponential.hpp"

#include <algorithm>
#include <string>

#include "conduche/coend.hpp"
#include "conduche/error.hpp"
#include "conduche/exponentiable.hpp"
#include "conduche/fiber.hpp"

namespace conduche {

namespace {

std::vector<std::uint32_t> object_key(const ExpObject& o) {
  std::vector<std::uint32_t> k{o.base};
  k.insert(k.end(), o.object_map.begin(), o.object_map.end());
  k.insert(k.end(), o.morphism_map.begin(), o.morphism_map.end());
  return k;
}

std::vector<std::uint32_t> morphism_key(const ExpMorphism& m) {
  std::vector<std::uint32_t> k{m.base, m.source, m.target};
  k.insert(k.end(), m.family.begin(), m.family.end());
  return k;
}

// Equivariant families over one morphism u of B for a fixed pair (F, G).
class FamilySearch {
 public:
  FamilySearch(const FunctorIndex& e_index, const FunctorIndex& p_index, Mor u, const ExpObject& F,
               const ExpObject& G, const SearchOptions& options)
      : e_(e_index), p_(p_index), F_(F), G_(G), options_(options) {
    const FinCat& E = e_.functor().dom();
    const FinCat& B = e_.functor().cod();
    for (Mor j : e_.morphisms_over(u)) elements_.push_back(j);
    position_.assign(E.num_morphisms(), kNoMorphism);
    for (std::size_t i = 0; i < elements_.size(); ++i) position_[elements_[i]] = static_cast<Mor>(i);
    checks_.assign(elements_.size(), {});
    const Mor id_a = B.identity(B.src(u));
    const Mor id_b = B.identity(B.tgt(u));
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      const Mor j = elements_[i];
      for (Mor k : e_.morphisms_over(id_b)) {
        if (E.src(k) != E.tgt(j)) continue;
        add_check({Check::Left, static_cast<Mor>(i), position_[E.compose(k, j)], k});
      }
      for (Mor k : e_.morphisms_over(id_a)) {
        if (E.tgt(k) != E.src(j)) continue;
        add_check({Check::Right, static_cast<Mor>(i), position_[E.compose(j, k)], k});
      }
    }
    value_.assign(elements_.size(), kNoMorphism);
  }

  template <typename Visit>
  void run(Visit&& visit) {
    assign(0, visit);
  }

  const std::vector<Mor>& elements() const { return elements_; }

 private:
  struct Check {
    enum Side { Left, Right } side;
    Mor from;  // position of j
    Mor to;    // position of k . j or j . k
    Mor k;
  };

  void add_check(const Check& c) { checks_[std::max(c.from, c.to)].push_back(c); }

  bool holds(const Check& c) const {
    const FinCat& P = p_.functor().dom();
    const Mor phi = value_[c.from];
    const Mor expected = c.side == Check::Left ? P.compose(G_.morphism_map[c.k], phi)
                                               : P.compose(phi, F_.morphism_map[c.k]);
    return value_[c.to] == expected;
  }

  template <typename Visit>
  bool assign(std::size_t i, Visit& visit) {
    if (i == elements_.size()) return visit(value_);
    const FinCat& E = e_.functor().dom();
    const Mor j = elements_[i];
    const Obj fx = F_.object_map[E.src(j)];
    const Obj gy = G_.object_map[E.tgt(j)];
    for (Mor c : p_.arrows(e_.functor().map_morphism(j), fx, gy)) {
      if (++nodes_ > options_.budget)
        throw Error(ErrorKind::BudgetExceeded, "family search exceeded " + std::to_string(options_.budget) + " nodes");
      value_[i] = c;
      if (!std::all_of(checks_[i].begin(), checks_[i].end(), [&](const Check& ch) { return holds(ch); })) continue;
      if (!assign(i + 1, visit)) return false;
    }
    value_[i] = kNoMorphism;
    return true;
  }

  const FunctorIndex& e_;
  const FunctorIndex& p_;
  const ExpObject& F_;
  const ExpObject& G_;
  const SearchOptions& options_;
  std::vector<Mor> elements_;
  std::vector<Mor> position_;
  std::vector<std::vector<Check>> checks_;
  std::vector<Mor> value_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::optional<Obj> ExpCat::find_object(const ExpObject& o) const {
  auto it = object_index.find(object_key(o));
  if (it == object_index.end()) return std::nullopt;
  return it->second;
}

std::optional<Mor> ExpCat::find_morphism(const ExpMorphism& m) const {
  auto it = morphism_index.find(morphism_key(m));
  if (it == morphism_index.end()) return std::nullopt;
  return it->second;
}

ExpCat build_exponential(const FinFunctor& f, const FinFunctor& g, const ExpOptions& options) {
  if (!f.cod().same_structure(g.cod()))
    throw Error(ErrorKind::InvalidArgument, "build_exponential: f and g have different bases");
  if (!options.force) {
    CheckOptions check;
    check.fail_fast = true;
    if (!check_exponentiable(f, check).accepted())
      throw Error(ErrorKind::NotExponentiable, "'" + f.name() + "' fails the coend criterion");
  }
  const FinCat& E = f.dom();
  const FinCat& P = g.dom();
  const FinCat& B = f.cod();
  const FunctorIndex e_index(f);
  const FunctorIndex p_index(g);

  ExpCat exp;
  exp.f = f;
  exp.g = g;
  RawCategory raw;
  raw.name = "[" + E.name() + "," + P.name() + "]";

  // Objects: functors between fibers, fiber by fiber.
  std::vector<std::vector<Obj>> objects_over(B.num_objects());
  for (Obj b = 0; b < B.num_objects(); ++b) {
    const FiberCat eb = fiber(f, b);
    const FiberCat pb = fiber(g, b);
    for (const FinFunctor& F : enumerate_functors(eb.category, pb.category, options.search)) {
      ExpObject o{b, std::vector<Obj>(E.num_objects(), kNoObject), std::vector<Mor>(E.num_morphisms(), kNoMorphism)};
      for (Obj x = 0; x < eb.category->num_objects(); ++x)
        o.object_map[eb.inclusion.map_object(x)] = pb.inclusion.map_object(F.map_object(x));
      for (Mor k = 0; k < eb.category->num_morphisms(); ++k)
        o.morphism_map[eb.inclusion.map_morphism(k)] = pb.inclusion.map_morphism(F.map_morphism(k));
      const auto index = static_cast<Obj>(exp.objects.size());
      objects_over[b].push_back(index);
      exp.object_index.emplace(object_key(o), index);
      raw.objects.push_back("F" + std::to_string(objects_over[b].size() - 1) + "@" + B.object_name(b));
      exp.objects.push_back(std::move(o));
    }
  }
  for (Obj i = 0; i < exp.objects.size(); ++i) {
    const ExpObject& o = exp.objects[i];
    ExpMorphism id{B.identity(o.base), i, i, std::vector<Mor>(E.num_morphisms(), kNoMorphism)};
    for (Mor k : e_index.morphisms_over(id.base)) id.family[k] = o.morphism_map[k];
    exp.morphism_index.emplace(morphism_key(id), i);
    exp.morphisms.push_back(std::move(id));
  }

  // Morphisms: equivariant families over each u of B.
  for (Mor u = 0; u < B.num_morphisms(); ++u) {
    std::size_t local = 0;
    for (Obj F : objects_over[B.src(u)]) {
      for (Obj G : objects_over[B.tgt(u)]) {
        FamilySearch search(e_index, p_index, u, exp.objects[F], exp.objects[G], options.search);
        const std::vector<Mor>& elements = search.elements();
        search.run([&](const std::vector<Mor>& values) {
          ExpMorphism m{u, F, G, std::vector<Mor>(E.num_morphisms(), kNoMorphism)};
          for (std::size_t i = 0; i < elements.size(); ++i) m.family[elements[i]] = values[i];
          auto key = morphism_key(m);
          if (exp.morphism_index.count(key)) return true;  // an identity
          const auto index = static_cast<Mor>(exp.morphisms.size());
          exp.morphism_index.emplace(std::move(key), index);
          raw.arrows.push_back({"phi" + std::to_string(local++) + "@" + B.morphism_name(u), F, G});
          exp.morphisms.push_back(std::move(m));
          return true;
        });
      }
    }
  }

  // Composition through coend factorizations. For each (u, v, x, z) the
  // generators of each target m, least first.
  struct Factorizations {
    std::vector<Mor> targets;
    std::vector<std::vector<CoendGenerator>> by_target;
  };
  std::map<std::pair<Mor, Mor>, std::vector<std::pair<std::pair<Obj, Obj>, Factorizations>>> cache;
  auto factorizations = [&](Mor u, Mor v) -> const auto& {
    auto [it, fresh] = cache.try_emplace({u, v});
    if (!fresh) return it->second;
    for (Obj x : e_index.objects_over(B.src(u))) {
      for (Obj z : e_index.objects_over(B.tgt(v))) {
        const CoendResult r = coend_compose(e_index, u, v, x, z);
        Factorizations fz;
        fz.targets = r.target;
        fz.by_target.resize(r.target.size());
        for (const CoendGenerator& gen : r.generators) {
          const Mor m = E.compose(gen.l, gen.j);
          const auto pos = std::find(r.target.begin(), r.target.end(), m) - r.target.begin();
          fz.by_target[pos].push_back(gen);
        }
        it->second.push_back({{x, z}, std::move(fz)});
      }
    }
    return it->second;
  };

  const auto n = static_cast<Mor>(exp.objects.size());
  for (Mor a = n; a < exp.morphisms.size(); ++a) {
    for (Mor b = 0; b < exp.morphisms.size(); ++b) {
      const ExpMorphism& phi = exp.morphisms[a];
      const ExpMorphism& psi = exp.morphisms[b];
      if (b < n || psi.source != phi.target) continue;
      const Mor u = phi.base, v = psi.base;
      ExpMorphism comp{B.compose(v, u), phi.source, psi.target, std::vector<Mor>(E.num_morphisms(), kNoMorphism)};
      for (const auto& [xz, fz] : factorizations(u, v)) {
        for (std::size_t t = 0; t < fz.targets.size(); ++t) {
          const Mor m = fz.targets[t];
          const auto& gens = fz.by_target[t];
          if (gens.empty())
            throw Error(ErrorKind::AmbiguousComposition,
                        "no factorization of '" + E.morphism_name(m) + "' through the middle fiber");
          const Mor value = P.compose(psi.family[gens[0].l], phi.family[gens[0].j]);
          for (const CoendGenerator& other : gens) {
            if (P.compose(psi.family[other.l], phi.family[other.j]) != value)
              throw Error(ErrorKind::AmbiguousComposition,
                          "'" + E.morphism_name(m) + "' = " + E.morphism_name(gens[0].l) + " . " +
                              E.morphism_name(gens[0].j) + " and " + E.morphism_name(other.l) + " . " +
                              E.morphism_name(other.j) + " give different composites");
          }
          comp.family[m] = value;
        }
      }
      const auto found = exp.find_morphism(comp);
      if (!found)
        throw Error(ErrorKind::AmbiguousComposition, "composite of '" + raw.arrows[b - n].name + "' and '" +
                                                         raw.arrows[a - n].name + "' is not an equivariant family");
      raw.composites.push_back({b, a, *found});
    }
  }
  exp.category = make_cat(validate_category(raw));
  std::vector<Obj> pobj;
  std::vector<Mor> pmor;
  for (const ExpObject& o : exp.objects) pobj.push_back(o.base);
  for (const ExpMorphism& m : exp.morphisms) pmor.push_back(m.base);
  exp.projection = validate_functor(RawFunctor{"projection", pobj, pmor}, exp.category, f.target());
  return exp;
}

Evaluation evaluation(const ExpCat& exp) {
  Evaluation ev;
  ev.domain = pullback_cat(exp.projection, exp.f);
  const FinCat& D = *ev.domain.cat;
  RawFunctor raw{"ev", {}, {}};
  for (Obj o = 0; o < D.num_objects(); ++o)
    raw.object_map.push_back(exp.objects[ev.domain.first.map_object(o)].object_map[ev.domain.second.map_object(o)]);
  for (Mor k = 0; k < D.num_morphisms(); ++k)
    raw.morphism_map.push_back(exp.morphisms[ev.domain.first.map_morphism(k)].family[ev.domain.second.map_morphism(k)]);
  ev.functor = validate_functor(raw, ev.domain.cat, exp.g.source());
  return ev;
}

UniversalPropertyReport verify_universal_property(const ExpCat& exp, const FinFunctor& x_over_b,
                                                  const SearchOptions& options) {
  const FinCat& X = x_over_b.dom();
  const FinCat& E = exp.f.dom();
  const SpanCat xe = pullback_cat(x_over_b, exp.f);
  const FinCat& XE = *xe.cat;
  const FinFunctor xe_over_b = compose_functors(x_over_b, xe.first);
  const RelHomSet lhs = relative_hom(xe_over_b, exp.g, options);
  const RelHomSet rhs = relative_hom(x_over_b, exp.projection, options);

  std::map<std::pair<Obj, Obj>, Obj> xe_obj;
  std::map<std::pair<Mor, Mor>, Mor> xe_mor;
  for (Obj o = 0; o < XE.num_objects(); ++o) xe_obj[{xe.first.map_object(o), xe.second.map_object(o)}] = o;
  for (Mor k = 0; k < XE.num_morphisms(); ++k) xe_mor[{xe.first.map_morphism(k), xe.second.map_morphism(k)}] = k;

  std::map<std::vector<Mor>, std::size_t> rhs_at;
  for (std::size_t i = 0; i < rhs.members.size(); ++i) rhs_at.emplace(rhs.members[i].morphism_map(), i);
  std::map<std::vector<Mor>, std::size_t> lhs_at;
  for (std::size_t i = 0; i < lhs.members.size(); ++i) lhs_at.emplace(lhs.members[i].morphism_map(), i);

  UniversalPropertyReport rep;
  rep.lhs = lhs.members.size();
  rep.rhs = rhs.members.size();
  bool ok = true;

  // h |-> its transpose: x |-> h(x, -), s |-> h(s, -).
  for (const FinFunctor& h : lhs.members) {
    std::vector<Mor> mm(X.num_morphisms(), kNoMorphism);
    bool found_all = true;
    for (Mor s = 0; s < X.num_morphisms() && found_all; ++s) {
      const Mor u = x_over_b.map_morphism(s);
      auto fiber_functor = [&](Obj x) {
        ExpObject o{x_over_b.map_object(x), std::vector<Obj>(E.num_objects(), kNoObject),
                    std::vector<Mor>(E.num_morphisms(), kNoMorphism)};
        const Mor id_b = exp.f.cod().identity(o.base);
        for (Obj e = 0; e < E.num_objects(); ++e)
          if (exp.f.map_object(e) == o.base) o.object_map[e] = h.map_object(xe_obj.at({x, e}));
        for (Mor k = 0; k < E.num_morphisms(); ++k)
          if (exp.f.map_morphism(k) == id_b) o.morphism_map[k] = h.map_morphism(xe_mor.at({X.identity(x), k}));
        return exp.find_object(o);
      };
      const auto F = fiber_functor(X.src(s));
      const auto G = fiber_functor(X.tgt(s));
      if (!F || !G) {
        found_all = false;
        break;
      }
      ExpMorphism m{u, *F, *G, std::vector<Mor>(E.num_morphisms(), kNoMorphism)};
      for (Mor j = 0; j < E.num_morphisms(); ++j)
        if (exp.f.map_morphism(j) == u) m.family[j] = h.map_morphism(xe_mor.at({s, j}));
      const auto k = exp.find_morphism(m);
      if (!k) found_all = false;
      else mm[s] = *k;
    }
    auto it = found_all ? rhs_at.find(mm) : rhs_at.end();
    if (it == rhs_at.end()) {
      ok = false;
      rep.transpose.push_back(static_cast<std::size_t>(-1));
      continue;
    }
    rep.transpose.push_back(it->second);
  }

  // H |-> ev . (H x_B E), which must invert the transpose.
  std::vector<bool> hit(rhs.members.size(), false);
  for (std::size_t i = 0; i < rhs.members.size(); ++i) {
    const FinFunctor& H = rhs.members[i];
    std::vector<Mor> mm(XE.num_morphisms());
    for (Mor k = 0; k < XE.num_morphisms(); ++k)
      mm[k] = exp.morphisms[H.map_morphism(xe.first.map_morphism(k))].family[xe.second.map_morphism(k)];
    auto it = lhs_at.find(mm);
    if (it == lhs_at.end() || rep.transpose[it->second] != i) ok = false;
    else hit[i] = true;
  }
  for (std::size_t i = 0; i < rep.transpose.size(); ++i)
    if (rep.transpose[i] == static_cast<std::size_t>(-1)) ok = false;
  rep.bijective = ok && rep.lhs == rep.rhs && std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  return rep;
}

Subcategory exp_fiber(const ExpCat& exp, Obj b) {
  const FinCat& C = *exp.category;
  const Mor id_b = exp.f.cod().identity(b);
  std::vector<Obj> objs;
  std::vector<Mor> mors;
  for (Obj o = 0; o < C.num_objects(); ++o)
    if (exp.objects[o].base == b) objs.push_back(o);
  for (Mor k = 0; k < C.num_morphisms(); ++k)
    if (exp.morphisms[k].base == id_b) mors.push_back(k);
  return subcategory(exp.category, objs, mors, C.name() + "_" + exp.f.cod().object_name(b));
}

}  // namespace conduche
