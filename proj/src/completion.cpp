#include "conduche/completion.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>

#include "conduche/error.hpp"
#include "conduche/union_find.hpp"

namespace conduche {

namespace {

// Morphisms of [2] as laid out by interval_cat(2).
constexpr Mor kEdge01 = 3;
constexpr Mor kEdge02 = 4;
constexpr Mor kEdge12 = 5;

const char* edge_label(Mor edge) {
  static const char* labels[] = {"0", "1", "2", "01", "02", "12"};
  return labels[edge];
}

std::uint64_t key2(std::uint32_t a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }

FinFunctor edge_in(const CatPtr& base, Obj a, Obj b, Mor u, const char* name) {
  CatPtr one = interval_cat(1);
  return validate_functor(RawFunctor{name, {a, b}, {base->identity(a), base->identity(b), u}}, one, base);
}

}  // namespace

FinFunctor simplex_in(const CatPtr& base, Mor u, Mor v) {
  const FinCat& B = *base;
  if (B.tgt(u) != B.src(v)) throw Error(ErrorKind::NotComposable, "simplex: u and v are not composable");
  const Obj a = B.src(u), b = B.tgt(u), c = B.tgt(v);
  return validate_functor(
      RawFunctor{"alpha", {a, b, c}, {B.identity(a), B.identity(b), B.identity(c), u, B.compose(v, u), v}},
      interval_cat(2), base);
}

HornGluing horn_gluing(const FinFunctor& f, Mor u, Mor v) {
  const FinCat& E = f.dom();
  const FinCat& B = f.cod();
  HornGluing h;
  h.f = f;
  h.u = u;
  h.v = v;
  h.alpha = simplex_in(f.target(), u, v);
  h.lower = pullback_cat(f, edge_in(f.target(), B.src(u), B.tgt(u), u, "alpha01"));
  h.upper = pullback_cat(f, edge_in(f.target(), B.src(v), B.tgt(v), v, "alpha12"));
  h.shared = fiber(f, B.tgt(u));

  // Collect cells of both pieces as (E-cell, level/edge) keys.
  std::map<std::pair<Obj, Obj>, Obj> objects;
  std::map<std::pair<Mor, Mor>, Mor> morphisms;
  const Mor lower_edge[] = {0, 1, kEdge01};
  const Mor upper_edge[] = {1, 2, kEdge12};
  auto collect = [&](const SpanCat& piece, Obj level_offset, const Mor* edges) {
    const FinCat& P = *piece.cat;
    for (Obj o = 0; o < P.num_objects(); ++o)
      objects.emplace(std::pair{piece.first.map_object(o), piece.second.map_object(o) + level_offset}, 0);
    for (Mor k = 0; k < P.num_morphisms(); ++k)
      if (!P.is_identity(k)) morphisms.emplace(std::pair{piece.first.map_morphism(k), edges[piece.second.map_morphism(k)]}, 0);
  };
  collect(h.lower, 0, lower_edge);
  collect(h.upper, 1, upper_edge);

  for (auto& [key, index] : objects) {
    index = static_cast<Obj>(h.object_e.size());
    h.object_e.push_back(key.first);
    h.object_level.push_back(key.second);
    h.object_names.push_back(E.object_name(key.first) + "@" + std::to_string(key.second));
  }
  const auto n = static_cast<Mor>(objects.size());
  h.shape.num_objects = n;
  for (Obj o = 0; o < n; ++o) {
    h.morphism_e.push_back(E.identity(h.object_e[o]));
    h.morphism_edge.push_back(h.object_level[o]);
    h.morphism_names.push_back(identity_name(h.object_names[o]));
    h.shape.src.push_back(o);
    h.shape.tgt.push_back(o);
  }
  for (auto& [key, index] : morphisms) {
    const auto [j, edge] = key;
    index = static_cast<Mor>(h.morphism_e.size());
    h.morphism_e.push_back(j);
    h.morphism_edge.push_back(edge);
    h.morphism_names.push_back(E.morphism_name(j) + "@" + edge_label(edge));
    const Obj src_level = edge == kEdge12 ? 1 : (edge == kEdge01 ? 0 : edge);
    const Obj tgt_level = edge == kEdge01 ? 1 : (edge == kEdge12 ? 2 : edge);
    h.shape.src.push_back(objects.at({E.src(j), src_level}));
    h.shape.tgt.push_back(objects.at({E.tgt(j), tgt_level}));
  }

  auto cell_of = [&](const SpanCat& piece, const Mor* edges, Mor k) -> Mor {
    const FinCat& P = *piece.cat;
    if (P.is_identity(k)) {
      const Obj level = edges[piece.second.map_morphism(k)];
      return objects.at({piece.first.map_object(P.src(k)), level});
    }
    return morphisms.at({piece.first.map_morphism(k), edges[piece.second.map_morphism(k)]});
  };
  std::unordered_map<std::uint64_t, Mor> defined;
  auto add_composites = [&](const SpanCat& piece, const Mor* edges) {
    const FinCat& P = *piece.cat;
    for (Mor fk = 0; fk < P.num_morphisms(); ++fk) {
      if (P.is_identity(fk)) continue;
      for (Mor gk : P.outgoing(P.tgt(fk))) {
        if (P.is_identity(gk)) continue;
        const Mor g = cell_of(piece, edges, gk), f2 = cell_of(piece, edges, fk);
        const Mor r = cell_of(piece, edges, P.compose(gk, fk));
        auto [it, fresh] = defined.emplace(key2(g, f2), r);
        if (!fresh && it->second != r)
          throw Error(ErrorKind::Collapse, "horn gluing pieces disagree on the shared fiber");
        if (fresh) h.shape.composites.push_back({g, f2, r});
      }
    }
  };
  add_composites(h.lower, lower_edge);
  add_composites(h.upper, upper_edge);
  std::sort(h.shape.composites.begin(), h.shape.composites.end(),
            [](const RawComposite& a, const RawComposite& b) { return std::tie(a.f, a.g) < std::tie(b.f, b.g); });
  return h;
}

CompletionResult complete_horn_gluing(const HornGluing& h) {
  const std::size_t n = h.num_objects();
  const std::size_t m = h.num_morphisms();
  std::unordered_map<std::uint64_t, Mor> comp;
  for (const RawComposite& c : h.shape.composites) comp.emplace(key2(c.g, c.f), c.h);
  auto glue_compose = [&](Mor g, Mor f) -> Mor {
    if (f < n) return g;
    if (g < n) return f;
    return comp.at(key2(g, f));
  };

  std::vector<Mor> over01, over12, level0, level1, level2;
  for (Mor k = static_cast<Mor>(n); k < m; ++k) {
    switch (h.morphism_edge[k]) {
      case kEdge01: over01.push_back(k); break;
      case kEdge12: over12.push_back(k); break;
      case 0: level0.push_back(k); break;
      case 1: level1.push_back(k); break;
      case 2: level2.push_back(k); break;
      default: break;
    }
  }

  // Composable pairs across the middle level, sorted by underlying E-morphisms.
  struct Gen {
    Mor first;
    Mor second;
  };
  std::vector<Gen> gens;
  for (Mor a : over01)
    for (Mor b : over12)
      if (h.shape.tgt[a] == h.shape.src[b]) gens.push_back({a, b});
  std::sort(gens.begin(), gens.end(), [&](const Gen& p, const Gen& q) {
    return std::pair{h.morphism_e[p.first], h.morphism_e[p.second]} <
           std::pair{h.morphism_e[q.first], h.morphism_e[q.second]};
  });
  std::unordered_map<std::uint64_t, std::size_t> gen_at;
  for (std::size_t i = 0; i < gens.size(); ++i) gen_at.emplace(key2(gens[i].first, gens[i].second), i);

  UnionFind uf(gens.size());
  for (Mor k : level1) {
    for (Mor a : over01) {
      if (h.shape.tgt[a] != h.shape.src[k]) continue;
      for (Mor b : over12) {
        if (h.shape.src[b] != h.shape.tgt[k]) continue;
        uf.unite(gen_at.at(key2(glue_compose(k, a), b)), gen_at.at(key2(a, glue_compose(b, k))));
      }
    }
  }

  CompletionResult r;
  r.gluing = h;
  RawCategory raw;
  raw.name = h.f.dom().name() + "_completed";
  raw.objects = h.object_names;
  for (Mor k = static_cast<Mor>(n); k < m; ++k) raw.arrows.push_back({h.morphism_names[k], h.shape.src[k], h.shape.tgt[k]});
  std::vector<Mor> class_morphism(gens.size(), kNoMorphism);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::size_t root = uf.find(i);
    if (class_morphism[root] == kNoMorphism) {
      class_morphism[root] = static_cast<Mor>(n + raw.arrows.size());
      raw.arrows.push_back({"[" + h.morphism_names[gens[i].second] + "." + h.morphism_names[gens[i].first] + "]",
                            h.shape.src[gens[i].first], h.shape.tgt[gens[i].second]});
      r.added.push_back({class_morphism[root], gens[i].first, gens[i].second});
    }
  }
  auto class_of = [&](Mor a, Mor b) { return class_morphism[uf.find(gen_at.at(key2(a, b)))]; };

  raw.composites = h.shape.composites;
  for (const Gen& g : gens) raw.composites.push_back({g.second, g.first, class_of(g.first, g.second)});
  for (const auto& added : r.added) {
    for (Mor k0 : level0)
      if (h.shape.tgt[k0] == h.shape.src[added.first])
        raw.composites.push_back({added.morphism, k0, class_of(glue_compose(added.first, k0), added.second)});
    for (Mor k2 : level2)
      if (h.shape.src[k2] == h.shape.tgt[added.second])
        raw.composites.push_back({k2, added.morphism, class_of(added.first, glue_compose(k2, added.second))});
  }
  r.completed = make_cat(validate_category(raw));
  const FinCat& C = *r.completed;

  r.unit.resize(m);
  for (Mor k = 0; k < m; ++k) r.unit[k] = k;

  std::vector<Mor> edge_of(C.num_morphisms(), kEdge02);
  for (Mor k = 0; k < m; ++k) edge_of[k] = h.morphism_edge[k];
  r.levels = validate_functor(RawFunctor{"levels", h.object_level, edge_of}, r.completed, interval_cat(2));
  r.projection = compose_functors(h.alpha, r.levels).renamed("projection");

  r.full = pullback_cat(h.f, h.alpha);
  const FinCat& F1 = *r.full.cat;
  std::map<std::pair<Obj, Obj>, Obj> full_obj;
  std::map<std::pair<Mor, Mor>, Mor> full_mor;
  for (Obj o = 0; o < F1.num_objects(); ++o) full_obj[{r.full.first.map_object(o), r.full.second.map_object(o)}] = o;
  for (Mor k = 0; k < F1.num_morphisms(); ++k) full_mor[{r.full.first.map_morphism(k), r.full.second.map_morphism(k)}] = k;
  std::vector<Obj> cmp_obj(n);
  for (Obj o = 0; o < n; ++o) cmp_obj[o] = full_obj.at({h.object_e[o], h.object_level[o]});
  std::vector<Mor> cmp_mor(C.num_morphisms());
  for (Mor k = 0; k < m; ++k) cmp_mor[k] = full_mor.at({h.morphism_e[k], h.morphism_edge[k]});
  for (const auto& added : r.added) cmp_mor[added.morphism] = F1.compose(cmp_mor[added.second], cmp_mor[added.first]);
  r.comparison = validate_functor(RawFunctor{"comparison", cmp_obj, cmp_mor}, r.completed, r.full.cat);
  return r;
}

namespace {

// The part of a shape on a set of objects, renumbered with identities first.
struct SubShape {
  Shape shape;
  std::vector<Mor> local;  // old morphism -> new, kNoMorphism if dropped
  std::vector<Mor> old;    // new morphism -> old
  std::vector<Obj> objects;  // new object -> old
};

SubShape restrict_shape(const Shape& s, const std::vector<std::size_t>& component, std::size_t which) {
  SubShape sub;
  sub.local.assign(s.num_morphisms(), kNoMorphism);
  std::vector<Obj> obj_local(s.num_objects, kNoObject);
  for (Obj o = 0; o < s.num_objects; ++o)
    if (component[o] == which) {
      obj_local[o] = static_cast<Obj>(sub.objects.size());
      sub.objects.push_back(o);
    }
  sub.shape.num_objects = sub.objects.size();
  auto keep = [&](Mor k) {
    sub.local[k] = static_cast<Mor>(sub.old.size());
    sub.old.push_back(k);
    sub.shape.src.push_back(obj_local[s.src[k]]);
    sub.shape.tgt.push_back(obj_local[s.tgt[k]]);
  };
  for (Obj o : sub.objects) keep(o);
  for (Mor k = static_cast<Mor>(s.num_objects); k < s.num_morphisms(); ++k)
    if (component[s.src[k]] == which) keep(k);
  for (const RawComposite& rc : s.composites)
    if (sub.local[rc.f] != kNoMorphism) sub.shape.composites.push_back({sub.local[rc.g], sub.local[rc.f], sub.local[rc.h]});
  return sub;
}

std::size_t saturating_product(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) return 0;
  return a > std::numeric_limits<std::size_t>::max() / b ? std::numeric_limits<std::size_t>::max() : a * b;
}

// Restriction along the unit, from maps out of the completion to maps out of
// the gluing. Both sides are products over connected components (new arrows
// never join components), so each component is checked on its own.
UniversalReport restriction_report(const CompletionResult& c, const FinCat& x, const FinFunctor* over_b,
                                   const SearchOptions& options) {
  const HornGluing& h = c.gluing;
  const Shape completed = shape_of(*c.completed);
  UnionFind uf(h.num_objects());
  for (Mor k = 0; k < h.num_morphisms(); ++k) uf.unite(h.shape.src[k], h.shape.tgt[k]);
  std::vector<std::size_t> component(h.num_objects());
  std::vector<std::size_t> roots;
  for (Obj o = 0; o < h.num_objects(); ++o) {
    component[o] = uf.find(o);
    if (component[o] == o) roots.push_back(o);
  }

  UniversalReport rep;
  rep.extensions = 1;
  rep.cones = 1;
  bool all_bijective = true;
  for (std::size_t root : roots) {
    const SubShape g = restrict_shape(h.shape, component, root);
    const SubShape e = restrict_shape(completed, component, root);
    OverBase g_over, e_over;
    if (over_b) {
      g_over.target_projection = e_over.target_projection = over_b;
      for (Obj o : g.objects) g_over.object_image.push_back(h.object_base(o));
      for (Mor k : g.old) g_over.morphism_image.push_back(h.morphism_base(k));
      for (Obj o : e.objects) e_over.object_image.push_back(c.projection.map_object(o));
      for (Mor k : e.old) e_over.morphism_image.push_back(c.projection.map_morphism(k));
    }
    std::map<std::vector<Mor>, std::size_t> cones;
    search_maps(g.shape, x, over_b ? &g_over : nullptr, options, [&](std::span<const Obj>, std::span<const Mor> mm) {
      // Object images are determined by the identity images.
      cones.emplace(std::vector<Mor>(mm.begin(), mm.end()), cones.size());
      return true;
    });
    std::vector<bool> hit(cones.size(), false);
    std::size_t extensions = 0;
    bool ok = true;
    std::vector<Mor> restricted(g.old.size());
    search_maps(e.shape, x, over_b ? &e_over : nullptr, options, [&](std::span<const Obj>, std::span<const Mor> mm) {
      ++extensions;
      for (Mor k = 0; k < g.old.size(); ++k) restricted[k] = mm[e.local[c.unit[g.old[k]]]];
      auto it = cones.find(restricted);
      if (it == cones.end() || hit[it->second]) ok = false;
      else hit[it->second] = true;
      return true;
    });
    if (extensions != cones.size()) ok = false;
    all_bijective = all_bijective && ok;
    rep.extensions = saturating_product(rep.extensions, extensions);
    rep.cones = saturating_product(rep.cones, cones.size());
  }
  // An empty factor on both sides makes both products empty.
  rep.bijective = all_bijective || (rep.extensions == 0 && rep.cones == 0);
  return rep;
}

}  // namespace

UniversalReport verify_completion_universal(const CompletionResult& c, const FinFunctor& x_over_b,
                                            const SearchOptions& options) {
  return restriction_report(c, x_over_b.dom(), &x_over_b, options);
}

RelativeAbsoluteReport verify_relative_vs_absolute(const CompletionResult& c, const CatPtr& x,
                                                   const SearchOptions& options) {
  RelativeAbsoluteReport r;
  r.absolute = restriction_report(c, *x, nullptr, options);
  const SpanCat xb = product_cat(x, c.gluing.f.target());
  r.via_product = verify_completion_universal(c, xb.second, options);
  r.agree = r.absolute.bijective && r.via_product.bijective && r.absolute.extensions == r.via_product.extensions &&
            r.absolute.cones == r.via_product.cones;
  return r;
}

bool completion_idempotent(const CompletionResult& c, const SearchOptions& options) {
  const CompletionResult again = complete_horn_gluing(horn_gluing(c.levels, kEdge01, kEdge12));
  return find_isomorphism_over(again.levels, c.levels, options).has_value();
}

Certificate check_pushout_condition(const FinFunctor& f, const CheckOptions& options) {
  const FinCat& B = f.cod();
  const FinCat& E = f.dom();
  Certificate cert;
  for (Mor u = 0; u < B.num_morphisms(); ++u) {
    for (Mor v : B.outgoing(B.tgt(u))) {
      ++cert.stats.composable_pairs;
      const CompletionResult c = complete_horn_gluing(horn_gluing(f, u, v));
      const HornGluing& h = c.gluing;
      const FinCat& F1 = *c.full.cat;

      // Old cells must embed; the comparison is the identity on objects.
      std::vector<bool> hit(F1.num_morphisms(), false);
      for (Mor k = 0; k < h.num_morphisms(); ++k) {
        const Mor img = c.comparison.map_morphism(k);
        if (hit[img]) throw Error(ErrorKind::Collapse, "completion comparison is not injective on old cells");
        hit[img] = true;
      }
      if (c.completed->num_objects() != F1.num_objects())
        throw Error(ErrorKind::Collapse, "completion comparison is not bijective on objects");

      std::vector<Obj> level0(E.num_objects(), kNoObject), level2(E.num_objects(), kNoObject);
      for (Obj o = 0; o < h.num_objects(); ++o) {
        if (h.object_level[o] == 0) level0[h.object_e[o]] = o;
        if (h.object_level[o] == 2) level2[h.object_e[o]] = o;
      }
      for (Obj x = 0; x < E.num_objects(); ++x) {
        if (f.map_object(x) != B.src(u)) continue;
        for (Obj z = 0; z < E.num_objects(); ++z) {
          if (f.map_object(z) != B.tgt(v)) continue;
          ++cert.stats.instances;
          const Obj gx = level0[x], gz = level2[z];
          for (Mor a = 0; a < h.num_morphisms(); ++a) {
            if (h.morphism_edge[a] != kEdge01 || h.shape.src[a] != gx) continue;
            for (Mor b = 0; b < h.num_morphisms(); ++b)
              if (h.morphism_edge[b] == kEdge12 && h.shape.tgt[b] == gz && h.shape.src[b] == h.shape.tgt[a])
                ++cert.stats.generators;
          }
          std::vector<Mor> targets;  // F1 morphisms over 0 -> 2 from (x,0) to (z,2)
          for (Mor k : F1.hom(c.comparison.map_object(gx), c.comparison.map_object(gz)))
            if (c.full.second.map_morphism(k) == kEdge02) targets.push_back(k);
          std::vector<Witness> found;
          Witness missing{u, v, x, z, FailureKind::NonSurjective, kNoMorphism, {}, {}};
          Witness collision{u, v, x, z, FailureKind::NonInjective, kNoMorphism, {}, {}};
          for (Mor t : targets) {
            std::vector<const CompletionResult::NewMorphism*> pre;
            for (const auto& added : c.added)
              if (c.comparison.map_morphism(added.morphism) == t) pre.push_back(&added);
            if (pre.empty() && missing.composite == kNoMorphism) missing.composite = c.full.first.map_morphism(t);
            if (pre.size() >= 2 && collision.composite == kNoMorphism) {
              auto gen = [&](const CompletionResult::NewMorphism* p) {
                return CoendGenerator{h.object_e[h.shape.tgt[p->first]], h.morphism_e[p->first], h.morphism_e[p->second]};
              };
              collision.composite = c.full.first.map_morphism(t);
              collision.first = gen(pre[0]);
              collision.second = gen(pre[1]);
            }
          }
          if (missing.composite != kNoMorphism) found.push_back(missing);
          if (collision.composite != kNoMorphism) found.push_back(collision);
          if (found.empty()) continue;
          cert.witnesses.insert(cert.witnesses.end(), found.begin(), found.end());
          if (options.fail_fast) {
            cert.witnesses.resize(1);
            cert.verdict = Verdict::NotExponentiable;
            return cert;
          }
        }
      }
    }
  }
  cert.verdict = cert.witnesses.empty() ? Verdict::Exponentiable : Verdict::NotExponentiable;
  return cert;
}

}  // namespace conduche
