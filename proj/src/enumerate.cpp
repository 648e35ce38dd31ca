#include "conduche/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

#include "conduche/error.hpp"

namespace conduche {

namespace {

std::atomic<std::uint64_t> g_budget_override{0};

std::uint64_t budget_from_env() {
  if (const char* env = std::getenv("CONDUCHE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 50'000'000;
}

class MapSearch {
 public:
  MapSearch(const Shape& s, const FinCat& t, const OverBase* over, const SearchOptions& opts, const MapVisitor& v)
      : s_(s), t_(t), over_(over), opts_(opts), visit_(v) {
    const std::size_t n = s.num_objects;
    const std::size_t m = s.num_morphisms();
    checks_.assign(m, {});
    for (const RawComposite& c : s.composites) {
      Mor ready = 0;
      for (Mor k : {c.g, c.f, c.h})
        if (k >= n) ready = std::max(ready, k);
      if (ready >= n) checks_[ready].push_back(c);
    }
    obj_.assign(n, kNoObject);
    mor_.assign(m, kNoMorphism);
    if (opts.injective) {
      used_obj_.assign(t.num_objects(), false);
      used_mor_.assign(t.num_morphisms(), false);
    }
    if (over_) {
      fiber_objects_.assign(over_->target_projection->cod().num_objects(), {});
      for (Obj y = 0; y < t.num_objects(); ++y)
        fiber_objects_[over_->target_projection->map_object(y)].push_back(y);
    }
  }

  void run() { assign_object(0); }

 private:
  void tick() {
    if (++nodes_ > opts_.budget)
      throw Error(ErrorKind::BudgetExceeded, "functor search exceeded " + std::to_string(opts_.budget) + " nodes");
  }

  bool assign_object(Obj x) {
    if (x == s_.num_objects) return assign_morphism(static_cast<Mor>(s_.num_objects));
    auto try_value = [&](Obj y) {
      tick();
      if (opts_.injective && used_obj_[y]) return true;
      obj_[x] = y;
      mor_[x] = t_.identity(y);
      if (opts_.injective) used_obj_[y] = used_mor_[t_.identity(y)] = true;
      const bool go_on = assign_object(x + 1);
      if (opts_.injective) used_obj_[y] = used_mor_[t_.identity(y)] = false;
      return go_on;
    };
    if (over_) {
      for (Obj y : fiber_objects_[over_->object_image[x]])
        if (!try_value(y)) return false;
    } else {
      for (Obj y = 0; y < t_.num_objects(); ++y)
        if (!try_value(y)) return false;
    }
    obj_[x] = kNoObject;
    return true;
  }

  bool consistent(Mor k) const {
    for (const RawComposite& c : checks_[k]) {
      if (t_.compose(mor_[c.g], mor_[c.f]) != mor_[c.h]) return false;
    }
    return true;
  }

  bool assign_morphism(Mor k) {
    if (k == s_.num_morphisms()) return visit_(obj_, mor_);
    for (Mor c : t_.hom(obj_[s_.src[k]], obj_[s_.tgt[k]])) {
      tick();
      if (over_ && over_->target_projection->map_morphism(c) != over_->morphism_image[k]) continue;
      if (opts_.injective && used_mor_[c]) continue;
      mor_[k] = c;
      if (!consistent(k)) continue;
      if (opts_.injective) used_mor_[c] = true;
      const bool go_on = assign_morphism(k + 1);
      if (opts_.injective) used_mor_[c] = false;
      if (!go_on) return false;
    }
    mor_[k] = kNoMorphism;
    return true;
  }

  const Shape& s_;
  const FinCat& t_;
  const OverBase* over_;
  const SearchOptions& opts_;
  const MapVisitor& visit_;
  std::vector<std::vector<RawComposite>> checks_;
  std::vector<std::vector<Obj>> fiber_objects_;
  std::vector<Obj> obj_;
  std::vector<Mor> mor_;
  std::vector<bool> used_obj_;
  std::vector<bool> used_mor_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::uint64_t default_search_budget() {
  const std::uint64_t o = g_budget_override.load();
  if (o != 0) return o;
  static const std::uint64_t env = budget_from_env();
  return env;
}

void set_default_search_budget(std::uint64_t budget) { g_budget_override.store(budget); }

Shape shape_of(const FinCat& cat) {
  Shape s;
  s.num_objects = cat.num_objects();
  s.src.resize(cat.num_morphisms());
  s.tgt.resize(cat.num_morphisms());
  for (Mor k = 0; k < cat.num_morphisms(); ++k) {
    s.src[k] = cat.src(k);
    s.tgt[k] = cat.tgt(k);
  }
  for (Mor f = static_cast<Mor>(cat.num_objects()); f < cat.num_morphisms(); ++f)
    for (Mor g : cat.outgoing(cat.tgt(f)))
      if (!cat.is_identity(g)) s.composites.push_back({g, f, cat.compose(g, f)});
  return s;
}

void search_maps(const Shape& source, const FinCat& target, const OverBase* over, const SearchOptions& options,
                 const MapVisitor& visit) {
  MapSearch(source, target, over, options, visit).run();
}

std::vector<FinFunctor> enumerate_functors(const CatPtr& x, const CatPtr& y, const SearchOptions& options) {
  std::vector<FinFunctor> out;
  const Shape s = shape_of(*x);
  search_maps(s, *y, nullptr, options, [&](std::span<const Obj> om, std::span<const Mor> mm) {
    out.push_back(unchecked_functor("F" + std::to_string(out.size()), x, y, {om.begin(), om.end()},
                                    {mm.begin(), mm.end()}));
    return true;
  });
  return out;
}

std::size_t count_functors(const CatPtr& x, const CatPtr& y, const SearchOptions& options) {
  std::size_t count = 0;
  search_maps(shape_of(*x), *y, nullptr, options, [&](auto, auto) {
    ++count;
    return true;
  });
  return count;
}

namespace {

bool quick_iso_reject(const FinCat& a, const FinCat& b) {
  if (a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms()) return true;
  if (a.num_composable_pairs() != b.num_composable_pairs()) return true;
  auto profile = [](const FinCat& c) {
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> p;
    for (Obj o = 0; o < c.num_objects(); ++o)
      p.emplace_back(c.hom(o, o).size(), c.incoming(o).size(), c.outgoing(o).size());
    std::sort(p.begin(), p.end());
    return p;
  };
  return profile(a) != profile(b);
}

}  // namespace

std::optional<FinFunctor> find_isomorphism(const CatPtr& x, const CatPtr& y, const SearchOptions& options) {
  if (quick_iso_reject(*x, *y)) return std::nullopt;
  SearchOptions opts = options;
  opts.injective = true;
  std::optional<FinFunctor> found;
  search_maps(shape_of(*x), *y, nullptr, opts, [&](std::span<const Obj> om, std::span<const Mor> mm) {
    found = unchecked_functor("iso", x, y, {om.begin(), om.end()}, {mm.begin(), mm.end()});
    return false;
  });
  return found;
}

RelHomSet relative_hom(const FinFunctor& source_projection, const FinFunctor& target_projection,
                       const SearchOptions& options) {
  if (!source_projection.cod().same_structure(target_projection.cod()))
    throw Error(ErrorKind::InvalidArgument, "relative_hom: projections have different bases");
  RelHomSet result{source_projection.target(), source_projection, target_projection, {}};
  OverBase over{source_projection.object_map(), source_projection.morphism_map(), &target_projection};
  const CatPtr& x = source_projection.source();
  const CatPtr& y = target_projection.source();
  search_maps(shape_of(*x), *y, &over, options, [&](std::span<const Obj> om, std::span<const Mor> mm) {
    result.members.push_back(unchecked_functor("h" + std::to_string(result.members.size()), x, y,
                                               {om.begin(), om.end()}, {mm.begin(), mm.end()}));
    return true;
  });
  return result;
}

std::optional<FinFunctor> find_isomorphism_over(const FinFunctor& px, const FinFunctor& py,
                                                const SearchOptions& options) {
  if (quick_iso_reject(px.dom(), py.dom())) return std::nullopt;
  SearchOptions opts = options;
  opts.injective = true;
  OverBase over{px.object_map(), px.morphism_map(), &py};
  std::optional<FinFunctor> found;
  search_maps(shape_of(px.dom()), py.dom(), &over, opts, [&](std::span<const Obj> om, std::span<const Mor> mm) {
    found = unchecked_functor("iso", px.source(), py.source(), {om.begin(), om.end()}, {mm.begin(), mm.end()});
    return false;
  });
  return found;
}

}  // namespace conduche
