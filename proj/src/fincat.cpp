#include "conduche/fincat.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

#include "conduche/error.hpp"

namespace conduche {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::MissingComposite: return "MissingComposite";
    case ErrorKind::BadUnit: return "BadUnit";
    case ErrorKind::IllTypedComposite: return "IllTypedComposite";
    case ErrorKind::ClosureBudgetExceeded: return "ClosureBudgetExceeded";
    case ErrorKind::Collapse: return "Collapse";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::NotAFunctor: return "NotAFunctor";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::FunctorialityFailure: return "FunctorialityFailure";
    case ErrorKind::NotExponentiable: return "NotExponentiable";
    case ErrorKind::AmbiguousComposition: return "AmbiguousComposition";
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::UnresolvedName: return "UnresolvedName";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SimplicialIdentity: return "SimplicialIdentity";
  }
  return "Unknown";
}

std::string identity_name(std::string_view object_name) { return "id_" + std::string(object_name); }

std::optional<Obj> FinCat::find_object(std::string_view name) const {
  auto it = std::find(obj_names_.begin(), obj_names_.end(), name);
  if (it == obj_names_.end()) return std::nullopt;
  return static_cast<Obj>(it - obj_names_.begin());
}

std::optional<Mor> FinCat::find_morphism(std::string_view name) const {
  auto it = std::find(mor_names_.begin(), mor_names_.end(), name);
  if (it == mor_names_.end()) return std::nullopt;
  return static_cast<Mor>(it - mor_names_.begin());
}

bool FinCat::same_structure(const FinCat& other) const {
  return obj_names_ == other.obj_names_ && mor_names_ == other.mor_names_ && src_ == other.src_ &&
         tgt_ == other.tgt_ && table_ == other.table_;
}

RawCategory FinCat::to_raw() const {
  RawCategory raw;
  raw.name = name_;
  raw.objects = obj_names_;
  const auto n = static_cast<Mor>(num_objects());
  for (Mor m = n; m < num_morphisms(); ++m) raw.arrows.push_back({mor_names_[m], src_[m], tgt_[m]});
  for (Mor f = n; f < num_morphisms(); ++f) {
    for (Mor g : outgoing(tgt_[f])) {
      if (is_identity(g)) continue;
      raw.composites.push_back({g, f, compose(g, f)});
    }
  }
  return raw;
}

namespace {

// Index of the first name equal to an earlier one, or names.size().
std::size_t first_duplicate(const std::vector<std::string>& names) {
  std::vector<std::size_t> order(names.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const int c = names[a].compare(names[b]);
    return c < 0 || (c == 0 && a < b);
  });
  std::size_t best = names.size();
  for (std::size_t i = 1; i < order.size(); ++i)
    if (names[order[i]] == names[order[i - 1]]) best = std::min(best, order[i]);
  return best;
}

std::string mor_label(const RawCategory& raw, Mor m) {
  if (m < raw.objects.size()) return identity_name(raw.objects[m]);
  return raw.arrows[m - raw.objects.size()].name;
}

}  // namespace

FinCat validate_category(const RawCategory& raw) {
  FinCat c;
  c.name_ = raw.name;
  const std::size_t n = raw.objects.size();
  const std::size_t m = n + raw.arrows.size();

  c.obj_names_ = raw.objects;
  if (const std::size_t d = first_duplicate(c.obj_names_); d < n)
    throw Error(ErrorKind::DuplicateName, "object '" + raw.objects[d] + "' declared twice");
  c.mor_names_.reserve(m);
  c.src_.reserve(m);
  c.tgt_.reserve(m);
  for (Obj o = 0; o < n; ++o) {
    c.mor_names_.push_back(identity_name(raw.objects[o]));
    c.src_.push_back(o);
    c.tgt_.push_back(o);
  }
  for (const RawArrow& a : raw.arrows) {
    if (a.src >= n || a.tgt >= n)
      throw Error(ErrorKind::InvalidArgument, "arrow '" + a.name + "' has an endpoint out of range");
    c.mor_names_.push_back(a.name);
    c.src_.push_back(a.src);
    c.tgt_.push_back(a.tgt);
  }
  if (const std::size_t d = first_duplicate(c.mor_names_); d < m)
    throw Error(ErrorKind::DuplicateName, "morphism '" + c.mor_names_[d] + "' declared twice");

  // Counting sort into the packed adjacency lists.
  c.in_start_.assign(n + 1, 0);
  c.out_start_.assign(n + 1, 0);
  c.hom_start_.assign(n * n + 1, 0);
  for (Mor k = 0; k < m; ++k) {
    ++c.in_start_[c.tgt_[k] + 1];
    ++c.out_start_[c.src_[k] + 1];
    ++c.hom_start_[c.src_[k] * n + c.tgt_[k] + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    c.in_start_[i + 1] += c.in_start_[i];
    c.out_start_[i + 1] += c.out_start_[i];
  }
  for (std::size_t i = 0; i < n * n; ++i) c.hom_start_[i + 1] += c.hom_start_[i];
  c.in_.resize(m);
  c.out_.resize(m);
  c.homs_.resize(m);
  c.in_pos_.resize(m);
  {
    std::vector<std::uint32_t> in_fill(c.in_start_.begin(), c.in_start_.end() - 1);
    std::vector<std::uint32_t> out_fill(c.out_start_.begin(), c.out_start_.end() - 1);
    std::vector<std::uint32_t> hom_fill(c.hom_start_.begin(), c.hom_start_.end() - 1);
    for (Mor k = 0; k < m; ++k) {
      c.in_pos_[k] = in_fill[c.tgt_[k]] - c.in_start_[c.tgt_[k]];
      c.in_[in_fill[c.tgt_[k]]++] = k;
      c.out_[out_fill[c.src_[k]]++] = k;
      c.homs_[hom_fill[c.src_[k] * n + c.tgt_[k]]++] = k;
    }
  }
  c.offset_.resize(m);
  std::size_t total = 0;
  for (Mor g = 0; g < m; ++g) {
    c.offset_[g] = total;
    total += c.incoming(c.src_[g]).size();
  }
  c.table_.assign(total, kNoMorphism);
  auto slot = [&](Mor g, Mor f) -> Mor& { return c.table_[c.offset_[g] + c.in_pos_[f]]; };

  for (Mor f = 0; f < m; ++f) {
    slot(c.tgt_[f], f) = f;
    slot(f, c.src_[f]) = f;
  }

  for (const RawComposite& e : raw.composites) {
    if (e.g >= m || e.f >= m || e.h >= m)
      throw Error(ErrorKind::InvalidArgument, "composite entry refers to a morphism out of range");
    if (c.tgt_[e.f] != c.src_[e.g])
      throw Error(ErrorKind::IllTypedComposite,
                  "'" + mor_label(raw, e.g) + " . " + mor_label(raw, e.f) + "' is not composable");
    if (c.src_[e.h] != c.src_[e.f] || c.tgt_[e.h] != c.tgt_[e.g])
      throw Error(ErrorKind::IllTypedComposite, "'" + mor_label(raw, e.g) + " . " + mor_label(raw, e.f) +
                                                    " = " + mor_label(raw, e.h) + "' has wrong endpoints");
    if (e.g < n && e.h != e.f)
      throw Error(ErrorKind::BadUnit, "identity law fails for '" + mor_label(raw, e.f) + "'");
    if (e.f < n && e.h != e.g)
      throw Error(ErrorKind::BadUnit, "identity law fails for '" + mor_label(raw, e.g) + "'");
    Mor& s = slot(e.g, e.f);
    if (s != kNoMorphism && s != e.h)
      throw Error(ErrorKind::Collapse, "conflicting entries for '" + mor_label(raw, e.g) + " . " +
                                           mor_label(raw, e.f) + "'");
    s = e.h;
  }

  for (Mor f = 0; f < m; ++f) {
    for (Mor g : c.outgoing(c.tgt_[f])) {
      if (slot(g, f) == kNoMorphism)
        throw Error(ErrorKind::MissingComposite,
                    "no composite for '" + mor_label(raw, g) + " . " + mor_label(raw, f) + "'");
    }
  }

  for (Mor f = static_cast<Mor>(n); f < m; ++f) {
    for (Mor g : c.outgoing(c.tgt_[f])) {
      if (g < n) continue;
      const Mor gf = c.compose(g, f);
      for (Mor h : c.outgoing(c.tgt_[g])) {
        if (h < n) continue;
        if (c.compose(h, gf) != c.compose(c.compose(h, g), f))
          throw Error(ErrorKind::NonAssociative, "(" + mor_label(raw, h) + ", " + mor_label(raw, g) + ", " +
                                                     mor_label(raw, f) + ")");
      }
    }
  }
  return c;
}

CatPtr make_cat(FinCat cat) { return std::make_shared<const FinCat>(std::move(cat)); }

FinFunctor unchecked_functor(std::string name, CatPtr source, CatPtr target, std::vector<Obj> obj_map,
                             std::vector<Mor> mor_map) {
  FinFunctor f;
  f.name_ = std::move(name);
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  f.obj_map_ = std::move(obj_map);
  f.mor_map_ = std::move(mor_map);
  return f;
}

FinFunctor validate_functor(const RawFunctor& raw, CatPtr source, CatPtr target) {
  const FinCat& s = *source;
  const FinCat& t = *target;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::NotAFunctor, "'" + raw.name + "': " + what);
  };
  if (raw.object_map.size() != s.num_objects()) fail("object map does not cover the source");
  if (raw.morphism_map.size() != s.num_morphisms()) fail("morphism map does not cover the source");
  for (Obj o = 0; o < s.num_objects(); ++o) {
    if (raw.object_map[o] >= t.num_objects()) fail("object '" + s.object_name(o) + "' maps out of range");
  }
  for (Mor k = 0; k < s.num_morphisms(); ++k) {
    const Mor img = raw.morphism_map[k];
    if (img >= t.num_morphisms()) fail("morphism '" + s.morphism_name(k) + "' maps out of range");
    if (t.src(img) != raw.object_map[s.src(k)] || t.tgt(img) != raw.object_map[s.tgt(k)])
      fail("'" + s.morphism_name(k) + "' -> '" + t.morphism_name(img) + "' breaks source/target");
  }
  for (Obj o = 0; o < s.num_objects(); ++o) {
    if (raw.morphism_map[s.identity(o)] != t.identity(raw.object_map[o]))
      fail("identity of '" + s.object_name(o) + "' is not preserved");
  }
  for (Mor f = 0; f < s.num_morphisms(); ++f) {
    for (Mor g : s.outgoing(s.tgt(f))) {
      if (raw.morphism_map[s.compose(g, f)] != t.compose(raw.morphism_map[g], raw.morphism_map[f]))
        fail("composite of (" + s.morphism_name(g) + ", " + s.morphism_name(f) + ") is not preserved");
    }
  }
  return unchecked_functor(raw.name, std::move(source), std::move(target), raw.object_map, raw.morphism_map);
}

FinFunctor identity_functor(const CatPtr& cat) {
  std::vector<Obj> om(cat->num_objects());
  std::vector<Mor> mm(cat->num_morphisms());
  for (Obj o = 0; o < om.size(); ++o) om[o] = o;
  for (Mor k = 0; k < mm.size(); ++k) mm[k] = k;
  return unchecked_functor("id_" + cat->name(), cat, cat, std::move(om), std::move(mm));
}

FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f) {
  if (f.target().get() != g.source().get() && !f.cod().same_structure(g.dom()))
    throw Error(ErrorKind::NotComposable, "functors '" + g.name() + "' and '" + f.name() + "' do not compose");
  std::vector<Obj> om(f.dom().num_objects());
  std::vector<Mor> mm(f.dom().num_morphisms());
  for (Obj o = 0; o < om.size(); ++o) om[o] = g.map_object(f.map_object(o));
  for (Mor k = 0; k < mm.size(); ++k) mm[k] = g.map_morphism(f.map_morphism(k));
  return unchecked_functor(g.name() + "." + f.name(), f.source(), g.target(), std::move(om), std::move(mm));
}

FinFunctor constant_functor(const CatPtr& source, const CatPtr& target, Obj value) {
  std::vector<Obj> om(source->num_objects(), value);
  std::vector<Mor> mm(source->num_morphisms(), target->identity(value));
  return unchecked_functor("const_" + target->object_name(value), source, target, std::move(om), std::move(mm));
}

CatPtr terminal_cat() {
  static const CatPtr one = make_cat(validate_category(RawCategory{"1", {"*"}, {}, {}}));
  return one;
}

CatPtr empty_cat() {
  static const CatPtr zero = make_cat(validate_category(RawCategory{"0", {}, {}, {}}));
  return zero;
}

namespace {

CatPtr build_interval(std::size_t n) {
  RawCategory raw;
  raw.name = "[" + std::to_string(n) + "]";
  for (std::size_t i = 0; i <= n; ++i) raw.objects.push_back(std::to_string(i));
  const auto objs = static_cast<Mor>(n + 1);
  // arrow i -> j (i < j) at position `index[i][j]`, lexicographic in (i, j)
  std::vector<std::vector<Mor>> index(n + 1, std::vector<Mor>(n + 1, kNoMorphism));
  for (Obj i = 0; i <= n; ++i) {
    index[i][i] = i;
    for (Obj j = i + 1; j <= n; ++j) {
      index[i][j] = objs + static_cast<Mor>(raw.arrows.size());
      raw.arrows.push_back({std::to_string(i) + std::to_string(j), i, j});
    }
  }
  for (Obj i = 0; i <= n; ++i)
    for (Obj j = i + 1; j <= n; ++j)
      for (Obj k = j + 1; k <= n; ++k) raw.composites.push_back({index[j][k], index[i][j], index[i][k]});
  return make_cat(validate_category(raw));
}

}  // namespace

CatPtr interval_cat(std::size_t n) {
  static const std::array<CatPtr, 4> small{build_interval(0), build_interval(1), build_interval(2),
                                           build_interval(3)};
  return n < small.size() ? small[n] : build_interval(n);
}

CatPtr opposite_cat(const FinCat& a) {
  RawCategory raw;
  const std::string suffix = "^op";
  raw.name = a.name();
  if (raw.name.size() >= suffix.size() && raw.name.ends_with(suffix))
    raw.name.resize(raw.name.size() - suffix.size());
  else
    raw.name += suffix;
  raw.objects = a.object_names();
  const auto n = static_cast<Mor>(a.num_objects());
  for (Mor k = n; k < a.num_morphisms(); ++k) raw.arrows.push_back({a.morphism_name(k), a.tgt(k), a.src(k)});
  for (Mor f = n; f < a.num_morphisms(); ++f)
    for (Mor g : a.outgoing(a.tgt(f)))
      if (!a.is_identity(g)) raw.composites.push_back({f, g, a.compose(g, f)});
  return make_cat(validate_category(raw));
}

namespace {

std::string pair_name(const std::string& a, const std::string& b) {
  auto wrap = [](const std::string& s) { return s.find('*') == std::string::npos ? s : "(" + s + ")"; };
  return wrap(a) + "*" + wrap(b);
}

// Makes each name unique by appending primes to later duplicates.
void dedupe(std::vector<std::string>& names, std::unordered_set<std::string>& taken) {
  for (auto& name : names) {
    while (!taken.insert(name).second) name += "'";
  }
}

// Builds the category whose objects and non-identity morphisms are the
// given index pairs into (a, b), composed componentwise.
SpanCat paired_category(std::string name, const CatPtr& a, const CatPtr& b,
                        const std::vector<std::pair<Obj, Obj>>& objects,
                        const std::vector<std::pair<Mor, Mor>>& arrows) {
  const FinCat& A = *a;
  const FinCat& B = *b;
  RawCategory raw;
  raw.name = std::move(name);
  std::unordered_map<std::uint64_t, Obj> obj_at;
  for (const auto& [x, y] : objects) {
    obj_at.emplace((std::uint64_t{x} << 32) | y, static_cast<Obj>(raw.objects.size()));
    raw.objects.push_back(pair_name(A.object_name(x), B.object_name(y)));
  }
  {
    std::unordered_set<std::string> obj_taken;
    dedupe(raw.objects, obj_taken);
  }
  std::unordered_set<std::string> taken;
  for (const auto& o : raw.objects) taken.insert(identity_name(o));

  const auto n = static_cast<Mor>(objects.size());
  std::unordered_map<std::uint64_t, Mor> mor_at;
  auto key = [](Mor x, Mor y) { return (std::uint64_t{x} << 32) | y; };
  for (Obj o = 0; o < n; ++o) mor_at.emplace(key(A.identity(objects[o].first), B.identity(objects[o].second)), o);
  std::vector<std::string> arrow_names;
  for (const auto& [j, k] : arrows) {
    mor_at.emplace(key(j, k), n + static_cast<Mor>(arrow_names.size()));
    arrow_names.push_back(pair_name(A.morphism_name(j), B.morphism_name(k)));
  }
  dedupe(arrow_names, taken);
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const auto [j, k] = arrows[i];
    raw.arrows.push_back({arrow_names[i], obj_at.at(key(A.src(j), B.src(k))), obj_at.at(key(A.tgt(j), B.tgt(k)))});
  }
  std::vector<std::pair<Mor, Mor>> all(n);
  for (Obj o = 0; o < n; ++o) all[o] = {A.identity(objects[o].first), B.identity(objects[o].second)};
  all.insert(all.end(), arrows.begin(), arrows.end());
  for (Mor f = n; f < all.size(); ++f) {
    for (Mor g = n; g < all.size(); ++g) {
      if (A.tgt(all[f].first) != A.src(all[g].first) || B.tgt(all[f].second) != B.src(all[g].second)) continue;
      const Mor h = mor_at.at(key(A.compose(all[g].first, all[f].first), B.compose(all[g].second, all[f].second)));
      raw.composites.push_back({g, f, h});
    }
  }
  CatPtr cat = make_cat(validate_category(raw));
  std::vector<Obj> o1(n), o2(n);
  for (Obj o = 0; o < n; ++o) std::tie(o1[o], o2[o]) = objects[o];
  std::vector<Mor> m1(all.size()), m2(all.size());
  for (Mor k = 0; k < all.size(); ++k) std::tie(m1[k], m2[k]) = all[k];
  return SpanCat{cat, unchecked_functor("pr1", cat, a, std::move(o1), std::move(m1)),
                 unchecked_functor("pr2", cat, b, std::move(o2), std::move(m2))};
}

}  // namespace

SpanCat product_cat(const CatPtr& a, const CatPtr& b) {
  std::vector<std::pair<Obj, Obj>> objects;
  for (Obj x = 0; x < a->num_objects(); ++x)
    for (Obj y = 0; y < b->num_objects(); ++y) objects.emplace_back(x, y);
  std::vector<std::pair<Mor, Mor>> arrows;
  for (Mor j = 0; j < a->num_morphisms(); ++j)
    for (Mor k = 0; k < b->num_morphisms(); ++k)
      if (!(a->is_identity(j) && b->is_identity(k))) arrows.emplace_back(j, k);
  return paired_category(a->name() + "x" + b->name(), a, b, objects, arrows);
}

SpanCat pullback_cat(const FinFunctor& f, const FinFunctor& g) {
  if (f.target().get() != g.target().get() && !f.cod().same_structure(g.cod()))
    throw Error(ErrorKind::InvalidArgument, "pullback legs '" + f.name() + "' and '" + g.name() +
                                                "' have different targets");
  const FinCat& X = f.dom();
  const FinCat& Y = g.dom();
  std::vector<std::pair<Obj, Obj>> objects;
  for (Obj x = 0; x < X.num_objects(); ++x)
    for (Obj y = 0; y < Y.num_objects(); ++y)
      if (f.map_object(x) == g.map_object(y)) objects.emplace_back(x, y);
  std::vector<std::pair<Mor, Mor>> arrows;
  for (Mor j = 0; j < X.num_morphisms(); ++j)
    for (Mor k = 0; k < Y.num_morphisms(); ++k)
      if (!(X.is_identity(j) && Y.is_identity(k)) && f.map_morphism(j) == g.map_morphism(k))
        arrows.emplace_back(j, k);
  return paired_category(X.name() + "x_" + f.cod().name() + Y.name(), f.source(), g.source(), objects, arrows);
}

Subcategory subcategory(const CatPtr& parent, std::span<const Obj> objects, std::span<const Mor> morphisms,
                        std::string name) {
  const FinCat& P = *parent;
  RawCategory raw;
  raw.name = std::move(name);
  std::vector<Obj> local_obj(P.num_objects(), kNoObject);
  std::vector<Obj> om;
  for (Obj o : objects) {
    local_obj[o] = static_cast<Obj>(om.size());
    om.push_back(o);
    raw.objects.push_back(P.object_name(o));
  }
  std::vector<Mor> local_mor(P.num_morphisms(), kNoMorphism);
  std::vector<Mor> mm;
  for (Obj o : om) {
    local_mor[P.identity(o)] = static_cast<Mor>(mm.size());
    mm.push_back(P.identity(o));
  }
  for (Mor k : morphisms) {
    if (P.is_identity(k) || local_mor[k] != kNoMorphism) continue;
    if (local_obj[P.src(k)] == kNoObject || local_obj[P.tgt(k)] == kNoObject)
      throw Error(ErrorKind::InvalidArgument, "subcategory morphism '" + P.morphism_name(k) +
                                                  "' leaves the chosen objects");
    local_mor[k] = static_cast<Mor>(mm.size());
    mm.push_back(k);
    raw.arrows.push_back({P.morphism_name(k), local_obj[P.src(k)], local_obj[P.tgt(k)]});
  }
  const auto n = static_cast<Mor>(om.size());
  for (Mor f = n; f < mm.size(); ++f) {
    for (Mor g = n; g < mm.size(); ++g) {
      if (P.tgt(mm[f]) != P.src(mm[g])) continue;
      const Mor h = P.compose(mm[g], mm[f]);
      if (local_mor[h] == kNoMorphism)
        throw Error(ErrorKind::InvalidArgument, "subcategory is not closed under composition at '" +
                                                    P.morphism_name(h) + "'");
      raw.composites.push_back({g, f, local_mor[h]});
    }
  }
  CatPtr cat = make_cat(validate_category(raw));
  return {cat, unchecked_functor("incl", cat, parent, std::move(om), std::move(mm))};
}

}  // namespace conduche
