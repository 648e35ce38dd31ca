#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace conduche {

using Obj = std::uint32_t;
using Mor = std::uint32_t;

inline constexpr Mor kNoMorphism = std::numeric_limits<Mor>::max();
inline constexpr Obj kNoObject = std::numeric_limits<Obj>::max();

// Closure and table sizes above this are rejected.
inline constexpr std::size_t kDefaultClosureBudget = 10'000;

struct RawArrow {
  std::string name;
  Obj src = 0;
  Obj tgt = 0;
};

// Morphism indices in a RawCategory follow the FinCat layout: the identity
// of object i is morphism i, arrow k is morphism (num_objects + k).
struct RawComposite {
  Mor g = 0;
  Mor f = 0;
  Mor h = 0;  // g . f = h
};

struct RawCategory {
  std::string name;
  std::vector<std::string> objects;
  std::vector<RawArrow> arrows;
  std::vector<RawComposite> composites;
};

std::string identity_name(std::string_view object_name);

/// A finite category held as a total composition table.
///
/// Layout invariant: the identity of object `i` is morphism `i`; the
/// non-identity morphisms follow in declaration order. All instances are
/// immutable once built by `validate_category`.
class FinCat {
 public:
  FinCat() = default;

  const std::string& name() const { return name_; }
  std::size_t num_objects() const { return obj_names_.size(); }
  std::size_t num_morphisms() const { return mor_names_.size(); }

  const std::string& object_name(Obj o) const { return obj_names_[o]; }
  const std::string& morphism_name(Mor m) const { return mor_names_[m]; }
  const std::vector<std::string>& object_names() const { return obj_names_; }
  const std::vector<std::string>& morphism_names() const { return mor_names_; }

  Obj src(Mor m) const { return src_[m]; }
  Obj tgt(Mor m) const { return tgt_[m]; }
  Mor identity(Obj o) const { return o; }
  bool is_identity(Mor m) const { return m < num_objects(); }

  // g . f; requires tgt(f) == src(g).
  Mor compose(Mor g, Mor f) const { return table_[offset_[g] + in_pos_[f]]; }
  std::optional<Mor> try_compose(Mor g, Mor f) const {
    if (tgt_[f] != src_[g]) return std::nullopt;
    return compose(g, f);
  }

  std::span<const Mor> hom(Obj a, Obj b) const { return slice(homs_, hom_start_, a * num_objects() + b); }
  std::span<const Mor> incoming(Obj o) const { return slice(in_, in_start_, o); }
  std::span<const Mor> outgoing(Obj o) const { return slice(out_, out_start_, o); }

  std::optional<Obj> find_object(std::string_view name) const;
  std::optional<Mor> find_morphism(std::string_view name) const;

  std::size_t num_composable_pairs() const { return table_.size(); }

  // Same names, same order, same table. The category name is ignored.
  bool same_structure(const FinCat& other) const;

  // Reassembles the raw data this category was validated from (full
  // non-identity table, identities implicit).
  RawCategory to_raw() const;

 private:
  friend FinCat validate_category(const RawCategory& raw);

  static std::span<const Mor> slice(const std::vector<Mor>& items, const std::vector<std::uint32_t>& start,
                                    std::size_t i) {
    return {items.data() + start[i], items.data() + start[i + 1]};
  }

  std::string name_;
  std::vector<std::string> obj_names_;
  std::vector<std::string> mor_names_;
  std::vector<Obj> src_;
  std::vector<Obj> tgt_;
  // Adjacency lists packed back to back; list i is [start[i], start[i+1]).
  std::vector<Mor> in_;
  std::vector<Mor> out_;
  std::vector<Mor> homs_;
  std::vector<std::uint32_t> in_start_;
  std::vector<std::uint32_t> out_start_;
  std::vector<std::uint32_t> hom_start_;
  std::vector<std::uint32_t> in_pos_;
  std::vector<std::size_t> offset_;
  std::vector<Mor> table_;
};

using CatPtr = std::shared_ptr<const FinCat>;

/// Checks names, typing, unit laws, totality and associativity, in that
/// order, and builds the table. Composites with an identity operand may be
/// omitted; when present they must agree with the unit laws.
FinCat validate_category(const RawCategory& raw);

CatPtr make_cat(FinCat cat);

struct RawFunctor {
  std::string name;
  std::vector<Obj> object_map;
  std::vector<Mor> morphism_map;
};

class FinFunctor {
 public:
  FinFunctor() = default;

  const std::string& name() const { return name_; }
  const CatPtr& source() const { return source_; }
  const CatPtr& target() const { return target_; }
  const FinCat& dom() const { return *source_; }
  const FinCat& cod() const { return *target_; }

  Obj operator()(Obj o) const { return obj_map_[o]; }
  Obj map_object(Obj o) const { return obj_map_[o]; }
  Mor map_morphism(Mor m) const { return mor_map_[m]; }
  const std::vector<Obj>& object_map() const { return obj_map_; }
  const std::vector<Mor>& morphism_map() const { return mor_map_; }

  bool operator==(const FinFunctor& other) const {
    return obj_map_ == other.obj_map_ && mor_map_ == other.mor_map_;
  }

  FinFunctor renamed(std::string name) const {
    FinFunctor copy = *this;
    copy.name_ = std::move(name);
    return copy;
  }

 private:
  friend FinFunctor validate_functor(const RawFunctor&, CatPtr, CatPtr);
  friend FinFunctor unchecked_functor(std::string, CatPtr, CatPtr, std::vector<Obj>, std::vector<Mor>);

  std::string name_;
  CatPtr source_;
  CatPtr target_;
  std::vector<Obj> obj_map_;
  std::vector<Mor> mor_map_;
};

/// Exhaustively checks src/tgt preservation, identities and composition.
FinFunctor validate_functor(const RawFunctor& raw, CatPtr source, CatPtr target);

// For maps whose laws hold by construction (search results, projections).
FinFunctor unchecked_functor(std::string name, CatPtr source, CatPtr target, std::vector<Obj> obj_map,
                             std::vector<Mor> mor_map);

FinFunctor identity_functor(const CatPtr& cat);
FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f);  // g . f
FinFunctor constant_functor(const CatPtr& source, const CatPtr& target, Obj value);

// A category together with two legs, as produced by products and pullbacks.
struct SpanCat {
  CatPtr cat;
  FinFunctor first;
  FinFunctor second;
};

CatPtr terminal_cat();
CatPtr empty_cat();
CatPtr interval_cat(std::size_t n);
CatPtr opposite_cat(const FinCat& a);
SpanCat product_cat(const CatPtr& a, const CatPtr& b);

/// Strict pullback of f: X -> B and g: Y -> B. Objects and morphisms are the
/// pairs agreeing in B, ordered lexicographically (identities first).
SpanCat pullback_cat(const FinFunctor& f, const FinFunctor& g);

// Subcategory spanned by a set of objects and a set of morphisms closed under
// composition; returns the subcategory and its inclusion.
struct Subcategory {
  CatPtr cat;
  FinFunctor inclusion;
};
Subcategory subcategory(const CatPtr& parent, std::span<const Obj> objects, std::span<const Mor> morphisms,
                        std::string name);

}  // namespace conduche
