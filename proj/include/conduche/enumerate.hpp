#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "conduche/fincat.hpp"

namespace conduche {

/// The source side of a structure-preserving map search: a finite graph
/// with identities (morphism i is the identity of object i) and a partial
/// composition. A FinCat gives a total one; a horn gluing a partial one.
struct Shape {
  std::size_t num_objects = 0;
  std::vector<Obj> src;
  std::vector<Obj> tgt;
  std::vector<RawComposite> composites;  // defined composites with non-identity operands

  std::size_t num_morphisms() const { return src.size(); }
};

Shape shape_of(const FinCat& cat);

// Node budget for brute-force searches. Falls back to CONDUCHE_BUDGET, then
// to a built-in default.
std::uint64_t default_search_budget();
void set_default_search_budget(std::uint64_t budget);

struct SearchOptions {
  std::uint64_t budget = default_search_budget();
  bool injective = false;
};

/// Restricts a search to maps over a common base: source cell `c` may only
/// go to target cells whose image under `target_projection` equals
/// `object_image[c]` / `morphism_image[c]`.
struct OverBase {
  std::vector<Obj> object_image;
  std::vector<Mor> morphism_image;
  const FinFunctor* target_projection = nullptr;
};

using MapVisitor = std::function<bool(std::span<const Obj>, std::span<const Mor>)>;

/// Visits every map source -> target preserving endpoints, identities and
/// the defined composites, in lexicographic order of (object map, morphism
/// map). The visitor returns false to stop early. Throws BudgetExceeded.
void search_maps(const Shape& source, const FinCat& target, const OverBase* over, const SearchOptions& options,
                 const MapVisitor& visit);

std::vector<FinFunctor> enumerate_functors(const CatPtr& x, const CatPtr& y, const SearchOptions& options = {});
std::size_t count_functors(const CatPtr& x, const CatPtr& y, const SearchOptions& options = {});

std::optional<FinFunctor> find_isomorphism(const CatPtr& x, const CatPtr& y, const SearchOptions& options = {});

// Functors between categories over B, as FinFunctors into B.
struct RelHomSet {
  CatPtr base;
  FinFunctor source_projection;
  FinFunctor target_projection;
  std::vector<FinFunctor> members;
};

/// All h with target_projection . h == source_projection.
RelHomSet relative_hom(const FinFunctor& source_projection, const FinFunctor& target_projection,
                       const SearchOptions& options = {});

// Isomorphism commuting with the given projections to a shared base.
std::optional<FinFunctor> find_isomorphism_over(const FinFunctor& px, const FinFunctor& py,
                                                const SearchOptions& options = {});

}  // namespace conduche
