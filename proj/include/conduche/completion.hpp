#pragma once

#include <cstddef>
#include <vector>

#include "conduche/certificate.hpp"
#include "conduche/enumerate.hpp"
#include "conduche/fiber.hpp"
#include "conduche/fincat.hpp"

namespace conduche {

/// E pulled back along the two short edges of a 2-simplex (u, v) in B and
/// glued along the middle fiber. It is a graph with partial composition:
/// nothing lies over the long edge 0 -> 2 except what the completion adds.
///
/// Cells are laid out like E x_B [2]: objects are pairs (e, level) in
/// lexicographic order, identities first, then the non-identity morphisms
/// ordered by (E-morphism, edge of [2]).
struct HornGluing {
  FinFunctor f;
  Mor u = 0;
  Mor v = 0;
  FinFunctor alpha;  // [2] -> B
  SpanCat lower;     // E x_B {0 < 1}
  SpanCat upper;     // E x_B {1 < 2}
  FiberCat shared;   // E_b

  Shape shape;
  std::vector<std::string> object_names;
  std::vector<std::string> morphism_names;
  std::vector<Obj> object_e;     // underlying object of E
  std::vector<Obj> object_level; // 0, 1 or 2
  std::vector<Mor> morphism_e;   // underlying morphism of E
  std::vector<Mor> morphism_edge;  // morphism of [2]

  std::size_t num_objects() const { return shape.num_objects; }
  std::size_t num_morphisms() const { return shape.num_morphisms(); }
  Obj object_base(Obj o) const { return alpha.map_object(object_level[o]); }
  Mor morphism_base(Mor k) const { return alpha.map_morphism(morphism_edge[k]); }
};

HornGluing horn_gluing(const FinFunctor& f, Mor u, Mor v);

// The composable pair (u, v) as a functor [2] -> B.
FinFunctor simplex_in(const CatPtr& base, Mor u, Mor v);

/// Free completion of a horn gluing: the gluing plus one new morphism per
/// zig-zag class of composable pairs across the middle level.
struct CompletionResult {
  HornGluing gluing;
  CatPtr completed;
  FinFunctor levels;       // completed -> [2]
  FinFunctor projection;   // completed -> B
  std::vector<Mor> unit;   // gluing morphism -> completed morphism (objects are shared)
  SpanCat full;            // E x_B [2]
  FinFunctor comparison;   // completed -> E x_B [2]

  struct NewMorphism {
    Mor morphism;  // in `completed`
    Mor first;     // representative over u (gluing morphism)
    Mor second;    // representative over v (gluing morphism)
  };
  std::vector<NewMorphism> added;
};

CompletionResult complete_horn_gluing(const HornGluing& h);

struct UniversalReport {
  std::size_t extensions = 0;  // maps out of the completion
  std::size_t cones = 0;       // maps out of the gluing
  bool bijective = false;
};

/// Restriction along the unit, relative_hom(completed, X) -> gluing maps
/// into X over B, checked for bijectivity by enumeration.
UniversalReport verify_completion_universal(const CompletionResult& c, const FinFunctor& x_over_b,
                                            const SearchOptions& options = {});

struct RelativeAbsoluteReport {
  UniversalReport absolute;
  UniversalReport via_product;  // relative form over B with X x B
  bool agree = false;
};

/// The same restriction for a plain X, once directly and once as maps over B
/// into X x B; both must be bijections with matching counts.
RelativeAbsoluteReport verify_relative_vs_absolute(const CompletionResult& c, const CatPtr& x,
                                                   const SearchOptions& options = {});

// Completing the completed category again, viewed over [2], is isomorphic.
bool completion_idempotent(const CompletionResult& c, const SearchOptions& options = {});

/// Pushout form of the criterion: for every composable (u, v), the
/// comparison from the completed gluing to E x_B [2] must be an isomorphism.
/// Witnesses use the same (u, v, x, z) order and evidence as
/// check_exponentiable.
Certificate check_pushout_condition(const FinFunctor& f, const CheckOptions& options = {});

}  // namespace conduche
