#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "conduche/enumerate.hpp"
#include "conduche/fincat.hpp"

namespace conduche {

// A functor E_b -> P_b written on the indices of E and P. Cells outside the
// fiber map to kNoObject / kNoMorphism.
struct ExpObject {
  Obj base = 0;
  std::vector<Obj> object_map;
  std::vector<Mor> morphism_map;
};

// An equivariant family hom^u_E(x, y) -> hom^u_P(F x, G y), indexed by the
// morphisms of E (kNoMorphism off the arrows over u).
struct ExpMorphism {
  Mor base = 0;
  Obj source = 0;
  Obj target = 0;
  std::vector<Mor> family;
};

/// The exponential [f, g] over B. Object i of `category` decodes to
/// objects[i], morphism k to morphisms[k]; identities decode to the
/// families phi(j) = F(j).
struct ExpCat {
  FinFunctor f;  // E -> B
  FinFunctor g;  // P -> B
  CatPtr category;
  FinFunctor projection;
  std::vector<ExpObject> objects;
  std::vector<ExpMorphism> morphisms;

  std::optional<Obj> find_object(const ExpObject& o) const;
  std::optional<Mor> find_morphism(const ExpMorphism& m) const;

  std::map<std::vector<std::uint32_t>, Obj> object_index;
  std::map<std::vector<std::uint32_t>, Mor> morphism_index;
};

struct ExpOptions {
  SearchOptions search;
  bool force = false;  // build even when f fails the coend criterion
};

/// Objects over b are all functors E_b -> P_b, morphisms over u all
/// equivariant families. phi over u composes with psi over v through the
/// least coend factorization m = l . j, as psi(l) . phi(j); every other
/// factorization must give the same value.
///
/// Throws NotExponentiable unless options.force, and AmbiguousComposition
/// when a composite is missing or depends on the factorization.
ExpCat build_exponential(const FinFunctor& f, const FinFunctor& g, const ExpOptions& options = {});

struct Evaluation {
  SpanCat domain;  // exp x_B E
  FinFunctor functor;  // into P
};

// (F, e) |-> F(e), (phi, j) |-> phi(j). Throws NotAFunctor if the laws fail.
Evaluation evaluation(const ExpCat& exp);

struct UniversalPropertyReport {
  std::size_t lhs = 0;  // functors X x_B E -> P over B
  std::size_t rhs = 0;  // functors X -> exp over B
  std::vector<std::size_t> transpose;  // lhs index -> rhs index, or npos
  bool bijective = false;
};

/// Transposes every functor X x_B E -> P over B to X -> exp and back through
/// evaluation; true iff both round trips are identities.
UniversalPropertyReport verify_universal_property(const ExpCat& exp, const FinFunctor& x_over_b,
                                                  const SearchOptions& options = {});

// The fiber of exp over b, with its inclusion.
Subcategory exp_fiber(const ExpCat& exp, Obj b);

}  // namespace conduche
