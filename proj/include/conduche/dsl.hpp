#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conduche/error.hpp"
#include "conduche/fincat.hpp"
#include "conduche/nerve.hpp"
#include "conduche/profunctor.hpp"

namespace conduche {

struct ProfunctorDecl {
  std::string name;
  std::string functor;
  std::string morphism;
  HomProfunctor value;
};

/// Everything declared in one `.fincat` file, in declaration order.
struct Workspace {
  template <typename T>
  struct Entry {
    std::string name;
    T value;
    SourceLocation location;
  };

  std::vector<Entry<CatPtr>> categories;
  std::vector<Entry<FinFunctor>> functors;
  std::vector<Entry<TruncSSet>> ssets;
  std::vector<Entry<ProfunctorDecl>> profunctors;

  const CatPtr* find_category(std::string_view name) const;
  const FinFunctor* find_functor(std::string_view name) const;
  const TruncSSet* find_sset(std::string_view name) const;
  const ProfunctorDecl* find_profunctor(std::string_view name) const;
};

struct ParseOptions {
  std::size_t closure_budget = kDefaultClosureBudget;
};

/// Parses and validates a workspace. Errors carry the line and column of the
/// offending declaration or token.
///
///   category C { objects: a, b; arrows: u: a -> b, e: b -> b; compose: e . e = e }
///   functor f : C -> D { objects: a -> x, b -> y; arrows: u -> w, e -> id_y }
///   sset S { vertices: x, y; edges: p: x -> y; triangles: t: [p, p, s0(x)] }
///   profunctor H = hom(f, w)
///
/// Identities are implicit and named id_<object>. A composition table that
/// leaves pairs out is closed under associativity, adding composites named
/// "g.f"; closure that identifies two declared morphisms is a Collapse error.
Workspace parse_workspace(std::string_view text, const ParseOptions& options = {});

// Completes a partial table. Used by the parser and the corpus generator.
FinCat close_category(const RawCategory& raw, std::size_t budget = kDefaultClosureBudget);

std::string quote_name(std::string_view name);
std::string print_category(const FinCat& c);
std::string print_functor(const FinFunctor& f);
std::string print_sset(const TruncSSet& s);

}  // namespace conduche
