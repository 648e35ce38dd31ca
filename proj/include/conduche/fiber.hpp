#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "conduche/fincat.hpp"

namespace conduche {

// Strict preimage of an object: objects over `a`, morphisms over id_a.
struct FiberCat {
  Obj base_object = 0;
  CatPtr category;
  FinFunctor inclusion;
};

FiberCat fiber(const FinFunctor& f, Obj a);

// Morphisms of E over u with the given endpoints, in declaration order.
struct ArrowHomSet {
  Mor u = 0;
  Obj x = 0;
  Obj y = 0;
  std::vector<Mor> members;
};

ArrowHomSet arrow_hom(const FinFunctor& f, Mor u, Obj x, Obj y);

// k . j where k lies over an identity of B; throws NotComposable otherwise.
Mor act_left(const FinFunctor& f, Mor k, Mor j);
// j . k where k lies over an identity of B.
Mor act_right(const FinFunctor& f, Mor j, Mor k);

/// Preimage tables of a functor, built once and shared by the checkers.
class FunctorIndex {
 public:
  explicit FunctorIndex(const FinFunctor& f);

  const FinFunctor& functor() const { return f_; }
  std::span<const Obj> objects_over(Obj b) const { return objects_over_[b]; }
  std::span<const Mor> morphisms_over(Mor u) const { return morphisms_over_[u]; }
  std::span<const Mor> arrows(Mor u, Obj x, Obj y) const;

 private:
  static std::uint64_t key(Mor u, Obj x, Obj y) {
    return (std::uint64_t{u} << 42) | (std::uint64_t{x} << 21) | std::uint64_t{y};
  }

  FinFunctor f_;
  std::vector<std::vector<Obj>> objects_over_;
  std::vector<std::vector<Mor>> morphisms_over_;
  std::unordered_map<std::uint64_t, std::vector<Mor>> arrows_;
};

}  // namespace conduche
