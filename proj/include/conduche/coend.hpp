#pragma once

#include <vector>

#include "conduche/fiber.hpp"
#include "conduche/fincat.hpp"

namespace conduche {

// A pair (j, l) with j in hom^u(x, y) and l in hom^v(y, z).
struct CoendGenerator {
  Obj y = 0;
  Mor j = 0;
  Mor l = 0;

  friend bool operator==(const CoendGenerator&, const CoendGenerator&) = default;
};

/// The coend of hom^u(x, -) x hom^v(-, z) over the middle fiber, with its
/// comparison map into hom^{v.u}(x, z).
///
/// Generators are sorted by (j, l). Class i has representative
/// `generators[representatives[i]]`, the least generator in the class, and
/// classes are numbered in increasing representative order.
struct CoendResult {
  Mor u = 0;
  Mor v = 0;
  Mor composite = 0;
  Obj x = 0;
  Obj z = 0;
  std::vector<CoendGenerator> generators;
  std::vector<std::size_t> class_of;
  std::vector<std::size_t> representatives;
  std::vector<Mor> comparison;  // class -> l . j
  std::vector<Mor> target;      // hom^{v.u}(x, z)
  std::vector<Mor> missing;     // target elements hit by no class
  bool surjective = true;
  bool injective = true;

  std::size_t num_classes() const { return representatives.size(); }
  bool bijective() const { return surjective && injective; }

  // First target element reached by two classes, with those two classes.
  struct Collision {
    Mor composite;
    std::size_t first_class;
    std::size_t second_class;
  };
  std::vector<Collision> collisions;
};

CoendResult coend_compose(const FunctorIndex& index, Mor u, Mor v, Obj x, Obj z);
CoendResult coend_compose(const FinFunctor& f, Mor u, Mor v, Obj x, Obj z);

}  // namespace conduche
