#include "conduche/fiber.hpp"

#include "conduche/error.hpp"

namespace conduche {

FiberCat fiber(const FinFunctor& f, Obj a) {
  const FinCat& E = f.dom();
  const FinCat& B = f.cod();
  if (a >= B.num_objects()) throw Error(ErrorKind::InvalidArgument, "fiber: object out of range");
  std::vector<Obj> objects;
  for (Obj e = 0; e < E.num_objects(); ++e)
    if (f.map_object(e) == a) objects.push_back(e);
  std::vector<Mor> morphisms;
  for (Mor k = 0; k < E.num_morphisms(); ++k)
    if (f.map_morphism(k) == B.identity(a)) morphisms.push_back(k);
  Subcategory sub = subcategory(f.source(), objects, morphisms, E.name() + "_" + B.object_name(a));
  return FiberCat{a, sub.cat, sub.inclusion};
}

ArrowHomSet arrow_hom(const FinFunctor& f, Mor u, Obj x, Obj y) {
  const FinCat& E = f.dom();
  ArrowHomSet h{u, x, y, {}};
  for (Mor j : E.hom(x, y))
    if (f.map_morphism(j) == u) h.members.push_back(j);
  return h;
}

namespace {

void require_vertical(const FinFunctor& f, Mor k) {
  if (!f.cod().is_identity(f.map_morphism(k)))
    throw Error(ErrorKind::NotComposable, "'" + f.dom().morphism_name(k) + "' is not a fiber morphism");
}

}  // namespace

Mor act_left(const FinFunctor& f, Mor k, Mor j) {
  require_vertical(f, k);
  auto r = f.dom().try_compose(k, j);
  if (!r)
    throw Error(ErrorKind::NotComposable,
                "'" + f.dom().morphism_name(k) + " . " + f.dom().morphism_name(j) + "' is not defined");
  return *r;
}

Mor act_right(const FinFunctor& f, Mor j, Mor k) {
  require_vertical(f, k);
  auto r = f.dom().try_compose(j, k);
  if (!r)
    throw Error(ErrorKind::NotComposable,
                "'" + f.dom().morphism_name(j) + " . " + f.dom().morphism_name(k) + "' is not defined");
  return *r;
}

FunctorIndex::FunctorIndex(const FinFunctor& f) : f_(f) {
  const FinCat& E = f.dom();
  const FinCat& B = f.cod();
  objects_over_.assign(B.num_objects(), {});
  morphisms_over_.assign(B.num_morphisms(), {});
  for (Obj e = 0; e < E.num_objects(); ++e) objects_over_[f.map_object(e)].push_back(e);
  for (Mor j = 0; j < E.num_morphisms(); ++j) {
    const Mor u = f.map_morphism(j);
    morphisms_over_[u].push_back(j);
    arrows_[key(u, E.src(j), E.tgt(j))].push_back(j);
  }
}

std::span<const Mor> FunctorIndex::arrows(Mor u, Obj x, Obj y) const {
  auto it = arrows_.find(key(u, x, y));
  if (it == arrows_.end()) return {};
  return it->second;
}

}  // namespace conduche
