#include "conduche/coend.hpp"

#include <algorithm>
#include <unordered_map>

#include "conduche/error.hpp"
#include "conduche/union_find.hpp"

namespace conduche {

CoendResult coend_compose(const FunctorIndex& index, Mor u, Mor v, Obj x, Obj z) {
  const FinFunctor& f = index.functor();
  const FinCat& E = f.dom();
  const FinCat& B = f.cod();
  if (B.tgt(u) != B.src(v)) throw Error(ErrorKind::NotComposable, "coend: u and v are not composable");
  if (f.map_object(x) != B.src(u) || f.map_object(z) != B.tgt(v))
    throw Error(ErrorKind::InvalidArgument, "coend: endpoints do not lie over u and v");

  CoendResult r;
  r.u = u;
  r.v = v;
  r.composite = B.compose(v, u);
  r.x = x;
  r.z = z;
  const Obj b = B.tgt(u);

  for (Obj y : index.objects_over(b))
    for (Mor j : index.arrows(u, x, y))
      for (Mor l : index.arrows(v, y, z)) r.generators.push_back({y, j, l});
  std::sort(r.generators.begin(), r.generators.end(),
            [](const CoendGenerator& a, const CoendGenerator& c) { return std::tie(a.j, a.l) < std::tie(c.j, c.l); });

  std::unordered_map<std::uint64_t, std::size_t> at;
  auto key = [](Mor j, Mor l) { return (std::uint64_t{j} << 32) | l; };
  for (std::size_t i = 0; i < r.generators.size(); ++i) at.emplace(key(r.generators[i].j, r.generators[i].l), i);

  // (k . j, l) ~ (j, l . k) for every middle-fiber morphism k: y -> y'.
  UnionFind uf(r.generators.size());
  for (Mor k : index.morphisms_over(B.identity(b))) {
    const Obj y = E.src(k);
    const Obj y2 = E.tgt(k);
    for (Mor j : index.arrows(u, x, y))
      for (Mor l : index.arrows(v, y2, z)) uf.unite(at.at(key(E.compose(k, j), l)), at.at(key(j, E.compose(l, k))));
  }

  std::vector<std::size_t> class_of_root(r.generators.size(), SIZE_MAX);
  r.class_of.resize(r.generators.size());
  for (std::size_t i = 0; i < r.generators.size(); ++i) {
    const std::size_t root = uf.find(i);
    if (class_of_root[root] == SIZE_MAX) {
      class_of_root[root] = r.representatives.size();
      r.representatives.push_back(i);
      const CoendGenerator& g = r.generators[i];
      r.comparison.push_back(E.compose(g.l, g.j));
    }
    r.class_of[i] = class_of_root[root];
    const CoendGenerator& g = r.generators[i];
    if (E.compose(g.l, g.j) != r.comparison[r.class_of[i]])
      throw Error(ErrorKind::NonAssociative, "coend comparison is not constant on a zig-zag class");
  }

  const auto targets = index.arrows(r.composite, x, z);
  r.target.assign(targets.begin(), targets.end());
  for (Mor m : r.target) {
    std::vector<std::size_t> hits;
    for (std::size_t c = 0; c < r.comparison.size(); ++c)
      if (r.comparison[c] == m) hits.push_back(c);
    if (hits.empty()) r.missing.push_back(m);
    if (hits.size() >= 2) r.collisions.push_back({m, hits[0], hits[1]});
  }
  r.surjective = r.missing.empty();
  r.injective = r.collisions.empty();
  return r;
}

CoendResult coend_compose(const FinFunctor& f, Mor u, Mor v, Obj x, Obj z) {
  return coend_compose(FunctorIndex(f), u, v, x, z);
}

}  // namespace conduche
