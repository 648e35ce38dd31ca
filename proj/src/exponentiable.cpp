#include "conduche/exponentiable.hpp"

#include <algorithm>

namespace conduche {

const char* to_string(Verdict v) {
  return v == Verdict::Exponentiable ? "exponentiable" : "not_exponentiable";
}

const char* to_string(FailureKind k) {
  return k == FailureKind::NonSurjective ? "non_surjective" : "non_injective";
}

std::vector<Witness> witnesses_of(const CoendResult& r) {
  std::vector<Witness> out;
  if (!r.missing.empty()) {
    Witness w{r.u, r.v, r.x, r.z, FailureKind::NonSurjective, r.missing.front(), {}, {}};
    out.push_back(w);
  }
  if (!r.collisions.empty()) {
    const auto& c = r.collisions.front();
    Witness w{r.u, r.v, r.x, r.z, FailureKind::NonInjective, c.composite,
              r.generators[r.representatives[c.first_class]], r.generators[r.representatives[c.second_class]]};
    out.push_back(w);
  }
  return out;
}

Certificate check_exponentiable(const FinFunctor& f, const CheckOptions& options) {
  const FinCat& B = f.cod();
  const FunctorIndex index(f);
  Certificate cert;
  for (Mor u = 0; u < B.num_morphisms(); ++u) {
    for (Mor v : B.outgoing(B.tgt(u))) {
      ++cert.stats.composable_pairs;
      for (Obj x : index.objects_over(B.src(u))) {
        for (Obj z : index.objects_over(B.tgt(v))) {
          ++cert.stats.instances;
          const CoendResult r = coend_compose(index, u, v, x, z);
          cert.stats.generators += r.generators.size();
          if (r.bijective()) continue;
          for (Witness& w : witnesses_of(r)) cert.witnesses.push_back(w);
          if (options.fail_fast) {
            cert.witnesses.resize(1);
            cert.verdict = Verdict::NotExponentiable;
            return cert;
          }
        }
      }
    }
  }
  cert.verdict = cert.witnesses.empty() ? Verdict::Exponentiable : Verdict::NotExponentiable;
  return cert;
}

bool recheck_witness(const FinFunctor& f, const Witness& w) {
  const CoendResult r = coend_compose(f, w.u, w.v, w.x, w.z);
  if (w.kind == FailureKind::NonSurjective) {
    if (std::find(r.target.begin(), r.target.end(), w.composite) == r.target.end()) return false;
    for (Mor m : r.comparison)
      if (m == w.composite) return false;
    return true;
  }
  const FinCat& E = f.dom();
  auto find_gen = [&](const CoendGenerator& g) -> std::ptrdiff_t {
    for (std::size_t i = 0; i < r.generators.size(); ++i)
      if (r.generators[i] == g) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };
  const auto a = find_gen(w.first);
  const auto b = find_gen(w.second);
  if (a < 0 || b < 0) return false;
  return r.class_of[a] != r.class_of[b] && E.compose(w.first.l, w.first.j) == w.composite &&
         E.compose(w.second.l, w.second.j) == w.composite;
}

}  // namespace conduche
