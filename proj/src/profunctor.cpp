#include "conduche/profunctor.hpp"

#include <algorithm>

#include "conduche/error.hpp"
#include "conduche/fiber.hpp"
#include "conduche/union_find.hpp"

namespace conduche {

namespace {

std::uint64_t pair_key(std::size_t p, std::size_t q) { return (std::uint64_t{p} << 32) | std::uint64_t{q}; }

void functoriality_failure(const std::string& what) { throw Error(ErrorKind::FunctorialityFailure, what); }

}  // namespace

Profunctor Profunctor::make(CatPtr source, CatPtr target, std::vector<Obj> a_of, std::vector<Obj> b_of,
                            std::vector<std::string> labels, const Action& pull, const Action& push) {
  Profunctor p;
  p.source_ = std::move(source);
  p.target_ = std::move(target);
  p.a_of_ = std::move(a_of);
  p.b_of_ = std::move(b_of);
  p.labels_ = std::move(labels);
  const FinCat& A = *p.source_;
  const FinCat& B = *p.target_;
  const std::size_t n = p.a_of_.size();
  p.values_.assign(A.num_objects() * B.num_objects(), {});
  for (std::size_t e = 0; e < n; ++e) p.values_[p.a_of_[e] * B.num_objects() + p.b_of_[e]].push_back(e);

  p.pull_.assign(A.num_morphisms() * n, kNoElement);
  p.push_.assign(B.num_morphisms() * n, kNoElement);
  for (Mor k = 0; k < A.num_morphisms(); ++k) {
    for (std::size_t e = 0; e < n; ++e) {
      if (p.a_of_[e] != A.tgt(k)) continue;
      const std::size_t r = pull(k, e);
      if (r >= n || p.a_of_[r] != A.src(k) || p.b_of_[r] != p.b_of_[e])
        functoriality_failure("contravariant action lands in the wrong value set");
      p.pull_[k * n + e] = r;
    }
  }
  for (Mor k = 0; k < B.num_morphisms(); ++k) {
    for (std::size_t e = 0; e < n; ++e) {
      if (p.b_of_[e] != B.src(k)) continue;
      const std::size_t r = push(k, e);
      if (r >= n || p.b_of_[r] != B.tgt(k) || p.a_of_[r] != p.a_of_[e])
        functoriality_failure("covariant action lands in the wrong value set");
      p.push_[k * n + e] = r;
    }
  }

  for (std::size_t e = 0; e < n; ++e) {
    if (p.pull(A.identity(p.a_of_[e]), e) != e || p.push(B.identity(p.b_of_[e]), e) != e)
      functoriality_failure("identity does not act trivially on '" + p.labels_[e] + "'");
  }
  for (std::size_t e = 0; e < n; ++e) {
    // (e . k) . k' = e . (k . k')
    for (Mor k : A.incoming(p.a_of_[e]))
      for (Mor k2 : A.incoming(A.src(k)))
        if (p.pull(k2, p.pull(k, e)) != p.pull(A.compose(k, k2), e))
          functoriality_failure("contravariant action is not functorial");
    for (Mor k : B.outgoing(p.b_of_[e]))
      for (Mor k2 : B.outgoing(B.tgt(k)))
        if (p.push(k2, p.push(k, e)) != p.push(B.compose(k2, k), e))
          functoriality_failure("covariant action is not functorial");
    for (Mor k : A.incoming(p.a_of_[e]))
      for (Mor k2 : B.outgoing(p.b_of_[e]))
        if (p.push(k2, p.pull(k, e)) != p.pull(k, p.push(k2, e)))
          functoriality_failure("the two actions do not commute");
  }
  return p;
}

HomProfunctor profunctor_from_hom(const FinFunctor& f, Mor u) {
  const FinCat& E = f.dom();
  const FinCat& B = f.cod();
  const FiberCat fa = fiber(f, B.src(u));
  const FiberCat fb = fiber(f, B.tgt(u));
  std::vector<Obj> local_a(E.num_objects(), kNoObject), local_b(E.num_objects(), kNoObject);
  for (Obj o = 0; o < fa.category->num_objects(); ++o) local_a[fa.inclusion.map_object(o)] = o;
  for (Obj o = 0; o < fb.category->num_objects(); ++o) local_b[fb.inclusion.map_object(o)] = o;

  std::vector<Mor> morphisms;
  std::vector<std::size_t> element_of(E.num_morphisms(), kNoElement);
  std::vector<Obj> a_of, b_of;
  std::vector<std::string> labels;
  for (Mor j = 0; j < E.num_morphisms(); ++j) {
    if (f.map_morphism(j) != u) continue;
    element_of[j] = morphisms.size();
    morphisms.push_back(j);
    a_of.push_back(local_a[E.src(j)]);
    b_of.push_back(local_b[E.tgt(j)]);
    labels.push_back(E.morphism_name(j));
  }
  auto pull = [&](Mor k, std::size_t e) { return element_of[E.compose(morphisms[e], fa.inclusion.map_morphism(k))]; };
  auto push = [&](Mor k, std::size_t e) { return element_of[E.compose(fb.inclusion.map_morphism(k), morphisms[e])]; };
  Profunctor p = Profunctor::make(fa.category, fb.category, std::move(a_of), std::move(b_of), std::move(labels),
                                  pull, push);
  return HomProfunctor{std::move(p), std::move(morphisms), fa.inclusion, fb.inclusion};
}

std::size_t RawComposite2::total() const {
  std::size_t n = 0;
  for (const auto& c : cells) n += c.size();
  return n;
}

namespace {

void require_composable(const Profunctor& p, const Profunctor& q) {
  if (p.target().get() != q.source().get() && !p.target()->same_structure(*q.source()))
    throw Error(ErrorKind::NotComposable, "profunctors do not share the middle category");
}

}  // namespace

RawComposite2 compose_raw(const Profunctor& p, const Profunctor& q) {
  require_composable(p, q);
  RawComposite2 r{p.source(), q.target(), {}};
  const FinCat& A = *p.source();
  const FinCat& M = *p.target();
  const FinCat& C = *q.target();
  r.cells.assign(A.num_objects() * C.num_objects(), {});
  for (Obj a = 0; a < A.num_objects(); ++a)
    for (Obj c = 0; c < C.num_objects(); ++c)
      for (Obj b = 0; b < M.num_objects(); ++b)
        for (std::size_t pe : p.value(a, b))
          for (std::size_t qe : q.value(b, c)) r.cells[a * C.num_objects() + c].push_back({b, pe, qe});
  return r;
}

std::size_t DiscreteCompletion::element_of(std::size_t p, std::size_t q) const {
  auto it = pair_class.find(pair_key(p, q));
  return it == pair_class.end() ? kNoElement : it->second;
}

DiscreteCompletion discrete_completion(const Profunctor& p, const Profunctor& q) {
  DiscreteCompletion d{Profunctor{}, compose_raw(p, q), {}};
  const FinCat& A = *p.source();
  const FinCat& M = *p.target();
  const FinCat& C = *q.target();

  std::vector<Obj> a_of, c_of;
  std::vector<std::string> labels;
  for (Obj a = 0; a < A.num_objects(); ++a) {
    for (Obj c = 0; c < C.num_objects(); ++c) {
      const auto terms = d.raw.at(a, c);
      std::unordered_map<std::uint64_t, std::size_t> local;
      for (std::size_t i = 0; i < terms.size(); ++i) local.emplace(pair_key(terms[i].p, terms[i].q), i);
      UnionFind uf(terms.size());
      // (k . p, q) ~ (p, q . k) for k: b -> b' in the middle category.
      for (const RawTerm& t : terms) {
        for (Mor k : M.outgoing(t.middle)) {
          for (std::size_t q2 : q.value(M.tgt(k), c)) {
            if (q.pull(k, q2) != t.q) continue;
            uf.unite(local.at(pair_key(t.p, t.q)), local.at(pair_key(p.push(k, t.p), q2)));
          }
        }
      }
      std::vector<std::size_t> class_of_root(terms.size(), kNoElement);
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::size_t root = uf.find(i);
        if (class_of_root[root] == kNoElement) {
          class_of_root[root] = a_of.size();
          a_of.push_back(a);
          c_of.push_back(c);
          labels.push_back("[" + p.label(terms[i].p) + "|" + q.label(terms[i].q) + "]");
        }
        d.pair_class.emplace(pair_key(terms[i].p, terms[i].q), class_of_root[root]);
      }
    }
  }
  // Induced actions through representatives: [p|q] . k = [p . k | q], k . [p|q] = [p | k . q].
  std::vector<RawTerm> rep(a_of.size());
  std::vector<bool> seen(a_of.size(), false);
  for (const auto& cell : d.raw.cells)
    for (const RawTerm& t : cell) {
      const std::size_t e = d.pair_class.at(pair_key(t.p, t.q));
      if (!seen[e]) {
        seen[e] = true;
        rep[e] = t;
      }
    }
  auto pull = [&](Mor k, std::size_t e) { return d.pair_class.at(pair_key(p.pull(k, rep[e].p), rep[e].q)); };
  auto push = [&](Mor k, std::size_t e) { return d.pair_class.at(pair_key(rep[e].p, q.push(k, rep[e].q))); };
  d.result = Profunctor::make(p.source(), q.target(), std::move(a_of), std::move(c_of), std::move(labels), pull, push);

  // Well-definedness of the induced actions on every member, not just representatives.
  for (const auto& cell : d.raw.cells)
    for (const RawTerm& t : cell) {
      const std::size_t e = d.pair_class.at(pair_key(t.p, t.q));
      for (Mor k : A.incoming(p.a_of(t.p)))
        if (d.pair_class.at(pair_key(p.pull(k, t.p), t.q)) != d.result.pull(k, e))
          throw Error(ErrorKind::FunctorialityFailure, "induced contravariant action is not well defined");
      for (Mor k : C.outgoing(q.b_of(t.q)))
        if (d.pair_class.at(pair_key(t.p, q.push(k, t.q))) != d.result.push(k, e))
          throw Error(ErrorKind::FunctorialityFailure, "induced covariant action is not well defined");
    }
  return d;
}

AssociativityReport check_associativity(const Profunctor& p, const Profunctor& q, const Profunctor& r) {
  const DiscreteCompletion pq = discrete_completion(p, q);
  const DiscreteCompletion qr = discrete_completion(q, r);
  const DiscreteCompletion left = discrete_completion(pq.result, r);
  const DiscreteCompletion right = discrete_completion(p, qr.result);
  AssociativityReport rep;
  rep.left_classes = left.result.num_elements();
  rep.right_classes = right.result.num_elements();
  std::vector<std::size_t> forward(rep.left_classes, kNoElement), backward(rep.right_classes, kNoElement);
  bool ok = rep.left_classes == rep.right_classes;
  for (std::size_t pe = 0; pe < p.num_elements(); ++pe)
    for (std::size_t qe = 0; qe < q.num_elements(); ++qe) {
      if (q.a_of(qe) != p.b_of(pe)) continue;
      for (std::size_t re = 0; re < r.num_elements(); ++re) {
        if (r.a_of(re) != q.b_of(qe)) continue;
        ++rep.triples;
        const std::size_t l = left.element_of(pq.element_of(pe, qe), re);
        const std::size_t rc = right.element_of(pe, qr.element_of(qe, re));
        if (forward[l] == kNoElement) forward[l] = rc;
        if (backward[rc] == kNoElement) backward[rc] = l;
        if (forward[l] != rc || backward[rc] != l) ok = false;
      }
    }
  rep.bijective = ok;
  return rep;
}

}  // namespace conduche
