#include "conduche/corpus.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "conduche/dsl.hpp"
#include "conduche/error.hpp"

namespace conduche {

const char* to_string(CorpusFamily family) {
  switch (family) {
    case CorpusFamily::Poset: return "poset";
    case CorpusFamily::Monoid: return "monoid";
    case CorpusFamily::Paths: return "paths";
  }
  return "?";
}

namespace {

// Library distributions differ between standard libraries; these do not.
std::size_t below(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }
std::size_t between(std::mt19937_64& rng, std::size_t lo, std::size_t hi) { return lo + below(rng, hi - lo + 1); }
bool chance(std::mt19937_64& rng, unsigned percent) { return below(rng, 100) < percent; }

template <typename T>
void shuffle(std::mt19937_64& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(rng, i)]);
}

std::vector<std::string> object_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

}  // namespace

CatPtr random_poset(std::mt19937_64& rng, CorpusBounds bounds, std::string name) {
  const std::size_t n = between(rng, 1, std::min(bounds.max_objects, bounds.max_morphisms));
  const unsigned density = static_cast<unsigned>(between(rng, 10, 70));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  shuffle(rng, order);
  // le[a][b]: a <= b. Edges follow the random linear order, then close.
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) le[order[i]][order[i]] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (chance(rng, density)) le[order[i]][order[j]] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (le[a][k] && le[k][b]) le[a][b] = true;

  RawCategory raw;
  raw.name = std::move(name);
  raw.objects = object_names(n);
  std::vector<std::vector<Mor>> arrow(n, std::vector<Mor>(n, kNoMorphism));
  for (Obj a = 0; a < n; ++a) arrow[a][a] = a;
  for (Obj a = 0; a < n; ++a)
    for (Obj b = 0; b < n; ++b)
      if (a != b && le[a][b]) {
        arrow[a][b] = static_cast<Mor>(n + raw.arrows.size());
        raw.arrows.push_back({"r" + std::to_string(a) + "_" + std::to_string(b), a, b});
      }
  if (n + raw.arrows.size() > bounds.max_morphisms) return nullptr;
  for (const RawArrow& f : raw.arrows)
    for (const RawArrow& g : raw.arrows)
      if (f.tgt == g.src) raw.composites.push_back({arrow[g.src][g.tgt], arrow[f.src][f.tgt], arrow[f.src][g.tgt]});
  return make_cat(validate_category(raw));
}

CatPtr random_monoid(std::mt19937_64& rng, CorpusBounds bounds, std::string name) {
  if (bounds.max_objects == 0 || bounds.max_morphisms == 0) return nullptr;
  using Map = std::vector<std::uint8_t>;
  const std::size_t points = between(rng, 2, 3);
  const std::size_t generators = between(rng, 1, 2);
  Map id(points);
  std::iota(id.begin(), id.end(), std::uint8_t{0});
  std::vector<Map> gens;
  for (std::size_t i = 0; i < generators; ++i) {
    Map m(points);
    for (auto& p : m) p = static_cast<std::uint8_t>(below(rng, points));
    gens.push_back(m);
  }
  // Elements in discovery order, identity first.
  std::vector<Map> elems{id};
  std::map<Map, Mor> index{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const Map& g : gens) {
      Map m(points);
      for (std::size_t p = 0; p < points; ++p) m[p] = g[elems[i][p]];
      if (index.emplace(m, static_cast<Mor>(elems.size())).second) {
        elems.push_back(m);
        if (elems.size() > bounds.max_morphisms) return nullptr;
      }
    }
  }
  RawCategory raw;
  raw.name = std::move(name);
  raw.objects = {"o"};
  for (std::size_t i = 1; i < elems.size(); ++i) {
    std::string label = "t";
    for (auto p : elems[i]) label += static_cast<char>('0' + p);
    raw.arrows.push_back({label, 0, 0});
  }
  for (std::size_t f = 1; f < elems.size(); ++f)
    for (std::size_t g = 1; g < elems.size(); ++g) {
      Map m(points);
      for (std::size_t p = 0; p < points; ++p) m[p] = elems[g][elems[f][p]];
      raw.composites.push_back({static_cast<Mor>(g), static_cast<Mor>(f), index.at(m)});
    }
  return make_cat(validate_category(raw));
}

CatPtr random_path_category(std::mt19937_64& rng, CorpusBounds bounds, std::string name) {
  const std::size_t n = between(rng, 1, std::min(bounds.max_objects, bounds.max_morphisms));
  if (n + 1 > bounds.max_morphisms) return nullptr;
  const std::size_t edges = between(rng, 1, bounds.max_morphisms - n);
  RawCategory raw;
  raw.name = std::move(name);
  raw.objects = object_names(n);
  // Vertices are numbered in topological order, so edges go up.
  for (std::size_t k = 0; k < edges; ++k) {
    const auto a = static_cast<Obj>(below(rng, n));
    const auto b = static_cast<Obj>(between(rng, a, n - 1));
    if (a == b) continue;
    raw.arrows.push_back({"e" + std::to_string(raw.arrows.size()), a, b});
  }
  if (raw.arrows.empty()) return nullptr;
  const std::size_t m = raw.arrows.size();
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t g = 0; g < m; ++g) {
      if (raw.arrows[f].tgt != raw.arrows[g].src) continue;
      std::vector<Mor> parallel;
      for (std::size_t h = 0; h < m; ++h)
        if (raw.arrows[h].src == raw.arrows[f].src && raw.arrows[h].tgt == raw.arrows[g].tgt)
          parallel.push_back(static_cast<Mor>(n + h));
      if (parallel.empty() || !chance(rng, 60)) continue;
      raw.composites.push_back({static_cast<Mor>(n + g), static_cast<Mor>(n + f), parallel[below(rng, parallel.size())]});
    }
  try {
    return make_cat(close_category(raw, bounds.max_morphisms));
  } catch (const Error&) {
    return nullptr;
  }
}

namespace {

class FunctorSampler {
 public:
  FunctorSampler(std::mt19937_64& rng, const FinCat& e, const FinCat& b, std::uint64_t budget)
      : rng_(rng), e_(e), b_(b), budget_(budget), obj_(e.num_objects(), kNoObject), mor_(e.num_morphisms(), kNoMorphism) {}

  bool run() { return objects(0); }
  const std::vector<Obj>& object_map() const { return obj_; }
  const std::vector<Mor>& morphism_map() const { return mor_; }

 private:
  bool tick() { return nodes_++ < budget_; }

  bool objects(Obj o) {
    if (o == e_.num_objects()) {
      for (Obj x = 0; x < e_.num_objects(); ++x) mor_[x] = b_.identity(obj_[x]);
      return morphisms(static_cast<Mor>(e_.num_objects()));
    }
    std::vector<Obj> choices(b_.num_objects());
    std::iota(choices.begin(), choices.end(), 0);
    shuffle(rng_, choices);
    for (Obj c : choices) {
      if (!tick()) return false;
      obj_[o] = c;
      if (objects(o + 1)) return true;
    }
    obj_[o] = kNoObject;
    return false;
  }

  // Every composite among assigned morphisms is preserved.
  bool consistent(Mor m) const {
    for (Mor f : e_.incoming(e_.src(m))) {
      if (mor_[f] == kNoMorphism) continue;
      const Mor h = e_.compose(m, f);
      if (mor_[h] != kNoMorphism && mor_[h] != b_.compose(mor_[m], mor_[f])) return false;
    }
    for (Mor g : e_.outgoing(e_.tgt(m))) {
      if (mor_[g] == kNoMorphism) continue;
      const Mor h = e_.compose(g, m);
      if (mor_[h] != kNoMorphism && mor_[h] != b_.compose(mor_[g], mor_[m])) return false;
    }
    // m as a composite of two assigned morphisms.
    for (Mor f : e_.outgoing(e_.src(m))) {
      if (mor_[f] == kNoMorphism) continue;
      for (Mor g : e_.outgoing(e_.tgt(f)))
        if (mor_[g] != kNoMorphism && e_.compose(g, f) == m && b_.compose(mor_[g], mor_[f]) != mor_[m]) return false;
    }
    return true;
  }

  bool morphisms(Mor m) {
    if (m == e_.num_morphisms()) return true;
    const auto span = b_.hom(obj_[e_.src(m)], obj_[e_.tgt(m)]);
    std::vector<Mor> choices(span.begin(), span.end());
    shuffle(rng_, choices);
    for (Mor c : choices) {
      if (!tick()) return false;
      mor_[m] = c;
      if (consistent(m) && morphisms(m + 1)) return true;
    }
    mor_[m] = kNoMorphism;
    return false;
  }

  std::mt19937_64& rng_;
  const FinCat& e_;
  const FinCat& b_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<Obj> obj_;
  std::vector<Mor> mor_;
};

}  // namespace

std::optional<FinFunctor> random_functor(std::mt19937_64& rng, const CatPtr& source, const CatPtr& target,
                                         std::string name, std::uint64_t budget) {
  FunctorSampler s(rng, *source, *target, budget);
  if (!s.run()) return std::nullopt;
  RawFunctor raw{std::move(name), s.object_map(), s.morphism_map()};
  return validate_functor(raw, source, target);
}

std::vector<CorpusInstance> generate_corpus(std::uint64_t seed, CorpusBounds bounds, std::size_t count) {
  std::mt19937_64 rng(seed);
  auto draw = [&](CorpusFamily family, std::string name) -> CatPtr {
    switch (family) {
      case CorpusFamily::Poset: return random_poset(rng, bounds, std::move(name));
      case CorpusFamily::Monoid: return random_monoid(rng, bounds, std::move(name));
      case CorpusFamily::Paths: return random_path_category(rng, bounds, std::move(name));
    }
    return nullptr;
  };
  std::vector<CorpusInstance> out;
  const std::size_t max_attempts = 1000 * (count + 1);
  for (std::size_t attempt = 0; out.size() < count && attempt < max_attempts; ++attempt) {
    const std::string id = std::to_string(out.size());
    const auto fe = static_cast<CorpusFamily>(below(rng, 3));
    const auto fb = static_cast<CorpusFamily>(below(rng, 3));
    const CatPtr e = draw(fe, "E" + id);
    if (!e) continue;
    const CatPtr b = draw(fb, "B" + id);
    if (!b) continue;
    auto f = random_functor(rng, e, b, "f" + id);
    if (!f) continue;
    out.push_back({std::move(*f), fe, fb});
  }
  return out;
}

}  // namespace conduche
