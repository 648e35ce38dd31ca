#include "conduche/nerve.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "conduche/error.hpp"

namespace conduche {

Cell TruncSSet::find(int level, const std::string& name) const {
  const auto& names = cells[level];
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? kNoCell : static_cast<Cell>(it - names.begin());
}

bool TruncSSet::is_degenerate(int level, Cell c) const {
  if (level == 0) return false;
  for (const auto& s : degeneracies[level - 1])
    if (std::find(s.begin(), s.end(), c) != s.end()) return true;
  return false;
}

namespace {

using Surjection = std::vector<int>;  // [k] -> [m], monotone and onto

Surjection identity_surjection(int k) {
  Surjection s(k + 1);
  for (int t = 0; t <= k; ++t) s[t] = t;
  return s;
}

// All monotone surjections [k] -> [m], lexicographically.
std::vector<Surjection> surjections(int k, int m) {
  std::vector<Surjection> out;
  Surjection s(k + 1);
  auto rec = [&](auto&& self, int t) -> void {
    if (t == k + 1) {
      if (s[k] == m) out.push_back(s);
      return;
    }
    const int prev = t == 0 ? 0 : s[t - 1];
    for (int val : {prev, prev + 1}) {
      if (t == 0 && val != 0) continue;
      if (val > m) continue;
      s[t] = val;
      self(self, t + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string degenerate_name(const std::string& base, const Surjection& s) {
  std::string name = base;
  for (std::size_t j = 0; j + 1 < s.size(); ++j)
    if (s[j] == s[j + 1]) name = "s" + std::to_string(j) + "(" + name + ")";
  return name;
}

// Cell in normal form: a nondegenerate m-cell x and a surjection onto [m].
struct Normal {
  int m;
  Cell x;
  Surjection sigma;
  auto operator<=>(const Normal&) const = default;
};

class SSetBuilder {
 public:
  explicit SSetBuilder(const RawSSet& raw) : raw_(raw) {}

  TruncSSet build() {
    TruncSSet s;
    s.name = raw_.name;
    for (int m = 0; m <= kSSetTop; ++m)
      for (std::size_t x = 0; x < raw_.levels[m].size(); ++x) {
        const std::string& name = raw_.levels[m][x].name;
        for (int other = 0; other <= kSSetTop; ++other)
          for (std::size_t y = 0; y < raw_.levels[other].size(); ++y)
            if ((other != m || y != x) && raw_.levels[other][y].name == name)
              throw Error(ErrorKind::DuplicateName, "sset '" + raw_.name + "': cell '" + name + "' declared twice");
        by_name_.emplace(name, std::pair{m, static_cast<Cell>(x)});
      }

    // Cells of each level: nondegenerate first, then (m, x, sigma) order.
    for (int k = 0; k <= kSSetTop; ++k) {
      for (std::size_t x = 0; x < raw_.levels[k].size(); ++x)
        add(s, k, {k, static_cast<Cell>(x), identity_surjection(k)}, raw_.levels[k][x].name);
      for (int m = 0; m < k; ++m)
        for (std::size_t x = 0; x < raw_.levels[m].size(); ++x)
          for (const Surjection& sigma : surjections(k, m))
            add(s, k, {m, static_cast<Cell>(x), sigma}, degenerate_name(raw_.levels[m][x].name, sigma));
    }

    // Declared faces of nondegenerate cells, in normal form.
    declared_.resize(kSSetTop + 1);
    for (int k = 1; k <= kSSetTop; ++k) {
      for (const RawCell& c : raw_.levels[k]) {
        if (c.faces.size() != static_cast<std::size_t>(k + 1))
          throw Error(ErrorKind::SimplicialIdentity, "cell '" + c.name + "' needs " + std::to_string(k + 1) +
                                                         " faces, got " + std::to_string(c.faces.size()));
        std::vector<Normal> faces;
        for (const CellExpr& e : c.faces) {
          Normal n = resolve(e);
          if (static_cast<int>(n.sigma.size()) != k)
            throw Error(ErrorKind::SimplicialIdentity, "face of '" + c.name + "' is not a " + std::to_string(k - 1) +
                                                           "-cell");
          faces.push_back(std::move(n));
        }
        declared_[k].push_back(std::move(faces));
      }
    }

    for (int k = 1; k <= kSSetTop; ++k) {
      s.faces[k].assign(k + 1, std::vector<Cell>(s.cells[k].size()));
      for (Cell c = 0; c < s.cells[k].size(); ++c)
        for (int i = 0; i <= k; ++i) s.faces[k][i][c] = index_.at(face(normals_[k][c], i));
    }
    for (int k = 0; k < kSSetTop; ++k) {
      s.degeneracies[k].assign(k + 1, std::vector<Cell>(s.cells[k].size()));
      for (Cell c = 0; c < s.cells[k].size(); ++c)
        for (int i = 0; i <= k; ++i) s.degeneracies[k][i][c] = index_.at(degeneracy(normals_[k][c], i));
    }
    return s;
  }

 private:
  void add(TruncSSet& s, int k, Normal n, std::string name) {
    index_.emplace(n, static_cast<Cell>(s.cells[k].size()));
    normals_[k].push_back(std::move(n));
    s.cells[k].push_back(std::move(name));
  }

  Normal resolve(const CellExpr& e) const {
    auto it = by_name_.find(e.base);
    if (it == by_name_.end())
      throw Error(ErrorKind::UnresolvedName, "sset '" + raw_.name + "': unknown cell '" + e.base + "'");
    const auto [m, x] = it->second;
    Normal n{m, x, identity_surjection(m)};
    for (int i : e.degeneracies) {
      if (i < 0 || i >= static_cast<int>(n.sigma.size()))
        throw Error(ErrorKind::SimplicialIdentity, "degeneracy s" + std::to_string(i) + " out of range on '" +
                                                       e.base + "'");
      n = degeneracy(n, i);
    }
    if (static_cast<int>(n.sigma.size()) - 1 > kSSetTop)
      throw Error(ErrorKind::SimplicialIdentity, "cell expression above level 3");
    return n;
  }

  static Normal degeneracy(const Normal& n, int i) {
    const int k = static_cast<int>(n.sigma.size()) - 1;
    Surjection r(k + 2);
    for (int t = 0; t <= k + 1; ++t) r[t] = n.sigma[t <= i ? t : t - 1];
    return {n.m, n.x, std::move(r)};
  }

  Normal face(const Normal& n, int i) const {
    const int k = static_cast<int>(n.sigma.size()) - 1;
    Surjection rho(k);
    for (int t = 0; t < k; ++t) rho[t] = n.sigma[t < i ? t : t + 1];
    int missing = -1;
    for (int j = 0; j <= n.m && missing < 0; ++j)
      if (std::find(rho.begin(), rho.end(), j) == rho.end()) missing = j;
    if (missing < 0) return {n.m, n.x, std::move(rho)};
    const Normal& d = declared_[n.m][n.x][missing];
    for (int& v : rho)
      if (v > missing) --v;
    Surjection composed(k);
    for (int t = 0; t < k; ++t) composed[t] = d.sigma[rho[t]];
    return {d.m, d.x, std::move(composed)};
  }

  const RawSSet& raw_;
  std::map<std::string, std::pair<int, Cell>> by_name_;
  std::array<std::vector<Normal>, kSSetTop + 1> normals_;
  std::map<Normal, Cell> index_;
  std::vector<std::vector<std::vector<Normal>>> declared_;
};

}  // namespace

TruncSSet build_sset(const RawSSet& raw) {
  TruncSSet s = SSetBuilder(raw).build();
  validate_sset(s);
  return s;
}

void validate_sset(const TruncSSet& s) {
  auto fail = [&](int k, Cell c, const std::string& law) {
    throw Error(ErrorKind::SimplicialIdentity,
                "sset '" + s.name + "': " + law + " fails at " + std::to_string(k) + "-cell '" + s.cells[k][c] + "'");
  };
  auto law = [](const char* lhs, int a, int b, const char* rhs, int c, int d) {
    return std::string(lhs) + std::to_string(a) + " " + lhs + std::to_string(b) + " = " + rhs + std::to_string(c) +
           " " + rhs + std::to_string(d);
  };
  for (int k = 2; k <= kSSetTop; ++k)
    for (Cell c = 0; c < s.size(k); ++c)
      for (int j = 0; j <= k; ++j)
        for (int i = 0; i < j; ++i)
          if (s.face(k - 1, i, s.face(k, j, c)) != s.face(k - 1, j - 1, s.face(k, i, c)))
            fail(k, c, law("d", i, j, "d", j - 1, i));
  for (int k = 0; k < kSSetTop; ++k)
    for (Cell c = 0; c < s.size(k); ++c)
      for (int j = 0; j <= k; ++j) {
        const Cell sj = s.degeneracy(k, j, c);
        for (int i = 0; i <= k + 1; ++i) {
          const Cell lhs = s.face(k + 1, i, sj);
          Cell rhs;
          if (i == j || i == j + 1) rhs = c;
          else if (i < j) rhs = s.degeneracy(k - 1, j - 1, s.face(k, i, c));
          else rhs = s.degeneracy(k - 1, j, s.face(k, i - 1, c));
          if (lhs != rhs) fail(k, c, "d" + std::to_string(i) + " s" + std::to_string(j) + " identity");
        }
        if (k + 1 < kSSetTop)
          for (int i = 0; i <= j; ++i)
            if (s.degeneracy(k + 1, i, sj) != s.degeneracy(k + 1, j + 1, s.degeneracy(k, i, c)))
              fail(k, c, law("s", i, j, "s", j + 1, i));
      }
}

TruncSSet nerve_trunc(const FinCat& c) {
  TruncSSet s;
  s.name = "N(" + c.name() + ")";
  std::array<std::vector<std::vector<Mor>>, kSSetTop + 1> chains;
  std::array<std::map<std::vector<Mor>, Cell>, kSSetTop + 1> at;
  for (Obj o = 0; o < c.num_objects(); ++o) {
    s.cells[0].push_back(c.object_name(o));
    chains[0].push_back({});
  }
  for (Mor m = 0; m < c.num_morphisms(); ++m) chains[1].push_back({m});
  for (int k = 2; k <= kSSetTop; ++k)
    for (const auto& prefix : chains[k - 1]) {
      std::vector<Mor> next(c.outgoing(c.tgt(prefix.back())).begin(), c.outgoing(c.tgt(prefix.back())).end());
      std::sort(next.begin(), next.end());
      for (Mor m : next) {
        auto chain = prefix;
        chain.push_back(m);
        chains[k].push_back(std::move(chain));
      }
    }
  for (int k = 1; k <= kSSetTop; ++k) {
    std::sort(chains[k].begin(), chains[k].end());
    for (const auto& chain : chains[k]) {
      at[k].emplace(chain, static_cast<Cell>(s.cells[k].size()));
      if (k == 1) {
        s.cells[k].push_back(c.morphism_name(chain[0]));
        continue;
      }
      std::string name = "(";
      for (std::size_t i = 0; i < chain.size(); ++i) name += (i ? "," : "") + c.morphism_name(chain[i]);
      s.cells[k].push_back(name + ")");
    }
  }
  auto vertex = [&](const std::vector<Mor>& chain, std::size_t i) { return i == 0 ? c.src(chain[0]) : c.tgt(chain[i - 1]); };

  s.faces[1] = {std::vector<Cell>(chains[1].size()), std::vector<Cell>(chains[1].size())};
  for (Cell e = 0; e < chains[1].size(); ++e) {
    s.faces[1][0][e] = c.tgt(chains[1][e][0]);
    s.faces[1][1][e] = c.src(chains[1][e][0]);
  }
  for (int k = 2; k <= kSSetTop; ++k) {
    s.faces[k].assign(k + 1, std::vector<Cell>(chains[k].size()));
    for (Cell x = 0; x < chains[k].size(); ++x) {
      const auto& chain = chains[k][x];
      for (int i = 0; i <= k; ++i) {
        std::vector<Mor> d;
        for (int t = 0; t < k; ++t) {
          if (i == 0 && t == 0) continue;
          if (i == k && t == k - 1) continue;
          if (0 < i && i < k && t == i) continue;
          if (0 < i && i < k && t == i - 1) d.push_back(c.compose(chain[i], chain[i - 1]));
          else d.push_back(chain[t]);
        }
        s.faces[k][i][x] = at[k - 1].at(d);
      }
    }
  }
  s.degeneracies[0] = {std::vector<Cell>(c.num_objects())};
  for (Obj o = 0; o < c.num_objects(); ++o) s.degeneracies[0][0][o] = at[1].at({c.identity(o)});
  for (int k = 1; k < kSSetTop; ++k) {
    s.degeneracies[k].assign(k + 1, std::vector<Cell>(chains[k].size()));
    for (Cell x = 0; x < chains[k].size(); ++x)
      for (int i = 0; i <= k; ++i) {
        auto chain = chains[k][x];
        chain.insert(chain.begin() + i, c.identity(vertex(chains[k][x], i)));
        s.degeneracies[k][i][x] = at[k + 1].at(chain);
      }
  }
  return s;
}

SimplicialMap nerve_map(const FinFunctor& f, const TruncSSet& source, const TruncSSet& target) {
  // Cells of a nerve are determined by their edges, so map through the spine.
  SimplicialMap p;
  p.levels[0] = f.object_map();
  p.levels[1] = f.morphism_map();
  for (int k = 2; k <= kSSetTop; ++k) {
    std::map<std::vector<Cell>, Cell> by_spine;
    auto spine = [&](const TruncSSet& s, Cell x) {
      std::vector<Cell> edges;
      // Edge i -> i+1 of a k-cell: drop every other vertex.
      for (int i = 0; i < k; ++i) {
        Cell y = x;
        int level = k;
        for (int v = k; v > i + 1; --v) y = s.face(level--, v, y);
        for (int v = 0; v < i; ++v) y = s.face(level--, 0, y);
        edges.push_back(y);
      }
      return edges;
    };
    for (Cell y = 0; y < target.size(k); ++y) by_spine.emplace(spine(target, y), y);
    p.levels[k].resize(source.size(k));
    for (Cell x = 0; x < source.size(k); ++x) {
      auto edges = spine(source, x);
      for (Cell& e : edges) e = p.levels[1][e];
      p.levels[k][x] = by_spine.at(edges);
    }
  }
  return p;
}

SimplicialMap compose_maps(const SimplicialMap& g, const SimplicialMap& f) {
  SimplicialMap r;
  for (int k = 0; k <= kSSetTop; ++k)
    for (Cell c : f.levels[k]) r.levels[k].push_back(g.levels[k][c]);
  return r;
}

const char* to_string(SegalFailure k) {
  switch (k) {
    case SegalFailure::MissingFiller: return "missing_filler";
    case SegalFailure::DuplicateFiller: return "duplicate_filler";
    case SegalFailure::MissingSpineFiller: return "missing_spine_filler";
    case SegalFailure::DuplicateSpineFiller: return "duplicate_spine_filler";
  }
  return "?";
}

namespace {

// 2-cells grouped by their (d2, d0) horn.
std::map<std::pair<Cell, Cell>, std::vector<Cell>> fillers_by_horn(const TruncSSet& s) {
  std::map<std::pair<Cell, Cell>, std::vector<Cell>> out;
  for (Cell t = 0; t < s.size(2); ++t) out[{s.face(2, 2, t), s.face(2, 0, t)}].push_back(t);
  return out;
}

}  // namespace

SegalReport segal_check(const TruncSSet& s) {
  SegalReport r;
  const auto fillers = fillers_by_horn(s);
  for (Cell e1 = 0; e1 < s.size(1); ++e1)
    for (Cell e2 = 0; e2 < s.size(1); ++e2) {
      if (s.face(1, 0, e1) != s.face(1, 1, e2)) continue;
      ++r.horns;
      auto it = fillers.find({e1, e2});
      const std::size_t count = it == fillers.end() ? 0 : it->second.size();
      if (count == 0) r.violations.push_back({SegalFailure::MissingFiller, {e1, e2}, {}});
      if (count >= 2) r.violations.push_back({SegalFailure::DuplicateFiller, {e1, e2}, it->second});
    }

  // Spine of a 3-cell: edges 01, 12, 23.
  std::map<std::vector<Cell>, std::vector<Cell>> by_spine;
  for (Cell x = 0; x < s.size(3); ++x) {
    const Cell e01 = s.face(2, 2, s.face(3, 3, x));
    const Cell e12 = s.face(2, 0, s.face(3, 3, x));
    const Cell e23 = s.face(2, 0, s.face(3, 0, x));
    by_spine[{e01, e12, e23}].push_back(x);
  }
  for (Cell e1 = 0; e1 < s.size(1); ++e1)
    for (Cell e2 = 0; e2 < s.size(1); ++e2) {
      if (s.face(1, 0, e1) != s.face(1, 1, e2)) continue;
      for (Cell e3 = 0; e3 < s.size(1); ++e3) {
        if (s.face(1, 0, e2) != s.face(1, 1, e3)) continue;
        ++r.spines;
        auto it = by_spine.find({e1, e2, e3});
        const std::size_t count = it == by_spine.end() ? 0 : it->second.size();
        if (count == 0) r.violations.push_back({SegalFailure::MissingSpineFiller, {e1, e2, e3}, {}});
        if (count >= 2) r.violations.push_back({SegalFailure::DuplicateSpineFiller, {e1, e2, e3}, it->second});
      }
    }
  return r;
}

SegalReport inner_lift_check(const TruncSSet& source, const TruncSSet& target, const SimplicialMap& p) {
  SegalReport r;
  const auto fillers = fillers_by_horn(source);
  for (Cell e1 = 0; e1 < source.size(1); ++e1)
    for (Cell e2 = 0; e2 < source.size(1); ++e2) {
      if (source.face(1, 0, e1) != source.face(1, 1, e2)) continue;
      for (Cell tau = 0; tau < target.size(2); ++tau) {
        if (target.face(2, 2, tau) != p.levels[1][e1] || target.face(2, 0, tau) != p.levels[1][e2]) continue;
        ++r.horns;
        std::vector<Cell> lifts;
        if (auto it = fillers.find({e1, e2}); it != fillers.end())
          for (Cell t : it->second)
            if (p.levels[2][t] == tau) lifts.push_back(t);
        if (lifts.empty()) r.violations.push_back({SegalFailure::MissingFiller, {e1, e2}, {}, tau});
        if (lifts.size() >= 2) r.violations.push_back({SegalFailure::DuplicateFiller, {e1, e2}, lifts, tau});
      }
    }
  return r;
}

SegalReport inner_lift_check(const FinFunctor& f) {
  const TruncSSet ne = nerve_trunc(f.dom());
  const TruncSSet nb = nerve_trunc(f.cod());
  return inner_lift_check(ne, nb, nerve_map(f, ne, nb));
}

}  // namespace conduche
