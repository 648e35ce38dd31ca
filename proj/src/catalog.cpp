#include "conduche/catalog.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace conduche {

namespace {

// Table of a category laid out as identities, then non-identities grouped
// by (src, tgt) in row-major order.
struct Layout {
  std::size_t n = 0;
  std::vector<std::size_t> counts;  // non-identity arrows per (s, t)
  std::vector<Obj> src;
  std::vector<Obj> tgt;

  static Layout from_counts(std::size_t n, std::vector<std::size_t> counts) {
    Layout l;
    l.n = n;
    l.counts = std::move(counts);
    for (Obj o = 0; o < n; ++o) {
      l.src.push_back(o);
      l.tgt.push_back(o);
    }
    for (Obj s = 0; s < n; ++s)
      for (Obj t = 0; t < n; ++t)
        for (std::size_t i = 0; i < l.counts[s * n + t]; ++i) {
          l.src.push_back(s);
          l.tgt.push_back(t);
        }
    return l;
  }
  std::size_t size() const { return src.size(); }
};

std::vector<std::uint32_t> encode(const FinCat& c, const std::vector<Obj>& perm, const std::vector<Mor>& relabel) {
  // relabel: old morphism -> new morphism index in the grouped layout.
  const std::size_t n = c.num_objects();
  const std::size_t m = c.num_morphisms();
  std::vector<std::uint32_t> code{static_cast<std::uint32_t>(n)};
  std::vector<std::uint32_t> counts(n * n, 0);
  for (Mor k = static_cast<Mor>(n); k < m; ++k) ++counts[perm[c.src(k)] * n + perm[c.tgt(k)]];
  code.insert(code.end(), counts.begin(), counts.end());
  std::vector<Mor> inverse(m);
  for (Mor k = 0; k < m; ++k) inverse[relabel[k]] = k;
  for (Mor f = static_cast<Mor>(n); f < m; ++f)
    for (Mor g = static_cast<Mor>(n); g < m; ++g) {
      const Mor of = inverse[f], og = inverse[g];
      if (c.tgt(of) == c.src(og)) code.push_back(relabel[c.compose(og, of)]);
    }
  return code;
}

}  // namespace

std::vector<std::uint32_t> canonical_form(const FinCat& c) {
  const std::size_t n = c.num_objects();
  const std::size_t m = c.num_morphisms();
  std::vector<Obj> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint32_t> best;
  do {
    // Blocks of parallel arrows in the permuted order.
    std::vector<std::vector<Mor>> blocks(n * n);
    for (Mor k = static_cast<Mor>(n); k < m; ++k) blocks[perm[c.src(k)] * n + perm[c.tgt(k)]].push_back(k);
    std::vector<Mor> relabel(m);
    for (Obj o = 0; o < n; ++o) relabel[o] = perm[o];
    // Iterate over all orderings inside every block.
    auto rec = [&](auto&& self, std::size_t b, Mor next) -> void {
      if (b == blocks.size()) {
        auto code = encode(c, perm, relabel);
        if (best.empty() || code < best) best = std::move(code);
        return;
      }
      auto& block = blocks[b];
      std::sort(block.begin(), block.end());
      do {
        for (std::size_t i = 0; i < block.size(); ++i) relabel[block[i]] = next + static_cast<Mor>(i);
        self(self, b + 1, next + static_cast<Mor>(block.size()));
      } while (std::next_permutation(block.begin(), block.end()));
    };
    rec(rec, 0, static_cast<Mor>(n));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

namespace {

class TableSearch {
 public:
  explicit TableSearch(const Layout& l) : l_(l) {
    const std::size_t m = l.size();
    table_.assign(m * m, kNoMorphism);
    for (Mor f = 0; f < m; ++f) {
      set(l.tgt[f], f, f);
      set(f, l.src[f], f);
    }
    for (Mor f = static_cast<Mor>(l.n); f < m; ++f)
      for (Mor g = static_cast<Mor>(l.n); g < m; ++g)
        if (l.tgt[f] == l.src[g]) pairs_.push_back({g, f});
  }

  template <typename Visit>
  void run(Visit&& visit) {
    assign(0, visit);
  }

 private:
  Mor get(Mor g, Mor f) const { return table_[g * l_.size() + f]; }
  void set(Mor g, Mor f, Mor h) { table_[g * l_.size() + f] = h; }

  bool associative() const {
    const auto n = static_cast<Mor>(l_.n);
    const auto m = static_cast<Mor>(l_.size());
    for (Mor f = n; f < m; ++f)
      for (Mor g = n; g < m; ++g) {
        if (l_.tgt[f] != l_.src[g]) continue;
        const Mor gf = get(g, f);
        if (gf == kNoMorphism) continue;
        for (Mor h = n; h < m; ++h) {
          if (l_.tgt[g] != l_.src[h]) continue;
          const Mor hg = get(h, g);
          if (hg == kNoMorphism) continue;
          const Mor left = get(h, gf);
          const Mor right = get(hg, f);
          if (left != kNoMorphism && right != kNoMorphism && left != right) return false;
        }
      }
    return true;
  }

  template <typename Visit>
  void assign(std::size_t i, Visit& visit) {
    if (i == pairs_.size()) {
      visit(table_);
      return;
    }
    const auto [g, f] = pairs_[i];
    for (Mor h = 0; h < l_.size(); ++h) {
      if (l_.src[h] != l_.src[f] || l_.tgt[h] != l_.tgt[g]) continue;
      set(g, f, h);
      if (associative()) assign(i + 1, visit);
    }
    set(g, f, kNoMorphism);
  }

  const Layout& l_;
  std::vector<Mor> table_;
  std::vector<std::pair<Mor, Mor>> pairs_;
};

CatPtr build(const Layout& l, const std::vector<Mor>& table, std::size_t index) {
  RawCategory raw;
  raw.name = "C" + std::to_string(index);
  for (Obj o = 0; o < l.n; ++o) raw.objects.push_back(std::to_string(o));
  for (Mor k = static_cast<Mor>(l.n); k < l.size(); ++k)
    raw.arrows.push_back({"f" + std::to_string(k - l.n), l.src[k], l.tgt[k]});
  for (Mor f = static_cast<Mor>(l.n); f < l.size(); ++f)
    for (Mor g = static_cast<Mor>(l.n); g < l.size(); ++g)
      if (l.tgt[f] == l.src[g]) raw.composites.push_back({g, f, table[g * l.size() + f]});
  return make_cat(validate_category(raw));
}

// Count matrices with the given total, n x n, row-major.
void count_matrices(std::size_t n, std::size_t total, std::vector<std::size_t>& cur, std::size_t pos,
                    std::vector<std::vector<std::size_t>>& out) {
  if (pos == n * n) {
    if (total == 0) out.push_back(cur);
    return;
  }
  for (std::size_t c = 0; c <= total; ++c) {
    cur[pos] = c;
    count_matrices(n, total - c, cur, pos + 1, out);
  }
  cur[pos] = 0;
}

bool minimal_under_permutation(std::size_t n, const std::vector<std::size_t>& counts) {
  std::vector<Obj> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<std::size_t> p(n * n);
    for (Obj s = 0; s < n; ++s)
      for (Obj t = 0; t < n; ++t) p[perm[s] * n + perm[t]] = counts[s * n + t];
    if (p < counts) return false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

}  // namespace

std::vector<CatPtr> enumerate_categories(std::size_t max_objects, std::size_t max_morphisms) {
  std::vector<std::pair<std::vector<std::uint32_t>, CatPtr>> found;
  std::set<std::vector<std::uint32_t>> seen;
  for (std::size_t n = 0; n <= max_objects && n <= max_morphisms; ++n) {
    for (std::size_t k = 0; n + k <= max_morphisms; ++k) {
      if (n == 0 && k > 0) break;
      std::vector<std::vector<std::size_t>> matrices;
      std::vector<std::size_t> cur(n * n, 0);
      count_matrices(n, k, cur, 0, matrices);
      for (const auto& counts : matrices) {
        if (!minimal_under_permutation(n, counts)) continue;
        const Layout l = Layout::from_counts(n, counts);
        TableSearch search(l);
        search.run([&](const std::vector<Mor>& table) {
          const CatPtr c = build(l, table, 0);
          auto code = canonical_form(*c);
          if (seen.insert(code).second) found.emplace_back(std::move(code), c);
        });
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<CatPtr> out;
  for (std::size_t i = 0; i < found.size(); ++i) {
    RawCategory raw = found[i].second->to_raw();
    raw.name = "C" + std::to_string(i);
    out.push_back(make_cat(validate_category(raw)));
  }
  return out;
}

}  // namespace conduche
