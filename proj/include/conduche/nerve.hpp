#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "conduche/fincat.hpp"

namespace conduche {

using Cell = std::uint32_t;
inline constexpr Cell kNoCell = kNoMorphism;
inline constexpr int kSSetTop = 3;

/// A simplicial set truncated at level 3, as explicit tables.
/// faces[k][i][c] is d_i of the k-cell c (k >= 1); degeneracies[k][i][c] is
/// s_i of the k-cell c (k <= 2).
struct TruncSSet {
  std::string name;
  std::array<std::vector<std::string>, kSSetTop + 1> cells;
  std::array<std::vector<std::vector<Cell>>, kSSetTop + 1> faces;
  std::array<std::vector<std::vector<Cell>>, kSSetTop> degeneracies;

  std::size_t size(int level) const { return cells[level].size(); }
  Cell face(int level, int i, Cell c) const { return faces[level][i][c]; }
  Cell degeneracy(int level, int i, Cell c) const { return degeneracies[level][i][c]; }
  Cell find(int level, const std::string& name) const;
  // In the image of some degeneracy.
  bool is_degenerate(int level, Cell c) const;
};

// A face written as a nondegenerate cell with degeneracies applied, innermost
// first: s1(s0(x)) is {"x", {0, 1}}.
struct CellExpr {
  std::string base;
  std::vector<int> degeneracies;
};

struct RawCell {
  std::string name;
  std::vector<CellExpr> faces;  // d_0 .. d_k
};

// Nondegenerate cells per level; degenerate cells are generated.
struct RawSSet {
  std::string name;
  std::array<std::vector<RawCell>, kSSetTop + 1> levels;
};

// Throws SimplicialIdentity or UnresolvedName.
TruncSSet build_sset(const RawSSet& raw);
void validate_sset(const TruncSSet& s);

// Level k = chains of k composable morphisms.
TruncSSet nerve_trunc(const FinCat& c);

// Levelwise maps of cells.
struct SimplicialMap {
  std::array<std::vector<Cell>, kSSetTop + 1> levels;
  friend bool operator==(const SimplicialMap&, const SimplicialMap&) = default;
};

SimplicialMap nerve_map(const FinFunctor& f, const TruncSSet& source, const TruncSSet& target);
SimplicialMap compose_maps(const SimplicialMap& g, const SimplicialMap& f);

enum class SegalFailure { MissingFiller, DuplicateFiller, MissingSpineFiller, DuplicateSpineFiller };
const char* to_string(SegalFailure k);

struct SegalViolation {
  SegalFailure kind;
  std::vector<Cell> spine;    // edges of the horn or spine
  std::vector<Cell> fillers;  // empty when missing
  Cell base = kNoCell;        // 2-cell of the base (lifting checks only)
};

struct SegalReport {
  std::size_t horns = 0;
  std::size_t spines = 0;
  std::vector<SegalViolation> violations;
  bool passes() const { return violations.empty(); }
};

// Every inner horn has exactly one filler, and 3-cells are determined by
// their spines.
SegalReport segal_check(const TruncSSet& s);

// Unique fillers for inner horns of `source` against 2-cells of `target`
// under p.
SegalReport inner_lift_check(const TruncSSet& source, const TruncSSet& target, const SimplicialMap& p);
SegalReport inner_lift_check(const FinFunctor& f);

}  // namespace conduche
