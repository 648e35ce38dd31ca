#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "conduche/fincat.hpp"

namespace conduche {

inline constexpr std::size_t kNoElement = std::numeric_limits<std::size_t>::max();

/// A Set-valued two-variable family P(a, b), contravariant in a (from the
/// `source` category) and covariant in b (from the `target` category).
/// Elements are numbered 0..N-1; element e lies in P(a_of[e], b_of[e]).
class Profunctor {
 public:
  const CatPtr& source() const { return source_; }
  const CatPtr& target() const { return target_; }
  std::size_t num_elements() const { return a_of_.size(); }
  Obj a_of(std::size_t e) const { return a_of_[e]; }
  Obj b_of(std::size_t e) const { return b_of_[e]; }
  const std::string& label(std::size_t e) const { return labels_[e]; }
  std::span<const std::size_t> value(Obj a, Obj b) const { return values_[a * target_->num_objects() + b]; }

  // e . k for k: a' -> a in source, where e lies over a.
  std::size_t pull(Mor k, std::size_t e) const { return pull_[k * num_elements() + e]; }
  // k . e for k: b -> b' in target, where e lies over b.
  std::size_t push(Mor k, std::size_t e) const { return push_[k * num_elements() + e]; }

  using Action = std::function<std::size_t(Mor, std::size_t)>;

  /// Tabulates both actions and verifies identity, composition and
  /// interchange laws; throws FunctorialityFailure.
  static Profunctor make(CatPtr source, CatPtr target, std::vector<Obj> a_of, std::vector<Obj> b_of,
                         std::vector<std::string> labels, const Action& pull, const Action& push);

 private:
  CatPtr source_;
  CatPtr target_;
  std::vector<Obj> a_of_;
  std::vector<Obj> b_of_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> values_;
  std::vector<std::size_t> pull_;
  std::vector<std::size_t> push_;
};

// hom^u as a family on E_{src u} x E_{tgt u}. `morphisms[e]` is the arrow
// of E carried by element e.
struct HomProfunctor {
  Profunctor profunctor;
  std::vector<Mor> morphisms;
  FinFunctor source_inclusion;
  FinFunctor target_inclusion;
};

HomProfunctor profunctor_from_hom(const FinFunctor& f, Mor u);

struct RawTerm {
  Obj middle = 0;
  std::size_t p = 0;
  std::size_t q = 0;
};

/// Sum over the middle object of P(a, b) x Q(b, c), before any quotient.
struct RawComposite2 {
  CatPtr source;
  CatPtr target;
  std::vector<std::vector<RawTerm>> cells;  // index a * |target| + c

  std::span<const RawTerm> at(Obj a, Obj c) const { return cells[a * target->num_objects() + c]; }
  std::size_t total() const;
};

RawComposite2 compose_raw(const Profunctor& p, const Profunctor& q);

/// The zig-zag quotient of compose_raw(p, q): (k.p, q) ~ (p, q.k) for every
/// middle morphism k. Elements of `result` are the classes; `element_of`
/// maps a raw pair (p, q) to its class.
struct DiscreteCompletion {
  Profunctor result;
  RawComposite2 raw;
  std::size_t element_of(std::size_t p, std::size_t q) const;

  std::unordered_map<std::uint64_t, std::size_t> pair_class;
};

DiscreteCompletion discrete_completion(const Profunctor& p, const Profunctor& q);

struct AssociativityReport {
  std::size_t triples = 0;
  std::size_t left_classes = 0;   // (P.Q).R
  std::size_t right_classes = 0;  // P.(Q.R)
  bool bijective = false;
};

/// Sends the class of every raw triple (p, q, r) on one side to its class on
/// the other; the bracketings agree when this is a well-defined bijection.
AssociativityReport check_associativity(const Profunctor& p, const Profunctor& q, const Profunctor& r);

}  // namespace conduche
