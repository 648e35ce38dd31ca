#pragma once

#include <cstddef>
#include <vector>

#include "conduche/coend.hpp"
#include "conduche/fincat.hpp"

namespace conduche {

enum class Verdict { Exponentiable, NotExponentiable };
enum class FailureKind { NonSurjective, NonInjective };

const char* to_string(Verdict v);
const char* to_string(FailureKind k);

/// One failing (u, v, x, z) instance with minimal evidence: a target arrow
/// with empty preimage, or two generators in distinct classes with equal
/// composite.
struct Witness {
  Mor u = 0;
  Mor v = 0;
  Obj x = 0;
  Obj z = 0;
  FailureKind kind = FailureKind::NonSurjective;
  Mor composite = kNoMorphism;  // the missing arrow, or the shared composite
  CoendGenerator first{};
  CoendGenerator second{};

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct CertificateStats {
  std::size_t composable_pairs = 0;
  std::size_t instances = 0;
  std::size_t generators = 0;
};

struct Certificate {
  Verdict verdict = Verdict::Exponentiable;
  std::vector<Witness> witnesses;
  CertificateStats stats;

  bool accepted() const { return verdict == Verdict::Exponentiable; }
};

struct CheckOptions {
  bool fail_fast = false;
};

}  // namespace conduche
