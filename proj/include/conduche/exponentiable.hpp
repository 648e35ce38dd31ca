#pragma once

#include "conduche/certificate.hpp"

namespace conduche {

/// Decides exponentiability of f by the coend criterion: for every
/// composable (u, v) in B and every x over src(u), z over tgt(v), the
/// comparison from the coend over the middle fiber into hom^{v.u}(x, z) must
/// be a bijection. All pairs are checked; witnesses come out in
/// (u, v, x, z) declaration order.
Certificate check_exponentiable(const FinFunctor& f, const CheckOptions& options = {});

// Replays a witness through coend_compose; true iff the failure reproduces.
bool recheck_witness(const FinFunctor& f, const Witness& w);

// Witnesses for a single coend instance, in the order used by certificates.
std::vector<Witness> witnesses_of(const CoendResult& r);

}  // namespace conduche
