#pragma once

#include <cstddef>
#include <vector>

#include "conduche/fincat.hpp"

namespace conduche {

/// Every finite category with at most `max_objects` objects and
/// `max_morphisms` morphisms (identities included), one per isomorphism
/// class, in a fixed order: by object count, then hom-set sizes, then
/// composition table. Objects are named 0, 1, ...; arrows f0, f1, ...
std::vector<CatPtr> enumerate_categories(std::size_t max_objects, std::size_t max_morphisms);

// Canonical table encoding; equal iff the categories are isomorphic.
std::vector<std::uint32_t> canonical_form(const FinCat& c);

}  // namespace conduche
