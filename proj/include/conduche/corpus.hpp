#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "conduche/fincat.hpp"

namespace conduche {

struct CorpusBounds {
  std::size_t max_objects = 5;
  std::size_t max_morphisms = 15;
};

enum class CorpusFamily { Poset, Monoid, Paths };
const char* to_string(CorpusFamily family);

struct CorpusInstance {
  FinFunctor functor;  // E -> B, names E<i>, B<i>, f<i>
  CorpusFamily source_family = CorpusFamily::Poset;
  CorpusFamily target_family = CorpusFamily::Poset;
};

/// `count` functors between random categories within `bounds`. The same
/// seed always yields the same list.
std::vector<CorpusInstance> generate_corpus(std::uint64_t seed, CorpusBounds bounds, std::size_t count);

// Single draws, exposed for tests. Return nullptr when the sample does not
// fit the bounds.
CatPtr random_poset(std::mt19937_64& rng, CorpusBounds bounds, std::string name);
CatPtr random_monoid(std::mt19937_64& rng, CorpusBounds bounds, std::string name);
CatPtr random_path_category(std::mt19937_64& rng, CorpusBounds bounds, std::string name);

// Randomized backtracking; nullopt if no functor turns up within the budget.
std::optional<FinFunctor> random_functor(std::mt19937_64& rng, const CatPtr& source, const CatPtr& target,
                                         std::string name, std::uint64_t budget = 20'000);

}  // namespace conduche
