#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace scd {

// Deterministic sampling helpers on top of std::mt19937_64. The distributions
// are hand-rolled because the standard library's distribution objects are
// implementation-defined and would break cross-platform reproducibility.

// Uniform double in [0, 1), 53 bits of entropy.
double uniform01(std::mt19937_64& gen);

// Standard normal deviate (Box-Muller, cosine branch). Consumes two draws.
double normal01(std::mt19937_64& gen);

// Uniform index in [0, n). Requires n > 0.
std::size_t uniform_index(std::mt19937_64& gen, std::size_t n);

// Decorrelates a base seed with a salt (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);

// Stable 64-bit cell seed from benchmark coordinates (FNV-1a over the strings
// and the master seed bytes, then a splitmix64 mix).
std::uint64_t hash_cell(std::string_view dataset, std::string_view cut,
                        std::string_view method, std::uint64_t master_seed);

} // namespace scd
