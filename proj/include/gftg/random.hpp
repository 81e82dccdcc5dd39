#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gftg {

/// One stream per chain; never shared across threads.
using Rng = std::mt19937_64;

inline constexpr std::string_view rng_algorithm = "mt19937_64+std::normal_distribution";

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

} // namespace gftg
