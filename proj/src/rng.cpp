#include "scd/rng.hpp"

#include <cmath>

#include "scd/errors.hpp"

namespace scd {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double normal01(std::mt19937_64& gen) {
    double u1 = 1.0 - uniform01(gen); // (0, 1], keeps the log finite
    double u2 = uniform01(gen);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

std::size_t uniform_index(std::mt19937_64& gen, std::size_t n) {
    if (n == 0) throw InvalidInputError("uniform_index: n must be positive");
    return static_cast<std::size_t>(gen() % n);
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
    return splitmix64(base ^ splitmix64(salt));
}

std::uint64_t hash_cell(std::string_view dataset, std::string_view cut,
                        std::string_view method, std::uint64_t master_seed) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = fnv1a(h, dataset.data(), dataset.size());
    h = fnv1a(h, "|", 1);
    h = fnv1a(h, cut.data(), cut.size());
    h = fnv1a(h, "|", 1);
    h = fnv1a(h, method.data(), method.size());
    h = fnv1a(h, "|", 1);
    unsigned char seed_bytes[8];
    for (int i = 0; i < 8; ++i)
        seed_bytes[i] = static_cast<unsigned char>((master_seed >> (8 * i)) & 0xff);
    h = fnv1a(h, seed_bytes, 8);
    return splitmix64(h);
}

} // namespace scd
