#ifndef ICMLAB_RNG_HPP
#define ICMLAB_RNG_HPP

#include <bit>
#include <cstdint>

namespace icmlab::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2)));
}

// Deterministic stream derivation: fold any number of integer tags into a seed.
template <class... Ts>
std::uint64_t derive(std::uint64_t seed, Ts... tags) {
    ((seed = mix(seed, static_cast<std::uint64_t>(tags))), ...);
    return seed;
}

inline std::uint64_t hash_double(double x) {
    return splitmix64(std::bit_cast<std::uint64_t>(x));
}

inline double to_unit(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;  // [0,1)
}

// Counter-based engine: state advances by a fixed stride, output is the
// splitmix64 finalizer. Satisfies UniformRandomBitGenerator.
class Engine {
public:
    using result_type = std::uint64_t;
    explicit Engine(std::uint64_t seed) : state_(seed) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ull; }
    result_type operator()() { return splitmix64(state_ += 0x9e3779b97f4a7c15ull); }

private:
    std::uint64_t state_;
};

inline double uniform_real(Engine& eng) { return to_unit(eng()); }

// Unbiased integer in [0, bound) via rejection.
inline std::uint64_t uniform_index(Engine& eng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~0ull - (~0ull % bound + 1) % bound;
    std::uint64_t x;
    do {
        x = eng();
    } while (x > limit);
    return x % bound;
}

template <class T>
void shuffle(Engine& eng, T* data, std::size_t n) {
    for (std::size_t i = n; i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(uniform_index(eng, i));
        T tmp = data[i - 1];
        data[i - 1] = data[j];
        data[j] = tmp;
    }
}

}  // namespace icmlab::rng

#endif
