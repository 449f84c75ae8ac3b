#pragma once

#include <cstdint>
#include <limits>

namespace glicci {

/// Counter-based splittable generator. The stream is a pure function of
/// (key, counter), so a child stream derived with `split(i)` never depends on
/// how many values the parent has produced. Every random choice in the
/// library is drawn from one of these, rooted at a user-visible 64-bit seed.
class SeededStream {
public:
    using result_type = std::uint64_t;

    explicit SeededStream(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)), seed_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return next(); }

    std::uint64_t next() {
        ++counter_;
        return mix(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform value in [0, bound) by rejection; bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    /// Independent child stream; depends only on this stream's key and `index`.
    SeededStream split(std::uint64_t index) const {
        SeededStream child(0);
        child.key_ = mix(key_ ^ mix(index + 0x632be59bd9b4e019ULL));
        child.seed_ = seed_;
        return child;
    }

    std::uint64_t seed() const { return seed_; }

private:
    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::uint64_t seed_;
};

}  // namespace glicci
