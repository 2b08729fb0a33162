#pragma once

#include "e2ev/bigint.hpp"

#include <memory>
#include <random>

namespace e2ev {

/**
 * Source of randomness for every key, nonce, and simulation draw. Injected
 * everywhere so tests and simulations can replay exact byte streams.
 */
class RandomSource {
public:
    virtual ~RandomSource() = default;

    virtual void fill(uint8_t* out, size_t len) = 0;

    /** Uniform value in [0, n). Rejection sampled, no modulo bias. */
    virtual Bigint uniform_below(const Bigint& n);

    /** Uniform nonzero scalar in [1, q-1]. */
    virtual Bigint uniform_scalar(const Bigint& q);

    Bytes bytes(size_t len);
    uint64_t u64();
    uint64_t below(uint64_t n);
    bool bernoulli(double p);
};

/**
 * Deterministic stream: mt19937_64 words serialized big endian. The mapping
 * from seed to byte stream is pinned by tests; identical seeds give identical
 * elections byte for byte.
 */
class DeterministicRng : public RandomSource {
public:
    explicit DeterministicRng(uint64_t seed);
    void fill(uint8_t* out, size_t len) override;

private:
    std::mt19937_64 gen_;
    uint64_t buf_ = 0;
    int avail_ = 0;
};

/** OS randomness for real key material. */
class SystemRng : public RandomSource {
public:
    void fill(uint8_t* out, size_t len) override;
};

/** Independent per-trial seed: hash of master seed, trial index, and a stream tag. */
uint64_t derive_seed(uint64_t master, uint64_t index, const std::string& tag);

}  // namespace e2ev
