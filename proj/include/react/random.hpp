#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace react {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A stream is
// identified by (seed, stream_id); the same pair always produces the same
// sequence regardless of which thread consumes it or in what order, which is
// what keeps parallel Monte Carlo runs bit-identical to serial ones.
class Philox {
public:
    using result_type = std::uint64_t;

    Philox(std::uint64_t seed, std::uint64_t stream_id) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          counter_{0, 0, static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)} {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        if (index_ == 2) {
            refill();
            index_ = 0;
        }
        const auto lo = static_cast<std::uint64_t>(block_[2 * index_]);
        const auto hi = static_cast<std::uint64_t>(block_[2 * index_ + 1]);
        ++index_;
        return lo | (hi << 32);
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    void refill() noexcept {
        block_ = bijection(counter_, key_);
        // The low 64 bits of the counter advance; the high half holds the stream id.
        if (++counter_[0] == 0) ++counter_[1];
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> block_{};
    int index_ = 2;

public:
    // The keyed 10-round bijection; exposed for known-answer tests.
    static std::array<std::uint32_t, 4> bijection(std::array<std::uint32_t, 4> x,
                                                  std::array<std::uint32_t, 2> k) noexcept {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x[2];
            x = {static_cast<std::uint32_t>(p1 >> 32) ^ x[1] ^ k[0], static_cast<std::uint32_t>(p1),
                 static_cast<std::uint32_t>(p0 >> 32) ^ x[3] ^ k[1], static_cast<std::uint32_t>(p0)};
            k[0] += kWeyl0;
            k[1] += kWeyl1;
        }
        return x;
    }
};

}  // namespace react
