#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace erasim {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
//
// One stream per trajectory: the 128-bit counter is laid out as
// (block_lo, block_hi, traj_lo, traj_hi), so streams for distinct
// trajectory indices are disjoint by construction and the draw sequence
// depends only on (master_seed, trajectory_index) - never on which worker
// runs the trajectory or in what order.
namespace philox {

inline constexpr std::uint32_t kMult0 = 0xD2511F53u;
inline constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& ctr, const std::array<std::uint32_t, 2>& key) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

inline std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                          std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        round_once(ctr, key);
    }
    return ctr;
}

}  // namespace philox

class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t trajectory_index)
        : key_{static_cast<std::uint32_t>(master_seed),
               static_cast<std::uint32_t>(master_seed >> 32)},
          traj_lo_(static_cast<std::uint32_t>(trajectory_index)),
          traj_hi_(static_cast<std::uint32_t>(trajectory_index >> 32)) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Uniform in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Marsaglia polar; the spare deviate is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

private:
    void refill() {
        buf_ = philox::block({static_cast<std::uint32_t>(block_),
                              static_cast<std::uint32_t>(block_ >> 32), traj_lo_, traj_hi_},
                             key_);
        ++block_;
        pos_ = 0;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint32_t traj_lo_;
    std::uint32_t traj_hi_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace erasim
