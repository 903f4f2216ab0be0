#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <span>

namespace hermsim {

/// Sorted set of the qubit positions an operation acts on (1 <= k <= 3).
class ActiveQubits {
  public:
    ActiveQubits() = default;

    ActiveQubits(std::initializer_list<std::uint32_t> positions)
        : ActiveQubits(std::span<const std::uint32_t>(positions.begin(), positions.size())) {}

    explicit ActiveQubits(std::span<const std::uint32_t> positions) {
        assert(positions.size() >= 1 && positions.size() <= 3);
        k_ = static_cast<int>(positions.size());
        for (int i = 0; i < k_; ++i)
            pos_[i] = positions[i];
        for (int i = 1; i < k_; ++i)
            assert(pos_[i - 1] < pos_[i]);
    }

    int count() const { return k_; }
    std::uint32_t operator[](int i) const { return pos_[i]; }
    std::span<const std::uint32_t> positions() const { return {pos_.data(), static_cast<std::size_t>(k_)}; }

  private:
    std::array<std::uint32_t, 3> pos_{};
    int k_ = 0;
};

/// Splices the k bits of `a` into `s` at the ascending positions `A`:
/// the result's bit A[l] is bit l of `a`, the remaining bits are the bits
/// of `s` in order. For fixed A this maps (s, a) bijectively onto
/// [0, 2^n) when s < 2^(n-k) and a < 2^k.
inline std::uint64_t insert_bits(std::uint64_t s, std::uint64_t a, const ActiveQubits& A) {
    std::uint64_t global = s;
    for (int l = 0; l < A.count(); ++l) {
        const std::uint32_t pos = A[l];
        const std::uint64_t right = ((std::uint64_t{1} << pos) - 1) & global;
        std::uint64_t left = (global >> pos) << 1;
        left |= (a >> l) & 1;
        left <<= pos;
        global = left | right;
    }
    return global;
}

/// Single-position variant used by the tiled kernels.
inline std::uint64_t insert_bit(std::uint64_t s, std::uint64_t bit, std::uint32_t pos) {
    const std::uint64_t right = ((std::uint64_t{1} << pos) - 1) & s;
    std::uint64_t left = (s >> pos) << 1;
    left |= bit & 1;
    left <<= pos;
    return left | right;
}

/// Exact inverse of insert_bits: recovers (s, a) from a global index.
inline std::pair<std::uint64_t, std::uint64_t> extract_bits(std::uint64_t g, const ActiveQubits& A) {
    std::uint64_t a = 0;
    for (int l = 0; l < A.count(); ++l)
        a |= ((g >> A[l]) & 1) << l;
    // Delete the active bits, high position first so lower ones stay put.
    std::uint64_t s = g;
    for (int l = A.count() - 1; l >= 0; --l) {
        const std::uint32_t pos = A[l];
        const std::uint64_t low = s & ((std::uint64_t{1} << pos) - 1);
        const std::uint64_t high = (s >> (pos + 1)) << pos;
        s = high | low;
    }
    return {s, a};
}

/// Element offset of tile (t_i, t_j), t_i >= t_j, in the tiled layout:
/// (t_i (t_i + 1) / 2 + t_j) * M^2.
inline std::uint64_t tile_offset(std::uint64_t t_i, std::uint64_t t_j, std::uint64_t M) {
    assert(t_i >= t_j);
    return (t_i * (t_i + 1) / 2 + t_j) * M * M;
}

} // namespace hermsim
