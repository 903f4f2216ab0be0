#pragma once

#include <cstdint>
#include <span>

#include "hermsim/channel.hpp"
#include "hermsim/storage.hpp"

namespace hermsim {

/// Which update engine an apply() call was routed to.
enum class KernelPath : std::uint8_t {
    dense_generic,
    packed_generic,
    tiled_intra,
    tiled_cross,
    tiled_mixed,
    dense_fallback,
    native_pauli_x,
    native_pauli_y,
    native_phase,
    native_hadamard,
    native_permutation,
};

const char* kernel_path_name(KernelPath p);

/// How often each cross-tile subcase fired (diagnostics; subcase C is the
/// diagonal base-pair branch).
struct SubcaseCounters {
    std::uint64_t cross_tile = 0;
    std::uint64_t cross_tile_adj = 0;
    std::uint64_t cross_tile_diag = 0;

    SubcaseCounters& operator+=(const SubcaseCounters& o) {
        cross_tile += o.cross_tile;
        cross_tile_adj += o.cross_tile_adj;
        cross_tile_diag += o.cross_tile_diag;
        return *this;
    }
};

struct ApplyOptions {
    int threads = 1;
    bool allow_native = true;
};

struct ApplyPlan {
    KernelPath path = KernelPath::dense_generic;
    ActiveQubits targets;
    SubcaseCounters subcases;
};

/// Top-level dispatcher. Targets are in constructor order (controls
/// first); the channel is rebound to the sorted positions internally.
/// k = 3 generic channels on packed/tiled storage run through a dense
/// round trip (the only non-native k = 3 path).
ApplyPlan apply(MatrixHandle& h, const ChannelSpec& spec, std::span<const std::uint32_t> targets,
                const ApplyOptions& opts = {});
ApplyPlan apply(MatrixHandle& h, const ChannelSpec& spec, std::initializer_list<std::uint32_t> targets,
                const ApplyOptions& opts = {});

/// Generic gather-transform-scatter on the full matrix: every 2^k x 2^k
/// coupled block is vectorised, multiplied by S, and written back.
void apply_dense(DenseHermitian& h, const TransferMatrix& s, const ActiveQubits& qubits, int threads = 1);

/// Packed-layout counterpart; resolves mirror elements with a branch in
/// the innermost loop. k <= 2.
void apply_packed(PackedHermitian& h, const TransferMatrix& s, const ActiveQubits& qubits, int threads = 1);

/// Single-qubit update with target a < m: all coupled elements live in
/// one tile; every stored tile is processed independently.
void apply_tiled_intra(TiledHermitian& h, const TransferMatrix& s, std::uint32_t target, int threads = 1);

/// Single-qubit update with target a >= m: each tile base-pair owns up to
/// four tiles, with the fourth accessed directly, through its stored
/// adjoint, or folded into the diagonal case.
SubcaseCounters apply_tiled_cross(TiledHermitian& h, const TransferMatrix& s, std::uint32_t target,
                                  int threads = 1);

/// Two-qubit tiled update covering the intra/cross/mixed regimes.
SubcaseCounters apply_tiled_twoqubit(TiledHermitian& h, const TransferMatrix& s, const ActiveQubits& qubits,
                                     int threads = 1);

} // namespace hermsim
