#pragma once

#include <cstdint>
#include <variant>

#include "hermsim/types.hpp"

namespace hermsim {

/// Full N x N hermitian matrix, row-major (N = 2^n). Conversion hub and
/// reference-oracle representation.
class DenseHermitian {
  public:
    DenseHermitian(int n_qubits, bool zero_init = true);

    int qubits() const { return n_; }
    std::uint64_t dim() const { return dim_; }

    cplx at(std::uint64_t i, std::uint64_t j) const { return a_[i * dim_ + j]; }
    void set(std::uint64_t i, std::uint64_t j, cplx v) { a_[i * dim_ + j] = v; }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }
    std::size_t element_count() const { return a_.size(); }

    /// Replaces the content with (B + B^dagger)/2 of an arbitrary square
    /// buffer, restoring the hermitian invariant.
    void assign_symmetrized(const cplx* raw);

  private:
    int n_;
    std::uint64_t dim_;
    AlignedArray<cplx> a_;
};

/// Column-major packed lower triangle: column j holds h(j,j) .. h(N-1,j),
/// N(N+1)/2 elements total. The memory-optimal baseline layout.
class PackedHermitian {
  public:
    explicit PackedHermitian(int n_qubits);

    int qubits() const { return n_; }
    std::uint64_t dim() const { return dim_; }

    /// Offset of stored element (i, j), requires i >= j.
    std::uint64_t offset(std::uint64_t i, std::uint64_t j) const {
        return j * dim_ - j * (j - 1) / 2 + (i - j);
    }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }
    std::size_t element_count() const { return a_.size(); }

  private:
    int n_;
    std::uint64_t dim_;
    AlignedArray<cplx> a_;
};

/// Lower-triangle tile storage: the matrix is covered by M x M tiles
/// (M = 2^m) and only tiles (t_i, t_j) with t_i >= t_j are kept, in
/// row-major grid order, each tile row-major internally. Diagonal tiles
/// store all M^2 elements. When N < M the single tile is zero-padded.
class TiledHermitian {
  public:
    static constexpr int default_tile_exp = 5;

    TiledHermitian(int n_qubits, int tile_exp = default_tile_exp);

    int qubits() const { return n_; }
    int tile_exp() const { return m_; }
    std::uint64_t dim() const { return dim_; }
    std::uint64_t tile_edge() const { return edge_; }
    /// Tiles per grid row/column.
    std::uint64_t grid_dim() const { return grid_; }
    std::uint64_t tile_count() const { return grid_ * (grid_ + 1) / 2; }

    cplx* tile(std::uint64_t t_i, std::uint64_t t_j) {
        return a_.data() + (t_i * (t_i + 1) / 2 + t_j) * edge_ * edge_;
    }
    const cplx* tile(std::uint64_t t_i, std::uint64_t t_j) const {
        return a_.data() + (t_i * (t_i + 1) / 2 + t_j) * edge_ * edge_;
    }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }
    std::size_t element_count() const { return a_.size(); }

  private:
    int n_;
    int m_;
    std::uint64_t dim_;
    std::uint64_t edge_;
    std::uint64_t grid_;
    AlignedArray<cplx> a_;
};

/// Tagged owner of exactly one representation.
class MatrixHandle {
  public:
    MatrixHandle(DenseHermitian h) : v_(std::move(h)) {}
    MatrixHandle(PackedHermitian h) : v_(std::move(h)) {}
    MatrixHandle(TiledHermitian h) : v_(std::move(h)) {}

    Format format() const { return static_cast<Format>(v_.index()); }
    int qubits() const;
    std::uint64_t dim() const;
    /// Tile exponent; 0 for non-tiled formats.
    int tile_exp() const;

    DenseHermitian& dense() { return std::get<DenseHermitian>(v_); }
    const DenseHermitian& dense() const { return std::get<DenseHermitian>(v_); }
    PackedHermitian& packed() { return std::get<PackedHermitian>(v_); }
    const PackedHermitian& packed() const { return std::get<PackedHermitian>(v_); }
    TiledHermitian& tiled() { return std::get<TiledHermitian>(v_); }
    const TiledHermitian& tiled() const { return std::get<TiledHermitian>(v_); }

    const cplx* payload() const;
    cplx* payload();
    std::size_t payload_count() const;

  private:
    std::variant<DenseHermitian, PackedHermitian, TiledHermitian> v_;
};

/// Logical element (i, j); resolves unstored upper-triangle positions
/// through the conjugate mirror. Correctness/debug path, not a kernel
/// primitive.
cplx get_element(const MatrixHandle& h, std::uint64_t i, std::uint64_t j);

/// Seeded Gaussian hermitian operator H = (A + A^dagger)/2. The same
/// (n, seed) yields the same logical matrix in every format.
MatrixHandle random_hermitian(int n, std::uint64_t seed, Format format,
                              int tile_exp = TiledHermitian::default_tile_exp);

/// Seeded random density matrix G G^dagger / tr(G G^dagger).
MatrixHandle random_density_matrix(int n, std::uint64_t seed, Format format,
                                   int tile_exp = TiledHermitian::default_tile_exp);

/// Projector |b><b| as a matrix handle.
MatrixHandle basis_projector(int n, std::uint64_t basis, Format format,
                             int tile_exp = TiledHermitian::default_tile_exp);

MatrixHandle convert(const MatrixHandle& h, Format target,
                     int tile_exp = TiledHermitian::default_tile_exp);

DenseHermitian to_dense(const MatrixHandle& h);

/// Payload size in bytes of one hermitian operator in the given format.
std::uint64_t footprint_bytes(int n, int tile_exp, Format format);

/// Gaussian value of the underlying i.i.d. complex-normal field; exposed
/// so tests can cross-check the deterministic construction.
cplx gaussian_entry(std::uint64_t seed, std::uint64_t counter);

} // namespace hermsim
