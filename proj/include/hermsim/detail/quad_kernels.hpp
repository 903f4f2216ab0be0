#pragma once

/*
 * Shared k = 1 traversal cores. Each functor transforms one coupled
 * quadruple gathered in row-major block order, f(v, w) with
 * v = (h00, h01, h10, h11); the traversals own the index arithmetic and
 * the mirror bookkeeping of the three layouts.
 */

#include <algorithm>
#include <atomic>

#include "hermsim/bit_index.hpp"
#include "hermsim/kernels.hpp"
#include "hermsim/parallel.hpp"

namespace hermsim::detail {

template <typename F>
void dense_quads(DenseHermitian& h, std::uint32_t a, int threads, F f) {
    const std::uint64_t n_dim = h.dim();
    const std::uint64_t bit = std::uint64_t{1} << a;
    const std::uint64_t n_base = n_dim / 2;
    cplx* arr = h.data();

    parallel_for_ranges(n_base, threads, [&, f](std::uint64_t r0, std::uint64_t r1) {
        cplx v[4], w[4];
        for (std::uint64_t sr = r0; sr < r1; ++sr) {
            const std::uint64_t i0 = insert_bit(sr, 0, a);
            const std::uint64_t i1 = i0 + bit;
            for (std::uint64_t sc = 0; sc < n_base; ++sc) {
                const std::uint64_t j0 = insert_bit(sc, 0, a);
                const std::uint64_t j1 = j0 + bit;
                v[0] = arr[i0 * n_dim + j0];
                v[1] = arr[i0 * n_dim + j1];
                v[2] = arr[i1 * n_dim + j0];
                v[3] = arr[i1 * n_dim + j1];
                f(v, w);
                arr[i0 * n_dim + j0] = w[0];
                arr[i0 * n_dim + j1] = w[1];
                arr[i1 * n_dim + j0] = w[2];
                arr[i1 * n_dim + j1] = w[3];
            }
        }
    });
}

template <typename F>
void packed_quads(PackedHermitian& h, std::uint32_t a, int threads, F f) {
    const std::uint64_t n_dim = h.dim();
    const std::uint64_t bit = std::uint64_t{1} << a;
    const std::uint64_t n_base = n_dim / 2;
    cplx* arr = h.data();

    parallel_for_ranges(n_base, threads, [&, f](std::uint64_t r0, std::uint64_t r1) {
        cplx v[4], w[4];
        for (std::uint64_t sr = r0; sr < r1; ++sr) {
            const std::uint64_t i0 = insert_bit(sr, 0, a);
            const std::uint64_t i1 = i0 + bit;
            for (std::uint64_t sc = 0; sc <= sr; ++sc) {
                const std::uint64_t j0 = insert_bit(sc, 0, a);
                const std::uint64_t j1 = j0 + bit;
                const std::uint64_t rows[2] = {i0, i1};
                const std::uint64_t cols[2] = {j0, j1};
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y) {
                        const std::uint64_t i = rows[x], j = cols[y];
                        v[x * 2 + y] = i >= j ? arr[h.offset(i, j)] : std::conj(arr[h.offset(j, i)]);
                    }
                f(v, w);
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y) {
                        const std::uint64_t i = rows[x], j = cols[y];
                        if (i >= j)
                            arr[h.offset(i, j)] = w[x * 2 + y];
                        else if (sr != sc)
                            arr[h.offset(j, i)] = std::conj(w[x * 2 + y]);
                        // sr == sc: the mirror slot receives its own component
                    }
            }
        }
    });
}

template <typename F>
void tiled_intra_quads(TiledHermitian& h, std::uint32_t a, int threads, F f) {
    const std::uint64_t edge = h.tile_edge();
    const std::uint64_t live = std::min(edge, h.dim());
    const std::uint64_t n_base = live / 2;
    const std::uint64_t bit = std::uint64_t{1} << a;
    cplx* base = h.data();
    const std::uint64_t sq = edge * edge;

    parallel_for_ranges(h.tile_count(), threads, [&, f](std::uint64_t t0, std::uint64_t t1) {
        cplx v[4], w[4];
        for (std::uint64_t t = t0; t < t1; ++t) {
            cplx* tile = base + t * sq;
            for (std::uint64_t i = 0; i < n_base; ++i) {
                const std::uint64_t i0 = insert_bit(i, 0, a);
                const std::uint64_t i1 = i0 + bit;
                for (std::uint64_t j = 0; j < n_base; ++j) {
                    const std::uint64_t j0 = insert_bit(j, 0, a);
                    const std::uint64_t l00 = j0 + i0 * edge;
                    const std::uint64_t l10 = j0 + i1 * edge;
                    const std::uint64_t l01 = l00 + bit;
                    const std::uint64_t l11 = l10 + bit;
                    v[0] = tile[l00];
                    v[1] = tile[l01];
                    v[2] = tile[l10];
                    v[3] = tile[l11];
                    f(v, w);
                    tile[l00] = w[0];
                    tile[l01] = w[1];
                    tile[l10] = w[2];
                    tile[l11] = w[3];
                }
            }
        }
    });
}

template <typename F>
void cross_tile(std::uint64_t edge, cplx* t00, cplx* t01, cplx* t10, cplx* t11, F& f) {
    cplx v[4], w[4];
    for (std::uint64_t p = 0; p < edge * edge; ++p) {
        v[0] = t00[p];
        v[1] = t01[p];
        v[2] = t10[p];
        v[3] = t11[p];
        f(v, w);
        t00[p] = w[0];
        t01[p] = w[1];
        t10[p] = w[2];
        t11[p] = w[3];
    }
}

// t01 is the stored adjoint of the upper-triangle tile: transposed,
// conjugated access on both read and write-back.
template <typename F>
void cross_tile_adj(std::uint64_t edge, cplx* t00, cplx* t01, cplx* t10, cplx* t11, F& f) {
    cplx v[4], w[4];
    for (std::uint64_t i = 0; i < edge; ++i)
        for (std::uint64_t j = 0; j < edge; ++j) {
            v[0] = t00[i * edge + j];
            v[1] = std::conj(t01[j * edge + i]);
            v[2] = t10[i * edge + j];
            v[3] = t11[i * edge + j];
            f(v, w);
            t00[i * edge + j] = w[0];
            t01[j * edge + i] = std::conj(w[1]);
            t10[i * edge + j] = w[2];
            t11[i * edge + j] = w[3];
        }
}

// Diagonal base pair: t10 doubles as the adjoint of the upper tile; only
// the lower wedge is visited and hermitian mirrors are written explicitly.
template <typename F>
void cross_tile_diag(std::uint64_t edge, cplx* t00, cplx* t10, cplx* t11, F& f) {
    cplx v[4], w[4];
    for (std::uint64_t i = 0; i < edge; ++i)
        for (std::uint64_t j = 0; j <= i; ++j) {
            v[0] = t00[i * edge + j];
            v[1] = std::conj(t10[j * edge + i]);
            v[2] = t10[i * edge + j];
            v[3] = t11[i * edge + j];
            f(v, w);
            t00[i * edge + j] = w[0];
            t00[j * edge + i] = std::conj(w[0]);
            t10[i * edge + j] = w[2];
            t10[j * edge + i] = std::conj(w[1]);
            t11[i * edge + j] = w[3];
            t11[j * edge + i] = std::conj(w[3]);
        }
}

template <typename F>
SubcaseCounters tiled_cross_quads(TiledHermitian& h, std::uint32_t a, int threads, F f) {
    const std::uint64_t edge = h.tile_edge();
    const std::uint32_t ap = a - static_cast<std::uint32_t>(h.tile_exp());
    const std::uint64_t tbit = std::uint64_t{1} << ap;
    const std::uint64_t n_base = h.grid_dim() / 2;
    cplx* base = h.data();
    std::atomic<std::uint64_t> count_a{0}, count_b{0}, count_c{0};

    parallel_for_ranges(n_base, threads, [&, f](std::uint64_t r0, std::uint64_t r1) mutable {
        std::uint64_t la = 0, lb = 0, lc = 0;
        for (std::uint64_t ti = r0; ti < r1; ++ti) {
            const std::uint64_t ti0 = insert_bit(ti, 0, ap);
            const std::uint64_t ti1 = ti0 + tbit;
            for (std::uint64_t tj = 0; tj <= ti; ++tj) {
                const std::uint64_t tj0 = insert_bit(tj, 0, ap);
                const std::uint64_t tj1 = tj0 + tbit;
                cplx* t00 = base + tile_offset(ti0, tj0, edge);
                cplx* t10 = base + tile_offset(ti1, tj0, edge);
                cplx* t11 = base + tile_offset(ti1, tj1, edge);
                if (ti0 > tj1) {
                    cplx* t01 = base + tile_offset(ti0, tj1, edge);
                    cross_tile(edge, t00, t01, t10, t11, f);
                    ++la;
                } else if (ti != tj) {
                    cplx* t01 = base + tile_offset(tj1, ti0, edge);
                    cross_tile_adj(edge, t00, t01, t10, t11, f);
                    ++lb;
                } else {
                    cross_tile_diag(edge, t00, t10, t11, f);
                    ++lc;
                }
            }
        }
        count_a += la;
        count_b += lb;
        count_c += lc;
    });
    return {count_a.load(), count_b.load(), count_c.load()};
}

} // namespace hermsim::detail
