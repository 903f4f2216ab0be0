/*
 * Conjugation kernels: the generic dense engine, the packed baseline and
 * the tiled intra/cross/mixed engines.
 *
 * Convention: TransferMatrix is defined against column-stacked block
 * vectorisation (v[mu + d*nu] = B(mu,nu)). The tile-level engines gather
 * blocks in row-major order instead, so they run against the row-stacked
 * reindexing of S (swap of the two index digits); both orderings realise
 * the same map sum_a L_a B L_a^dag.
 */

#include "hermsim/kernels.hpp"

#include <array>
#include <atomic>
#include <cassert>
#include <stdexcept>

#include "hermsim/detail/quad_kernels.hpp"
#include "hermsim/native.hpp"
#include "hermsim/parallel.hpp"

namespace hermsim {

namespace {

Mat row_stacked(const TransferMatrix& s) {
    const std::size_t d = std::size_t{1} << s.k;
    const std::size_t dim = d * d;
    Mat out(dim, dim);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t ap = 0; ap < d; ++ap)
            for (std::size_t mu = 0; mu < d; ++mu)
                for (std::size_t nu = 0; nu < d; ++nu)
                    out(a * d + ap, mu * d + nu) = s.s(a + ap * d, mu + nu * d);
    return out;
}

template <std::size_t Dim>
inline void matvec(const cplx* s, const cplx* v, cplx* w) {
    for (std::size_t r = 0; r < Dim; ++r) {
        const cplx* row = s + r * Dim;
        cplx acc = row[0] * v[0];
        for (std::size_t t = 1; t < Dim; ++t)
            acc += row[t] * v[t];
        w[r] = acc;
    }
}

inline void matvec_n(const cplx* s, std::size_t dim, const cplx* v, cplx* w) {
    for (std::size_t r = 0; r < dim; ++r) {
        const cplx* row = s + r * dim;
        cplx acc = row[0] * v[0];
        for (std::size_t t = 1; t < dim; ++t)
            acc += row[t] * v[t];
        w[r] = acc;
    }
}

void check_transfer(const TransferMatrix& s, int k) {
    const std::size_t want = std::size_t{1} << (2 * k);
    if (s.k != k || s.s.rows() != want || s.s.cols() != want)
        throw std::invalid_argument("transfer matrix dimension does not match target count");
}

struct TransferQuad {
    std::array<cplx, 16> s; // row-stacked 4x4
    void operator()(const cplx* v, cplx* w) const { matvec<4>(s.data(), v, w); }
};

TransferQuad make_transfer_quad(const TransferMatrix& s) {
    const Mat r = row_stacked(s);
    TransferQuad q;
    for (std::size_t i = 0; i < 16; ++i)
        q.s[i] = r.data()[i];
    return q;
}

} // namespace

const char* kernel_path_name(KernelPath p) {
    switch (p) {
        case KernelPath::dense_generic: return "dense-generic";
        case KernelPath::packed_generic: return "packed-generic";
        case KernelPath::tiled_intra: return "tiled-intra";
        case KernelPath::tiled_cross: return "tiled-cross";
        case KernelPath::tiled_mixed: return "tiled-mixed";
        case KernelPath::dense_fallback: return "dense-fallback";
        case KernelPath::native_pauli_x: return "native-pauli-x";
        case KernelPath::native_pauli_y: return "native-pauli-y";
        case KernelPath::native_phase: return "native-phase";
        case KernelPath::native_hadamard: return "native-hadamard";
        case KernelPath::native_permutation: return "native-permutation";
    }
    return "?";
}

void apply_dense(DenseHermitian& h, const TransferMatrix& s, const ActiveQubits& qubits, int threads) {
    const int k = qubits.count();
    check_transfer(s, k);
    const std::uint64_t n_dim = h.dim();
    const std::uint64_t d = std::uint64_t{1} << k;
    const std::uint64_t dd = d * d;
    const std::uint64_t n_sub = n_dim >> k;
    const cplx* sm = s.s.data();
    cplx* a = h.data();

    parallel_for_ranges(n_sub, threads, [&](std::uint64_t sr_begin, std::uint64_t sr_end) {
        std::array<std::uint64_t, 8> rows, cols;
        std::array<cplx, 64> v, w;
        for (std::uint64_t sr = sr_begin; sr < sr_end; ++sr) {
            for (std::uint64_t x = 0; x < d; ++x)
                rows[x] = insert_bits(sr, x, qubits);
            for (std::uint64_t sc = 0; sc < n_sub; ++sc) {
                for (std::uint64_t y = 0; y < d; ++y)
                    cols[y] = insert_bits(sc, y, qubits);
                // column-stacked gather: v[x + y*d] = h(rows[x], cols[y])
                for (std::uint64_t y = 0; y < d; ++y)
                    for (std::uint64_t x = 0; x < d; ++x)
                        v[x + y * d] = a[rows[x] * n_dim + cols[y]];
                matvec_n(sm, dd, v.data(), w.data());
                for (std::uint64_t y = 0; y < d; ++y)
                    for (std::uint64_t x = 0; x < d; ++x)
                        a[rows[x] * n_dim + cols[y]] = w[x + y * d];
            }
        }
    });
}

void apply_packed(PackedHermitian& h, const TransferMatrix& s, const ActiveQubits& qubits, int threads) {
    const int k = qubits.count();
    if (k > 2)
        throw std::invalid_argument("apply_packed: k = 3 routes through the dense fallback");
    check_transfer(s, k);
    const std::uint64_t n_dim = h.dim();
    const std::uint64_t d = std::uint64_t{1} << k;
    const std::uint64_t dd = d * d;
    const std::uint64_t n_sub = n_dim >> k;
    const cplx* sm = s.s.data();
    cplx* a = h.data();

    // Unordered block pairs {sr, sc}: a pair owns the stored slots of both
    // mirror blocks, so iterating sc <= sr covers each slot exactly once.
    parallel_for_ranges(n_sub, threads, [&](std::uint64_t sr_begin, std::uint64_t sr_end) {
        std::array<std::uint64_t, 4> rows, cols;
        std::array<cplx, 16> v, w;
        for (std::uint64_t sr = sr_begin; sr < sr_end; ++sr) {
            for (std::uint64_t x = 0; x < d; ++x)
                rows[x] = insert_bits(sr, x, qubits);
            for (std::uint64_t sc = 0; sc <= sr; ++sc) {
                for (std::uint64_t y = 0; y < d; ++y)
                    cols[y] = insert_bits(sc, y, qubits);
                for (std::uint64_t y = 0; y < d; ++y)
                    for (std::uint64_t x = 0; x < d; ++x) {
                        const std::uint64_t i = rows[x];
                        const std::uint64_t j = cols[y];
                        v[x + y * d] = i >= j ? a[h.offset(i, j)] : std::conj(a[h.offset(j, i)]);
                    }
                matvec_n(sm, dd, v.data(), w.data());
                for (std::uint64_t y = 0; y < d; ++y)
                    for (std::uint64_t x = 0; x < d; ++x) {
                        const std::uint64_t i = rows[x];
                        const std::uint64_t j = cols[y];
                        if (i >= j)
                            a[h.offset(i, j)] = w[x + y * d];
                        else if (sr != sc)
                            a[h.offset(j, i)] = std::conj(w[x + y * d]);
                        // sr == sc: hermitian block, the mirror slot gets its
                        // own component
                    }
            }
        }
    });
}

void apply_tiled_intra(TiledHermitian& h, const TransferMatrix& s, std::uint32_t target, int threads) {
    check_transfer(s, 1);
    assert(target < static_cast<std::uint32_t>(h.tile_exp()));
    detail::tiled_intra_quads(h, target, threads, make_transfer_quad(s));
}

SubcaseCounters apply_tiled_cross(TiledHermitian& h, const TransferMatrix& s, std::uint32_t target,
                                  int threads) {
    check_transfer(s, 1);
    assert(target >= static_cast<std::uint32_t>(h.tile_exp()) &&
           target < static_cast<std::uint32_t>(h.qubits()));
    return detail::tiled_cross_quads(h, target, threads, make_transfer_quad(s));
}

namespace {

/*
 * k = 2 tiled engines. Local index bit 0 is the lower target qubit; the
 * 16-component block is gathered row-stacked: v[u*4 + t] with u/t the
 * row/column local indices.
 */

void tiled_two_intra(TiledHermitian& h, const Mat& s_row, const ActiveQubits& qubits, int threads) {
    const std::uint64_t edge = h.tile_edge();
    const std::uint64_t live = std::min(edge, h.dim());
    const std::uint64_t n_base = live / 4;
    cplx* base = h.data();
    const std::uint64_t sq = edge * edge;
    const cplx* sm = s_row.data();

    parallel_for_ranges(h.tile_count(), threads, [&](std::uint64_t t0, std::uint64_t t1) {
        std::array<std::uint64_t, 4> xs, ys;
        cplx v[16], w[16];
        for (std::uint64_t t = t0; t < t1; ++t) {
            cplx* tile = base + t * sq;
            for (std::uint64_t i = 0; i < n_base; ++i) {
                for (std::uint64_t r = 0; r < 4; ++r)
                    xs[r] = insert_bits(i, r, qubits);
                for (std::uint64_t j = 0; j < n_base; ++j) {
                    for (std::uint64_t c = 0; c < 4; ++c)
                        ys[c] = insert_bits(j, c, qubits);
                    for (std::uint64_t r = 0; r < 4; ++r)
                        for (std::uint64_t c = 0; c < 4; ++c)
                            v[r * 4 + c] = tile[xs[r] * edge + ys[c]];
                    matvec<16>(sm, v, w);
                    for (std::uint64_t r = 0; r < 4; ++r)
                        for (std::uint64_t c = 0; c < 4; ++c)
                            tile[xs[r] * edge + ys[c]] = w[r * 4 + c];
                }
            }
        }
    });
}

SubcaseCounters tiled_two_cross(TiledHermitian& h, const Mat& s_row, const ActiveQubits& qubits,
                                int threads) {
    const std::uint64_t edge = h.tile_edge();
    const std::uint32_t m = static_cast<std::uint32_t>(h.tile_exp());
    const ActiveQubits grid_bits({qubits[0] - m, qubits[1] - m});
    const std::uint64_t n_base = h.grid_dim() / 4;
    cplx* base = h.data();
    const cplx* sm = s_row.data();
    std::atomic<std::uint64_t> count_a{0}, count_b{0}, count_c{0};

    parallel_for_ranges(n_base, threads, [&](std::uint64_t r0, std::uint64_t r1) {
        std::array<std::uint64_t, 4> tr, tc;
        std::array<cplx*, 16> ptr;
        std::array<bool, 16> adj;
        cplx v[16], w[16];
        std::uint64_t la = 0, lb = 0, lc = 0;

        for (std::uint64_t tbi = r0; tbi < r1; ++tbi) {
            for (std::uint64_t r = 0; r < 4; ++r)
                tr[r] = insert_bits(tbi, r, grid_bits);
            for (std::uint64_t tbj = 0; tbj <= tbi; ++tbj) {
                for (std::uint64_t c = 0; c < 4; ++c)
                    tc[c] = insert_bits(tbj, c, grid_bits);
                bool any_adj = false;
                for (std::uint64_t r = 0; r < 4; ++r)
                    for (std::uint64_t c = 0; c < 4; ++c) {
                        const std::uint64_t idx = r * 4 + c;
                        if (tr[r] >= tc[c]) {
                            ptr[idx] = base + tile_offset(tr[r], tc[c], edge);
                            adj[idx] = false;
                        } else {
                            ptr[idx] = base + tile_offset(tc[c], tr[r], edge);
                            adj[idx] = true;
                            any_adj = true;
                        }
                    }

                if (tbi != tbj) {
                    for (std::uint64_t x = 0; x < edge; ++x)
                        for (std::uint64_t y = 0; y < edge; ++y) {
                            for (std::uint64_t idx = 0; idx < 16; ++idx)
                                v[idx] = adj[idx] ? std::conj(ptr[idx][y * edge + x]) : ptr[idx][x * edge + y];
                            matvec<16>(sm, v, w);
                            for (std::uint64_t idx = 0; idx < 16; ++idx) {
                                if (adj[idx])
                                    ptr[idx][y * edge + x] = std::conj(w[idx]);
                                else
                                    ptr[idx][x * edge + y] = w[idx];
                            }
                        }
                    any_adj ? ++lb : ++la;
                } else {
                    // Diagonal base: logical tile (r, c) with r < c mirrors
                    // stored (c, r) inside the same 4x4 grid, so visit
                    // y <= x and write hermitian partners explicitly.
                    for (std::uint64_t x = 0; x < edge; ++x)
                        for (std::uint64_t y = 0; y <= x; ++y) {
                            for (std::uint64_t idx = 0; idx < 16; ++idx)
                                v[idx] = adj[idx] ? std::conj(ptr[idx][y * edge + x]) : ptr[idx][x * edge + y];
                            matvec<16>(sm, v, w);
                            for (std::uint64_t r = 0; r < 4; ++r)
                                for (std::uint64_t c = 0; c <= r; ++c) {
                                    cplx* p = ptr[r * 4 + c];
                                    p[x * edge + y] = w[r * 4 + c];
                                    p[y * edge + x] = std::conj(w[c * 4 + r]);
                                }
                        }
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

SubcaseCounters tiled_two_mixed(TiledHermitian& h, const Mat& s_row, const ActiveQubits& qubits,
                                int threads) {
    const std::uint64_t edge = h.tile_edge();
    const std::uint32_t m = static_cast<std::uint32_t>(h.tile_exp());
    const std::uint32_t a_in = qubits[0];   // intra bit (local index bit 0)
    const std::uint32_t ap = qubits[1] - m; // grid bit (local index bit 1)
    const std::uint64_t ibit = std::uint64_t{1} << a_in;
    const std::uint64_t tbit = std::uint64_t{1} << ap;
    const std::uint64_t n_ibase = edge / 2;
    const std::uint64_t n_tbase = h.grid_dim() / 2;
    cplx* base = h.data();
    const cplx* sm = s_row.data();
    std::atomic<std::uint64_t> count_a{0}, count_b{0}, count_c{0};

    // Component index: row local = 2*rt + ri, column local = 2*ct + ci.
    const auto idx = [](std::uint64_t rt, std::uint64_t ri, std::uint64_t ct, std::uint64_t ci) {
        return (2 * rt + ri) * 4 + (2 * ct + ci);
    };

    parallel_for_ranges(n_tbase, threads, [&](std::uint64_t r0, std::uint64_t r1) {
        cplx v[16], w[16];
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

                if (ti == tj) {
                    // t01 is the adjoint of t10, and the base pair owns the
                    // intra-mirror quadruples too: visit j <= i, write
                    // hermitian partners of every component explicitly.
                    for (std::uint64_t i = 0; i < n_ibase; ++i) {
                        const std::uint64_t x0 = insert_bit(i, 0, a_in);
                        const std::uint64_t xs[2] = {x0, x0 + ibit};
                        for (std::uint64_t j = 0; j <= i; ++j) {
                            const std::uint64_t y0 = insert_bit(j, 0, a_in);
                            const std::uint64_t ys[2] = {y0, y0 + ibit};
                            for (std::uint64_t ri = 0; ri < 2; ++ri)
                                for (std::uint64_t ci = 0; ci < 2; ++ci) {
                                    const std::uint64_t off = xs[ri] * edge + ys[ci];
                                    const std::uint64_t off_t = ys[ci] * edge + xs[ri];
                                    v[idx(0, ri, 0, ci)] = t00[off];
                                    v[idx(0, ri, 1, ci)] = std::conj(t10[off_t]);
                                    v[idx(1, ri, 0, ci)] = t10[off];
                                    v[idx(1, ri, 1, ci)] = t11[off];
                                }
                            matvec<16>(sm, v, w);
                            for (std::uint64_t ri = 0; ri < 2; ++ri)
                                for (std::uint64_t ci = 0; ci < 2; ++ci) {
                                    const std::uint64_t off = xs[ri] * edge + ys[ci];
                                    const std::uint64_t off_t = ys[ci] * edge + xs[ri];
                                    t00[off] = w[idx(0, ri, 0, ci)];
                                    t00[off_t] = std::conj(w[idx(0, ci, 0, ri)]);
                                    t11[off] = w[idx(1, ri, 1, ci)];
                                    t11[off_t] = std::conj(w[idx(1, ci, 1, ri)]);
                                    t10[off] = w[idx(1, ri, 0, ci)];
                                    t10[off_t] = std::conj(w[idx(0, ci, 1, ri)]);
                                }
                        }
                    }
                    ++lc;
                    continue;
                }

                cplx* t01;
                bool t01_adj;
                if (ti0 > tj1) {
                    t01 = base + tile_offset(ti0, tj1, edge);
                    t01_adj = false;
                    ++la;
                } else {
                    t01 = base + tile_offset(tj1, ti0, edge);
                    t01_adj = true;
                    ++lb;
                }

                for (std::uint64_t i = 0; i < n_ibase; ++i) {
                    const std::uint64_t x0 = insert_bit(i, 0, a_in);
                    const std::uint64_t xs[2] = {x0, x0 + ibit};
                    for (std::uint64_t j = 0; j < n_ibase; ++j) {
                        const std::uint64_t y0 = insert_bit(j, 0, a_in);
                        const std::uint64_t ys[2] = {y0, y0 + ibit};
                        for (std::uint64_t ri = 0; ri < 2; ++ri)
                            for (std::uint64_t ci = 0; ci < 2; ++ci) {
                                const std::uint64_t off = xs[ri] * edge + ys[ci];
                                const std::uint64_t off_t = ys[ci] * edge + xs[ri];
                                v[idx(0, ri, 0, ci)] = t00[off];
                                v[idx(0, ri, 1, ci)] = t01_adj ? std::conj(t01[off_t]) : t01[off];
                                v[idx(1, ri, 0, ci)] = t10[off];
                                v[idx(1, ri, 1, ci)] = t11[off];
                            }
                        matvec<16>(sm, v, w);
                        for (std::uint64_t ri = 0; ri < 2; ++ri)
                            for (std::uint64_t ci = 0; ci < 2; ++ci) {
                                const std::uint64_t off = xs[ri] * edge + ys[ci];
                                const std::uint64_t off_t = ys[ci] * edge + xs[ri];
                                t00[off] = w[idx(0, ri, 0, ci)];
                                if (t01_adj)
                                    t01[off_t] = std::conj(w[idx(0, ri, 1, ci)]);
                                else
                                    t01[off] = w[idx(0, ri, 1, ci)];
                                t10[off] = w[idx(1, ri, 0, ci)];
                                t11[off] = w[idx(1, ri, 1, ci)];
                            }
                    }
                }
            }
        }
        count_a += la;
        count_b += lb;
        count_c += lc;
    });
    return {count_a.load(), count_b.load(), count_c.load()};
}

} // namespace

SubcaseCounters apply_tiled_twoqubit(TiledHermitian& h, const TransferMatrix& s, const ActiveQubits& qubits,
                                     int threads) {
    if (qubits.count() != 2)
        throw std::invalid_argument("apply_tiled_twoqubit: needs exactly two targets");
    check_transfer(s, 2);
    const std::uint32_t m = static_cast<std::uint32_t>(h.tile_exp());
    const Mat s_row = row_stacked(s);
    if (qubits[1] < m) {
        tiled_two_intra(h, s_row, qubits, threads);
        return {};
    }
    if (qubits[0] >= m)
        return tiled_two_cross(h, s_row, qubits, threads);
    return tiled_two_mixed(h, s_row, qubits, threads);
}

namespace {

void validate_targets(const MatrixHandle& h, const ChannelSpec& spec, std::span<const std::uint32_t> targets) {
    const int n = h.qubits();
    if (static_cast<int>(targets.size()) != spec.locality())
        throw std::invalid_argument("apply: target count does not match channel locality");
    for (std::uint32_t q : targets)
        if (q >= static_cast<std::uint32_t>(n))
            throw std::out_of_range("apply: target qubit out of range");
}

ApplyPlan apply_generic(MatrixHandle& h, const BoundChannel& bc, const ApplyOptions& opts) {
    ApplyPlan plan;
    plan.targets = bc.qubits;
    const int k = bc.qubits.count();

    switch (h.format()) {
        case Format::dense:
            apply_dense(h.dense(), bc.transfer, bc.qubits, opts.threads);
            plan.path = KernelPath::dense_generic;
            return plan;
        case Format::packed:
            if (k <= 2) {
                apply_packed(h.packed(), bc.transfer, bc.qubits, opts.threads);
                plan.path = KernelPath::packed_generic;
                return plan;
            }
            break;
        case Format::tiled: {
            TiledHermitian& t = h.tiled();
            const std::uint32_t m = static_cast<std::uint32_t>(t.tile_exp());
            if (k == 1) {
                if (bc.qubits[0] < m) {
                    apply_tiled_intra(t, bc.transfer, bc.qubits[0], opts.threads);
                    plan.path = KernelPath::tiled_intra;
                } else {
                    plan.subcases = apply_tiled_cross(t, bc.transfer, bc.qubits[0], opts.threads);
                    plan.path = KernelPath::tiled_cross;
                }
                return plan;
            }
            if (k == 2) {
                plan.subcases = apply_tiled_twoqubit(t, bc.transfer, bc.qubits, opts.threads);
                plan.path = bc.qubits[1] < m    ? KernelPath::tiled_intra
                            : bc.qubits[0] >= m ? KernelPath::tiled_cross
                                                : KernelPath::tiled_mixed;
                return plan;
            }
            break;
        }
    }

    // k = 3 generic on a triangular layout: dense round trip.
    const Format fmt = h.format();
    const int m = h.tile_exp();
    DenseHermitian d = to_dense(h);
    apply_dense(d, bc.transfer, bc.qubits, opts.threads);
    h = convert(MatrixHandle(std::move(d)), fmt, m);
    plan.path = KernelPath::dense_fallback;
    return plan;
}

} // namespace

ApplyPlan apply(MatrixHandle& h, const ChannelSpec& spec, std::span<const std::uint32_t> targets,
                const ApplyOptions& opts) {
    validate_targets(h, spec, targets);
    const BoundChannel bc = bind_channel(spec, targets);

    if (opts.allow_native) {
        ApplyPlan plan;
        plan.targets = bc.qubits;
        switch (spec.kind) {
            case GateKind::pauli_x:
                apply_pauli_x(h, bc.qubits[0], opts.threads);
                plan.path = KernelPath::native_pauli_x;
                return plan;
            case GateKind::pauli_y:
                apply_pauli_y(h, bc.qubits[0], opts.threads);
                plan.path = KernelPath::native_pauli_y;
                return plan;
            case GateKind::diagonal_phase:
                apply_diagonal_phase(h, bc.qubits[0], bc.phases, opts.threads);
                plan.path = KernelPath::native_phase;
                return plan;
            case GateKind::hadamard:
                apply_hadamard(h, bc.qubits[0], opts.threads);
                plan.path = KernelPath::native_hadamard;
                return plan;
            case GateKind::permutation:
                apply_permutation(h, PermutationGate{bc.kraus.k, bc.perm}, bc.qubits, opts.threads);
                plan.path = KernelPath::native_permutation;
                return plan;
            case GateKind::generic_kraus:
                break;
        }
    }
    return apply_generic(h, bc, opts);
}

ApplyPlan apply(MatrixHandle& h, const ChannelSpec& spec, std::initializer_list<std::uint32_t> targets,
                const ApplyOptions& opts) {
    return apply(h, spec, std::span<const std::uint32_t>(targets.begin(), targets.size()), opts);
}

} // namespace hermsim
