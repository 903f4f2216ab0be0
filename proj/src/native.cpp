/*
 * Specialised conjugation paths for native gates. Pauli swaps and
 * permutations move or conjugate matrix data without a single
 * multiplication on it; phase gates scale only the elements whose target
 * bits differ; Hadamard runs the direct real 2x2 block conjugation
 * through the shared quadruple traversals.
 */

#include "hermsim/native.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hermsim/detail/quad_kernels.hpp"
#include "hermsim/parallel.hpp"

namespace hermsim {

namespace {

void check_target(const MatrixHandle& h, std::uint32_t a) {
    if (a >= static_cast<std::uint32_t>(h.qubits()))
        throw std::out_of_range("native path: target qubit out of range");
}

/*
 * Pauli X / Y. sign = -1 selects the Y variant: elements whose two
 * target bits differ are negated along with the swap.
 */

template <int Sign>
void pauli_dense(DenseHermitian& h, std::uint32_t a, int threads) {
    const std::uint64_t n_dim = h.dim();
    const std::uint64_t bit = std::uint64_t{1} << a;
    cplx* arr = h.data();
    parallel_for_ranges(n_dim / 2, threads, [&](std::uint64_t r0, std::uint64_t r1) {
        for (std::uint64_t sr = r0; sr < r1; ++sr) {
            const std::uint64_t i0 = insert_bit(sr, 0, a);
            cplx* row0 = arr + i0 * n_dim;
            cplx* row1 = arr + (i0 + bit) * n_dim;
            for (std::uint64_t j = 0; j < n_dim; ++j) {
                const std::uint64_t jx = j ^ bit;
                cplx tmp = row0[j];
                if constexpr (Sign < 0) {
                    // bits of (i0, j) differ iff bit_a(j) is set
                    if (j & bit) {
                        row0[j] = -row1[jx];
                        row1[jx] = -tmp;
                        continue;
                    }
                }
                row0[j] = row1[jx];
                row1[jx] = tmp;
            }
        }
    });
}

template <int Sign>
void pauli_packed(PackedHermitian& h, std::uint32_t a, int threads) {
    const std::uint64_t n_dim = h.dim();
    const std::uint64_t bit = std::uint64_t{1} << a;
    cplx* arr = h.data();
    // Stored-slot pairs under (i,j) -> (i^bit, j^bit) with mirror
    // canonicalisation; the smaller offset owns the exchange.
    parallel_for_ranges(n_dim, threads, [&](std::uint64_t r0, std::uint64_t r1) {
        for (std::uint64_t i = r0; i < r1; ++i)
            for (std::uint64_t j = 0; j <= i; ++j) {
                std::uint64_t p = i ^ bit;
                std::uint64_t q = j ^ bit;
                bool mirrored = false;
                if (p < q) {
                    std::swap(p, q);
                    mirrored = true;
                }
                const std::uint64_t own = h.offset(i, j);
                const std::uint64_t other = h.offset(p, q);
                const bool negate = Sign < 0 && ((i ^ j) & bit);
                if (other == own) {
                    // self pair: j^bit == i, always a mirrored move
                    cplx val = std::conj(arr[own]);
                    arr[own] = negate ? -val : val;
                } else if (other > own) {
                    cplx x = arr[own];
                    cplx y = arr[other];
                    if (mirrored) {
                        x = std::conj(x);
                        y = std::conj(y);
                    }
                    arr[own] = negate ? -y : y;
                    arr[other] = negate ? -x : x;
                }
            }
    });
}

template <int Sign>
void pauli_tiled_intra(TiledHermitian& h, std::uint32_t a, int threads) {
    const std::uint64_t edge = h.tile_edge();
    const std::uint64_t live = std::min(edge, h.dim());
    const std::uint64_t bit = std::uint64_t{1} << a;
    cplx* base = h.data();
    const std::uint64_t sq = edge * edge;
    parallel_for_ranges(h.tile_count(), threads, [&](std::uint64_t t0, std::uint64_t t1) {
        for (std::uint64_t t = t0; t < t1; ++t) {
            cplx* tile = base + t * sq;
            for (std::uint64_t rb = 0; rb < live / 2; ++rb) {
                const std::uint64_t r0 = insert_bit(rb, 0, a);
                cplx* row0 = tile + r0 * edge;
                cplx* row1 = tile + (r0 + bit) * edge;
                for (std::uint64_t c = 0; c < live; ++c) {
                    const std::uint64_t cx = c ^ bit;
                    cplx tmp = row0[c];
                    if constexpr (Sign < 0) {
                        if (c & bit) {
                            row0[c] = -row1[cx];
                            row1[cx] = -tmp;
                            continue;
                        }
                    }
                    row0[c] = row1[cx];
                    row1[cx] = tmp;
                }
            }
        }
    });
}

template <int Sign>
void swap_tiles_flat(cplx* s, cplx* t, std::uint64_t count) {
    for (std::uint64_t p = 0; p < count; ++p) {
        const cplx tmp = s[p];
        if constexpr (Sign < 0) {
            s[p] = -t[p];
            t[p] = -tmp;
        } else {
            s[p] = t[p];
            t[p] = tmp;
        }
    }
}

template <int Sign>
void pauli_tiled_cross(TiledHermitian& h, std::uint32_t a, int threads) {
    const std::uint64_t edge = h.tile_edge();
    const std::uint32_t ap = a - static_cast<std::uint32_t>(h.tile_exp());
    const std::uint64_t tbit = std::uint64_t{1} << ap;
    const std::uint64_t n_base = h.grid_dim() / 2;
    cplx* base = h.data();
    const std::uint64_t sq = edge * edge;

    parallel_for_ranges(n_base, threads, [&](std::uint64_t r0, std::uint64_t r1) {
        for (std::uint64_t ti = r0; ti < r1; ++ti) {
            const std::uint64_t ti0 = insert_bit(ti, 0, ap);
            const std::uint64_t ti1 = ti0 + tbit;
            for (std::uint64_t tj = 0; tj <= ti; ++tj) {
                const std::uint64_t tj0 = insert_bit(tj, 0, ap);
                const std::uint64_t tj1 = tj0 + tbit;
                cplx* t00 = base + tile_offset(ti0, tj0, edge);
                cplx* t10 = base + tile_offset(ti1, tj0, edge);
                cplx* t11 = base + tile_offset(ti1, tj1, edge);
                // equal target bits: plain content exchange
                swap_tiles_flat<1>(t00, t11, sq);

                if (ti0 > tj1) {
                    cplx* t01 = base + tile_offset(ti0, tj1, edge);
                    swap_tiles_flat<Sign>(t01, t10, sq);
                } else if (ti != tj) {
                    cplx* adj = base + tile_offset(tj1, ti0, edge);
                    for (std::uint64_t i = 0; i < edge; ++i)
                        for (std::uint64_t j = 0; j < edge; ++j) {
                            const cplx tmp = t10[i * edge + j];
                            if constexpr (Sign < 0) {
                                t10[i * edge + j] = -std::conj(adj[j * edge + i]);
                                adj[j * edge + i] = -std::conj(tmp);
                            } else {
                                t10[i * edge + j] = std::conj(adj[j * edge + i]);
                                adj[j * edge + i] = std::conj(tmp);
                            }
                        }
                } else {
                    // t10 exchanges with its own adjoint in place
                    for (std::uint64_t i = 0; i < edge; ++i) {
                        for (std::uint64_t j = 0; j < i; ++j) {
                            const cplx tmp = t10[i * edge + j];
                            if constexpr (Sign < 0) {
                                t10[i * edge + j] = -std::conj(t10[j * edge + i]);
                                t10[j * edge + i] = -std::conj(tmp);
                            } else {
                                t10[i * edge + j] = std::conj(t10[j * edge + i]);
                                t10[j * edge + i] = std::conj(tmp);
                            }
                        }
                        const cplx d = std::conj(t10[i * edge + i]);
                        t10[i * edge + i] = Sign < 0 ? -d : d;
                    }
                }
            }
        }
    });
}

template <int Sign>
void pauli_any(MatrixHandle& h, std::uint32_t a, int threads) {
    check_target(h, a);
    switch (h.format()) {
        case Format::dense:
            pauli_dense<Sign>(h.dense(), a, threads);
            return;
        case Format::packed:
            pauli_packed<Sign>(h.packed(), a, threads);
            return;
        case Format::tiled: {
            TiledHermitian& t = h.tiled();
            if (a < static_cast<std::uint32_t>(t.tile_exp()))
                pauli_tiled_intra<Sign>(t, a, threads);
            else
                pauli_tiled_cross<Sign>(t, a, threads);
            return;
        }
    }
}

} // namespace

void apply_pauli_x(MatrixHandle& h, std::uint32_t target, int threads) { pauli_any<1>(h, target, threads); }

void apply_pauli_y(MatrixHandle& h, std::uint32_t target, int threads) { pauli_any<-1>(h, target, threads); }

/*
 * Diagonal phase gates: element (i, j) picks up
 * phases[bit(i)] * conj(phases[bit(j)]); equal-bit elements stay
 * untouched bit-exactly.
 */

void apply_diagonal_phase(MatrixHandle& h, std::uint32_t target, const std::array<cplx, 2>& phases,
                          int threads) {
    check_target(h, target);
    for (const cplx& p : phases)
        if (std::abs(std::abs(p) - 1.0) > 1e-15)
            throw std::invalid_argument("diagonal phase: non-unit modulus");
    const cplx f10 = phases[1] * std::conj(phases[0]); // bits (1, 0)
    const cplx f01 = std::conj(f10);
    const std::uint64_t bit = std::uint64_t{1} << target;

    switch (h.format()) {
        case Format::dense: {
            DenseHermitian& d = h.dense();
            const std::uint64_t n_dim = d.dim();
            cplx* arr = d.data();
            parallel_for_ranges(n_dim, threads, [&](std::uint64_t r0, std::uint64_t r1) {
                for (std::uint64_t i = r0; i < r1; ++i) {
                    const bool bi = i & bit;
                    cplx* row = arr + i * n_dim;
                    for (std::uint64_t j = 0; j < n_dim; ++j) {
                        const bool bj = j & bit;
                        if (bi != bj)
                            row[j] *= bi ? f10 : f01;
                    }
                }
            });
            return;
        }
        case Format::packed: {
            PackedHermitian& p = h.packed();
            const std::uint64_t n_dim = p.dim();
            cplx* arr = p.data();
            parallel_for_ranges(n_dim, threads, [&](std::uint64_t r0, std::uint64_t r1) {
                for (std::uint64_t i = r0; i < r1; ++i) {
                    const bool bi = i & bit;
                    for (std::uint64_t j = 0; j <= i; ++j) {
                        const bool bj = j & bit;
                        if (bi != bj)
                            arr[p.offset(i, j)] *= bi ? f10 : f01;
                    }
                }
            });
            return;
        }
        case Format::tiled: {
            TiledHermitian& t = h.tiled();
            const std::uint64_t edge = t.tile_edge();
            const std::uint64_t sq = edge * edge;
            cplx* base = t.data();
            if (target < static_cast<std::uint32_t>(t.tile_exp())) {
                const std::uint64_t live = std::min(edge, t.dim());
                parallel_for_ranges(t.tile_count(), threads, [&](std::uint64_t t0, std::uint64_t t1) {
                    for (std::uint64_t tt = t0; tt < t1; ++tt) {
                        cplx* tile = base + tt * sq;
                        for (std::uint64_t r = 0; r < live; ++r) {
                            const bool br = r & bit;
                            for (std::uint64_t c = 0; c < live; ++c) {
                                const bool bc = c & bit;
                                if (br != bc)
                                    tile[r * edge + c] *= br ? f10 : f01;
                            }
                        }
                    }
                });
            } else {
                // whole tiles share one factor: scale contiguously
                const std::uint64_t tbit = std::uint64_t{1} << (target - t.tile_exp());
                const std::uint64_t grid = t.grid_dim();
                parallel_for_ranges(grid, threads, [&](std::uint64_t r0, std::uint64_t r1) {
                    for (std::uint64_t ti = r0; ti < r1; ++ti) {
                        const bool bi = ti & tbit;
                        for (std::uint64_t tj = 0; tj <= ti; ++tj) {
                            const bool bj = tj & tbit;
                            if (bi == bj)
                                continue;
                            cplx* tile = base + tile_offset(ti, tj, edge);
                            const cplx f = bi ? f10 : f01;
                            for (std::uint64_t p = 0; p < sq; ++p)
                                tile[p] *= f;
                        }
                    }
                });
            }
            return;
        }
    }
}

/*
 * Hadamard: direct real 2x2 conjugation of each quadruple.
 */

namespace {

struct HadamardQuad {
    void operator()(const cplx* v, cplx* w) const {
        w[0] = 0.5 * (v[0] + v[1] + v[2] + v[3]);
        w[1] = 0.5 * (v[0] - v[1] + v[2] - v[3]);
        w[2] = 0.5 * (v[0] + v[1] - v[2] - v[3]);
        w[3] = 0.5 * (v[0] - v[1] - v[2] + v[3]);
    }
};

} // namespace

void apply_hadamard(MatrixHandle& h, std::uint32_t target, int threads) {
    check_target(h, target);
    switch (h.format()) {
        case Format::dense:
            detail::dense_quads(h.dense(), target, threads, HadamardQuad{});
            return;
        case Format::packed:
            detail::packed_quads(h.packed(), target, threads, HadamardQuad{});
            return;
        case Format::tiled: {
            TiledHermitian& t = h.tiled();
            if (target < static_cast<std::uint32_t>(t.tile_exp()))
                detail::tiled_intra_quads(t, target, threads, HadamardQuad{});
            else
                detail::tiled_cross_quads(t, target, threads, HadamardQuad{});
            return;
        }
    }
}

/*
 * Permutation gates. The basis permutation P acts on row and column
 * indices; values move along swap cycles of stored slots, conjugating
 * whenever a move crosses the stored triangle.
 */

namespace {

std::vector<std::uint64_t> global_permutation(std::uint64_t n_dim, const PermutationGate& gate,
                                              const ActiveQubits& qubits) {
    std::vector<std::uint64_t> map(n_dim);
    for (std::uint64_t g = 0; g < n_dim; ++g) {
        const auto [s, a] = extract_bits(g, qubits);
        map[g] = insert_bits(s, gate.table[a], qubits);
    }
    return map;
}

void permute_dense(DenseHermitian& h, const std::vector<std::uint64_t>& pm, bool involution, int threads) {
    const std::uint64_t n_dim = h.dim();
    cplx* arr = h.data();
    const auto sigma = [&](std::uint64_t u) { return pm[u / n_dim] * n_dim + pm[u % n_dim]; };

    if (involution) {
        parallel_for_ranges(n_dim, threads, [&](std::uint64_t r0, std::uint64_t r1) {
            for (std::uint64_t i = r0; i < r1; ++i)
                for (std::uint64_t j = 0; j < n_dim; ++j) {
                    const std::uint64_t u = i * n_dim + j;
                    const std::uint64_t v = sigma(u);
                    if (v > u)
                        std::swap(arr[u], arr[v]);
                }
        });
        return;
    }
    // general cycles, owned by their minimum slot
    parallel_for_ranges(n_dim * n_dim, threads, [&](std::uint64_t r0, std::uint64_t r1) {
        for (std::uint64_t u = r0; u < r1; ++u) {
            std::uint64_t cur = sigma(u);
            bool is_min = true;
            while (cur != u) {
                if (cur < u) {
                    is_min = false;
                    break;
                }
                cur = sigma(cur);
            }
            if (!is_min || sigma(u) == u)
                continue;
            cplx carry = arr[u];
            cur = u;
            do {
                const std::uint64_t next = sigma(cur);
                std::swap(carry, arr[next]);
                cur = next;
            } while (cur != u);
        }
    });
}

// Lower-triangle representatives for the two triangular layouts. Reads
// and writes go through the storage accessors; tiled diagonal tiles keep
// their redundant mirror halves in sync on every write.
struct PackedAccess {
    PackedHermitian* h;
    std::uint64_t key(std::uint64_t i, std::uint64_t j) const { return h->offset(i, j); }
    cplx read(std::uint64_t i, std::uint64_t j) const { return h->data()[h->offset(i, j)]; }
    void write(std::uint64_t i, std::uint64_t j, cplx v) const { h->data()[h->offset(i, j)] = v; }
};

struct TiledAccess {
    TiledHermitian* h;
    std::uint64_t edge_mask;
    int m;
    std::uint64_t key(std::uint64_t i, std::uint64_t j) const {
        const std::uint64_t edge = edge_mask + 1;
        return tile_offset(i >> m, j >> m, edge) + (i & edge_mask) * edge + (j & edge_mask);
    }
    cplx read(std::uint64_t i, std::uint64_t j) const { return h->data()[key(i, j)]; }
    void write(std::uint64_t i, std::uint64_t j, cplx v) const {
        h->data()[key(i, j)] = v;
        if ((i >> m) == (j >> m) && i != j)
            h->data()[key(j, i)] = std::conj(v);
    }
};

template <typename Access>
struct TriPerm {
    Access acc;
    const std::vector<std::uint64_t>* pm;

    // stored representative (i >= j) -> image representative + conj flag
    struct Step {
        std::uint64_t i, j;
        bool conj;
    };
    Step sigma(std::uint64_t i, std::uint64_t j) const {
        std::uint64_t pi = (*pm)[i];
        std::uint64_t pj = (*pm)[j];
        if (pi >= pj)
            return {pi, pj, false};
        return {pj, pi, true};
    }

    void handle(std::uint64_t i, std::uint64_t j, bool involution) const {
        const std::uint64_t own = acc.key(i, j);
        const Step first = sigma(i, j);
        const std::uint64_t other = acc.key(first.i, first.j);

        if (involution) {
            if (other == own) {
                if (first.conj)
                    acc.write(i, j, std::conj(acc.read(i, j)));
                return;
            }
            if (other > own) {
                const cplx x = acc.read(i, j);
                const cplx y = acc.read(first.i, first.j);
                acc.write(first.i, first.j, first.conj ? std::conj(x) : x);
                acc.write(i, j, first.conj ? std::conj(y) : y);
            }
            return;
        }

        // general cycle walk from the minimum representative
        Step cur{i, j, false};
        for (;;) {
            const Step next = sigma(cur.i, cur.j);
            if (next.i == i && next.j == j)
                break;
            if (acc.key(next.i, next.j) < own)
                return; // another representative owns this cycle
            cur = next;
        }
        cplx carry = acc.read(i, j);
        cur = {i, j, false};
        do {
            const Step next = sigma(cur.i, cur.j);
            const cplx displaced = acc.read(next.i, next.j);
            acc.write(next.i, next.j, next.conj ? std::conj(carry) : carry);
            carry = displaced;
            cur = {next.i, next.j, false};
        } while (!(cur.i == i && cur.j == j));
    }
};

} // namespace

void apply_permutation(MatrixHandle& h, const PermutationGate& gate, const ActiveQubits& qubits,
                       int threads) {
    if (gate.k != qubits.count())
        throw std::invalid_argument("apply_permutation: gate arity does not match target count");
    if (gate.table.size() != (std::size_t{1} << gate.k))
        throw std::invalid_argument("apply_permutation: bad permutation table size");
    const std::uint64_t n_dim = h.dim();
    for (std::uint32_t q : qubits.positions())
        if (q >= static_cast<std::uint32_t>(h.qubits()))
            throw std::out_of_range("apply_permutation: target out of range");

    const std::vector<std::uint64_t> pm = global_permutation(n_dim, gate, qubits);
    const bool involution = gate.is_involution();

    switch (h.format()) {
        case Format::dense:
            permute_dense(h.dense(), pm, involution, threads);
            return;
        case Format::packed: {
            TriPerm<PackedAccess> tp{PackedAccess{&h.packed()}, &pm};
            parallel_for_ranges(n_dim, threads, [&](std::uint64_t r0, std::uint64_t r1) {
                for (std::uint64_t i = r0; i < r1; ++i)
                    for (std::uint64_t j = 0; j <= i; ++j)
                        tp.handle(i, j, involution);
            });
            return;
        }
        case Format::tiled: {
            TiledHermitian& t = h.tiled();
            TriPerm<TiledAccess> tp{TiledAccess{&t, t.tile_edge() - 1, t.tile_exp()}, &pm};
            parallel_for_ranges(n_dim, threads, [&](std::uint64_t r0, std::uint64_t r1) {
                for (std::uint64_t i = r0; i < r1; ++i)
                    for (std::uint64_t j = 0; j <= i; ++j)
                        tp.handle(i, j, involution);
            });
            return;
        }
    }
}

} // namespace hermsim
