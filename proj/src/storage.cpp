#include "hermsim/storage.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hermsim {

namespace {

void check_qubits(int n) {
    if (n < 1 || n > 30)
        throw std::invalid_argument("qubit count must be in [1, 30]");
}

void check_tile_exp(int n, int m) {
    if (m < 0 || m > n + 2)
        throw std::invalid_argument("tile exponent must be in [0, n + 2]");
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

// Counter-indexed Box-Muller draw: entry c of the i.i.d. complex-normal
// field depends only on (seed, c), so any storage format can materialise
// exactly the values it needs, in any order, and still agree bit-for-bit
// with every other format.
cplx gaussian_entry(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t base = splitmix64(seed ^ 0xD6E8FEB86659FD93ull);
    const std::uint64_t r1 = splitmix64(base + 2 * counter);
    const std::uint64_t r2 = splitmix64(base + 2 * counter + 1);
    const double u1 = static_cast<double>((r1 >> 11) + 1) * 0x1.0p-53; // (0, 1]
    const double u2 = static_cast<double>(r2 >> 11) * 0x1.0p-53;      // [0, 1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

namespace {

// Element (i, j) of H = (A + A^dagger)/2 for the seeded Gaussian A.
cplx hermitian_entry(std::uint64_t seed, std::uint64_t n_dim, std::uint64_t i, std::uint64_t j) {
    const cplx aij = gaussian_entry(seed, i * n_dim + j);
    const cplx aji = gaussian_entry(seed, j * n_dim + i);
    return 0.5 * (aij + std::conj(aji));
}

} // namespace

DenseHermitian::DenseHermitian(int n_qubits, bool zero_init)
    : n_(n_qubits), dim_(std::uint64_t{1} << n_qubits), a_(dim_ * dim_) {
    check_qubits(n_qubits);
    (void)zero_init; // AlignedArray zero-fills
}

void DenseHermitian::assign_symmetrized(const cplx* raw) {
    for (std::uint64_t i = 0; i < dim_; ++i)
        for (std::uint64_t j = 0; j <= i; ++j) {
            const cplx v = 0.5 * (raw[i * dim_ + j] + std::conj(raw[j * dim_ + i]));
            a_[i * dim_ + j] = v;
            a_[j * dim_ + i] = std::conj(v);
        }
}

PackedHermitian::PackedHermitian(int n_qubits)
    : n_(n_qubits), dim_(std::uint64_t{1} << n_qubits), a_(dim_ * (dim_ + 1) / 2) {
    check_qubits(n_qubits);
}

TiledHermitian::TiledHermitian(int n_qubits, int tile_exp)
    : n_(n_qubits), m_(tile_exp), dim_(std::uint64_t{1} << n_qubits),
      edge_(std::uint64_t{1} << tile_exp),
      grid_(dim_ >= edge_ ? dim_ / edge_ : 1),
      a_(grid_ * (grid_ + 1) / 2 * edge_ * edge_) {
    check_qubits(n_qubits);
    check_tile_exp(n_qubits, tile_exp);
}

int MatrixHandle::qubits() const {
    return std::visit([](const auto& h) { return h.qubits(); }, v_);
}

std::uint64_t MatrixHandle::dim() const {
    return std::visit([](const auto& h) { return h.dim(); }, v_);
}

int MatrixHandle::tile_exp() const {
    return format() == Format::tiled ? tiled().tile_exp() : 0;
}

const cplx* MatrixHandle::payload() const {
    return std::visit([](const auto& h) { return h.data(); }, v_);
}

cplx* MatrixHandle::payload() {
    return std::visit([](auto& h) { return h.data(); }, v_);
}

std::size_t MatrixHandle::payload_count() const {
    return std::visit([](const auto& h) { return h.element_count(); }, v_);
}

cplx get_element(const MatrixHandle& h, std::uint64_t i, std::uint64_t j) {
    const std::uint64_t n_dim = h.dim();
    if (i >= n_dim || j >= n_dim)
        throw std::out_of_range("get_element: index out of range");
    switch (h.format()) {
        case Format::dense:
            return h.dense().at(i, j);
        case Format::packed: {
            const auto& p = h.packed();
            return i >= j ? p.data()[p.offset(i, j)] : std::conj(p.data()[p.offset(j, i)]);
        }
        case Format::tiled: {
            const auto& t = h.tiled();
            const std::uint64_t M = t.tile_edge();
            const std::uint64_t ti = i / M, tj = j / M;
            if (ti >= tj)
                return t.tile(ti, tj)[(i % M) * M + (j % M)];
            return std::conj(t.tile(tj, ti)[(j % M) * M + (i % M)]);
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

MatrixHandle make_zero(int n, Format format, int tile_exp) {
    switch (format) {
        case Format::dense: return MatrixHandle(DenseHermitian(n));
        case Format::packed: return MatrixHandle(PackedHermitian(n));
        case Format::tiled: return MatrixHandle(TiledHermitian(n, tile_exp));
    }
    throw std::invalid_argument("unknown format");
}

// Fills a handle from a generator of logical lower-triangle elements.
// gen(i, j) is invoked once per stored element; diagonal tiles pull their
// upper half through the conjugate mirror so every format stores
// bit-identical values.
template <typename Gen>
void fill_from_lower(MatrixHandle& h, Gen&& gen) {
    const std::uint64_t n_dim = h.dim();
    switch (h.format()) {
        case Format::dense: {
            auto& d = h.dense();
            for (std::uint64_t i = 0; i < n_dim; ++i)
                for (std::uint64_t j = 0; j <= i; ++j) {
                    const cplx v = gen(i, j);
                    d.set(i, j, v);
                    d.set(j, i, std::conj(v));
                }
            break;
        }
        case Format::packed: {
            auto& p = h.packed();
            cplx* a = p.data();
            for (std::uint64_t j = 0; j < n_dim; ++j)
                for (std::uint64_t i = j; i < n_dim; ++i)
                    a[p.offset(i, j)] = gen(i, j);
            break;
        }
        case Format::tiled: {
            auto& t = h.tiled();
            const std::uint64_t M = t.tile_edge();
            for (std::uint64_t ti = 0; ti < t.grid_dim(); ++ti)
                for (std::uint64_t tj = 0; tj <= ti; ++tj) {
                    cplx* tp = t.tile(ti, tj);
                    for (std::uint64_t r = 0; r < M; ++r)
                        for (std::uint64_t c = 0; c < M; ++c) {
                            const std::uint64_t i = ti * M + r;
                            const std::uint64_t j = tj * M + c;
                            if (i >= n_dim || j >= n_dim)
                                tp[r * M + c] = 0.0; // padding when N < M
                            else if (i >= j)
                                tp[r * M + c] = gen(i, j);
                            else
                                tp[r * M + c] = std::conj(gen(j, i));
                        }
                }
            break;
        }
    }
}

} // namespace

MatrixHandle random_hermitian(int n, std::uint64_t seed, Format format, int tile_exp) {
    check_qubits(n);
    MatrixHandle h = make_zero(n, format, tile_exp);
    const std::uint64_t n_dim = h.dim();
    fill_from_lower(h, [&](std::uint64_t i, std::uint64_t j) { return hermitian_entry(seed, n_dim, i, j); });
    return h;
}

MatrixHandle random_density_matrix(int n, std::uint64_t seed, Format format, int tile_exp) {
    check_qubits(n);
    const std::uint64_t n_dim = std::uint64_t{1} << n;

    // rho = G G^dagger / tr(G G^dagger), assembled densely first.
    DenseHermitian rho(n);
    double trace = 0.0;
    for (std::uint64_t i = 0; i < n_dim; ++i)
        for (std::uint64_t j = 0; j <= i; ++j) {
            cplx acc = 0.0;
            for (std::uint64_t k = 0; k < n_dim; ++k)
                acc += gaussian_entry(seed, i * n_dim + k) * std::conj(gaussian_entry(seed, j * n_dim + k));
            rho.set(i, j, acc);
            rho.set(j, i, std::conj(acc));
            if (i == j)
                trace += acc.real();
        }
    const double inv = 1.0 / trace;
    for (std::uint64_t i = 0; i < n_dim; ++i)
        for (std::uint64_t j = 0; j < n_dim; ++j)
            rho.set(i, j, inv * rho.at(i, j));

    MatrixHandle h = make_zero(n, format, tile_exp);
    fill_from_lower(h, [&](std::uint64_t i, std::uint64_t j) { return rho.at(i, j); });
    return h;
}

MatrixHandle basis_projector(int n, std::uint64_t basis, Format format, int tile_exp) {
    check_qubits(n);
    if (basis >= (std::uint64_t{1} << n))
        throw std::out_of_range("basis_projector: basis index out of range");
    MatrixHandle h = make_zero(n, format, tile_exp);
    fill_from_lower(h, [&](std::uint64_t i, std::uint64_t j) {
        return i == basis && j == basis ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
    });
    return h;
}

DenseHermitian to_dense(const MatrixHandle& h) {
    const std::uint64_t n_dim = h.dim();
    DenseHermitian d(h.qubits());
    switch (h.format()) {
        case Format::dense:
            d = h.dense();
            break;
        case Format::packed: {
            const auto& p = h.packed();
            const cplx* a = p.data();
            for (std::uint64_t j = 0; j < n_dim; ++j)
                for (std::uint64_t i = j; i < n_dim; ++i) {
                    const cplx v = a[p.offset(i, j)];
                    d.set(i, j, v);
                    d.set(j, i, std::conj(v));
                }
            break;
        }
        case Format::tiled: {
            const auto& t = h.tiled();
            const std::uint64_t M = t.tile_edge();
            for (std::uint64_t ti = 0; ti < t.grid_dim(); ++ti)
                for (std::uint64_t tj = 0; tj <= ti; ++tj) {
                    const cplx* tp = t.tile(ti, tj);
                    for (std::uint64_t r = 0; r < M; ++r)
                        for (std::uint64_t c = 0; c < M; ++c) {
                            const std::uint64_t i = ti * M + r;
                            const std::uint64_t j = tj * M + c;
                            if (i >= n_dim || j >= n_dim)
                                continue;
                            if (ti > tj) {
                                d.set(i, j, tp[r * M + c]);
                                d.set(j, i, std::conj(tp[r * M + c]));
                            } else {
                                d.set(i, j, tp[r * M + c]); // diagonal tile holds both halves
                            }
                        }
                }
            break;
        }
    }
    return d;
}

MatrixHandle convert(const MatrixHandle& h, Format target, int tile_exp) {
    const DenseHermitian d = to_dense(h);
    if (target == Format::dense)
        return MatrixHandle(d);
    MatrixHandle out = make_zero(h.qubits(), target, tile_exp);
    fill_from_lower(out, [&](std::uint64_t i, std::uint64_t j) { return d.at(i, j); });
    return out;
}

std::uint64_t footprint_bytes(int n, int tile_exp, Format format) {
    check_qubits(n);
    const std::uint64_t n_dim = std::uint64_t{1} << n;
    switch (format) {
        case Format::dense:
            return n_dim * n_dim * 16;
        case Format::packed:
            return n_dim * (n_dim + 1) / 2 * 16;
        case Format::tiled: {
            check_tile_exp(n, tile_exp);
            const std::uint64_t edge = std::uint64_t{1} << tile_exp;
            const std::uint64_t grid = n_dim >= edge ? n_dim / edge : 1;
            return grid * (grid + 1) / 2 * edge * edge * 16;
        }
    }
    throw std::invalid_argument("unknown format");
}

} // namespace hermsim
