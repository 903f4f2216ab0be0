#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hermsim/bit_index.hpp"
#include "hermsim/storage.hpp"

namespace hermsim {

/// k-local unitary whose matrix is a 0/1 permutation (optionally with an
/// involution flag precomputed; all library permutation gates are
/// involutions).
struct PermutationGate {
    int k = 0;
    std::vector<std::uint32_t> table;

    bool is_involution() const {
        for (std::size_t x = 0; x < table.size(); ++x)
            if (table[table[x]] != x)
                return false;
        return true;
    }
};

/// Pure pair-wise memory swaps h(i,j) <-> h(i xor 2^a, j xor 2^a); zero
/// arithmetic beyond conjugation on mirrored accesses.
void apply_pauli_x(MatrixHandle& h, std::uint32_t target, int threads = 1);

/// Pauli-X swap pattern plus negation of the elements whose two target
/// bits differ.
void apply_pauli_y(MatrixHandle& h, std::uint32_t target, int threads = 1);

/// Conjugation by diag(phases[0], phases[1]): element (i, j) picks up
/// phases[bit(i)] * conj(phases[bit(j)]); equal-bit elements are left
/// untouched bit-exactly. Covers Z, S, T, RZ.
void apply_diagonal_phase(MatrixHandle& h, std::uint32_t target, const std::array<cplx, 2>& phases,
                          int threads = 1);

/// Direct real 2x2 conjugation of each coupled quadruple.
void apply_hadamard(MatrixHandle& h, std::uint32_t target, int threads = 1);

/// In-place swap-cycle application of a basis permutation; covers CNOT,
/// SWAP and Toffoli. No multiplications touch matrix data.
void apply_permutation(MatrixHandle& h, const PermutationGate& gate, const ActiveQubits& qubits,
                       int threads = 1);

} // namespace hermsim
