#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hermsim/bit_index.hpp"
#include "hermsim/linalg.hpp"

namespace hermsim {

/// A k-local operation as its local Kraus factors L_alpha (2^k x 2^k each).
struct KrausSet {
    int k = 0;
    std::vector<Mat> ops;

    std::size_t local_dim() const { return std::size_t{1} << k; }
};

KrausSet make_kraus_set(int k, std::vector<Mat> ops);

/// The 4^k x 4^k transfer matrix S = sum_alpha conj(L_alpha) (x) L_alpha,
/// acting on column-stacked block vectorisations: v[mu + 2^k nu] = B(mu, nu).
struct TransferMatrix {
    int k = 0;
    Mat s;

    std::size_t dim() const { return s.rows(); }
};

TransferMatrix transfer_from_kraus(const KrausSet& ks);

/// Dispatch class of a channel; everything except generic_kraus has a
/// dedicated low-arithmetic code path.
enum class GateKind : std::uint8_t { generic_kraus, pauli_x, pauli_y, diagonal_phase, hadamard, permutation };

/// Named k-local operation with both representations precomputed, plus the
/// side data (phases / permutation table) the specialised kernels consume.
/// Local basis index bit l corresponds to the l-th ascending target qubit;
/// multi-qubit constructors list controls first and the X-target last, so
/// their canonical tables have the controls in the high bits.
struct ChannelSpec {
    std::string name;
    GateKind kind = GateKind::generic_kraus;
    KrausSet kraus;
    TransferMatrix transfer;
    std::array<cplx, 2> phases{cplx{1.0, 0.0}, cplx{1.0, 0.0}};
    std::vector<std::uint32_t> perm;

    int locality() const { return kraus.k; }
};

ChannelSpec make_generic(std::string name, KrausSet ks, bool validate = false, double tol = 1e-10);

/// Single-qubit depolarising channel with Kraus factors
/// sqrt(1-p) I, sqrt(p/3) X, sqrt(p/3) Y, sqrt(p/3) Z.
ChannelSpec depolarising(double p);

/// Gate constructors: x, y, z, s, t, rz (needs theta), h, cnot, swap,
/// toffoli. Unknown names throw.
ChannelSpec native_gate(const std::string& name, double theta = 0.0);

/// All gates plus depolarising(0.1), the benchmark/verification set.
std::vector<ChannelSpec> channel_library(double p = 0.1, double theta = 0.7);

enum class CptniClass { trace_preserving, trace_non_increasing, invalid };

struct ValidationReport {
    CptniClass classification;
    double max_deviation;    // max |I - sum L^dag L| element
    double min_eigenvalue;   // smallest eigenvalue of I - sum L^dag L
};

ValidationReport validate_cptni(const KrausSet& ks, double tol = 1e-10);

/// Adjoint (Heisenberg-picture) map: Kraus factors {L_alpha^dagger}.
KrausSet dual_channel(const KrausSet& ks);

/// Channel data rebound to a concrete target tuple: targets are given in
/// constructor order (controls first); `qubits` is the ascending sort and
/// the local operators are re-indexed so bit l matches qubits[l].
struct BoundChannel {
    ActiveQubits qubits;
    KrausSet kraus;
    TransferMatrix transfer;
    std::array<cplx, 2> phases;
    std::vector<std::uint32_t> perm;
    GateKind kind;
};

BoundChannel bind_channel(const ChannelSpec& spec, std::span<const std::uint32_t> targets);

} // namespace hermsim
