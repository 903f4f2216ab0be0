#include "hermsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hermsim {

KrausSet make_kraus_set(int k, std::vector<Mat> ops) {
    if (k < 1 || k > 3)
        throw std::invalid_argument("Kraus set: locality must be 1..3");
    if (ops.empty())
        throw std::invalid_argument("Kraus set: needs at least one operator");
    const std::size_t d = std::size_t{1} << k;
    if (ops.size() > d * d)
        throw std::invalid_argument("Kraus set: rank exceeds 2^(2k)");
    for (const Mat& op : ops)
        if (op.rows() != d || op.cols() != d)
            throw std::invalid_argument("Kraus set: operator dimension mismatch");
    return KrausSet{k, std::move(ops)};
}

TransferMatrix transfer_from_kraus(const KrausSet& ks) {
    const std::size_t d = ks.local_dim();
    Mat s(d * d, d * d);
    for (const Mat& l : ks.ops) {
        if (l.rows() != d || l.cols() != d)
            throw std::invalid_argument("transfer_from_kraus: operator dimension mismatch");
        const Mat term = kron(conjugate(l), l);
        s = s + term;
    }
    return TransferMatrix{ks.k, std::move(s)};
}

namespace {

Mat mat2(cplx a, cplx b, cplx c, cplx d) {
    Mat m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

const Mat pauli_i = mat2(1, 0, 0, 1);
const Mat pauli_x_mat = mat2(0, 1, 1, 0);
const Mat pauli_y_mat = mat2(0, cplx{0, -1}, cplx{0, 1}, 0);
const Mat pauli_z_mat = mat2(1, 0, 0, -1);

Mat diagonal_phase_mat(cplx p0, cplx p1) { return mat2(p0, 0, 0, p1); }

Mat permutation_mat(int k, const std::vector<std::uint32_t>& table) {
    const std::size_t d = std::size_t{1} << k;
    Mat m(d, d);
    for (std::size_t col = 0; col < d; ++col)
        m(table[col], col) = 1.0;
    return m;
}

ChannelSpec finish(std::string name, GateKind kind, KrausSet ks) {
    ChannelSpec spec;
    spec.name = std::move(name);
    spec.kind = kind;
    spec.transfer = transfer_from_kraus(ks);
    spec.kraus = std::move(ks);
    return spec;
}

} // namespace

ChannelSpec make_generic(std::string name, KrausSet ks, bool validate, double tol) {
    if (validate) {
        const ValidationReport report = validate_cptni(ks, tol);
        if (report.classification == CptniClass::invalid)
            throw std::invalid_argument("channel '" + name + "' is not CP-TNI");
    }
    return finish(std::move(name), GateKind::generic_kraus, std::move(ks));
}

ChannelSpec depolarising(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("depolarising: probability must be in [0, 1]");
    const double w0 = std::sqrt(1.0 - p);
    const double w = std::sqrt(p / 3.0);
    std::vector<Mat> ops;
    ops.push_back(w0 * pauli_i);
    ops.push_back(w * pauli_x_mat);
    ops.push_back(w * pauli_y_mat);
    ops.push_back(w * pauli_z_mat);
    return finish("depolarising", GateKind::generic_kraus, make_kraus_set(1, std::move(ops)));
}

ChannelSpec native_gate(const std::string& name, double theta) {
    using std::numbers::pi;
    if (name == "x")
        return finish("x", GateKind::pauli_x, make_kraus_set(1, {pauli_x_mat}));
    if (name == "y")
        return finish("y", GateKind::pauli_y, make_kraus_set(1, {pauli_y_mat}));
    if (name == "z") {
        ChannelSpec spec = finish("z", GateKind::diagonal_phase, make_kraus_set(1, {pauli_z_mat}));
        spec.phases = {cplx{1, 0}, cplx{-1, 0}};
        return spec;
    }
    if (name == "s") {
        ChannelSpec spec =
            finish("s", GateKind::diagonal_phase, make_kraus_set(1, {diagonal_phase_mat(1, cplx{0, 1})}));
        spec.phases = {cplx{1, 0}, cplx{0, 1}};
        return spec;
    }
    if (name == "t") {
        const cplx p1 = std::polar(1.0, pi / 4);
        ChannelSpec spec = finish("t", GateKind::diagonal_phase, make_kraus_set(1, {diagonal_phase_mat(1, p1)}));
        spec.phases = {cplx{1, 0}, p1};
        return spec;
    }
    if (name == "rz") {
        if (!std::isfinite(theta))
            throw std::invalid_argument("rz: angle must be finite");
        const cplx p0 = std::polar(1.0, -theta / 2);
        const cplx p1 = std::polar(1.0, theta / 2);
        ChannelSpec spec = finish("rz", GateKind::diagonal_phase, make_kraus_set(1, {diagonal_phase_mat(p0, p1)}));
        spec.phases = {p0, p1};
        return spec;
    }
    if (name == "h") {
        const double r = 1.0 / std::sqrt(2.0);
        return finish("h", GateKind::hadamard, make_kraus_set(1, {mat2(r, r, r, -r)}));
    }
    if (name == "cnot") {
        // control = high bit
        std::vector<std::uint32_t> table = {0, 1, 3, 2};
        ChannelSpec spec =
            finish("cnot", GateKind::permutation, make_kraus_set(2, {permutation_mat(2, table)}));
        spec.perm = std::move(table);
        return spec;
    }
    if (name == "swap") {
        std::vector<std::uint32_t> table = {0, 2, 1, 3};
        ChannelSpec spec =
            finish("swap", GateKind::permutation, make_kraus_set(2, {permutation_mat(2, table)}));
        spec.perm = std::move(table);
        return spec;
    }
    if (name == "toffoli") {
        std::vector<std::uint32_t> table = {0, 1, 2, 3, 4, 5, 7, 6};
        ChannelSpec spec =
            finish("toffoli", GateKind::permutation, make_kraus_set(3, {permutation_mat(3, table)}));
        spec.perm = std::move(table);
        return spec;
    }
    throw std::invalid_argument("unknown gate name: " + name);
}

std::vector<ChannelSpec> channel_library(double p, double theta) {
    std::vector<ChannelSpec> lib;
    for (const char* g : {"x", "y", "z", "s", "t", "h"})
        lib.push_back(native_gate(g));
    lib.push_back(native_gate("rz", theta));
    lib.push_back(native_gate("cnot"));
    lib.push_back(native_gate("swap"));
    lib.push_back(native_gate("toffoli"));
    lib.push_back(depolarising(p));
    return lib;
}

ValidationReport validate_cptni(const KrausSet& ks, double tol) {
    const std::size_t d = ks.local_dim();
    Mat acc(d, d);
    for (const Mat& l : ks.ops)
        acc = acc + adjoint(l) * l;
    const Mat defect = Mat::identity(d) - acc;

    ValidationReport report{};
    report.max_deviation = max_abs(defect);
    const std::vector<double> eig = hermitian_eigenvalues(defect);
    report.min_eigenvalue = eig.front();
    if (report.max_deviation <= tol)
        report.classification = CptniClass::trace_preserving;
    else if (report.min_eigenvalue >= -tol)
        report.classification = CptniClass::trace_non_increasing;
    else
        report.classification = CptniClass::invalid;
    return report;
}

KrausSet dual_channel(const KrausSet& ks) {
    std::vector<Mat> ops;
    ops.reserve(ks.ops.size());
    for (const Mat& l : ks.ops)
        ops.push_back(adjoint(l));
    return KrausSet{ks.k, std::move(ops)};
}

BoundChannel bind_channel(const ChannelSpec& spec, std::span<const std::uint32_t> targets) {
    const int k = spec.locality();
    if (static_cast<int>(targets.size()) != k)
        throw std::invalid_argument("bind_channel: target count does not match channel locality");
    for (std::size_t i = 0; i < targets.size(); ++i)
        for (std::size_t j = i + 1; j < targets.size(); ++j)
            if (targets[i] == targets[j])
                throw std::invalid_argument("bind_channel: duplicate target qubit");

    std::array<std::uint32_t, 3> sorted{};
    std::copy(targets.begin(), targets.end(), sorted.begin());
    std::sort(sorted.begin(), sorted.begin() + k);

    // Canonical local bit of constructor target j is (k-1-j); local bit l
    // of the bound operator corresponds to sorted[l]. sigma maps bound
    // local indices to canonical ones.
    std::array<int, 3> canon_bit_of_local{};
    for (int l = 0; l < k; ++l) {
        const auto it = std::find(targets.begin(), targets.end(), sorted[l]);
        const int listed = static_cast<int>(it - targets.begin());
        canon_bit_of_local[l] = k - 1 - listed;
    }
    bool identity_map = true;
    for (int l = 0; l < k; ++l)
        identity_map &= canon_bit_of_local[l] == l;

    BoundChannel bound;
    bound.qubits = ActiveQubits(std::span<const std::uint32_t>(sorted.data(), static_cast<std::size_t>(k)));
    bound.kind = spec.kind;
    bound.phases = spec.phases;

    if (identity_map) {
        bound.kraus = spec.kraus;
        bound.transfer = spec.transfer;
        bound.perm = spec.perm;
        return bound;
    }

    const std::size_t d = std::size_t{1} << k;
    auto sigma = [&](std::size_t x) {
        std::size_t y = 0;
        for (int l = 0; l < k; ++l)
            y |= ((x >> l) & 1) << canon_bit_of_local[l];
        return y;
    };

    std::vector<Mat> ops;
    ops.reserve(spec.kraus.ops.size());
    for (const Mat& l : spec.kraus.ops) {
        Mat re(d, d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                re(r, c) = l(sigma(r), sigma(c));
        ops.push_back(std::move(re));
    }
    bound.kraus = KrausSet{k, std::move(ops)};
    bound.transfer = transfer_from_kraus(bound.kraus);
    if (!spec.perm.empty()) {
        bound.perm.resize(d);
        for (std::size_t x = 0; x < d; ++x) {
            // pi_bound = sigma^{-1} o pi o sigma; sigma is an involution on
            // bit positions only when the permutation of bits is, so invert
            // explicitly.
            const std::size_t cx = sigma(x);
            const std::size_t cy = spec.perm[cx];
            std::size_t y = 0;
            for (int l = 0; l < k; ++l)
                y |= ((cy >> canon_bit_of_local[l]) & 1) << l;
            bound.perm[x] = static_cast<std::uint32_t>(y);
        }
    }
    return bound;
}

} // namespace hermsim
