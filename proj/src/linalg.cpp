#include "hermsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hermsim {

Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols() != y.rows())
        throw std::invalid_argument("Mat multiply: inner dimensions differ");
    Mat out(x.rows(), y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t k = 0; k < x.cols(); ++k) {
            const cplx v = x(i, k);
            for (std::size_t j = 0; j < y.cols(); ++j)
                out(i, j) += v * y(k, j);
        }
    return out;
}

Mat operator*(cplx s, const Mat& x) {
    Mat out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            out(i, j) = s * x(i, j);
    return out;
}

Mat operator+(const Mat& x, const Mat& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw std::invalid_argument("Mat add: shapes differ");
    Mat out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            out(i, j) = x(i, j) + y(i, j);
    return out;
}

Mat operator-(const Mat& x, const Mat& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw std::invalid_argument("Mat subtract: shapes differ");
    Mat out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            out(i, j) = x(i, j) - y(i, j);
    return out;
}

Mat adjoint(const Mat& x) {
    Mat out(x.cols(), x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            out(j, i) = std::conj(x(i, j));
    return out;
}

Mat conjugate(const Mat& x) {
    Mat out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            out(i, j) = std::conj(x(i, j));
    return out;
}

Mat kron(const Mat& x, const Mat& y) {
    Mat out(x.rows() * y.rows(), x.cols() * y.cols());
    for (std::size_t p = 0; p < x.rows(); ++p)
        for (std::size_t r = 0; r < x.cols(); ++r) {
            const cplx v = x(p, r);
            for (std::size_t q = 0; q < y.rows(); ++q)
                for (std::size_t s = 0; s < y.cols(); ++s)
                    out(p * y.rows() + q, r * y.cols() + s) = v * y(q, s);
        }
    return out;
}

double max_abs(const Mat& x) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            m = std::max(m, std::abs(x(i, j)));
    return m;
}

double frobenius_norm(const Mat& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            s += std::norm(x(i, j));
    return std::sqrt(s);
}

namespace {

// Cyclic Jacobi on a hermitian matrix; returns eigenvalues and, when
// `vectors` is non-null, the accumulated unitary (columns = eigenvectors).
std::vector<double> jacobi_hermitian(Mat h, Mat* vectors) {
    const std::size_t d = h.rows();
    if (h.cols() != d)
        throw std::invalid_argument("hermitian eigensolve: matrix not square");
    Mat v = Mat::identity(d);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q)
                off += std::norm(h(p, q));
        if (off < 1e-30)
            break;

        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) {
                const cplx hpq = h(p, q);
                if (std::abs(hpq) < 1e-300)
                    continue;
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                // Rotation: diagonalise the 2x2 [app, hpq; conj(hpq), aqq].
                const double absh = std::abs(hpq);
                const cplx phase = hpq / absh;
                const double tau = (aqq - app) / (2.0 * absh);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx sp = s * phase;

                for (std::size_t i = 0; i < d; ++i) {
                    const cplx hip = h(i, p);
                    const cplx hiq = h(i, q);
                    h(i, p) = c * hip - std::conj(sp) * hiq;
                    h(i, q) = sp * hip + c * hiq;
                }
                for (std::size_t j = 0; j < d; ++j) {
                    const cplx hpj = h(p, j);
                    const cplx hqj = h(q, j);
                    h(p, j) = c * hpj - sp * hqj;
                    h(q, j) = std::conj(sp) * hpj + c * hqj;
                }
                for (std::size_t i = 0; i < d; ++i) {
                    const cplx vip = v(i, p);
                    const cplx viq = v(i, q);
                    v(i, p) = c * vip - std::conj(sp) * viq;
                    v(i, q) = sp * vip + c * viq;
                }
            }
    }

    std::vector<double> eig(d);
    for (std::size_t i = 0; i < d; ++i)
        eig[i] = h(i, i).real();
    if (vectors) {
        // Sort eigenpairs ascending, permuting columns of v alongside.
        std::vector<std::size_t> order(d);
        for (std::size_t i = 0; i < d; ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return eig[a] < eig[b]; });
        Mat vs(d, d);
        std::vector<double> es(d);
        for (std::size_t i = 0; i < d; ++i) {
            es[i] = eig[order[i]];
            for (std::size_t r = 0; r < d; ++r)
                vs(r, i) = v(r, order[i]);
        }
        *vectors = std::move(vs);
        return es;
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

} // namespace

std::vector<double> hermitian_eigenvalues(const Mat& h) { return jacobi_hermitian(h, nullptr); }

Mat hermitian_apply_spectral(const Mat& h, double (*f)(double)) {
    Mat v;
    std::vector<double> eig = jacobi_hermitian(h, &v);
    const std::size_t d = h.rows();
    Mat out(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            cplx acc = 0.0;
            for (std::size_t e = 0; e < d; ++e)
                acc += v(i, e) * f(eig[e]) * std::conj(v(j, e));
            out(i, j) = acc;
        }
    return out;
}

} // namespace hermsim
