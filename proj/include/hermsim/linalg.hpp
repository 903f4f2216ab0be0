#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

#include "hermsim/types.hpp"

namespace hermsim {

/// Small dense complex matrix, row-major. Holds local Kraus factors,
/// transfer matrices and test fixtures; never a full 2^n x 2^n operator.
class Mat {
  public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Mat identity(std::size_t dim) {
        Mat m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }

    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

Mat operator*(const Mat& x, const Mat& y);
Mat operator*(cplx s, const Mat& x);
Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);

/// Conjugate transpose.
Mat adjoint(const Mat& x);

/// Element-wise conjugate (no transpose).
Mat conjugate(const Mat& x);

/// Kronecker product, standard indexing: (x (x) y)[p*ry+q, r*cy+s] = x(p,r) y(q,s).
Mat kron(const Mat& x, const Mat& y);

double max_abs(const Mat& x);
double frobenius_norm(const Mat& x);

/// Eigenvalues of a hermitian matrix via cyclic complex Jacobi rotations,
/// ascending order. Intended for small dimensions (channel validation,
/// density-matrix checks); cost is O(dim^3) per sweep.
std::vector<double> hermitian_eigenvalues(const Mat& h);

/// V * f(D) * V^dagger for hermitian input, with f applied to the
/// eigenvalues. Used to build inverse square roots when normalising
/// random Kraus sets.
Mat hermitian_apply_spectral(const Mat& h, double (*f)(double));

} // namespace hermsim
