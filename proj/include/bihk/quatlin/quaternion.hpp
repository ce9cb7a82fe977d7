#pragma once

#include <array>
#include <vector>

#include "bihk/numeric.hpp"

namespace bihk::quatlin {

// a + b i + c j + d k
struct Quaternion {
    double a = 0, b = 0, c = 0, d = 0;

    static Quaternion real(double x) { return {x, 0, 0, 0}; }
    Quaternion conj() const { return {a, -b, -c, -d}; }
    double norm2() const { return a * a + b * b + c * c + d * d; }
    double norm() const;

    Quaternion operator+(const Quaternion& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Quaternion operator-(const Quaternion& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Quaternion operator-() const { return {-a, -b, -c, -d}; }
    Quaternion operator*(const Quaternion& o) const;
    Quaternion operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
    bool operator==(const Quaternion& o) const = default;
};

class QuatMatrix {
public:
    QuatMatrix() = default;
    QuatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static QuatMatrix identity(std::size_t n);
    static QuatMatrix real_diagonal(const std::vector<double>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Quaternion& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Quaternion& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    QuatMatrix operator+(const QuatMatrix& o) const;
    QuatMatrix operator-(const QuatMatrix& o) const;
    QuatMatrix operator*(const QuatMatrix& o) const;
    QuatMatrix operator*(double s) const;
    QuatMatrix adjoint() const;
    bool is_hermitian(double tol = 1e-12) const;
    double max_abs() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Quaternion> data_;
};

// psi(a+bi+cj+dk) = [[a+bi, c+di], [-c+di, a-bi]] per entry.
CMatrix quat_embed(const QuatMatrix& m);

// Real 4n x 4n matrix of left multiplication x -> m x on H^n, with each
// quaternion stored as (a,b,c,d).
RMatrix left_mult_real(const QuatMatrix& m);
// Right multiplication by a fixed quaternion on every component of H^n.
RMatrix right_mult_real(const Quaternion& q, std::size_t n);

// The quaternionic triple used throughout: I1, I2, I3 are right
// multiplication by -i, j, k, so that I1 I2 = I3.
RMatrix complex_structure(int a, std::size_t n);
// x1 I1 + x2 I2 + x3 I3 for a unit vector x.
RMatrix complex_structure(const std::array<double, 3>& x, std::size_t n);

// Real eigenvalues of a quaternion-Hermitian matrix by a quaternionic Jacobi iteration, ascending.
std::vector<double> hermitian_eigenvalues(const QuatMatrix& m);
// Product of the quaternionic eigenvalues; its square is det(psi(m)).
double moore_det(const QuatMatrix& m);

QuatMatrix random_hermitian(Rng& rng, std::size_t n, double scale = 1.0);
QuatMatrix random_quat_matrix(Rng& rng, std::size_t rows, std::size_t cols, double scale = 1.0);

}  // namespace bihk::quatlin
