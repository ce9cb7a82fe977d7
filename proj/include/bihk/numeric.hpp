#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace bihk {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

// Pfaffian of an antisymmetric matrix by Parlett-Reid elimination with pivoting.
Complex pfaffian(CMatrix a);
double pfaffian(const RMatrix& a);

// Singular values below rel_tol * largest count as zero.
std::size_t numeric_rank(const CMatrix& m, double rel_tol = 1e-8);

// blockdiag([[0,1],[-1,0]]) of size 2n.
RMatrix standard_symplectic(std::size_t n);

// Polynomials are stored with descending coefficients; leading coefficient first.
Complex horner(std::span<const Complex> desc, Complex x);
std::vector<Complex> poly_derivative(std::span<const Complex> desc);
std::vector<Complex> poly_from_roots(std::span<const Complex> roots);
std::vector<Complex> poly_mul(std::span<const Complex> a, std::span<const Complex> b);
// Roots of a monic polynomial: companion eigenvalues polished by Newton steps.
std::vector<Complex> poly_roots(std::span<const Complex> monic_desc);
// p(M) by Horner in the matrix argument.
CMatrix matrix_polynomial(std::span<const Complex> desc, const CMatrix& m);

double max_abs(const CMatrix& m);

// Deterministic RNG helpers used by tests, suites and the CLI.
using Rng = std::mt19937_64;
double uniform(Rng& rng, double lo, double hi);
Complex uniform_complex(Rng& rng, double radius);
// SplitMix64 step; derives independent stream seeds from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace bihk
