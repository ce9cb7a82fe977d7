#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bihk/bipoisson/bivector.hpp"

namespace bihk::bipoisson {

struct RecursionOperatorSample {
    Point point;
    CMatrix matrix;
};

// R = #_Q o #_P^{-1}; with #_P = P^T on covectors this is Q P^{-1}.
RecursionOperatorSample recursion_operator_at(const PolyBivector& p, const PolyBivector& q, const Point& point);
CMatrix recursion_matrix(const CMatrix& p, const CMatrix& q);

// Monic mu_R(lambda); coefficients[0] = 1, then descending powers.
struct PfaffPoly {
    std::string lambda;
    std::vector<MultiPoly> coefficients;
    std::size_t degree() const { return coefficients.size() - 1; }
    MultiPoly as_poly() const;
    std::vector<Complex> eval(const Chart& chart, const Point& point) const;
};

// (-1)^n Pf(Q - lambda P) / Pf(P), divided exactly.
PfaffPoly pfaffian_polynomial(const PolyBivector& p, const PolyBivector& q, const std::string& lambda = "lambda");
// Numeric mu at a point from the evaluated pencil, by interpolation in lambda.
std::vector<Complex> pfaffian_polynomial_at(const CMatrix& p, const CMatrix& q);

// det(lambda P - Q) == mu^2 det P exactly, and charpoly(Q P^{-1}) == mu^2 when P is constant.
bool chi_equals_mu_squared(const PolyBivector& p, const PolyBivector& q, const PfaffPoly& mu);

// mu(R) = 0 and no maximal proper divisor mu/(lambda - r) kills R.
bool minimal_polynomial_check(const CMatrix& r, std::span<const Complex> mu_desc, double tol = 1e-8);
inline bool minimal_polynomial_check(const RecursionOperatorSample& s, std::span<const Complex> mu_desc,
                                     double tol = 1e-8) {
    return minimal_polynomial_check(s.matrix, mu_desc, tol);
}

// N^k_{ab} of a (1,1)-tensor field.
class NijenhuisTensor {
public:
    explicit NijenhuisTensor(std::size_t dim) : dim_(dim), data_(dim * dim * dim, 0.0) {}
    std::size_t dim() const { return dim_; }
    Complex& operator()(std::size_t k, std::size_t a, std::size_t b) { return data_[(k * dim_ + a) * dim_ + b]; }
    Complex operator()(std::size_t k, std::size_t a, std::size_t b) const { return data_[(k * dim_ + a) * dim_ + b]; }
    double max_abs() const;

private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

using EndomorphismField = std::function<CMatrix(const CVector&)>;
NijenhuisTensor nijenhuis_tensor(const EndomorphismField& r, const CVector& point, double step = 1e-3);
NijenhuisTensor nijenhuis_tensor(const PolyBivector& p, const PolyBivector& q, const Point& point,
                                 double step = 1e-3);

// Pi_rho = rho(R) P for rho given by ascending coefficients.
PolyBivector magri_rho(const PolyBivector& p, const PolyBivector& q, std::span<const GaussRational> rho);

// Numeric rank of Q - lambda0 P at a point of the degeneracy locus.
std::size_t degeneracy_rank(const PolyBivector& p, const PolyBivector& q, Complex lambda0, const Point& point,
                            double rel_tol = 1e-8);
std::size_t degeneracy_rank(const CMatrix& p, const CMatrix& q, Complex lambda0, double rel_tol = 1e-8);

}  // namespace bihk::bipoisson
