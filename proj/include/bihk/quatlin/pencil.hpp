#pragma once

#include <array>
#include <vector>

#include "json.hpp"

#include "bihk/quatlin/quaternion.hpp"

namespace bihk::quatlin {

struct HermQuatTriple {
    std::array<QuatMatrix, 3> a;

    static HermQuatTriple make(QuatMatrix a1, QuatMatrix a2, QuatMatrix a3);
    static HermQuatTriple zero(std::size_t n);
    static HermQuatTriple scalar(double a1, double a2, double a3);
    std::size_t n() const { return a[0].rows(); }
};

HermQuatTriple random_triple(Rng& rng, std::size_t n, double scale = 1.0);

// A(zeta) = B0 + B1 zeta + B2 zeta^2.
struct QuadPencil {
    CMatrix b0, b1, b2;
    CMatrix at(Complex zeta) const { return b0 + zeta * b1 + zeta * zeta * b2; }
    std::size_t n() const { return static_cast<std::size_t>(b0.rows() / 2); }
};

// B0 = psi(A2)+i psi(A3), B1 = 2i psi(A1), B2 = -psi(A2)+i psi(A3)
QuadPencil pencil_build(const HermQuatTriple& t);
// max |omega_E A(zeta) + (omega_E A(zeta))^T| over the given samples
double pencil_symmetry_defect(const QuadPencil& p, const std::vector<Complex>& zetas);

// p(zeta, eta) = eta^n + p_1(zeta) eta^{n-1} + ... + p_n(zeta), deg p_i <= 2i.
class SpectralCurvePoly {
public:
    SpectralCurvePoly() = default;
    // coeffs[i][j] = coefficient of zeta^j in p_i; coeffs[0] = {1}.
    explicit SpectralCurvePoly(std::vector<std::vector<Complex>> coeffs, double truncation_defect = 0.0);

    std::size_t n() const { return coeffs_.size() - 1; }
    const std::vector<std::vector<Complex>>& coeffs() const { return coeffs_; }
    // Largest discarded interpolation coefficient above degree 2i.
    double truncation_defect() const { return truncation_defect_; }

    Complex p_i(std::size_t i, Complex zeta) const;
    // Descending coefficients in eta at fixed zeta.
    std::vector<Complex> eta_polynomial(Complex zeta) const;
    Complex operator()(Complex zeta, Complex eta) const;
    bool degree_bounds_hold() const;
    // max over samples and i of |p_i(zeta) - (-1)^i zeta^{2i} conj(p_i(1/conj(zeta)))|, relative
    double reality_defect(const std::vector<Complex>& zetas) const;

private:
    std::vector<std::vector<Complex>> coeffs_;
    double truncation_defect_ = 0.0;
};

// Monic Pfaffian square root of det(eta - A(zeta)), interpolated on roots of unity.
SpectralCurvePoly spectral_curve(const QuadPencil& pencil);

struct SampleReport {
    double max_relative_residual = 0.0;
    std::size_t samples = 0;
};

// det(eta - A(zeta)) against p(zeta,eta)^2 on the given points.
SampleReport doubling_check(const QuadPencil& pencil, const SpectralCurvePoly& curve,
                            const std::vector<std::pair<Complex, Complex>>& points);
// det(z0 - x1 A1 - x2 A2 - x3 A3) with x = (2i zeta, 1 - zeta^2, i(1 + zeta^2)) against p(zeta, z0)^2.
SampleReport cone_intersection_check(const HermQuatTriple& t, const std::vector<std::pair<Complex, Complex>>& points);
// 5x5 grid of (zeta, eta) pairs used by the default checks.
std::vector<std::pair<Complex, Complex>> default_sample_grid(Rng& rng, double radius = 1.5);

// dim ker(eta0 - A(zeta0)) at a point of the spectral curve.
std::size_t kernel_dim_on_curve(const QuadPencil& pencil, Complex zeta0, Complex eta0, double tol = 1e-8);

// Moore determinant of x0 - x1 A1 - x2 A2 - x3 A3 for real x.
double moore_surface(const HermQuatTriple& t, const std::array<double, 4>& x);
// Grid of moore_surface over the plane spanned by coordinates axis_u, axis_v (0..3) of base.
std::vector<std::vector<double>> moore_surface_grid(const HermQuatTriple& t, std::array<double, 4> base, int axis_u,
                                                    int axis_v, double lo, double hi, std::size_t resolution);

nlohmann::json triple_to_json(const HermQuatTriple& t);
HermQuatTriple triple_from_json(const nlohmann::json& j);
nlohmann::json curve_to_json(const SpectralCurvePoly& c);

}  // namespace bihk::quatlin
