#pragma once

#include <functional>

#include "bihk/hk4/model.hpp"

namespace bihk::hk4 {

using ScalarField = std::function<double(const Vec4&)>;
using ComplexField = std::function<Complex(const Vec4&)>;

struct HPTriple4 {
    std::array<ScalarField, 3> f;
    static HPTriple4 moment_maps(const HKModel4& m);
    static HPTriple4 constant(double c1, double c2, double c3);
};

Vec4 fd_gradient(const ScalarField& f, const Vec4& p, double h = 1e-4);
CVec4 fd_gradient(const ComplexField& f, const Vec4& p, double h = 1e-4);

struct HPVerdict {
    bool passed = false;
    double max_residual = 0;       // at step h
    double max_residual_half = 0;  // at step h/2
    // Ratio of successive FD gradient differences |D_h - D_{h/2}| / |D_{h/2} - D_{h/4}|.
    double halving_ratio = 0;
    bool converged = false;  // ratio >= 3, or differences already at the roundoff floor
    std::vector<double> per_point;
};

// max over points of |I1^T df1 - I2^T df2| + |I2^T df2 - I3^T df3|
HPVerdict check_hyper_poisson(const HKModel4& m, const HPTriple4& f, const std::vector<Vec4>& points,
                              double tol = 1e-6, double h = 1e-4);
nlohmann::json verdict_to_json(const HPVerdict& v);

// Pi = f1 omega1^{-1} + f2 omega2^{-1} + f3 omega3^{-1}
Mat4 assemble_bivector(const HKModel4& m, const HPTriple4& f, const Vec4& p);
// P Pi P^T with P = (1 - i I1)/2
CMat4 twozero_part(const HKModel4& m, const Mat4& pi, const Vec4& p);
// 2 (f2 + i f3)(omega2 + i omega3)^{-1}, the inverse taken on the (1,0)-covectors of I1
CMat4 twozero_formula(const HKModel4& m, const HPTriple4& f, const Vec4& p);

// {f, g} = Pi(df, dg) with central-difference gradients.
Complex bracket_eval(const Mat4& pi, const ComplexField& f, const ComplexField& g, const Vec4& p, double h = 1e-4);
// |{a,{b,c}} + {b,{c,a}} + {c,{a,b}}| for the field Pi = sum f_a omega_a^{-1}.
double jacobiator(const HKModel4& m, const HPTriple4& f, const ComplexField& a, const ComplexField& b,
                  const ComplexField& c, const Vec4& p, double h = 1e-4);

// Coefficients f_a of a bivector in the basis omega_a^{-1}; throws if Pi is not in their span.
std::array<double, 3> hyper_coefficients(const HKModel4& m, const Mat4& pi, const Vec4& p);
// X_Pi = -I1 grad f1 with f1 recovered pointwise from Pi.
Vec4 canonical_killing(const HKModel4& m, const std::function<Mat4(const Vec4&)>& pi, const Vec4& p, double h = 1e-4);

}  // namespace bihk::hk4
