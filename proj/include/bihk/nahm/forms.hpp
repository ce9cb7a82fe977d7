#pragma once

#include <functional>

#include "bihk/nahm/integrate.hpp"

namespace bihk::nahm {

// k = 1 calibration: #_g^{-1} Pi = kHyperPoissonNormalization * sum mu_a omega_a.
inline constexpr double kHyperPoissonNormalization = 0.25;

// Tangent quadruple (t0, t1, t2, t3) on the grid of a NahmData, with tail series.
// Complex combinations such as J u + i K u are allowed; all forms are complex bilinear.
struct NahmTangent {
    std::vector<Quad> samples;
    std::array<MatrixSeries, 4> tail0, tail2;

    NahmTangent operator+(const NahmTangent& o) const;
    NahmTangent operator*(Complex s) const;
};

// Constant tangent (i c0 Id, i c1 Id, i c2 Id, i c3 Id): phase for c = e0, translations for e1..e3.
NahmTangent constant_tangent(const NahmData& d, const std::array<Complex, 4>& c);
// Central difference quotient of a solution family at eps = 0; throws if the result
// violates the linearized equations (residual > 1e-5).
NahmTangent tangent_solve(const NahmData& d, const std::function<NahmData(double)>& family, double eps = 1e-4);
std::function<NahmData(double)> translation_family(const NahmData& d, const std::array<double, 4>& c);
double linearized_residual(const NahmData& d, const NahmTangent& u);

// Right multiplication by -i, j, k on t0 + t1 i + t2 j + t3 k.
NahmTangent apply_structure(int a, const NahmTangent& u);

// g(u, v) = -int tr sum u_mu v_mu
Complex metric_eval(const NahmData& d, const NahmTangent& u, const NahmTangent& v);
// omega_a(u, v) = g(I_a u, v)
std::array<Complex, 3> kahler_forms_eval(const NahmData& d, const NahmTangent& u, const NahmTangent& v);
// -int tr(dT0^dT2 + dT1^dT3) and -int tr(dT0^dT3 + dT2^dT1)
Complex omega2_explicit(const NahmData& d, const NahmTangent& u, const NahmTangent& v);
Complex omega3_explicit(const NahmData& d, const NahmTangent& u, const NahmTangent& v);
// -int tr d(T0 - i T1) ^ d(T2 + i T3)
Complex holomorphic_form(const NahmData& d, const NahmTangent& u, const NahmTangent& v);

// #_g^{-1} Pi(u, v) = -i/4 int tr(sum T_i(dT_i^dT0 - dT0^dT_i) + sum eps_ijk T_i dT_j^dT_k)
Complex hyper_poisson_2form(const NahmData& d, const NahmTangent& u, const NahmTangent& v);
// Type pieces w.r.t. I1: -i/8 int tr(T2+iT3)(Phi2-iPhi3), -i/4 int tr T1(...), -i/8 int tr(T2-iT3)(Phi2+iPhi3).
struct TypeSplit {
    Complex part02, part11, part20;
};
TypeSplit hyper_poisson_split(const NahmData& d, const NahmTangent& u, const NahmTangent& v);

// #_Omega^{-1} Pi^{2,0}(u, v) three ways:
// direct: the full 2-form on (J u + i K u, J v + i K v); key: the (0,2) piece on the same pair;
// and -i times twozero_via_beta.
Complex twozero_direct(const NahmData& d, const NahmTangent& u, const NahmTangent& v);
Complex twozero_key(const NahmData& d, const NahmTangent& u, const NahmTangent& v);
// 1/2 int tr d(beta^2) ^ d alpha, beta = T2 + i T3, alpha = T0 - i T1
Complex twozero_via_beta(const NahmData& d, const NahmTangent& u, const NahmTangent& v);

// F = int (tr sum T_i^2 + k(k^2-1)/4 (s^-2 + (s-2)^-2))
double potential_F(const NahmData& d);
// i(X_Pi) #_g^{-1} Pi (v) with X_Pi = (i, 0, 0, 0)
Complex killing_contraction(const NahmData& d, const NahmTangent& v);

struct ContractionReport {
    std::array<double, 3> lhs{}, rhs{}, residual{};  // per translation direction; rhs = -dF/4
    double max_residual = 0;
};
ContractionReport contraction_check(const NahmData& d, double step = 1e-4);

}  // namespace bihk::nahm
