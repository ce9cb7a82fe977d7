#pragma once

#include <array>
#include <vector>

#include "bihk/nahm/series.hpp"

namespace bihk::nahm {

using Quad = std::array<CMatrix, 4>;

// Sampled solution on [delta, 2 - delta] with pole series covering both tails.
struct NahmData {
    int k = 1;
    double delta = 0.05;
    std::vector<double> grid;  // uniform, even number of intervals
    std::vector<Quad> samples;
    std::array<MatrixSeries, 4> tail0, tail2;  // in s = t and s = t - 2
    double kappa = 0, scale = 0;               // Euler-top modulus and D
    std::array<double, 4> center{};            // T_mu += i center_mu Id
    double declared_residual = 0;

    double step() const { return grid[1] - grid[0]; }
    std::size_t size() const { return grid.size(); }
};

struct NahmRunSpec {
    int charge = 2;
    double kappa = 0.6;
    double step = 1e-3;
    double delta = 0.05;
    int order = 8;
    std::array<double, 4> center{};
};

// Scalar Euler top f1' = f2 f3 (cyclic) with f_a = -1/t + a_a t + ... at t = 0.
struct EulerTop {
    double kappa = 0, scale = 0;
    std::array<double, 3> a{};
};
EulerTop euler_top_coefficients(double kappa, double scale);
// e_a = -(i/2) sigma_a, so that T_a = f_a e_a solves the Nahm equations with T0 = 0.
std::array<CMatrix, 3> euler_frame();
// Bisects on D so that f1(1) = 0, which puts the second pole at t = 2 (exactly D = K(kappa)).
EulerTop shoot_euler_top(double kappa, double delta, int order, double step);

// k = 1: constant data T_mu = i center_mu. k = 2: Euler-top two-pole solution plus centre offset.
NahmData run_nahm(const NahmRunSpec& spec);
// Translate a solution: T_mu -> T_mu + i c_mu Id (samples and tails).
NahmData translate(const NahmData& d, const std::array<double, 4>& c);

// max over interior grid points of |T_a' - [T_a, T0] - [T_b, T_c]|, 8th-order central differences.
double residual(const NahmData& d);
double anti_hermitian_defect(const NahmData& d);
// max |T(2 - delta) - tail2(-delta)|
double pole_match_defect(const NahmData& d);

// L(zeta) = (T2 + i T3) + 2i T1 zeta + (T2 - i T3) zeta^2, isospectral under the Nahm flow
CMatrix lax_matrix(const Quad& t, Complex zeta);
struct DriftReport {
    std::vector<Complex> zetas;
    std::vector<std::vector<double>> drift;  // [zeta][coefficient], max over t of |c(t) - c(t_mid)|
    std::vector<double> times;
    std::vector<std::vector<double>> series;  // [zeta] max_j |c_j(t) - c_j(t_mid)| along the grid
    double max_drift = 0;
};
DriftReport lax_isospectral(const NahmData& d, const std::vector<Complex>& zetas);
// Eigenvalues of beta = T2 + i T3 along the grid, sorted by real part; max deviation from the midpoint.
double beta_spectrum_drift(const NahmData& d);

// Euler-top profiles f_a(t) = <T_a - i c_a Id, e_a> / <e_a, e_a>.
std::vector<std::array<double, 3>> euler_profiles(const NahmData& d);

}  // namespace bihk::nahm
