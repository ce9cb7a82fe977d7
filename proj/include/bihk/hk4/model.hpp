#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "bihk/numeric.hpp"

namespace bihk::hk4 {

// Coordinates (tau, x1, x2, x3); tau is the fibre of the Gibbons-Hawking ansatz.
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using CVec4 = Eigen::Vector4cd;
using CMat4 = Eigen::Matrix4cd;

struct HarmonicSpec {
    enum class Kind { flat, taubnut };
    Kind kind = Kind::flat;
    double mass = 1.0;

    static HarmonicSpec flat() { return {}; }
    static HarmonicSpec taubnut(double mass) { return {Kind::taubnut, mass}; }
};

HarmonicSpec harmonic_from_json(const nlohmann::json& j);
nlohmann::json harmonic_to_json(const HarmonicSpec& s);

// g = V^{-1}(dtau + A)^2 + V dx^2 with curl A = -grad V,
// omega_a = (dtau + A) ^ dx_a + V dx_b ^ dx_c (cyclic), X = d/dtau, mu_a = x_a.
class HKModel4 {
public:
    static HKModel4 gibbons_hawking(const HarmonicSpec& spec);

    const HarmonicSpec& spec() const { return spec_; }
    double potential(const Vec4& p) const;
    Eigen::Vector3d connection(const Vec4& p) const;

    Mat4 metric(const Vec4& p) const;
    // omega_a(u, v) = u^T W v
    Mat4 kaehler_form(int a, const Vec4& p) const;
    // I_a with omega_a(u, v) = g(I_a u, v)
    Mat4 complex_structure(int a, const Vec4& p) const;
    // Bivector inverse W^{-T}
    Mat4 form_inverse(int a, const Vec4& p) const;
    double moment_map(int a, const Vec4& p) const { return p(a); }
    Vec4 killing(const Vec4&) const { return Vec4::UnitX(); }

private:
    explicit HKModel4(HarmonicSpec s) : spec_(s) {}
    HarmonicSpec spec_;
};

struct ModelResiduals {
    double algebra = 0;         // I_a^2 + 1, I1 I2 - I3
    double compatibility = 0;   // I_a^T g I_a - g and W_a - I_a^T g
    double closedness = 0;      // d omega_a by central differences
    double moment_map = 0;      // i(X) omega_a - d mu_a
    double max() const;
};

ModelResiduals check_model(const HKModel4& m, const std::vector<Vec4>& points, double h = 1e-4);

// Uniform points in a box around the origin, away from the negative x3-axis and from r = 0.
std::vector<Vec4> random_points(Rng& rng, std::size_t count, double radius = 2.0);

}  // namespace bihk::hk4
