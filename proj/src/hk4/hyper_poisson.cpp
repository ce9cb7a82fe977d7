#include "bihk/hk4/hyper_poisson.hpp"

#include <algorithm>

#include "bihk/error.hpp"

namespace bihk::hk4 {

HPTriple4 HPTriple4::moment_maps(const HKModel4& m) {
    HPTriple4 t;
    for (int a = 1; a <= 3; ++a) t.f[static_cast<std::size_t>(a - 1)] = [m, a](const Vec4& p) { return m.moment_map(a, p); };
    return t;
}

HPTriple4 HPTriple4::constant(double c1, double c2, double c3) {
    return {{[c1](const Vec4&) { return c1; }, [c2](const Vec4&) { return c2; }, [c3](const Vec4&) { return c3; }}};
}

Vec4 fd_gradient(const ScalarField& f, const Vec4& p, double h) {
    Vec4 g;
    for (int l = 0; l < 4; ++l) g(l) = (f(p + h * Vec4::Unit(l)) - f(p - h * Vec4::Unit(l))) / (2 * h);
    return g;
}

CVec4 fd_gradient(const ComplexField& f, const Vec4& p, double h) {
    CVec4 g;
    for (int l = 0; l < 4; ++l) g(l) = (f(p + h * Vec4::Unit(l)) - f(p - h * Vec4::Unit(l))) / (2 * h);
    return g;
}

namespace {

constexpr double kRoundoffFloor = 1e-9;

double point_residual(const HKModel4& m, const HPTriple4& f, const Vec4& p, double h) {
    std::array<Vec4, 3> v;
    for (int a = 1; a <= 3; ++a)
        v[static_cast<std::size_t>(a - 1)] = m.complex_structure(a, p).transpose() * fd_gradient(f.f[static_cast<std::size_t>(a - 1)], p, h);
    return (v[0] - v[1]).norm() + (v[1] - v[2]).norm();
}

double gradient_gap(const HPTriple4& f, const Vec4& p, double h1, double h2) {
    double gap = 0;
    for (const auto& fa : f.f) gap = std::max(gap, (fd_gradient(fa, p, h1) - fd_gradient(fa, p, h2)).cwiseAbs().maxCoeff());
    return gap;
}

}  // namespace

HPVerdict check_hyper_poisson(const HKModel4& m, const HPTriple4& f, const std::vector<Vec4>& points, double tol,
                              double h) {
    HPVerdict v;
    double gap1 = 0, gap2 = 0;
    for (const auto& p : points) {
        const double r = point_residual(m, f, p, h);
        v.per_point.push_back(r);
        v.max_residual = std::max(v.max_residual, r);
        v.max_residual_half = std::max(v.max_residual_half, point_residual(m, f, p, h / 2));
        gap1 = std::max(gap1, gradient_gap(f, p, h, h / 2));
        gap2 = std::max(gap2, gradient_gap(f, p, h / 2, h / 4));
    }
    v.halving_ratio = gap2 > 0 ? gap1 / gap2 : 0.0;
    v.converged = v.halving_ratio >= 3.0 || gap1 <= kRoundoffFloor;
    v.passed = v.converged && v.max_residual <= tol && v.max_residual_half <= tol;
    return v;
}

nlohmann::json verdict_to_json(const HPVerdict& v) {
    return {{"passed", v.passed},
            {"max_residual", v.max_residual},
            {"max_residual_half_step", v.max_residual_half},
            {"halving_ratio", v.halving_ratio},
            {"converged", v.converged},
            {"per_point", v.per_point}};
}

Mat4 assemble_bivector(const HKModel4& m, const HPTriple4& f, const Vec4& p) {
    Mat4 pi = Mat4::Zero();
    for (int a = 1; a <= 3; ++a) pi += f.f[static_cast<std::size_t>(a - 1)](p) * m.form_inverse(a, p);
    return pi;
}

namespace {

CMat4 holomorphic_projector(const HKModel4& m, const Vec4& p) {
    return 0.5 * (CMat4::Identity() - kI * m.complex_structure(1, p).cast<Complex>());
}

}  // namespace

CMat4 twozero_part(const HKModel4& m, const Mat4& pi, const Vec4& p) {
    CMat4 pr = holomorphic_projector(m, p);
    return pr * pi.cast<Complex>() * pr.transpose();
}

CMat4 twozero_formula(const HKModel4& m, const HPTriple4& f, const Vec4& p) {
    CMat4 pr = holomorphic_projector(m, p);
    CMat4 omega = m.kaehler_form(2, p).cast<Complex>() + kI * m.kaehler_form(3, p).cast<Complex>();
    Eigen::ColPivHouseholderQR<CMat4> qr(pr);
    Eigen::Matrix<Complex, 4, 2> v = CMat4(qr.householderQ()).leftCols<2>();
    Eigen::Matrix2cd restricted = v.transpose() * omega * v;
    CMat4 inv = v * restricted.inverse().transpose() * v.transpose();
    return 2.0 * Complex(f.f[1](p), f.f[2](p)) * inv;
}

Complex bracket_eval(const Mat4& pi, const ComplexField& f, const ComplexField& g, const Vec4& p, double h) {
    return fd_gradient(f, p, h).transpose() * pi.cast<Complex>() * fd_gradient(g, p, h);
}

double jacobiator(const HKModel4& m, const HPTriple4& f, const ComplexField& a, const ComplexField& b,
                  const ComplexField& c, const Vec4& p, double h) {
    auto br = [&](const ComplexField& x, const ComplexField& y) -> ComplexField {
        return [&, x, y](const Vec4& q) { return bracket_eval(assemble_bivector(m, f, q), x, y, q, h); };
    };
    const Mat4 pi = assemble_bivector(m, f, p);
    return std::abs(bracket_eval(pi, a, br(b, c), p, h) + bracket_eval(pi, b, br(c, a), p, h) +
                    bracket_eval(pi, c, br(a, b), p, h));
}

std::array<double, 3> hyper_coefficients(const HKModel4& m, const Mat4& pi, const Vec4& p) {
    Eigen::Matrix<double, 16, 3> basis;
    for (int a = 1; a <= 3; ++a) basis.col(a - 1) = m.form_inverse(a, p).reshaped();
    Eigen::Matrix<double, 16, 1> target = pi.reshaped();
    Eigen::Vector3d c = basis.colPivHouseholderQr().solve(target);
    const double scale = std::max(1.0, target.cwiseAbs().maxCoeff());
    if ((basis * c - target).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw MathError("bivector is not in the span of the inverse Kaehler forms");
    return {c(0), c(1), c(2)};
}

Vec4 canonical_killing(const HKModel4& m, const std::function<Mat4(const Vec4&)>& pi, const Vec4& p, double h) {
    ScalarField f1 = [&](const Vec4& q) { return hyper_coefficients(m, pi(q), q)[0]; };
    Vec4 grad = m.metric(p).inverse() * fd_gradient(f1, p, h);
    return -m.complex_structure(1, p) * grad;
}

}  // namespace bihk::hk4
