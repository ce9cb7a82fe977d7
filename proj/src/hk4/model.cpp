#include "bihk/hk4/model.hpp"

#include <algorithm>
#include <cmath>

#include "bihk/error.hpp"

namespace bihk::hk4 {

HarmonicSpec harmonic_from_json(const nlohmann::json& j) {
    const std::string v = j.at("V").get<std::string>();
    if (v == "flat") return HarmonicSpec::flat();
    if (v == "taubnut") return HarmonicSpec::taubnut(j.value("mass", 1.0));
    throw InputError("unknown harmonic function '" + v + "'");
}

nlohmann::json harmonic_to_json(const HarmonicSpec& s) {
    if (s.kind == HarmonicSpec::Kind::flat) return {{"V", "flat"}};
    return {{"V", "taubnut"}, {"mass", s.mass}};
}

HKModel4 HKModel4::gibbons_hawking(const HarmonicSpec& spec) {
    if (spec.kind == HarmonicSpec::Kind::taubnut && !(spec.mass >= 0)) throw MathError("V <= 0 in domain");
    return HKModel4(spec);
}

double HKModel4::potential(const Vec4& p) const {
    if (spec_.kind == HarmonicSpec::Kind::flat) return 1.0;
    const double r = p.tail<3>().norm();
    if (r == 0) throw MathError("point at the nut");
    return 1.0 + spec_.mass / (2 * r);
}

Eigen::Vector3d HKModel4::connection(const Vec4& p) const {
    if (spec_.kind == HarmonicSpec::Kind::flat || spec_.mass == 0) return Eigen::Vector3d::Zero();
    const double x = p(1), y = p(2), z = p(3);
    const double r = p.tail<3>().norm(), rho2 = x * x + y * y;
    if (rho2 == 0) {
        if (z > 0) return Eigen::Vector3d::Zero();
        throw MathError("point on the Dirac string");
    }
    // (m/2)(1 - cos theta) dphi, regular on the positive x3-axis
    const double c = 0.5 * spec_.mass * (1 - z / r) / rho2;
    return {-c * y, c * x, 0.0};
}

namespace {

// theta = dtau + A as a covector
Vec4 connection_form(const HKModel4& m, const Vec4& p) {
    Vec4 th;
    th << 1.0, m.connection(p);
    return th;
}

}  // namespace

Mat4 HKModel4::metric(const Vec4& p) const {
    const double v = potential(p);
    Vec4 th = connection_form(*this, p);
    Mat4 g = th * th.transpose() / v;
    for (int a = 1; a <= 3; ++a) g(a, a) += v;
    return g;
}

Mat4 HKModel4::kaehler_form(int a, const Vec4& p) const {
    if (a < 1 || a > 3) throw InputError("complex structure index must be 1, 2 or 3");
    const double v = potential(p);
    Vec4 th = connection_form(*this, p);
    Vec4 dx = Vec4::Unit(a);
    Mat4 w = th * dx.transpose() - dx * th.transpose();
    const int b = a % 3 + 1, c = b % 3 + 1;
    w(b, c) += v;
    w(c, b) -= v;
    return w;
}

Mat4 HKModel4::complex_structure(int a, const Vec4& p) const {
    return -metric(p).inverse() * kaehler_form(a, p);
}

Mat4 HKModel4::form_inverse(int a, const Vec4& p) const {
    return kaehler_form(a, p).inverse().transpose();
}

double ModelResiduals::max() const {
    return std::max({algebra, compatibility, closedness, moment_map});
}

ModelResiduals check_model(const HKModel4& m, const std::vector<Vec4>& points, double h) {
    ModelResiduals r;
    auto upd = [](double& slot, double v) { slot = std::max(slot, v); };
    for (const auto& p : points) {
        Mat4 g = m.metric(p);
        std::array<Mat4, 3> is, ws;
        for (int a = 1; a <= 3; ++a) {
            is[a - 1] = m.complex_structure(a, p);
            ws[a - 1] = m.kaehler_form(a, p);
            upd(r.algebra, (is[a - 1] * is[a - 1] + Mat4::Identity()).cwiseAbs().maxCoeff());
            upd(r.compatibility, (is[a - 1].transpose() * g * is[a - 1] - g).cwiseAbs().maxCoeff());
            upd(r.compatibility, (ws[a - 1] - is[a - 1].transpose() * g).cwiseAbs().maxCoeff());
        }
        upd(r.algebra, (is[0] * is[1] - is[2]).cwiseAbs().maxCoeff());

        for (int a = 1; a <= 3; ++a) {
            std::array<Mat4, 4> dw;
            for (int l = 0; l < 4; ++l)
                dw[l] = (m.kaehler_form(a, p + h * Vec4::Unit(l)) - m.kaehler_form(a, p - h * Vec4::Unit(l))) / (2 * h);
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    for (int k = j + 1; k < 4; ++k)
                        upd(r.closedness, std::abs(dw[i](j, k) + dw[j](k, i) + dw[k](i, j)));
            Vec4 contraction = ws[a - 1].transpose() * m.killing(p);
            Vec4 dmu;
            for (int l = 0; l < 4; ++l)
                dmu(l) = (m.moment_map(a, p + h * Vec4::Unit(l)) - m.moment_map(a, p - h * Vec4::Unit(l))) / (2 * h);
            upd(r.moment_map, (contraction - dmu).cwiseAbs().maxCoeff());
        }
    }
    return r;
}

std::vector<Vec4> random_points(Rng& rng, std::size_t count, double radius) {
    std::vector<Vec4> out;
    while (out.size() < count) {
        Vec4 p(uniform(rng, -radius, radius), uniform(rng, -radius, radius), uniform(rng, -radius, radius),
               uniform(rng, -radius, radius));
        const double rho = std::hypot(p(1), p(2));
        if (p.tail<3>().norm() < 0.3 || rho < 0.2) continue;
        out.push_back(p);
    }
    return out;
}

}  // namespace bihk::hk4
