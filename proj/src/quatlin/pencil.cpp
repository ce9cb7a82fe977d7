#include "bihk/quatlin/pencil.hpp"

#include <algorithm>
#include <cmath>

#include "bihk/error.hpp"
#include "bihk/json_util.hpp"

namespace bihk::quatlin {

HermQuatTriple HermQuatTriple::make(QuatMatrix a1, QuatMatrix a2, QuatMatrix a3) {
    HermQuatTriple t{{std::move(a1), std::move(a2), std::move(a3)}};
    for (const auto& m : t.a) {
        if (m.rows() != t.a[0].rows() || m.cols() != t.a[0].rows())
            throw InputError("triple matrices must be square of equal size");
        if (!m.is_hermitian(1e-10)) throw InputError("triple matrix is not quaternion-Hermitian");
    }
    return t;
}

HermQuatTriple HermQuatTriple::zero(std::size_t n) {
    return {{QuatMatrix(n, n), QuatMatrix(n, n), QuatMatrix(n, n)}};
}

HermQuatTriple HermQuatTriple::scalar(double a1, double a2, double a3) {
    return make(QuatMatrix::real_diagonal({a1}), QuatMatrix::real_diagonal({a2}), QuatMatrix::real_diagonal({a3}));
}

HermQuatTriple random_triple(Rng& rng, std::size_t n, double scale) {
    return {{random_hermitian(rng, n, scale), random_hermitian(rng, n, scale), random_hermitian(rng, n, scale)}};
}

QuadPencil pencil_build(const HermQuatTriple& t) {
    for (const auto& m : t.a)
        if (!m.is_hermitian(1e-10)) throw InputError("triple matrix is not quaternion-Hermitian");
    CMatrix a1 = quat_embed(t.a[0]), a2 = quat_embed(t.a[1]), a3 = quat_embed(t.a[2]);
    return {a2 + kI * a3, 2.0 * kI * a1, -a2 + kI * a3};
}

double pencil_symmetry_defect(const QuadPencil& p, const std::vector<Complex>& zetas) {
    CMatrix om = standard_symplectic(p.n()).cast<Complex>();
    double worst = 0;
    for (const auto& z : zetas) {
        CMatrix m = om * p.at(z);
        worst = std::max(worst, max_abs(m + m.transpose()));
    }
    return worst;
}

SpectralCurvePoly::SpectralCurvePoly(std::vector<std::vector<Complex>> coeffs, double truncation_defect)
    : coeffs_(std::move(coeffs)), truncation_defect_(truncation_defect) {
    if (coeffs_.empty()) throw InputError("spectral curve needs at least the leading coefficient");
}

Complex SpectralCurvePoly::p_i(std::size_t i, Complex zeta) const {
    const auto& c = coeffs_.at(i);
    Complex acc = 0;
    for (std::size_t j = c.size(); j-- > 0;) acc = acc * zeta + c[j];
    return acc;
}

std::vector<Complex> SpectralCurvePoly::eta_polynomial(Complex zeta) const {
    std::vector<Complex> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.push_back(p_i(i, zeta));
    return out;
}

Complex SpectralCurvePoly::operator()(Complex zeta, Complex eta) const {
    return horner(eta_polynomial(zeta), eta);
}

bool SpectralCurvePoly::degree_bounds_hold() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i].size() > 2 * i + 1) return false;
    return true;
}

double SpectralCurvePoly::reality_defect(const std::vector<Complex>& zetas) const {
    double worst = 0;
    for (const auto& z : zetas) {
        if (std::abs(z) < 1e-12) continue;
        Complex w = 1.0 / std::conj(z);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) {
            Complex lhs = p_i(i, z);
            Complex rhs = (i % 2 ? -1.0 : 1.0) * std::pow(z, static_cast<double>(2 * i)) * std::conj(p_i(i, w));
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
    }
    return worst;
}

SpectralCurvePoly spectral_curve(const QuadPencil& pencil) {
    const std::size_t n = pencil.n();
    if (n == 0) return SpectralCurvePoly(std::vector<std::vector<Complex>>{{Complex(1.0)}});
    CMatrix om = standard_symplectic(n).cast<Complex>();
    const std::size_t mz = 2 * n + 1, me = n + 1;
    // eta_coeffs[m][i]: coefficient of eta^{n-i} at zeta node m
    std::vector<std::vector<Complex>> eta_coeffs(mz, std::vector<Complex>(n + 1));
    std::vector<Complex> zetas(mz);
    for (std::size_t m = 0; m < mz; ++m) {
        zetas[m] = std::polar(1.0, 2 * M_PI * static_cast<double>(m) / static_cast<double>(mz));
        CMatrix a = pencil.at(zetas[m]);
        const double rho = std::max(1.0, a.cwiseAbs().rowwise().sum().maxCoeff());
        std::vector<Complex> etas(me), vals(me);
        for (std::size_t k = 0; k < me; ++k) {
            etas[k] = rho * std::polar(1.0, 2 * M_PI * static_cast<double>(k) / static_cast<double>(me));
            CMatrix shifted = etas[k] * CMatrix::Identity(a.rows(), a.cols()) - a;
            vals[k] = pfaffian(CMatrix(om * shifted));
        }
        for (std::size_t d = 0; d <= n; ++d) {  // power of eta
            Complex s = 0;
            for (std::size_t k = 0; k < me; ++k) s += vals[k] * std::pow(etas[k], -static_cast<double>(d));
            eta_coeffs[m][n - d] = s / static_cast<double>(me);
        }
    }
    std::vector<std::vector<Complex>> coeffs(n + 1);
    coeffs[0] = {1.0};
    double defect = 0, scale = 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<Complex> full(mz);
        for (std::size_t j = 0; j < mz; ++j) {
            Complex s = 0;
            for (std::size_t m = 0; m < mz; ++m) s += eta_coeffs[m][i] * std::pow(zetas[m], -static_cast<double>(j));
            full[j] = s / static_cast<double>(mz);
        }
        for (std::size_t j = 0; j <= 2 * i; ++j) scale = std::max(scale, std::abs(full[j]));
        for (std::size_t j = 2 * i + 1; j < mz; ++j) defect = std::max(defect, std::abs(full[j]));
        coeffs[i].assign(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(2 * i + 1));
    }
    return SpectralCurvePoly(std::move(coeffs), defect / scale);
}

namespace {

double relative_gap(Complex det, Complex p2, double scale) {
    const double denom = std::max({std::abs(det), std::abs(p2), 1e-12 * scale, 1e-300});
    return std::abs(det - p2) / denom;
}

}  // namespace

SampleReport doubling_check(const QuadPencil& pencil, const SpectralCurvePoly& curve,
                            const std::vector<std::pair<Complex, Complex>>& points) {
    SampleReport r;
    const auto dim = static_cast<Eigen::Index>(2 * pencil.n());
    for (const auto& [zeta, eta] : points) {
        CMatrix a = pencil.at(zeta);
        Complex det = (eta * CMatrix::Identity(dim, dim) - a).determinant();
        Complex p = curve(zeta, eta);
        const double scale = std::pow(std::abs(eta) + a.norm(), static_cast<double>(dim));
        r.max_relative_residual = std::max(r.max_relative_residual, relative_gap(det, p * p, scale));
        ++r.samples;
    }
    return r;
}

SampleReport cone_intersection_check(const HermQuatTriple& t, const std::vector<std::pair<Complex, Complex>>& points) {
    auto curve = spectral_curve(pencil_build(t));
    CMatrix a1 = quat_embed(t.a[0]), a2 = quat_embed(t.a[1]), a3 = quat_embed(t.a[2]);
    const auto dim = a1.rows();
    SampleReport r;
    for (const auto& [zeta, z0] : points) {
        Complex x1 = 2.0 * kI * zeta, x2 = 1.0 - zeta * zeta, x3 = kI * (1.0 + zeta * zeta);
        CMatrix m = z0 * CMatrix::Identity(dim, dim) - x1 * a1 - x2 * a2 - x3 * a3;
        Complex det = m.determinant();
        Complex p = curve(zeta, z0);
        const double scale = std::pow(m.norm(), static_cast<double>(dim));
        r.max_relative_residual = std::max(r.max_relative_residual, relative_gap(det, p * p, scale));
        ++r.samples;
    }
    return r;
}

std::vector<std::pair<Complex, Complex>> default_sample_grid(Rng& rng, double radius) {
    std::vector<std::pair<Complex, Complex>> pts;
    for (int a = 0; a < 5; ++a) {
        Complex zeta = uniform_complex(rng, radius);
        for (int b = 0; b < 5; ++b) pts.emplace_back(zeta, uniform_complex(rng, 2 * radius));
    }
    return pts;
}

std::size_t kernel_dim_on_curve(const QuadPencil& pencil, Complex zeta0, Complex eta0, double tol) {
    auto curve = spectral_curve(pencil);
    CMatrix a = pencil.at(zeta0);
    const double scale = std::pow(std::max(1.0, std::abs(eta0) + a.norm()), static_cast<double>(pencil.n()));
    if (std::abs(curve(zeta0, eta0)) > tol * scale) throw MathError("point is not on the spectral curve");
    CMatrix m = eta0 * CMatrix::Identity(a.rows(), a.cols()) - a;
    if (max_abs(m) == 0.0) return static_cast<std::size_t>(a.rows());
    return static_cast<std::size_t>(a.rows()) - numeric_rank(m, tol);
}

double moore_surface(const HermQuatTriple& t, const std::array<double, 4>& x) {
    QuatMatrix m = QuatMatrix::identity(t.n()) * x[0] - t.a[0] * x[1] - t.a[1] * x[2] - t.a[2] * x[3];
    return moore_det(m);
}

std::vector<std::vector<double>> moore_surface_grid(const HermQuatTriple& t, std::array<double, 4> base, int axis_u,
                                                    int axis_v, double lo, double hi, std::size_t resolution) {
    if (axis_u < 0 || axis_u > 3 || axis_v < 0 || axis_v > 3 || axis_u == axis_v)
        throw InputError("axes must be two distinct indices in 0..3");
    if (resolution < 2) throw InputError("resolution must be at least 2");
    std::vector<std::vector<double>> grid(resolution, std::vector<double>(resolution));
    for (std::size_t r = 0; r < resolution; ++r)
        for (std::size_t c = 0; c < resolution; ++c) {
            base[static_cast<std::size_t>(axis_u)] = lo + (hi - lo) * static_cast<double>(c) / static_cast<double>(resolution - 1);
            base[static_cast<std::size_t>(axis_v)] = lo + (hi - lo) * static_cast<double>(r) / static_cast<double>(resolution - 1);
            grid[r][c] = moore_surface(t, base);
        }
    return grid;
}

namespace {

nlohmann::json quat_matrix_to_json(const QuatMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).a, m(r, c).b, m(r, c).c, m(r, c).d});
        rows.push_back(row);
    }
    return rows;
}

QuatMatrix quat_matrix_from_json(const nlohmann::json& j) {
    const std::size_t n = j.size();
    QuatMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        if (j[r].size() != n) throw InputError("quaternion matrix must be square");
        for (std::size_t c = 0; c < n; ++c) {
            const auto& q = j[r][c];
            if (q.is_number()) {
                m(r, c) = Quaternion::real(q.get<double>());
            } else {
                if (q.size() != 4) throw InputError("quaternion entries are [a,b,c,d]");
                m(r, c) = {q[0].get<double>(), q[1].get<double>(), q[2].get<double>(), q[3].get<double>()};
            }
        }
    }
    return m;
}

}  // namespace

nlohmann::json triple_to_json(const HermQuatTriple& t) {
    return {{"A1", quat_matrix_to_json(t.a[0])}, {"A2", quat_matrix_to_json(t.a[1])}, {"A3", quat_matrix_to_json(t.a[2])}};
}

HermQuatTriple triple_from_json(const nlohmann::json& j) {
    return HermQuatTriple::make(quat_matrix_from_json(j.at("A1")), quat_matrix_from_json(j.at("A2")),
                                quat_matrix_from_json(j.at("A3")));
}

nlohmann::json curve_to_json(const SpectralCurvePoly& c) {
    nlohmann::json p = nlohmann::json::array();
    for (std::size_t i = 0; i < c.coeffs().size(); ++i)
        for (std::size_t j = 0; j < c.coeffs()[i].size(); ++j)
            p.push_back({{"i", i}, {"zeta_power", j}, {"value", json_util::from_complex(c.coeffs()[i][j])}});
    return {{"n", c.n()}, {"p", p}, {"truncation_defect", c.truncation_defect()}};
}

}  // namespace bihk::quatlin
