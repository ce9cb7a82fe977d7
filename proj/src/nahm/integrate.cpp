#include "bihk/nahm/integrate.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace bihk::nahm {

namespace {

CMatrix comm(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

Quad nahm_rhs(const Quad& t) {
    Quad d;
    d[0] = CMatrix::Zero(t[0].rows(), t[0].cols());
    for (int a = 1; a <= 3; ++a) {
        const int b = a % 3 + 1, c = b % 3 + 1;
        d[a] = comm(t[a], t[0]) + comm(t[b], t[c]);
    }
    return d;
}

Quad axpy(const Quad& x, double s, const Quad& y) {
    Quad out;
    for (int a = 0; a < 4; ++a) out[a] = x[a] + s * y[a];
    return out;
}

Quad rk4_step(const Quad& y, double h) {
    Quad k1 = nahm_rhs(y), k2 = nahm_rhs(axpy(y, h / 2, k1)), k3 = nahm_rhs(axpy(y, h / 2, k2)),
         k4 = nahm_rhs(axpy(y, h, k3));
    Quad out;
    for (int a = 0; a < 4; ++a) out[a] = y[a] + h / 6 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
    return out;
}

// substeps shrink linearly towards the poles
int substeps(double t, double h) {
    const double dist = std::min(t, 2.0 - t);
    return std::max(1, static_cast<int>(std::ceil(h / (5e-4 * std::max(dist, 1e-6)))));
}

std::array<double, 3> euler_rhs(const std::array<double, 3>& f) {
    return {f[1] * f[2], f[2] * f[0], f[0] * f[1]};
}

std::array<double, 3> euler_step(const std::array<double, 3>& f, double h) {
    auto add = [](const std::array<double, 3>& x, double s, const std::array<double, 3>& y) {
        return std::array<double, 3>{x[0] + s * y[0], x[1] + s * y[1], x[2] + s * y[2]};
    };
    auto k1 = euler_rhs(f), k2 = euler_rhs(add(f, h / 2, k1)), k3 = euler_rhs(add(f, h / 2, k2)),
         k4 = euler_rhs(add(f, h, k3));
    std::array<double, 3> out;
    for (int a = 0; a < 3; ++a) out[a] = f[a] + h / 6 * (k1[a] + 2 * k2[a] + 2 * k3[a] + k4[a]);
    return out;
}

std::map<int, std::array<CMatrix, 3>> euler_prescription(const EulerTop& e, int side) {
    auto frame = euler_frame();
    // near t = 2 the solution is f_a(t) = sigma_a f_a(2 - t) with sigma = (-1, 1, 1),
    // so the s^1 coefficient picks up -sigma_a
    const double sign[3] = {1.0, side == 2 ? -1.0 : 1.0, side == 2 ? -1.0 : 1.0};
    std::array<CMatrix, 3> c1;
    for (int a = 0; a < 3; ++a) c1[a] = sign[a] * e.a[a] * frame[a];
    return {{1, c1}};
}

std::array<MatrixSeries, 4> with_center(std::array<MatrixSeries, 4> s, const std::array<double, 4>& c) {
    for (int a = 0; a < 4; ++a) {
        const CMatrix& z = s[a].zero();
        s[a].set(0, s[a].coeff(0) + kI * c[a] * CMatrix::Identity(z.rows(), z.cols()));
    }
    return s;
}

std::vector<double> make_grid(double delta, double step) {
    if (!(delta > 0 && delta < 0.5)) throw InputError("delta must lie in (0, 0.5)");
    if (!(step > 0 && step < 0.1)) throw InputError("step must lie in (0, 0.1)");
    auto n = static_cast<std::size_t>(std::ceil((2 - 2 * delta) / step));
    if (n % 2) ++n;
    std::vector<double> g(n + 1);
    for (std::size_t i = 0; i <= n; ++i) g[i] = delta + (2 - 2 * delta) * static_cast<double>(i) / static_cast<double>(n);
    return g;
}

}  // namespace

std::array<CMatrix, 3> euler_frame() {
    CMatrix s1(2, 2), s2(2, 2), s3(2, 2);
    s1 << 0, 1, 1, 0;
    s2 << 0, Complex(0, -1), Complex(0, 1), 0;
    s3 << 1, 0, 0, -1;
    const Complex c(0, -0.5);
    return {c * s1, c * s2, c * s3};
}

EulerTop euler_top_coefficients(double kappa, double scale) {
    const double d2 = scale * scale;
    const double a1 = d2 * (2 - kappa * kappa) / 6;
    return {kappa, scale, {a1, a1 - d2 * (1 - kappa * kappa) / 2, a1 - d2 / 2}};
}

EulerTop shoot_euler_top(double kappa, double delta, int order, double step) {
    if (!(kappa >= 0 && kappa <= 0.9)) throw InputError("kappa must lie in [0, 0.9]");
    auto f1_at_one = [&](double scale) {
        auto e = euler_top_coefficients(kappa, scale);
        auto ps = pole_series(2, 0, order, euler_prescription(e, 0));
        auto frame = euler_frame();
        std::array<double, 3> f;
        for (int a = 0; a < 3; ++a)
            f[a] = ((ps.t[a + 1].eval(delta) * frame[a].adjoint()).trace() / (frame[a] * frame[a].adjoint()).trace()).real();
        double t = delta;
        const auto n = static_cast<int>(std::ceil((1 - delta) / step));
        const double h = (1 - delta) / n;
        for (int i = 0; i < n; ++i) {
            const int m = substeps(t, h);
            for (int s = 0; s < m; ++s) f = euler_step(f, h / m);
            t += h;
        }
        return f[0];
    };
    double lo = 1.0, hi = 3.0;
    if (f1_at_one(lo) > 0 || f1_at_one(hi) < 0) throw MathError("shooting bracket does not contain the two-pole solution");
    for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f1_at_one(mid) < 0 ? lo : hi) = mid;
    }
    return euler_top_coefficients(kappa, 0.5 * (lo + hi));
}

NahmData run_nahm(const NahmRunSpec& spec) {
    NahmData d;
    d.k = spec.charge;
    d.delta = spec.delta;
    d.center = spec.center;
    d.grid = make_grid(spec.delta, spec.step);
    if (spec.charge == 1) {
        Quad q;
        for (int a = 0; a < 4; ++a) q[a] = CMatrix::Constant(1, 1, kI * spec.center[a]);
        d.samples.assign(d.grid.size(), q);
        for (int a = 0; a < 4; ++a) d.tail0[a] = d.tail2[a] = constant_series(q[a], spec.order);
        d.declared_residual = residual(d);
        return d;
    }
    if (spec.charge != 2) throw InputError("only charges 1 and 2 are supported");

    auto e = shoot_euler_top(spec.kappa, spec.delta, spec.order, spec.step);
    d.kappa = e.kappa;
    d.scale = e.scale;
    d.tail0 = with_center(pole_series(2, 0, spec.order, euler_prescription(e, 0)).t, spec.center);
    d.tail2 = with_center(pole_series(2, 2, spec.order, euler_prescription(e, 2)).t, spec.center);

    Quad y;
    for (int a = 0; a < 4; ++a) y[a] = d.tail0[a].eval(spec.delta);
    d.samples.push_back(y);
    for (std::size_t i = 0; i + 1 < d.grid.size(); ++i) {
        const double h = d.grid[i + 1] - d.grid[i];
        const int m = substeps(d.grid[i], h);
        for (int s = 0; s < m; ++s) y = rk4_step(y, h / m);
        for (const auto& x : y)
            if (!x.allFinite() || max_abs(x) > 1e8) throw MathError("escaped");
        d.samples.push_back(y);
    }
    d.declared_residual = residual(d);
    return d;
}

NahmData translate(const NahmData& d, const std::array<double, 4>& c) {
    NahmData out = d;
    const auto id = CMatrix::Identity(d.k, d.k);
    for (auto& q : out.samples)
        for (int a = 0; a < 4; ++a) q[a] += kI * c[a] * id;
    out.tail0 = with_center(out.tail0, c);
    out.tail2 = with_center(out.tail2, c);
    for (int a = 0; a < 4; ++a) out.center[a] += c[a];
    return out;
}

double residual(const NahmData& d) {
    static constexpr double w[4] = {4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
    const double h = d.step();
    double worst = 0;
    for (std::size_t i = 4; i + 4 < d.size(); ++i) {
        Quad dt;
        for (int a = 0; a < 4; ++a) {
            dt[a] = CMatrix::Zero(d.k, d.k);
            for (std::size_t m = 1; m <= 4; ++m) dt[a] += w[m - 1] * (d.samples[i + m][a] - d.samples[i - m][a]) / h;
        }
        Quad f = nahm_rhs(d.samples[i]);
        for (int a = 1; a <= 3; ++a) worst = std::max(worst, max_abs(dt[a] - f[a]));
    }
    return worst;
}

double anti_hermitian_defect(const NahmData& d) {
    double worst = 0;
    for (const auto& q : d.samples)
        for (const auto& m : q) worst = std::max(worst, max_abs(m + m.adjoint()));
    return worst;
}

double pole_match_defect(const NahmData& d) {
    double worst = 0;
    for (int a = 0; a < 4; ++a) worst = std::max(worst, max_abs(d.samples.back()[a] - d.tail2[a].eval(-d.delta)));
    return worst;
}

CMatrix lax_matrix(const Quad& t, Complex zeta) {
    return (t[2] + kI * t[3]) + 2.0 * kI * zeta * t[1] + zeta * zeta * (t[2] - kI * t[3]);
}

namespace {

// Faddeev-LeVerrier: coefficients c_1..c_k of det(x - m) = x^k + c_1 x^{k-1} + ...
std::vector<Complex> charpoly_coeffs(const CMatrix& m) {
    const auto k = m.rows();
    std::vector<Complex> c;
    CMatrix mk = CMatrix::Identity(k, k);
    for (Eigen::Index j = 1; j <= k; ++j) {
        CMatrix am = m * mk;
        Complex cj = -am.trace() / static_cast<double>(j);
        c.push_back(cj);
        mk = am + cj * CMatrix::Identity(k, k);
    }
    return c;
}

}  // namespace

DriftReport lax_isospectral(const NahmData& d, const std::vector<Complex>& zetas) {
    DriftReport r;
    r.zetas = zetas;
    r.times = d.grid;
    const std::size_t mid = d.size() / 2;
    for (const auto& z : zetas) {
        auto ref = charpoly_coeffs(lax_matrix(d.samples[mid], z));
        std::vector<double> drift(ref.size(), 0.0), along;
        for (const auto& q : d.samples) {
            auto c = charpoly_coeffs(lax_matrix(q, z));
            double here = 0;
            for (std::size_t j = 0; j < c.size(); ++j) {
                const double dj = std::abs(c[j] - ref[j]);
                drift[j] = std::max(drift[j], dj);
                here = std::max(here, dj);
            }
            along.push_back(here);
        }
        for (double x : drift) r.max_drift = std::max(r.max_drift, x);
        r.drift.push_back(drift);
        r.series.push_back(along);
    }
    return r;
}

double beta_spectrum_drift(const NahmData& d) {
    auto spectrum = [](const Quad& q) {
        Eigen::ComplexEigenSolver<CMatrix> es(q[2] + kI * q[3]);
        std::vector<Complex> ev(es.eigenvalues().begin(), es.eigenvalues().end());
        std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
        return ev;
    };
    auto ref = spectrum(d.samples[d.size() / 2]);
    double worst = 0;
    for (const auto& q : d.samples) {
        auto ev = spectrum(q);
        for (std::size_t j = 0; j < ev.size(); ++j) worst = std::max(worst, std::abs(ev[j] - ref[j]));
    }
    return worst;
}

std::vector<std::array<double, 3>> euler_profiles(const NahmData& d) {
    if (d.k != 2) throw InputError("Euler-top profiles need charge 2");
    auto frame = euler_frame();
    std::vector<std::array<double, 3>> out;
    for (const auto& q : d.samples) {
        std::array<double, 3> f;
        for (int a = 0; a < 3; ++a) {
            CMatrix m = q[a + 1] - kI * d.center[a + 1] * CMatrix::Identity(2, 2);
            f[a] = ((m * frame[a].adjoint()).trace() / (frame[a] * frame[a].adjoint()).trace()).real();
        }
        out.push_back(f);
    }
    return out;
}

}  // namespace bihk::nahm
