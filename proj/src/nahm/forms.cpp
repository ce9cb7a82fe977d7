#include "bihk/nahm/forms.hpp"

#include <cmath>

namespace bihk::nahm {

namespace {

template <class M>
using Q = std::array<M, 4>;

CMatrix comm(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

void require_grid(const NahmData& d, const NahmTangent& u) {
    if (u.samples.size() != d.size()) throw InputError("grid mismatch between tangent and solution");
}

// Simpson on the grid plus series integrals over (0, delta] and [2 - delta, 2).
template <class F>
Complex integrate(const NahmData& d, const NahmTangent& u, const NahmTangent& v, F&& f) {
    require_grid(d, u);
    require_grid(d, v);
    const std::size_t n = d.size() - 1;
    const double h = d.step();
    Complex interior = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        interior += w * Complex(f(d.samples[i], u.samples[i], v.samples[i]));
    }
    interior *= h / 3;
    const Complex left = integrate_series(f(d.tail0, u.tail0, v.tail0), 0.0, d.delta);
    const Complex right = integrate_series(f(d.tail2, u.tail2, v.tail2), -d.delta, 0.0);
    return interior + left + right;
}

template <class M>
M wedge(const Q<M>& u, const Q<M>& v, int a, int b) {
    return M(u[a] * v[b]) - M(v[a] * u[b]);
}

template <class M>
M times(Complex s, const M& m) {
    return M(m * s);
}

struct SigmaIntegrand {
    template <class M>
    auto operator()(const Q<M>& t, const Q<M>& u, const Q<M>& v) const {
        M acc = M(t[1] * (wedge(u, v, 1, 0) - wedge(u, v, 0, 1)));
        for (int i = 2; i <= 3; ++i) acc = acc + M(t[i] * (wedge(u, v, i, 0) - wedge(u, v, 0, i)));
        for (int i = 1; i <= 3; ++i) {
            const int j = i % 3 + 1, k = j % 3 + 1;
            acc = acc + M(t[i] * (wedge(u, v, j, k) - wedge(u, v, k, j)));
        }
        return trace(acc) * Complex(0, -0.25);
    }
};

template <class M>
M phi2(const Q<M>& u, const Q<M>& v) {
    return wedge(u, v, 2, 0) - wedge(u, v, 0, 2) + wedge(u, v, 3, 1) - wedge(u, v, 1, 3);
}
template <class M>
M phi3(const Q<M>& u, const Q<M>& v) {
    return wedge(u, v, 3, 0) - wedge(u, v, 0, 3) + wedge(u, v, 1, 2) - wedge(u, v, 2, 1);
}

struct Part02 {
    template <class M>
    auto operator()(const Q<M>& t, const Q<M>& u, const Q<M>& v) const {
        M beta = t[2] + times(kI, t[3]);
        return trace(M(beta * (phi2(u, v) - times(kI, phi3(u, v))))) * Complex(0, -0.125);
    }
};

struct Part11 {
    template <class M>
    auto operator()(const Q<M>& t, const Q<M>& u, const Q<M>& v) const {
        M w = wedge(u, v, 1, 0) - wedge(u, v, 0, 1) + wedge(u, v, 2, 3) - wedge(u, v, 3, 2);
        return trace(M(t[1] * w)) * Complex(0, -0.25);
    }
};

struct Part20 {
    template <class M>
    auto operator()(const Q<M>& t, const Q<M>& u, const Q<M>& v) const {
        M gamma = t[2] - times(kI, t[3]);
        return trace(M(gamma * (phi2(u, v) + times(kI, phi3(u, v))))) * Complex(0, -0.125);
    }
};

struct BetaIntegrand {
    template <class M>
    auto operator()(const Q<M>& t, const Q<M>& u, const Q<M>& v) const {
        M beta = t[2] + times(kI, t[3]);
        M ub = u[2] + times(kI, u[3]), vb = v[2] + times(kI, v[3]);
        M ua = u[0] - times(kI, u[1]), va = v[0] - times(kI, v[1]);
        M du = M(beta * ub) + M(ub * beta), dv = M(beta * vb) + M(vb * beta);
        return trace(M(du * va) - M(dv * ua)) * Complex(0.5);
    }
};

struct MetricIntegrand {
    template <class M>
    auto operator()(const Q<M>&, const Q<M>& u, const Q<M>& v) const {
        M acc = M(u[0] * v[0]);
        for (int a = 1; a < 4; ++a) acc = acc + M(u[a] * v[a]);
        return trace(acc) * Complex(-1.0);
    }
};

// -tr(dT_a ^ dT_b + dT_c ^ dT_d)
struct PairIntegrand {
    int a, b, c, e;
    template <class M>
    auto operator()(const Q<M>&, const Q<M>& u, const Q<M>& v) const {
        return trace(M(wedge(u, v, a, b) + wedge(u, v, c, e))) * Complex(-1.0);
    }
};

struct HolomorphicIntegrand {
    template <class M>
    auto operator()(const Q<M>&, const Q<M>& u, const Q<M>& v) const {
        M ua = u[0] - times(kI, u[1]), va = v[0] - times(kI, v[1]);
        M ub = u[2] + times(kI, u[3]), vb = v[2] + times(kI, v[3]);
        return trace(M(ua * vb) - M(va * ub)) * Complex(-1.0);
    }
};

template <class M>
Q<M> permute(int a, const Q<M>& t) {
    switch (a) {
        case 1: return {t[1], times(-1.0, t[0]), times(-1.0, t[3]), t[2]};
        case 2: return {times(-1.0, t[2]), times(-1.0, t[3]), t[0], t[1]};
        case 3: return {times(-1.0, t[3]), t[2], times(-1.0, t[1]), t[0]};
        default: throw InputError("complex structure index must be 1, 2 or 3");
    }
}

NahmTangent pair_j_plus_ik(const NahmTangent& u) {
    return apply_structure(2, u) + apply_structure(3, u) * kI;
}

}  // namespace

NahmTangent NahmTangent::operator+(const NahmTangent& o) const {
    if (samples.size() != o.samples.size()) throw InputError("grid mismatch between tangents");
    NahmTangent out = *this;
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (int a = 0; a < 4; ++a) out.samples[i][a] += o.samples[i][a];
    for (int a = 0; a < 4; ++a) {
        out.tail0[a] = tail0[a] + o.tail0[a];
        out.tail2[a] = tail2[a] + o.tail2[a];
    }
    return out;
}

NahmTangent NahmTangent::operator*(Complex s) const {
    NahmTangent out = *this;
    for (auto& q : out.samples)
        for (auto& m : q) m *= s;
    for (int a = 0; a < 4; ++a) {
        out.tail0[a] = tail0[a] * s;
        out.tail2[a] = tail2[a] * s;
    }
    return out;
}

NahmTangent constant_tangent(const NahmData& d, const std::array<Complex, 4>& c) {
    NahmTangent u;
    Quad q;
    for (int a = 0; a < 4; ++a) q[a] = kI * c[a] * CMatrix::Identity(d.k, d.k);
    u.samples.assign(d.size(), q);
    const int hi = d.tail0[0].hi();
    for (int a = 0; a < 4; ++a) u.tail0[a] = u.tail2[a] = constant_series(q[a], hi);
    return u;
}

std::function<NahmData(double)> translation_family(const NahmData& d, const std::array<double, 4>& c) {
    return [d, c](double eps) { return translate(d, {eps * c[0], eps * c[1], eps * c[2], eps * c[3]}); };
}

double linearized_residual(const NahmData& d, const NahmTangent& u) {
    require_grid(d, u);
    static constexpr double w[4] = {4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
    const double h = d.step();
    double worst = 0;
    for (std::size_t i = 4; i + 4 < d.size(); ++i) {
        Quad du;
        for (int a = 0; a < 4; ++a) {
            du[a] = CMatrix::Zero(d.k, d.k);
            for (std::size_t m = 1; m <= 4; ++m) du[a] += w[m - 1] * (u.samples[i + m][a] - u.samples[i - m][a]) / h;
        }
        const Quad& T = d.samples[i];
        const Quad& t = u.samples[i];
        CMatrix r0 = comm(t[0], T[0]) + comm(t[1], T[1]) + comm(t[2], T[2]) + comm(t[3], T[3]);
        worst = std::max(worst, max_abs(du[0] - r0));
        for (int a = 1; a <= 3; ++a) {
            const int b = a % 3 + 1, c = b % 3 + 1;
            CMatrix ra = comm(T[a], t[0]) + comm(t[a], T[0]) + comm(T[b], t[c]) + comm(t[b], T[c]);
            worst = std::max(worst, max_abs(du[a] - ra));
        }
    }
    return worst;
}

NahmTangent tangent_solve(const NahmData& d, const std::function<NahmData(double)>& family, double eps) {
    NahmData plus = family(eps), minus = family(-eps);
    if (plus.size() != d.size() || minus.size() != d.size()) throw InputError("grid mismatch in solution family");
    NahmTangent u;
    u.samples.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        for (int a = 0; a < 4; ++a) u.samples[i][a] = (plus.samples[i][a] - minus.samples[i][a]) / (2 * eps);
    for (int a = 0; a < 4; ++a) {
        u.tail0[a] = (plus.tail0[a] - minus.tail0[a]) * Complex(1 / (2 * eps));
        u.tail2[a] = (plus.tail2[a] - minus.tail2[a]) * Complex(1 / (2 * eps));
    }
    if (linearized_residual(d, u) > 1e-5) throw MathError("family leaves the solution space");
    return u;
}

NahmTangent apply_structure(int a, const NahmTangent& u) {
    NahmTangent out;
    out.samples.reserve(u.samples.size());
    for (const auto& q : u.samples) out.samples.push_back(permute<CMatrix>(a, q));
    out.tail0 = permute<MatrixSeries>(a, u.tail0);
    out.tail2 = permute<MatrixSeries>(a, u.tail2);
    return out;
}

Complex metric_eval(const NahmData& d, const NahmTangent& u, const NahmTangent& v) {
    return integrate(d, u, v, MetricIntegrand{});
}

std::array<Complex, 3> kahler_forms_eval(const NahmData& d, const NahmTangent& u, const NahmTangent& v) {
    return {metric_eval(d, apply_structure(1, u), v), metric_eval(d, apply_structure(2, u), v),
            metric_eval(d, apply_structure(3, u), v)};
}

Complex omega2_explicit(const NahmData& d, const NahmTangent& u, const NahmTangent& v) {
    return integrate(d, u, v, PairIntegrand{0, 2, 1, 3});
}

Complex omega3_explicit(const NahmData& d, const NahmTangent& u, const NahmTangent& v) {
    return integrate(d, u, v, PairIntegrand{0, 3, 2, 1});
}

Complex holomorphic_form(const NahmData& d, const NahmTangent& u, const NahmTangent& v) {
    return integrate(d, u, v, HolomorphicIntegrand{});
}

Complex hyper_poisson_2form(const NahmData& d, const NahmTangent& u, const NahmTangent& v) {
    return integrate(d, u, v, SigmaIntegrand{});
}

TypeSplit hyper_poisson_split(const NahmData& d, const NahmTangent& u, const NahmTangent& v) {
    return {integrate(d, u, v, Part02{}), integrate(d, u, v, Part11{}), integrate(d, u, v, Part20{})};
}

Complex twozero_direct(const NahmData& d, const NahmTangent& u, const NahmTangent& v) {
    return hyper_poisson_2form(d, pair_j_plus_ik(u), pair_j_plus_ik(v));
}

Complex twozero_key(const NahmData& d, const NahmTangent& u, const NahmTangent& v) {
    return integrate(d, pair_j_plus_ik(u), pair_j_plus_ik(v), Part02{});
}

Complex twozero_via_beta(const NahmData& d, const NahmTangent& u, const NahmTangent& v) {
    return integrate(d, u, v, BetaIntegrand{});
}

double potential_F(const NahmData& d) {
    const double c = d.k * (d.k * d.k - 1) / 4.0;
    const std::size_t n = d.size() - 1;
    const double h = d.step();
    auto trsq = [](const Quad& t) {
        Complex s = 0;
        for (int a = 1; a <= 3; ++a) s += (t[a] * t[a]).trace();
        return s;
    };
    Complex interior = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        const double t = d.grid[i];
        interior += w * (trsq(d.samples[i]) + c * (1 / (t * t) + 1 / ((t - 2) * (t - 2))));
    }
    interior *= h / 3;
    auto tail = [&](const std::array<MatrixSeries, 4>& s, double a, double b) {
        ScalarSeries acc = trace(s[1] * s[1]);
        for (int m = 2; m <= 3; ++m) acc = acc + trace(s[m] * s[m]);
        ScalarSeries counter(-2, acc.hi(), Complex(0.0));
        counter.set(-2, c);
        return integrate_series(acc + counter, a, b);
    };
    // the far-pole counterterm is regular on each tail: int (t-2)^-2 over (0, delta] = 1/(2-delta) - 1/2
    const double far = c * (1 / (2 - d.delta) - 0.5);
    Complex total = interior + tail(d.tail0, 0.0, d.delta) + tail(d.tail2, -d.delta, 0.0) + 2 * far;
    return total.real();
}

Complex killing_contraction(const NahmData& d, const NahmTangent& v) {
    return hyper_poisson_2form(d, constant_tangent(d, {1.0, 0.0, 0.0, 0.0}), v);
}

ContractionReport contraction_check(const NahmData& d, double step) {
    ContractionReport r;
    for (int a = 1; a <= 3; ++a) {
        std::array<double, 4> c{};
        c[static_cast<std::size_t>(a)] = 1.0;
        std::array<Complex, 4> cc{};
        cc[static_cast<std::size_t>(a)] = 1.0;
        const double df = (potential_F(translate(d, {step * c[0], step * c[1], step * c[2], step * c[3]})) -
                           potential_F(translate(d, {-step * c[0], -step * c[1], -step * c[2], -step * c[3]}))) /
                          (2 * step);
        const Complex lhs = killing_contraction(d, constant_tangent(d, cc));
        const auto i = static_cast<std::size_t>(a - 1);
        r.lhs[i] = lhs.real();
        r.rhs[i] = -0.25 * df;
        r.residual[i] = std::abs(lhs - r.rhs[i]);
        r.max_residual = std::max(r.max_residual, r.residual[i]);
    }
    return r;
}

}  // namespace bihk::nahm
