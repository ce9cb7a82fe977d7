#include "bihk/bipoisson/recursion.hpp"

#include <algorithm>
#include <cmath>

#include "bihk/error.hpp"

namespace bihk::bipoisson {

CMatrix recursion_matrix(const CMatrix& p, const CMatrix& q) {
    Eigen::FullPivLU<CMatrix> lu(p.transpose());
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) throw MathError("not symplectic here");
    return lu.solve(q.transpose()).transpose();
}

RecursionOperatorSample recursion_operator_at(const PolyBivector& p, const PolyBivector& q, const Point& point) {
    if (!(p.chart() == q.chart())) throw InputError("chart mismatch between bivectors");
    return {point, recursion_matrix(p.eval(point), q.eval(point))};
}

MultiPoly PfaffPoly::as_poly() const {
    MultiPoly l = MultiPoly::variable(lambda), acc;
    for (const auto& c : coefficients) acc = acc * l + c;
    return acc;
}

std::vector<Complex> PfaffPoly::eval(const Chart& chart, const Point& point) const {
    auto bound = chart.bind(point);
    std::vector<Complex> out;
    for (const auto& c : coefficients) out.push_back(c.eval(bound));
    return out;
}

PfaffPoly pfaffian_polynomial(const PolyBivector& p, const PolyBivector& q, const std::string& lambda) {
    if (!(p.chart() == q.chart())) throw InputError("chart mismatch between bivectors");
    for (const auto& c : p.chart().coords())
        if (c == lambda) throw InputError("pencil variable collides with a chart coordinate");
    MultiPoly pf_p = symcore::pfaffian(p.comp());
    if (pf_p.is_zero()) throw MathError("degenerate pencil");
    const std::size_t n = p.chart().half_dim();
    PolyMatrix pencil = q.comp() - p.comp().scale(MultiPoly::variable(lambda));
    MultiPoly pf = symcore::pfaffian(pencil);
    if (n % 2) pf = -pf;
    auto quotient = pf.divide_exact(pf_p);
    if (!quotient) throw MathError("Pfaffian quotient is not polynomial on this chart");
    auto asc = quotient->coefficients_in(lambda);
    asc.resize(n + 1);
    PfaffPoly out{lambda, {}};
    auto chart_vars = p.chart().coords();
    for (std::size_t k = n + 1; k-- > 0;) {
        MultiPoly c = asc[k].compact();
        if (!c.used_vars().empty()) {
            auto sorted = chart_vars;
            std::sort(sorted.begin(), sorted.end());
            c = c.with_vars(sorted);
        }
        out.coefficients.push_back(c);
    }
    if (out.coefficients.front() != MultiPoly(1)) throw MathError("Pfaffian polynomial is not monic");
    return out;
}

std::vector<Complex> pfaffian_polynomial_at(const CMatrix& p, const CMatrix& q) {
    const Eigen::Index dim = p.rows();
    if (dim % 2 || p.cols() != dim || q.rows() != dim || q.cols() != dim)
        throw InputError("pencil matrices must be even and square");
    const std::size_t n = static_cast<std::size_t>(dim / 2);
    Complex pf_p = pfaffian(p);
    if (std::abs(pf_p) < 1e-300) throw MathError("degenerate pencil");
    // mu has degree n; sample on a circle enclosing the spectrum and invert the DFT
    const double radius = std::max(1.0, recursion_matrix(p, q).cwiseAbs().rowwise().sum().maxCoeff());
    const std::size_t m = n + 1;
    std::vector<Complex> nodes(m), vals(m);
    for (std::size_t k = 0; k < m; ++k) {
        nodes[k] = radius * std::polar(1.0, 2 * M_PI * static_cast<double>(k) / static_cast<double>(m));
        Complex pf = pfaffian(CMatrix(q - nodes[k] * p));
        vals[k] = (n % 2 ? -pf : pf) / pf_p;
    }
    std::vector<Complex> desc(m);
    for (std::size_t j = 0; j < m; ++j) {
        Complex s = 0;
        for (std::size_t k = 0; k < m; ++k) s += vals[k] * std::pow(nodes[k], -static_cast<double>(j));
        desc[n - j] = s / static_cast<double>(m);
    }
    return desc;
}

bool chi_equals_mu_squared(const PolyBivector& p, const PolyBivector& q, const PfaffPoly& mu) {
    MultiPoly l = MultiPoly::variable(mu.lambda);
    MultiPoly mu2 = mu.as_poly() * mu.as_poly();
    MultiPoly lhs = symcore::determinant(p.comp().scale(l) - q.comp());
    if (lhs != mu2 * symcore::determinant(p.comp())) return false;
    if (p.comp().is_constant()) {
        PolyMatrix pc = p.comp();
        MultiPoly det = symcore::determinant(pc);
        PolyMatrix adj = symcore::adjugate(pc);
        PolyMatrix r = (q.comp() * adj).scale(MultiPoly(GaussRational(1) / det.constant_term()));
        if (symcore::charpoly(r, mu.lambda) != mu2) return false;
    }
    return true;
}

bool minimal_polynomial_check(const CMatrix& r, std::span<const Complex> mu_desc, double tol) {
    if (mu_desc.empty() || std::abs(mu_desc[0] - Complex(1.0)) > 1e-12) throw InputError("mu must be monic");
    const double scale = std::pow(std::max(1.0, max_abs(r)), static_cast<double>(mu_desc.size() - 1));
    if (max_abs(matrix_polynomial(mu_desc, r)) > tol * scale) return false;
    auto roots = poly_roots(mu_desc);
    std::vector<Complex> distinct;
    for (const auto& z : roots)
        if (std::none_of(distinct.begin(), distinct.end(),
                         [&](Complex w) { return std::abs(w - z) <= 1e-6 * std::max(1.0, std::abs(z)); }))
            distinct.push_back(z);
    for (const auto& z : distinct) {
        // synthetic division by (lambda - z)
        std::vector<Complex> quot;
        Complex acc = 0;
        for (std::size_t k = 0; k + 1 < mu_desc.size(); ++k) {
            acc = acc * z + mu_desc[k];
            quot.push_back(acc);
        }
        if (max_abs(matrix_polynomial(quot, r)) <= tol * scale) return false;
    }
    return true;
}

double NijenhuisTensor::max_abs() const {
    double m = 0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

NijenhuisTensor nijenhuis_tensor(const EndomorphismField& field, const CVector& point, double step) {
    const std::size_t n = static_cast<std::size_t>(point.size());
    CMatrix r = field(point);
    std::vector<CMatrix> d(n);  // d[l](k,b) = d_l R^k_b
    for (std::size_t l = 0; l < n; ++l) {
        CVector xp = point, xm = point;
        xp(static_cast<Eigen::Index>(l)) += step;
        xm(static_cast<Eigen::Index>(l)) -= step;
        d[l] = (field(xp) - field(xm)) / (2 * step);
    }
    NijenhuisTensor t(n);
    auto R = [&](std::size_t a, std::size_t b) { return r(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)); };
    auto D = [&](std::size_t l, std::size_t a, std::size_t b) {
        return d[l](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    };
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                Complex s = 0;
                for (std::size_t l = 0; l < n; ++l) {
                    s += R(l, a) * D(l, k, b) - R(l, b) * D(l, k, a);
                    s += R(k, l) * (D(b, l, a) - D(a, l, b));
                }
                t(k, a, b) = s;
            }
    return t;
}

NijenhuisTensor nijenhuis_tensor(const PolyBivector& p, const PolyBivector& q, const Point& point, double step) {
    if (!(p.chart() == q.chart())) throw InputError("chart mismatch between bivectors");
    auto field = [&](const CVector& x) {
        Point pt(x.data(), x.data() + x.size());
        return recursion_matrix(p.eval(pt), q.eval(pt));
    };
    CVector x = Eigen::Map<const CVector>(point.data(), static_cast<Eigen::Index>(point.size()));
    return nijenhuis_tensor(field, x, step);
}

PolyBivector magri_rho(const PolyBivector& p, const PolyBivector& q, std::span<const GaussRational> rho) {
    if (!(p.chart() == q.chart())) throw InputError("chart mismatch between bivectors");
    MultiPoly det = symcore::determinant(p.comp());
    if (det.is_zero()) throw MathError("degenerate pencil");
    const std::size_t dim = p.dim();
    std::size_t deg = rho.size();
    while (deg > 0 && rho[deg - 1].is_zero()) --deg;
    if (deg == 0) return PolyBivector::zero(p.chart());
    deg -= 1;
    // rho(R) P = sum_k r_k (Q adj P)^k P det^{deg-k} / det^deg
    PolyMatrix qadj = q.comp() * symcore::adjugate(p.comp());
    PolyMatrix power = PolyMatrix::identity(dim), numer(dim, dim);
    std::vector<MultiPoly> det_pow{MultiPoly(1)};
    for (std::size_t k = 1; k <= deg; ++k) det_pow.push_back(det_pow.back() * det);
    for (std::size_t k = 0; k <= deg; ++k) {
        if (!rho[k].is_zero()) numer = numer + (power * p.comp()).scale(det_pow[deg - k].scale(rho[k]));
        if (k < deg) power = power * qadj;
    }
    PolyMatrix out(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            auto quot = numer(r, c).divide_exact(det_pow[deg]);
            if (!quot) throw MathError("rho(R) leaves polynomial class");
            out(r, c) = quot->compact();
        }
    return PolyBivector(p.chart(), std::move(out));
}

std::size_t degeneracy_rank(const CMatrix& p, const CMatrix& q, Complex lambda0, double rel_tol) {
    CMatrix m = q - lambda0 * p;
    const double n = static_cast<double>(p.rows() / 2);
    const double scale = std::pow(std::max({1.0, max_abs(p), max_abs(q), max_abs(m)}), n);
    if (std::abs(pfaffian(m)) > 1e-8 * scale) throw MathError("point is not on the degeneracy locus");
    return numeric_rank(m, rel_tol);
}

std::size_t degeneracy_rank(const PolyBivector& p, const PolyBivector& q, Complex lambda0, const Point& point,
                            double rel_tol) {
    if (!(p.chart() == q.chart())) throw InputError("chart mismatch between bivectors");
    return degeneracy_rank(p.eval(point), q.eval(point), lambda0, rel_tol);
}

}  // namespace bihk::bipoisson
