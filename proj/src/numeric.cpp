#include "bihk/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "bihk/error.hpp"

namespace bihk {

Complex pfaffian(CMatrix a) {
    const Eigen::Index n = a.rows();
    if (n != a.cols() || n % 2) throw InputError("pfaffian needs an even square matrix");
    Complex pf = 1.0;
    for (Eigen::Index k = 0; k + 1 < n; k += 2) {
        Eigen::Index kp;
        a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&kp);
        kp += k + 1;
        if (kp != k + 1) {
            a.row(k + 1).swap(a.row(kp));
            a.col(k + 1).swap(a.col(kp));
            pf = -pf;
        }
        Complex piv = a(k + 1, k);
        if (piv == Complex(0.0)) return 0.0;
        pf *= a(k, k + 1);
        if (k + 2 < n) {
            CVector tau = a.col(k).tail(n - k - 2) / piv;
            const Eigen::Index m = n - k - 2;
            // congruence by the elimination matrix Id - tau e_{k+1}^T on the trailing block
            CVector colk1 = a.col(k + 1).tail(m);
            a.bottomRightCorner(m, m) += tau * colk1.transpose() - colk1 * tau.transpose();
        }
    }
    return pf;
}

double pfaffian(const RMatrix& a) {
    return pfaffian(CMatrix(a.cast<Complex>())).real();
}

std::size_t numeric_rank(const CMatrix& m, double rel_tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    std::size_t r = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
        if (s(k) > rel_tol * s(0)) ++r;
    return r;
}

RMatrix standard_symplectic(std::size_t n) {
    RMatrix j = RMatrix::Zero(2 * n, 2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        j(2 * k, 2 * k + 1) = 1.0;
        j(2 * k + 1, 2 * k) = -1.0;
    }
    return j;
}

Complex horner(std::span<const Complex> desc, Complex x) {
    Complex acc = 0.0;
    for (const auto& c : desc) acc = acc * x + c;
    return acc;
}

std::vector<Complex> poly_derivative(std::span<const Complex> desc) {
    std::vector<Complex> d;
    const std::size_t deg = desc.empty() ? 0 : desc.size() - 1;
    for (std::size_t k = 0; k < deg; ++k) d.push_back(desc[k] * static_cast<double>(deg - k));
    return d;
}

std::vector<Complex> poly_mul(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Complex> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<Complex> poly_from_roots(std::span<const Complex> roots) {
    std::vector<Complex> p{1.0};
    for (const auto& r : roots) {
        Complex lin[2] = {1.0, -r};
        p = poly_mul(p, lin);
    }
    return p;
}

std::vector<Complex> poly_roots(std::span<const Complex> monic_desc) {
    if (monic_desc.empty()) throw InputError("empty polynomial");
    const std::size_t n = monic_desc.size() - 1;
    if (n == 0) return {};
    Complex lead = monic_desc[0];
    if (lead == Complex(0.0)) throw InputError("leading coefficient is zero");
    CMatrix comp = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) comp(0, static_cast<Eigen::Index>(k)) = -monic_desc[k + 1] / lead;
    for (std::size_t k = 1; k < n; ++k) comp(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = 1.0;
    Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
    std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
    auto deriv = poly_derivative(monic_desc);
    for (auto& r : roots) {
        double res = std::abs(horner(monic_desc, r));
        for (int it = 0; it < 3 && res > 0.0; ++it) {
            Complex d = horner(deriv, r);
            if (std::abs(d) == 0.0) break;
            Complex next = r - horner(monic_desc, r) / d;
            double next_res = std::abs(horner(monic_desc, next));
            if (!(next_res < res)) break;
            r = next;
            res = next_res;
        }
    }
    return roots;
}

CMatrix matrix_polynomial(std::span<const Complex> desc, const CMatrix& m) {
    CMatrix acc = CMatrix::Zero(m.rows(), m.cols());
    CMatrix id = CMatrix::Identity(m.rows(), m.cols());
    for (const auto& c : desc) acc = acc * m + c * id;
    return acc;
}

double max_abs(const CMatrix& m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Complex uniform_complex(Rng& rng, double radius) {
    return {uniform(rng, -radius, radius), uniform(rng, -radius, radius)};
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace bihk
