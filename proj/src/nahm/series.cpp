#include "bihk/nahm/series.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace bihk::nahm {

ScalarSeries trace(const MatrixSeries& m) {
    ScalarSeries out(m.lo(), m.hi(), Complex(0.0));
    for (int j = m.lo(); j <= m.hi(); ++j) out.set(j, m.coeff(j).trace());
    return out;
}

Complex integrate_series(const ScalarSeries& f, double a, double b, double tol) {
    Complex acc = 0;
    for (int j = f.lo(); j <= f.hi(); ++j) {
        const Complex c = f.coeff(j);
        if (j < 0) {
            if (std::abs(c) > tol) throw MathError("non-integrable tail: s^" + std::to_string(j) + " term survives");
            continue;
        }
        acc += c * (std::pow(b, j + 1) - std::pow(a, j + 1)) / static_cast<double>(j + 1);
    }
    return acc;
}

MatrixSeries constant_series(const CMatrix& c, int hi) {
    MatrixSeries s(0, hi, CMatrix::Zero(c.rows(), c.cols()));
    s.set(0, c);
    return s;
}

std::array<CMatrix, 3> su2_irrep(int k) {
    if (k < 1) throw InputError("charge must be positive");
    const double j = (k - 1) / 2.0;
    CMatrix jp = CMatrix::Zero(k, k), j3 = CMatrix::Zero(k, k);
    for (int r = 0; r < k; ++r) {
        const double m = j - r;
        j3(r, r) = m;
        if (r > 0) jp(r - 1, r) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    CMatrix jm = jp.adjoint();
    return {(jp + jm) / 2.0, (jp - jm) / Complex(0, 2), j3};
}

std::array<CMatrix, 3> residues(int k, int side) {
    auto j = su2_irrep(k);
    std::array<CMatrix, 3> r{kI * j[0], kI * j[1], kI * j[2]};
    if (side == 2) {
        r[1] = -r[1];
        r[2] = -r[2];
    } else if (side != 0) {
        throw InputError("pole side must be 0 or 2");
    }
    return r;
}

namespace {

CMatrix comm(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

// Matrix of C -> j C_a - [R_b, C_c] - [C_b, R_c] on (gl_k)^3, column-major vectorization.
CMatrix recurrence_operator(const std::array<CMatrix, 3>& r, int j) {
    const Eigen::Index k = r[0].rows(), kk = k * k;
    CMatrix op = CMatrix::Zero(3 * kk, 3 * kk);
    for (int slot = 0; slot < 3; ++slot)
        for (Eigen::Index e = 0; e < kk; ++e) {
            std::array<CMatrix, 3> c{CMatrix::Zero(k, k), CMatrix::Zero(k, k), CMatrix::Zero(k, k)};
            c[static_cast<std::size_t>(slot)](e % k, e / k) = 1.0;
            for (int a = 0; a < 3; ++a) {
                const int b = (a + 1) % 3, cc = (a + 2) % 3;
                CMatrix out = static_cast<double>(j) * c[a] - comm(r[b], c[cc]) - comm(c[b], r[cc]);
                op.block(a * kk, slot * kk + e, kk, 1) = out.reshaped();
            }
        }
    return op;
}

}  // namespace

std::size_t recurrence_nullity(int k, int side, int j) {
    CMatrix op = recurrence_operator(residues(k, side), j);
    return static_cast<std::size_t>(op.cols()) - numeric_rank(op, 1e-10);
}

PoleSeries pole_series(int k, int side, int order, const std::map<int, std::array<CMatrix, 3>>& prescribed) {
    if (order < 0 || order > 8) throw InputError("series order must lie in 0..8");
    auto r = residues(k, side);
    const Eigen::Index kk = static_cast<Eigen::Index>(k) * k;
    PoleSeries out{k, side, order, {}};
    const CMatrix zero = CMatrix::Zero(k, k);
    out.t[0] = MatrixSeries(-1, order, zero);
    for (int a = 0; a < 3; ++a) {
        out.t[static_cast<std::size_t>(a + 1)] = MatrixSeries(-1, order, zero);
        out.t[static_cast<std::size_t>(a + 1)].set(-1, r[static_cast<std::size_t>(a)]);
    }
    std::vector<std::array<CMatrix, 3>> c;
    for (int j = 0; j <= order; ++j) {
        Eigen::VectorXcd rhs(3 * kk);
        for (int a = 0; a < 3; ++a) {
            const int b = (a + 1) % 3, cc = (a + 2) % 3;
            CMatrix s = zero;
            for (int p = 0; p <= j - 1; ++p) s += comm(c[static_cast<std::size_t>(p)][b], c[static_cast<std::size_t>(j - 1 - p)][cc]);
            rhs.segment(a * kk, kk) = s.reshaped();
        }
        CMatrix op = recurrence_operator(r, j);
        Eigen::VectorXcd x;
        const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
        if (auto it = prescribed.find(j); it != prescribed.end()) {
            x.resize(3 * kk);
            for (int a = 0; a < 3; ++a) x.segment(a * kk, kk) = it->second[static_cast<std::size_t>(a)].reshaped();
            if ((op * x - rhs).cwiseAbs().maxCoeff() > 1e-10 * scale)
                throw MathError("inconsistent free coefficients at order " + std::to_string(j));
        } else {
            x = op.completeOrthogonalDecomposition().solve(rhs);
            if ((op * x - rhs).cwiseAbs().maxCoeff() > 1e-10 * scale)
                throw MathError("pole recursion has no solution at order " + std::to_string(j));
        }
        std::array<CMatrix, 3> cj;
        for (int a = 0; a < 3; ++a) {
            cj[static_cast<std::size_t>(a)] = x.segment(a * kk, kk).reshaped(k, k);
            out.t[static_cast<std::size_t>(a + 1)].set(j, cj[static_cast<std::size_t>(a)]);
        }
        c.push_back(cj);
    }
    return out;
}

double series_residual(const PoleSeries& p, double s) {
    std::array<CMatrix, 4> t, dt;
    for (int a = 0; a < 4; ++a) {
        t[a] = p.t[a].eval(s);
        dt[a] = p.t[a].derivative_at(s);
    }
    double worst = 0;
    for (int a = 1; a <= 3; ++a) {
        const int b = a % 3 + 1, c = b % 3 + 1;
        worst = std::max(worst, max_abs(dt[a] - comm(t[a], t[0]) - comm(t[b], t[c])));
    }
    return worst;
}

Complex casimir_coefficient(const PoleSeries& p) {
    ScalarSeries acc(-2, 0, Complex(0.0));
    for (int a = 1; a <= 3; ++a) acc = acc + trace(p.t[a] * p.t[a]);
    return acc.coeff(-2);
}

}  // namespace bihk::nahm
