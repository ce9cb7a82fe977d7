#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <vector>

#include "bihk/error.hpp"
#include "bihk/numeric.hpp"

namespace bihk::nahm {

// Truncated Laurent series sum_{j=lo}^{hi} c_j s^j; terms above hi are unknown.
template <class C>
class Laurent {
public:
    Laurent() = default;
    Laurent(int lo, int hi, C zero) : lo_(lo), hi_(hi), zero_(zero), c_(static_cast<std::size_t>(std::max(0, hi - lo + 1)), zero) {}

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    const C& zero() const { return zero_; }
    C coeff(int j) const { return (j < lo_ || j > hi_) ? zero_ : c_[static_cast<std::size_t>(j - lo_)]; }
    void set(int j, const C& v) {
        if (j < lo_ || j > hi_) throw InputError("series power out of range");
        c_[static_cast<std::size_t>(j - lo_)] = v;
    }

    C eval(double s) const {
        C acc = zero_;
        for (int j = lo_; j <= hi_; ++j) acc = acc + coeff(j) * Complex(std::pow(s, j));
        return acc;
    }
    C derivative_at(double s) const {
        C acc = zero_;
        for (int j = lo_; j <= hi_; ++j)
            if (j != 0) acc = acc + coeff(j) * Complex(j * std::pow(s, j - 1));
        return acc;
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        Laurent out(std::min(a.lo_, b.lo_), std::min(a.hi_, b.hi_), a.zero_);
        for (int j = out.lo_; j <= out.hi_; ++j) out.set(j, a.coeff(j) + b.coeff(j));
        return out;
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + b * Complex(-1.0); }
    friend Laurent operator*(const Laurent& a, Complex s) {
        Laurent out = a;
        for (auto& c : out.c_) c = c * s;
        return out;
    }
    friend Laurent operator*(Complex s, const Laurent& a) { return a * s; }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent out(a.lo_ + b.lo_, std::min(a.hi_ + b.lo_, b.hi_ + a.lo_), a.zero_ * b.zero_);
        for (int i = a.lo_; i <= a.hi_; ++i)
            for (int j = b.lo_; j <= b.hi_; ++j)
                if (i + j <= out.hi_) out.set(i + j, out.coeff(i + j) + a.coeff(i) * b.coeff(j));
        return out;
    }

private:
    int lo_ = 0, hi_ = -1;
    C zero_{};
    std::vector<C> c_;
};

using ScalarSeries = Laurent<Complex>;
using MatrixSeries = Laurent<CMatrix>;

inline Complex trace(const CMatrix& m) { return m.trace(); }
ScalarSeries trace(const MatrixSeries& m);

// Integral of the series over the local interval [a, b]. A surviving s^{-1} or
// s^{-2}.. coefficient larger than tol makes the integral divergent.
Complex integrate_series(const ScalarSeries& f, double a, double b, double tol = 1e-9);

MatrixSeries constant_series(const CMatrix& c, int hi);

// su(2) spin (k-1)/2 generators J_a with [J1, J2] = i J3.
std::array<CMatrix, 3> su2_irrep(int k);
// Residues R_a = i J_a at t = 0; they satisfy -R1 = [R2, R3] and cyclic.
std::array<CMatrix, 3> residues(int k, int side);

// T_a(t) = R_a/s + sum_{j=0}^{order} C_a^j s^j with s = t - side and T0 = 0.
struct PoleSeries {
    int k = 1;
    int side = 0;
    int order = 0;
    std::array<MatrixSeries, 4> t;
};

// Solves j C_a - [R_b, C_c] - [C_b, R_c] = sum_{p+q=j-1} [C_b^p, C_c^q] order by order.
// Prescribed coefficients are checked against the recurrence; the rest take the minimal-norm solution.
PoleSeries pole_series(int k, int side, int order, const std::map<int, std::array<CMatrix, 3>>& prescribed = {});
// Dimension of the kernel of the order-j recurrence operator (j = -1 is the residue equation linearized).
std::size_t recurrence_nullity(int k, int side, int j);
// Nahm residual of the truncated series at local coordinate s.
double series_residual(const PoleSeries& p, double s);
// Coefficient of s^{-2} in tr sum_a T_a^2.
Complex casimir_coefficient(const PoleSeries& p);

}  // namespace bihk::nahm
