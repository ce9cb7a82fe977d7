#include "bihk/quatlin/quaternion.hpp"

#include <algorithm>
#include <cmath>

#include "bihk/error.hpp"

namespace bihk::quatlin {

double Quaternion::norm() const {
    return std::sqrt(norm2());
}

Quaternion Quaternion::operator*(const Quaternion& o) const {
    return {a * o.a - b * o.b - c * o.c - d * o.d, a * o.b + b * o.a + c * o.d - d * o.c,
            a * o.c - b * o.d + c * o.a + d * o.b, a * o.d + b * o.c - c * o.b + d * o.a};
}

QuatMatrix QuatMatrix::identity(std::size_t n) {
    QuatMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = Quaternion::real(1);
    return m;
}

QuatMatrix QuatMatrix::real_diagonal(const std::vector<double>& d) {
    QuatMatrix m(d.size(), d.size());
    for (std::size_t k = 0; k < d.size(); ++k) m(k, k) = Quaternion::real(d[k]);
    return m;
}

QuatMatrix QuatMatrix::operator+(const QuatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("shape mismatch");
    QuatMatrix out = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = out.data_[k] + o.data_[k];
    return out;
}

QuatMatrix QuatMatrix::operator-(const QuatMatrix& o) const {
    return *this + o * -1.0;
}

QuatMatrix QuatMatrix::operator*(const QuatMatrix& o) const {
    if (cols_ != o.rows_) throw InputError("shape mismatch");
    QuatMatrix out(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < o.cols_; ++c) {
            Quaternion s;
            for (std::size_t k = 0; k < cols_; ++k) s = s + (*this)(r, k) * o(k, c);
            out(r, c) = s;
        }
    return out;
}

QuatMatrix QuatMatrix::operator*(double s) const {
    QuatMatrix out = *this;
    for (auto& q : out.data_) q = q * s;
    return out;
}

QuatMatrix QuatMatrix::adjoint() const {
    QuatMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c).conj();
    return out;
}

double QuatMatrix::max_abs() const {
    double m = 0;
    for (const auto& q : data_) m = std::max(m, q.norm());
    return m;
}

bool QuatMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    const double scale = std::max(1.0, max_abs());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r; c < cols_; ++c)
            if (((*this)(r, c) - (*this)(c, r).conj()).norm() > tol * scale) return false;
    return true;
}

CMatrix quat_embed(const QuatMatrix& m) {
    CMatrix out(static_cast<Eigen::Index>(2 * m.rows()), static_cast<Eigen::Index>(2 * m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const auto& q = m(r, c);
            const auto R = static_cast<Eigen::Index>(2 * r), C = static_cast<Eigen::Index>(2 * c);
            out(R, C) = {q.a, q.b};
            out(R, C + 1) = {q.c, q.d};
            out(R + 1, C) = {-q.c, q.d};
            out(R + 1, C + 1) = {q.a, -q.b};
        }
    return out;
}

namespace {

const Quaternion kBasis[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};

Eigen::Matrix4d left_block(const Quaternion& q) {
    Eigen::Matrix4d m;
    for (int c = 0; c < 4; ++c) {
        Quaternion v = q * kBasis[c];
        m.col(c) << v.a, v.b, v.c, v.d;
    }
    return m;
}

Eigen::Matrix4d right_block(const Quaternion& q) {
    Eigen::Matrix4d m;
    for (int c = 0; c < 4; ++c) {
        Quaternion v = kBasis[c] * q;
        m.col(c) << v.a, v.b, v.c, v.d;
    }
    return m;
}

}  // namespace

RMatrix left_mult_real(const QuatMatrix& m) {
    RMatrix out(static_cast<Eigen::Index>(4 * m.rows()), static_cast<Eigen::Index>(4 * m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out.block<4, 4>(static_cast<Eigen::Index>(4 * r), static_cast<Eigen::Index>(4 * c)) = left_block(m(r, c));
    return out;
}

RMatrix right_mult_real(const Quaternion& q, std::size_t n) {
    RMatrix out = RMatrix::Zero(static_cast<Eigen::Index>(4 * n), static_cast<Eigen::Index>(4 * n));
    Eigen::Matrix4d b = right_block(q);
    for (std::size_t k = 0; k < n; ++k)
        out.block<4, 4>(static_cast<Eigen::Index>(4 * k), static_cast<Eigen::Index>(4 * k)) = b;
    return out;
}

RMatrix complex_structure(int a, std::size_t n) {
    switch (a) {
        case 1: return right_mult_real({0, -1, 0, 0}, n);
        case 2: return right_mult_real({0, 0, 1, 0}, n);
        case 3: return right_mult_real({0, 0, 0, 1}, n);
        default: throw InputError("complex structure index must be 1, 2 or 3");
    }
}

RMatrix complex_structure(const std::array<double, 3>& x, std::size_t n) {
    double len = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (std::abs(len - 1.0) > 1e-12) throw InputError("direction must be a unit vector");
    return x[0] * complex_structure(1, n) + x[1] * complex_structure(2, n) + x[2] * complex_structure(3, n);
}

std::vector<double> hermitian_eigenvalues(const QuatMatrix& m) {
    if (!m.is_hermitian(1e-10)) throw InputError("matrix is not quaternion-Hermitian");
    const std::size_t n = m.rows();
    QuatMatrix h = m;
    auto offnorm = [&] {
        double s = 0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r + 1; c < n; ++c) s += h(r, c).norm2();
        return std::sqrt(s);
    };
    const double total = std::max(m.max_abs(), 1e-300);
    for (int sweep = 0; sweep < 100 && offnorm() > 1e-15 * total; ++sweep) {
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = h(p, q).norm();
                if (mag < 1e-300) continue;
                // phase: scale column q by conj(u) and row q by u, making h(p,q) = |h(p,q)|
                Quaternion u = h(p, q) * (1.0 / mag), uc = u.conj();
                for (std::size_t k = 0; k < n; ++k) h(k, q) = h(k, q) * uc;
                for (std::size_t k = 0; k < n; ++k) h(q, k) = u * h(q, k);
                // real symmetric 2x2 rotation
                const double app = h(p, p).a, aqq = h(q, q).a, apq = h(p, q).a;
                const double theta = 0.5 * std::atan2(2 * apq, aqq - app);
                const double cs = std::cos(theta), sn = std::sin(theta);
                for (std::size_t k = 0; k < n; ++k) {
                    Quaternion hp = h(k, p), hq = h(k, q);
                    h(k, p) = hp * cs - hq * sn;
                    h(k, q) = hp * sn + hq * cs;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    Quaternion hp = h(p, k), hq = h(q, k);
                    h(p, k) = hp * cs - hq * sn;
                    h(q, k) = hp * sn + hq * cs;
                }
                h(p, q) = h(q, p) = Quaternion{};
            }
    }
    std::vector<double> ev;
    for (std::size_t k = 0; k < n; ++k) ev.push_back(h(k, k).a);
    std::sort(ev.begin(), ev.end());
    return ev;
}

double moore_det(const QuatMatrix& m) {
    auto ev = hermitian_eigenvalues(m);
    double sign = 1.0;
    for (double e : ev)
        if (e < 0) sign = -sign;
    Complex d = quat_embed(m).determinant();
    return sign * std::sqrt(std::abs(d.real()));
}

QuatMatrix random_quat_matrix(Rng& rng, std::size_t rows, std::size_t cols, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    QuatMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = {g(rng), g(rng), g(rng), g(rng)};
    return m;
}

QuatMatrix random_hermitian(Rng& rng, std::size_t n, double scale) {
    QuatMatrix a = random_quat_matrix(rng, n, n, scale);
    return (a + a.adjoint()) * 0.5;
}

}  // namespace bihk::quatlin
