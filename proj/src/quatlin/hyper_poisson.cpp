#include "bihk/quatlin/hyper_poisson.hpp"

#include <Eigen/Dense>

namespace bihk::quatlin {

RMatrix aquaternionic_assemble(const HermQuatTriple& t) {
    const std::size_t n = t.n();
    RMatrix out = RMatrix::Zero(static_cast<Eigen::Index>(4 * n), static_cast<Eigen::Index>(4 * n));
    for (int a = 1; a <= 3; ++a) out += complex_structure(a, n) * left_mult_real(t.a[static_cast<std::size_t>(a - 1)]);
    return out;
}

RMatrix quaternionic_twist(const RMatrix& m, std::size_t n) {
    RMatrix out = RMatrix::Zero(m.rows(), m.cols());
    for (int a = 1; a <= 3; ++a) {
        RMatrix i = complex_structure(a, n);
        out += i * m * i;
    }
    return out;
}

double aquaternionic_defect(const RMatrix& a, std::size_t n) {
    return (quaternionic_twist(a, n) - a).cwiseAbs().maxCoeff();
}

double quaternionic_defect(const RMatrix& b, std::size_t n) {
    return (quaternionic_twist(b, n) + 3.0 * b).cwiseAbs().maxCoeff();
}

RMatrix kaehler_form(int a, std::size_t n) { return complex_structure(a, n).transpose(); }

RMatrix form_inverse(const RMatrix& w) { return w.inverse().transpose(); }

RMatrix linear_hyper_poisson(const HermQuatTriple& t) {
    const std::size_t n = t.n();
    RMatrix out = RMatrix::Zero(static_cast<Eigen::Index>(4 * n), static_cast<Eigen::Index>(4 * n));
    for (int a = 1; a <= 3; ++a)
        out += left_mult_real(t.a[static_cast<std::size_t>(a - 1)]) * form_inverse(kaehler_form(a, n));
    return out;
}

namespace {

CMatrix holomorphic_projector(const RMatrix& i) {
    const auto d = i.rows();
    return 0.5 * (CMatrix::Identity(d, d) - kI * i.cast<Complex>());
}

}  // namespace

CMatrix twozero_part(const RMatrix& bivector, const RMatrix& complex_structure) {
    CMatrix p = holomorphic_projector(complex_structure);
    return p * bivector.cast<Complex>() * p.transpose();
}

CMatrix twozero_closed_form(const HermQuatTriple& t) {
    const std::size_t n = t.n();
    CMatrix p = holomorphic_projector(complex_structure(1, n));
    CMatrix omega = kaehler_form(2, n).cast<Complex>() + kI * kaehler_form(3, n).cast<Complex>();
    // basis of the (1,0)-vectors
    Eigen::ColPivHouseholderQR<CMatrix> qr(p);
    CMatrix q = qr.householderQ();
    CMatrix v = q.leftCols(static_cast<Eigen::Index>(2 * n));
    CMatrix restricted = v.transpose() * omega * v;
    CMatrix inv = v * restricted.inverse().transpose() * v.transpose();
    CMatrix m = left_mult_real(t.a[1]).cast<Complex>() + kI * left_mult_real(t.a[2]).cast<Complex>();
    return 2.0 * m * inv;
}

}  // namespace bihk::quatlin
