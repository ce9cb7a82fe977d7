#include "bihk/symcore/gauss_rational.hpp"

#include <ostream>

#include "bihk/error.hpp"

namespace bihk::symcore {

GaussRational::GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussRational GaussRational::fraction(long num, long den, long im_num, long im_den) {
    if (den == 0 || im_den == 0) throw InputError("zero denominator");
    return GaussRational(mpq_class(num, den), mpq_class(im_num, im_den));
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
    if (o.is_zero()) throw MathError("division by zero in Q(i)");
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    mpq_class n = o.norm2();
    GaussRational c = o.conj();
    *this *= c;
    re_ /= n;
    im_ /= n;
    return *this;
}

std::string rational_string(const mpq_class& q) {
    return q.get_str();
}

std::string GaussRational::to_string() const {
    if (sgn(im_) == 0) return rational_string(re_);
    std::string imag = (im_ == 1) ? "i" : (im_ == -1) ? "-i" : rational_string(im_) + "*i";
    if (sgn(re_) == 0) return imag;
    if (sgn(im_) > 0) return rational_string(re_) + "+" + imag;
    return rational_string(re_) + imag;
}

std::ostream& operator<<(std::ostream& os, const GaussRational& g) {
    return os << g.to_string();
}

}  // namespace bihk::symcore
