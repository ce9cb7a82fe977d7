#pragma once

#include <complex>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace bihk::symcore {

// Element of Q(i): re + im*i with canonical GMP rationals.
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(long value) : re_(value) {}  // NOLINT implicit by design
    GaussRational(mpq_class re, mpq_class im = 0);
    static GaussRational fraction(long num, long den, long im_num = 0, long im_den = 1);
    static GaussRational unit_i() { return GaussRational(0, 1); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    GaussRational conj() const { return GaussRational(re_, -im_); }
    mpq_class norm2() const { return re_ * re_ + im_ * im_; }
    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    GaussRational& operator+=(const GaussRational& o);
    GaussRational& operator-=(const GaussRational& o);
    GaussRational& operator*=(const GaussRational& o);
    GaussRational& operator/=(const GaussRational& o);

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
    GaussRational operator-() const { return GaussRational(-re_, -im_); }

    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

    // "a/b", "c/d*i" or "a/b+c/d*i"; integers print without denominator.
    std::string to_string() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussRational& g);

// Text form of a canonical rational ("3", "-1/2").
std::string rational_string(const mpq_class& q);

}  // namespace bihk::symcore
