#include "qgal/rational.hpp"

#include "qgal/error.hpp"

namespace qgal {

std::string render(const Rat& r)
{
    return r.get_str();
}

Rat parse_rat(const std::string& text)
{
    Rat r;
    if (r.set_str(text, 10) != 0) {
        throw Error(ErrorCode::SyntaxError, "not a rational literal: '" + text + "'");
    }
    r.canonicalize();
    if (r.get_den() == 0) {
        throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + text + "'");
    }
    return r;
}

Rat factorial(int n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rat(f);
}

std::optional<Rat> rat_sqrt(const Rat& r)
{
    if (sgn(r) < 0) {
        return std::nullopt;
    }
    if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) {
        return std::nullopt;
    }
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
    Rat out(n, d);
    out.canonicalize();
    return out;
}

GaussRat GaussRat::inverse() const
{
    Rat norm = re_ * re_ + im_ * im_;
    if (sgn(norm) == 0) {
        throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    }
    return {re_ / norm, -im_ / norm};
}

GaussRat& GaussRat::operator+=(const GaussRat& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o)
{
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rat re = re_ * o.re_ - im_ * o.im_;
    Rat im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussRat& GaussRat::operator/=(const GaussRat& o)
{
    if (sgn(o.im_) == 0) {
        if (sgn(o.re_) == 0) {
            throw Error(ErrorCode::DivisionByZero, "division by zero");
        }
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::string render(const GaussRat& z, bool as_factor)
{
    const bool has_re = sgn(z.re()) != 0;
    const bool has_im = sgn(z.im()) != 0;
    if (!has_im) {
        return render(z.re());
    }
    std::string imag;
    if (z.im() == 1) {
        imag = "i";
    } else if (z.im() == -1) {
        imag = "-i";
    } else {
        imag = render(z.im()) + "*i";
    }
    if (!has_re) {
        return imag;
    }
    std::string s = render(z.re());
    s += (imag[0] == '-') ? imag : "+" + imag;
    return as_factor ? "(" + s + ")" : s;
}

} // namespace qgal
