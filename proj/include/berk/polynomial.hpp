#ifndef BERK_POLYNOMIAL_HPP
#define BERK_POLYNOMIAL_HPP

#include <vector>

#include "berk/magnitude.hpp"
#include "berk/rational.hpp"
#include "berk/spectrum.hpp"

namespace berk {

/* Dense univariate polynomial over Q. coeffs[i] is the degree-i
 * coefficient; the zero polynomial has an empty vector. Trailing zeros
 * are trimmed on construction.
 */
class poly_q {
public:
    poly_q() = default;
    explicit poly_q(std::vector<rat> coeffs);
    static poly_q constant(const rat& c);
    static poly_q monomial(const rat& c, size_t deg);

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; } // -1 for 0
    const std::vector<rat>& coeffs() const { return c_; }
    rat coeff(size_t i) const { return i < c_.size() ? c_[i] : rat(0); }
    rat leading() const;
    bool monic() const { return !is_zero() && leading() == 1; }

    poly_q operator+(const poly_q& o) const;
    poly_q operator-(const poly_q& o) const;
    poly_q operator*(const poly_q& o) const;
    poly_q operator-() const;
    bool operator==(const poly_q& o) const { return c_ == o.c_; }

    rat eval(const rat& x) const;
    poly_q derivative() const;

    // euclidean division over Q (o nonzero): *this = q * o + r, deg r < deg o
    std::pair<poly_q, poly_q> divmod(const poly_q& o) const;
    poly_q gcd(const poly_q& o) const; // monic gcd
    bool separable() const;            // gcd with derivative is 1

    // smallest i with c_i != 0 (T-adic valuation); error on zero
    long t_valuation() const;

    std::string str() const;

private:
    std::vector<rat> c_;
    void trim();
};

// Q(T) = P(T + a), exact (Horner shift)
poly_q taylor_shift(const poly_q& P, const rat& a);

// coefficient sup-norm of P at a base point: max_i |c_i|_b
magnitude infinity_norm(const poly_q& P, const base_point& b);

// archimedean coefficient norm max_i |c_i|_inf as an exact rational
rat infinity_norm_arch(const poly_q& P);

} // namespace berk

#endif
