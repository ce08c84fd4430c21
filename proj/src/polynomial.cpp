#include "berk/polynomial.hpp"

#include <sstream>

namespace berk {

poly_q::poly_q(std::vector<rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void poly_q::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

poly_q poly_q::constant(const rat& c) { return poly_q(std::vector<rat>{c}); }

poly_q poly_q::monomial(const rat& c, size_t deg) {
    std::vector<rat> v(deg + 1, rat(0));
    v[deg] = c;
    return poly_q(std::move(v));
}

rat poly_q::leading() const {
    if (is_zero()) throw zero_polynomial("leading coefficient of 0");
    return c_.back();
}

poly_q poly_q::operator+(const poly_q& o) const {
    std::vector<rat> v(std::max(c_.size(), o.c_.size()), rat(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return poly_q(std::move(v));
}

poly_q poly_q::operator-() const {
    std::vector<rat> v = c_;
    for (auto& x : v) x = -x;
    return poly_q(std::move(v));
}

poly_q poly_q::operator-(const poly_q& o) const { return *this + (-o); }

poly_q poly_q::operator*(const poly_q& o) const {
    if (is_zero() || o.is_zero()) return poly_q();
    std::vector<rat> v(c_.size() + o.c_.size() - 1, rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j)
            v[i + j] += c_[i] * o.c_[j];
    return poly_q(std::move(v));
}

rat poly_q::eval(const rat& x) const {
    rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

poly_q poly_q::derivative() const {
    if (c_.size() <= 1) return poly_q();
    std::vector<rat> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
    return poly_q(std::move(v));
}

std::pair<poly_q, poly_q> poly_q::divmod(const poly_q& o) const {
    if (o.is_zero()) throw zero_polynomial("division by zero polynomial");
    std::vector<rat> rem = c_;
    std::vector<rat> quo;
    long dq = degree() - o.degree();
    if (dq < 0) return {poly_q(), *this};
    quo.assign(dq + 1, rat(0));
    for (long k = dq; k >= 0; --k) {
        rat lead = (static_cast<size_t>(k + o.degree()) < rem.size())
                       ? rem[k + o.degree()] : rat(0);
        if (lead == 0) continue;
        rat q = lead / o.leading();
        quo[k] = q;
        for (long i = 0; i <= o.degree(); ++i)
            rem[k + i] -= q * o.c_[i];
    }
    return {poly_q(std::move(quo)), poly_q(std::move(rem))};
}

poly_q poly_q::gcd(const poly_q& o) const {
    poly_q a = *this, b = o;
    while (!b.is_zero()) {
        auto [q, r] = a.divmod(b);
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    rat lead = a.leading();
    std::vector<rat> v = a.coeffs();
    for (auto& x : v) x /= lead;
    return poly_q(std::move(v));
}

bool poly_q::separable() const {
    if (is_zero()) return false;
    if (degree() == 0) return true;
    return gcd(derivative()).degree() == 0;
}

long poly_q::t_valuation() const {
    if (is_zero()) throw zero_polynomial("t-valuation of 0");
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return static_cast<long>(i);
    throw error("unreachable");
}

std::string poly_q::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << rational_string(c_[i]) << ")";
        if (i > 0) os << "T^" << i;
    }
    return os.str();
}

poly_q taylor_shift(const poly_q& P, const rat& a) {
    if (P.is_zero() || a == 0) return P;
    // synthetic division by (T - (-a)) repeated: Horner shift
    std::vector<rat> v = P.coeffs();
    size_t n = v.size();
    for (size_t k = 0; k + 1 < n; ++k)
        for (size_t i = n - 1; i >= k + 1; --i)
            v[i - 1] += a * v[i];
    return poly_q(std::move(v));
}

magnitude infinity_norm(const poly_q& P, const base_point& b) {
    magnitude best = magnitude::zero();
    for (auto& c : P.coeffs())
        best = magnitude::max(best, eval_base_seminorm(b, c));
    return best;
}

rat infinity_norm_arch(const poly_q& P) {
    rat best(0);
    for (auto& c : P.coeffs()) {
        rat a = c < 0 ? rat(-c) : c;
        if (a > best) best = a;
    }
    return best;
}

} // namespace berk
