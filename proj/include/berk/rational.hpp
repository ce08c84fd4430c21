#ifndef BERK_RATIONAL_HPP
#define BERK_RATIONAL_HPP

#include <gmpxx.h>
#include <optional>
#include <string>

#include "berk/errors.hpp"

namespace berk {

using rat = mpq_class;
using bigint = mpz_class;

/* Rationals are gmp mpq_class throughout: gcd-reduced, positive
 * denominator. ext_rat adds the single extra value +inf used for
 * branch exponents.
 */
struct ext_rat {
    bool infinite = false;
    rat value = 0; // meaningful only when !infinite

    ext_rat() = default;
    ext_rat(const rat& v) : infinite(false), value(v) { value.canonicalize(); }
    ext_rat(long v) : infinite(false), value(v) {}
    static ext_rat inf() { ext_rat e; e.infinite = true; return e; }

    bool is_zero() const { return !infinite && value == 0; }
    friend bool operator==(const ext_rat& a, const ext_rat& b) {
        if (a.infinite != b.infinite) return false;
        return a.infinite || a.value == b.value;
    }
    friend bool operator<(const ext_rat& a, const ext_rat& b) {
        if (a.infinite) return false;
        if (b.infinite) return true;
        return a.value < b.value;
    }
    friend bool operator<=(const ext_rat& a, const ext_rat& b) { return a == b || a < b; }
};

// p-adic valuation of a nonzero rational. v_p(0) is an error here; call
// sites handle zero before asking.
long padic_valuation(const rat& a, const bigint& p);

// Deterministic primality check (trial division + deterministic
// Miller-Rabin base set, valid far beyond any prime this kernel meets).
bool is_prime(const bigint& n);

// Parse "num/den" or "num"; throws precondition_error on junk.
rat parse_rational(const std::string& s);
std::string rational_string(const rat& q);

// a^n for integer n (n may be negative; a nonzero then).
rat rat_pow(const rat& a, long n);

} // namespace berk

#endif
