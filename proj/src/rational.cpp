#include "berk/rational.hpp"

#include <cctype>

namespace berk {

long padic_valuation(const rat& a, const bigint& p) {
    if (a == 0) throw precondition_error("padic_valuation: zero argument");
    long v = 0;
    bigint n = a.get_num();
    bigint d = a.get_den();
    if (n < 0) n = -n;
    bigint q, r;
    while (true) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        n = q;
        ++v;
    }
    while (true) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        d = q;
        --v;
    }
    return v;
}

namespace {

bool miller_rabin_witness(const bigint& n, const bigint& a) {
    if (a % n == 0) return false;
    bigint d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    bigint x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return false;
    for (unsigned long i = 0; i + 1 < s; ++i) {
        mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
        if (x == n - 1) return false;
    }
    return true; // composite witness found
}

} // namespace

bool is_prime(const bigint& n) {
    if (n < 2) return false;
    static const long small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (long p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // Deterministic for n < 3.3e24 with this base set; inputs here are
    // denominators of explicit rationals, far below that.
    for (long a : small)
        if (miller_rabin_witness(n, bigint(a))) return false;
    return true;
}

rat parse_rational(const std::string& s) {
    if (s.empty()) throw precondition_error("empty rational literal");
    for (char c : s)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            throw precondition_error("bad rational literal: " + s);
    rat q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw precondition_error("bad rational literal: " + s);
    if (q.get_den() == 0) throw precondition_error("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string rational_string(const rat& q_in) {
    rat q = q_in;
    q.canonicalize();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

rat rat_pow(const rat& a, long n) {
    if (n == 0) return rat(1);
    if (a == 0) {
        if (n < 0) throw precondition_error("rat_pow: 0 to negative power");
        return rat(0);
    }
    rat base = n < 0 ? rat(1) / a : a;
    unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    rat out(1);
    while (e) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

} // namespace berk
