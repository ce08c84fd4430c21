#include "berk/magnitude.hpp"

#include <mpfr.h>

#include <algorithm>
#include <sstream>

namespace berk {

long magnitude::default_ceiling_bits = 4096;

namespace {

// strip factors of small primes so canonical forms stay readable
const long kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

void push_integer_factors(std::vector<std::pair<bigint, rat>>& out,
                          bigint n, const rat& e) {
    if (n < 0) n = -n;
    for (long p : kSmallPrimes) {
        if (n == 1) break;
        long k = 0;
        while (n % p == 0) { n /= p; ++k; }
        if (k) out.emplace_back(bigint(p), e * k);
    }
    if (n > 1) out.emplace_back(n, e);
}

} // namespace

void magnitude::insert_base(const bigint& b, const rat& e_in) {
    rat e = e_in;
    e.canonicalize();
    if (e == 0 || b == 1) return;
    auto it = factors_.find(b);
    if (it == factors_.end()) factors_[b] = e;
    else {
        it->second += e;
        if (it->second == 0) factors_.erase(it);
    }
}

/* Factor refinement: rewrite the base set as pairwise coprime integers.
 * Powers of a common gcd are split off and the loop restarts until no
 * pair shares a factor. Bases stay >= 2, exponents nonzero.
 */
void magnitude::refine() {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto i = factors_.begin(); i != factors_.end() && !changed; ++i) {
            auto j = std::next(i);
            for (; j != factors_.end() && !changed; ++j) {
                bigint g;
                mpz_gcd(g.get_mpz_t(), i->first.get_mpz_t(), j->first.get_mpz_t());
                if (g == 1) continue;
                bigint bi = i->first / g;
                bigint bj = j->first / g;
                rat ei = i->second, ej = j->second;
                factors_.erase(j);
                factors_.erase(i);
                insert_base(g, ei + ej);
                insert_base(bi, ei);
                insert_base(bj, ej);
                changed = true;
            }
        }
    }
}

magnitude magnitude::one() {
    magnitude m;
    m.zero_ = false;
    return m;
}

magnitude magnitude::from_rational(const rat& q_in) {
    rat q = q_in;
    q.canonicalize();
    if (q == 0) return zero();
    if (q < 0) throw precondition_error("magnitude from negative rational");
    magnitude m = one();
    std::vector<std::pair<bigint, rat>> fs;
    push_integer_factors(fs, q.get_num(), rat(1));
    push_integer_factors(fs, q.get_den(), rat(-1));
    for (auto& [b, e] : fs) m.insert_base(b, e);
    m.refine();
    return m;
}

magnitude magnitude::pow_of(const rat& base, const rat& expo) {
    if (base <= 0) throw precondition_error("magnitude base must be positive");
    return from_rational(base).pow(expo);
}

std::optional<rat> magnitude::as_rational() const {
    if (zero_) return rat(0);
    rat out(1);
    for (auto& [b, e] : factors_) {
        if (e.get_den() != 1) return std::nullopt;
        if (!e.get_num().fits_slong_p()) return std::nullopt;
        out *= rat_pow(rat(b), e.get_num().get_si());
    }
    return out;
}

magnitude magnitude::operator*(const magnitude& o) const {
    if (zero_ || o.zero_) return zero();
    magnitude m = *this;
    for (auto& [b, e] : o.factors_) m.insert_base(b, e);
    m.refine();
    return m;
}

magnitude magnitude::operator/(const magnitude& o) const {
    if (o.zero_) throw precondition_error("magnitude division by zero");
    if (zero_) return zero();
    magnitude m = *this;
    for (auto& [b, e] : o.factors_) m.insert_base(b, -e);
    m.refine();
    return m;
}

magnitude magnitude::pow(const rat& t_in) const {
    rat t = t_in;
    t.canonicalize();
    if (zero_) {
        if (t <= 0) throw precondition_error("0^t for t <= 0");
        return zero();
    }
    if (t == 0) return one();
    magnitude m = one();
    for (auto& [b, e] : factors_) {
        rat ne = e * t;
        ne.canonicalize();
        m.factors_[b] = ne;
    }
    return m;
}

bool magnitude::operator==(const magnitude& o) const {
    if (zero_ != o.zero_) return false;
    if (zero_ || factors_ == o.factors_) return true;
    // refinement bases are not unique; decide via the refined quotient
    magnitude d = one();
    for (auto& [b, e] : factors_) d.insert_base(b, e);
    for (auto& [b, e] : o.factors_) d.insert_base(b, -e);
    d.refine();
    return d.factors_.empty();
}

namespace {

struct mpfr_guard {
    mpfr_t v;
    explicit mpfr_guard(long prec) { mpfr_init2(v, prec); }
    ~mpfr_guard() { mpfr_clear(v); }
};

// directed-rounding accumulation of sum e_i * ln(b_i) into [lo, hi]
void log_enclosure(const std::map<bigint, rat>& fs, long prec,
                   mpfr_t lo, mpfr_t hi) {
    mpfr_set_zero(lo, 1);
    mpfr_set_zero(hi, 1);
    mpfr_guard lnb_d(prec), lnb_u(prec), term(prec), e(prec);
    for (auto& [b, expo] : fs) {
        mpfr_set_z(lnb_d.v, b.get_mpz_t(), MPFR_RNDD);
        mpfr_log(lnb_d.v, lnb_d.v, MPFR_RNDD);   // ln b >= 0 (b >= 2)
        mpfr_set_z(lnb_u.v, b.get_mpz_t(), MPFR_RNDU);
        mpfr_log(lnb_u.v, lnb_u.v, MPFR_RNDU);
        if (expo > 0) {
            mpfr_set_q(e.v, expo.get_mpq_t(), MPFR_RNDD);
            mpfr_mul(term.v, e.v, lnb_d.v, MPFR_RNDD);
            mpfr_add(lo, lo, term.v, MPFR_RNDD);
            mpfr_set_q(e.v, expo.get_mpq_t(), MPFR_RNDU);
            mpfr_mul(term.v, e.v, lnb_u.v, MPFR_RNDU);
            mpfr_add(hi, hi, term.v, MPFR_RNDU);
        } else {
            mpfr_set_q(e.v, expo.get_mpq_t(), MPFR_RNDD);
            mpfr_mul(term.v, e.v, lnb_u.v, MPFR_RNDD);
            mpfr_add(lo, lo, term.v, MPFR_RNDD);
            mpfr_set_q(e.v, expo.get_mpq_t(), MPFR_RNDU);
            mpfr_mul(term.v, e.v, lnb_d.v, MPFR_RNDU);
            mpfr_add(hi, hi, term.v, MPFR_RNDU);
        }
    }
}

rat rat_from_mpfr(mpfr_srcptr x) {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), x);
    return q;
}

} // namespace

int magnitude::compare_unequal_interval(const magnitude& a, const magnitude& b,
                                        long ceiling_bits) {
    (void)b;
    // a is a refined nonempty product != 1, so log a != 0 and some finite
    // precision resolves its sign
    for (long prec = 64; prec <= ceiling_bits; prec *= 2) {
        mpfr_guard lo(prec), hi(prec);
        log_enclosure(a.factors_, prec, lo.v, hi.v);
        if (mpfr_sgn(lo.v) > 0) return 1;
        if (mpfr_sgn(hi.v) < 0) return -1;
    }
    throw unresolved_comparison("magnitude comparison exceeded precision ceiling");
}

int magnitude::compare(const magnitude& o, long ceiling_bits) const {
    if (ceiling_bits <= 0) ceiling_bits = default_ceiling_bits;
    if (zero_ && o.zero_) return 0;
    if (zero_) return -1;
    if (o.zero_) return 1;
    if (factors_ == o.factors_) return 0;
    // formal quotient, refined pairwise coprime: empty iff the values agree
    magnitude d = one();
    for (auto& [b, e] : factors_) d.insert_base(b, e);
    for (auto& [b, e] : o.factors_) d.insert_base(b, -e);
    d.refine();
    if (d.factors_.empty()) return 0;
    return compare_unequal_interval(d, d, ceiling_bits);
}

magnitude magnitude::max(const magnitude& a, const magnitude& b) {
    return a.compare(b) >= 0 ? a : b;
}

magnitude magnitude::min(const magnitude& a, const magnitude& b) {
    return a.compare(b) <= 0 ? a : b;
}

void magnitude::enclose(rat& lo_out, rat& hi_out, long prec_bits) const {
    if (zero_) { lo_out = 0; hi_out = 0; return; }
    if (auto r = as_rational()) { lo_out = *r; hi_out = *r; return; }
    mpfr_guard lo(prec_bits), hi(prec_bits), v(prec_bits);
    log_enclosure(factors_, prec_bits, lo.v, hi.v);
    mpfr_exp(v.v, lo.v, MPFR_RNDD);
    lo_out = rat_from_mpfr(v.v);
    mpfr_exp(v.v, hi.v, MPFR_RNDU);
    hi_out = rat_from_mpfr(v.v);
    if (lo_out < 0) lo_out = 0;
}

magnitude magnitude::sum_upper(const std::vector<magnitude>& terms, long prec_bits) {
    rat acc = 0;
    for (auto& t : terms) {
        rat lo, hi;
        t.enclose(lo, hi, prec_bits);
        acc += hi;
    }
    if (acc == 0) return zero();
    return from_rational(acc);
}

magnitude magnitude::sum_lower(const std::vector<magnitude>& terms, long prec_bits) {
    rat acc = 0;
    for (auto& t : terms) {
        rat lo, hi;
        t.enclose(lo, hi, prec_bits);
        acc += lo;
    }
    if (acc <= 0) return zero();
    return from_rational(acc);
}

bool magnitude::leq_sum(const magnitude& a, const std::vector<magnitude>& terms,
                        long ceiling_bits) {
    if (ceiling_bits <= 0) ceiling_bits = default_ceiling_bits;
    if (a.is_zero()) return true;
    std::vector<magnitude> live;
    for (auto& t : terms)
        if (!t.is_zero()) live.push_back(t);
    if (live.empty()) return false; // a > 0 against an empty sum
    if (live.size() == 1) return a.leq(live.front(), ceiling_bits);
    // exact path: everything rational
    bool rational = a.as_rational().has_value();
    rat sum = 0;
    if (rational) {
        for (auto& t : live) {
            auto r = t.as_rational();
            if (!r) { rational = false; break; }
            sum += *r;
        }
        if (rational) return *a.as_rational() <= sum;
    }
    for (long prec = 64; prec <= ceiling_bits; prec *= 2) {
        rat a_lo, a_hi;
        a.enclose(a_lo, a_hi, prec);
        rat s_lo = 0, s_hi = 0;
        for (auto& t : live) {
            rat lo, hi;
            t.enclose(lo, hi, prec);
            s_lo += lo;
            s_hi += hi;
        }
        if (a_hi <= s_lo) return true;
        if (a_lo > s_hi) return false;
    }
    throw unresolved_comparison("sum comparison exceeded precision ceiling");
}

std::string magnitude::str() const {
    if (zero_) return "0";
    if (factors_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (auto& [b, e] : factors_) {
        if (!first) os << "*";
        first = false;
        os << b.get_str();
        if (e != 1) os << "^(" << rational_string(e) << ")";
    }
    return os.str();
}

} // namespace berk
