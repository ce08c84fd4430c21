#include "berk/spectrum.hpp"

#include <algorithm>

namespace berk {

place place::finite(const bigint& p) {
    if (!is_prime(p)) throw precondition_error("place: " + p.get_str() + " is not prime");
    place pl;
    pl.kind = place_kind::finite;
    pl.prime = p;
    return pl;
}

std::string place::str() const {
    switch (kind) {
        case place_kind::finite: return "p:" + prime.get_str();
        case place_kind::infinite: return "inf";
        default: return "triv";
    }
}

base_point::base_point(const place& p, const ext_rat& e) : pl(p), eps(e) {
    if (!eps.infinite && eps.value < 0)
        throw out_of_interval("negative branch exponent");
    if (eps.is_zero()) {
        pl = place::trivial(); // a_sigma^0 is the single central point
        return;
    }
    switch (pl.kind) {
        case place_kind::trivial:
            throw out_of_interval("trivial place carries only eps = 0");
        case place_kind::infinite:
            if (eps.infinite || eps.value > 1)
                throw out_of_interval("archimedean exponent must lie in [0,1]");
            break;
        case place_kind::finite:
            break; // (0, +inf] all legal
    }
}

std::string base_point::str() const {
    if (is_center()) return "a_0";
    std::string e = eps.infinite ? "inf" : rational_string(eps.value);
    return "a_{" + pl.str() + "}^" + e;
}

std::set<bigint> star_compact::denominators() const {
    std::set<bigint> out;
    for (auto& [pl, cap] : caps)
        if (pl.is_finite()) out.insert(pl.prime);
    return out;
}

bool star_compact::branch_is_full(const place& p) const {
    if (caps.count(p)) return false;
    if (p.is_finite() && cap_all_finite) return false;
    return true;
}

ext_rat star_compact::cap_of(const place& p) const {
    auto it = caps.find(p);
    if (it != caps.end()) return ext_rat(it->second);
    if (p.is_finite()) {
        if (cap_all_finite) return ext_rat(*cap_all_finite);
        return ext_rat::inf();
    }
    if (p.is_infinite()) return ext_rat(rat(1));
    return ext_rat(rat(0));
}

void star_compact::validate() const {
    for (auto& [pl, cap] : caps) {
        if (cap <= 0) throw precondition_error("star compact cap must be positive");
        if (pl.is_trivial()) throw precondition_error("cannot cap the central point");
        if (pl.is_infinite() && cap > 1)
            throw out_of_interval("archimedean cap must lie in (0,1]");
    }
    if (cap_all_finite && *cap_all_finite <= 0)
        throw precondition_error("star compact cap must be positive");
}

magnitude eval_base_seminorm(const base_point& x, const rat& a) {
    if (a == 0) return magnitude::zero();
    switch (x.pl.kind) {
        case place_kind::trivial:
            return magnitude::one();
        case place_kind::infinite: {
            rat abs = a < 0 ? rat(-a) : a;
            return magnitude::pow_of(abs, x.eps.value);
        }
        case place_kind::finite: {
            long v = padic_valuation(a, x.pl.prime);
            if (x.eps.infinite) {
                if (v < 0)
                    throw pole_at_point("a_p^inf seminorm undefined: p divides denominator");
                return v > 0 ? magnitude::zero() : magnitude::one();
            }
            // |p|_p = p^{-1}, so |a|_p^eps = p^{-v eps}
            return magnitude::pow_of(rat(x.pl.prime), rat(-v) * x.eps.value);
        }
    }
    throw error("unreachable");
}

namespace {

// prime support of a positive integer, by trial division (operands here
// are explicit numerators/denominators, never cryptographic-size)
std::vector<bigint> prime_support(bigint n) {
    std::vector<bigint> out;
    if (n < 0) n = -n;
    for (bigint p = 2; n > 1; p = (p == 2 ? bigint(3) : p + 2)) {
        if (p * p > n) { out.push_back(n); break; }
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    return out;
}

} // namespace

magnitude sup_norm_on_compact(const star_compact& V, const rat& a) {
    V.validate();
    if (a == 0) return magnitude::zero();

    // a denominator prime whose branch is kept in full makes |a|
    // unbounded along that branch
    std::vector<bigint> den_primes = prime_support(a.get_den());
    for (auto& p : den_primes)
        if (V.branch_is_full(place::finite(p)))
            throw pole_on_compact("denominator prime " + p.get_str() +
                                  " is not inverted on the compact");

    // a_0 and every full ultrametric branch contribute exactly 1
    magnitude best = magnitude::one();
    auto consider = [&](const place& pl, const rat& cap) {
        best = magnitude::max(best, eval_base_seminorm(base_point(pl, ext_rat(cap)), a));
    };
    for (auto& [pl, cap] : V.caps) consider(pl, cap);
    if (V.branch_is_full(place::infinite())) consider(place::infinite(), rat(1));
    if (V.cap_all_finite) {
        // unlisted finite places only matter where v_p(a) != 0
        std::vector<bigint> support = den_primes;
        for (auto& p : prime_support(a.get_num())) support.push_back(p);
        for (auto& p : support) {
            place pl = place::finite(p);
            if (!V.caps.count(pl)) consider(pl, *V.cap_all_finite);
        }
    }
    return best;
}

magnitude segment_sup_norm(const place& pl, const ext_rat& lo, const ext_rat& hi,
                           const rat& a) {
    if (hi < lo) throw precondition_error("segment endpoints out of order");
    if (a == 0) return magnitude::zero();
    // |a|^eps is monotone in eps, so the sup sits at an endpoint
    auto value_at = [&](const ext_rat& e) {
        if (e.is_zero()) return magnitude::one();
        return eval_base_seminorm(base_point(pl, e), a);
    };
    if (pl.is_finite() && hi.infinite) {
        long v = padic_valuation(a, pl.prime);
        if (v < 0) throw pole_on_compact("pole at the branch end a_p^inf");
    }
    return magnitude::max(value_at(lo), value_at(hi));
}

std::vector<branch_segment> path_between(const base_point& x, const base_point& y) {
    std::vector<branch_segment> out;
    if (x == y) {
        out.push_back({x.pl, x.eps, x.eps});
        return out;
    }
    if (x.is_center()) {
        out.push_back({y.pl, ext_rat(rat(0)), y.eps});
        return out;
    }
    if (y.is_center()) {
        out.push_back({x.pl, x.eps, ext_rat(rat(0))});
        return out;
    }
    if (x.pl == y.pl) {
        out.push_back({x.pl, x.eps, y.eps});
        return out;
    }
    out.push_back({x.pl, x.eps, ext_rat(rat(0))});
    out.push_back({y.pl, ext_rat(rat(0)), y.eps});
    return out;
}

base_point scale_point(const base_point& x, const rat& t) {
    if (t <= 0) throw precondition_error("scale factor must be positive");
    if (x.is_center()) return x;
    if (x.eps.infinite) return x; // inf * t = inf on a finite branch
    rat scaled = x.eps.value * t;
    if (x.pl.is_infinite() && scaled > 1)
        throw out_of_interval("scaled archimedean exponent leaves [0,1]");
    return base_point(x.pl, ext_rat(scaled));
}

star_compact neighborhood_base_a0(const std::map<place, rat>& excluded) {
    star_compact V;
    V.caps = excluded;
    V.validate();
    return V;
}

star_compact intersect_neighborhoods(const star_compact& a, const star_compact& b) {
    star_compact out;
    out.caps = a.caps;
    for (auto& [pl, cap] : b.caps) {
        auto it = out.caps.find(pl);
        if (it == out.caps.end()) out.caps[pl] = cap;
        else it->second = std::min(it->second, cap);
    }
    if (a.cap_all_finite && b.cap_all_finite)
        out.cap_all_finite = std::min(*a.cap_all_finite, *b.cap_all_finite);
    else if (a.cap_all_finite)
        out.cap_all_finite = a.cap_all_finite;
    else if (b.cap_all_finite)
        out.cap_all_finite = b.cap_all_finite;
    // a branch capped on one side and defaulted on the other keeps the
    // smaller cap
    if (out.cap_all_finite) {
        for (auto& [pl, cap] : out.caps)
            if (pl.is_finite()) cap = std::min(cap, *out.cap_all_finite);
    }
    out.validate();
    return out;
}

} // namespace berk
