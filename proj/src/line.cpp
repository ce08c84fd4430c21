#include "berk/line.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace berk {

magnitude ball_radius_to_unit_scale(const base_point& b, const rat& r_scaled) {
    if (b.is_center()) return magnitude::from_rational(r_scaled);
    if (b.eps.infinite || b.eps.value == 0)
        throw illegal_point("radius rescaling needs a finite positive exponent");
    return magnitude::pow_of(r_scaled, rat(1) / b.eps.value);
}

magnitude ball_radius_from_unit_scale(const base_point& b, const magnitude& r_plain) {
    if (b.is_center()) return r_plain;
    if (b.eps.infinite || b.eps.value == 0)
        throw illegal_point("radius rescaling needs a finite positive exponent");
    return r_plain.pow(b.eps.value);
}

namespace {

void check_point_legal(const base_point& b, const fiber_point& x) {
    if (x.k == fiber_point::kind::arch) {
        if (!b.pl.is_infinite())
            throw illegal_point("archimedean coordinate over a non-archimedean base");
    } else {
        if (b.pl.is_infinite())
            throw illegal_point("ultrametric fiber point over an archimedean base");
    }
    if (b.pl.is_finite() && b.eps.infinite) {
        if (x.k != fiber_point::kind::rigid)
            throw illegal_point("only rigid points over a_p^inf");
    }
}

} // namespace

magnitude eval_line_seminorm(const base_point& b, const fiber_point& x, const poly_q& P) {
    check_point_legal(b, x);
    if (P.is_zero()) return magnitude::zero();
    switch (x.k) {
        case fiber_point::kind::rigid:
            return eval_base_seminorm(b, P.eval(x.center));
        case fiber_point::kind::ball: {
            // Gauss point eta_{a,r}: max_i |c_i|_b r^i, radius eps-scaled
            poly_q Q = taylor_shift(P, x.center);
            magnitude best = magnitude::zero();
            for (long i = 0; i <= Q.degree(); ++i) {
                rat c = Q.coeff(i);
                if (c == 0) continue;
                magnitude term = eval_base_seminorm(b, c) *
                                 magnitude::pow_of(x.radius, rat(i));
                best = magnitude::max(best, term);
            }
            return best;
        }
        case fiber_point::kind::arch: {
            // |P(z)|^eps with z = re + i im: exact via |P(z)|^2 rational
            rat re(0), im(0);
            // Horner in exact complex rational arithmetic
            for (long i = P.degree(); i >= 0; --i) {
                rat nre = re * x.re - im * x.im + P.coeff(i);
                rat nim = re * x.im + im * x.re;
                re = nre;
                im = nim;
            }
            rat sq = re * re + im * im;
            if (sq == 0) return magnitude::zero();
            return magnitude::pow_of(sq, b.eps.value / 2);
        }
    }
    throw error("unreachable");
}

magnitude gauss_section_eval(const base_point& b, const rat& r, const poly_q& P) {
    if (r <= 0) throw precondition_error("gauss section radius must be positive");
    if (P.is_zero()) return magnitude::zero();
    if (b.ultrametric()) {
        // max_i |a_i|_b r^i; defined across the whole ultrametric part,
        // including a_p^inf and the trivial point
        magnitude best = magnitude::zero();
        for (long i = 0; i <= P.degree(); ++i) {
            rat c = P.coeff(i);
            if (c == 0) continue;
            best = magnitude::max(best, eval_base_seminorm(b, c) *
                                            magnitude::pow_of(r, rat(i)));
        }
        return best;
    }
    // archimedean: sigma_r(b) is the real coordinate r^{1/eps}
    if (b.eps.infinite || b.eps.value == 0)
        throw illegal_point("gauss section needs a positive finite exponent");
    rat inv_eps = rat(1) / b.eps.value;
    magnitude coord = magnitude::pow_of(r, inv_eps);
    if (auto c = coord.as_rational()) {
        rat val = P.eval(*c);
        if (val == 0) return magnitude::zero();
        rat a = val < 0 ? rat(-val) : val;
        return magnitude::pow_of(a, b.eps.value);
    }
    if (P.degree() >= 0 && P.coeffs().size() - std::count(P.coeffs().begin(),
                                                          P.coeffs().end(), rat(0)) == 1) {
        // monomial a T^i: |a|^eps r^i exactly
        long i = P.degree();
        while (P.coeff(i) == 0) --i;
        rat a = P.coeff(i) < 0 ? rat(-P.coeff(i)) : P.coeff(i);
        return magnitude::pow_of(a, b.eps.value) * magnitude::pow_of(r, rat(i));
    }
    // irrational coordinate, general P: certified upper bound (outward
    // interval Horner), usable in one-sided inequalities only
    for (long prec = 128; prec <= magnitude::default_ceiling_bits; prec *= 2) {
        rat c_lo, c_hi;
        coord.enclose(c_lo, c_hi, prec);
        rat lo(0), hi(0);
        for (long i = P.degree(); i >= 0; --i) {
            rat cands[4] = {lo * c_lo, lo * c_hi, hi * c_lo, hi * c_hi};
            rat nlo = cands[0], nhi = cands[0];
            for (auto& v : cands) { nlo = std::min(nlo, v); nhi = std::max(nhi, v); }
            lo = nlo + P.coeff(i);
            hi = nhi + P.coeff(i);
        }
        rat mag_hi = std::max(hi < 0 ? rat(-hi) : hi, lo < 0 ? rat(-lo) : lo);
        if (lo > 0 || hi < 0 || (lo == 0 && hi == 0) || prec * 2 > magnitude::default_ceiling_bits) {
            if (mag_hi == 0) return magnitude::zero();
            return magnitude::pow_of(mag_hi, b.eps.value);
        }
    }
    throw unresolved_comparison("gauss section evaluation exceeded precision ceiling");
}

std::vector<root_radius> newton_root_radii(const poly_q& P, const bigint& p) {
    if (P.is_zero()) throw zero_polynomial("newton_root_radii of 0");
    if (!is_prime(p)) throw precondition_error("newton_root_radii: p must be prime");
    long v = P.t_valuation();
    long d = P.degree();
    std::vector<root_radius> out;
    if (v > 0) out.push_back({magnitude::zero(), v, true});
    if (d == v) return out; // monomial: all roots at 0 (degenerate radii)

    // lower convex hull of (i, v_p(a_i)) from i = v to d
    struct pt { long i; rat val; };
    std::vector<pt> pts;
    for (long i = v; i <= d; ++i) {
        rat c = P.coeff(i);
        if (c == 0) continue;
        pts.push_back({i, rat(padic_valuation(c, p))});
    }
    std::vector<pt> hull;
    for (auto& q : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // keep hull strictly lower-convex: slope(a,b) < slope(b,q);
            // collinear interior points merge into one segment
            if ((b.val - a.val) * (q.i - b.i) >= (q.val - b.val) * (b.i - a.i))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(q);
    }
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        rat slope = (hull[k + 1].val - hull[k].val) / rat(hull[k + 1].i - hull[k].i);
        long mult = hull[k + 1].i - hull[k].i;
        // segment of slope m carries mult roots with |root| = p^{m}
        out.push_back({magnitude::pow_of(rat(p), slope), mult, false});
    }
    return out;
}

sigma_rho_data sigma_rho_bound(const poly_q& P, const base_point& b,
                               const rat& s, long degree_bound) {
    if (!b.pl.is_finite())
        throw precondition_error("sigma_rho_bound lives over a finite-place fiber");
    if (s <= 0) throw precondition_error("sigma_rho_bound: s must be positive");
    long d = P.degree();
    if (d < 1) throw degenerate_polynomial("sigma_rho_bound needs degree >= 1");
    bool pure_power = true;
    for (long i = 0; i < d; ++i)
        if (P.coeff(i) != 0) { pure_power = false; break; }
    if (pure_power)
        throw degenerate_polynomial("P = c T^d has sigma undefined");

    // norms in the eps = 1 metric of Q_p (radii are computed there)
    base_point unit(b.pl, ext_rat(rat(1)));
    rat lead = P.leading();
    magnitude sigma = magnitude::zero();
    for (long i = 0; i < d; ++i) {
        rat c = P.coeff(i);
        if (c == 0) continue;
        magnitude m = eval_base_seminorm(unit, c / lead).pow(rat(1) / rat(d - i));
        sigma = magnitude::max(sigma, m);
    }
    magnitude srho = magnitude::from_rational(s) * sigma.pow(rat(1 - d));
    magnitude rho = magnitude::min(sigma, srho);
    magnitude C = magnitude::max(sigma / rho, magnitude::one() / rho)
                      .pow(rat(degree_bound));
    return {sigma, rho, C};
}

bool membership(const base_point& b, const fiber_point& x, const lemniscate_region& R) {
    magnitude v = eval_line_seminorm(b, x, R.P);
    int cl = v.compare(R.lo);
    if (R.open_lo ? cl <= 0 : cl < 0) return false;
    if (!R.has_hi) return true;
    int ch = v.compare(R.hi);
    if (R.open_hi ? ch >= 0 : ch > 0) return false;
    return true;
}

namespace {

// rational roots of P via the rational-root theorem on the primitive part
std::vector<std::pair<rat, long>> rational_roots(poly_q P) {
    std::vector<std::pair<rat, long>> out;
    while (!P.is_zero() && P.coeff(0) == 0) {
        // factor T out
        std::vector<rat> v(P.coeffs().begin() + 1, P.coeffs().end());
        P = poly_q(std::move(v));
        if (out.empty() || out.back().first != 0) out.push_back({rat(0), 1});
        else out.back().second++;
    }
    if (P.degree() <= 0) return out;
    // clear denominators to integer coefficients
    bigint den(1);
    for (auto& c : P.coeffs()) {
        bigint l;
        mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        den = l;
    }
    std::vector<bigint> ic;
    for (auto& c : P.coeffs()) ic.push_back(bigint(c * rat(den)));
    bigint a0 = ic.front(), ad = ic.back();
    if (a0 < 0) a0 = -a0;
    if (ad < 0) ad = -ad;
    auto divisors = [](const bigint& n) {
        std::vector<bigint> ds;
        for (bigint i = 1; i * i <= n; ++i)
            if (n % i == 0) { ds.push_back(i); if (i * i != n) ds.push_back(n / i); }
        return ds;
    };
    for (auto& r : divisors(a0)) {
        for (auto& q : divisors(ad)) {
            bigint g;
            mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t());
            if (g != 1) continue;
            for (int sign = 0; sign < 2; ++sign) {
                rat cand = sign ? rat(-r) / rat(q) : rat(r) / rat(q);
                if (P.eval(cand) != 0) continue;
                long mult = 0;
                poly_q lin(std::vector<rat>{-cand, rat(1)});
                while (true) {
                    auto [qq, rr] = P.divmod(lin);
                    if (!rr.is_zero()) break;
                    P = qq;
                    ++mult;
                }
                if (mult) out.push_back({cand, mult});
            }
        }
    }
    if (P.degree() > 0)
        out.clear(); // leftover non-linear factor: does not split
    return out;
}

} // namespace

component_partition lemniscate_components(const poly_q& P, const rat& s, const bigint& p) {
    if (P.is_zero()) throw zero_polynomial("lemniscate_components of 0");
    if (s <= 0) throw precondition_error("lemniscate_components: s must be positive");
    poly_q work = P;
    auto roots = rational_roots(work);
    long found = 0;
    for (auto& [r, m] : roots) found += m;
    if (found != P.degree())
        throw non_split_polynomial("P does not split over Q");

    component_partition part;
    for (auto& [r, m] : roots) {
        part.roots.push_back(r);
        part.multiplicities.push_back(m);
    }
    size_t n = part.roots.size();
    base_point unit(place::finite(p), ext_rat(rat(1)));
    rat lead = P.leading();
    magnitude lead_mag = eval_base_seminorm(unit, lead);
    magnitude starget = magnitude::from_rational(s) / lead_mag;

    // per-root ball radius rho_i : the largest rho with
    //   prod_k max(|r_i - r_k|, rho)^{m_k} = s / |lc|,
    // solved exactly on the piecewise-monomial breakpoints
    std::vector<magnitude> rho(n);
    for (size_t i = 0; i < n; ++i) {
        std::vector<std::pair<magnitude, long>> dists; // (|r_i - r_k|, m_k)
        for (size_t k = 0; k < n; ++k) {
            magnitude dk = (k == i) ? magnitude::zero()
                                    : eval_base_seminorm(unit, part.roots[i] - part.roots[k]);
            dists.push_back({dk, part.multiplicities[k]});
        }
        std::sort(dists.begin(), dists.end(), [](auto& a, auto& b) {
            return a.first.less(b.first);
        });
        // for rho in [d_j, d_{j+1}): value = rho^{M_j} * prod_{d_k > rho} d_k^{m_k}
        // where M_j = sum of multiplicities with d_k <= rho
        auto value_at = [&](const magnitude& r) {
            magnitude val = magnitude::one();
            for (auto& [dk, mk] : dists)
                val = val * magnitude::max(dk, r).pow(rat(mk));
            return val;
        };
        magnitude best = magnitude::zero();
        for (size_t j = 0; j <= dists.size(); ++j) {
            // piece rho in [d_{j-1}, d_j): value = rho^expo * prod of the
            // larger distances; solve the monomial equation in each piece
            magnitude lo_end = (j == 0) ? magnitude::zero() : dists[j - 1].first;
            magnitude hi_end = (j == dists.size()) ? magnitude::zero() : dists[j].first;
            bool unbounded = (j == dists.size());
            long expo = 0;
            magnitude fixed = magnitude::one();
            for (auto& [dk, mk] : dists) {
                bool below = unbounded || !lo_end.less(dk); // dk <= lo_end
                if (below) expo += mk;
                else fixed = fixed * dk.pow(rat(mk));
            }
            if (expo == 0) continue;
            magnitude cand = (starget / fixed).pow(rat(1) / rat(expo));
            bool ge_lo = !cand.less(lo_end);
            bool lt_hi = unbounded || cand.leq(hi_end);
            if (ge_lo && lt_hi) best = magnitude::max(best, cand);
        }
        if (best.is_zero()) {
            // value at rho -> 0 already exceeds s: no ball; still give the
            // degenerate radius 0
            rho[i] = magnitude::zero();
        } else {
            rho[i] = best;
        }
        // consistency: the solved radius must satisfy the defining equation
        if (!best.is_zero() && value_at(best) != starget)
            throw error("internal: lemniscate radius equation unsolved");
    }

    // cluster: r_j joins r_i when |r_i - r_j| <= rho_i
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<size_t(size_t)> find = [&](size_t a) {
        return parent[a] == a ? a : parent[a] = find(parent[a]);
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            magnitude dij = eval_base_seminorm(unit, part.roots[i] - part.roots[j]);
            if (dij.leq(rho[i])) parent[find(j)] = find(i);
        }
    std::map<size_t, root_cluster> clusters;
    for (size_t i = 0; i < n; ++i) {
        auto& cl = clusters[find(i)];
        cl.root_indices.push_back(i);
        cl.radius = magnitude::max(cl.radius, rho[i]);
    }
    for (auto& [k, cl] : clusters) part.clusters.push_back(cl);
    return part;
}

rigid_neighborhood_result rigid_neighborhood(const base_point& b, const poly_q& mu,
                                             const rat& s1, const rat& s2) {
    if (!(0 < s1 && s1 < s2))
        throw precondition_error("rigid_neighborhood needs 0 < s1 < s2");
    if (mu.degree() < 1) throw precondition_error("mu must be non-constant");
    if (!mu.separable())
        throw inseparable_unsupported("mu must be separable");
    rigid_neighborhood_result res;
    res.s1 = s1;
    res.s2 = s2;
    res.region.P = mu;
    res.region.lo = magnitude::zero();
    res.region.hi = magnitude::from_rational(s2);
    res.region.has_hi = true;

    // the rigid point cut out by mu satisfies |mu| = 0 <= s2 by definition
    res.center_is_member = true;
    poly_q work = mu;
    if (b.ultrametric() && b.pl.is_finite()) {
        auto roots = rational_roots(work);
        long found = 0;
        for (auto& [r, m] : roots) found += m;
        if (found == mu.degree()) {
            res.split_over_q = true;
            auto part = lemniscate_components(mu, s2, b.pl.prime);
            res.connected = part.connected();
            // verify membership on an actual rational root as well
            fiber_point x = fiber_point::rigid(roots.front().first);
            res.center_is_member = membership(b, x, res.region);
        } else if (mu.degree() == 2) {
            // irreducible quadratic: the two conjugate roots sit at
            // distance |disc|^{1/2} (monic normalization); each carries
            // the ball radius solving rho * max(d, rho) = s / |lc|
            base_point unit(b.pl, ext_rat(rat(1)));
            rat lc = mu.leading();
            rat disc = mu.coeff(1) * mu.coeff(1) - 4 * mu.coeff(0) * mu.coeff(2);
            magnitude d = eval_base_seminorm(unit, disc).pow(rat(1, 2)) /
                          eval_base_seminorm(unit, lc);
            magnitude st = magnitude::from_rational(s2) / eval_base_seminorm(unit, lc);
            magnitude cand_low = st / d;                 // piece rho <= d
            magnitude cand_high = st.pow(rat(1, 2));     // piece rho >= d
            magnitude rho = cand_low.leq(d) && !d.is_zero() ? cand_low : cand_high;
            res.connected = d.leq(rho);
        }
    }
    return res;
}

} // namespace berk
