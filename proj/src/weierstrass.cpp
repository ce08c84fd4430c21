#include "berk/weierstrass.hpp"

#include <algorithm>

namespace berk {

std::optional<long> fiber_valuation(const disk_element& G) {
    G.validate();
    if (G.ctx.s != 0)
        throw precondition_error("fiber_valuation needs a disk context (s = 0)");
    for (auto& [n, c] : G.coeffs)
        if (c != 0) return n;
    return std::nullopt;
}

namespace {

// restrict a disk element to the working radius so that tail bounds and
// norms live coherently at one outer radius
disk_element at_radius(const disk_element& f, const rat& s) {
    if (s <= 0 || s > f.ctx.t)
        throw radius_violation("working radius must lie in (0, t]");
    if (s == f.ctx.t) return f;
    disk_element out = f;
    out.ctx.t = s; // coefficient weights shrink, the tail bound transfers
    return out;
}

} // namespace

disk_element invert_unit(const disk_element& H_in, const rat& s) {
    disk_element H = at_radius(H_in, s);
    auto v = fiber_valuation(H);
    if (!v || *v != 0)
        throw not_divisible("invert_unit: constant term vanishes");
    rat h0 = H.coeffs.at(0);

    // H = h0 (1 + W); K = h0^{-1} sum (-W)^k through the window, with the
    // geometric tail folded in. Requires ||W||_s < 1.
    disk_element W = scale(H, rat(1) / h0);
    W.coeffs.erase(0);
    magnitude w_norm = norm_disk(W, s).upper;
    if (!w_norm.less(magnitude::one()))
        throw contraction_failure("unit inversion: ||W|| >= 1 at the working radius");

    // synthetic division: the truncated coefficients of 1/H = sum (-W)^k / h0
    // through the window, without materializing the powers
    long order = H.window_hi;
    std::map<long, rat> kc;
    kc[0] = rat(1) / h0;
    for (long m = 1; m <= order; ++m) {
        rat acc = 0;
        for (auto& [j, kj] : kc) {
            if (j >= m) break;
            auto it = H.coeffs.find(m - j);
            if (it != H.coeffs.end()) acc -= kj * it->second;
        }
        rat km = acc / h0;
        if (km != 0) kc[m] = km;
    }
    disk_element K;
    K.ctx = H.ctx;
    K.window_lo = H.window_lo;
    K.window_hi = H.window_hi;
    K.coeffs = std::move(kc);
    long lowest = W.coeffs.empty() ? 1 : W.coeffs.begin()->first;
    long steps = W.coeffs.empty() ? 0 : order / std::max(lowest, 1L) + 1;
    // geometric tail of the dropped powers: ||W||^{steps+1} / (1 - ||W||)
    // (max flavor: plain power)
    magnitude wpow = w_norm.pow(rat(steps + 1));
    magnitude geom_tail;
    if (H.ctx.flavor == norm_flavor::max)
        geom_tail = wpow;
    else {
        // 1/(1-||W||) via certified upper bound
        rat lo, hi;
        w_norm.enclose(lo, hi, 256);
        if (hi >= 1)
            throw contraction_failure("unit inversion: contraction too weak to certify");
        geom_tail = wpow * magnitude::from_rational(rat(1) / (rat(1) - hi));
    }
    geom_tail = geom_tail * eval_base_seminorm(H.ctx.base, rat(1) / h0);
    // the unknown part of H beyond its window perturbs the inverse by at
    // most ||1/H||^2 ||tail_H||
    magnitude inv_bound = eval_base_seminorm(H.ctx.base, rat(1) / h0);
    if (H.ctx.flavor == norm_flavor::sum) {
        rat lo, hi;
        w_norm.enclose(lo, hi, 256);
        if (hi >= 1)
            throw contraction_failure("unit inversion: contraction too weak to certify");
        inv_bound = inv_bound * magnitude::from_rational(rat(1) / (rat(1) - hi));
    }
    magnitude perturb = inv_bound * inv_bound * H.tail;
    if (H.ctx.flavor == norm_flavor::max)
        K.tail = magnitude::max(magnitude::max(K.tail, geom_tail), perturb);
    else
        K.tail = magnitude::sum_upper({K.tail, geom_tail, perturb});
    return K;
}

namespace {

// alpha/beta decomposition: phi = alpha(phi) T^n + beta(phi), deg beta < n
void split_at(const disk_element& phi, long n, disk_element& alpha, poly_q& beta) {
    alpha = phi;
    alpha.coeffs.clear();
    std::vector<rat> b(std::max<long>(n, 1), rat(0));
    for (auto& [k, c] : phi.coeffs) {
        if (k >= n) alpha.coeffs[k - n] = c;
        else b[k] = c;
    }
    alpha.window_lo = 0;
    alpha.window_hi = phi.window_hi; // shifted support fits
    beta = poly_q(std::move(b));
}

division_result finish(const disk_element& F, const disk_element& Q,
                       const poly_q& R, long n, const rat& s) {
    division_result res;
    res.Q = Q;
    res.R = R;
    res.n = n;
    res.norm_F = norm_disk(F, s).upper;
    res.norm_Q = norm_disk(Q, s).upper;
    disk_element Rd = disk_element::from_poly(F.ctx, R.coeffs(), F.window_hi);
    res.norm_R = norm_disk(Rd, s).upper;
    return res;
}

} // namespace

division_result weierstrass_divide(const disk_element& F_in, const disk_element& G_in,
                                   const rat& s) {
    if (!(F_in.ctx == G_in.ctx)) throw context_mismatch("divide: differing contexts");
    disk_element F = at_radius(F_in, s);
    disk_element G = at_radius(G_in, s);
    auto nv = fiber_valuation(G);
    if (!nv) throw not_divisible("divisor valuation inconclusive");
    long n = *nv;

    disk_element H = shift_exponents(G, -n); // the unit part
    disk_element K = invert_unit(H, s);

    // certified smallness: ||K G - T^n||_s <= s^n / 4 gives the operator
    // bound ||A_s - Id|| <= 1/2
    disk_element KG = mul(K, G);
    disk_element Tn;
    Tn.ctx = G.ctx;
    Tn.window_lo = G.window_lo;
    Tn.window_hi = G.window_hi;
    Tn.coeffs[n] = 1;
    disk_element defect = sub(KG, Tn);
    magnitude defect_norm = norm_disk(defect, s).upper;
    magnitude budget = magnitude::pow_of(s, rat(n)) * magnitude::from_rational(rat(1, 4));
    if (!defect_norm.leq(budget))
        throw contraction_failure("smallness condition violated at the working radius");

    // Neumann solve of A_s(psi) = F: psi <- F + alpha(psi) (T^n - K G)
    disk_element neg_defect = scale(defect, rat(-1));
    disk_element psi = F;
    long guard = (F.window_hi - F.window_lo) + 2;
    for (long it = 0; it < guard; ++it) {
        disk_element alpha;
        poly_q beta;
        split_at(psi, n, alpha, beta);
        disk_element next = add(F, mul(alpha, neg_defect));
        if (next.coeffs == psi.coeffs) { psi = next; break; }
        psi = next;
    }
    disk_element alpha;
    poly_q beta;
    split_at(psi, n, alpha, beta);
    disk_element Q = rewindow(mul(alpha, K), 0, std::max(F.window_hi - n, 0L));
    return finish(F, Q, beta, n, s);
}

division_result weierstrass_divide_triangular(const disk_element& F_in,
                                              const disk_element& G_in, const rat& s) {
    if (!(F_in.ctx == G_in.ctx)) throw context_mismatch("divide: differing contexts");
    disk_element F = at_radius(F_in, s);
    disk_element G = at_radius(G_in, s);
    auto nv = fiber_valuation(G);
    if (!nv) throw not_divisible("divisor valuation inconclusive");
    long n = *nv;
    rat gn = G.coeffs.at(n);

    // order-by-order solve of F = Q G + R with deg R < n; G has no
    // support below n, so the system is triangular in the q_j
    long top = F.window_hi;
    std::map<long, rat> q;
    for (long k = n; k <= top; ++k) {
        rat fk = 0;
        auto itf = F.coeffs.find(k);
        if (itf != F.coeffs.end()) fk = itf->second;
        rat acc = fk;
        for (auto& [j, qj] : q) {
            long gi = k - j;
            auto itg = G.coeffs.find(gi);
            if (itg != G.coeffs.end()) acc -= qj * itg->second;
        }
        rat qk = acc / gn;
        if (qk != 0) q[k - n] = qk;
    }
    std::vector<rat> r(std::max<long>(n, 1), rat(0));
    for (long k = 0; k < n; ++k) {
        rat fk = 0;
        auto itf = F.coeffs.find(k);
        if (itf != F.coeffs.end()) fk = itf->second;
        rat acc = fk;
        for (auto& [j, qj] : q) {
            long gi = k - j;
            auto itg = G.coeffs.find(gi);
            if (itg != G.coeffs.end()) acc -= qj * itg->second;
        }
        r[k] = acc;
    }
    disk_element Q;
    Q.ctx = F.ctx;
    Q.window_lo = 0;
    Q.window_hi = std::max(F.window_hi - n, 0L);
    for (auto& [j, qj] : q)
        if (j <= Q.window_hi) Q.coeffs[j] = qj;
    return finish(F, Q, poly_q(std::move(r)), n, s);
}

preparation_result weierstrass_prepare(const disk_element& G_in, const rat& s) {
    disk_element G = at_radius(G_in, s);
    auto nv = fiber_valuation(G);
    if (!nv) throw not_divisible("preparation: valuation inconclusive");
    long n = *nv;
    preparation_result res;
    res.n = n;
    if (n == 0) {
        // G is already a unit: omega = 1, E = G
        res.omega = poly_q::constant(rat(1));
        res.unit = G;
        return res;
    }
    // divide T^n by G: T^n = Q' G + R'; then omega = T^n - R', E = Q'^{-1}
    disk_element Tn;
    Tn.ctx = G.ctx;
    Tn.window_lo = G.window_lo;
    Tn.window_hi = G.window_hi;
    Tn.coeffs[n] = 1;
    division_result div = weierstrass_divide(Tn, G, s);
    poly_q omega = poly_q::monomial(rat(1), n) - div.R;
    res.omega = omega;
    res.unit = invert_unit(div.Q, s);
    return res;
}

void quotient_element::validate() const {
    if (modulus.is_zero() || !modulus.monic())
        throw precondition_error("quotient modulus must be monic");
    if (rep.degree() >= modulus.degree())
        throw precondition_error("representative degree must be < deg modulus");
    if (v_param <= 0) throw precondition_error("v parameter must be positive");
}

magnitude weighted_poly_norm(const poly_q& F, const base_point& b, const rat& v) {
    magnitude best = magnitude::zero();
    for (long i = 0; i <= F.degree(); ++i) {
        rat c = F.coeff(i);
        if (c == 0) continue;
        best = magnitude::max(best,
                              eval_base_seminorm(b, c) * magnitude::pow_of(v, rat(i)));
    }
    return best;
}

magnitude divisorial_norm(const quotient_element& x) {
    x.validate();
    return infinity_norm(x.rep, x.base);
}

magnitude residual_norm_upper(const quotient_element& x, const poly_q& lift_increment) {
    x.validate();
    poly_q lift = x.rep + lift_increment * x.modulus;
    return weighted_poly_norm(lift, x.base, x.v_param);
}

bool residual_smallness_holds(const quotient_element& x) {
    x.validate();
    long d = x.modulus.degree();
    std::vector<magnitude> terms;
    for (long i = 0; i < d; ++i) {
        rat g = x.modulus.coeff(i);
        if (g == 0) continue;
        terms.push_back(eval_base_seminorm(x.base, g) *
                        magnitude::pow_of(x.v_param, rat(i - d)));
    }
    if (terms.empty()) return true;
    return magnitude::sum_upper(terms).leq(magnitude::from_rational(rat(1, 2)));
}

void multi_poly::validate() const {
    for (auto& [e, c] : terms) {
        if (e.size() != nvars)
            throw precondition_error("exponent vector arity mismatch");
        for (long x : e)
            if (x < 0) throw precondition_error("negative multivariate exponent");
    }
}

namespace {

// substitute T_i <- T_i + T_n^{u_i} for i < n-1... then restrict to the
// last axis: T_1 = ... = T_{n-1} = 0. Only the axis restriction is
// needed, so substitute and immediately discard mixed monomials:
// restriction of prod_i (T_i + T_n^{u_i})^{e_i} * T_n^{e_n} is
// T_n^{sum_i u_i e_i + e_n}.
std::map<long, rat> axis_restriction_after_shift(const multi_poly& f,
                                                 const std::vector<long>& u) {
    std::map<long, rat> out;
    size_t n = f.nvars;
    for (auto& [e, c] : f.terms) {
        long deg = e[n - 1];
        for (size_t i = 0; i + 1 < n; ++i) deg += u[i] * e[i];
        out[deg] += c;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

} // namespace

std::optional<std::vector<long>> change_of_variables(const multi_poly& f, long u_max,
                                                     long degree_bound) {
    f.validate();
    bool nonzero = false;
    for (auto& [e, c] : f.terms)
        if (c != 0) { nonzero = true; break; }
    if (!nonzero) return std::nullopt;
    if (f.nvars == 1) {
        // nothing to substitute; nonzero on the axis already
        return std::vector<long>{};
    }
    std::vector<long> u(f.nvars - 1, 1);
    while (true) {
        auto axis = axis_restriction_after_shift(f, u);
        bool ok = false;
        for (auto& [d, c] : axis)
            if (d <= degree_bound && c != 0) { ok = true; break; }
        if (ok) return u;
        // lexicographic successor within [1, u_max]^{n-1}
        size_t pos = u.size();
        bool advanced = false;
        while (pos > 0) {
            --pos;
            if (u[pos] < u_max) { ++u[pos]; advanced = true; break; }
            u[pos] = 1;
        }
        if (!advanced) return std::nullopt;
    }
}

} // namespace berk
