// Acceptance suite: one PASS/FAIL line per criterion, wall-clock budgets
// enforced. Exits nonzero if any criterion fails.

#include <chrono>
#include <fstream>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "berk/json_io.hpp"

using namespace berk;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

struct criterion_run {
    std::string name;
    double budget_seconds;
    long checks = 0;
    long failed = 0;
    std::ostringstream log;

    void require(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            ++failed;
            if (failed <= 5) log << "    FAILED: " << what << "\n";
        }
    }
};

void run_criterion(int index, const std::string& name, double budget,
                   const std::function<void(criterion_run&)>& body) {
    criterion_run c{name, budget};
    auto t0 = clock_type::now();
    bool threw = false;
    std::string exc;
    try {
        body(c);
    } catch (const std::exception& e) {
        threw = true;
        exc = e.what();
    }
    double dt = std::chrono::duration<double>(clock_type::now() - t0).count();
    bool ok = !threw && c.failed == 0 && dt < budget;
    if (!ok) ++failures;
    std::printf("%s criterion %2d: %-38s  checks=%-6ld time=%.2fs (budget %.0fs)\n",
                ok ? "PASS" : "FAIL", index, name.c_str(), c.checks, dt, budget);
    if (threw) std::printf("    exception: %s\n", exc.c_str());
    if (c.failed > 0) std::printf("%s", c.log.str().c_str());
    if (dt >= budget) std::printf("    over budget\n");
}

rat rnd_rat(std::mt19937_64& rng, long num_cap, long den_cap) {
    rat q(std::uniform_int_distribution<long>(-num_cap, num_cap)(rng),
          std::uniform_int_distribution<long>(1, den_cap)(rng));
    q.canonicalize();
    return q;
}

base_point rnd_point(std::mt19937_64& rng) {
    static const long primes[] = {2, 3, 5, 7, 11, 13};
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<int> pi(0, 5);
    std::uniform_int_distribution<long> en(1, 12), ed(1, 6);
    switch (kind(rng)) {
        case 0: return base_point();
        case 1: {
            rat e(en(rng), ed(rng));
            e.canonicalize();
            if (e > 1) e = rat(1) / e;
            return base_point(place::infinite(), ext_rat(e));
        }
        case 2: return base_point(place::finite(primes[pi(rng)]), ext_rat::inf());
        default: {
            rat e(en(rng), ed(rng));
            return base_point(place::finite(primes[pi(rng)]), ext_rat(e));
        }
    }
}

// ---- criterion 3 oracle: root-radius multiset by root powering --------
//
// Powers every root to the 12th (two Graeffe squarings and one norm
// cubing), which clears the fractional valuations possible in degree
// <= 4, then counts roots of each integer valuation from content-free
// reductions. No polygon code shared with the implementation.

poly_q graeffe_square(const poly_q& f) {
    // f(X) f(-X) = E(Y)^2 - Y O(Y)^2 with Y = X^2
    long d = f.degree();
    std::vector<rat> e(d / 2 + 1, rat(0)), o(d / 2 + 1, rat(0));
    for (long i = 0; i <= d; ++i) {
        if (i % 2 == 0) e[i / 2] = f.coeff(i);
        else o[i / 2] = f.coeff(i);
    }
    poly_q E(std::move(e)), O(std::move(o));
    poly_q Y = poly_q::monomial(rat(1), 1);
    return E * E - Y * (O * O);
}

poly_q graeffe_cube(const poly_q& f) {
    // norm form over the cubic split: A^3 + Y B^3 + Y^2 C^3 - 3 Y A B C
    long d = f.degree();
    std::vector<rat> a(d / 3 + 1, rat(0)), b(d / 3 + 1, rat(0)), c(d / 3 + 1, rat(0));
    for (long i = 0; i <= d; ++i) {
        if (i % 3 == 0) a[i / 3] = f.coeff(i);
        else if (i % 3 == 1) b[i / 3] = f.coeff(i);
        else c[i / 3] = f.coeff(i);
    }
    poly_q A(std::move(a)), B(std::move(b)), C(std::move(c));
    poly_q Y = poly_q::monomial(rat(1), 1);
    return A * A * A + Y * (B * B * B) + Y * Y * (C * C * C) -
           poly_q::constant(rat(3)) * Y * A * B * C;
}

// multiset {12 * v(root) -> count} for the nonzero roots of f over Q_p
std::map<long, long> radii_oracle(const poly_q& f_in, const bigint& p) {
    poly_q f = f_in;
    // strip roots at zero
    long strip = f.t_valuation();
    if (strip > 0) {
        std::vector<rat> v(f.coeffs().begin() + strip, f.coeffs().end());
        f = poly_q(std::move(v));
    }
    std::map<long, long> out;
    if (f.degree() == 0) return out;
    poly_q g = graeffe_cube(graeffe_square(graeffe_square(f))); // roots^12
    long d = g.degree();
    // valuations of the nonzero coefficients
    std::map<long, long> val;
    long vmin = 1L << 30, vmax = -(1L << 30);
    for (long i = 0; i <= d; ++i) {
        if (g.coeff(i) == 0) continue;
        long v = padic_valuation(g.coeff(i), p);
        val[i] = v;
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    long bound = (vmax - vmin) + 1;
    for (long k = -bound; k <= bound; ++k) {
        // substitute S -> p^k S, normalize content, reduce mod p: the
        // surviving support is the argmin of v(c_i) + k i
        long m = 1L << 30;
        for (auto& [i, v] : val) m = std::min(m, v + k * i);
        long lo = -1, hi = -1;
        for (auto& [i, v] : val)
            if (v + k * i == m) {
                if (lo < 0) lo = i;
                hi = i;
            }
        long count = hi - lo;
        if (count > 0) out[k] += count; // roots of g with v = k
    }
    return out;
}

// ---- CLI golden helper -------------------------------------------------

std::string run_cli(const std::string& args, const std::string& payload, int* exit_code) {
    std::string cmd = std::string(BERK_CLI_PATH) + " " + args + " > /tmp/berk_out.txt 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "w");
    if (!pipe) throw error("cannot spawn CLI");
    fwrite(payload.data(), 1, payload.size(), pipe);
    int rc = pclose(pipe);
    if (exit_code) *exit_code = WEXITSTATUS(rc);
    std::ifstream f("/tmp/berk_out.txt");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) return "";
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

int main() {
    std::printf("acceptance suite\n");

    // 1. seminorm axioms ---------------------------------------------------
    run_criterion(1, "seminorm axiom suite", 5.0, [](criterion_run& c) {
        std::mt19937_64 rng(1001);
        for (int i = 0; i < 1000; ++i) {
            base_point x = rnd_point(rng);
            rat a = rnd_rat(rng, 1000, 60), b = rnd_rat(rng, 1000, 60);
            if (x.pl.is_finite() && x.eps.infinite) {
                a = rat(a.get_num());
                b = rat(b.get_num());
            }
            magnitude ma = eval_base_seminorm(x, a);
            magnitude mb = eval_base_seminorm(x, b);
            c.require(eval_base_seminorm(x, a * b) == ma * mb, "multiplicativity");
            magnitude ms = eval_base_seminorm(x, a + b);
            c.require(magnitude::leq_sum(ms, {ma, mb}), "triangle");
            if (x.ultrametric()) {
                magnitude mx = magnitude::max(ma, mb);
                c.require(ms.leq(mx), "ultrametric triangle");
                if (ma.compare(mb) != 0)
                    c.require(ms == mx, "ultrametric equality case");
            }
            // boundedness on Z
            rat n = rat(a.get_num());
            if (n != 0) {
                magnitude lhs = eval_base_seminorm(x, n);
                c.require(lhs.leq(magnitude::from_rational(n < 0 ? rat(-n) : n)),
                          "boundedness on Z");
            }
        }
    });

    // 2. Gauss multiplicativity ---------------------------------------------
    run_criterion(2, "gauss multiplicativity", 10.0, [](criterion_run& c) {
        std::mt19937_64 rng(1002);
        static const long primes[] = {2, 3, 5, 7};
        for (int i = 0; i < 500; ++i) {
            long p = primes[i % 4];
            std::uniform_int_distribution<long> en(1, 5), ed(1, 3);
            base_point b = (i % 5 == 4)
                               ? base_point()
                               : base_point(place::finite(p), ext_rat(rat(en(rng), ed(rng))));
            auto rp = [&](long dmax) {
                std::uniform_int_distribution<long> dd(0, dmax);
                long d = dd(rng);
                std::vector<rat> v(d + 1);
                for (auto& x : v) x = rnd_rat(rng, 30, 10);
                if (v.back() == 0) v.back() = 1;
                return poly_q(std::move(v));
            };
            poly_q P = rp(6), Q = rp(6);
            rat center = rnd_rat(rng, 20, 8);
            rat radius(std::uniform_int_distribution<long>(1, 24)(rng),
                       std::uniform_int_distribution<long>(1, 24)(rng));
            radius.canonicalize();
            fiber_point x = fiber_point::ball(center, radius);
            c.require(eval_line_seminorm(b, x, P * Q) ==
                          eval_line_seminorm(b, x, P) * eval_line_seminorm(b, x, Q),
                      "gauss point multiplicativity");
        }
    });

    // 3. Newton radii vs oracle ---------------------------------------------
    run_criterion(3, "newton radii vs oracle", 30.0, [](criterion_run& c) {
        std::mt19937_64 rng(1003);
        static const long primes[] = {2, 3};
        // 200 split cases: radii equal the exact |root|_p multiset
        for (int i = 0; i < 200; ++i) {
            long p = primes[i % 2];
            int d = std::uniform_int_distribution<int>(1, 4)(rng);
            poly_q P = poly_q::constant(
                rat(std::uniform_int_distribution<long>(1, 5)(rng)));
            std::map<long, long> expect;
            for (int k = 0; k < d; ++k) {
                long v = std::uniform_int_distribution<long>(-3, 3)(rng);
                long u = std::uniform_int_distribution<long>(1, 9)(rng);
                while (u % p == 0) ++u;
                rat root = rat(u) * rat_pow(rat(p), v);
                expect[v]++;
                P = P * poly_q({std::vector<rat>{-root, rat(1)}});
            }
            auto radii = newton_root_radii(P, p);
            long total = 0;
            bool all_match = true;
            for (auto& rr : radii) {
                total += rr.multiplicity;
                bool hit = false;
                for (auto& [v, cnt] : expect)
                    if (!rr.zero_radius &&
                        rr.radius == magnitude::pow_of(rat(p), rat(-v)) &&
                        cnt == rr.multiplicity)
                        hit = true;
                all_match = all_match && hit;
            }
            c.require(all_match && total == d, "split radii multiset");
        }
        // 50 non-split cases against the root-powering oracle
        std::vector<poly_q> irred = {
            poly_q({std::vector<rat>{rat(-2), rat(0), rat(1)}}),  // T^2-2
            poly_q({std::vector<rat>{rat(1), rat(0), rat(1)}}),   // T^2+1
            poly_q({std::vector<rat>{rat(3), rat(0), rat(1)}}),   // T^2+3
            poly_q({std::vector<rat>{rat(-2), rat(0), rat(0), rat(1)}}), // T^3-2
            poly_q({std::vector<rat>{rat(2), rat(2), rat(0), rat(1)}}),  // T^3+2T+2
        };
        for (int i = 0; i < 50; ++i) {
            long p = primes[i % 2];
            poly_q P = irred[std::uniform_int_distribution<size_t>(0, irred.size() - 1)(rng)];
            if (P.degree() <= 2 && i % 3 == 0) {
                long v = std::uniform_int_distribution<long>(-2, 2)(rng);
                long u = std::uniform_int_distribution<long>(1, 9)(rng);
                while (u % p == 0) ++u;
                rat root = rat(u) * rat_pow(rat(p), v);
                P = P * poly_q({std::vector<rat>{-root, rat(1)}});
            }
            auto oracle = radii_oracle(P, p);
            auto radii = newton_root_radii(P, p);
            // convert implementation radii p^{m} (m = -v) to 12 v counts
            std::map<long, long> got;
            for (auto& rr : radii) {
                if (rr.zero_radius) continue;
                // rr.radius = p^{e}: recover e from the factor map
                rat e(0);
                if (!rr.radius.is_one()) {
                    c.require(rr.radius.factors().size() == 1, "single-base radius");
                    e = rr.radius.factors().begin()->second;
                }
                rat tw = e * 12;
                tw.canonicalize();
                c.require(tw.get_den() == 1, "twelfth-power integrality");
                got[-tw.get_num().get_si()] += rr.multiplicity;
            }
            c.require(got == oracle, "oracle agreement (non-split)");
        }
    });

    // 4. domain bounds -------------------------------------------------------
    run_criterion(4, "domain bound inequalities", 30.0, [](criterion_run& c) {
        std::mt19937_64 rng(1004);
        static const long primes[] = {2, 3, 5};
        long unresolved = 0;
        // coordinate bound |T(x)| <= |P(x)| + d ||P|| over mixed points
        for (int i = 0; i < 300; ++i) {
            long d = std::uniform_int_distribution<long>(1, 5)(rng);
            std::vector<rat> v(d + 1);
            for (auto& x : v) x = rnd_rat(rng, 12, 6);
            v[d] = 1;
            poly_q P(std::move(v));
            poly_q T = poly_q::monomial(rat(1), 1);
            base_point b;
            fiber_point x = fiber_point::rigid(rat(0));
            switch (i % 3) {
                case 0:
                    b = base_point(place::finite(primes[i % 3]), ext_rat(rat(1)));
                    x = fiber_point::ball(rnd_rat(rng, 8, 4),
                                          rat(std::uniform_int_distribution<long>(1, 9)(rng),
                                              std::uniform_int_distribution<long>(1, 9)(rng)));
                    break;
                case 1:
                    b = base_point(place::infinite(),
                                   ext_rat(rat(1, std::uniform_int_distribution<long>(1, 3)(rng))));
                    x = fiber_point::arch(rnd_rat(rng, 10, 4), rnd_rat(rng, 10, 4));
                    break;
                default:
                    b = base_point(place::finite(primes[i % 3]),
                                   ext_rat(rat(1, 2)));
                    x = fiber_point::rigid(rnd_rat(rng, 10, 4));
            }
            try {
                magnitude lhs = eval_line_seminorm(b, x, T);
                magnitude px = eval_line_seminorm(b, x, P);
                magnitude inf = infinity_norm(P, b) * magnitude::from_rational(rat(d));
                c.require(magnitude::leq_sum(lhs, {px, inf}), "coordinate bound");
            } catch (const unresolved_comparison&) {
                ++unresolved;
            }
        }
        // gauss point coefficient bound
        for (int i = 0; i < 300; ++i) {
            long p = primes[i % 3];
            base_point b(place::finite(p), ext_rat(rat(1)));
            long d = std::uniform_int_distribution<long>(0, 5)(rng);
            std::vector<rat> v(d + 1);
            for (auto& x : v) x = rnd_rat(rng, 30, 10);
            poly_q Q(std::move(v));
            if (Q.is_zero()) continue;
            rat alpha = rnd_rat(rng, 10, 5);
            rat r(std::uniform_int_distribution<long>(1, 12)(rng),
                  std::uniform_int_distribution<long>(1, 12)(rng));
            r.canonicalize();
            magnitude rm = magnitude::from_rational(r);
            magnitude C = magnitude::max(
                magnitude::max(eval_base_seminorm(b, alpha) / rm, magnitude::one() / rm),
                magnitude::one());
            try {
                c.require(infinity_norm(Q, b).leq(
                              C.pow(rat(Q.degree())) *
                              eval_line_seminorm(b, fiber_point::ball(alpha, r), Q)),
                          "gauss point coefficient bound");
            } catch (const unresolved_comparison&) {
                ++unresolved;
            }
        }
        // polynomial-domain coefficient bound at the extremal gauss point
        int done = 0;
        while (done < 300) {
            long p = primes[done % 3];
            base_point b(place::finite(p), ext_rat(rat(1)));
            int d = std::uniform_int_distribution<int>(1, 3)(rng);
            poly_q P = poly_q::constant(rat(1));
            rat biggest = 0;
            long bigv = 1000;
            for (int k = 0; k < d; ++k) {
                long vv = std::uniform_int_distribution<long>(-2, 2)(rng);
                long u = std::uniform_int_distribution<long>(1, 7)(rng);
                while (u % p == 0) ++u;
                rat root = rat(u) * rat_pow(rat(p), vv);
                if (vv < bigv) { bigv = vv; biggest = root; }
                P = P * poly_q({std::vector<rat>{-root, rat(1)}});
            }
            bool pure = true;
            for (long k = 0; k < P.degree(); ++k)
                if (P.coeff(k) != 0) pure = false;
            if (pure) continue;
            rat s(std::uniform_int_distribution<long>(1, 8)(rng),
                  std::uniform_int_distribution<long>(1, 8)(rng));
            s.canonicalize();
            std::vector<rat> qc(std::uniform_int_distribution<long>(0, 4)(rng) + 1);
            for (auto& x : qc) x = rnd_rat(rng, 20, 8);
            poly_q Q(std::move(qc));
            if (Q.is_zero()) continue;
            auto sr = sigma_rho_bound(P, b, s, Q.degree());
            auto rho_rat = sr.rho.as_rational();
            if (!rho_rat) continue;
            try {
                magnitude sample =
                    eval_line_seminorm(b, fiber_point::ball(biggest, *rho_rat), Q);
                c.require(infinity_norm(Q, b).leq(sr.C * sample), "polynomial domain bound");
                ++done;
            } catch (const unresolved_comparison&) {
                ++unresolved;
                ++done;
            }
        }
        c.require(unresolved == 0, "zero unresolved comparisons at default precision");
    });

    // 5. Weierstrass division -----------------------------------------------
    run_criterion(5, "weierstrass division", 60.0, [](criterion_run& c) {
        std::mt19937_64 rng(1005);
        series_context ctx;
        ctx.base = base_point(place::finite(2), ext_rat(rat(1)));
        ctx.s = 0;
        ctx.t = rat(1, 2);
        ctx.flavor = norm_flavor::max;
        static const long odd[] = {1, 3, 5, 7};
        auto rnd_2int = [&](long cap) {
            rat q(std::uniform_int_distribution<long>(-cap, cap)(rng),
                  odd[std::uniform_int_distribution<int>(0, 3)(rng)]);
            q.canonicalize();
            return q;
        };
        // 4 divisors x 50 dividends = 200, with per-divisor ratio stability
        for (int gi = 0; gi < 4; ++gi) {
            long n = std::uniform_int_distribution<long>(0, 4)(rng);
            std::map<long, rat> g;
            g[n] = rat(odd[std::uniform_int_distribution<int>(0, 3)(rng)]);
            for (long k = n + 1; k <= n + 5; ++k) {
                rat cc = rnd_2int(5);
                if (cc != 0) g[k] = cc;
            }
            disk_element G = disk_element::from_coeffs(ctx, std::move(g), 0, 64);
            long slack = 5; // divisor support above the valuation
            magnitude observed = magnitude::zero();
            std::vector<magnitude> ratios;
            for (int fi = 0; fi < 50; ++fi) {
                std::map<long, rat> f;
                for (long k = 0; k <= 16; ++k) {
                    rat cc = rnd_rat(rng, 9, 9);
                    if (cc != 0) f[k] = cc;
                }
                if (f.empty()) f[0] = 1;
                disk_element F = disk_element::from_coeffs(ctx, std::move(f), 0, 64);
                auto a = weierstrass_divide(F, G, rat(1, 2));
                auto bb = weierstrass_divide_triangular(F, G, rat(1, 2));
                c.require(a.n == bb.n && a.R == bb.R && a.Q.coeffs == bb.Q.coeffs,
                          "uniqueness across solvers");
                c.require(a.R.degree() < std::max(a.n, 1L), "remainder degree");
                // exact residual through the guaranteed order
                disk_element QG = mul(a.Q, G);
                disk_element R =
                    disk_element::from_poly(F.ctx, a.R.coeffs(), F.window_hi);
                disk_element resid = sub(sub(F, QG), R);
                bool zero = true;
                for (auto& [k, cc] : resid.coeffs)
                    if (k <= 64 - slack && cc != 0) zero = false;
                c.require(zero, "identity residual");
                magnitude ratio = magnitude::max(a.norm_Q, a.norm_R) / a.norm_F;
                ratios.push_back(ratio);
                observed = magnitude::max(observed, ratio);
            }
            for (auto& r : ratios)
                c.require(r.leq(observed), "norm ratio stability");
        }
        // the concrete geometric example: expansion of 1/(1-T) about the
        // root of T-2, divided by the centered divisor
        series_context cg = ctx;
        cg.t = 1;
        std::map<long, rat> shifted;
        for (long k = 0; k < 64; ++k) shifted[k] = (k % 2) ? rat(1) : rat(-1);
        disk_element Fgeo =
            disk_element::from_coeffs(cg, std::move(shifted), 0, 63, magnitude::one());
        disk_element Gc = disk_element::from_coeffs(cg, {{1, rat(1)}}, 0, 63);
        auto d3 = weierstrass_divide(Fgeo, Gc, rat(1));
        c.require(d3.n == 1, "geometric example degree");
        c.require(d3.R == poly_q::constant(rat(-1)), "geometric example R = -1");
    });

    // 6. preparation ----------------------------------------------------------
    run_criterion(6, "weierstrass preparation", 30.0, [](criterion_run& c) {
        std::mt19937_64 rng(1006);
        series_context ctx;
        ctx.base = base_point(place::finite(2), ext_rat(rat(1)));
        ctx.s = 0;
        ctx.t = rat(1, 2);
        ctx.flavor = norm_flavor::max;
        static const long odd[] = {1, 3, 5, 7};
        for (int i = 0; i < 100; ++i) {
            long n = std::uniform_int_distribution<long>(0, 4)(rng);
            std::map<long, rat> e;
            e[0] = rat(std::uniform_int_distribution<int>(0, 1)(rng) * 2 - 1);
            for (long k = 1; k <= 10; ++k) {
                rat cc(std::uniform_int_distribution<long>(-4, 4)(rng),
                       odd[std::uniform_int_distribution<int>(0, 3)(rng)]);
                cc.canonicalize();
                if (cc != 0) e[k] = cc;
            }
            disk_element E = disk_element::from_coeffs(ctx, std::move(e), 0, 70);
            disk_element Tn = disk_element::from_coeffs(ctx, {{n, rat(1)}}, 0, 70);
            disk_element G = mul(Tn, E);
            auto pr = weierstrass_prepare(G, rat(1, 2));
            c.require(pr.n == n, "detected degree");
            c.require(pr.omega.monic() && pr.omega.degree() == n, "omega monic");
            disk_element lhs =
                mul(disk_element::from_poly(ctx, pr.omega.coeffs(), 70), pr.unit);
            disk_element resid = sub(lhs, G);
            bool zero = true;
            for (auto& [k, cc] : resid.coeffs)
                if (k <= 64 && cc != 0) zero = false;
            c.require(zero, "reconstruction through order 64");
        }
    });

    // 7. Cousin splits ---------------------------------------------------------
    run_criterion(7, "cousin splits", 10.0, [](criterion_run& c) {
        std::mt19937_64 rng(1007);
        std::vector<cousin_system_z> systems = {
            cousin_system_z::finite_cut(2, rat(1)),
            cousin_system_z::infinite_cut(rat(1, 2)),
        };
        for (auto& sys : systems) {
            for (int i = 0; i < 1000; ++i) {
                rat f = rnd_rat(rng, 5000, 80);
                auto s = cousin_split(sys, f);
                c.require(s.f_minus + s.f_plus == f, "exact additivity");
                magnitude L = sys.overlap_norm(f);
                magnitude capL = magnitude::max(magnitude::one(), L);
                c.require(s.bound_minus.leq(capL), "minus bound (D = 1)");
                c.require(s.bound_plus.leq(capL), "plus bound (D = 1)");
            }
        }
        // the three worked examples
        auto s1 = cousin_split_finite(systems[0], rat(5, 2));
        c.require(s1.f_plus == rat(1, 2) && s1.f_minus == rat(2), "5/2 at q=2");
        auto s2 = cousin_split_finite(systems[0], rat(1, 6));
        c.require(s2.f_plus == rat(1, 2) && s2.f_minus == rat(-1, 3), "1/6 at q=2");
        auto s3 = cousin_split_infinite(systems[1], rat(10, 3));
        c.require(s3.f_plus == rat(3) && s3.f_minus == rat(1, 3), "10/3 at inf");
    });

    // 8. Cartan ---------------------------------------------------------------
    run_criterion(8, "cartan factorization", 60.0, [](criterion_run& c) {
        std::mt19937_64 rng(1008);
        magnitude tol = magnitude::pow_of(rat(2), rat(-40));
        std::vector<cousin_system_z> systems = {
            cousin_system_z::finite_cut(2, rat(1)),
            cousin_system_z::infinite_cut(rat(1, 2)),
        };
        int done = 0;
        int attempts = 0;
        while (done < 100 && attempts < 400) {
            ++attempts;
            auto& sys = systems[done % 2];
            size_t n = 1 + (done % 4);
            rat_matrix A = rat_matrix::identity(n);
            for (size_t r = 0; r < n; ++r)
                for (size_t cc = 0; cc < n; ++cc) {
                    long num = std::uniform_int_distribution<long>(-4, 4)(rng);
                    if (sys.cut_place.is_finite())
                        A.at(r, cc) += rat(num) * rat_pow(rat(2), 7);
                    else
                        A.at(r, cc) += rat(num, 65536);
                }
            magnitude defect = matrix_overlap_norm(sys, A - rat_matrix::identity(n));
            if (!defect.leq(magnitude::from_rational(rat(1, 16)))) continue;
            auto res = cartan_factor(sys, A, tol);
            c.require(res.residual_bound.leq(tol), "residual <= 2^-40");
            magnitude cap = magnitude::from_rational(rat(4)) * res.defect_in;
            c.require(res.bound_minus.leq(cap) && res.bound_plus.leq(cap),
                      "4 D ||A-I|| bound");
            bool decays = true;
            for (size_t k = 1; k < res.defect_trace.size(); ++k) {
                magnitude half = res.defect_trace[k - 1] * magnitude::from_rational(rat(1, 2));
                if (!res.defect_trace[k].leq(half)) decays = false;
            }
            c.require(decays, "geometric decay of the defect");
            ++done;
        }
        c.require(done == 100, "100 matrices processed");
    });

    // 9. gluing -----------------------------------------------------------------
    run_criterion(9, "generator gluing", 60.0, [](criterion_run& c) {
        std::mt19937_64 rng(1009);
        magnitude tol = magnitude::pow_of(rat(2), rat(-40));
        auto sys = cousin_system_z::finite_cut(2, rat(1));
        int done = 0, attempts = 0;
        while (done < 50 && attempts < 200) {
            ++attempts;
            size_t p = 1 + (done % 2);
            rat_matrix U = rat_matrix::identity(p);
            if (p == 2) U.at(0, 1) = rat(std::uniform_int_distribution<long>(-2, 2)(rng));
            rat_matrix V = U.inverse();
            std::vector<rat> Tm(p), Tp(p, rat(0));
            for (auto& t : Tm) t = rat(std::uniform_int_distribution<long>(1, 9)(rng));
            for (size_t r = 0; r < p; ++r)
                for (size_t cc = 0; cc < p; ++cc) Tp[r] += V.at(r, cc) * Tm[cc];
            rat_matrix Ubar = U;
            for (size_t r = 0; r < p; ++r)
                for (size_t cc = 0; cc < p; ++cc)
                    Ubar.at(r, cc) += rat(std::uniform_int_distribution<long>(-1, 1)(rng)) *
                                      rat_pow(rat(2), 8);
            magnitude gap =
                matrix_overlap_norm(sys, Ubar - U) * matrix_overlap_norm(sys, V);
            if (!gap.less(magnitude::from_rational(rat(1, 32)))) continue;
            auto g = glue_generators(sys, Tm, Tp, U, V, Ubar, tol);
            c.require(g.agreement.leq(tol), "overlap agreement");
            c.require(g.c_minus_det != 0, "C_minus unit determinant");
            ++done;
        }
        c.require(done == 50, "50 glue runs");
    });

    // 10. series norms ----------------------------------------------------------
    run_criterion(10, "series norms", 10.0, [](criterion_run& c) {
        std::mt19937_64 rng(1010);
        series_context arch;
        arch.base = base_point(place::infinite(), ext_rat(rat(1)));
        arch.s = 0;
        arch.t = 1;
        arch.flavor = norm_flavor::sum;
        series_context um;
        um.base = base_point(place::finite(3), ext_rat(rat(1, 2)));
        um.s = 0;
        um.t = 2;
        um.flavor = norm_flavor::max;
        for (int i = 0; i < 200; ++i) {
            const series_context& ctx = (i % 2) ? um : arch;
            std::map<long, rat> fm, gm;
            for (long k = 0; k <= 8; ++k) {
                rat a = rnd_rat(rng, 20, 8);
                if (a != 0) fm[k] = a;
                rat b = rnd_rat(rng, 20, 8);
                if (b != 0) gm[k] = b;
            }
            disk_element f = disk_element::from_coeffs(ctx, std::move(fm), 0, 32);
            disk_element g = disk_element::from_coeffs(ctx, std::move(gm), 0, 32);
            // restriction estimate with per-coefficient certificates
            auto rr = restrict_annulus(f, rat(0), rat(1, 2));
            c.require(rr.per_coefficient_certified, "restriction coefficients");
            // paper inequality ||f||_{u,v} <= factor ||f||_{C(s,t)}, checked
            // against the coefficient norms (equal for max flavor, an
            // upper bound for sum flavor)
            rat factor = ctx.t / (ctx.t - rat(1, 2));
            magnitude fb = magnitude::from_rational(factor) * norm_disk(f, ctx.t).upper;
            c.require(norm_annulus(rr.restricted, rat(0), rat(1, 2)).upper.leq(fb),
                      "restriction factor bound");
            // submultiplicativity at a legal inner radius
            rat at = ctx.t;
            magnitude lhs = norm_disk(mul(f, g), at).upper;
            c.require(lhs.leq(norm_disk(f, at).upper * norm_disk(g, at).upper),
                      "submultiplicativity");
        }
        // geometric truncation norm window
        series_context cg = arch;
        cg.t = rat(1, 2);
        std::map<long, rat> ones;
        for (long k = 0; k < 32; ++k) ones[k] = 1;
        rat tail = rat_pow(rat(1, 2), 32) / (rat(1) - rat(1, 2));
        disk_element geo = disk_element::from_coeffs(cg, std::move(ones), 0, 31,
                                                     magnitude::from_rational(tail));
        auto nn = norm_disk(geo, rat(1, 2));
        rat lo = rat(2) - rat(1) / rat_pow(rat(2), 31);
        c.require(nn.lower == magnitude::from_rational(lo), "geometric lower");
        c.require(nn.upper == magnitude::from_rational(rat(2)), "geometric upper");
    });

    // 11. CLI golden files --------------------------------------------------------
    run_criterion(11, "cli golden files", 10.0, [](criterion_run& c) {
        struct golden {
            const char* name;
            const char* args;
            const char* payload;
        };
        const golden cases[] = {
            {"eval", "eval", R"({"point":{"place":"p:2","eps":"1"},"value":"12"})"},
            {"eval_line", "eval",
             R"({"base":{"place":"p:3","eps":"1"},"fiber":{"ball":{"center":"0","radius":"1/9"}},"poly":{"coeffs":["3","0","1"]}})"},
            {"supnorm", "supnorm",
             R"({"compact":{"caps":{"p:2":"1","inf":"1/2"}},"value":"3/2"})"},
            {"path", "path",
             R"({"from":{"place":"p:2","eps":"1"},"to":{"place":"inf","eps":"1/2"}})"},
            {"newton", "newton",
             R"({"poly":{"coeffs":["2","1","1"]},"p":"2","sigma_rho":{"s":"1/2","d":2}})"},
            {"region", "region",
             R"({"query":"membership","base":{"place":"p:2","eps":"1"},"point":{"rigid":{"center":"2"}},"region":{"P":{"coeffs":["0","1"]},"lo":{"zero":true},"hi":{"factors":[["2","-2"]]}}})"},
            {"divide", "divide",
             R"({"F":{"coeffs":{"0":"-1","1":"1","2":"-1","3":"1"},"window":[0,16],"tail":{"zero":true},"context":{"place":"p:2","eps":"1","s":"0","t":"1","flavor":"max"}},"G":{"coeffs":{"1":"1"},"window":[0,16],"tail":{"zero":true},"context":{"place":"p:2","eps":"1","s":"0","t":"1","flavor":"max"}},"s":"1"})"},
            {"prepare", "prepare",
             R"({"G":{"coeffs":{"1":"1","2":"1"},"window":[0,16],"tail":{"zero":true},"context":{"place":"p:2","eps":"1","s":"0","t":"1/2","flavor":"max"}},"s":"1/2"})"},
            {"cousin", "cousin",
             R"({"system":{"place":"p:2","cut":"1"},"value":"5/2"})"},
            {"runge", "runge",
             R"({"system":{"place":"p:2","cut":"1"},"side":"plus","targets":["5/2","3"],"eps":"1/8"})"},
            {"cartan", "cartan",
             R"({"system":{"place":"p:2","cut":"1"},"A":[["3"]],"eps0":"9/10"})"},
            {"glue", "glue",
             R"({"system":{"place":"p:2","cut":"1"},"Tminus":["3"],"Tplus":["3"],"U":[["1"]],"V":[["1"]],"Ubar":[["129"]]})"},
            {"series_norm", "series",
             R"({"op":"norm","f":{"coeffs":{"0":"1","1":"1"},"window":[0,8],"tail":{"zero":true},"context":{"place":"inf","eps":"1","s":"0","t":"1","flavor":"sum"}},"t":"1"})"},
            {"plot", "plot-spectrum", R"({"branches":12})"},
        };
        std::string dir = BERK_GOLDEN_DIR;
        for (auto& g : cases) {
            int rc = 0;
            std::string out = run_cli(g.args, g.payload, &rc);
            c.require(rc == 0, std::string("exit code for ") + g.name);
            std::string want = slurp(dir + "/" + g.name + ".golden");
            if (want.empty()) {
                // first run: write the golden next to the build for review
                std::ofstream f(dir + "/" + g.name + ".golden");
                f << out;
                c.require(!out.empty(), std::string("golden bootstrap ") + g.name);
            } else {
                c.require(out == want, std::string("byte-identical ") + g.name);
            }
            // determinism: run twice
            std::string again = run_cli(g.args, g.payload, &rc);
            c.require(again == out, std::string("deterministic ") + g.name);
        }
        // SVG structural check: one center + 12 rays and 12 tips
        int rc = 0;
        std::string svg = run_cli("--format svg plot-spectrum", R"({"branches":12})", &rc);
        c.require(rc == 0, "svg exit code");
        auto count = [&](const std::string& needle) {
            size_t n = 0, pos = 0;
            while ((pos = svg.find(needle, pos)) != std::string::npos) {
                ++n;
                pos += needle.size();
            }
            return n;
        };
        c.require(count("<line") == 12, "svg ray count");
        c.require(count("class=\"tip\"") == 12, "svg tip count");
        c.require(count("class=\"center\"") == 1, "svg center count");
        // precondition errors map to exit 2
        run_cli("eval", R"({"point":{"place":"p:9","eps":"1"},"value":"1"})", &rc);
        c.require(rc == 2, "schema violation exit code");
    });

    std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT");
    return failures == 0 ? 0 : 1;
}
