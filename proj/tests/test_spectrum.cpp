#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "berk/spectrum.hpp"

using namespace berk;

namespace {

rat random_rational(std::mt19937_64& rng, long num_cap = 1000, long den_cap = 60) {
    std::uniform_int_distribution<long> num(-num_cap, num_cap);
    std::uniform_int_distribution<long> den(1, den_cap);
    rat q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

base_point random_point(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 3);
    static const long primes[] = {2, 3, 5, 7, 11, 13};
    std::uniform_int_distribution<int> pi(0, 5);
    std::uniform_int_distribution<long> en(1, 12);
    std::uniform_int_distribution<long> ed(1, 6);
    switch (kind(rng)) {
        case 0: return base_point(place::trivial(), ext_rat(rat(0)));
        case 1: {
            rat e(en(rng), ed(rng));
            if (e > 1) e = rat(1) / e;
            return base_point(place::infinite(), ext_rat(e));
        }
        case 2: return base_point(place::finite(primes[pi(rng)]), ext_rat::inf());
        default:
            return base_point(place::finite(primes[pi(rng)]), ext_rat(rat(en(rng), ed(rng))));
    }
}

} // namespace

TEST_CASE("base seminorm worked examples") {
    CHECK(eval_base_seminorm(base_point(place::finite(2), ext_rat(rat(1))), rat(12)) ==
          magnitude::from_rational(rat(1, 4)));
    base_point a0;
    CHECK(eval_base_seminorm(a0, rat(5)).is_one());
    CHECK(eval_base_seminorm(a0, rat(0)).is_zero());
    // |-9/4|_inf^{1/2} = 3/2
    CHECK(eval_base_seminorm(base_point(place::infinite(), ext_rat(rat(1, 2))), rat(-9, 4)) ==
          magnitude::from_rational(rat(3, 2)));
    // a_2^inf: 0 on multiples of 2, error on poles, 1 otherwise
    base_point a2inf(place::finite(2), ext_rat::inf());
    CHECK(eval_base_seminorm(a2inf, rat(6)).is_zero());
    CHECK(eval_base_seminorm(a2inf, rat(5)).is_one());
    CHECK_THROWS_AS(eval_base_seminorm(a2inf, rat(1, 2)), pole_at_point);
}

TEST_CASE("canonical form of points") {
    base_point x(place::finite(7), ext_rat(rat(0)));
    CHECK(x.is_center());
    CHECK(x == base_point());
    CHECK_THROWS_AS(base_point(place::infinite(), ext_rat(rat(3, 2))), out_of_interval);
    CHECK_THROWS_AS(base_point(place::infinite(), ext_rat::inf()), out_of_interval);
    CHECK_THROWS_AS(place::finite(bigint(10)), precondition_error);
}

TEST_CASE("multiplicativity, triangle, boundedness properties") {
    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 1000; ++i) {
        base_point x = random_point(rng);
        rat a = random_rational(rng), b = random_rational(rng);
        if (x.pl.is_finite() && x.eps.infinite) {
            // stay inside the definition domain of a_p^inf
            a = rat(a.get_num());
            b = rat(b.get_num());
        }
        magnitude ma = eval_base_seminorm(x, a);
        magnitude mb = eval_base_seminorm(x, b);
        magnitude mab = eval_base_seminorm(x, a * b);
        CHECK(mab == ma * mb);

        magnitude msum = eval_base_seminorm(x, a + b);
        CHECK(magnitude::leq_sum(msum, {ma, mb}));
        if (x.ultrametric()) {
            magnitude mx = magnitude::max(ma, mb);
            CHECK(msum.leq(mx));
            if (ma.compare(mb) != 0) CHECK(msum == mx);
        }
    }
    // boundedness on Z: |a|_x <= |a|_inf for every point of M(Z)
    for (int i = 0; i < 300; ++i) {
        base_point x = random_point(rng);
        std::uniform_int_distribution<long> zz(-10000, 10000);
        rat a(zz(rng));
        if (a == 0) continue;
        magnitude lhs = eval_base_seminorm(x, a);
        magnitude rhs = magnitude::from_rational(a < 0 ? rat(-a) : a);
        CHECK(lhs.leq(rhs));
    }
}

TEST_CASE("scale point flow") {
    base_point x(place::finite(2), ext_rat(rat(1)));
    base_point y = scale_point(x, rat(3));
    CHECK(y.eps.value == 3);
    CHECK_THROWS_AS(scale_point(base_point(place::infinite(), ext_rat(rat(1, 2))), rat(3)),
                    out_of_interval);
    CHECK(scale_point(base_point(), rat(7)).is_center());

    // seminorm compatibility: |a|_{x^t} = |a|_x^t
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        base_point b = random_point(rng);
        if (b.eps.infinite || b.is_center()) continue;
        rat t(std::uniform_int_distribution<long>(1, 5)(rng),
              std::uniform_int_distribution<long>(1, 5)(rng));
        if (b.pl.is_infinite() && b.eps.value * t > 1) continue;
        rat a = random_rational(rng);
        if (a == 0) continue;
        base_point bt = scale_point(b, t);
        CHECK(eval_base_seminorm(bt, a) == eval_base_seminorm(b, a).pow(t));
    }

    // argmax invariance: powers preserve the order of magnitudes
    for (int i = 0; i < 100; ++i) {
        base_point b = random_point(rng);
        if (b.eps.infinite || b.is_center()) continue;
        rat t(std::uniform_int_distribution<long>(1, 4)(rng));
        if (b.pl.is_infinite() && b.eps.value * t > 1) continue;
        base_point bt = scale_point(b, t);
        std::vector<rat> S;
        for (int k = 0; k < 6; ++k) S.push_back(random_rational(rng));
        size_t best0 = 0, best1 = 0;
        for (size_t k = 1; k < S.size(); ++k) {
            if (eval_base_seminorm(b, S[best0]).less(eval_base_seminorm(b, S[k]))) best0 = k;
            if (eval_base_seminorm(bt, S[best1]).less(eval_base_seminorm(bt, S[k]))) best1 = k;
        }
        CHECK(eval_base_seminorm(b, S[best0]).compare(eval_base_seminorm(b, S[best1])) == 0);
    }
}

TEST_CASE("sup norm on compacts vs grid oracle") {
    // worked example: caps eps_2 = 1, eps_inf = 1/2, a = 3/2
    star_compact V;
    V.caps[place::finite(2)] = rat(1);
    V.caps[place::infinite()] = rat(1, 2);
    magnitude n = sup_norm_on_compact(V, rat(3, 2));
    CHECK(n == magnitude::from_rational(rat(2)));

    CHECK(sup_norm_on_compact(V, rat(0)).is_zero());
    CHECK(sup_norm_on_compact(V, rat(1)).is_one());

    // E: all branches capped at 1 including infinity
    star_compact E;
    E.caps[place::infinite()] = rat(1);
    E.cap_all_finite = rat(1);
    CHECK(sup_norm_on_compact(E, rat(6)) == magnitude::from_rational(rat(6)));

    // pole detection
    star_compact W;
    W.caps[place::infinite()] = rat(1);
    CHECK_THROWS_AS(sup_norm_on_compact(W, rat(1, 3)), pole_on_compact);

    // grid oracle: sample eps along each capped branch and at the center;
    // the sup must match the implementation on random inputs
    std::mt19937_64 rng(99);
    for (int i = 0; i < 130; ++i) {
        star_compact C;
        C.caps[place::finite(2)] = rat(std::uniform_int_distribution<long>(1, 4)(rng));
        C.caps[place::finite(5)] = rat(std::uniform_int_distribution<long>(1, 3)(rng),
                                       2);
        C.caps[place::infinite()] =
            rat(std::uniform_int_distribution<long>(1, 4)(rng), 4);
        long num = std::uniform_int_distribution<long>(-400, 400)(rng);
        long den_pow2 = std::uniform_int_distribution<long>(0, 4)(rng);
        long den_pow5 = std::uniform_int_distribution<long>(0, 2)(rng);
        if (num == 0) continue;
        rat a = rat(num) / rat_pow(rat(2), den_pow2) / rat_pow(rat(5), den_pow5);
        magnitude impl = sup_norm_on_compact(C, a);
        magnitude grid = magnitude::one();
        for (auto& [pl, cap] : C.caps) {
            const int steps = 16;
            for (int k = 1; k <= steps; ++k) {
                rat e = cap * rat(k, steps);
                grid = magnitude::max(grid, eval_base_seminorm(base_point(pl, ext_rat(e)), a));
            }
        }
        // uncapped branches contribute <= 1 (sampled at a few exponents)
        for (long p : {3L, 7L}) {
            for (int k = 1; k <= 4; ++k)
                grid = magnitude::max(
                    grid, eval_base_seminorm(base_point(place::finite(p), ext_rat(rat(k))), a));
        }
        CHECK(impl.compare(grid) == 0);
    }

    // submultiplicativity
    for (int i = 0; i < 100; ++i) {
        star_compact C;
        C.caps[place::finite(3)] = rat(1);
        C.caps[place::infinite()] = rat(1, 2);
        rat a = random_rational(rng), b = random_rational(rng);
        // keep denominators inside Z[1/3]
        a = rat(a.get_num(), 1) / rat_pow(rat(3), std::uniform_int_distribution<long>(0, 3)(rng));
        b = rat(b.get_num(), 1) / rat_pow(rat(3), std::uniform_int_distribution<long>(0, 3)(rng));
        if (a == 0 || b == 0) continue;
        magnitude ab = sup_norm_on_compact(C, a * b);
        magnitude prod = sup_norm_on_compact(C, a) * sup_norm_on_compact(C, b);
        CHECK(ab.leq(prod));
    }
}

TEST_CASE("paths through the star") {
    base_point a2(place::finite(2), ext_rat(rat(1)));
    base_point a2b(place::finite(2), ext_rat(rat(3)));
    auto p1 = path_between(a2, a2b);
    REQUIRE(p1.size() == 1);
    CHECK(p1[0].pl == place::finite(2));

    base_point ainf(place::infinite(), ext_rat(rat(1, 2)));
    auto p2 = path_between(a2, ainf);
    REQUIRE(p2.size() == 2);
    CHECK(p2[0].pl == place::finite(2));
    CHECK(p2[0].eps_to.is_zero());
    CHECK(p2[1].pl == place::infinite());
    CHECK(p2[1].eps_from.is_zero());

    auto p3 = path_between(a2, a2);
    REQUIRE(p3.size() == 1);
    CHECK(p3[0].eps_from == p3[0].eps_to);
}

TEST_CASE("neighborhood base at the center") {
    star_compact all = neighborhood_base_a0({});
    CHECK(all.caps.empty());
    CHECK(sup_norm_on_compact(all, rat(7)) == magnitude::from_rational(rat(7)));

    std::map<place, rat> ex;
    ex[place::finite(2)] = rat(1, 2);
    star_compact trunc2 = neighborhood_base_a0(ex);
    CHECK(trunc2.cap_of(place::finite(2)) == ext_rat(rat(1, 2)));
    CHECK(trunc2.branch_is_full(place::finite(3)));

    std::map<place, rat> ex2;
    ex2[place::infinite()] = rat(1, 3);
    ex2[place::finite(3)] = rat(2);
    star_compact two = neighborhood_base_a0(ex2);
    // intersection of two basis elements is again one
    star_compact both = intersect_neighborhoods(trunc2, two);
    CHECK(both.cap_of(place::finite(2)) == ext_rat(rat(1, 2)));
    CHECK(both.cap_of(place::finite(3)) == ext_rat(rat(2)));
    CHECK(both.cap_of(place::infinite()) == ext_rat(rat(1, 3)));
}
