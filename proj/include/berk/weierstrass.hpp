#ifndef BERK_WEIERSTRASS_HPP
#define BERK_WEIERSTRASS_HPP

#include <optional>
#include <vector>

#include "berk/polynomial.hpp"
#include "berk/series.hpp"

namespace berk {

/* Weierstrass division and preparation on a fiber disk, with certified
 * norm control. The division is centered: the divisor's zero of interest
 * sits at T = 0 (callers move a rational rigid center there with
 * taylor_shift), so the Weierstrass degree is the T-adic valuation of
 * the fiber restriction.
 */

// smallest stored exponent with nonzero coefficient; nullopt when the
// window is identically zero (inconclusive)
std::optional<long> fiber_valuation(const disk_element& G);

struct division_result {
    disk_element Q;
    poly_q R;          // degree < n
    long n = 0;        // Weierstrass degree used
    magnitude norm_F;  // ||F|| at the working radius
    magnitude norm_Q;
    magnitude norm_R;
    rat contraction = rat(1, 2); // certified bound on ||A_s - Id||
};

/* F = Q G + R exactly through the window, deg R < n. The unit part of G
 * is inverted by a truncated geometric series whose truncation error is
 * folded into the tail, and the certified smallness check
 * ||K G - T^n||_s <= s^n / 4 guarantees the contraction bound 1/2.
 */
division_result weierstrass_divide(const disk_element& F, const disk_element& G,
                                   const rat& s);

// independent second pass: coefficientwise triangular solve (same answer)
division_result weierstrass_divide_triangular(const disk_element& F,
                                              const disk_element& G, const rat& s);

struct preparation_result {
    poly_q omega;      // monic of degree n
    disk_element unit; // E with G = omega * E through the window
    long n = 0;
};

// G = omega * E with omega = T^n - R' monic and E a unit, through the window
preparation_result weierstrass_prepare(const disk_element& G, const rat& s);

// truncated multiplicative inverse of a unit (nonzero constant term);
// contraction of the geometric series certified at the context radii
disk_element invert_unit(const disk_element& H, const rat& s);

/* Quotient-ring norms modulo a monic G of degree d: the divisorial norm
 * is the coefficient max of the canonical representative; the residual
 * norm ||.||_{v,res} is an infimum over lifts, approached from above by
 * evaluating ||rep + H G||_v on caller-chosen lifts.
 */
struct quotient_element {
    poly_q rep;        // canonical representative, degree < d
    poly_q modulus;    // monic G, degree d
    base_point base;   // coefficient seminorms live here
    rat v_param = 1;   // residual-norm radius

    void validate() const;
};

magnitude divisorial_norm(const quotient_element& x);
magnitude residual_norm_upper(const quotient_element& x, const poly_q& lift_increment);

// the smallness condition sum ||g_i|| v^{i-d} <= 1/2 backing the
// divisorial/residual equivalence constants
bool residual_smallness_holds(const quotient_element& x);

// weighted polynomial norm ||F||_v = max ||a_i|| v^i
magnitude weighted_poly_norm(const poly_q& F, const base_point& b, const rat& v);

/* Sparse multivariate polynomial window, only as far as the change of
 * variables needs: substitute T_i <- T_i + T_n^{u_i} and test the
 * restriction to the last axis.
 */
struct multi_poly {
    size_t nvars = 1;
    std::map<std::vector<long>, rat> terms; // exponent vector -> coefficient

    void validate() const;
};

// lexicographically least u with entries in [1, u_max] such that the
// substituted series is nonzero on the last-variable axis within degree
// bound; nullopt when the search space is exhausted (inconclusive)
std::optional<std::vector<long>> change_of_variables(const multi_poly& f, long u_max,
                                                     long degree_bound);

} // namespace berk

#endif
