#ifndef BERK_SERIES_HPP
#define BERK_SERIES_HPP

#include <map>
#include <optional>
#include <vector>

#include "berk/magnitude.hpp"
#include "berk/spectrum.hpp"

namespace berk {

enum class norm_flavor { sum, max };

/* Where a series lives: a base point (coefficient norms are seminorms
 * there) and an annulus s <= |T| <= t. s = 0 is the disk case. The max
 * flavor is the ultrametric norm max ||a_n|| w^n, the sum flavor the
 * 1-norm sum ||a_n|| w^n.
 */
struct series_context {
    base_point base;
    rat s = 0;
    rat t = 1;
    norm_flavor flavor = norm_flavor::max;

    void validate() const;
    bool operator==(const series_context& o) const {
        return base == o.base && s == o.s && t == o.t && flavor == o.flavor;
    }
};

/* Truncated power/Laurent series with exact rational coefficients on an
 * exponent window and a certified bound on the norm of everything
 * omitted. Operations propagate tails so every reported norm is a true
 * enclosure.
 */
struct disk_element {
    series_context ctx;
    long window_lo = 0;
    long window_hi = 64;
    std::map<long, rat> coeffs; // exponent -> coefficient, within window
    magnitude tail;             // bound on the omitted terms' (s,t)-norm

    void validate() const;
    bool truncation_limited() const { return !tail.is_zero(); }

    static disk_element from_coeffs(series_context ctx,
                                    std::map<long, rat> coeffs,
                                    long window_lo = 0, long window_hi = 64,
                                    magnitude tail = magnitude::zero());
    static disk_element from_poly(const series_context& ctx,
                                  const std::vector<rat>& coeffs,
                                  long window_hi = 64);
};

struct norm_interval {
    magnitude lower;
    magnitude upper;
};

// ||f|| at outer radius t' <= t (weight t'^n; disk case)
norm_interval norm_disk(const disk_element& f, const rat& t_prime);

// ||f|| with weight max(s'^n, t'^n) on the stored window
norm_interval norm_annulus(const disk_element& f, const rat& s_prime, const rat& t_prime);

disk_element add(const disk_element& f, const disk_element& g);
disk_element sub(const disk_element& f, const disk_element& g);
disk_element mul(const disk_element& f, const disk_element& g);
disk_element scale(const disk_element& f, const rat& c);

// shift exponents by k (multiply by T^k), window shifts with it
disk_element shift_exponents(const disk_element& f, long k);

// recenter T <- T + a on a tail-free disk window (exact Taylor shift);
// moves a rational rigid center to 0 ahead of centered division
disk_element shift_center(const disk_element& f, const rat& a);

// shrink the window, folding dropped coefficients into the tail bound
disk_element rewindow(const disk_element& f, long lo, long hi);

/* Restriction to a subannulus s < u <= v < t; same coefficients, new
 * certified tail from the restriction factor s/(u-s) + t/(t-v), with
 * s/(u-s) = 0 when s = 0. Emits the per-coefficient certificates
 * ||a_n|| max(u^n, v^n) <= ||f||_{C(s,t)}.
 */
struct restriction_result {
    disk_element restricted;
    magnitude factor_bound;              // factor * upper norm used for the tail
    bool per_coefficient_certified = false;
};
restriction_result restrict_annulus(const disk_element& f, const rat& u, const rat& v);

/* Radius-of-convergence certificates for coefficient streams. The decay
 * certificate asserts |f_i|_sigma^{eps} <= C * rho^i for all i (checked on
 * the stored window, declarative for the tail); the growth certificate
 * asserts |f_i|_sigma^{eps} >= C * rho^i on an infinite subsequence.
 */
struct decay_certificate {
    magnitude C;
    magnitude rho;
    long from = 0; // the bound is asserted for indices >= from
};

struct radius_profile_entry {
    base_point at;   // place and eps
    rat r;           // required radius bound
};

enum class radius_verdict { certified, refuted, inconclusive };

struct radius_check_result {
    radius_verdict verdict = radius_verdict::inconclusive;
    std::vector<rat> witnesses; // per profile entry: the s > r used (certified case)
};

radius_check_result radius_check(
    const std::map<long, rat>& coeff_window,
    bool finitely_supported,
    const std::map<place, decay_certificate>& decay,
    const std::map<place, decay_certificate>& growth,
    const std::vector<radius_profile_entry>& profile);

/* One-branch restriction isomorphism: on W = { a_sigma^eps : eps in [u,v] }
 * and radii r in [0,1), membership in O(D_W(r)) is equivalent to the
 * convergence condition at the single endpoint eps = v. Verifies both
 * predicates on f and returns their agreement.
 */
bool branch_restriction_isomorphism_check(
    const std::map<long, rat>& coeff_window,
    bool finitely_supported,
    const std::optional<decay_certificate>& base_scale_decay, // at eps = 1
    const place& sigma, const rat& u, const rat& v, const rat& r);

} // namespace berk

#endif
