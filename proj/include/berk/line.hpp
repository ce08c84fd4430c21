#ifndef BERK_LINE_HPP
#define BERK_LINE_HPP

#include <vector>

#include "berk/polynomial.hpp"
#include "berk/spectrum.hpp"

namespace berk {

/* Points of the relative affine line over a base point. Rigid and ball
 * points live over ultrametric (or trivial) base points; archimedean
 * coordinates over the infinite place. Ball radii are expressed in the
 * eps-scaled fiber metric, i.e. the metric of (Q_p, |.|_p^eps), so the
 * scaling flow acts by pure exponent rescaling.
 */
struct fiber_point {
    enum class kind { rigid, ball, arch } k = kind::rigid;
    rat center = 0;   // rigid / ball
    rat radius = 0;   // ball, > 0, eps-scaled
    rat re = 0, im = 0; // arch

    static fiber_point rigid(const rat& a) {
        fiber_point x; x.k = kind::rigid; x.center = a; return x;
    }
    static fiber_point ball(const rat& a, const rat& r) {
        if (r <= 0) throw precondition_error("ball radius must be positive");
        fiber_point x; x.k = kind::ball; x.center = a; x.radius = r; return x;
    }
    static fiber_point arch(const rat& re, const rat& im) {
        fiber_point x; x.k = kind::arch; x.re = re; x.im = im; return x;
    }
};

/* The closed region lo <= |P| <= hi over a base point (or, descriptively,
 * over a star compact). lo = 0, hi = +inf recover disks and the whole
 * line.
 */
struct lemniscate_region {
    poly_q P;
    magnitude lo = magnitude::zero();
    magnitude hi;             // may be "infinite": has_hi == false
    bool has_hi = true;
    bool open_lo = false;
    bool open_hi = false;
};

// radius conversions between the eps-scaled fiber metric and the eps = 1
// metric: r_scaled = r_plain^eps (as magnitudes; exact)
magnitude ball_radius_to_unit_scale(const base_point& b, const rat& r_scaled);
magnitude ball_radius_from_unit_scale(const base_point& b, const magnitude& r_plain);

// |P(x)| over base point b, exact
magnitude eval_line_seminorm(const base_point& b, const fiber_point& x, const poly_q& P);

// Gauss section sigma_r of the projection: eta_{0,r} over ultrametric b,
// the real coordinate r^{1/eps} over archimedean b. |T(sigma_r(b))| = r.
magnitude gauss_section_eval(const base_point& b, const rat& r, const poly_q& P);

struct root_radius {
    magnitude radius;    // |root|_p in the eps = 1 metric of Q_p
    long multiplicity;
    bool zero_radius = false; // the T^v part
};

// Newton polygon root radii of P over Q_p, multiplicities summing to deg P
std::vector<root_radius> newton_root_radii(const poly_q& P, const bigint& p);

struct sigma_rho_data {
    magnitude sigma;  // max_i |a_i/a_d|^{1/(d-i)}
    magnitude rho;    // min(sigma, s * sigma^{1-d})
    magnitude C;      // max(sigma/rho, 1/rho)^dbound
};

// norm lower-bound constants on the polynomial domain D(P; s) over the
// Q_p fiber of b (ultrametric); degenerate on pure powers of T
sigma_rho_data sigma_rho_bound(const poly_q& P, const base_point& b,
                               const rat& s, long degree_bound);

// lo <= |P(x)| <= hi with open flags honored
bool membership(const base_point& b, const fiber_point& x, const lemniscate_region& R);

// connected components of D(P; s) for split P over the Q_p fiber, as
// clusters of roots; each carries its ball radius in the eps = 1 metric
struct root_cluster {
    std::vector<size_t> root_indices; // into the deduplicated root list
    magnitude radius;
};
struct component_partition {
    std::vector<rat> roots;           // distinct rational roots
    std::vector<long> multiplicities;
    std::vector<root_cluster> clusters;
    bool connected() const { return clusters.size() == 1; }
};
component_partition lemniscate_components(const poly_q& P, const rat& s, const bigint& p);

struct rigid_neighborhood_result {
    lemniscate_region region;       // D(mu; s2) over the base point
    rat s1, s2;
    bool center_is_member = false;
    bool split_over_q = false;      // components certificate available
    bool connected = false;         // meaningful when split_over_q
};

// certified neighborhood D(mu, s), s in [s1, s2], of the rigid points cut
// out by a separable mu; connectedness certified via root clustering when
// mu splits over Q
rigid_neighborhood_result rigid_neighborhood(const base_point& b, const poly_q& mu,
                                             const rat& s1, const rat& s2);

} // namespace berk

#endif
