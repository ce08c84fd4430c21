#ifndef BERK_SPECTRUM_HPP
#define BERK_SPECTRUM_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "berk/magnitude.hpp"
#include "berk/rational.hpp"

namespace berk {

/* Points and star-shaped compacts of the spectrum of Z[1/N].
 *
 * The spectrum is a star: a central point a_0 (trivial absolute value)
 * and one branch per place, parameterized by the exponent eps. Finite
 * branches run over eps in [0, +inf], the archimedean branch over [0, 1].
 */

enum class place_kind { finite, infinite, trivial };

struct place {
    place_kind kind = place_kind::trivial;
    bigint prime = 0; // set only for finite places

    place() = default;
    static place finite(const bigint& p);
    static place infinite() { place pl; pl.kind = place_kind::infinite; return pl; }
    static place trivial() { return place(); }

    bool is_finite() const { return kind == place_kind::finite; }
    bool is_infinite() const { return kind == place_kind::infinite; }
    bool is_trivial() const { return kind == place_kind::trivial; }
    bool ultrametric() const { return kind != place_kind::infinite; }

    friend bool operator==(const place& a, const place& b) {
        return a.kind == b.kind && (a.kind != place_kind::finite || a.prime == b.prime);
    }
    friend bool operator<(const place& a, const place& b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        return a.kind == place_kind::finite && a.prime < b.prime;
    }
    std::string str() const;
};

/* a_sigma^eps in canonical form: eps = 0 collapses to the trivial point,
 * eps = +inf only on finite branches, eps <= 1 on the archimedean one.
 */
struct base_point {
    place pl;
    ext_rat eps;

    base_point() : pl(place::trivial()), eps(rat(0)) {}
    base_point(const place& p, const ext_rat& e);

    bool is_center() const { return pl.is_trivial(); }
    bool ultrametric() const { return pl.ultrametric(); }

    friend bool operator==(const base_point& a, const base_point& b) {
        return a.pl == b.pl && a.eps == b.eps;
    }
    std::string str() const;
};

/* Star compact of M(Z[1/N]): finitely many branches truncated at a cap,
 * all other branches kept in full. Contains a_0 by construction. A finite
 * branch may be capped only if its prime is inverted (the denominators
 * set), so Z[1/denominators] has no poles on the compact. cap_all_finite
 * caps every unlisted finite branch at a common exponent (inverting every
 * prime); it exists for compacts like E = { |p(x)| >= 1/p  for all p }.
 */
struct star_compact {
    std::map<place, rat> caps;          // capped places, cap > 0, legal per place
    std::optional<rat> cap_all_finite;  // default cap for unlisted finite places

    std::set<bigint> denominators() const;
    bool branch_is_full(const place& p) const;
    ext_rat cap_of(const place& p) const;  // +inf / 1 when kept in full
    void validate() const;
};

// One leg of a path through the star, traversed from eps_from to eps_to.
struct branch_segment {
    place pl;
    ext_rat eps_from;
    ext_rat eps_to;
};

// |a|_x as an exact magnitude. At a_p^{+inf} the seminorm is defined on
// the p-integers only; a pole there raises pole_at_point.
magnitude eval_base_seminorm(const base_point& x, const rat& a);

// sup-norm over a star compact, lem:AOV style: max over capped places of
// |a|^cap, joined with 1 (attained at a_0) when a != 0. Requires a to
// have no pole on the compact.
magnitude sup_norm_on_compact(const star_compact& V, const rat& a);

// sup of |a| over a closed branch segment (used by the Cousin compacts
// K^- which are branch tails, not star compacts)
magnitude segment_sup_norm(const place& pl, const ext_rat& lo, const ext_rat& hi,
                           const rat& a);

// the unique injective path x -> y through the star
std::vector<branch_segment> path_between(const base_point& x, const base_point& y);

// the scaling flow x -> x^t; errors out of the branch interval
base_point scale_point(const base_point& x, const rat& t);

// Ostrowski neighborhood of a_0: truncate exactly the listed branches
star_compact neighborhood_base_a0(const std::map<place, rat>& excluded);

// intersection of two such neighborhoods (again one of them)
star_compact intersect_neighborhoods(const star_compact& a, const star_compact& b);

} // namespace berk

#endif
