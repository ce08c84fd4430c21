#ifndef BERK_MAGNITUDE_HPP
#define BERK_MAGNITUDE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "berk/rational.hpp"

namespace berk {

/* magnitude: an exact nonnegative real, either zero or a finite product
 *
 *     prod_i  b_i ^ e_i      (b_i integers >= 2, pairwise coprime,
 *                             e_i nonzero rationals)
 *
 * This is the codomain of every seminorm in the kernel. Pairwise-coprime
 * bases make equality decidable by pure exponent comparison (factor
 * refinement, no integer factoring needed); strict order falls back to
 * adaptive-precision interval logarithms, which terminate for unequal
 * values and report unresolved only past the precision ceiling.
 */
class magnitude {
public:
    magnitude() : zero_(true) {}                       // the zero value

    static magnitude zero() { return magnitude(); }
    static magnitude one();
    static magnitude from_rational(const rat& q);      // q > 0 required
    static magnitude pow_of(const rat& base, const rat& expo); // base > 0

    bool is_zero() const { return zero_; }
    bool is_one() const { return !zero_ && factors_.empty(); }

    // exact rational value when all exponents are integers
    std::optional<rat> as_rational() const;

    magnitude operator*(const magnitude& o) const;
    magnitude operator/(const magnitude& o) const;     // o nonzero
    magnitude pow(const rat& t) const;                 // 0^t = 0 for t > 0

    // three-way exact comparison; throws unresolved_comparison past the
    // ceiling (bits); ceiling <= 0 means the configured default
    int compare(const magnitude& o, long ceiling_bits = 0) const;

    // exact value equality (refined quotient test; never needs intervals)
    bool operator==(const magnitude& o) const;
    bool operator!=(const magnitude& o) const { return !(*this == o); }
    bool less(const magnitude& o, long ceiling_bits = 0) const {
        return compare(o, ceiling_bits) < 0;
    }
    bool leq(const magnitude& o, long ceiling_bits = 0) const {
        return compare(o, ceiling_bits) <= 0;
    }

    static magnitude max(const magnitude& a, const magnitude& b);
    static magnitude min(const magnitude& a, const magnitude& b);

    const std::map<bigint, rat>& factors() const { return factors_; }

    std::string str() const;

    // dyadic enclosure [lo, hi] at the working precision; exact when the
    // value is a dyadic rational within reach
    void enclose(rat& lo, rat& hi, long prec_bits) const;

    // Certified sum arithmetic. Sums of magnitudes are generally not
    // magnitudes; these return dyadic-rational magnitudes bracketing the
    // sum, sharp (lo == hi) when every term is rational.
    static magnitude sum_upper(const std::vector<magnitude>& terms, long prec_bits = 128);
    static magnitude sum_lower(const std::vector<magnitude>& terms, long prec_bits = 128);

    // certified a <= sum(terms); escalates precision up to the ceiling
    static bool leq_sum(const magnitude& a, const std::vector<magnitude>& terms,
                        long ceiling_bits = 0);

    static long default_ceiling_bits;  // 4096 unless reconfigured

private:
    bool zero_;
    std::map<bigint, rat> factors_;

    void insert_base(const bigint& b, const rat& e);
    void refine();
    static int compare_unequal_interval(const magnitude& a, const magnitude& b,
                                        long ceiling_bits);
};

} // namespace berk

#endif
