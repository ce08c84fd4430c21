#ifndef BERK_ERRORS_HPP
#define BERK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace berk {

/* All library failures are exceptions derived from berk::error.
 * precondition_error covers malformed inputs; unresolved_comparison is
 * reserved for exact comparisons that exceed the precision ceiling, so
 * callers can distinguish "cannot decide" from "invalid".
 */
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

struct precondition_error : error {
    explicit precondition_error(const std::string& what) : error(what) {}
};

struct unresolved_comparison : error {
    explicit unresolved_comparison(const std::string& what) : error(what) {}
};

#define BERK_ERROR_TYPE(name)                                           \
    struct name : precondition_error {                                  \
        explicit name(const std::string& what) : precondition_error(what) {} \
    }

BERK_ERROR_TYPE(pole_at_point);
BERK_ERROR_TYPE(pole_on_compact);
BERK_ERROR_TYPE(out_of_interval);
BERK_ERROR_TYPE(illegal_point);
BERK_ERROR_TYPE(zero_polynomial);
BERK_ERROR_TYPE(degenerate_polynomial);
BERK_ERROR_TYPE(non_split_polynomial);
BERK_ERROR_TYPE(inseparable_unsupported);
BERK_ERROR_TYPE(radius_violation);
BERK_ERROR_TYPE(context_mismatch);
BERK_ERROR_TYPE(not_divisible);
BERK_ERROR_TYPE(contraction_failure);
BERK_ERROR_TYPE(smallness_violated);
BERK_ERROR_TYPE(not_contractive);
BERK_ERROR_TYPE(tolerance_unreachable);

#undef BERK_ERROR_TYPE

} // namespace berk

#endif
