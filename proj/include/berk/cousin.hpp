#ifndef BERK_COUSIN_HPP
#define BERK_COUSIN_HPP

#include <vector>

#include "berk/series.hpp"
#include "berk/spectrum.hpp"

namespace berk {

/* The two explicit Cousin-Runge systems of M(Z): cut one branch at a
 * single point L. For a finite cut q at exponent alpha, K^- is the branch
 * tail [a_q^alpha, a_q^inf] and K^+ the rest of the star; for the
 * archimedean cut at beta in (0,1), K^- is [a_inf^beta, a_inf] and K^+
 * the rest. Every rational on L splits exactly with constant D = 1.
 */
struct cousin_system_z {
    place cut_place;   // finite(q) or infinite
    rat cut_exponent;  // alpha > 0 (finite), beta in (0,1) (infinite)

    static cousin_system_z finite_cut(const bigint& q, const rat& alpha);
    static cousin_system_z infinite_cut(const rat& beta);

    base_point overlap_point() const; // L = { a_place^cut }
    star_compact k_plus() const;      // K^+ as a star compact
    // K^- is the branch segment [cut, end]; its sup-norm:
    magnitude k_minus_norm(const rat& f) const;
    magnitude k_plus_norm(const rat& f) const;
    magnitude overlap_norm(const rat& f) const; // ||f||_L = |f|_place^cut
};

struct split_result {
    rat f_minus;
    rat f_plus;
    magnitude bound_minus; // ||f^-||_{K^-}
    magnitude bound_plus;  // ||f^+||_{K^+}
    rat D = 1;
};

// finite cut: f^+ is the q-power-denominator fractional part in [0,1),
// computed by modular inversion; f^- = f - f^+ is q-integral
split_result cousin_split_finite(const cousin_system_z& sys, const rat& f);

// infinite cut: integer truncation toward zero
split_result cousin_split_infinite(const cousin_system_z& sys, const rat& f);

split_result cousin_split(const cousin_system_z& sys, const rat& f);

enum class runge_side { minus, plus };

struct runge_result {
    rat f;                        // the invertible twist (1 or q^N)
    std::vector<rat> approximants;
    magnitude runge_product;      // ||f||_L * ||f^{-1}||_L, exactly 1
};

// density with invertible twist: side minus rounds targets q-adically to
// Z[1/q] within eps; side plus clears denominators with f = q^N
runge_result runge_approx(const cousin_system_z& sys, runge_side side,
                          const std::vector<rat>& targets, const rat& eps);

/* Dense rational matrices with the Cousin norms. The matrix norm is the
 * induced max-row-sum of entry norms (certified upper bounds), which is
 * submultiplicative for both cut types.
 */
struct rat_matrix {
    size_t rows = 0, cols = 0;
    std::vector<rat> a; // row major

    rat& at(size_t i, size_t j) { return a[i * cols + j]; }
    const rat& at(size_t i, size_t j) const { return a[i * cols + j]; }
    static rat_matrix identity(size_t n);
    static rat_matrix zero(size_t r, size_t c);
    rat_matrix operator*(const rat_matrix& o) const;
    rat_matrix operator+(const rat_matrix& o) const;
    rat_matrix operator-(const rat_matrix& o) const;
    rat_matrix inverse() const; // exact Gaussian elimination
    rat det() const;
};

// ||M|| at the overlap point: max over rows of sum_j |m_ij|_L (upper bound)
magnitude matrix_overlap_norm(const cousin_system_z& sys, const rat_matrix& M);

struct cartan_result {
    rat_matrix C_minus;
    rat_matrix C_plus;
    magnitude residual_bound;     // ||C^- C^+ - A|| (or the mirrored order)
    magnitude defect_in;          // ||A - I||
    magnitude bound_minus;        // ||C^- - I||
    magnitude bound_plus;         // ||C^+ - I||
    long iterations = 0;
    std::vector<magnitude> defect_trace; // ||M_k - I|| per step
};

/* Iterative Cartan factorization A = C^- C^+ (or A = C^+ C^- with
 * plus_on_left, the order the gluing lemma needs): split M_k - I
 * entrywise, sandwich with the exact inverses, repeat. Quadratic
 * contraction; stops when ||M_k - I|| <= tol.
 */
cartan_result cartan_factor(const cousin_system_z& sys, const rat_matrix& A,
                            const magnitude& tol, const rat& eps0 = rat(1, 8),
                            bool plus_on_left = false);

struct glue_result {
    std::vector<rat> S_minus;       // C^- T^- (minus-side expression)
    std::vector<rat> S_plus_expr;   // (C^+)^{-1} Ubar T^+ (plus-side expression)
    magnitude agreement;            // ||difference||_L, the certificate
    rat c_minus_det;                // unit check
    cartan_result factorization;
};

// glue generating vectors across the cut: A = I + (Ubar - U) V, factor
// A = C^+ C^-, set S^- = C^- T^- = (C^+)^{-1} Ubar T^+ at L
glue_result glue_generators(const cousin_system_z& sys,
                            const std::vector<rat>& T_minus,
                            const std::vector<rat>& T_plus,
                            const rat_matrix& U, const rat_matrix& V,
                            const rat_matrix& Ubar, const magnitude& tol,
                            const rat& eps0 = rat(1, 8));

// coefficientwise Cousin split of a disk element over the cut point
std::pair<disk_element, disk_element> lift_split_to_disk(const cousin_system_z& sys,
                                                         const disk_element& f);

} // namespace berk

#endif
