#include "berk/cousin.hpp"

#include <algorithm>

namespace berk {

cousin_system_z cousin_system_z::finite_cut(const bigint& q, const rat& alpha) {
    if (alpha <= 0) throw precondition_error("finite cut exponent must be positive");
    cousin_system_z s;
    s.cut_place = place::finite(q);
    s.cut_exponent = alpha;
    return s;
}

cousin_system_z cousin_system_z::infinite_cut(const rat& beta) {
    if (!(0 < beta && beta < 1))
        throw precondition_error("infinite cut exponent must lie in (0,1)");
    cousin_system_z s;
    s.cut_place = place::infinite();
    s.cut_exponent = beta;
    return s;
}

base_point cousin_system_z::overlap_point() const {
    return base_point(cut_place, ext_rat(cut_exponent));
}

star_compact cousin_system_z::k_plus() const {
    star_compact V;
    V.caps[cut_place] = cut_exponent;
    return V;
}

magnitude cousin_system_z::k_minus_norm(const rat& f) const {
    ext_rat hi = cut_place.is_finite() ? ext_rat::inf() : ext_rat(rat(1));
    return segment_sup_norm(cut_place, ext_rat(cut_exponent), hi, f);
}

magnitude cousin_system_z::k_plus_norm(const rat& f) const {
    return sup_norm_on_compact(k_plus(), f);
}

magnitude cousin_system_z::overlap_norm(const rat& f) const {
    return eval_base_seminorm(overlap_point(), f);
}

split_result cousin_split_finite(const cousin_system_z& sys, const rat& f) {
    if (!sys.cut_place.is_finite())
        throw precondition_error("cousin_split_finite needs a finite cut");
    const bigint& q = sys.cut_place.prime;
    split_result out;
    if (f == 0) {
        out.f_minus = 0;
        out.f_plus = 0;
        out.bound_minus = magnitude::zero();
        out.bound_plus = magnitude::zero();
        return out;
    }
    long v = padic_valuation(f, q);
    if (v >= 0) {
        out.f_minus = f;
        out.f_plus = 0;
    } else {
        // f = a / (q^k m), gcd(m, q) = 1; the fractional part is c / q^k
        // with c = a m^{-1} mod q^k in [0, q^k)
        long k = -v;
        bigint qk;
        mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(k));
        bigint m = f.get_den() / qk;
        bigint a = f.get_num();
        bigint minv;
        if (mpz_invert(minv.get_mpz_t(), m.get_mpz_t(), qk.get_mpz_t()) == 0)
            throw error("internal: m not invertible mod q^k");
        bigint c = (a % qk) * minv % qk;
        if (c < 0) c += qk;
        out.f_plus = rat(c) / rat(qk);
        out.f_minus = f - out.f_plus;
        if (out.f_minus != 0 && padic_valuation(out.f_minus, q) < 0)
            throw error("internal: minus part not q-integral");
    }
    out.bound_minus = sys.k_minus_norm(out.f_minus);
    out.bound_plus = out.f_plus == 0 ? magnitude::zero() : sys.k_plus_norm(out.f_plus);
    return out;
}

split_result cousin_split_infinite(const cousin_system_z& sys, const rat& f) {
    if (!sys.cut_place.is_infinite())
        throw precondition_error("cousin_split_infinite needs the infinite cut");
    split_result out;
    rat abs = f < 0 ? rat(-f) : f;
    if (abs <= 1) {
        out.f_minus = f;
        out.f_plus = 0;
    } else {
        // integer truncation toward zero: |n| <= |f| and |f - n| < 1
        bigint n;
        mpz_tdiv_q(n.get_mpz_t(), f.get_num().get_mpz_t(), f.get_den().get_mpz_t());
        out.f_plus = rat(n);
        out.f_minus = f - out.f_plus;
    }
    out.bound_minus = out.f_minus == 0 ? magnitude::zero() : sys.k_minus_norm(out.f_minus);
    out.bound_plus = out.f_plus == 0 ? magnitude::zero() : sys.k_plus_norm(out.f_plus);
    return out;
}

split_result cousin_split(const cousin_system_z& sys, const rat& f) {
    return sys.cut_place.is_finite() ? cousin_split_finite(sys, f)
                                     : cousin_split_infinite(sys, f);
}

runge_result runge_approx(const cousin_system_z& sys, runge_side side,
                          const std::vector<rat>& targets, const rat& eps) {
    if (!sys.cut_place.is_finite())
        throw precondition_error("runge_approx is implemented for finite cuts");
    if (eps <= 0) throw precondition_error("eps must be positive");
    const bigint& q = sys.cut_place.prime;
    runge_result out;
    if (side == runge_side::plus) {
        // f = q^N clears every denominator; approximants are exact
        long N = 0;
        for (auto& s : targets)
            if (s != 0) N = std::max(N, -std::min(0L, padic_valuation(s, q)));
        bigint qn;
        mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(N));
        out.f = rat(qn);
        for (auto& s : targets) out.approximants.push_back(s * out.f);
    } else {
        // f = 1; round each target q-adically within eps: find the least
        // j with q^{-j alpha} < eps and match the target mod q^{j}
        out.f = 1;
        long j = 0;
        magnitude eps_m = magnitude::from_rational(eps);
        while (true) {
            magnitude step = magnitude::pow_of(rat(q), rat(-j) * sys.cut_exponent);
            if (step.less(eps_m)) break;
            ++j;
            if (j > 100000) throw error("internal: runaway rounding exponent");
        }
        for (auto& s : targets) {
            if (s == 0) { out.approximants.push_back(rat(0)); continue; }
            long v = padic_valuation(s, q);
            long k = std::max(0L, -v);
            // s = a/(q^k m); approximate by c/q^k with c = a m^{-1} mod q^{k+j}
            bigint qk, qkj;
            mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(k));
            mpz_pow_ui(qkj.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(k + j));
            bigint m = s.get_den() / qk;
            bigint a = s.get_num();
            bigint minv;
            if (mpz_invert(minv.get_mpz_t(), m.get_mpz_t(), qkj.get_mpz_t()) == 0)
                throw error("internal: m not invertible mod q^{k+j}");
            bigint c = (a % qkj) * minv % qkj;
            if (c < 0) c += qkj;
            out.approximants.push_back(rat(c) / rat(qk));
        }
    }
    // ||f||_L ||f^{-1}||_L = 1 exactly on the single-point overlap
    out.runge_product = sys.overlap_norm(out.f) * sys.overlap_norm(rat(1) / out.f);
    return out;
}

rat_matrix rat_matrix::identity(size_t n) {
    rat_matrix m;
    m.rows = m.cols = n;
    m.a.assign(n * n, rat(0));
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

rat_matrix rat_matrix::zero(size_t r, size_t c) {
    rat_matrix m;
    m.rows = r;
    m.cols = c;
    m.a.assign(r * c, rat(0));
    return m;
}

rat_matrix rat_matrix::operator*(const rat_matrix& o) const {
    if (cols != o.rows) throw precondition_error("matrix shape mismatch");
    rat_matrix out = zero(rows, o.cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t k = 0; k < cols; ++k) {
            const rat& x = at(i, k);
            if (x == 0) continue;
            for (size_t j = 0; j < o.cols; ++j)
                out.at(i, j) += x * o.at(k, j);
        }
    return out;
}

rat_matrix rat_matrix::operator+(const rat_matrix& o) const {
    if (rows != o.rows || cols != o.cols)
        throw precondition_error("matrix shape mismatch");
    rat_matrix out = *this;
    for (size_t i = 0; i < a.size(); ++i) out.a[i] += o.a[i];
    return out;
}

rat_matrix rat_matrix::operator-(const rat_matrix& o) const {
    if (rows != o.rows || cols != o.cols)
        throw precondition_error("matrix shape mismatch");
    rat_matrix out = *this;
    for (size_t i = 0; i < a.size(); ++i) out.a[i] -= o.a[i];
    return out;
}

rat_matrix rat_matrix::inverse() const {
    if (rows != cols) throw precondition_error("inverse of non-square matrix");
    size_t n = rows;
    rat_matrix work = *this;
    rat_matrix inv = identity(n);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && work.at(piv, col) == 0) ++piv;
        if (piv == n) throw precondition_error("singular matrix");
        if (piv != col)
            for (size_t j = 0; j < n; ++j) {
                std::swap(work.at(piv, j), work.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        rat d = work.at(col, col);
        for (size_t j = 0; j < n; ++j) {
            work.at(col, j) /= d;
            inv.at(col, j) /= d;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            rat factor = work.at(i, col);
            if (factor == 0) continue;
            for (size_t j = 0; j < n; ++j) {
                work.at(i, j) -= factor * work.at(col, j);
                inv.at(i, j) -= factor * inv.at(col, j);
            }
        }
    }
    return inv;
}

rat rat_matrix::det() const {
    if (rows != cols) throw precondition_error("det of non-square matrix");
    rat_matrix work = *this;
    rat d(1);
    size_t n = rows;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && work.at(piv, col) == 0) ++piv;
        if (piv == n) return rat(0);
        if (piv != col) {
            for (size_t j = 0; j < n; ++j) std::swap(work.at(piv, j), work.at(col, j));
            d = -d;
        }
        d *= work.at(col, col);
        rat pivv = work.at(col, col);
        for (size_t i = col + 1; i < n; ++i) {
            rat factor = work.at(i, col) / pivv;
            if (factor == 0) continue;
            for (size_t j = col; j < n; ++j)
                work.at(i, j) -= factor * work.at(col, j);
        }
    }
    return d;
}

magnitude matrix_overlap_norm(const cousin_system_z& sys, const rat_matrix& M) {
    magnitude best = magnitude::zero();
    for (size_t i = 0; i < M.rows; ++i) {
        std::vector<magnitude> row;
        for (size_t j = 0; j < M.cols; ++j) {
            if (M.at(i, j) == 0) continue;
            row.push_back(sys.overlap_norm(M.at(i, j)));
        }
        if (row.empty()) continue;
        magnitude rn = sys.cut_place.ultrametric()
                           ? [&] {
                                 magnitude m = magnitude::zero();
                                 for (auto& t : row) m = magnitude::max(m, t);
                                 return m;
                             }()
                           : magnitude::sum_upper(row);
        best = magnitude::max(best, rn);
    }
    return best;
}

namespace {

// entrywise Cousin split of M into (H^-, H^+)
void split_matrix(const cousin_system_z& sys, const rat_matrix& M,
                  rat_matrix& Hm, rat_matrix& Hp) {
    Hm = rat_matrix::zero(M.rows, M.cols);
    Hp = rat_matrix::zero(M.rows, M.cols);
    for (size_t i = 0; i < M.rows; ++i)
        for (size_t j = 0; j < M.cols; ++j) {
            auto s = cousin_split(sys, M.at(i, j));
            Hm.at(i, j) = s.f_minus;
            Hp.at(i, j) = s.f_plus;
        }
}

} // namespace

cartan_result cartan_factor(const cousin_system_z& sys, const rat_matrix& A,
                            const magnitude& tol, const rat& eps0,
                            bool plus_on_left) {
    if (A.rows != A.cols) throw precondition_error("cartan_factor needs square A");
    size_t n = A.rows;
    cartan_result res;
    res.defect_in = matrix_overlap_norm(sys, A - rat_matrix::identity(n));
    if (!res.defect_in.less(magnitude::from_rational(eps0)))
        throw not_contractive("||A - I|| >= eps0");

    rat_matrix M = A;
    rat_matrix Cm = rat_matrix::identity(n); // ordered product of (I + H^-)
    rat_matrix Cp = rat_matrix::identity(n); // reverse product of (I + H^+)
    long max_steps = 256;
    magnitude defect = res.defect_in;
    while (res.iterations < max_steps) {
        res.defect_trace.push_back(defect);
        if (defect.leq(tol)) break;
        rat_matrix Hm, Hp;
        split_matrix(sys, M - rat_matrix::identity(n), Hm, Hp);
        rat_matrix Fm = rat_matrix::identity(n) + Hm;
        rat_matrix Fp = rat_matrix::identity(n) + Hp;
        if (plus_on_left) {
            // A = (prod F_p) M_k (prod F_m reversed)
            M = Fp.inverse() * M * Fm.inverse();
            Cp = Cp * Fp;
            Cm = Fm * Cm;
        } else {
            M = Fm.inverse() * M * Fp.inverse();
            Cm = Cm * Fm;
            Cp = Fp * Cp;
        }
        ++res.iterations;
        magnitude next = matrix_overlap_norm(sys, M - rat_matrix::identity(n));
        // the scheme contracts quadratically; a non-shrinking defect means
        // the truncation floor has been reached
        if (!next.less(defect) && !next.leq(tol))
            throw tolerance_unreachable("cartan iteration stalled above tolerance");
        defect = next;
    }
    if (!defect.leq(tol))
        throw tolerance_unreachable("cartan iteration exceeded the step budget");

    res.C_minus = Cm;
    res.C_plus = Cp;
    rat_matrix prod = plus_on_left ? Cp * Cm : Cm * Cp;
    res.residual_bound = matrix_overlap_norm(sys, prod - A);
    res.bound_minus = matrix_overlap_norm(sys, Cm - rat_matrix::identity(n));
    res.bound_plus = matrix_overlap_norm(sys, Cp - rat_matrix::identity(n));
    return res;
}

glue_result glue_generators(const cousin_system_z& sys,
                            const std::vector<rat>& T_minus,
                            const std::vector<rat>& T_plus,
                            const rat_matrix& U, const rat_matrix& V,
                            const rat_matrix& Ubar, const magnitude& tol,
                            const rat& eps0) {
    size_t p = T_minus.size(), qn = T_plus.size();
    if (U.rows != p || U.cols != qn || V.rows != qn || V.cols != p ||
        Ubar.rows != p || Ubar.cols != qn)
        throw precondition_error("glue_generators: shape mismatch");

    auto apply = [](const rat_matrix& M, const std::vector<rat>& v) {
        std::vector<rat> out(M.rows, rat(0));
        for (size_t i = 0; i < M.rows; ++i)
            for (size_t j = 0; j < M.cols; ++j)
                out[i] += M.at(i, j) * v[j];
        return out;
    };

    // transition identities at L
    auto UTp = apply(U, T_plus);
    for (size_t i = 0; i < p; ++i)
        if (UTp[i] != T_minus[i])
            throw precondition_error("T^- != U T^+ at the overlap");
    auto VTm = apply(V, T_minus);
    for (size_t j = 0; j < qn; ++j)
        if (VTm[j] != T_plus[j])
            throw precondition_error("T^+ != V T^- at the overlap");

    rat_matrix A = rat_matrix::identity(p) + (Ubar - U) * V;
    // the gluing lemma wants A = C^+ C^-
    glue_result res;
    res.factorization = cartan_factor(sys, A, tol, eps0, /*plus_on_left=*/true);

    res.S_minus = apply(res.factorization.C_minus, T_minus);
    res.S_plus_expr = apply(res.factorization.C_plus.inverse(), apply(Ubar, T_plus));
    std::vector<magnitude> diffs;
    magnitude agree = magnitude::zero();
    for (size_t i = 0; i < p; ++i) {
        rat d = res.S_minus[i] - res.S_plus_expr[i];
        if (d != 0) agree = magnitude::max(agree, sys.overlap_norm(d));
    }
    res.agreement = agree;
    res.c_minus_det = res.factorization.C_minus.det();
    return res;
}

std::pair<disk_element, disk_element> lift_split_to_disk(const cousin_system_z& sys,
                                                         const disk_element& f) {
    // the series context must sit over the cut point
    if (!(f.ctx.base == sys.overlap_point()))
        throw context_mismatch("series context is not over the cut point");
    disk_element fm = f, fp = f;
    fm.coeffs.clear();
    fp.coeffs.clear();
    for (auto& [n, c] : f.coeffs) {
        auto s = cousin_split(sys, c);
        if (s.f_minus != 0) fm.coeffs[n] = s.f_minus;
        if (s.f_plus != 0) fp.coeffs[n] = s.f_plus;
    }
    // tails inherit termwise with D = 1
    fm.tail = f.tail;
    fp.tail = f.tail;
    return {fm, fp};
}

} // namespace berk
