////////////////////////////////////////////////////////////////////////////////
// fiber.hpp
////////////////////////////////////////////////////////////////////////////////
/*! @file
//  Graded exterior/Clifford algebra over the 2m-dimensional real cotangent
//  fiber with complex coefficients (1 <= m <= 4).
//
//  Layout: basis covectors are indexed A = 0..2m-1 with A = 2a the a-th
//  "e"-direction and A = 2a+1 its complex-structure partner f^a = J e^a.
//  A basis blade is a subset of covectors encoded as a 2m-bit mask (bit A set
//  iff covector A is a factor), with factors ordered by increasing index.
//  A fiber element stores one coefficient per mask (4^m total).
//
//  Sign conventions:
//    - wedge/contraction signs come from the parity of the number of blade
//      factors below the acted-on index (hardware popcount; O(1) per lookup).
//    - Clifford product of basis blades is the XOR blade with the accumulated
//      reordering parity: v.v = +g(v,v) on covectors.
*/
////////////////////////////////////////////////////////////////////////////////
#ifndef SPINFORM_FIBER_HPP
#define SPINFORM_FIBER_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>

#include <spinform/scalars.hpp>

namespace spinform {

using mask_t = std::uint32_t;

inline int fiber_dim(int m) { return 1 << (2 * m); }
inline int grade_of(mask_t M) { return std::popcount(M); }

//! Count of e-factors (even indices) in a blade: the "real" holomorphic degree.
inline int e_count(mask_t M) { return std::popcount(M & 0x55555555u); }
//! Count of f-factors (odd indices): the "real" anti-holomorphic degree.
inline int f_count(mask_t M) { return std::popcount(M & 0xAAAAAAAAu); }

//! Partner index under the flat complex structure (e <-> f within a pair).
inline int j_partner(int A) { return A ^ 1; }
//! Sign of the flat J action on basis covectors: J e = +f, J f = -e.
inline int j_sign(int A) { return (A & 1) ? -1 : +1; }

//! Parity sign (+1/-1) of moving one factor past the blade factors below bit A.
inline int parity_below(mask_t M, int A) {
    return (std::popcount(M & ((mask_t(1) << A) - 1)) & 1) ? -1 : +1;
}

template <class S> struct FormFiber {
    using Scalar = S;
    int m = 0;
    Vec<S> c; // 4^m blade coefficients, mask-indexed

    FormFiber() = default;
    explicit FormFiber(int m_) : m(m_), c(Vec<S>::Zero(fiber_dim(m_))) {}

    FormFiber &operator+=(const FormFiber &o) { c += o.c; return *this; }
    FormFiber &operator-=(const FormFiber &o) { c -= o.c; return *this; }
    FormFiber &operator*=(const S &s) { c *= s; return *this; }
    friend FormFiber operator+(FormFiber a, const FormFiber &b) { a += b; return a; }
    friend FormFiber operator-(FormFiber a, const FormFiber &b) { a -= b; return a; }
    friend FormFiber operator*(const S &s, FormFiber a) { a.c *= s; return a; }
    friend FormFiber operator-(FormFiber a) { a.c = -a.c; return a; }
};

template <class S> struct VectorFiber {
    using Scalar = S;
    int m = 0;
    Vec<S> x; // 2m components against the orthonormal frame

    VectorFiber() = default;
    explicit VectorFiber(int m_) : m(m_), x(Vec<S>::Zero(2 * m_)) {}
};

//! Grade-sign involutions of the algebra; the conjugation flag additionally
//! conjugates all coefficients.  xi is the reversal anti-automorphism sign
//! (-1)^{floor(p/2)}, eta the main automorphism (-1)^p.
struct Involution {
    enum class Kind { xi, eta, xi_eta };
    Kind kind = Kind::xi;
    bool conjugate = false;
};

inline int eta_sign(int grade) { return (grade & 1) ? -1 : +1; }
inline int xi_sign(int grade) { return ((grade / 2) & 1) ? -1 : +1; }

namespace detail {
inline void require_same_m(int ma, int mb) {
    if (ma != mb)
        throw std::invalid_argument("fiber dimension mismatch (different m)");
}
} // namespace detail

template <class S> FormFiber<S> form_zero(int m) { return FormFiber<S>(m); }

template <class S> FormFiber<S> form_unit(int m) {
    FormFiber<S> out(m);
    out.c[0] = scalar_traits<S>::one();
    return out;
}

//! The basis covector with index A (a single 1-form blade).
template <class S> FormFiber<S> basis_covector(int m, int A) {
    FormFiber<S> out(m);
    out.c[mask_t(1) << A] = scalar_traits<S>::one();
    return out;
}

//! Wedge by the basis covector A from the left: e^A ^ a.
template <class S> FormFiber<S> wedge_index(int A, const FormFiber<S> &a) {
    FormFiber<S> out(a.m);
    const mask_t bit = mask_t(1) << A;
    for (mask_t M = 0; M < mask_t(a.c.size()); ++M) {
        if (M & bit) continue;
        if (scalar_traits<S>::is_zero(a.c[M])) continue;
        out.c[M | bit] = (parity_below(M, A) > 0) ? a.c[M] : S(-a.c[M]);
    }
    return out;
}

//! Contraction by the basis direction A: i_{X_A} a.
template <class S> FormFiber<S> contract_index(int A, const FormFiber<S> &a) {
    FormFiber<S> out(a.m);
    const mask_t bit = mask_t(1) << A;
    for (mask_t M = 0; M < mask_t(a.c.size()); ++M) {
        if (!(M & bit)) continue;
        if (scalar_traits<S>::is_zero(a.c[M])) continue;
        out.c[M & ~bit] = (parity_below(M, A) > 0) ? a.c[M] : S(-a.c[M]);
    }
    return out;
}

//! Left Clifford action of the basis covector A: e^A . a = e^A^a + i_{X_A}a.
template <class S> FormFiber<S> clifford_index(int A, const FormFiber<S> &a) {
    FormFiber<S> out(a.m);
    const mask_t bit = mask_t(1) << A;
    for (mask_t M = 0; M < mask_t(a.c.size()); ++M) {
        if (scalar_traits<S>::is_zero(a.c[M])) continue;
        out.c[M ^ bit] += (parity_below(M, A) > 0) ? a.c[M] : S(-a.c[M]);
    }
    return out;
}

//! Right Clifford multiplication by the A-th basis covector:
//! a . e^A = (wedge - contraction) of the parity-reversed argument.
template <class S> FormFiber<S> clifford_right_index(int A, const FormFiber<S> &a) {
    FormFiber<S> out(a.m);
    const mask_t bit = mask_t(1) << A;
    for (mask_t M = 0; M < mask_t(a.c.size()); ++M) {
        if (scalar_traits<S>::is_zero(a.c[M])) continue;
        int s = eta_sign(grade_of(M)) * parity_below(M, A);
        if (M & bit) s = -s; // contraction branch enters with the opposite sign
        out.c[M ^ bit] += (s > 0) ? a.c[M] : S(-a.c[M]);
    }
    return out;
}

//! Clifford product of basis blades: gamma_Ma . gamma_Mb = sign * gamma_{Ma xor Mb}.
//! Generators of Ma are applied to Mb from the innermost (highest index) out.
inline int blade_clifford_sign(mask_t Ma, mask_t Mb) {
    int sign = 1;
    mask_t cur = Mb;
    // apply the highest factor of Ma first so the product reads left-to-right
    for (int A = 31; A >= 0; --A) {
        const mask_t bit = mask_t(1) << A;
        if (!(Ma & bit)) continue;
        sign *= parity_below(cur, A);
        cur ^= bit;
    }
    return sign;
}

//! Wedge sign for appending blade Mb to blade Ma (0 if they overlap).
inline int blade_wedge_sign(mask_t Ma, mask_t Mb) {
    if (Ma & Mb) return 0;
    int sign = 1;
    // move each factor of Mb leftward past the Ma-factors above it
    for (int B = 0; Mb >> B; ++B) {
        if (!(Mb & (mask_t(1) << B))) continue;
        if (std::popcount(Ma >> (B + 1)) & 1) sign = -sign;
    }
    return sign;
}

template <class S> FormFiber<S> wedge(const FormFiber<S> &a, const FormFiber<S> &b) {
    detail::require_same_m(a.m, b.m);
    FormFiber<S> out(a.m);
    for (mask_t Ma = 0; Ma < mask_t(a.c.size()); ++Ma) {
        if (scalar_traits<S>::is_zero(a.c[Ma])) continue;
        for (mask_t Mb = 0; Mb < mask_t(b.c.size()); ++Mb) {
            if (scalar_traits<S>::is_zero(b.c[Mb])) continue;
            const int s = blade_wedge_sign(Ma, Mb);
            if (s == 0) continue;
            if (s > 0)
                out.c[Ma | Mb] += a.c[Ma] * b.c[Mb];
            else
                out.c[Ma | Mb] -= a.c[Ma] * b.c[Mb];
        }
    }
    return out;
}

template <class S> FormFiber<S> clifford_mul(const FormFiber<S> &a, const FormFiber<S> &b) {
    detail::require_same_m(a.m, b.m);
    FormFiber<S> out(a.m);
    for (mask_t Ma = 0; Ma < mask_t(a.c.size()); ++Ma) {
        if (scalar_traits<S>::is_zero(a.c[Ma])) continue;
        for (mask_t Mb = 0; Mb < mask_t(b.c.size()); ++Mb) {
            if (scalar_traits<S>::is_zero(b.c[Mb])) continue;
            if (blade_clifford_sign(Ma, Mb) > 0)
                out.c[Ma ^ Mb] += a.c[Ma] * b.c[Mb];
            else
                out.c[Ma ^ Mb] -= a.c[Ma] * b.c[Mb];
        }
    }
    return out;
}

//! Contraction with a general fiber vector: i_X a = sum_A X_A i_{X_A} a.
template <class S> FormFiber<S> contract(const VectorFiber<S> &X, const FormFiber<S> &a) {
    detail::require_same_m(X.m, a.m);
    FormFiber<S> out(a.m);
    for (int A = 0; A < 2 * a.m; ++A) {
        if (scalar_traits<S>::is_zero(X.x[A])) continue;
        out += X.x[A] * contract_index(A, a);
    }
    return out;
}

//! Wedge with the metric dual of X (identity metric: same components).
template <class S> FormFiber<S> wedge_dual(const VectorFiber<S> &X, const FormFiber<S> &a) {
    detail::require_same_m(X.m, a.m);
    FormFiber<S> out(a.m);
    for (int A = 0; A < 2 * a.m; ++A) {
        if (scalar_traits<S>::is_zero(X.x[A])) continue;
        out += X.x[A] * wedge_index(A, a);
    }
    return out;
}

template <class S> FormFiber<S> involution_apply(const FormFiber<S> &a, const Involution &j) {
    FormFiber<S> out(a.m);
    for (mask_t M = 0; M < mask_t(a.c.size()); ++M) {
        if (scalar_traits<S>::is_zero(a.c[M])) continue;
        const int g = grade_of(M);
        int s = 1;
        switch (j.kind) {
        case Involution::Kind::xi:     s = xi_sign(g); break;
        case Involution::Kind::eta:    s = eta_sign(g); break;
        case Involution::Kind::xi_eta: s = xi_sign(g) * eta_sign(g); break;
        }
        S v = j.conjugate ? scalar_traits<S>::conj(a.c[M]) : a.c[M];
        out.c[M] = (s > 0) ? v : S(-v);
    }
    return out;
}

template <class S> FormFiber<S> grade_project(const FormFiber<S> &a, int p) {
    if (p < 0 || p > 2 * a.m)
        throw std::out_of_range("grade_project: grade outside 0..2m");
    FormFiber<S> out(a.m);
    for (mask_t M = 0; M < mask_t(a.c.size()); ++M)
        if (grade_of(M) == p) out.c[M] = a.c[M];
    return out;
}

//! Component with exactly p e-factors and q f-factors ("real bidegree").
//! This is the (p,q)-bookkeeping under which the main bilinear identity is
//! homogeneous; it is distinct from the Dolbeault bigrade (see kahler.hpp).
//! Out-of-range (p,q) projects to zero rather than erroring, which keeps the
//! shifted-component recurrences uniform at the boundary.
template <class S> FormFiber<S> real_bidegree_project(const FormFiber<S> &a, int p, int q) {
    FormFiber<S> out(a.m);
    if (p < 0 || q < 0 || p > a.m || q > a.m) return out;
    for (mask_t M = 0; M < mask_t(a.c.size()); ++M)
        if (e_count(M) == p && f_count(M) == q) out.c[M] = a.c[M];
    return out;
}

template <class S> double max_abs(const FormFiber<S> &a) {
    double mx = 0.0;
    for (mask_t M = 0; M < mask_t(a.c.size()); ++M)
        mx = std::max(mx, scalar_traits<S>::abs_approx(a.c[M]));
    return mx;
}

template <class S> bool is_zero(const FormFiber<S> &a) {
    for (mask_t M = 0; M < mask_t(a.c.size()); ++M)
        if (!scalar_traits<S>::is_zero(a.c[M])) return false;
    return true;
}

} // namespace spinform

#endif // SPINFORM_FIBER_HPP
