////////////////////////////////////////////////////////////////////////////////
// kahler.hpp
////////////////////////////////////////////////////////////////////////////////
/*! @file
//  Complex structure on the fiber: J action on vectors and covectors, the
//  Kähler 2-form Omega, the Lefschetz-type operators L and Lambda, the
//  J-derivation on forms, and Dolbeault (p,q) bigrade projection.
//
//  The flat default pairs coordinate 2-blocks (J e^a = f^a, J f^a = -e^a);
//  any orthogonal J with J^2 = -I is accepted.  All operators are exact in
//  the rational backend, including the bigrade projector, which is computed
//  by polynomial interpolation on the J-derivation spectrum i(p-q) within a
//  fixed total grade (no floating-point eigendecomposition).
//
//  Note two distinct (p,q) notions coexist in this library:
//    - Dolbeault bigrade (this header): eigen-splitting by J; e.g. the
//      covector e^1 - i*Je^1 is pure (1,0).
//    - real bidegree (fiber.hpp): e-factor/f-factor counts; the bilinear
//      identity machinery is homogeneous in THIS bookkeeping.
//  They agree on forms built from whole pair-blocks (e.g. powers of Omega)
//  and differ in general.
*/
////////////////////////////////////////////////////////////////////////////////
#ifndef SPINFORM_KAHLER_HPP
#define SPINFORM_KAHLER_HPP

#include <utility>

#include <spinform/fiber.hpp>

namespace spinform {

template <class S> struct ComplexStructure {
    int m = 0;
    Mat<S> j; // 2m x 2m, acts on vectors: (JX)_B = sum_A j(B,A) X_A

    ComplexStructure() = default;
    explicit ComplexStructure(int m_) : m(m_), j(Mat<S>::Zero(2 * m_, 2 * m_)) {}

    //! J^2 = -I and J^T J = I, both exact.
    bool valid() const {
        Mat<S> jj = j * j;
        Mat<S> jtj = j.transpose() * j;
        for (int r = 0; r < jj.rows(); ++r)
            for (int c = 0; c < jj.cols(); ++c) {
                S want_jj = (r == c) ? S(-scalar_traits<S>::one()) : scalar_traits<S>::zero();
                S want_id = (r == c) ? scalar_traits<S>::one() : scalar_traits<S>::zero();
                if (!scalar_traits<S>::is_zero(S(jj(r, c) - want_jj))) return false;
                if (!scalar_traits<S>::is_zero(S(jtj(r, c) - want_id))) return false;
            }
        return true;
    }
};

//! The standard block structure: J e^a = f^a, J f^a = -e^a.
template <class S> ComplexStructure<S> flat_complex_structure(int m) {
    ComplexStructure<S> J(m);
    for (int a = 0; a < m; ++a) {
        J.j(2 * a + 1, 2 * a) = scalar_traits<S>::one();      // e -> f
        J.j(2 * a, 2 * a + 1) = S(-scalar_traits<S>::one()); // f -> -e
    }
    return J;
}

struct Bigrade {
    int p = 0, q = 0;
};

//! X^{+-} = (X -/+ i JX)/2; returns (X^+, X^-) with X = X^+ + X^-.
template <class S>
std::pair<VectorFiber<S>, VectorFiber<S>> split_pm(const VectorFiber<S> &X,
                                                   const ComplexStructure<S> &J) {
    detail::require_same_m(X.m, J.m);
    const S half = scalar_traits<S>::from_ratio(1, 2);
    const S ihalf = S(half * scalar_traits<S>::unit_i());
    Vec<S> jx = J.j * X.x;
    VectorFiber<S> plus(X.m), minus(X.m);
    plus.x = half * X.x - ihalf * jx;
    minus.x = half * X.x + ihalf * jx;
    return {plus, minus};
}

//! Omega = (1/2) sum_A e^A ^ (J e^A); flat case: sum_a e^a ^ f^a.
template <class S> FormFiber<S> kahler_form(const ComplexStructure<S> &J) {
    FormFiber<S> out(J.m);
    const S half = scalar_traits<S>::from_ratio(1, 2);
    for (int A = 0; A < 2 * J.m; ++A) {
        // (J e^A) as a covector = sum_B j(B,A) e^B (identity metric dual)
        for (int B = 0; B < 2 * J.m; ++B) {
            if (scalar_traits<S>::is_zero(J.j(B, A)) || A == B) continue;
            // e^A ^ e^B, ascending order with sign
            mask_t M = (mask_t(1) << A) | (mask_t(1) << B);
            S coeff = S(half * J.j(B, A));
            out.c[M] += (A < B) ? coeff : S(-coeff);
        }
    }
    return out;
}

//! L a = Omega ^ a.
template <class S>
FormFiber<S> op_L(const FormFiber<S> &a, const ComplexStructure<S> &J) {
    return wedge(kahler_form(J), a);
}

//! Lambda a = (1/2) sum_A i_{JX_A} i_{X_A} a; the adjoint-type contraction.
template <class S>
FormFiber<S> op_Lambda(const FormFiber<S> &a, const ComplexStructure<S> &J) {
    detail::require_same_m(a.m, J.m);
    const S half = scalar_traits<S>::from_ratio(1, 2);
    FormFiber<S> out(a.m);
    for (int A = 0; A < 2 * J.m; ++A) {
        FormFiber<S> ca = contract_index(A, a);
        for (int B = 0; B < 2 * J.m; ++B) {
            if (scalar_traits<S>::is_zero(J.j(B, A))) continue;
            out += S(half * J.j(B, A)) * contract_index(B, ca);
        }
    }
    return out;
}

//! J as a derivation on forms: J a = sum_A (J e^A) ^ i_{X_A} a.
template <class S>
FormFiber<S> op_J_derivation(const FormFiber<S> &a, const ComplexStructure<S> &J) {
    detail::require_same_m(a.m, J.m);
    FormFiber<S> out(a.m);
    for (int A = 0; A < 2 * J.m; ++A) {
        FormFiber<S> ca = contract_index(A, a);
        for (int B = 0; B < 2 * J.m; ++B) {
            if (scalar_traits<S>::is_zero(J.j(B, A))) continue;
            out += J.j(B, A) * wedge_index(B, ca);
        }
    }
    return out;
}

// ---- flat fast paths used by the proof machinery (block layout assumed) ----

//! L for the flat structure: sum_a e^a ^ f^a ^ (.)
template <class S> FormFiber<S> op_L_flat(const FormFiber<S> &a) {
    FormFiber<S> out(a.m);
    for (int ap = 0; ap < a.m; ++ap)
        out += wedge_index(2 * ap, wedge_index(2 * ap + 1, a));
    return out;
}

//! Lambda for the flat structure: sum_a i_{Y_a} i_{X_a} (.)
template <class S> FormFiber<S> op_Lambda_flat(const FormFiber<S> &a) {
    FormFiber<S> out(a.m);
    for (int ap = 0; ap < a.m; ++ap)
        out += contract_index(2 * ap + 1, contract_index(2 * ap, a));
    return out;
}

//! Replace one e-factor by its f-partner: sum_a f^a ^ i_{X_a} (.)
template <class S> FormFiber<S> op_e_to_f(const FormFiber<S> &a) {
    FormFiber<S> out(a.m);
    for (int ap = 0; ap < a.m; ++ap)
        out += wedge_index(2 * ap + 1, contract_index(2 * ap, a));
    return out;
}

//! Replace one f-factor by its e-partner: sum_a e^a ^ i_{Y_a} (.)
template <class S> FormFiber<S> op_f_to_e(const FormFiber<S> &a) {
    FormFiber<S> out(a.m);
    for (int ap = 0; ap < a.m; ++ap)
        out += wedge_index(2 * ap, contract_index(2 * ap + 1, a));
    return out;
}

//! Flat J-derivation = op_e_to_f - op_f_to_e (identity checked in tests).
template <class S> FormFiber<S> op_J_flat(const FormFiber<S> &a) {
    return op_e_to_f(a) - op_f_to_e(a);
}

//! Dolbeault projection onto type (p,q).  Within total grade g = p+q the
//! J-derivation has distinct eigenvalues i(P-Q), P+Q = g; the projector is the
//! Lagrange interpolation polynomial in the J-derivation evaluated on the
//! grade-g part.  Exact over the Gaussian rationals.
template <class S>
FormFiber<S> bigrade_project(const FormFiber<S> &a, const ComplexStructure<S> &J,
                             const Bigrade &bg) {
    detail::require_same_m(a.m, J.m);
    const int m = a.m, p = bg.p, q = bg.q;
    if (p < 0 || q < 0 || p > m || q > m)
        throw std::out_of_range("bigrade_project: (p,q) outside 0..m");
    const int g = p + q;
    FormFiber<S> cur = grade_project(a, g);
    const S I = scalar_traits<S>::unit_i();
    for (int Q = std::max(0, g - m); Q <= std::min(g, m); ++Q) {
        const int P = g - Q;
        if (P == p && Q == q) continue;
        // cur <- (Jop - i(P-Q)) cur / (i(p-q) - i(P-Q))
        S lam_other = S(I * S(P - Q));
        S lam_want = S(I * S(p - q));
        FormFiber<S> num = op_J_derivation(cur, J) - lam_other * cur;
        S denom = S(lam_want - lam_other);
        cur = S(scalar_traits<S>::one() / denom) * num;
    }
    return cur;
}

} // namespace spinform

#endif // SPINFORM_KAHLER_HPP
