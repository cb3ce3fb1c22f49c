////////////////////////////////////////////////////////////////////////////////
// sections.hpp
////////////////////////////////////////////////////////////////////////////////
/*! @file
//  Polynomial sections of the form and spinor bundles over flat space, and the
//  first-order differential operators of the calculus.
//
//  A section is a finite sum of monomial terms: an exponent vector of length
//  2m paired with a fiber value.  Terms live in a std::map keyed by the
//  exponent vector, so iteration order (and therefore serialization and every
//  accumulated result) is deterministic.
//
//  Coordinates are indexed 0..2m-1 in frame order: even indices are the
//  x-coordinates of the complex directions, odd indices the y-coordinates.
//  All direction arguments in this file are 0-based.
//
//  Operators on form sections:   ext_d, coderiv, d_c, delta_c, dslash, dslash_c
//  Operators on spinor sections: dirac, dirac_c, dirac_pm (need a GammaRep)
//  All are assembled from coordinate derivatives and the fiber algebra, so
//  they are exact over the exact scalar backend.
*/
////////////////////////////////////////////////////////////////////////////////
#ifndef SPINFORM_SECTIONS_HPP
#define SPINFORM_SECTIONS_HPP

#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <spinform/fiber.hpp>
#include <spinform/kahler.hpp>
#include <spinform/scalars.hpp>
#include <spinform/spinor.hpp>

namespace spinform {

using Monomial = std::vector<int>; // exponent per coordinate, length 2m

inline int monomial_degree(const Monomial &mono) {
    return std::accumulate(mono.begin(), mono.end(), 0);
}

template <class FiberT> struct PolySection {
    using Fiber = FiberT;
    using Scalar = typename FiberT::Scalar;

    int m = 0;
    int degree_bound = 0; // invariant: every stored monomial has degree <= degree_bound
    std::map<Monomial, FiberT> terms;

    PolySection() = default;
    PolySection(int m_, int degree_bound_) : m(m_), degree_bound(degree_bound_) {}
};

template <class FiberT> PolySection<FiberT> section_zero(int m, int degree_bound) {
    return PolySection<FiberT>(m, degree_bound);
}

//! Accumulate a term; zero fibers are pruned so emptiness tests are exact.
template <class FiberT>
void add_term(PolySection<FiberT> &sec, const Monomial &mono, const FiberT &fib) {
    if (int(mono.size()) != 2 * sec.m)
        throw std::invalid_argument("add_term: exponent vector length must be 2m");
    sec.degree_bound = std::max(sec.degree_bound, monomial_degree(mono));
    auto [it, inserted] = sec.terms.emplace(mono, fib);
    if (!inserted) it->second += fib;
    if (is_zero(it->second)) sec.terms.erase(it);
}

template <class FiberT> bool is_zero_section(const PolySection<FiberT> &sec) {
    for (const auto &[mono, fib] : sec.terms)
        if (!is_zero(fib)) return false;
    return true;
}

template <class FiberT> double max_abs_coeff(const PolySection<FiberT> &sec) {
    double r = 0.0;
    for (const auto &[mono, fib] : sec.terms) r = std::max(r, max_abs(fib));
    return r;
}

//! Apply a fiberwise linear map to every term (must preserve m); prunes zeros.
template <class FiberT, class Fn>
auto map_fibers(const PolySection<FiberT> &sec, Fn &&fn)
    -> PolySection<std::decay_t<decltype(fn(std::declval<const FiberT &>()))>> {
    using OutFiber = std::decay_t<decltype(fn(std::declval<const FiberT &>()))>;
    PolySection<OutFiber> out(sec.m, sec.degree_bound);
    for (const auto &[mono, fib] : sec.terms) {
        OutFiber img = fn(fib);
        if (!is_zero(img)) out.terms.emplace(mono, std::move(img));
    }
    return out;
}

template <class FiberT>
PolySection<FiberT> operator+(const PolySection<FiberT> &a, const PolySection<FiberT> &b) {
    detail::require_same_m(a.m, b.m);
    PolySection<FiberT> out(a.m, std::max(a.degree_bound, b.degree_bound));
    out.terms = a.terms;
    for (const auto &[mono, fib] : b.terms) {
        auto it = out.terms.find(mono);
        if (it == out.terms.end())
            out.terms.emplace(mono, fib);
        else {
            it->second += fib;
            if (is_zero(it->second)) out.terms.erase(it);
        }
    }
    return out;
}

template <class FiberT>
PolySection<FiberT> operator-(const PolySection<FiberT> &a, const PolySection<FiberT> &b) {
    detail::require_same_m(a.m, b.m);
    PolySection<FiberT> out(a.m, std::max(a.degree_bound, b.degree_bound));
    out.terms = a.terms;
    for (const auto &[mono, fib] : b.terms) {
        auto it = out.terms.find(mono);
        if (it == out.terms.end())
            out.terms.emplace(mono, FiberT(-fib));
        else {
            it->second -= fib;
            if (is_zero(it->second)) out.terms.erase(it);
        }
    }
    return out;
}

template <class FiberT>
PolySection<FiberT> scale(const PolySection<FiberT> &sec, const typename FiberT::Scalar &s) {
    using traits = scalar_traits<typename FiberT::Scalar>;
    PolySection<FiberT> out(sec.m, sec.degree_bound);
    if (traits::is_zero(s)) return out;
    for (const auto &[mono, fib] : sec.terms) {
        FiberT f = fib;
        f *= s;
        out.terms.emplace(mono, std::move(f));
    }
    return out;
}

//! Coordinate derivative in direction A (0-based frame index).
template <class FiberT> PolySection<FiberT> d_coord(const PolySection<FiberT> &sec, int A) {
    using traits = scalar_traits<typename FiberT::Scalar>;
    if (A < 0 || A >= 2 * sec.m)
        throw std::out_of_range("d_coord: direction index must lie in [0, 2m)");
    PolySection<FiberT> out(sec.m, sec.degree_bound);
    for (const auto &[mono, fib] : sec.terms) {
        if (mono[A] == 0) continue;
        Monomial lower = mono;
        lower[A] -= 1;
        FiberT f = fib;
        f *= traits::from_ratio(mono[A], 1);
        auto it = out.terms.find(lower);
        if (it == out.terms.end())
            out.terms.emplace(std::move(lower), std::move(f));
        else
            it->second += f;
    }
    return out;
}

//! Multiply a section by a single monomial (used when forming products).
template <class FiberT>
PolySection<FiberT> multiply_monomial(const PolySection<FiberT> &sec, const Monomial &extra) {
    PolySection<FiberT> out(sec.m, sec.degree_bound + monomial_degree(extra));
    for (const auto &[mono, fib] : sec.terms) {
        Monomial prod = mono;
        for (std::size_t i = 0; i < prod.size(); ++i) prod[i] += extra[i];
        out.terms.emplace(std::move(prod), fib);
    }
    return out;
}

////////////////////////////////////////////////////////////////////////////////
// Backend conversion and pointwise evaluation
////////////////////////////////////////////////////////////////////////////////

template <class S> FormFiber<complexd> to_complex(const FormFiber<S> &f) {
    FormFiber<complexd> out(f.m);
    for (int i = 0; i < f.c.size(); ++i) out.c[i] = scalar_traits<S>::to_complex(f.c[i]);
    return out;
}

template <class S> SpinorFiber<complexd> to_complex(const SpinorFiber<S> &s) {
    SpinorFiber<complexd> out(s.m);
    for (int i = 0; i < s.v.size(); ++i) out.v[i] = scalar_traits<S>::to_complex(s.v[i]);
    return out;
}

template <class FiberT>
auto to_complex(const PolySection<FiberT> &sec)
    -> PolySection<std::decay_t<decltype(to_complex(std::declval<const FiberT &>()))>> {
    using OutFiber = std::decay_t<decltype(to_complex(std::declval<const FiberT &>()))>;
    PolySection<OutFiber> out(sec.m, sec.degree_bound);
    for (const auto &[mono, fib] : sec.terms) out.terms.emplace(mono, to_complex(fib));
    return out;
}

//! Evaluate a complex-backend section at a real point (length 2m).
template <class FiberT>
FiberT eval_at(const PolySection<FiberT> &sec, const std::vector<double> &pt) {
    static_assert(std::is_same_v<typename FiberT::Scalar, complexd>,
                  "eval_at operates on the floating backend; convert exact sections first");
    if (int(pt.size()) != 2 * sec.m)
        throw std::invalid_argument("eval_at: point dimension must be 2m");
    FiberT acc(sec.m);
    for (const auto &[mono, fib] : sec.terms) {
        double w = 1.0;
        for (int A = 0; A < 2 * sec.m; ++A)
            for (int e = 0; e < mono[A]; ++e) w *= pt[A];
        FiberT f = fib;
        f *= complexd(w, 0.0);
        acc += f;
    }
    return acc;
}

////////////////////////////////////////////////////////////////////////////////
// First-order operators on form sections
////////////////////////////////////////////////////////////////////////////////

template <class S> using FormSection = PolySection<FormFiber<S>>;
template <class S> using SpinorSection = PolySection<SpinorFiber<S>>;

//! Flat covariant derivative in frame direction A (0-based).
template <class FiberT> PolySection<FiberT> nabla(const PolySection<FiberT> &sec, int A) {
    return d_coord(sec, A);
}

template <class S> FormSection<S> ext_d(const FormSection<S> &sec) {
    FormSection<S> out(sec.m, sec.degree_bound);
    for (int A = 0; A < 2 * sec.m; ++A)
        out = out + map_fibers(d_coord(sec, A), [&](const FormFiber<S> &f) { return wedge_index(A, f); });
    return out;
}

template <class S> FormSection<S> coderiv(const FormSection<S> &sec) {
    FormSection<S> out(sec.m, sec.degree_bound);
    for (int A = 0; A < 2 * sec.m; ++A) {
        auto t = map_fibers(d_coord(sec, A), [&](const FormFiber<S> &f) { return contract_index(A, f); });
        out = out - t;
    }
    return out;
}

template <class S> FormSection<S> d_c(const FormSection<S> &sec) {
    FormSection<S> out(sec.m, sec.degree_bound);
    for (int A = 0; A < 2 * sec.m; ++A) {
        auto t = map_fibers(d_coord(sec, A), [&](const FormFiber<S> &f) {
            FormFiber<S> w = wedge_index(j_partner(A), f);
            if (j_sign(A) < 0) w.c = -w.c;
            return w;
        });
        out = out + t;
    }
    return out;
}

template <class S> FormSection<S> delta_c(const FormSection<S> &sec) {
    FormSection<S> out(sec.m, sec.degree_bound);
    for (int A = 0; A < 2 * sec.m; ++A) {
        auto t = map_fibers(d_coord(sec, A), [&](const FormFiber<S> &f) {
            FormFiber<S> w = contract_index(j_partner(A), f);
            if (j_sign(A) < 0) w.c = -w.c;
            return w;
        });
        out = out - t;
    }
    return out;
}

//! Clifford-type Dirac operator on forms: sum of left Clifford actions.
template <class S> FormSection<S> dslash(const FormSection<S> &sec) {
    FormSection<S> out(sec.m, sec.degree_bound);
    for (int A = 0; A < 2 * sec.m; ++A)
        out = out + map_fibers(d_coord(sec, A), [&](const FormFiber<S> &f) { return clifford_index(A, f); });
    return out;
}

template <class S> FormSection<S> dslash_c(const FormSection<S> &sec) {
    FormSection<S> out(sec.m, sec.degree_bound);
    for (int A = 0; A < 2 * sec.m; ++A) {
        auto t = map_fibers(d_coord(sec, A), [&](const FormFiber<S> &f) {
            FormFiber<S> w = clifford_index(j_partner(A), f);
            if (j_sign(A) < 0) w.c = -w.c;
            return w;
        });
        out = out + t;
    }
    return out;
}

////////////////////////////////////////////////////////////////////////////////
// Dirac operators on spinor sections
////////////////////////////////////////////////////////////////////////////////

template <class S> SpinorSection<S> dirac(const SpinorSection<S> &sec, const GammaRep<S> &rep) {
    SpinorSection<S> out(sec.m, sec.degree_bound);
    for (int A = 0; A < 2 * sec.m; ++A)
        out = out + map_fibers(d_coord(sec, A), [&](const SpinorFiber<S> &s) {
                  SpinorFiber<S> t = s;
                  t.v = rep.gamma[A] * s.v;
                  return t;
              });
    return out;
}

template <class S> SpinorSection<S> dirac_c(const SpinorSection<S> &sec, const GammaRep<S> &rep) {
    SpinorSection<S> out(sec.m, sec.degree_bound);
    for (int A = 0; A < 2 * sec.m; ++A)
        out = out + map_fibers(d_coord(sec, A), [&](const SpinorFiber<S> &s) {
                  SpinorFiber<S> t = s;
                  t.v = rep.gamma[j_partner(A)] * s.v;
                  if (j_sign(A) < 0) t.v = -t.v;
                  return t;
              });
    return out;
}

//! Half Dirac operators: (D -+ i D_c)/2; sign=+1 picks the holomorphic half.
template <class S>
SpinorSection<S> dirac_pm(const SpinorSection<S> &sec, const GammaRep<S> &rep, int sign) {
    using traits = scalar_traits<S>;
    if (sign != +1 && sign != -1)
        throw std::invalid_argument("dirac_pm: sign must be +1 or -1");
    const S half = traits::from_ratio(1, 2);
    S ih = S(traits::unit_i() * half);
    if (sign > 0) ih = S(-ih);            // D^+ = (D - i D_c)/2
    return scale(dirac(sec, rep), half) + scale(dirac_c(sec, rep), ih);
}

} // namespace spinform

#endif // SPINFORM_SECTIONS_HPP
