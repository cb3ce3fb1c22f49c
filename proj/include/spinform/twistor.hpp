////////////////////////////////////////////////////////////////////////////////
// twistor.hpp
////////////////////////////////////////////////////////////////////////////////
/*! @file
//  Twistor-spinor variants on the flat model spaces: residual operators,
//  rational constant tables, and the linear solver for polynomial solution
//  spaces.
//
//  Supported equations (psi a spinor section, type r where applicable):
//
//    riemannian        nabla_A psi = (1/2m) gamma_A D psi          (all A)
//    kahlerian         nabla_{X+_a} psi = c+ ladder+_a D- psi,
//                      nabla_{X-_a} psi = c- ladder-_a D+ psi,
//                      c+ = 1/(2(m-r+1)),  c- = 1/(2(r+1))
//    middle            the kahlerian pair at r = m/2 (even m only)
//    holomorphic       kahlerian pair plus D+ psi = 0
//    anti-holomorphic  kahlerian pair plus D- psi = 0
//    hijazi            nabla_A psi = a gamma_A D psi + b s_A gamma_{JA} Dc psi
//    kirchberg-display hijazi with a = b = 1/(4r)      (undefined at r = 0)
//    kirchberg-text    hijazi with a = b = 1/(4(r+1))
//
//  Here s_A gamma_{JA} is the J-rotated generator and Dc the rotated Dirac
//  operator.  All residuals are linear in psi, so the solver assembles the
//  residual of each monomial/component unit section and extracts a nullspace
//  basis -- exactly over the rational backend, by SVD over the float backend.
//
//  The cited dimension bound C(m,r) + C(m,r+1) + C(m,r-1) is attached to the
//  kahlerian-family solves; a violation is recorded on the returned space and
//  must never be silently discarded by callers.
*/
////////////////////////////////////////////////////////////////////////////////
#ifndef SPINFORM_TWISTOR_HPP
#define SPINFORM_TWISTOR_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <spinform/linalg.hpp>
#include <spinform/scalars.hpp>
#include <spinform/sections.hpp>
#include <spinform/spinor.hpp>

namespace spinform {

////////////////////////////////////////////////////////////////////////////////
// Variant descriptions
////////////////////////////////////////////////////////////////////////////////

//! Invalid configuration of a run (bad flag combinations, undefined constants).
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class VariantTag {
    riemannian,
    kahlerian,
    holomorphic,
    anti_holomorphic,
    middle,
    kirchberg_display,
    kirchberg_text,
    hijazi,
};

//! Exact fraction with small integer parts (constants of the equations).
struct Ratio {
    long long num = 0;
    long long den = 1;
};

template <class S> S ratio_scalar(const Ratio &q) { return scalar_traits<S>::from_ratio(q.num, q.den); }

struct TwistorVariant {
    VariantTag tag = VariantTag::kahlerian;
    int r = 0;            // type index; ignored by riemannian
    Ratio a{0, 1}, b{0, 1}; // hijazi coefficients (only read for tag == hijazi)
};

inline const char *variant_name(VariantTag tag) {
    switch (tag) {
    case VariantTag::riemannian: return "riemannian";
    case VariantTag::kahlerian: return "kahlerian";
    case VariantTag::holomorphic: return "holomorphic";
    case VariantTag::anti_holomorphic: return "anti-holomorphic";
    case VariantTag::middle: return "middle";
    case VariantTag::kirchberg_display: return "kirchberg-display";
    case VariantTag::kirchberg_text: return "kirchberg-text";
    case VariantTag::hijazi: return "hijazi";
    }
    return "unknown";
}

inline VariantTag parse_variant_tag(const std::string &s) {
    for (VariantTag t : {VariantTag::riemannian, VariantTag::kahlerian, VariantTag::holomorphic,
                         VariantTag::anti_holomorphic, VariantTag::middle, VariantTag::kirchberg_display,
                         VariantTag::kirchberg_text, VariantTag::hijazi})
        if (s == variant_name(t)) return t;
    throw usage_error("unknown variant: " + s);
}

//! Reject configurations whose constants are undefined or inconsistent.
inline void validate_variant(const TwistorVariant &v, int m) {
    if (m < 1) throw usage_error("m must be at least 1");
    if (v.tag != VariantTag::riemannian && (v.r < 0 || v.r > m))
        throw usage_error("type index r must lie in 0..m");
    if (v.tag == VariantTag::middle) {
        if (m % 2 != 0) throw usage_error("variant 'middle' needs even m (type m/2)");
        if (v.r != m / 2) throw usage_error("variant 'middle' fixes r = m/2");
    }
    if (v.tag == VariantTag::kirchberg_display && v.r == 0)
        throw usage_error("variant 'kirchberg-display' has coefficient 1/(4r), undefined at r = 0");
    if (v.tag == VariantTag::hijazi && (v.a.den == 0 || v.b.den == 0))
        throw usage_error("variant 'hijazi' needs nonzero coefficient denominators");
}

////////////////////////////////////////////////////////////////////////////////
// Constants
////////////////////////////////////////////////////////////////////////////////

struct ConstantsKL {
    Ratio k, l;
};

//! Constants of the combined single-equation form of the kahlerian pair.
inline ConstantsKL combined_constants(int m, int r) {
    const long long d = 8LL * (r + 1) * (m - r + 1);
    return {Ratio{m + 2, d}, Ratio{m - 2LL * r, d}};
}

inline Ratio pair_constant_plus(int m, int r) { return {1, 2LL * (m - r + 1)}; }
inline Ratio pair_constant_minus(int /*m*/, int r) { return {1, 2LL * (r + 1)}; }

//! Constant pairs for the holomorphic / anti-holomorphic specializations.
//! "printed" carries the 1/16 normalization of the source display; "derived"
//! is the 1/8 normalization consistent with the combined equation.
inline ConstantsKL holomorphic_constants_printed(int m, int r) {
    const long long d = 16LL * (m - r + 1);
    return {Ratio{1, d}, Ratio{-1, d}};
}
inline ConstantsKL holomorphic_constants_derived(int m, int r) {
    const long long d = 8LL * (m - r + 1);
    return {Ratio{1, d}, Ratio{-1, d}};
}
inline ConstantsKL anti_holomorphic_constants_printed(int /*m*/, int r) {
    const long long d = 16LL * (r + 1);
    return {Ratio{1, d}, Ratio{1, d}};
}
inline ConstantsKL anti_holomorphic_constants_derived(int /*m*/, int r) {
    const long long d = 8LL * (r + 1);
    return {Ratio{1, d}, Ratio{1, d}};
}

//! First-order coefficients (a, b) for the hijazi-shaped equations.
inline std::pair<Ratio, Ratio> hijazi_coefficients(const TwistorVariant &v, int m) {
    switch (v.tag) {
    case VariantTag::riemannian: return {Ratio{1, 2LL * m}, Ratio{0, 1}};
    case VariantTag::hijazi: return {v.a, v.b};
    case VariantTag::kirchberg_display: return {Ratio{1, 4LL * v.r}, Ratio{1, 4LL * v.r}};
    case VariantTag::kirchberg_text: return {Ratio{1, 4LL * (v.r + 1)}, Ratio{1, 4LL * (v.r + 1)}};
    default: throw usage_error("variant has no first-order (a, b) coefficients");
    }
}

//! Gap-combination constants (k, l) used by the bilinear machinery.
inline ConstantsKL constants_kl(const TwistorVariant &v, int m) {
    switch (v.tag) {
    case VariantTag::kahlerian:
    case VariantTag::middle: return combined_constants(m, v.r);
    case VariantTag::holomorphic: return holomorphic_constants_derived(m, v.r);
    case VariantTag::anti_holomorphic: return anti_holomorphic_constants_derived(m, v.r);
    default: {
        auto [a, b] = hijazi_coefficients(v, m);
        return {a, b}; // hijazi-shaped equations use (a, b) in place of (k, l)
    }
    }
}

////////////////////////////////////////////////////////////////////////////////
// Residual operators
////////////////////////////////////////////////////////////////////////////////

namespace detail {

template <class S> SpinorSection<S> apply_matrix(const SpinorSection<S> &sec, const Mat<S> &mat) {
    return map_fibers(sec, [&](const SpinorFiber<S> &f) {
        SpinorFiber<S> out = f;
        out.v = mat * f.v;
        return out;
    });
}

//! Derivative along the complex frame direction: (d_x -/+ i d_y)/2.
template <class S> SpinorSection<S> nabla_pm(const SpinorSection<S> &sec, int a, int sign) {
    using traits = scalar_traits<S>;
    const S half = traits::from_ratio(1, 2);
    S c = S(traits::unit_i() * half);
    if (sign > 0) c = S(-c);
    return scale(d_coord(sec, 2 * a), half) + scale(d_coord(sec, 2 * a + 1), c);
}

} // namespace detail

//! Require every coefficient of psi to live in the type-r subspace.
template <class S> void require_type_pure(const SpinorSection<S> &psi, int r) {
    for (const auto &[mono, fib] : psi.terms)
        if (!is_type_pure(fib, r))
            throw std::domain_error("spinor section is not type-pure: project with the "
                                    "type projector for r = " + std::to_string(r) +
                                    " before evaluating this residual");
}

//! Residuals of the kahlerian pair; slots 2a / 2a+1 hold the X+_a / X-_a
//! equations.
template <class S>
std::vector<SpinorSection<S>> kahlerian_pair_residual(const SpinorSection<S> &psi, const GammaRep<S> &rep, int r) {
    const int m = psi.m;
    const S cp = ratio_scalar<S>(pair_constant_plus(m, r));
    const S cm = ratio_scalar<S>(pair_constant_minus(m, r));
    const SpinorSection<S> dp = dirac_pm(psi, rep, +1);
    const SpinorSection<S> dm = dirac_pm(psi, rep, -1);
    std::vector<SpinorSection<S>> res;
    res.reserve(2 * m);
    for (int a = 0; a < m; ++a) {
        const Mat<S> gp = ladder_matrix(rep, a, +1);
        const Mat<S> gm = ladder_matrix(rep, a, -1);
        res.push_back(detail::nabla_pm(psi, a, +1) - scale(detail::apply_matrix(dm, gp), cp));
        res.push_back(detail::nabla_pm(psi, a, -1) - scale(detail::apply_matrix(dp, gm), cm));
    }
    return res;
}

//! Residuals of the hijazi-shaped equation over the 2m real directions.
template <class S>
std::vector<SpinorSection<S>> hijazi_residual(const SpinorSection<S> &psi, const GammaRep<S> &rep,
                                              const Ratio &a_c, const Ratio &b_c) {
    const int m = psi.m;
    const S ca = ratio_scalar<S>(a_c);
    const S cb = ratio_scalar<S>(b_c);
    const SpinorSection<S> d = dirac(psi, rep);
    const SpinorSection<S> dc = dirac_c(psi, rep);
    std::vector<SpinorSection<S>> res;
    res.reserve(2 * m);
    for (int A = 0; A < 2 * m; ++A) {
        const int JA = j_partner(A);
        const S sca = (j_sign(A) > 0) ? cb : S(-cb);
        SpinorSection<S> rhs = scale(detail::apply_matrix(d, rep.gamma[A]), ca) +
                               scale(detail::apply_matrix(dc, rep.gamma[JA]), sca);
        res.push_back(d_coord(psi, A) - rhs);
    }
    return res;
}

//! Residuals of the combined single-equation form with constants (k, l).
template <class S>
std::vector<SpinorSection<S>> combined_residual(const SpinorSection<S> &psi, const GammaRep<S> &rep,
                                                const Ratio &k, const Ratio &l) {
    using traits = scalar_traits<S>;
    const int m = psi.m;
    const S ck = ratio_scalar<S>(k);
    const S cl = S(traits::unit_i() * ratio_scalar<S>(l));
    const SpinorSection<S> d = dirac(psi, rep);
    const SpinorSection<S> dc = dirac_c(psi, rep);
    std::vector<SpinorSection<S>> res;
    res.reserve(2 * m);
    for (int A = 0; A < 2 * m; ++A) {
        const int JA = j_partner(A);
        const S sk = (j_sign(A) > 0) ? ck : S(-ck);
        const S sl = (j_sign(A) > 0) ? cl : S(-cl);
        SpinorSection<S> rhs = scale(detail::apply_matrix(d, rep.gamma[A]), ck) +
                               scale(detail::apply_matrix(dc, rep.gamma[JA]), sk) +
                               scale(detail::apply_matrix(d, rep.gamma[JA]), sl) -
                               scale(detail::apply_matrix(dc, rep.gamma[A]), cl);
        res.push_back(d_coord(psi, A) - rhs);
    }
    return res;
}

//! Residual sections of the given variant; output order is fixed so report
//! slots are stable across runs and backends.
template <class S>
std::vector<SpinorSection<S>> residual_sections(const TwistorVariant &v, const SpinorSection<S> &psi,
                                                const GammaRep<S> &rep) {
    const int m = psi.m;
    validate_variant(v, m);
    if (v.tag != VariantTag::riemannian) require_type_pure(psi, v.r);
    switch (v.tag) {
    case VariantTag::riemannian:
    case VariantTag::hijazi:
    case VariantTag::kirchberg_display:
    case VariantTag::kirchberg_text: {
        auto [a, b] = hijazi_coefficients(v, m);
        return hijazi_residual(psi, rep, a, b);
    }
    case VariantTag::kahlerian:
    case VariantTag::middle: return kahlerian_pair_residual(psi, rep, v.r);
    case VariantTag::holomorphic: {
        auto res = kahlerian_pair_residual(psi, rep, v.r);
        res.push_back(dirac_pm(psi, rep, +1));
        return res;
    }
    case VariantTag::anti_holomorphic: {
        auto res = kahlerian_pair_residual(psi, rep, v.r);
        res.push_back(dirac_pm(psi, rep, -1));
        return res;
    }
    }
    throw std::logic_error("residual_sections: unhandled variant");
}

////////////////////////////////////////////////////////////////////////////////
// Solver
////////////////////////////////////////////////////////////////////////////////

inline long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

//! All exponent vectors of length 2m with total degree <= deg, ascending
//! lexicographic order.
inline std::vector<Monomial> monomial_list(int m, int deg) {
    std::vector<Monomial> out;
    Monomial mono(2 * m, 0);
    while (true) {
        if (monomial_degree(mono) <= deg) out.push_back(mono);
        int i = 2 * m - 1;
        while (i >= 0 && mono[i] == deg) { mono[i] = 0; --i; }
        if (i < 0) break;
        mono[i] += 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

template <class S> struct SolutionSpace {
    TwistorVariant variant;
    int m = 0;
    int degree = 0;
    std::vector<SpinorSection<S>> basis;
    int dimension = 0;
    bool vacuous = false;             // no solutions at all
    int constant_dimension = 0;       // dimension of the constant (parallel) solutions
    bool vacuous_beyond_constants = false;
    int bound = -1;                   // cited dimension bound, when applicable
    bool bound_applicable = false;
    bool bound_violated = false;      // callers must surface this, never drop it
};

//! Component basis of the ansatz fiber: type-r units, or all units for the
//! riemannian equation.
inline std::vector<int> ansatz_components(const TwistorVariant &v, int m) {
    std::vector<int> comps;
    for (int i = 0; i < spinor_dim(m); ++i)
        if (v.tag == VariantTag::riemannian || std::popcount(unsigned(i)) == v.r) comps.push_back(i);
    return comps;
}

//! Assembled residual-coefficient matrix: one column per ansatz unknown.
template <class S> Mat<S> assemble_system(const TwistorVariant &v, int m, int deg, const GammaRep<S> &rep) {
    validate_variant(v, m);
    const std::vector<Monomial> monos = monomial_list(m, deg);
    const std::vector<Monomial> res_monos = monos; // residual degree never exceeds the ansatz degree
    const std::vector<int> comps = ansatz_components(v, m);
    const int ncomp = int(comps.size());
    const int nun = int(monos.size()) * ncomp;
    const int sdim = spinor_dim(m);

    Mat<S> sys;
    bool sized = false;
    for (int j = 0; j < int(monos.size()); ++j)
        for (int k = 0; k < ncomp; ++k) {
            SpinorSection<S> unit(m, deg);
            add_term(unit, monos[j], spinor_unit<S>(m, comps[k]));
            const auto res = residual_sections(v, unit, rep);
            if (!sized) {
                sys = Mat<S>::Zero(int(res.size()) * int(res_monos.size()) * sdim, nun);
                sized = true;
            }
            const int col = j * ncomp + k;
            int base = 0;
            for (const auto &R : res) {
                for (int t = 0; t < int(res_monos.size()); ++t) {
                    auto it = R.terms.find(res_monos[t]);
                    if (it != R.terms.end())
                        for (int c = 0; c < sdim; ++c) sys(base + t * sdim + c, col) = it->second.v[c];
                }
                base += int(res_monos.size()) * sdim;
            }
        }
    if (!sized) sys = Mat<S>::Zero(0, nun);
    return sys;
}

template <class S> SolutionSpace<S> solve_space(const TwistorVariant &v, int m, int deg, const GammaRep<S> &rep) {
    validate_variant(v, m);
    SolutionSpace<S> out;
    out.variant = v;
    out.m = m;
    out.degree = deg;

    const std::vector<Monomial> monos = monomial_list(m, deg);
    const std::vector<int> comps = ansatz_components(v, m);
    const int ncomp = int(comps.size());

    Mat<S> sys = assemble_system(v, m, deg, rep);
    Mat<S> null = nullspace(sys);
    out.dimension = int(null.cols());
    out.vacuous = (out.dimension == 0);

    for (int b = 0; b < out.dimension; ++b) {
        Vec<S> u = normalize_unit_max(Vec<S>(null.col(b)));
        SpinorSection<S> sec(m, deg);
        for (int j = 0; j < int(monos.size()); ++j) {
            SpinorFiber<S> fib(m);
            for (int k = 0; k < ncomp; ++k) fib.v[comps[k]] = u[j * ncomp + k];
            if (!is_zero(fib)) add_term(sec, monos[j], fib);
        }
        out.basis.push_back(std::move(sec));
    }

    out.constant_dimension = ncomp; // constants of the ansatz fiber always solve
    out.vacuous_beyond_constants = (out.dimension <= ncomp);
    switch (v.tag) {
    case VariantTag::kahlerian:
    case VariantTag::middle:
    case VariantTag::holomorphic:
    case VariantTag::anti_holomorphic:
        out.bound = int(binom(m, v.r) + binom(m, v.r + 1) + binom(m, v.r - 1));
        out.bound_applicable = true;
        out.bound_violated = (out.dimension > out.bound);
        break;
    default: break;
    }
    return out;
}

////////////////////////////////////////////////////////////////////////////////
// Verification helpers
////////////////////////////////////////////////////////////////////////////////

//! Fixed-seed sample points in [-1, 1]^{2m}; mt19937_64 with a pinned mapping
//! so streams agree across standard libraries.
inline std::vector<std::vector<double>> sample_points(int m, int n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<std::vector<double>> pts(n, std::vector<double>(2 * m));
    for (auto &p : pts)
        for (double &x : p) {
            const double u = double(gen() >> 11) * 0x1.0p-53; // [0,1)
            x = 2.0 * u - 1.0;
        }
    return pts;
}

//! Max pointwise residual of every basis element at fixed sample points,
//! evaluated with the float backend regardless of the solve backend.
template <class S>
double verify_solutions(const SolutionSpace<S> &space, int npoints = 20, std::uint64_t seed = 777) {
    const GammaRep<complexd> rep = build_rep<complexd>(space.m);
    const auto pts = sample_points(space.m, npoints, seed);
    double mx = 0.0;
    for (const auto &b : space.basis) {
        PolySection<SpinorFiber<complexd>> bc = to_complex(b);
        const auto res = residual_sections(space.variant, bc, rep);
        for (const auto &R : res)
            for (const auto &p : pts) mx = std::max(mx, max_abs(eval_at(R, p)));
    }
    return mx;
}

struct HolomorphyReport {
    bool dplus_zero = false;
    bool dminus_zero = false;
    std::string classification;
};

//! Classify a section by which Dirac half annihilates it (tol = 0 -> exact).
template <class S>
HolomorphyReport holomorphy_check(const SpinorSection<S> &psi, const GammaRep<S> &rep, double tol = 0.0) {
    HolomorphyReport out;
    out.dplus_zero = max_abs_coeff(dirac_pm(psi, rep, +1)) <= tol;
    out.dminus_zero = max_abs_coeff(dirac_pm(psi, rep, -1)) <= tol;
    if (out.dplus_zero && out.dminus_zero) out.classification = "harmonic (both halves vanish)";
    else if (out.dplus_zero) out.classification = "holomorphic";
    else if (out.dminus_zero) out.classification = "anti-holomorphic";
    else out.classification = "generic";
    return out;
}

} // namespace spinform

#endif // SPINFORM_TWISTOR_HPP
