////////////////////////////////////////////////////////////////////////////////
// spinor.hpp
////////////////////////////////////////////////////////////////////////////////
/*! @file
//  Spinor fibers, the explicit Clifford representation, grading machinery,
//  and the invariant bilinear pairings.
//
//  The representation is the Jordan-Wigner tensor-product model on
//  (C^2)^{tensor m}: the two real generators of the a-th complex direction act
//  as sigma_z^{(a-fold)} (x) sigma_x (x) I and sigma_z^{(a-fold)} (x) sigma_y (x) I.
//  All matrix entries lie in {0, +-1, +-i}, so every construction here is exact
//  over the Gaussian rationals.
//
//  The grading operator G (Clifford action of the fundamental 2-form) is
//  diagonal in this model with eigenvalue i(2r - m) on components whose index
//  has popcount r.  Type projectors are built from that combinatorial fact and
//  then *verified* against G; a representation whose spectrum disagrees is
//  rejected instead of silently accepted.
//
//  Pairings: for each admissible involution (with or without complex
//  conjugation) the invariant matrix A is obtained as the nullspace of the
//  linear constraint  A gamma_A = eps Gamma_A A  over all generators, where
//  Gamma is transpose (bilinear case) or conjugate-transpose (sesquilinear
//  case) and eps depends on the involution type.  The solution is normalized
//  so its first nonzero entry (row-major scan) equals 1.  Closed-form products
//  of generators are provided as an independent cross-check.
*/
////////////////////////////////////////////////////////////////////////////////
#ifndef SPINFORM_SPINOR_HPP
#define SPINFORM_SPINOR_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <spinform/fiber.hpp>
#include <spinform/linalg.hpp>
#include <spinform/scalars.hpp>

namespace spinform {

constexpr int spinor_dim(int m) { return 1 << m; }

////////////////////////////////////////////////////////////////////////////////
// Spinor fiber
////////////////////////////////////////////////////////////////////////////////

template <class S> struct SpinorFiber {
    using Scalar = S;
    int m = 0;
    Vec<S> v; // 2^m components

    SpinorFiber() = default;
    explicit SpinorFiber(int m_) : m(m_), v(Vec<S>::Zero(spinor_dim(m_))) {}

    SpinorFiber &operator+=(const SpinorFiber &o) { detail::require_same_m(m, o.m); v += o.v; return *this; }
    SpinorFiber &operator-=(const SpinorFiber &o) { detail::require_same_m(m, o.m); v -= o.v; return *this; }
    SpinorFiber &operator*=(const S &s) { v *= s; return *this; }
};

template <class S> SpinorFiber<S> operator+(SpinorFiber<S> a, const SpinorFiber<S> &b) { a += b; return a; }
template <class S> SpinorFiber<S> operator-(SpinorFiber<S> a, const SpinorFiber<S> &b) { a -= b; return a; }
template <class S> SpinorFiber<S> operator*(const S &s, SpinorFiber<S> a) { a *= s; return a; }
template <class S> SpinorFiber<S> operator-(SpinorFiber<S> a) { a.v = -a.v; return a; }

template <class S> SpinorFiber<S> spinor_zero(int m) { return SpinorFiber<S>(m); }

template <class S> SpinorFiber<S> spinor_unit(int m, int idx) {
    SpinorFiber<S> s(m);
    s.v[idx] = scalar_traits<S>::one();
    return s;
}

template <class S> bool is_zero(const SpinorFiber<S> &s) {
    for (int i = 0; i < s.v.size(); ++i)
        if (!scalar_traits<S>::is_zero(s.v[i])) return false;
    return true;
}

template <class S> double max_abs(const SpinorFiber<S> &s) {
    double r = 0.0;
    for (int i = 0; i < s.v.size(); ++i) r = std::max(r, scalar_traits<S>::abs_approx(s.v[i]));
    return r;
}

//! True iff every nonzero component lives on popcount-r indices (type purity).
template <class S> bool is_type_pure(const SpinorFiber<S> &s, int r) {
    for (int i = 0; i < s.v.size(); ++i)
        if (std::popcount(unsigned(i)) != r && !scalar_traits<S>::is_zero(s.v[i])) return false;
    return true;
}

////////////////////////////////////////////////////////////////////////////////
// Representation
////////////////////////////////////////////////////////////////////////////////

template <class S> struct GammaRep {
    int m = 0;
    std::vector<Mat<S>> gamma; // 2m generators, index A matching the frame order
};

namespace detail {

template <class S> Mat<S> kron(const Mat<S> &a, const Mat<S> &b) {
    Mat<S> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = S(a(i, j) * b(k, l));
    return out;
}

template <class S> Mat<S> pauli(char which) {
    const S o = scalar_traits<S>::one();
    const S ii = scalar_traits<S>::unit_i();
    Mat<S> p = Mat<S>::Zero(2, 2);
    switch (which) {
    case 'x': p(0, 1) = o; p(1, 0) = o; break;
    case 'y': p(0, 1) = S(-ii); p(1, 0) = ii; break;
    case 'z': p(0, 0) = o; p(1, 1) = S(-o); break;
    default: throw std::logic_error("unknown Pauli label");
    }
    return p;
}

} // namespace detail

//! Jordan-Wigner generators for m complex dimensions (exact entries).
template <class S> GammaRep<S> build_rep(int m) {
    if (m < 1 || m > 8) throw std::invalid_argument("build_rep: m must be in 1..8");
    const Mat<S> sx = detail::pauli<S>('x');
    const Mat<S> sy = detail::pauli<S>('y');
    const Mat<S> sz = detail::pauli<S>('z');
    const Mat<S> id = Mat<S>::Identity(2, 2);
    GammaRep<S> rep;
    rep.m = m;
    rep.gamma.resize(2 * m);
    for (int a = 0; a < m; ++a) {
        Mat<S> ge = Mat<S>::Identity(1, 1), gf = ge;
        for (int t = 0; t < m; ++t) {
            const Mat<S> &fe = (t < a) ? sz : (t == a) ? sx : id;
            const Mat<S> &ff = (t < a) ? sz : (t == a) ? sy : id;
            ge = detail::kron(ge, fe);
            gf = detail::kron(gf, ff);
        }
        rep.gamma[2 * a] = ge;
        rep.gamma[2 * a + 1] = gf;
    }
    return rep;
}

//! Apply the Clifford action of a single basis blade (mask bits, descending).
template <class S> SpinorFiber<S> apply_blade(const GammaRep<S> &rep, mask_t mask, const SpinorFiber<S> &psi) {
    SpinorFiber<S> out = psi;
    for (int A = 2 * rep.m - 1; A >= 0; --A)
        if (mask & (mask_t(1) << A)) out.v = rep.gamma[A] * out.v;
    return out;
}

//! Clifford action of a full form fiber on a spinor.
template <class S> SpinorFiber<S> clifford_act(const FormFiber<S> &a, const SpinorFiber<S> &psi, const GammaRep<S> &rep) {
    detail::require_same_m(a.m, psi.m);
    SpinorFiber<S> out(psi.m);
    for (mask_t mask = 0; mask < mask_t(fiber_dim(a.m)); ++mask) {
        if (scalar_traits<S>::is_zero(a.c[mask])) continue;
        SpinorFiber<S> term = apply_blade(rep, mask, psi);
        out.v += a.c[mask] * term.v;
    }
    return out;
}

//! Clifford action of the fundamental 2-form (diagonal in this model).
template <class S> Mat<S> grading_operator(const GammaRep<S> &rep) {
    const int n = spinor_dim(rep.m);
    Mat<S> g = Mat<S>::Zero(n, n);
    for (int a = 0; a < rep.m; ++a) g += Mat<S>(rep.gamma[2 * a + 1] * rep.gamma[2 * a]);
    return g;
}

//! Complex volume element as a matrix: i^m prod_a gamma_f(a) gamma_e(a).
template <class S> Mat<S> complex_volume(const GammaRep<S> &rep) {
    const int n = spinor_dim(rep.m);
    Mat<S> z = Mat<S>::Identity(n, n);
    for (int a = 0; a < rep.m; ++a) z = Mat<S>(z * rep.gamma[2 * a + 1] * rep.gamma[2 * a]);
    S phase = scalar_traits<S>::one();
    for (int t = 0; t < rep.m; ++t) phase *= scalar_traits<S>::unit_i();
    return Mat<S>(phase * z);
}

//! Complex volume element as a form fiber.  The element is i^m times the
//! pairwise product f^a.e^a; rewriting that in the ascending blade order of
//! the fiber algebra flips one sign per pair, so the stored coefficient on
//! the top blade is (-i)^m.
template <class S> FormFiber<S> complex_volume_form(int m) {
    FormFiber<S> f(m);
    S phase = scalar_traits<S>::one();
    const S minus_i = S(-scalar_traits<S>::unit_i());
    for (int t = 0; t < m; ++t) phase *= minus_i;
    f.c[fiber_dim(m) - 1] = phase;
    return f;
}

//! Raising (sign=+1) / lowering (sign=-1) operator of the a-th complex
//! direction: (gamma_e -+ i gamma_f)/2.
template <class S> Mat<S> ladder_matrix(const GammaRep<S> &rep, int a, int sign) {
    const S half = scalar_traits<S>::from_ratio(1, 2);
    const S ih = S(scalar_traits<S>::unit_i() * half);
    if (sign > 0) return Mat<S>(half * rep.gamma[2 * a] - ih * rep.gamma[2 * a + 1]);
    return Mat<S>(half * rep.gamma[2 * a] + ih * rep.gamma[2 * a + 1]);
}

//! Projectors onto the type-r subspaces, verified against the grading operator.
//! Throws std::logic_error on spectrum mismatch (representation calibration).
template <class S> std::vector<Mat<S>> type_projectors(const GammaRep<S> &rep) {
    const int m = rep.m, n = spinor_dim(m);
    std::vector<Mat<S>> proj(m + 1, Mat<S>::Zero(n, n));
    for (int i = 0; i < n; ++i) proj[std::popcount(unsigned(i))](i, i) = scalar_traits<S>::one();

    const Mat<S> g = grading_operator(rep);
    Mat<S> total = Mat<S>::Zero(n, n);
    for (int r = 0; r <= m; ++r) {
        const S ev = S(scalar_traits<S>::unit_i() * scalar_traits<S>::from_ratio(2 * r - m, 1));
        Mat<S> resid = Mat<S>(g * proj[r] - ev * proj[r]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!scalar_traits<S>::is_zero(resid(i, j)))
                    throw std::logic_error("type_projectors: grading-operator spectrum mismatch "
                                           "(representation calibration error)");
        total += proj[r];
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const S want = (i == j) ? scalar_traits<S>::one() : scalar_traits<S>::zero();
            if (!scalar_traits<S>::is_zero(S(total(i, j) - want)))
                throw std::logic_error("type_projectors: projectors do not resolve the identity");
        }
    return proj;
}

////////////////////////////////////////////////////////////////////////////////
// Structural checks
////////////////////////////////////////////////////////////////////////////////

struct CheckReport {
    bool ok = true;
    std::string detail;
};

namespace detail {
template <class S> bool mat_is_zero(const Mat<S> &a) {
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!scalar_traits<S>::is_zero(a(i, j))) return false;
    return true;
}
} // namespace detail

//! Ladder operators shift type by exactly +-1 and square to zero.
template <class S> CheckReport raising_lowering_check(const GammaRep<S> &rep) {
    CheckReport rep_out;
    const int m = rep.m;
    const auto proj = type_projectors(rep);
    for (int a = 0; a < m; ++a) {
        for (int sign : {+1, -1}) {
            const Mat<S> x = ladder_matrix(rep, a, sign);
            if (!detail::mat_is_zero(Mat<S>(x * x))) {
                rep_out.ok = false;
                rep_out.detail += "ladder square nonzero at a=" + std::to_string(a) + "; ";
            }
            for (int r = 0; r <= m; ++r)
                for (int s = 0; s <= m; ++s) {
                    if (s == r + sign) continue;
                    if (!detail::mat_is_zero(Mat<S>(proj[s] * x * proj[r]))) {
                        rep_out.ok = false;
                        rep_out.detail += "ladder block (" + std::to_string(s) + "," + std::to_string(r) +
                                          ") nonzero at a=" + std::to_string(a) + " sign=" + std::to_string(sign) + "; ";
                    }
                }
        }
    }
    if (rep_out.ok) rep_out.detail = "ladder operators shift type by one and are isotropic";
    return rep_out;
}

//! Complex volume squares to the identity, acts as (-1)^r on type r, and
//! anticommutes with every generator.
template <class S> CheckReport chirality_consistency(const GammaRep<S> &rep) {
    CheckReport out;
    const int m = rep.m, n = spinor_dim(m);
    const Mat<S> z = complex_volume(rep);
    const Mat<S> id = Mat<S>::Identity(n, n);
    if (!detail::mat_is_zero(Mat<S>(z * z - id))) {
        out.ok = false;
        out.detail += "volume element does not square to identity; ";
    }
    const auto proj = type_projectors(rep);
    for (int r = 0; r <= m; ++r) {
        const S sgn = (r % 2 == 0) ? scalar_traits<S>::one() : S(-scalar_traits<S>::one());
        if (!detail::mat_is_zero(Mat<S>(z * proj[r] - sgn * proj[r]))) {
            out.ok = false;
            out.detail += "volume eigenvalue wrong on type " + std::to_string(r) + "; ";
        }
    }
    for (int A = 0; A < 2 * m; ++A)
        if (!detail::mat_is_zero(Mat<S>(z * rep.gamma[A] + rep.gamma[A] * z))) {
            out.ok = false;
            out.detail += "volume fails to anticommute with generator " + std::to_string(A) + "; ";
        }
    if (out.ok) out.detail = "complex volume is a chirality operator with eigenvalue (-1)^r";
    return out;
}

////////////////////////////////////////////////////////////////////////////////
// Invariant pairings
////////////////////////////////////////////////////////////////////////////////

template <class S> struct PairingMatrix {
    int m = 0;
    Involution inv;
    Mat<S> a;         // the invariant matrix, first nonzero entry normalized to 1
    int solution_dim = 0; // dimension of the invariance constraint nullspace
};

//! Sign eps in  A gamma = eps Gamma A  for the supported involution types.
inline int pairing_epsilon(const Involution &inv) {
    switch (inv.kind) {
    case Involution::Kind::xi: return +1;
    case Involution::Kind::xi_eta: return -1;
    case Involution::Kind::eta:
        throw std::invalid_argument("pairing: the parity involution alone admits no invariant pairing "
                                    "in this calculus; use xi or xi_eta");
    }
    throw std::invalid_argument("pairing: unknown involution kind");
}

//! Solve  A gamma_A = eps Gamma_A A  for all generators; Gamma is transpose
//! (bilinear) or conjugate-transpose (sesquilinear).
template <class S> PairingMatrix<S> build_pairing(const GammaRep<S> &rep, const Involution &inv) {
    const int eps = pairing_epsilon(inv);
    const int m = rep.m, n = spinor_dim(m), nn = n * n;
    Mat<S> sys = Mat<S>::Zero(2 * m * nn, nn);
    auto u = [n](int i, int k) { return i * n + k; };
    for (int gi = 0; gi < 2 * m; ++gi) {
        const Mat<S> &g = rep.gamma[gi];
        Mat<S> gt(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                gt(i, j) = inv.conjugate ? scalar_traits<S>::conj(g(j, i)) : g(j, i);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int row = gi * nn + i * n + j;
                for (int k = 0; k < n; ++k) {
                    if (!scalar_traits<S>::is_zero(g(k, j)))
                        sys(row, u(i, k)) += g(k, j);
                    if (!scalar_traits<S>::is_zero(gt(i, k)))
                        sys(row, u(k, j)) -= S(scalar_traits<S>::from_ratio(eps, 1) * gt(i, k));
                }
            }
    }
    Mat<S> null = nullspace(sys);
    PairingMatrix<S> out;
    out.m = m;
    out.inv = inv;
    out.solution_dim = int(null.cols());
    if (out.solution_dim == 0)
        throw std::runtime_error("build_pairing: empty solution space "
                                 "(representation/involution incompatibility)");
    Vec<S> v = null.col(0);
    int first = -1;
    for (int i = 0; i < v.size(); ++i)
        if (!scalar_traits<S>::is_zero(v[i])) { first = i; break; }
    if (first >= 0) {
        S inv_s = scalar_traits<S>::one() / v[first];
        v *= inv_s;
    }
    out.a = Mat<S>::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) out.a(i, k) = v[u(i, k)];
    return out;
}

//! Evaluate the pairing (phi, psi); conjugates the first slot when the
//! involution carries complex conjugation.
template <class S> S pairing_apply(const PairingMatrix<S> &pm, const SpinorFiber<S> &phi, const SpinorFiber<S> &psi) {
    detail::require_same_m(pm.m, phi.m);
    detail::require_same_m(pm.m, psi.m);
    S acc = scalar_traits<S>::zero();
    Vec<S> ap = pm.a * psi.v;
    for (int i = 0; i < ap.size(); ++i) {
        const S lhs = pm.inv.conjugate ? scalar_traits<S>::conj(phi.v[i]) : phi.v[i];
        acc += S(lhs * ap[i]);
    }
    return acc;
}

//! Closed-form pairing matrices for this representation (independent of the
//! nullspace solver); normalized the same way for direct comparison.
template <class S> Mat<S> pairing_closed_form(const GammaRep<S> &rep, const Involution &inv) {
    pairing_epsilon(inv); // validates the kind
    const int m = rep.m, n = spinor_dim(m);
    Mat<S> a;
    Mat<S> zdiag = Mat<S>::Zero(n, n);
    for (int i = 0; i < n; ++i)
        zdiag(i, i) = (std::popcount(unsigned(i)) % 2 == 0) ? scalar_traits<S>::one() : S(-scalar_traits<S>::one());
    if (inv.conjugate) {
        a = (inv.kind == Involution::Kind::xi) ? Mat<S>(Mat<S>::Identity(n, n)) : zdiag;
    } else {
        a = Mat<S>::Identity(n, n);
        const int off = (inv.kind == Involution::Kind::xi) ? 1 : 0; // xi uses the f-generators, xi_eta the e-generators
        for (int t = 0; t < m; ++t) a = Mat<S>(a * rep.gamma[2 * t + off]);
        if (m % 2 == 1) a = Mat<S>(a * zdiag);
    }
    // normalize first nonzero entry (row-major) to 1
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!scalar_traits<S>::is_zero(a(i, j))) {
                S s = scalar_traits<S>::one() / a(i, j);
                return Mat<S>(s * a);
            }
    return a;
}

} // namespace spinform

#endif // SPINFORM_SPINOR_HPP
