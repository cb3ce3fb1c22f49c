////////////////////////////////////////////////////////////////////////////////
// report.hpp
////////////////////////////////////////////////////////////////////////////////
/*! @file
//  Residual-report records and deterministic random generation used by the
//  verification suites.
//
//  Every randomized check draws from mt19937_64 with an explicit seed and a
//  pinned integer-to-double mapping, so identical configurations reproduce
//  identical draws on every platform and standard library.
*/
////////////////////////////////////////////////////////////////////////////////
#ifndef SPINFORM_REPORT_HPP
#define SPINFORM_REPORT_HPP

#include <cstdint>
#include <random>
#include <string>

#include <spinform/fiber.hpp>
#include <spinform/scalars.hpp>
#include <spinform/sections.hpp>
#include <spinform/spinor.hpp>

namespace spinform {

//! One verified identity: what was checked, on what, how badly it failed.
struct ResidualReport {
    std::string equation;    // identity label
    std::string variant;     // equation variant / involution, when applicable
    int m = 0;
    int r = -1;              // -1: not applicable
    int p = -1;
    int q = -1;
    bool exact = false;      // residual computed over the exact backend
    double max_residual = 0.0;
    int points = 0;          // sample-point count; 0 means coefficientwise
    double tolerance = 0.0;
    bool pass = false;
    bool vacuous = false;    // the projected/checked object was identically zero
};

//! Deterministic RNG with pinned scalar mappings.
class TestRng {
  public:
    explicit TestRng(std::uint64_t seed) : gen_(seed) {}

    //! Integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) { return lo + int(gen_() % std::uint64_t(hi - lo + 1)); }

    //! Double in [-1, 1).
    double uniform_pm1() { return 2.0 * (double(gen_() >> 11) * 0x1.0p-53) - 1.0; }

    //! Small exact rational with numerator in [-9, 9] and denominator in [1, 9].
    rational small_rational() { return rational(uniform_int(-9, 9)) / uniform_int(1, 9); }

    template <class S> S random_scalar() {
        if constexpr (scalar_traits<S>::exact)
            return S(small_rational(), small_rational());
        else
            return S(uniform_pm1(), uniform_pm1());
    }

    template <class S> FormFiber<S> random_form(int m) {
        FormFiber<S> f(m);
        for (int i = 0; i < f.c.size(); ++i) f.c[i] = random_scalar<S>();
        return f;
    }

    template <class S> SpinorFiber<S> random_spinor(int m) {
        SpinorFiber<S> s(m);
        for (int i = 0; i < s.v.size(); ++i) s.v[i] = random_scalar<S>();
        return s;
    }

    template <class S> VectorFiber<S> random_vector(int m) {
        VectorFiber<S> x(m);
        for (int i = 0; i < x.x.size(); ++i) x.x[i] = random_scalar<S>();
        return x;
    }

    //! Dense random section with all monomials of total degree <= deg.
    template <class FiberT> PolySection<FiberT> random_section(int m, int deg) {
        PolySection<FiberT> out(m, deg);
        Monomial mono(2 * m, 0);
        while (true) {
            if (monomial_degree(mono) <= deg) {
                if constexpr (std::is_same_v<FiberT, FormFiber<typename FiberT::Scalar>>)
                    add_term(out, mono, random_form<typename FiberT::Scalar>(m));
                else
                    add_term(out, mono, random_spinor<typename FiberT::Scalar>(m));
            }
            int i = 2 * m - 1;
            while (i >= 0 && mono[i] == deg) { mono[i] = 0; --i; }
            if (i < 0) break;
            mono[i] += 1;
        }
        return out;
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace spinform

#endif // SPINFORM_REPORT_HPP
