////////////////////////////////////////////////////////////////////////////////
// serialize.hpp
////////////////////////////////////////////////////////////////////////////////
/*! @file
//  JSON serialization of polynomial sections and residual reports.
//
//  Layout of a section:
//    { "m": 2, "degree_bound": 1,
//      "terms": [ { "exponents": [1,0,0,0],
//                   "fiber": { "3": ["1/2", "-2/3"], ... } } ] }
//
//  Fiber entries map component index to an [re, im] pair.  Exact scalars are
//  written as canonical fraction strings ("num/den", or "num" for integers)
//  and round-trip bit-exactly; float scalars are written as JSON numbers
//  (shortest round-trip form).  Terms appear in ascending lexicographic
//  exponent order and fiber keys in ascending index order, so serialization
//  is byte-deterministic for a given section.
*/
////////////////////////////////////////////////////////////////////////////////
#ifndef SPINFORM_SERIALIZE_HPP
#define SPINFORM_SERIALIZE_HPP

#include <stdexcept>
#include <string>

#include <json.hpp>

#include <spinform/report.hpp>
#include <spinform/scalars.hpp>
#include <spinform/sections.hpp>

namespace spinform {

using ordered_json = nlohmann::ordered_json;

////////////////////////////////////////////////////////////////////////////////
// Scalars
////////////////////////////////////////////////////////////////////////////////

inline ordered_json scalar_to_json(const GaussianRational &s) {
    return ordered_json::array({s.re.str(), s.im.str()});
}

inline ordered_json scalar_to_json(const complexd &s) {
    return ordered_json::array({s.real(), s.imag()});
}

template <class S> S scalar_from_json(const ordered_json &j) {
    if (!j.is_array() || j.size() != 2) throw std::runtime_error("scalar entry must be a [re, im] pair");
    if constexpr (scalar_traits<S>::exact) {
        if (!j[0].is_string() || !j[1].is_string())
            throw std::runtime_error("exact scalar entries must be fraction strings");
        return S(rational(j[0].get<std::string>()), rational(j[1].get<std::string>()));
    } else {
        if (!j[0].is_number() || !j[1].is_number())
            throw std::runtime_error("float scalar entries must be numbers");
        return S(j[0].get<double>(), j[1].get<double>());
    }
}

////////////////////////////////////////////////////////////////////////////////
// Fibers (component-vector access shared by form and spinor fibers)
////////////////////////////////////////////////////////////////////////////////

namespace detail {
template <class S> Vec<S> &fiber_vec(FormFiber<S> &f) { return f.c; }
template <class S> const Vec<S> &fiber_vec(const FormFiber<S> &f) { return f.c; }
template <class S> Vec<S> &fiber_vec(SpinorFiber<S> &f) { return f.v; }
template <class S> const Vec<S> &fiber_vec(const SpinorFiber<S> &f) { return f.v; }
} // namespace detail

template <class FiberT> ordered_json fiber_to_json(const FiberT &f) {
    using S = typename FiberT::Scalar;
    ordered_json out = ordered_json::object();
    const auto &v = detail::fiber_vec(f);
    for (int i = 0; i < v.size(); ++i)
        if (!scalar_traits<S>::is_zero(v[i])) out[std::to_string(i)] = scalar_to_json(v[i]);
    return out;
}

template <class FiberT> FiberT fiber_from_json(const ordered_json &j, int m) {
    using S = typename FiberT::Scalar;
    FiberT f(m);
    auto &v = detail::fiber_vec(f);
    if (!j.is_object()) throw std::runtime_error("fiber must be an object of index -> [re, im]");
    for (auto it = j.begin(); it != j.end(); ++it) {
        int idx = -1;
        try {
            idx = std::stoi(it.key());
        } catch (...) {
            throw std::runtime_error("fiber key is not an index: " + it.key());
        }
        if (idx < 0 || idx >= int(v.size()))
            throw std::runtime_error("fiber index out of range: " + it.key());
        v[idx] = scalar_from_json<S>(it.value());
    }
    return f;
}

////////////////////////////////////////////////////////////////////////////////
// Sections
////////////////////////////////////////////////////////////////////////////////

template <class FiberT> ordered_json section_to_json(const PolySection<FiberT> &sec) {
    ordered_json out = ordered_json::object();
    out["m"] = sec.m;
    out["degree_bound"] = sec.degree_bound;
    ordered_json terms = ordered_json::array();
    for (const auto &[mono, fib] : sec.terms) {
        ordered_json t = ordered_json::object();
        t["exponents"] = mono;
        t["fiber"] = fiber_to_json(fib);
        terms.push_back(std::move(t));
    }
    out["terms"] = std::move(terms);
    return out;
}

template <class FiberT> PolySection<FiberT> section_from_json(const ordered_json &j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("degree_bound") || !j.contains("terms"))
        throw std::runtime_error("section must carry m, degree_bound and terms");
    const int m = j["m"].get<int>();
    if (m < 1 || m > 8) throw std::runtime_error("section m out of supported range");
    PolySection<FiberT> sec(m, j["degree_bound"].get<int>());
    for (const auto &t : j["terms"]) {
        if (!t.contains("exponents") || !t.contains("fiber"))
            throw std::runtime_error("section term must carry exponents and fiber");
        Monomial mono = t["exponents"].get<Monomial>();
        if (int(mono.size()) != 2 * m) throw std::runtime_error("exponent vector length must be 2m");
        for (int e : mono)
            if (e < 0) throw std::runtime_error("exponents must be nonnegative");
        if (monomial_degree(mono) > sec.degree_bound)
            throw std::runtime_error("term degree exceeds the declared degree bound");
        add_term(sec, mono, fiber_from_json<FiberT>(t["fiber"], m));
    }
    return sec;
}

////////////////////////////////////////////////////////////////////////////////
// Reports
////////////////////////////////////////////////////////////////////////////////

inline ordered_json report_to_json(const ResidualReport &r) {
    ordered_json out = ordered_json::object();
    out["equation"] = r.equation;
    out["variant"] = r.variant;
    out["m"] = r.m;
    out["r"] = r.r;
    out["p"] = r.p;
    out["q"] = r.q;
    if (r.exact && r.max_residual == 0.0)
        out["max_residual"] = "0 (exact)";
    else
        out["max_residual"] = r.max_residual;
    out["points"] = r.points;
    out["pass"] = r.pass;
    out["tolerance"] = r.tolerance;
    if (r.vacuous) out["vacuous"] = true;
    return out;
}

} // namespace spinform

#endif // SPINFORM_SERIALIZE_HPP
