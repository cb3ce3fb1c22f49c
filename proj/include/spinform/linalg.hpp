////////////////////////////////////////////////////////////////////////////////
// linalg.hpp
////////////////////////////////////////////////////////////////////////////////
/*! @file
//  Nullspace and rank computations for both scalar backends.
//
//  Exact backend: fraction-free-ish Gauss-Jordan elimination over the
//  Gaussian-rational field; any nonzero pivot is valid, pivots are chosen
//  deterministically (first nonzero row per column), and the resulting
//  reduced echelon form yields the canonical free-variable nullspace basis.
//
//  Float backend: Jacobi SVD; the nullspace is spanned by the right singular
//  vectors whose singular values fall below a relative threshold.
*/
////////////////////////////////////////////////////////////////////////////////
#ifndef SPINFORM_LINALG_HPP
#define SPINFORM_LINALG_HPP

#include <vector>

#include <Eigen/Dense>

#include <spinform/scalars.hpp>

namespace spinform {

//! Reduce M in place to reduced row echelon form; returns pivot column list.
template <class S> std::vector<int> exact_rref(Mat<S> &M) {
    const int nr = int(M.rows()), nc = int(M.cols());
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < nc && row < nr; ++col) {
        int pr = -1;
        for (int r = row; r < nr; ++r)
            if (!scalar_traits<S>::is_zero(M(r, col))) { pr = r; break; }
        if (pr < 0) continue;
        if (pr != row) M.row(pr).swap(M.row(row));
        S inv = scalar_traits<S>::one() / M(row, col);
        for (int c = col; c < nc; ++c) M(row, c) = S(M(row, c) * inv);
        for (int r = 0; r < nr; ++r) {
            if (r == row || scalar_traits<S>::is_zero(M(r, col))) continue;
            S f = M(r, col);
            for (int c = col; c < nc; ++c) M(r, c) = S(M(r, c) - f * M(row, c));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class S> int exact_rank(Mat<S> M) { return int(exact_rref(M).size()); }

//! Basis of the right nullspace of M, one column per free variable, exact.
template <class S> Mat<S> exact_nullspace(Mat<S> M) {
    const int nc = int(M.cols());
    std::vector<int> pivots = exact_rref(M);
    std::vector<bool> is_pivot(nc, false);
    for (int c : pivots) is_pivot[c] = true;
    const int nullity = nc - int(pivots.size());
    Mat<S> N = Mat<S>::Zero(nc, nullity);
    int k = 0;
    for (int fc = 0; fc < nc; ++fc) {
        if (is_pivot[fc]) continue;
        N(fc, k) = scalar_traits<S>::one();
        for (int pi = 0; pi < int(pivots.size()); ++pi)
            N(pivots[pi], k) = S(-M(pi, fc));
        ++k;
    }
    return N;
}

inline Mat<complexd> float_nullspace(const Mat<complexd> &M, double rel_tol = 1e-8) {
    if (M.rows() == 0)
        return Mat<complexd>::Identity(M.cols(), M.cols());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    int rank = 0;
    const double smax = sv.size() ? sv(0) : 0.0;
    if (smax > 1e-300)
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > rel_tol * smax) ++rank;
    return svd.matrixV().rightCols(M.cols() - rank);
}

inline int float_rank(const Mat<complexd> &M, double rel_tol = 1e-8) {
    return int(M.cols() - float_nullspace(M, rel_tol).cols());
}

//! Backend dispatch.
template <class S> Mat<S> nullspace(const Mat<S> &M) {
    if constexpr (scalar_traits<S>::exact)
        return exact_nullspace(M);
    else
        return float_nullspace(M);
}

template <class S> int rank_of(const Mat<S> &M) {
    if constexpr (scalar_traits<S>::exact)
        return exact_rank(M);
    else
        return float_rank(M);
}

//! Scale a vector so its (first) largest-magnitude entry becomes exactly 1.
template <class S> Vec<S> normalize_unit_max(Vec<S> v) {
    double best = 0.0;
    int arg = -1;
    for (int i = 0; i < v.size(); ++i) {
        double a = scalar_traits<S>::abs_approx(v[i]);
        if (a > best * (1.0 + 1e-12)) { best = a; arg = i; }
    }
    if (arg >= 0 && best > 0.0) {
        S inv = scalar_traits<S>::one() / v[arg];
        v *= inv;
    }
    return v;
}

} // namespace spinform

#endif // SPINFORM_LINALG_HPP
