#pragma once

#include "szabo/connection.hpp"
#include "szabo/tensor.hpp"

namespace szabo {

/// Torsion T^k_{ij} = Gamma^k_{ij} - Gamma^k_{ji}.
inline TensorField torsion(const Connection& c) {
    int n = c.dim();
    TensorField t(n, 1, 2);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                t(k, i, j) = c.gamma(k, i, j) - c.gamma(k, j, i);
    return t;
}

/// Curvature of R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z -
/// nabla_[X,Y] Z. Storage: R(i,j,k,l) is the i-th component of
/// R(d_k, d_l) d_j, i.e.
///   R^i_{jkl} = d_k Gamma^i_{lj} - d_l Gamma^i_{kj}
///             + sum_p (Gamma^i_{kp} Gamma^p_{lj} - Gamma^i_{lp} Gamma^p_{kj}).
/// Equivalently, R(d_A, d_B) d_C has i-th component R(i, C, A, B).
inline TensorField curvature(const Connection& c) {
    int n = c.dim();
    TensorField r(n, 1, 3);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    RatFn v = c.d(c.gamma(i, l, j), k) - c.d(c.gamma(i, k, j), l);
                    for (int p = 0; p < n; ++p)
                        v += c.gamma(i, k, p) * c.gamma(p, l, j) -
                             c.gamma(i, l, p) * c.gamma(p, k, j);
                    r(i, j, k, l) = v;
                }
    return r;
}

/// Ricci tensor Ric(X,Y) = trace(Z -> R(Z,X)Y):
///   Ric_{jk} = sum_i R(i, k, i, j).
inline TensorField ricci(const Connection& c, const TensorField& R) {
    int n = c.dim();
    TensorField ric(n, 0, 2);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            RatFn v;
            for (int i = 0; i < n; ++i) v += R(i, k, i, j);
            ric(j, k) = v;
        }
    return ric;
}
inline TensorField ricci(const Connection& c) { return ricci(c, curvature(c)); }

/// Covariant derivative of the Ricci tensor, stored as DRic(i,j,k) =
/// (nabla_i Ric)(d_j, d_k):
///   (nabla_i Ric)_{jk} = d_i Ric_{jk} - Gamma^p_{ij} Ric_{pk}
///                        - Gamma^p_{ik} Ric_{jp}.
inline TensorField cov_deriv_ricci(const Connection& c, const TensorField& ric) {
    int n = c.dim();
    TensorField dr(n, 0, 3);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                RatFn v = c.d(ric(j, k), i);
                for (int p = 0; p < n; ++p)
                    v -= c.gamma(p, i, j) * ric(p, k) + c.gamma(p, i, k) * ric(j, p);
                dr(i, j, k) = v;
            }
    return dr;
}
inline TensorField cov_deriv_ricci(const Connection& c) {
    return cov_deriv_ricci(c, ricci(c));
}

/// Covariant derivative of the curvature tensor. Storage:
/// DR(l,i,m,j,k) is the l-th component of (nabla_i R)(d_m, d_j) d_k.
/// Expanding the tensor derivative against the component convention above:
///   DR(l,i,m,j,k) = d_i R(l,k,m,j)
///     + sum_p ( Gamma(l,i,p) R(p,k,m,j)   [value slot]
///             - Gamma(p,i,m) R(l,k,p,j)   [first plane slot]
///             - Gamma(p,i,j) R(l,k,m,p)   [second plane slot]
///             - Gamma(p,i,k) R(l,p,m,j) ) [argument slot]
inline TensorField cov_deriv_curvature(const Connection& c, const TensorField& R) {
    int n = c.dim();
    TensorField dr(n, 1, 4);
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int m = 0; m < n; ++m)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        RatFn v = c.d(R(l, k, m, j), i);
                        for (int p = 0; p < n; ++p)
                            v += c.gamma(l, i, p) * R(p, k, m, j) -
                                 c.gamma(p, i, m) * R(l, k, p, j) -
                                 c.gamma(p, i, j) * R(l, k, m, p) -
                                 c.gamma(p, i, k) * R(l, p, m, j);
                        dr.at({l, i, m, j, k}) = v;
                    }
    return dr;
}
inline TensorField cov_deriv_curvature(const Connection& c) {
    return cov_deriv_curvature(c, curvature(c));
}

/// The cyclic-parallel residual (nabla_X Ric)(X, X) as a cubic form in the
/// direction variables a1..an: sum over i,j,k of a_i a_j a_k DRic(i,j,k).
/// It vanishes identically precisely when the Ricci tensor is cyclic
/// parallel.
inline RatFn cyclic_parallel_residual(const Connection& c, const TensorField& dric) {
    int n = c.dim();
    RatFn total;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (dric(i, j, k).is_zero()) continue;
                RatFn cube = RatFn::var(VarId::direction(i + 1)) *
                             RatFn::var(VarId::direction(j + 1)) *
                             RatFn::var(VarId::direction(k + 1));
                total += cube * dric(i, j, k);
            }
    return total;
}
inline RatFn cyclic_parallel_residual(const Connection& c) {
    return cyclic_parallel_residual(c, cov_deriv_ricci(c));
}

inline bool is_flat(const Connection& c) { return curvature(c).is_zero(); }

} // namespace szabo
