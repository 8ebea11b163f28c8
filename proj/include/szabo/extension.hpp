#pragma once

#include "szabo/szabo_op.hpp"
#include "szabo/tensorcalc.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace szabo {

/// Symmetric twist tensor Phi_ij on the base: components may involve the base
/// coordinates and parameters only.
class PhiTensor {
public:
    explicit PhiTensor(int base_dim)
        : n_(base_dim),
          comps_(static_cast<std::size_t>(base_dim) * static_cast<std::size_t>(base_dim)) {
        if (base_dim < 1) throw DimensionMismatch("twist tensor dimension must be positive");
    }

    static PhiTensor zero(int base_dim) { return PhiTensor(base_dim); }

    int base_dim() const { return n_; }

    RatFn& at(int i, int j) { return comps_[idx(i, j)]; }
    const RatFn& at(int i, int j) const { return comps_[idx(i, j)]; }

    /// Set both (i,j) and (j,i).
    void set(int i, int j, const RatFn& v) {
        comps_[idx(i, j)] = v;
        comps_[idx(j, i)] = v;
    }

    bool is_zero() const {
        for (const auto& v : comps_)
            if (!v.is_zero()) return false;
        return true;
    }

    /// Rejects asymmetric data and components mentioning fiber, direction,
    /// or out-of-patch base variables.
    void validate() const {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (!(at(i, j) == at(j, i)))
                    throw ValidationError("twist tensor must be symmetric");
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                for (VarId v : at(i, j).vars()) {
                    if (v.kind == VarKind::Parameter) continue;
                    if (v.kind == VarKind::Base && v.index <= n_) continue;
                    throw ValidationError("twist tensor component mentions variable '" +
                                          var_name(v) + "' outside the base patch");
                }
    }

private:
    std::size_t idx(int i, int j) const {
        if (i < 0 || i >= n_ || j < 0 || j >= n_)
            throw DimensionMismatch("twist tensor index out of range");
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(j);
    }

    int n_;
    std::vector<RatFn> comps_;
};

/// Pseudo-Riemannian metric on the extended 2n-dimensional patch, stored with
/// its exact inverse. For the extensions built here the inverse is available
/// in closed form; the constructor trusts the caller, and validate() checks
/// g * ginv = I.
class Metric {
public:
    Metric(int base_dim, std::vector<RatFn> comps, std::vector<RatFn> inv)
        : n_(base_dim), comps_(std::move(comps)), inv_(std::move(inv)) {
        std::size_t need = static_cast<std::size_t>(2 * n_) * static_cast<std::size_t>(2 * n_);
        if (comps_.size() != need || inv_.size() != need)
            throw DimensionMismatch("metric component count does not match dimension");
    }

    int base_dim() const { return n_; }
    int dim() const { return 2 * n_; }

    const RatFn& g(int i, int j) const { return comps_[idx(i, j)]; }
    const RatFn& ginv(int i, int j) const { return inv_[idx(i, j)]; }

    void validate() const {
        int N = dim();
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                RatFn s;
                for (int k = 0; k < N; ++k) s += g(i, k) * ginv(k, j);
                RatFn want = (i == j) ? RatFn::of_int(1) : RatFn();
                if (!(s == want))
                    throw ValidationError("metric inverse check failed");
            }
    }

private:
    std::size_t idx(int i, int j) const {
        int N = dim();
        if (i < 0 || i >= N || j < 0 || j >= N)
            throw DimensionMismatch("metric index out of range");
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(N) +
               static_cast<std::size_t>(j);
    }

    int n_;
    std::vector<RatFn> comps_;
    std::vector<RatFn> inv_;
};

/// Twisted extension of a base connection to the cotangent patch
/// (u_1..u_n, u_1'..u_n'):
///   g = [ Phi - 2 sum_k u_k' Gamma^k   I ]
///       [ I                            0 ]
/// with exact inverse [[0, I], [I, -B]] where B is the top-left block.
inline Metric twisted_extension(const Connection& base, const PhiTensor& phi) {
    if (base.coord_class() != CoordClass::Base)
        throw ValidationError("extension requires a base-patch connection");
    int n = base.dim();
    if (phi.base_dim() != n)
        throw DimensionMismatch("twist tensor dimension does not match the connection");
    phi.validate();
    int N = 2 * n;
    std::vector<RatFn> comps(static_cast<std::size_t>(N) * static_cast<std::size_t>(N));
    std::vector<RatFn> inv(comps.size());
    auto at = [N](std::vector<RatFn>& v, int i, int j) -> RatFn& {
        return v[static_cast<std::size_t>(i) * static_cast<std::size_t>(N) +
                 static_cast<std::size_t>(j)];
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RatFn b = phi.at(i, j);
            for (int k = 0; k < n; ++k)
                b -= RatFn::of_int(2) * RatFn::var(VarId::fiber(k + 1)) * base.gamma(k, i, j);
            at(comps, i, j) = b;
            at(inv, n + i, n + j) = -b;
        }
    for (int i = 0; i < n; ++i) {
        at(comps, i, n + i) = RatFn::of_int(1);
        at(comps, n + i, i) = RatFn::of_int(1);
        at(inv, i, n + i) = RatFn::of_int(1);
        at(inv, n + i, i) = RatFn::of_int(1);
    }
    return Metric(n, std::move(comps), std::move(inv));
}

/// Riemannian extension: the twisted extension with Phi = 0.
inline Metric riemannian_extension(const Connection& base) {
    return twisted_extension(base, PhiTensor::zero(base.dim()));
}

/// Levi-Civita connection of a metric on the extended patch:
///   Gamma^k_{ij} = 1/2 sum_l ginv(k,l) (d_i g(j,l) + d_j g(i,l) - d_l g(i,j)).
inline Connection levi_civita(const Metric& m) {
    int N = m.dim();
    Connection c(N, CoordClass::Extended);
    RatFn half(Poly::of_int(1), Poly::of_int(2));
    for (int k = 0; k < N; ++k)
        for (int i = 0; i < N; ++i)
            for (int j = i; j < N; ++j) {
                RatFn s;
                for (int l = 0; l < N; ++l) {
                    if (m.ginv(k, l).is_zero()) continue;
                    s += m.ginv(k, l) *
                         (c.d(m.g(j, l), i) + c.d(m.g(i, l), j) - c.d(m.g(i, j), l));
                }
                c.gamma(k, i, j) = half * s;
                c.gamma(k, j, i) = c.gamma(k, i, j);
            }
    return c;
}

/// Residual of metric compatibility: (nabla_k g)_{ij}. Zero for the
/// Levi-Civita connection of g.
inline TensorField metric_compat_residual(const Metric& m, const Connection& c) {
    int N = m.dim();
    if (c.dim() != N) throw DimensionMismatch("connection/metric dimension mismatch");
    TensorField res(N, 0, 3);
    for (int k = 0; k < N; ++k)
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                RatFn v = c.d(m.g(i, j), k);
                for (int p = 0; p < N; ++p)
                    v -= c.gamma(p, k, i) * m.g(p, j) + c.gamma(p, k, j) * m.g(i, p);
                res.at({k, i, j}) = v;
            }
    return res;
}

/// g(X, X) at a point, as an exact rational.
inline Rational pseudo_norm(const Metric& m, const std::vector<RatFn>& X,
                            const std::map<VarId, Rational>& point) {
    int N = m.dim();
    if (static_cast<int>(X.size()) != N)
        throw DimensionMismatch("vector component count does not match dimension");
    Rational out = 0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (m.g(i, j).is_zero()) continue;
            if (X[static_cast<std::size_t>(i)].is_zero() ||
                X[static_cast<std::size_t>(j)].is_zero())
                continue;
            out += (m.g(i, j) * X[static_cast<std::size_t>(i)] *
                    X[static_cast<std::size_t>(j)])
                       .evaluate(point);
        }
    return out;
}

struct DirectionReport {
    std::string name;
    std::vector<RatFn> components;   // 2n entries
    std::optional<int> degree;       // nilpotency degree of S(X); empty if not nilpotent
    std::optional<Rational> norm;    // g(X,X) at the point, when a point is given
};

struct ExtensionSzaboReport {
    Metric metric;
    Connection lc;
    SzaboMatrix op;
    CharPolyCoeffs coeffs;
    bool szabo = false;
    std::vector<std::vector<bool>> zero_pattern; // zero_pattern[row][col]: entry is identically 0
    std::vector<DirectionReport> directions;
};

/// Full pipeline: build the twisted extension, take its Levi-Civita
/// connection, form the Szabo operator and its characteristic coefficients,
/// then resolve each named direction. With a point, degrees and norms are
/// evaluated there; without one, degrees are computed symbolically.
inline ExtensionSzaboReport extension_szabo_report(
    const Connection& base, const PhiTensor& phi,
    const std::vector<std::pair<std::string, std::vector<RatFn>>>& directions,
    const std::map<VarId, Rational>& point = {}) {
    Metric m = twisted_extension(base, phi);
    Connection lc = levi_civita(m);
    SzaboMatrix op = szabo_matrix(lc);
    CharPolyCoeffs coeffs = char_poly(op);
    ExtensionSzaboReport rep{std::move(m), std::move(lc), std::move(op), coeffs,
                             coeffs.all_zero(), {}, {}};
    int N = rep.metric.dim();
    rep.zero_pattern.assign(static_cast<std::size_t>(N),
                            std::vector<bool>(static_cast<std::size_t>(N), false));
    for (int row = 0; row < N; ++row)
        for (int col = 0; col < N; ++col)
            rep.zero_pattern[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
                rep.op.at(row, col).is_zero();
    for (const auto& [name, comps] : directions) {
        if (static_cast<int>(comps.size()) != N)
            throw DimensionMismatch("direction '" + name +
                                    "' has the wrong number of components");
        DirectionReport dr;
        dr.name = name;
        dr.components = comps;
        if (point.empty()) {
            std::map<VarId, RatFn> sub;
            for (int i = 0; i < N; ++i)
                sub[VarId::direction(i + 1)] = comps[static_cast<std::size_t>(i)];
            dr.degree = nilpotency_degree_symbolic(rep.op, sub);
        } else {
            std::map<VarId, Rational> bind = point;
            for (int i = 0; i < N; ++i)
                bind[VarId::direction(i + 1)] =
                    comps[static_cast<std::size_t>(i)].evaluate(point);
            dr.degree = nilpotency_degree(rep.op, bind);
            dr.norm = pseudo_norm(rep.metric, comps, point);
        }
        rep.directions.push_back(std::move(dr));
    }
    return rep;
}

} // namespace szabo
