#pragma once

#include "szabo/errors.hpp"
#include "szabo/ratfn.hpp"

#include <vector>

namespace szabo {

/// Which coordinates a connection's coefficient functions may mention.
/// Base: u1..un. Extended: u1..un plus the fiber coordinates u1'..un'
/// (dimension 2n, used for Levi-Civita connections of extension metrics).
enum class CoordClass { Base, Extended };

/// An affine connection given by Christoffel symbols Gamma^k_{ij}, each a
/// rational function of the coordinates (and free parameters). Not assumed
/// torsion-free unless stated.
class Connection {
public:
    explicit Connection(int dim, CoordClass cls = CoordClass::Base)
        : dim_(dim), cls_(cls),
          gamma_(static_cast<std::size_t>(dim) * dim * dim) {
        if (dim < 1) throw DimensionMismatch("connection dimension must be positive");
        if (cls == CoordClass::Extended && dim % 2 != 0)
            throw DimensionMismatch("extended coordinates require even dimension");
    }

    int dim() const { return dim_; }
    CoordClass coord_class() const { return cls_; }

    RatFn& gamma(int k, int i, int j) { return gamma_[flat(k, i, j)]; }
    const RatFn& gamma(int k, int i, int j) const { return gamma_[flat(k, i, j)]; }

    /// The coordinate variable for slot i (0-based). Extended connections
    /// use base coordinates for the first half and fibers for the second.
    VarId coord_var(int i) const {
        if (cls_ == CoordClass::Base) return VarId::base(i + 1);
        int n = dim_ / 2;
        return i < n ? VarId::base(i + 1) : VarId::fiber(i - n + 1);
    }

    /// Partial derivative along coordinate slot i.
    RatFn d(const RatFn& x, int i) const { return x.differentiate(coord_var(i)); }

    bool is_torsion_free() const {
        for (int k = 0; k < dim_; ++k)
            for (int i = 0; i < dim_; ++i)
                for (int j = i + 1; j < dim_; ++j)
                    if (!gamma(k, i, j).equals(gamma(k, j, i))) return false;
        return true;
    }

    /// Reject coefficient functions that mention direction variables or
    /// coordinates outside this connection's class.
    void validate_vars() const {
        int n = cls_ == CoordClass::Base ? dim_ : dim_ / 2;
        for (const auto& g : gamma_) {
            for (VarId v : g.vars()) {
                bool ok = (v.kind == VarKind::Parameter) ||
                          (v.kind == VarKind::Base && v.index <= n) ||
                          (v.kind == VarKind::Fiber && cls_ == CoordClass::Extended &&
                           v.index <= n);
                if (!ok)
                    throw ValidationError("christoffel entry mentions variable '" +
                                          var_name(v) + "' outside the coordinate patch");
            }
        }
    }

private:
    std::size_t flat(int k, int i, int j) const {
        if (k < 0 || k >= dim_ || i < 0 || i >= dim_ || j < 0 || j >= dim_)
            throw DimensionMismatch("christoffel index out of range");
        return (static_cast<std::size_t>(k) * dim_ + i) * dim_ + j;
    }

    int dim_;
    CoordClass cls_;
    std::vector<RatFn> gamma_;
};

} // namespace szabo
