#pragma once

#include "szabo/ratfn.hpp"

#include <vector>

namespace szabo {
namespace detail {

/// Minimal square-matrix arithmetic over rational functions; just enough
/// for characteristic polynomials and nilpotency checks.
struct RatMatrix {
    int n = 0;
    std::vector<RatFn> a;

    explicit RatMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size) {}

    RatFn& at(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
    const RatFn& at(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }

    static RatMatrix identity(int size) {
        RatMatrix m(size);
        for (int i = 0; i < size; ++i) m.at(i, i) = RatFn::of_int(1);
        return m;
    }

    friend RatMatrix operator*(const RatMatrix& x, const RatMatrix& y) {
        RatMatrix r(x.n);
        for (int i = 0; i < x.n; ++i)
            for (int k = 0; k < x.n; ++k) {
                const RatFn& xik = x.at(i, k);
                if (xik.is_zero()) continue;
                for (int j = 0; j < x.n; ++j) {
                    if (y.at(k, j).is_zero()) continue;
                    r.at(i, j) += xik * y.at(k, j);
                }
            }
        return r;
    }

    RatMatrix plus_scalar_on_diagonal(const RatFn& s) const {
        RatMatrix r = *this;
        for (int i = 0; i < n; ++i) r.at(i, i) += s;
        return r;
    }

    RatFn trace() const {
        RatFn t;
        for (int i = 0; i < n; ++i) t += at(i, i);
        return t;
    }

    bool is_zero() const {
        for (const auto& e : a)
            if (!e.is_zero()) return false;
        return true;
    }
};

} // namespace detail
} // namespace szabo
