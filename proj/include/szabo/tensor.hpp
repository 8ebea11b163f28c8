#pragma once

#include "szabo/errors.hpp"
#include "szabo/ratfn.hpp"

#include <functional>
#include <vector>

namespace szabo {

/// Dense component store for a tensor field of fixed valence on an
/// n-dimensional patch. Components are rational functions; indices are
/// 0-based here (reports translate to the 1-based classical notation).
/// Index order is: contravariant (upper) slots first, then covariant.
class TensorField {
public:
    TensorField(int dim, int up, int down)
        : dim_(dim), up_(up), down_(down), comps_(size_for(dim, up + down)) {}

    int dim() const { return dim_; }
    int arity() const { return up_ + down_; }
    int valence_up() const { return up_; }
    int valence_down() const { return down_; }

    template <class... I>
    RatFn& operator()(I... idx) {
        return comps_[flatten({static_cast<int>(idx)...})];
    }
    template <class... I>
    const RatFn& operator()(I... idx) const {
        return comps_[flatten({static_cast<int>(idx)...})];
    }

    RatFn& at(const std::vector<int>& idx) { return comps_[flatten(idx)]; }
    const RatFn& at(const std::vector<int>& idx) const { return comps_[flatten(idx)]; }

    bool is_zero() const {
        for (const auto& c : comps_)
            if (!c.is_zero()) return false;
        return true;
    }

    /// Visit every multi-index in lexicographic order.
    void each_index(const std::function<void(const std::vector<int>&)>& fn) const {
        std::vector<int> idx(static_cast<std::size_t>(arity()), 0);
        if (arity() == 0) {
            fn(idx);
            return;
        }
        for (;;) {
            fn(idx);
            int pos = arity() - 1;
            while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == dim_) {
                idx[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) return;
        }
    }

private:
    static std::size_t size_for(int dim, int arity) {
        std::size_t s = 1;
        for (int i = 0; i < arity; ++i) s *= static_cast<std::size_t>(dim);
        return s;
    }

    std::size_t flatten(const std::vector<int>& idx) const {
        if (static_cast<int>(idx.size()) != arity())
            throw DimensionMismatch("tensor index arity mismatch");
        std::size_t flat = 0;
        for (int i : idx) {
            if (i < 0 || i >= dim_) throw DimensionMismatch("tensor index out of range");
            flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
        }
        return flat;
    }

    int dim_, up_, down_;
    std::vector<RatFn> comps_;
};

} // namespace szabo
