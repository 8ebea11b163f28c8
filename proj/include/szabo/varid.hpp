#pragma once

#include "szabo/errors.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace szabo {

/// The four variable classes, in their canonical sort order. Coordinates
/// (base then fiber) come first, then direction components, then free
/// parameters.
enum class VarKind : unsigned char { Base = 0, Fiber = 1, Direction = 2, Parameter = 3 };

/// A variable identity: class plus 1-based index. Names are derived from
/// the identity, never stored: base u1, u2, ...; fiber u1', u2', ...
/// (the fiber coordinate over base slot k); direction a1, a2, ...;
/// parameters a..z for indices 1..26 and p27, p28, ... beyond.
struct VarId {
    VarKind kind{VarKind::Base};
    int index{1};

    friend auto operator<=>(const VarId&, const VarId&) = default;

    static VarId base(int i) { return {VarKind::Base, i}; }
    static VarId fiber(int i) { return {VarKind::Fiber, i}; }
    static VarId direction(int i) { return {VarKind::Direction, i}; }
    static VarId parameter(int i) { return {VarKind::Parameter, i}; }
};

inline std::string var_name(VarId v) {
    switch (v.kind) {
        case VarKind::Base: return "u" + std::to_string(v.index);
        case VarKind::Fiber: return "u" + std::to_string(v.index) + "'";
        case VarKind::Direction: return "a" + std::to_string(v.index);
        case VarKind::Parameter:
            if (v.index >= 1 && v.index <= 26) return std::string(1, char('a' + v.index - 1));
            return "p" + std::to_string(v.index);
    }
    return "?";
}

namespace detail {
// Strict positive integer with no leading zeros; empty on failure.
inline std::optional<int> parse_index(std::string_view s) {
    if (s.empty() || s.size() > 6) return std::nullopt;
    if (s[0] == '0') return std::nullopt;
    int value = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        value = value * 10 + (c - '0');
    }
    return value;
}
} // namespace detail

/// Inverse of var_name: recognizes exactly the canonical spellings.
inline std::optional<VarId> var_from_name(std::string_view name) {
    if (name.empty()) return std::nullopt;
    if (name.size() == 1 && name[0] >= 'a' && name[0] <= 'z')
        return VarId::parameter(name[0] - 'a' + 1);
    const char head = name[0];
    std::string_view rest = name.substr(1);
    if (head == 'u') {
        bool fiber = !rest.empty() && rest.back() == '\'';
        if (fiber) rest.remove_suffix(1);
        if (auto idx = detail::parse_index(rest))
            return fiber ? VarId::fiber(*idx) : VarId::base(*idx);
        return std::nullopt;
    }
    if (head == 'a') {
        if (auto idx = detail::parse_index(rest)) return VarId::direction(*idx);
        return std::nullopt;
    }
    if (head == 'p') {
        if (auto idx = detail::parse_index(rest); idx && *idx >= 27) return VarId::parameter(*idx);
        return std::nullopt;
    }
    return std::nullopt;
}

} // namespace szabo
