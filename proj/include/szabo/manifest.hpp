#pragma once

#include "szabo/connection.hpp"
#include "szabo/extension.hpp"
#include "szabo/homogeneous.hpp"
#include "szabo/parse.hpp"

#include <array>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace szabo {

/// A declared direction / vector field: a name plus component expressions.
struct DirectionDecl {
    std::string name;
    std::vector<RatFn> components;
};

enum class FamilyTag { TypeA, TypeB };

/// Parsed connection manifest. The on-disk format is a line-oriented
/// sectioned text file:
///
///   # comment
///   [meta]
///   dim = 2
///   torsion = symmetric        # or: explicit (entries taken literally)
///   family = typeA             # optional; then params is required
///   params = 0, 0, 0, 1, 1, 0  # a, b, c, d, e, f
///   [vars]
///   b = parameter              # canonical names only; u*/u*' are built in
///   [christoffel]
///   1,1,1 = u1 + u2            # Gamma^1_{11}; unlisted entries are zero
///   [phi]
///   1,2 = b*u1                 # symmetric twist tensor for extensions
///   [directions]
///   X1 = 1, 0, 1, 0            # length dim (base fields) or 2*dim (extended)
///   [point]
///   u1 = 2
///
/// The [meta] section must come first and must set dim before anything else
/// is interpreted. Christoffel and phi entries are completed symmetrically
/// ((k,i,j) -> (k,j,i)); giving both orders with different values is an
/// error, as is any duplicate key or out-of-range index.
struct Manifest {
    int dim = 0;
    bool torsion_explicit = false;
    std::optional<FamilyTag> family;
    std::optional<FamilyParams> family_params;
    VarTable vars;
    std::map<std::array<int, 3>, RatFn> christoffel; // key {k,i,j}, 0-based
    std::map<std::array<int, 2>, RatFn> phi;         // key {i,j}, 0-based
    std::vector<DirectionDecl> directions;
    std::map<VarId, Rational> point;

    const DirectionDecl* find_direction(const std::string& name) const {
        for (const auto& d : directions)
            if (d.name == name) return &d;
        return nullptr;
    }

    /// Build the base-patch connection this manifest describes.
    Connection connection() const {
        if (family) {
            FamilyParams p = *family_params;
            Connection c = (*family == FamilyTag::TypeA) ? type_a_connection(p)
                                                         : type_b_connection(p);
            return c;
        }
        Connection c(dim);
        for (const auto& [key, expr] : christoffel) c.gamma(key[0], key[1], key[2]) = expr;
        c.validate_vars();
        return c;
    }

    /// Build the twist tensor ([phi] section; zero when absent).
    PhiTensor phi_tensor() const {
        PhiTensor t(dim);
        for (const auto& [key, expr] : phi) t.at(key[0], key[1]) = expr;
        t.validate();
        return t;
    }
};

namespace detail {

struct ManifestLine {
    std::string text;
    int number; // 1-based
};

class ManifestParser {
public:
    explicit ManifestParser(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int number = 0;
        while (std::getline(in, line)) {
            ++number;
            if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
            while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
                line.pop_back();
            std::size_t start = line.find_first_not_of(" \t");
            if (start == std::string::npos) continue;
            lines_.push_back({line.substr(start), number});
        }
    }

    Manifest parse() {
        Manifest m;
        std::string section;
        bool meta_seen = false;
        std::array<Rational, 6> params{};
        bool params_seen = false;
        std::string family_word;
        for (const auto& ln : lines_) {
            if (ln.text.front() == '[') {
                if (ln.text.back() != ']')
                    fail(ln, "malformed section header");
                section = ln.text.substr(1, ln.text.size() - 2);
                if (section != "meta" && section != "vars" && section != "christoffel" &&
                    section != "phi" && section != "directions" && section != "point")
                    fail(ln, "unknown section '" + section + "'");
                if (section == "meta") {
                    if (meta_seen) fail(ln, "duplicate [meta] section");
                    meta_seen = true;
                } else if (!meta_seen || m.dim == 0) {
                    fail(ln, "[meta] with dim must come before other sections");
                }
                continue;
            }
            if (section.empty()) fail(ln, "content before the first section header");
            auto [key, value] = split_assign(ln);
            if (section == "meta") {
                if (key == "dim") {
                    if (m.dim != 0) fail(ln, "duplicate dim");
                    m.dim = parse_positive_int(ln, value);
                    m.vars = VarTable::standard(m.dim);
                } else if (key == "torsion") {
                    if (value == "explicit")
                        m.torsion_explicit = true;
                    else if (value != "symmetric")
                        fail(ln, "torsion must be 'symmetric' or 'explicit'");
                } else if (key == "family") {
                    family_word = value;
                    if (value == "typeA")
                        m.family = FamilyTag::TypeA;
                    else if (value == "typeB")
                        m.family = FamilyTag::TypeB;
                    else
                        fail(ln, "family must be 'typeA' or 'typeB'");
                } else if (key == "params") {
                    auto parts = split_commas(value);
                    if (parts.size() != 6) fail(ln, "params needs six comma-separated rationals");
                    for (std::size_t i = 0; i < 6; ++i)
                        params[i] = parse_constant(ln, parts[i], VarTable{});
                    params_seen = true;
                } else {
                    fail(ln, "unknown meta key '" + key + "'");
                }
            } else if (section == "vars") {
                VarKind kind;
                if (value == "base")
                    kind = VarKind::Base;
                else if (value == "fiber")
                    kind = VarKind::Fiber;
                else if (value == "parameter")
                    kind = VarKind::Parameter;
                else
                    fail(ln, "variable kind must be base, fiber, or parameter");
                try {
                    VarId id = m.vars.ensure(key, kind);
                    if (kind != VarKind::Parameter && id.index > m.dim)
                        fail(ln, "coordinate '" + key + "' exceeds the declared dimension");
                } catch (ValidationError& e) {
                    fail(ln, e.what());
                }
            } else if (section == "christoffel") {
                if (m.family) fail(ln, "family manifests define the connection implicitly");
                auto idx = parse_indices<3>(ln, key, m.dim);
                add_entry(ln, m.christoffel, idx, parse_field(ln, value, m.vars),
                          /*mirror=*/!m.torsion_explicit);
            } else if (section == "phi") {
                auto idx3 = parse_indices<2>(ln, key, m.dim);
                add_entry(ln, m.phi, idx3, parse_field(ln, value, m.vars), /*mirror=*/true);
            } else if (section == "directions") {
                if (m.find_direction(key)) fail(ln, "duplicate direction '" + key + "'");
                DirectionDecl d;
                d.name = key;
                for (const auto& part : split_commas(value))
                    d.components.push_back(parse_field(ln, part, m.vars));
                if (static_cast<int>(d.components.size()) != m.dim &&
                    static_cast<int>(d.components.size()) != 2 * m.dim)
                    fail(ln, "direction '" + key + "' must have dim or 2*dim components");
                m.directions.push_back(std::move(d));
            } else { // point
                auto id = m.vars.lookup(key);
                if (!id) fail(ln, "undeclared variable '" + key + "' in [point]");
                if (m.point.count(*id)) fail(ln, "duplicate point binding for '" + key + "'");
                m.point.emplace(*id, parse_constant(ln, value, m.vars));
            }
        }
        if (m.dim == 0) throw ValidationError("manifest does not declare dim");
        if (m.family) {
            if (!params_seen) throw ValidationError("family " + family_word + " requires params");
            if (m.dim != 2) throw ValidationError("family manifests must have dim = 2");
            m.family_params = FamilyParams{params[0], params[1], params[2],
                                           params[3], params[4], params[5]};
        }
        m.connection();  // rejects out-of-patch variables in Christoffel entries
        m.phi_tensor();  // rejects asymmetric or out-of-patch twist data
        return m;
    }

private:
    [[noreturn]] static void fail(const ManifestLine& ln, const std::string& what) {
        throw ValidationError("line " + std::to_string(ln.number) + ": " + what);
    }

    static std::pair<std::string, std::string> split_assign(const ManifestLine& ln) {
        auto eq = ln.text.find('=');
        if (eq == std::string::npos) fail(ln, "expected 'key = value'");
        std::string key = ln.text.substr(0, eq);
        std::string value = ln.text.substr(eq + 1);
        auto trim = [](std::string& s) {
            std::size_t a = s.find_first_not_of(" \t");
            std::size_t b = s.find_last_not_of(" \t");
            s = (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
        };
        trim(key);
        trim(value);
        if (key.empty()) fail(ln, "missing key before '='");
        if (value.empty()) fail(ln, "missing value after '='");
        return {key, value};
    }

    static std::vector<std::string> split_commas(const std::string& s) {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = s.find(',', start);
            out.push_back(s.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return out;
    }

    static int parse_positive_int(const ManifestLine& ln, const std::string& s) {
        if (s.empty() || s.size() > 3) fail(ln, "bad integer '" + s + "'");
        int v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') fail(ln, "bad integer '" + s + "'");
            v = v * 10 + (c - '0');
        }
        if (v < 1) fail(ln, "dim must be positive");
        return v;
    }

    template <std::size_t K>
    static std::array<int, K> parse_indices(const ManifestLine& ln, const std::string& key,
                                            int dim) {
        auto parts = split_commas(key);
        if (parts.size() != K) fail(ln, "entry key needs " + std::to_string(K) + " indices");
        std::array<int, K> out{};
        for (std::size_t i = 0; i < K; ++i) {
            std::string p = parts[i];
            std::size_t a = p.find_first_not_of(" \t");
            std::size_t b = p.find_last_not_of(" \t");
            p = (a == std::string::npos) ? std::string() : p.substr(a, b - a + 1);
            if (p.empty() || p.size() > 2) fail(ln, "bad index '" + p + "'");
            int v = 0;
            for (char c : p) {
                if (c < '0' || c > '9') fail(ln, "bad index '" + p + "'");
                v = v * 10 + (c - '0');
            }
            if (v < 1 || v > dim)
                fail(ln, "index " + std::to_string(v) + " out of range for dim " +
                             std::to_string(dim));
            out[i] = v - 1;
        }
        return out;
    }

    /// Parse an expression, mapping parser diagnostics to manifest
    /// diagnostics: syntax errors keep their type but gain the line number
    /// and a column within the expression text; undeclared identifiers
    /// become ValidationError per the load contract.
    static RatFn parse_field(const ManifestLine& ln, const std::string& text,
                             const VarTable& vars) {
        try {
            return parse_expr(text, vars);
        } catch (UnknownIdentifier& e) {
            fail(ln, "undeclared identifier '" + e.name + "'");
        } catch (SyntaxError& e) {
            throw SyntaxError("line " + std::to_string(ln.number) + ", column " +
                                  std::to_string(e.offset + 1) + " of expression: " + e.what(),
                              e.offset);
        }
    }

    static Rational parse_constant(const ManifestLine& ln, const std::string& text,
                                   const VarTable& vars) {
        RatFn v = parse_field(ln, text, vars);
        if (!v.is_constant()) fail(ln, "expected a constant value");
        return v.constant_value();
    }

    template <std::size_t K>
    static void add_entry(const ManifestLine& ln, std::map<std::array<int, K>, RatFn>& into,
                          std::array<int, K> idx, const RatFn& value, bool mirror) {
        if (into.count(idx)) fail(ln, "duplicate entry");
        into.emplace(idx, value);
        if (!mirror) return;
        std::array<int, K> sw = idx;
        std::swap(sw[K - 2], sw[K - 1]);
        if (sw == idx) return;
        auto it = into.find(sw);
        if (it != into.end()) {
            if (!(it->second == value)) fail(ln, "conflicts with the symmetric entry");
            return;
        }
        into.emplace(sw, value);
    }

    std::vector<ManifestLine> lines_;
};

} // namespace detail

/// Parse manifest text. Throws SyntaxError (bad expression, with line and
/// column in the message) or ValidationError (structural problems, with the
/// line number).
inline Manifest parse_manifest(const std::string& text) {
    return detail::ManifestParser(text).parse();
}

/// Load a manifest file. Throws IoError if the file cannot be read.
inline Manifest load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read '" + path + "'");
    return parse_manifest(buf.str());
}

/// Serialize a manifest; load_manifest(write_manifest(m)) round-trips to an
/// equivalent manifest.
inline std::string write_manifest(const Manifest& m) {
    std::ostringstream out;
    out << "[meta]\n";
    out << "dim = " << m.dim << "\n";
    out << "torsion = " << (m.torsion_explicit ? "explicit" : "symmetric") << "\n";
    if (m.family) {
        out << "family = " << (*m.family == FamilyTag::TypeA ? "typeA" : "typeB") << "\n";
        const FamilyParams& p = *m.family_params;
        out << "params = " << rational_to_string(p.a) << ", " << rational_to_string(p.b) << ", "
            << rational_to_string(p.c) << ", " << rational_to_string(p.d) << ", "
            << rational_to_string(p.e) << ", " << rational_to_string(p.f) << "\n";
    }
    bool any_param = false;
    for (const auto& [name, id] : m.vars.names())
        if (id.kind == VarKind::Parameter) {
            if (!any_param) out << "\n[vars]\n";
            any_param = true;
            out << name << " = parameter\n";
        }
    // Mirror-completed twins are written once; the parser restores them.
    if (!m.christoffel.empty()) {
        out << "\n[christoffel]\n";
        for (const auto& [key, expr] : m.christoffel) {
            if (!m.torsion_explicit && key[1] > key[2]) continue;
            out << key[0] + 1 << "," << key[1] + 1 << "," << key[2] + 1 << " = "
                << format_expr(expr) << "\n";
        }
    }
    if (!m.phi.empty()) {
        out << "\n[phi]\n";
        for (const auto& [key, expr] : m.phi) {
            if (key[0] > key[1]) continue;
            out << key[0] + 1 << "," << key[1] + 1 << " = " << format_expr(expr) << "\n";
        }
    }
    if (!m.directions.empty()) {
        out << "\n[directions]\n";
        for (const auto& d : m.directions) {
            out << d.name << " = ";
            for (std::size_t i = 0; i < d.components.size(); ++i) {
                if (i) out << ", ";
                out << format_expr(d.components[i]);
            }
            out << "\n";
        }
    }
    if (!m.point.empty()) {
        out << "\n[point]\n";
        for (const auto& [id, value] : m.point)
            out << var_name(id) << " = " << rational_to_string(value) << "\n";
    }
    return out.str();
}

} // namespace szabo
