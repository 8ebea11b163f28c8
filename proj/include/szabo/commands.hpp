#pragma once

#include "szabo/manifest.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace szabo {

enum class Command {
    Curvature,
    Ricci,
    CovRicci,
    Torsion,
    CyclicParallel,
    Szabo,
    CharPoly,
    CheckSzabo,
    ClassifyTypeA,
    ClassifyTypeB,
    Killing,
    Extend,
    ExtendSzabo,
    Nilpotency,
};

inline const std::vector<std::pair<std::string, Command>>& command_names() {
    static const std::vector<std::pair<std::string, Command>> table = {
        {"curvature", Command::Curvature},
        {"ricci", Command::Ricci},
        {"cov-ricci", Command::CovRicci},
        {"torsion", Command::Torsion},
        {"cyclic-parallel", Command::CyclicParallel},
        {"szabo", Command::Szabo},
        {"char-poly", Command::CharPoly},
        {"check-szabo", Command::CheckSzabo},
        {"classify-type-a", Command::ClassifyTypeA},
        {"classify-type-b", Command::ClassifyTypeB},
        {"killing", Command::Killing},
        {"extend", Command::Extend},
        {"extend-szabo", Command::ExtendSzabo},
        {"nilpotency", Command::Nilpotency},
    };
    return table;
}

inline Command command_from_name(const std::string& name) {
    for (const auto& [n, c] : command_names())
        if (n == name) return c;
    throw ValidationError("unknown command '" + name + "'");
}

inline std::string command_name(Command c) {
    for (const auto& [n, cc] : command_names())
        if (cc == c) return n;
    return "?";
}

struct Options {
    std::optional<std::string> direction;            // restrict to one named direction
    std::vector<std::pair<std::string, std::string>> point_kv; // overrides for [point]
    std::optional<std::pair<int, int>> grid;         // parameter sweep for classify commands
};

/// Result of one command run. `data` is an ordered JSON object whose keys
/// follow the external schema ("sigma", "residuals", "components",
/// "nilpotency", plus command-specific scalars); the text renderer derives
/// its lines from the same object, so the two formats cannot drift apart.
struct Report {
    std::string command;
    std::optional<bool> verdict; // empty for purely computational commands
    nlohmann::ordered_json data = nlohmann::ordered_json::object();
    double timing_ms = 0.0;
};

/// 0 = verdict true or computation done, 1 = verdict false. (Input and
/// internal errors never produce a Report; the CLI maps them to 2 and 3.)
inline int exit_code_for(const Report& r) {
    if (r.verdict && !*r.verdict) return 1;
    return 0;
}

namespace detail {

inline std::string idx1(int i) { return std::to_string(i + 1); }

inline void put_components(nlohmann::ordered_json& data, const char* key,
                           std::vector<std::pair<std::string, RatFn>> entries) {
    auto obj = nlohmann::ordered_json::object();
    for (const auto& [name, value] : entries)
        if (!value.is_zero()) obj[name] = format_expr(value);
    data[key] = std::move(obj);
}

inline std::map<VarId, Rational> effective_point(const Manifest& m, const Options& opt) {
    std::map<VarId, Rational> point = m.point;
    for (const auto& [key, value] : opt.point_kv) {
        auto id = m.vars.lookup(key);
        if (!id) throw ValidationError("undeclared variable '" + key + "' in --point");
        RatFn v = parse_expr(value, m.vars);
        if (!v.is_constant()) throw ValidationError("--point value for '" + key + "' must be constant");
        point[*id] = v.constant_value();
    }
    return point;
}

inline std::vector<const DirectionDecl*> selected_directions(const Manifest& m,
                                                             const Options& opt,
                                                             const char* cmd) {
    std::vector<const DirectionDecl*> out;
    if (opt.direction) {
        const DirectionDecl* d = m.find_direction(*opt.direction);
        if (!d) throw ValidationError(std::string(cmd) + ": no direction named '" +
                                      *opt.direction + "' in the manifest");
        out.push_back(d);
    } else {
        for (const auto& d : m.directions) out.push_back(&d);
        if (out.empty())
            throw ValidationError(std::string(cmd) +
                                  " requires a [directions] section or --direction");
    }
    return out;
}

inline void require_component_count(const DirectionDecl& d, int want, const char* cmd) {
    if (static_cast<int>(d.components.size()) != want)
        throw ValidationError(std::string(cmd) + ": direction '" + d.name + "' needs " +
                              std::to_string(want) + " components");
}

inline nlohmann::ordered_json sigma_json(const CharPolyCoeffs& coeffs) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : coeffs.sigma) arr.push_back(format_expr(s));
    return arr;
}

inline void run_curvature(const Manifest& m, Report& r) {
    Connection c = m.connection();
    TensorField R = curvature(c);
    std::vector<std::pair<std::string, RatFn>> entries;
    int n = c.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    entries.emplace_back("R^" + idx1(i) + "_" + idx1(j) + idx1(k) + idx1(l),
                                         R.at({i, j, k, l}));
    put_components(r.data, "components", std::move(entries));
    r.data["flat"] = R.is_zero();
}

inline void run_ricci(const Manifest& m, Report& r) {
    Connection c = m.connection();
    TensorField ric = ricci(c);
    std::vector<std::pair<std::string, RatFn>> entries;
    int n = c.dim();
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            entries.emplace_back("Ric_" + idx1(j) + idx1(k), ric.at({j, k}));
    put_components(r.data, "components", std::move(entries));
}

inline void run_cov_ricci(const Manifest& m, Report& r) {
    Connection c = m.connection();
    TensorField dric = cov_deriv_ricci(c);
    std::vector<std::pair<std::string, RatFn>> entries;
    int n = c.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                entries.emplace_back("DRic_" + idx1(i) + "_" + idx1(j) + idx1(k),
                                     dric.at({i, j, k}));
    put_components(r.data, "components", std::move(entries));
    r.data["parallel"] = dric.is_zero();
}

inline void run_torsion(const Manifest& m, Report& r) {
    Connection c = m.connection();
    TensorField t = torsion(c);
    std::vector<std::pair<std::string, RatFn>> entries;
    int n = c.dim();
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                entries.emplace_back("T^" + idx1(k) + "_" + idx1(i) + idx1(j), t.at({k, i, j}));
    put_components(r.data, "components", std::move(entries));
    r.data["torsion_free"] = t.is_zero();
}

inline void run_cyclic_parallel(const Manifest& m, Report& r) {
    Connection c = m.connection();
    RatFn res = cyclic_parallel_residual(c);
    r.data["residual"] = format_expr(res);
    r.verdict = res.is_zero();
}

inline void run_szabo(const Manifest& m, Report& r) {
    Connection c = m.connection();
    SzaboMatrix s = szabo_matrix(c);
    std::vector<std::pair<std::string, RatFn>> entries;
    for (int row = 0; row < s.dim; ++row)
        for (int col = 0; col < s.dim; ++col)
            entries.emplace_back("S_" + idx1(row) + idx1(col), s.at(row, col));
    put_components(r.data, "components", std::move(entries));
    r.data["trace"] = format_expr(s.as_matrix().trace());
}

inline void run_char_poly(const Manifest& m, Report& r, bool check) {
    Connection c = m.connection();
    CharPolyCoeffs coeffs = char_poly(szabo_matrix(c));
    r.data["sigma"] = sigma_json(coeffs);
    if (check) r.verdict = coeffs.all_zero();
}

inline void classify_a_single(const FamilyParams& p, Report& r) {
    static const char* names[6] = {"DRic_1_11", "DRic_1_12", "DRic_1_22",
                                   "DRic_2_11", "DRic_2_12", "DRic_2_22"};
    TypeAClassification cls = type_a_parallel_ricci(p);
    auto arr = nlohmann::ordered_json::array();
    for (int i = 0; i < 6; ++i)
        arr.push_back(std::string(names[i]) + " = " +
                      rational_to_string(cls.residuals[static_cast<std::size_t>(i)]));
    r.data["residuals"] = std::move(arr);
    bool op_szabo = is_affine_szabo(type_a_connection(p)).szabo;
    r.data["szabo_operator_verdict"] = op_szabo;
    r.verdict = cls.parallel_ricci;
}

inline void classify_b_single(const FamilyParams& p, Report& r) {
    TypeBClassification cls = type_b_szabo_residuals(p);
    auto arr = nlohmann::ordered_json::array();
    for (int i = 0; i < 4; ++i)
        arr.push_back("Q" + std::to_string(i + 1) + " = " +
                      rational_to_string(cls.residuals[static_cast<std::size_t>(i)]));
    r.data["residuals"] = std::move(arr);
    bool op_szabo = is_affine_szabo(type_b_connection(p)).szabo;
    r.data["szabo_operator_verdict"] = op_szabo;
    r.verdict = cls.szabo;
}

inline void classify_a_grid(int lo, int hi, Report& r) {
    long total = 0, parallel = 0, disagreements = 0;
    FamilyParams p;
    for (int a = lo; a <= hi; ++a)
        for (int b = lo; b <= hi; ++b)
            for (int c = lo; c <= hi; ++c)
                for (int d = lo; d <= hi; ++d)
                    for (int e = lo; e <= hi; ++e)
                        for (int f = lo; f <= hi; ++f) {
                            p = {a, b, c, d, e, f};
                            ++total;
                            bool polys = type_a_parallel_ricci(p).parallel_ricci;
                            bool op = is_affine_szabo(type_a_connection(p)).szabo;
                            if (polys) ++parallel;
                            if (polys != op) ++disagreements;
                        }
    r.data["grid"] = {{"lo", lo}, {"hi", hi},        {"total", total},
                      {"parallel", parallel},         {"disagreements", disagreements}};
    r.verdict = disagreements == 0;
}

inline void classify_b_grid(int lo, int hi, Report& r) {
    long total = 0, szabo_count = 0, disagreements = 0;
    FamilyParams p;
    for (int a = lo; a <= hi; ++a)
        for (int b = lo; b <= hi; ++b)
            for (int c = lo; c <= hi; ++c)
                for (int d = lo; d <= hi; ++d)
                    for (int e = lo; e <= hi; ++e) {
                        p = {a, b, c, d, e, Rational(-c)};
                        ++total;
                        bool polys = type_b_szabo_residuals(p).szabo;
                        bool op = is_affine_szabo(type_b_connection(p)).szabo;
                        if (polys) ++szabo_count;
                        if (polys != op) ++disagreements;
                    }
    r.data["grid"] = {{"lo", lo}, {"hi", hi},     {"total", total},
                      {"szabo", szabo_count},      {"disagreements", disagreements}};
    r.verdict = disagreements == 0;
}

inline void run_classify(const Manifest& m, const Options& opt, Command cmd, Report& r) {
    bool want_a = (cmd == Command::ClassifyTypeA);
    if (opt.grid) {
        auto [lo, hi] = *opt.grid;
        if (lo > hi) throw ValidationError("--grid range is empty");
        if (want_a)
            classify_a_grid(lo, hi, r);
        else
            classify_b_grid(lo, hi, r);
        return;
    }
    if (!m.family || (*m.family == FamilyTag::TypeA) != want_a)
        throw ValidationError(command_name(cmd) + " requires a manifest with family = " +
                              (want_a ? "typeA" : "typeB"));
    if (want_a)
        classify_a_single(*m.family_params, r);
    else
        classify_b_single(*m.family_params, r);
}

inline void run_killing(const Manifest& m, const Options& opt, Report& r) {
    Connection c = m.connection();
    auto dirs = selected_directions(m, opt, "killing");
    auto arr = nlohmann::ordered_json::array();
    bool all_zero = true;
    int n = c.dim();
    for (const auto* d : dirs) {
        require_component_count(*d, n, "killing");
        for (const auto& comp : d->components)
            for (VarId v : comp.vars())
                if (v.kind != VarKind::Parameter && !(v.kind == VarKind::Base && v.index <= n))
                    throw ValidationError("killing: field '" + d->name +
                                          "' mentions variable '" + var_name(v) +
                                          "' outside the base patch");
        TensorField res = killing_residual(c, d->components);
        bool zero = res.is_zero();
        if (!zero) all_zero = false;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const RatFn& v = res.at({k, i, j});
                    if (!v.is_zero())
                        arr.push_back(d->name + ": res^" + idx1(k) + "_" + idx1(i) + idx1(j) +
                                      " = " + format_expr(v));
                }
    }
    r.data["residuals"] = std::move(arr);
    r.verdict = all_zero;
}

inline void run_extend(const Manifest& m, Report& r) {
    Connection base = m.connection();
    Metric g = twisted_extension(base, m.phi_tensor());
    Connection lc = levi_civita(g);
    int N = g.dim();
    std::vector<std::pair<std::string, RatFn>> metric_entries;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            metric_entries.emplace_back("g_" + idx1(i) + idx1(j), g.g(i, j));
    put_components(r.data, "components", std::move(metric_entries));
    std::vector<std::pair<std::string, RatFn>> gamma_entries;
    for (int k = 0; k < N; ++k)
        for (int i = 0; i < N; ++i)
            for (int j = i; j < N; ++j)
                gamma_entries.emplace_back(
                    "Gamma^" + idx1(k) + "_" + idx1(i) + idx1(j), lc.gamma(k, i, j));
    put_components(r.data, "christoffel", std::move(gamma_entries));
}

inline nlohmann::ordered_json nilpotency_json(const std::string& name, std::optional<int> deg) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    row["direction"] = name;
    if (deg)
        row["degree"] = *deg;
    else
        row["degree"] = nullptr;
    return row;
}

inline void run_extend_szabo(const Manifest& m, const Options& opt, Report& r) {
    Connection base = m.connection();
    std::vector<std::pair<std::string, std::vector<RatFn>>> dirs;
    if (opt.direction || !m.directions.empty()) {
        for (const auto* d : selected_directions(m, opt, "extend-szabo")) {
            require_component_count(*d, 2 * base.dim(), "extend-szabo");
            dirs.emplace_back(d->name, d->components);
        }
    }
    auto point = effective_point(m, opt);
    ExtensionSzaboReport rep = extension_szabo_report(base, m.phi_tensor(), dirs, point);
    r.data["sigma"] = sigma_json(rep.coeffs);
    auto table = nlohmann::ordered_json::array();
    for (const auto& d : rep.directions) table.push_back(nilpotency_json(d.name, d.degree));
    r.data["nilpotency"] = std::move(table);
    if (!point.empty()) {
        auto norms = nlohmann::ordered_json::object();
        for (const auto& d : rep.directions)
            if (d.norm) norms["norm(" + d.name + ")"] = rational_to_string(*d.norm);
        r.data["norms"] = std::move(norms);
    }
    r.verdict = rep.szabo;
}

inline void run_nilpotency(const Manifest& m, const Options& opt, Report& r) {
    Connection c = m.connection();
    SzaboMatrix s = szabo_matrix(c);
    auto dirs = selected_directions(m, opt, "nilpotency");
    auto point = effective_point(m, opt);
    auto table = nlohmann::ordered_json::array();
    int n = c.dim();
    for (const auto* d : dirs) {
        require_component_count(*d, n, "nilpotency");
        std::optional<int> deg;
        if (point.empty()) {
            std::map<VarId, RatFn> sub;
            for (int i = 0; i < n; ++i)
                sub[VarId::direction(i + 1)] = d->components[static_cast<std::size_t>(i)];
            deg = nilpotency_degree_symbolic(s, sub);
        } else {
            std::map<VarId, Rational> bind = point;
            for (int i = 0; i < n; ++i)
                bind[VarId::direction(i + 1)] =
                    d->components[static_cast<std::size_t>(i)].evaluate(point);
            deg = nilpotency_degree(s, bind);
        }
        table.push_back(nilpotency_json(d->name, deg));
    }
    r.data["nilpotency"] = std::move(table);
}

} // namespace detail

/// Run one analysis command against a loaded manifest. Errors from the
/// analysis modules propagate with their own types; the caller maps them to
/// exit codes.
inline Report run_command(const Manifest& m, Command cmd, const Options& opt = {}) {
    Report r;
    r.command = command_name(cmd);
    auto t0 = std::chrono::steady_clock::now();
    switch (cmd) {
        case Command::Curvature: detail::run_curvature(m, r); break;
        case Command::Ricci: detail::run_ricci(m, r); break;
        case Command::CovRicci: detail::run_cov_ricci(m, r); break;
        case Command::Torsion: detail::run_torsion(m, r); break;
        case Command::CyclicParallel: detail::run_cyclic_parallel(m, r); break;
        case Command::Szabo: detail::run_szabo(m, r); break;
        case Command::CharPoly: detail::run_char_poly(m, r, false); break;
        case Command::CheckSzabo: detail::run_char_poly(m, r, true); break;
        case Command::ClassifyTypeA:
        case Command::ClassifyTypeB: detail::run_classify(m, opt, cmd, r); break;
        case Command::Killing: detail::run_killing(m, opt, r); break;
        case Command::Extend: detail::run_extend(m, r); break;
        case Command::ExtendSzabo: detail::run_extend_szabo(m, opt, r); break;
        case Command::Nilpotency: detail::run_nilpotency(m, opt, r); break;
    }
    auto t1 = std::chrono::steady_clock::now();
    r.timing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return r;
}

namespace detail {

inline std::string format_timing(double ms) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

inline void render_text_value(std::ostream& out, const std::string& key,
                              const nlohmann::ordered_json& value) {
    using nlohmann::ordered_json;
    if (key == "sigma" && value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i)
            out << "sigma_" << i + 1 << " = " << value[i].get<std::string>() << "\n";
        return;
    }
    if (value.is_array()) { // residuals and similar "name = expr" line lists
        if (key == "nilpotency") {
            for (const auto& row : value) {
                out << "degree(" << row["direction"].get<std::string>() << ") = ";
                if (row["degree"].is_null())
                    out << "none";
                else
                    out << row["degree"].get<int>();
                out << "\n";
            }
            return;
        }
        if (value.empty()) out << key << ": none\n";
        for (const auto& item : value) out << item.get<std::string>() << "\n";
        return;
    }
    if (value.is_object()) {
        if (value.empty() && (key == "components" || key == "christoffel"))
            out << key << ": all zero\n";
        for (auto it = value.begin(); it != value.end(); ++it) {
            if (it.value().is_string())
                out << it.key() << " = " << it.value().get<std::string>() << "\n";
            else
                out << it.key() << " = " << it.value().dump() << "\n";
        }
        return;
    }
    if (value.is_boolean()) {
        out << key << ": " << (value.get<bool>() ? "true" : "false") << "\n";
        return;
    }
    if (value.is_string()) {
        out << key << " = " << value.get<std::string>() << "\n";
        return;
    }
    out << key << ": " << value.dump() << "\n";
}

} // namespace detail

enum class ReportFormat { Text, Json };

/// Render a report. JSON output follows the schema
///   {"command", "verdict", "data", "timing_ms"}
/// and is byte-deterministic for equal reports up to the timing value. Text
/// output is line-oriented with the same content.
inline std::string emit_report(const Report& r, ReportFormat format) {
    if (format == ReportFormat::Json) {
        nlohmann::ordered_json j;
        j["command"] = r.command;
        if (r.verdict)
            j["verdict"] = *r.verdict;
        else
            j["verdict"] = nullptr;
        j["data"] = r.data;
        j["timing_ms"] = r.timing_ms;
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "command: " << r.command << "\n";
    if (r.verdict) out << "verdict: " << (*r.verdict ? "true" : "false") << "\n";
    for (auto it = r.data.begin(); it != r.data.end(); ++it)
        detail::render_text_value(out, it.key(), it.value());
    out << "timing_ms: " << detail::format_timing(r.timing_ms) << "\n";
    return out.str();
}

} // namespace szabo
