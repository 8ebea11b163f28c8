// Acceptance gate: twelve end-to-end criteria, each printing one PASS/FAIL
// line with a short factual detail and its wall time. Run with no arguments
// for all twelve, or pass criterion numbers to run a subset. Exit status is
// 0 only if every criterion that ran passed.

#include "test_util.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

using namespace szabo;
using tu::Alpha;
using tu::qr;
using tu::U;
using tu::Up;
using tu::vr;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fixture(const char* name) {
    return std::string(SZABO_MANIFEST_DIR) + "/" + name;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RatFn par(int i) { return vr(tu::Par(i)); }

RatFn rpow(const RatFn& f, int e) { return f.pow(static_cast<unsigned>(e)); }

/// Verdict plus the nonzero coefficients, for the check-szabo criteria.
Outcome expect_szabo(const char* manifest, const std::string& label) {
    Report r = run_command(load_manifest(fixture(manifest)), Command::CheckSzabo);
    Outcome o;
    o.pass = r.verdict.has_value() && *r.verdict;
    std::ostringstream d;
    if (o.pass) {
        d << label << ": verdict true, sigma_1..sigma_" << r.data["sigma"].size() << " all zero";
    } else {
        d << label << ": verdict false";
        for (std::size_t k = 0; k < r.data["sigma"].size(); ++k) {
            std::string s = r.data["sigma"][k].get<std::string>();
            if (s != "0") d << ", sigma_" << k + 1 << " = " << s;
        }
    }
    o.detail = d.str();
    return o;
}

Outcome criterion1() { return expect_szabo("diag2d.szm", "2D diagonal connection"); }

Outcome criterion2() { return expect_szabo("szabo3d.szm", "3D diagonal connection"); }

Outcome criterion3() { return expect_szabo("shear2d.szm", "2D shear connection"); }

Outcome criterion4() {
    const char* names[3] = {"flat3d_1.szm", "flat3d_2.szm", "flat3d_3.szm"};
    Outcome o;
    o.pass = true;
    std::ostringstream d;
    for (int i = 0; i < 3; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Manifest m = load_manifest(fixture(names[i]));
        Report curv = run_command(m, Command::Curvature);
        Report check = run_command(m, Command::CheckSzabo);
        double secs = seconds_since(t0);
        bool flat = curv.data["flat"].get<bool>();
        bool szabo_verdict = check.verdict.has_value() && *check.verdict;
        if (!flat || !szabo_verdict || secs >= 1.0) {
            o.pass = false;
            d << names[i] << ": flat=" << (flat ? "true" : "false")
              << " szabo=" << (szabo_verdict ? "true" : "false") << " in " << secs << " s; ";
        }
    }
    o.detail = o.pass ? "all three reciprocal-coefficient connections are flat and Szabo, "
                        "each under 1 s"
                      : d.str();
    return o;
}

Outcome criterion5() {
    int bad = 0;
    tu::Rng rng2(12021);
    for (int trial = 0; trial < 100; ++trial) {
        Connection c = tu::rand_connection(rng2, 2);
        if (!(szabo_matrix(c).as_matrix().trace() - cyclic_parallel_residual(c)).is_zero())
            ++bad;
    }
    tu::Rng rng3(30303);
    for (int trial = 0; trial < 25; ++trial) {
        Connection c = tu::rand_connection(rng3, 3);
        if (!(szabo_matrix(c).as_matrix().trace() - cyclic_parallel_residual(c)).is_zero())
            ++bad;
    }
    Outcome o;
    o.pass = bad == 0;
    std::ostringstream d;
    d << "trace(S) - cyclic residual vanished identically on 100 random 2D and 25 random 3D "
         "connections ("
      << bad << " failures)";
    o.detail = d.str();
    return o;
}

Outcome criterion6() {
    long mismatches = 0;
    tu::Rng rng2(12021); // the same 100 2D samples as criterion 5
    for (int trial = 0; trial < 100; ++trial) {
        Connection c = tu::rand_connection(rng2, 2);
        bool op = is_affine_szabo(c).szabo;
        bool residual_zero = cyclic_parallel_residual(c).is_zero();
        if (op != residual_zero) ++mismatches;
    }
    long tuples = 0;
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            for (int c = -2; c <= 2; ++c)
                for (int d = -2; d <= 2; ++d)
                    for (int e = -2; e <= 2; ++e)
                        for (int f = -2; f <= 2; ++f) {
                            FamilyParams p{a, b, c, d, e, f};
                            Connection conn = type_a_connection(p);
                            ++tuples;
                            if (is_affine_szabo(conn).szabo !=
                                cyclic_parallel_residual(conn).is_zero())
                                ++mismatches;
                        }
    Outcome o;
    o.pass = mismatches == 0;
    std::ostringstream d;
    d << "operator verdict agreed with residual == 0 on 100 random 2D connections and " << tuples
      << " family tuples (" << mismatches << " disagreements)";
    o.detail = d.str();
    return o;
}

Outcome criterion7() {
    long tuples = 0, parallel = 0, disagreements = 0;
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            for (int c = -2; c <= 2; ++c)
                for (int d = -2; d <= 2; ++d)
                    for (int e = -2; e <= 2; ++e)
                        for (int f = -2; f <= 2; ++f) {
                            FamilyParams p{a, b, c, d, e, f};
                            ++tuples;
                            bool polys = type_a_parallel_ricci(p).parallel_ricci;
                            bool op = is_affine_szabo(type_a_connection(p)).szabo;
                            if (polys) ++parallel;
                            if (polys != op) ++disagreements;
                        }
    Outcome o;
    o.pass = disagreements == 0 && tuples == 15625;
    std::ostringstream d;
    d << tuples << " tuples swept, " << parallel << " with parallel Ricci, " << disagreements
      << " disagreements with the operator verdict";
    o.detail = d.str();
    return o;
}

Outcome criterion8() {
    long tuples = 0, szabo_count = 0, disagreements = 0;
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            for (int c = -2; c <= 2; ++c)
                for (int d = -2; d <= 2; ++d)
                    for (int e = -2; e <= 2; ++e) {
                        FamilyParams p{a, b, c, d, e, Rational(-c)};
                        ++tuples;
                        bool polys = type_b_szabo_residuals(p).szabo;
                        bool op = is_affine_szabo(type_b_connection(p)).szabo;
                        if (polys) ++szabo_count;
                        if (polys != op) ++disagreements;
                    }
    Outcome o;
    o.pass = disagreements == 0 && tuples == 3125;
    std::ostringstream d;
    d << tuples << " tuples swept with f = -c, " << szabo_count << " Szabo, " << disagreements
      << " disagreements between the residual system and the operator verdict";
    o.detail = d.str();
    return o;
}

/// The running polynomial twist used by the extension criteria.
PhiTensor poly_phi() {
    PhiTensor phi(2);
    RatFn u1 = vr(U(1)), u2 = vr(U(2));
    phi.set(0, 0, par(16) * u1 * u1 + par(17) * u2 * u2);
    phi.set(0, 1, par(18) * u1 * u2);
    phi.set(1, 1, par(19) * u1 * u1 + par(20) * u2 * u2);
    return phi;
}

PhiTensor param_phi() {
    PhiTensor phi(2);
    phi.set(0, 0, par(16));
    phi.set(0, 1, par(17));
    phi.set(1, 1, par(18));
    return phi;
}

Outcome criterion9() {
    Connection base = tu::example_diag_plus();
    PhiTensor phi = poly_phi();
    Metric g = twisted_extension(base, phi);
    Connection lc = levi_civita(g);

    RatFn u1 = vr(U(1)), u2 = vr(U(2)), u3 = vr(Up(1)), u4 = vr(Up(2));
    RatFn f1 = u1 + u2, f2 = u1 + u2 + qr(1);
    RatFn half = qr(1, 2);
    auto dphi = [&](int i, int j, int k) { return lc.d(phi.at(i, j), k); };

    struct Want {
        int k, i, j;
        RatFn val;
    };
    const std::vector<Want> want = {
        {0, 0, 0, f1},
        {1, 1, 1, f2},
        {2, 0, 2, -f1},
        {3, 1, 3, -f2},
        {2, 0, 0, half * dphi(0, 0, 0) - f1 * (phi.at(0, 0) - qr(2) * f1 * u3) - u3},
        {3, 0, 0, dphi(0, 1, 0) - half * dphi(0, 0, 1) - f1 * phi.at(0, 1) + u3},
        {2, 0, 1, half * dphi(0, 0, 1) - u3},
        {3, 0, 1, half * dphi(1, 1, 0) - u4},
        {2, 1, 1, dphi(0, 1, 1) - half * dphi(1, 1, 0) - f2 * phi.at(0, 1) + u4},
        {3, 1, 1, half * dphi(1, 1, 1) - f2 * (phi.at(1, 1) - qr(2) * f2 * u4) - u4},
    };
    int wrong = 0;
    for (const auto& w : want)
        if (!(lc.gamma(w.k, w.i, w.j) == w.val) || !(lc.gamma(w.k, w.j, w.i) == w.val)) ++wrong;
    auto listed = [&](int k, int i, int j) {
        for (const auto& w : want)
            if (w.k == k && ((w.i == i && w.j == j) || (w.i == j && w.j == i))) return true;
        return false;
    };
    int spurious = 0;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (!listed(k, i, j) && !lc.gamma(k, i, j).is_zero()) ++spurious;
    bool torsion_free = lc.is_torsion_free();
    bool compat = metric_compat_residual(g, lc).is_zero();

    Outcome o;
    o.pass = wrong == 0 && spurious == 0 && torsion_free && compat;
    std::ostringstream d;
    if (o.pass)
        d << "all ten nonzero Christoffel entries match the closed form; the connection is "
             "torsion-free and metric-compatible";
    else
        d << wrong << " of 10 entries off, " << spurious << " unexpected nonzero slots, "
          << "torsion_free=" << (torsion_free ? "true" : "false")
          << ", compat=" << (compat ? "true" : "false");
    o.detail = d.str();
    return o;
}

Outcome criterion10() {
    Connection base = tu::example_diag_plus();
    const std::vector<std::pair<std::string, std::vector<RatFn>>> dirs = {
        {"X1", {qr(1), qr(0), qr(1), qr(0)}},
        {"X2", {qr(0), qr(1), qr(0), qr(1)}},
    };
    auto degree_str = [](const std::optional<int>& d) {
        return d ? std::to_string(*d) : std::string("none");
    };

    ExtensionSzaboReport sym = extension_szabo_report(base, param_phi(), dirs, {});
    std::optional<int> d1 = sym.directions[0].degree;
    std::optional<int> d2 = sym.directions[1].degree;
    bool pass = d1 == 3 && d2 == 2;

    // The degrees must persist at five random rational points.
    tu::Rng rng(31337);
    std::uniform_int_distribution<int> num(1, 9);
    std::vector<std::string> point_d2;
    for (int trial = 0; trial < 5; ++trial) {
        std::map<VarId, Rational> pt;
        pt[U(1)] = Rational(num(rng));
        pt[U(2)] = Rational(num(rng), num(rng));
        pt[Up(1)] = Rational(num(rng), num(rng));
        pt[Up(2)] = Rational(num(rng));
        pt[tu::Par(16)] = Rational(num(rng));
        pt[tu::Par(17)] = Rational(num(rng), num(rng));
        pt[tu::Par(18)] = Rational(num(rng));
        ExtensionSzaboReport rp = extension_szabo_report(base, param_phi(), dirs, pt);
        if (!(rp.directions[0].degree == 3 && rp.directions[1].degree == 2)) pass = false;
        point_d2.push_back(degree_str(rp.directions[1].degree));
    }

    Outcome o;
    o.pass = pass;
    std::ostringstream d;
    d << "degree(X1) = " << degree_str(d1) << " (expected 3), degree(X2) = " << degree_str(d2)
      << " (expected 2) symbolically; at the 5 sample points degree(X2) = ";
    for (std::size_t i = 0; i < point_d2.size(); ++i) d << (i ? "," : "") << point_d2[i];
    o.detail = d.str();
    return o;
}

Outcome criterion11() {
    RatFn beta = par(26);
    int bad = 0;
    tu::Rng rng(424242);
    for (int trial = 0; trial < 20; ++trial) {
        Connection c = tu::rand_connection(rng, 2);
        CharPolyCoeffs coeffs = char_poly(szabo_matrix(c));
        std::map<VarId, RatFn> scale = {{Alpha(1), beta * vr(Alpha(1))},
                                        {Alpha(2), beta * vr(Alpha(2))}};
        for (std::size_t k = 0; k < coeffs.sigma.size(); ++k) {
            RatFn lhs = coeffs.sigma[k].substitute(scale);
            RatFn rhs = rpow(beta, 3 * (static_cast<int>(k) + 1)) * coeffs.sigma[k];
            if (!(lhs - rhs).is_zero()) ++bad;
        }
    }
    Outcome o;
    o.pass = bad == 0;
    std::ostringstream d;
    d << "sigma_k(beta X) = beta^(3k) sigma_k(X) held symbolically on 20 random 2D connections ("
      << bad << " failures)";
    o.detail = d.str();
    return o;
}

Outcome criterion12() {
    tu::Rng rng(99991);
    VarTable table = VarTable::standard(3);
    long bad_ring = 0, bad_leibniz = 0, bad_commute = 0, bad_roundtrip = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        Poly p = tu::rand_poly2(rng, 3);
        Poly q = tu::rand_poly2(rng, 3);
        Poly r = tu::rand_poly2(rng, 3);
        if (!((p + q) + r == p + (q + r)) || !(p * q == q * p) ||
            !(p * (q + r) == p * q + p * r))
            ++bad_ring;
        if (!(p.differentiate(U(1)) * q + p * q.differentiate(U(1)) ==
              (p * q).differentiate(U(1))))
            ++bad_leibniz;
        if (!(p.differentiate(U(1)).differentiate(U(2)) ==
              p.differentiate(U(2)).differentiate(U(1))))
            ++bad_commute;
        RatFn f = tu::rand_ratfn(rng, 3);
        if (!(parse_expr(format_expr(f), table) == f)) ++bad_roundtrip;
    }
    Outcome o;
    o.pass = bad_ring == 0 && bad_leibniz == 0 && bad_commute == 0 && bad_roundtrip == 0;
    std::ostringstream d;
    d << "1000 randomized cases each: ring axioms (" << bad_ring << " failures), Leibniz ("
      << bad_leibniz << "), commuting partials (" << bad_commute << "), parse/format round-trip ("
      << bad_roundtrip << ")";
    o.detail = d.str();
    return o;
}

struct Criterion {
    Outcome (*fn)();
    double budget_s; // 0 = no wall-clock bound
};

const Criterion& criterion(int n) {
    static const Criterion table[12] = {
        {criterion1, 1.0},  {criterion2, 5.0},   {criterion3, 1.0}, {criterion4, 0.0},
        {criterion5, 60.0}, {criterion6, 0.0},   {criterion7, 120.0}, {criterion8, 120.0},
        {criterion9, 5.0},  {criterion10, 10.0}, {criterion11, 0.0}, {criterion12, 0.0},
    };
    return table[n - 1];
}

} // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) {
        int n = std::atoi(argv[i]);
        if (n < 1 || n > 12) {
            std::fprintf(stderr, "usage: %s [criterion 1..12]...\n", argv[0]);
            return 2;
        }
        wanted.push_back(n);
    }
    if (wanted.empty())
        for (int n = 1; n <= 12; ++n) wanted.push_back(n);

    bool all_pass = true;
    for (int n : wanted) {
        const Criterion& c = criterion(n);
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("unexpected exception: ") + e.what();
        }
        double secs = seconds_since(t0);
        bool pass = o.pass;
        std::string detail = o.detail;
        if (pass && c.budget_s > 0.0 && secs >= c.budget_s) {
            pass = false;
            std::ostringstream over;
            over << detail << " [exceeded the " << c.budget_s << " s budget]";
            detail = over.str();
        }
        std::printf("criterion %2d: %s - %s (%.2f s)\n", n, pass ? "PASS" : "FAIL",
                    detail.c_str(), secs);
        std::fflush(stdout);
        if (!pass) all_pass = false;
    }
    return all_pass ? 0 : 1;
}
