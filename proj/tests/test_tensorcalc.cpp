// Torsion, curvature, Ricci, covariant derivatives, and the cyclic-parallel
// residual. The reference values are rebuilt from first principles inside
// this file: curvature as the commutator of nested covariant derivatives of
// coordinate vector fields, covariant derivatives by the tensor derivation
// rule, and the Ricci tensor as an explicit trace.

#include <doctest.h>

#include "test_util.hpp"

#include <vector>

using namespace szabo;
using tu::Alpha;
using tu::qr;
using tu::U;
using tu::vr;

namespace {

using Vec = std::vector<RatFn>;

/// Covariant derivative of a vector field along coordinate slot A:
/// (nabla_A W)^i = d_A W^i + sum_m Gamma^i_{A m} W^m.
Vec covd(const Connection& c, const Vec& w, int A) {
    Vec r(static_cast<std::size_t>(c.dim()));
    for (int i = 0; i < c.dim(); ++i) {
        RatFn v = c.d(w[static_cast<std::size_t>(i)], A);
        for (int m = 0; m < c.dim(); ++m)
            v += c.gamma(i, A, m) * w[static_cast<std::size_t>(m)];
        r[static_cast<std::size_t>(i)] = v;
    }
    return r;
}

/// R(d_A, d_B) d_C built as nabla_A nabla_B d_C - nabla_B nabla_A d_C;
/// coordinate fields commute, so there is no bracket term.
Vec curv_commutator(const Connection& c, int C, int A, int B) {
    Vec dC(static_cast<std::size_t>(c.dim()));
    dC[static_cast<std::size_t>(C)] = qr(1);
    Vec first = covd(c, covd(c, dC, B), A);
    Vec second = covd(c, covd(c, dC, A), B);
    for (int i = 0; i < c.dim(); ++i)
        first[static_cast<std::size_t>(i)] =
            first[static_cast<std::size_t>(i)] - second[static_cast<std::size_t>(i)];
    return first;
}

/// The curvature seen as a (1,3) tensor T^l_{m j k} (value slot l, plane
/// slots m,j, argument slot k), derived by the tensor derivation rule.
RatFn cov_deriv_curv_ref(const Connection& c, const TensorField& R, int l, int i, int m,
                         int j, int k) {
    auto T = [&](int ll, int mm, int jj, int kk) { return R(ll, kk, mm, jj); };
    RatFn v = c.d(T(l, m, j, k), i);
    for (int p = 0; p < c.dim(); ++p) {
        v += c.gamma(l, i, p) * T(p, m, j, k);
        v -= c.gamma(p, i, m) * T(l, p, j, k);
        v -= c.gamma(p, i, j) * T(l, m, p, k);
        v -= c.gamma(p, i, k) * T(l, m, j, p);
    }
    return v;
}

} // namespace

TEST_CASE("torsion vanishes exactly for symmetric symbols") {
    tu::Rng rng(101);
    for (int trial = 0; trial < 5; ++trial) {
        Connection c = tu::rand_connection(rng, 2 + trial % 2);
        CHECK(c.is_torsion_free());
        CHECK(torsion(c).is_zero());
    }

    Connection c(2);
    c.gamma(0, 0, 1) = vr(U(1));
    c.gamma(0, 1, 0) = vr(U(2));
    CHECK(!c.is_torsion_free());
    TensorField t = torsion(c);
    CHECK(t(0, 0, 1) == vr(U(1)) - vr(U(2)));
    CHECK(t(0, 1, 0) == vr(U(2)) - vr(U(1)));
    CHECK(t(0, 0, 0).is_zero());
    CHECK(t(1, 0, 1).is_zero());
}

TEST_CASE("curvature equals the covariant-derivative commutator") {
    tu::Rng rng(202);
    for (int trial = 0; trial < 7; ++trial) {
        int dim = trial < 5 ? 2 : 3;
        Connection c = tu::rand_connection(rng, dim);
        TensorField R = curvature(c);
        for (int A = 0; A < dim; ++A)
            for (int B = 0; B < dim; ++B)
                for (int C = 0; C < dim; ++C) {
                    Vec ref = curv_commutator(c, C, A, B);
                    for (int i = 0; i < dim; ++i) {
                        CAPTURE(trial);
                        CHECK(R(i, C, A, B) == ref[static_cast<std::size_t>(i)]);
                        // Antisymmetry in the plane arguments.
                        CHECK(R(i, C, A, B) == -R(i, C, B, A));
                    }
                }
    }
    CHECK(is_flat(Connection(3)));
}

TEST_CASE("first Bianchi identity holds for torsion-free connections") {
    tu::Rng rng(303);
    for (int trial = 0; trial < 4; ++trial) {
        int dim = trial < 2 ? 2 : 3;
        Connection c = tu::rand_connection(rng, dim);
        TensorField R = curvature(c);
        for (int i = 0; i < dim; ++i)
            for (int A = 0; A < dim; ++A)
                for (int B = 0; B < dim; ++B)
                    for (int C = 0; C < dim; ++C)
                        CHECK((R(i, C, A, B) + R(i, A, B, C) + R(i, B, C, A)).is_zero());
    }
}

TEST_CASE("the 2D curvature reduces to one independent plane") {
    tu::Rng rng(404);
    Connection c = tu::rand_connection(rng, 2);
    TensorField R = curvature(c);
    RatFn a = R(0, 0, 0, 1);
    RatFn b = R(1, 0, 0, 1);
    RatFn cc = R(0, 1, 0, 1);
    RatFn d = R(1, 1, 0, 1);
    for (int i = 0; i < 2; ++i)
        for (int C = 0; C < 2; ++C) {
            CHECK(R(i, C, 0, 0).is_zero());
            CHECK(R(i, C, 1, 1).is_zero());
            CHECK(R(i, C, 1, 0) == -R(i, C, 0, 1));
        }
    TensorField ric = ricci(c);
    CHECK(ric(0, 0) == -b);
    CHECK(ric(0, 1) == -d);
    CHECK(ric(1, 0) == a);
    CHECK(ric(1, 1) == cc);
}

TEST_CASE("ricci is the trace over the first slot") {
    tu::Rng rng(505);
    for (int trial = 0; trial < 4; ++trial) {
        int dim = trial < 2 ? 2 : 3;
        Connection c = tu::rand_connection(rng, dim);
        TensorField ric = ricci(c);
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                // Ric(d_j, d_k) = trace(Z -> R(Z, d_j) d_k).
                RatFn expect;
                for (int i = 0; i < dim; ++i)
                    expect += curv_commutator(c, k, i, j)[static_cast<std::size_t>(i)];
                CHECK(ric(j, k) == expect);
            }
    }
}

TEST_CASE("covariant derivative of ricci follows the rank-2 rule") {
    tu::Rng rng(606);
    for (int trial = 0; trial < 4; ++trial) {
        int dim = trial < 2 ? 2 : 3;
        Connection c = tu::rand_connection(rng, dim);
        TensorField ric = ricci(c);
        TensorField dric = cov_deriv_ricci(c);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k) {
                    RatFn expect = c.d(ric(j, k), i);
                    for (int p = 0; p < dim; ++p) {
                        expect -= c.gamma(p, i, j) * ric(p, k);
                        expect -= c.gamma(p, i, k) * ric(j, p);
                    }
                    CHECK(dric(i, j, k) == expect);
                }
    }
}

TEST_CASE("covariant derivative of curvature: derivation rule and symmetries") {
    tu::Rng rng(707);
    for (int trial = 0; trial < 4; ++trial) {
        int dim = trial < 3 ? 2 : 3;
        Connection c = tu::rand_connection(rng, dim);
        TensorField R = curvature(c);
        TensorField DR = cov_deriv_curvature(c, R);
        for (int l = 0; l < dim; ++l)
            for (int i = 0; i < dim; ++i)
                for (int m = 0; m < dim; ++m)
                    for (int j = 0; j < dim; ++j)
                        for (int k = 0; k < dim; ++k) {
                            CHECK(DR(l, i, m, j, k) ==
                                  cov_deriv_curv_ref(c, R, l, i, m, j, k));
                            // Antisymmetry in the plane slots survives
                            // differentiation.
                            CHECK(DR(l, i, m, j, k) == -DR(l, i, j, m, k));
                            // Second Bianchi identity (torsion-free): the
                            // cyclic sum over the derivative slot and the
                            // plane slots vanishes.
                            CHECK((DR(l, i, m, j, k) + DR(l, m, j, i, k) +
                                   DR(l, j, i, m, k))
                                      .is_zero());
                        }
    }
}

TEST_CASE("cyclic-parallel residual is the full direction contraction") {
    tu::Rng rng(808);
    for (int trial = 0; trial < 3; ++trial) {
        int dim = trial < 2 ? 2 : 3;
        Connection c = tu::rand_connection(rng, dim);
        TensorField dric = cov_deriv_ricci(c);
        RatFn expect;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k)
                    expect += vr(Alpha(i + 1)) * vr(Alpha(j + 1)) * vr(Alpha(k + 1)) *
                              dric(i, j, k);
        CHECK(cyclic_parallel_residual(c) == expect);
    }
    CHECK(cyclic_parallel_residual(Connection(2)).is_zero());
    CHECK(!cyclic_parallel_residual(tu::example_diag_plus()).is_zero());
}

TEST_CASE("flatness detects exactly the vanishing of curvature") {
    for (const Connection& c : tu::flat_family()) {
        CHECK(is_flat(c));
        CHECK(ricci(c).is_zero());
    }
    CHECK(is_flat(Connection(2)));
    CHECK(!is_flat(tu::example_diag_plus()));
    CHECK(!is_flat(tu::example_3d()));
    // A connection with constant symbols need not be flat.
    Connection c(2);
    c.gamma(0, 1, 1) = qr(1);
    c.gamma(1, 0, 1) = qr(1);
    c.gamma(1, 1, 0) = qr(1);
    CHECK(!is_flat(c));
}

TEST_CASE("connections reject coefficients outside their coordinate patch") {
    Connection c(2);
    c.gamma(0, 0, 0) = vr(Alpha(1));
    CHECK(tu::message_of<ValidationError>([&] { c.validate_vars(); })
              .find("mentions variable 'a1' outside the coordinate patch") !=
          std::string::npos);

    Connection c2(2);
    c2.gamma(0, 0, 0) = vr(U(3));
    CHECK(tu::message_of<ValidationError>([&] { c2.validate_vars(); })
              .find("'u3' outside the coordinate patch") != std::string::npos);

    Connection c3(2);
    c3.gamma(0, 0, 0) = vr(tu::Up(1));
    CHECK_THROWS_AS(c3.validate_vars(), ValidationError);

    // An extended-class connection accepts fiber coordinates up to half the
    // dimension, and parameters are always allowed.
    Connection e(4, CoordClass::Extended);
    e.gamma(0, 0, 0) = vr(tu::Up(2)) * vr(tu::Par(1));
    CHECK_NOTHROW(e.validate_vars());
    e.gamma(1, 1, 1) = vr(tu::Up(3));
    CHECK_THROWS_AS(e.validate_vars(), ValidationError);

    CHECK_THROWS_AS(Connection(0), DimensionMismatch);
    CHECK_THROWS_AS(Connection(3, CoordClass::Extended), DimensionMismatch);
    CHECK_THROWS_AS(Connection(2).gamma(0, 0, 2), DimensionMismatch);
}
