// Copyright 2026 The prens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "prens/numerics.hpp"
#include "test_support.hpp"

using namespace prens;

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

TEST_CASE("sym_eigvals on hand-solved matrices") {
    CHECK(sym_eigvals(RealSymmetricMatrix::identity(2)) == RealVector{1.0, 1.0});

    // char. polynomial of [[0,-1],[-1,2]] is l^2 - 2l - 1, roots 1 +- sqrt(2)
    const RealVector vals = sym_eigvals(RealSymmetricMatrix{{0, -1}, {-1, 2}});
    CHECK(vals[0] == doctest::Approx(1.0 - kSqrt2).epsilon(1e-12));
    CHECK(vals[1] == doctest::Approx(1.0 + kSqrt2).epsilon(1e-12));

    const RealVector diag = sym_eigvals(RealSymmetricMatrix::diagonal({0.0, 2.0}));
    CHECK(diag[0] == doctest::Approx(0.0));
    CHECK(diag[1] == doctest::Approx(2.0));
}

TEST_CASE("sym_eig reconstructs the input") {
    StreamRng rng(7, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 11);
        const RealSymmetricMatrix s = test::random_symmetric(rng, n, 3.0);
        const SymmetricEigen eig = sym_eig(s);

        RealMatrix recon(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double acc = 0;
                for (std::size_t k = 0; k < n; ++k)
                    acc += eig.vectors(i, k) * eig.values[k] * eig.vectors(j, k);
                recon(i, j) = acc;
            }
        CHECK(frobenius_distance(recon, s.mat()) <= 1e-10 * (1.0 + s.mat().max_abs()));

        double trace = 0, sum = 0;
        for (std::size_t i = 0; i < n; ++i) trace += s(i, i);
        for (double v : eig.values) sum += v;
        CHECK(sum == doctest::Approx(trace).epsilon(1e-9));

        for (std::size_t k = 0; k + 1 < n; ++k) CHECK(eig.values[k] <= eig.values[k + 1]);
    }
}

TEST_CASE("sym_eigvals rejects non-finite input") {
    RealMatrix bad(2, 2);
    bad(0, 1) = bad(1, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(RealSymmetricMatrix{bad}, InvalidInput);
}

TEST_CASE("psd_min_eig decisions") {
    const PsdCheck boundary = psd_min_eig(RealSymmetricMatrix::diagonal({0.0, 2.0}), 1e-10);
    CHECK(boundary.is_psd);
    CHECK(boundary.min_eig == doctest::Approx(0.0));

    const PsdCheck indefinite = psd_min_eig(RealSymmetricMatrix{{0, -1}, {-1, 2}}, 1e-10);
    CHECK_FALSE(indefinite.is_psd);
    CHECK(indefinite.min_eig == doctest::Approx(1.0 - kSqrt2).epsilon(1e-12));

    const PsdCheck id = psd_min_eig(RealSymmetricMatrix::identity(3), 0.0);
    CHECK(id.is_psd);
    CHECK(id.min_eig == doctest::Approx(1.0));

    CHECK_THROWS_AS(psd_min_eig(RealSymmetricMatrix::identity(2), -1.0), InvalidInput);
}

TEST_CASE("herm_eigvals matches 2x2 closed form and invariants") {
    // [[1, i],[-i, 1]] has eigenvalues 0 and 2
    ComplexMatrix m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = Complex(0, 1);
    m(1, 0) = Complex(0, -1);
    m(1, 1) = 1;
    const RealVector vals = herm_eigvals(m);
    CHECK(vals[0] == doctest::Approx(0.0));
    CHECK(vals[1] == doctest::Approx(2.0));

    StreamRng rng(11, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 9);
        const ComplexMatrix h = test::random_hermitian(rng, n, 2.0);
        const RealVector eigs = herm_eigvals(h);
        double sum = 0, sumsq = 0;
        for (double e : eigs) {
            sum += e;
            sumsq += e * e;
        }
        const double fn = h.frobenius_norm();
        CHECK(sum == doctest::Approx(h.trace().real()).epsilon(1e-9));
        CHECK(sumsq == doctest::Approx(fn * fn).epsilon(1e-9));
    }
}

TEST_CASE("eigvals_general recovers planted spectra") {
    StreamRng rng(13, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 7);
        // plant eigenvalues through a similarity transform of a triangular matrix
        ComplexMatrix t(n, n);
        ComplexVector planted(n);
        for (std::size_t i = 0; i < n; ++i) {
            planted[i] = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
            t(i, i) = planted[i];
            for (std::size_t j = i + 1; j < n; ++j)
                t(i, j) = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
        }
        const RealMatrix q = test::random_orthogonal(rng, n);
        const ComplexMatrix qc = to_complex(q);
        const ComplexMatrix a = qc * t * qc.transpose();

        ComplexVector got = eigvals_general(a);
        REQUIRE(got.size() == n);
        // greedy match
        std::vector<bool> used(n, false);
        for (const Complex& e : planted) {
            double best = 1e300;
            std::size_t arg = n;
            for (std::size_t j = 0; j < n; ++j) {
                if (used[j]) continue;
                const double dist = std::abs(got[j] - e);
                if (dist < best) {
                    best = dist;
                    arg = j;
                }
            }
            REQUIRE(arg < n);
            used[arg] = true;
            CHECK(best <= 1e-8 * (1.0 + std::abs(e)));
        }
    }
}

TEST_CASE("eigvals_general survives defective spectra") {
    // Jordan block: defective eigenvalues carry an eps^(1/4) sensitivity,
    // so the gate here is loose by design.
    ComplexMatrix jordan(4, 4);
    for (int i = 0; i < 4; ++i) jordan(i, i) = 0.5;
    for (int i = 0; i < 3; ++i) jordan(i, i + 1) = 1.0;

    StreamRng rng(5, 0);
    const RealMatrix q = test::random_orthogonal(rng, 4);
    const ComplexMatrix qc = to_complex(q);
    const ComplexMatrix hidden = qc * jordan * qc.transpose();
    for (const Complex& e : eigvals_general(hidden))
        CHECK(std::abs(e - Complex(0.5, 0.0)) <= 1e-3);

    // pure rotation: complex conjugate pair
    RealMatrix rot(2, 2);
    rot(0, 1) = -1.0;
    rot(1, 0) = 1.0;
    const ComplexVector pair = eigvals_general(rot);
    CHECK(std::abs(pair[0].imag()) == doctest::Approx(1.0));
    CHECK(pair[0].real() == doctest::Approx(0.0));
}

TEST_CASE("min_real_eigenvalue and Hurwitz checks") {
    RealMatrix k(2, 2);
    k(0, 0) = 1.0;
    k(1, 0) = 5.0; // atom-laser shape: eigenvalues {kappa, 0}
    CHECK(min_real_eigenvalue(k) == doctest::Approx(0.0));
    CHECK_FALSE(is_hurwitz(k));
    CHECK(is_hurwitz(RealMatrix::identity(3)));
}

TEST_CASE("lyapunov_solve closed forms") {
    const RealSymmetricMatrix v1 =
        lyapunov_solve(RealMatrix::identity(2), RealSymmetricMatrix::diagonal({2.0, 2.0}));
    CHECK(frobenius_distance(v1.mat(), RealMatrix::identity(2)) < 1e-12);

    RealMatrix k(2, 2);
    k(0, 0) = 1.0;
    k(1, 1) = 2.0;
    const RealSymmetricMatrix v2 = lyapunov_solve(k, RealSymmetricMatrix::diagonal({3.0, 5.0}));
    CHECK(v2(0, 0) == doctest::Approx(1.5).epsilon(1e-12));  // D00 / (2 K00)
    CHECK(v2(1, 1) == doctest::Approx(1.25).epsilon(1e-12)); // D11 / (2 K11)
    CHECK(v2(0, 1) == doctest::Approx(0.0));

    RealMatrix singular(2, 2);
    singular(0, 0) = 1.0;
    singular(1, 0) = 1.0;
    CHECK_THROWS_AS(lyapunov_solve(singular, RealSymmetricMatrix::diagonal({2.0, 2.0})),
                    SingularDynamics);

    CHECK_THROWS_AS(lyapunov_solve(RealMatrix::identity(3), RealSymmetricMatrix::identity(2)),
                    InvalidInput);
}

TEST_CASE("lyapunov_solve on random stable systems") {
    StreamRng rng(17, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 4);
        const RealMatrix k = test::random_hurwitz(rng, n);
        const RealSymmetricMatrix d = test::random_psd(rng, n);
        const RealSymmetricMatrix v = lyapunov_solve(k, d);

        const RealMatrix residual = k * v.mat() + v.mat() * k.transpose() - d.mat();
        CHECK(residual.frobenius_norm() <= 1e-10 * (1.0 + d.mat().frobenius_norm()));
        CHECK(psd_min_eig(v, 1e-9 * (1.0 + v.mat().max_abs())).is_psd);
    }
}

TEST_CASE("expm closed forms") {
    const ComplexMatrix zero(3, 3);
    CHECK(frobenius_distance(expm(zero), ComplexMatrix::identity(3)) < 1e-14);

    ComplexMatrix d(2, 2);
    d(0, 0) = Complex(0.7, 0.0);
    d(1, 1) = Complex(-1.3, 0.4);
    const ComplexMatrix ed = expm(d);
    CHECK(std::abs(ed(0, 0) - std::exp(Complex(0.7, 0.0))) < 1e-12);
    CHECK(std::abs(ed(1, 1) - std::exp(Complex(-1.3, 0.4))) < 1e-12);
    CHECK(std::abs(ed(0, 1)) < 1e-14);

    ComplexMatrix nilpotent(2, 2);
    nilpotent(0, 1) = 1.0; // series ends after the linear term
    const ComplexMatrix en = expm(nilpotent);
    CHECK(std::abs(en(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(en(0, 1) - 1.0) < 1e-14);
    CHECK(std::abs(en(1, 0)) < 1e-14);
    CHECK(std::abs(en(1, 1) - 1.0) < 1e-14);

    CHECK_THROWS_AS(expm(ComplexMatrix(2, 3)), InvalidInput);
}

TEST_CASE("expm against the doubled-order reference") {
    StreamRng rng(19, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 5);
        const double scale = trial % 3 == 0 ? 10.0 / static_cast<double>(n) : 1.0;
        const ComplexMatrix m = test::random_complex(rng, n, n, scale);
        const ComplexMatrix fast = expm(m);
        const ComplexMatrix ref = test::expm_pade_reference(m, 12);
        CHECK(frobenius_distance(fast, ref) <= 1e-9 * ref.frobenius_norm());
    }
}

TEST_CASE("expm inverse property") {
    StreamRng rng(23, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 4);
        const ComplexMatrix m = test::random_complex(rng, n, n, 1.0 / static_cast<double>(n));
        const ComplexMatrix prod = expm(m) * expm(Complex(-1.0, 0.0) * m);
        CHECK(frobenius_distance(prod, ComplexMatrix::identity(n)) <= 1e-8);
    }
}

TEST_CASE("nnls_feasibility worked examples") {
    const RealMatrix id2 = RealMatrix::identity(2);

    const NnlsResult easy = nnls_feasibility(id2, {1.0, 1.0}, 1e-8);
    CHECK(easy.feasible);
    CHECK(easy.residual == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(easy.x[0] == doctest::Approx(1.0));
    CHECK(easy.x[1] == doctest::Approx(1.0));

    const NnlsResult clipped = nnls_feasibility(id2, {-1.0, 0.0}, 1e-8);
    CHECK_FALSE(clipped.feasible);
    CHECK(clipped.residual == doctest::Approx(1.0));
    CHECK(clipped.x[0] == 0.0);
    CHECK(clipped.x[1] == 0.0);

    RealMatrix ones(2, 1);
    ones(0, 0) = 1.0;
    ones(1, 0) = 1.0;
    const NnlsResult scalar = nnls_feasibility(ones, {1.0, 2.0}, 1e-8);
    CHECK_FALSE(scalar.feasible);
    CHECK(scalar.x[0] == doctest::Approx(1.5));
    CHECK(scalar.residual == doctest::Approx(std::sqrt(0.5)));

    CHECK_THROWS_AS(nnls_feasibility(id2, {1.0, 2.0, 3.0}, 1e-8), InvalidInput);
}

TEST_CASE("nnls_feasibility randomized optimality") {
    StreamRng rng(29, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 3 + static_cast<std::size_t>(rng.uniform() * 10);
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 8);
        const RealMatrix a = test::random_real(rng, m, n, 2.0);

        if (trial % 2 == 0) {
            // consistent nonnegative system: must be recognized feasible
            RealVector x0(n);
            for (auto& v : x0) v = rng.uniform();
            const RealVector b = a * x0;
            const NnlsResult fit = nnls_feasibility(a, b, 1e-8);
            CHECK(fit.feasible);
            CHECK(fit.residual <= 1e-8 * (1.0 + norm2(b)));
        } else {
            RealVector b(m);
            for (auto& v : b) v = 2.0 * rng.uniform() - 1.0;
            const NnlsResult fit = nnls_feasibility(a, b, 1e-8);
            for (double xi : fit.x) CHECK(xi >= 0.0);

            // KKT: gradient of 1/2|Ax-b|^2 must be >= -1e-10 on active bounds
            // and ~0 on free coordinates.
            RealVector resid(m);
            for (std::size_t i = 0; i < m; ++i) {
                double s = -b[i];
                for (std::size_t j = 0; j < n; ++j) s += a(i, j) * fit.x[j];
                resid[i] = s;
            }
            for (std::size_t j = 0; j < n; ++j) {
                double grad = 0;
                for (std::size_t i = 0; i < m; ++i) grad += a(i, j) * resid[i];
                if (fit.x[j] > 0)
                    CHECK(std::abs(grad) <= 1e-8 * (1.0 + norm2(b)));
                else
                    CHECK(grad >= -1e-10 * (1.0 + norm2(b)));
            }
        }
    }
}

TEST_CASE("sym_sqrt closed forms and failure") {
    CHECK(frobenius_distance(sym_sqrt(RealSymmetricMatrix::identity(3)),
                             RealMatrix::identity(3)) < 1e-12);

    const RealMatrix root = sym_sqrt(RealSymmetricMatrix::diagonal({4.0, 9.0}));
    CHECK(root(0, 0) == doctest::Approx(2.0));
    CHECK(root(1, 1) == doctest::Approx(3.0));

    CHECK(sym_sqrt(RealSymmetricMatrix::zero(2)).frobenius_norm() == 0.0);

    CHECK_THROWS_AS(sym_sqrt(RealSymmetricMatrix{{-1.0}}), NotPSD);
}

TEST_CASE("sym_sqrt reproduces random PSD matrices") {
    StreamRng rng(31, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 6);
        const RealSymmetricMatrix s = test::random_psd(rng, n, 1.5);
        const RealMatrix root = sym_sqrt(s);
        CHECK(frobenius_distance(root * root.transpose(), s.mat()) <=
              1e-9 * (1.0 + s.mat().frobenius_norm()));
    }
}

TEST_CASE("smallest_singular_tail identifies kernels") {
    // rank-deficient 3x3 with an exact kernel direction
    ComplexMatrix a(3, 3);
    a(0, 0) = 1;
    a(0, 1) = -1;
    a(1, 1) = 2;
    a(1, 2) = -2;
    a(2, 0) = 3;
    a(2, 1) = -3;
    // kernel spanned by (1,1,1)
    const SingularTail tail = smallest_singular_tail(a);
    CHECK(tail.sigma1 <= 1e-10);
    CHECK(tail.sigma2 > 0.5);
    const ComplexVector residual = a * tail.v1;
    CHECK(norm2(residual) <= 1e-10);

    const SingularTail zero = smallest_singular_tail(ComplexMatrix(4, 4));
    CHECK(zero.sigma1 == 0.0);
    CHECK(zero.sigma2 == 0.0);
}
