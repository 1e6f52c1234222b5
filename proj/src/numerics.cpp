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

#include "prens/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace prens {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// ---------------------------------------------------------------------------
// Cyclic Jacobi for real symmetric matrices
// ---------------------------------------------------------------------------

double off_diagonal_norm(const RealMatrix& a) {
    double s = 0;
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
}

void jacobi_rotate(RealMatrix& a, RealMatrix& v, std::size_t p, std::size_t q) {
    const double apq = a(p, q);
    if (apq == 0.0) return;
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    const double t = (theta >= 0 ? 1.0 : -1.0) /
                     (std::abs(theta) + std::sqrt(1.0 + theta * theta));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const double tau = s / (1.0 + c);
    const double h = t * apq;
    a(p, p) -= h;
    a(q, q) += h;
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    for (std::size_t k = 0; k < a.rows(); ++k) {
        if (k == p || k == q) continue;
        const double akp = a(k, p);
        const double akq = a(k, q);
        a(k, p) = akp - s * (akq + tau * akp);
        a(p, k) = a(k, p);
        a(k, q) = akq + s * (akp - tau * akq);
        a(q, k) = a(k, q);
    }
    for (std::size_t k = 0; k < v.rows(); ++k) {
        const double vkp = v(k, p);
        const double vkq = v(k, q);
        v(k, p) = vkp - s * (vkq + tau * vkp);
        v(k, q) = vkq + s * (vkp - tau * vkq);
    }
}

// ---------------------------------------------------------------------------
// LU with partial pivoting, templated over double / Complex
// ---------------------------------------------------------------------------

template <typename T>
struct Lu {
    detail::Dense<T> lu;
    std::vector<std::size_t> perm;
    bool singular = false;

    explicit Lu(detail::Dense<T> a) : lu(std::move(a)) {
        const std::size_t n = lu.rows();
        perm.resize(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = k;
            double best = std::abs(lu(k, k));
            for (std::size_t i = k + 1; i < n; ++i) {
                const double cand = std::abs(lu(i, k));
                if (cand > best) {
                    best = cand;
                    piv = i;
                }
            }
            if (best == 0.0) {
                singular = true;
                continue;
            }
            if (piv != k) {
                std::swap(perm[k], perm[piv]);
                for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
            }
            const T inv = T{1} / lu(k, k);
            for (std::size_t i = k + 1; i < n; ++i) {
                const T f = lu(i, k) * inv;
                lu(i, k) = f;
                if (f == T{}) continue;
                for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            }
        }
    }

    std::vector<T> solve(const std::vector<T>& b) const {
        const std::size_t n = lu.rows();
        std::vector<T> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            T s = b[perm[i]];
            for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * y[j];
            y[i] = s;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            T s = y[ii];
            for (std::size_t j = ii + 1; j < n; ++j) s -= lu(ii, j) * y[j];
            y[ii] = s / lu(ii, ii);
        }
        return y;
    }

    detail::Dense<T> solve_matrix(const detail::Dense<T>& rhs) const {
        const std::size_t n = lu.rows();
        detail::Dense<T> x(n, rhs.cols());
        std::vector<T> col(n);
        for (std::size_t j = 0; j < rhs.cols(); ++j) {
            for (std::size_t i = 0; i < n; ++i) col[i] = rhs(i, j);
            auto sol = solve(col);
            for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
        }
        return x;
    }
};

double inf_norm(const ComplexMatrix& a) {
    double best = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Complex Hessenberg + shifted QR eigenvalues
// ---------------------------------------------------------------------------

void hessenberg_in_place(ComplexMatrix& h) {
    const std::size_t n = h.rows();
    if (n < 3) return;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        // Householder vector for column k below the subdiagonal.
        double scale = 0;
        for (std::size_t i = k + 1; i < n; ++i) scale += std::norm(h(i, k));
        scale = std::sqrt(scale);
        if (scale == 0.0) continue;
        Complex alpha = h(k + 1, k);
        const double aa = std::abs(alpha);
        const Complex phase = aa > 0 ? alpha / aa : Complex(1, 0);
        const Complex beta = -phase * scale;
        ComplexVector v(n, Complex{});
        for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
        v[k + 1] -= beta;
        double vnorm2 = 0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) continue;
        const double inv = 2.0 / vnorm2;
        // H <- (I - inv v v†) H
        for (std::size_t j = 0; j < n; ++j) {
            Complex dot{};
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, j);
            dot *= inv;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * dot;
        }
        // H <- H (I - inv v v†)
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot{};
            for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j];
            dot *= inv;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex{};
    }
}

void givens_pair(Complex f, Complex g, double& c, Complex& s) {
    if (g == Complex{}) {
        c = 1.0;
        s = Complex{};
        return;
    }
    if (f == Complex{}) {
        c = 0.0;
        s = std::conj(g) / std::abs(g);
        return;
    }
    const double af = std::abs(f);
    const double r = std::hypot(af, std::abs(g));
    c = af / r;
    s = (f / af) * std::conj(g) / (r);
}

std::pair<Complex, Complex> eig2(Complex a, Complex b, Complex c, Complex d) {
    const Complex tr = a + d;
    const Complex det = a * d - b * c;
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    return {0.5 * (tr + disc), 0.5 * (tr - disc)};
}

// Eigenvalues of an upper-Hessenberg block h[lo..hi] via explicit
// single-shift QR with Wilkinson shifts. Coupling entries outside the block
// do not affect its eigenvalues and are ignored.
void qr_eigvals_block(ComplexMatrix& h, std::size_t lo, std::size_t hi,
                      ComplexVector& out) {
    std::size_t m = hi;
    std::size_t stalled = 0;
    const std::size_t max_total = 60 * (hi - lo + 1) + 200;
    std::size_t total = 0;

    std::vector<double> cs;
    ComplexVector sn;

    while (true) {
        if (m == lo) {
            out.push_back(h(lo, lo));
            return;
        }
        // Deflation scan within [lo..m].
        std::size_t l = m;
        while (l > lo) {
            const double sub = std::abs(h(l, l - 1));
            const double diag = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
            if (sub <= kEps * (diag + kEps)) {
                h(l, l - 1) = Complex{};
                break;
            }
            --l;
        }
        if (l == m) {
            out.push_back(h(m, m));
            --m;
            stalled = 0;
            continue;
        }
        if (l + 1 == m && h(m, m - 1) == Complex{}) {
            // already deflated by the scan
            continue;
        }
        if (l + 1 == m) {
            auto [e1, e2] = eig2(h(l, l), h(l, m), h(m, l), h(m, m));
            out.push_back(e1);
            out.push_back(e2);
            if (m < 2 + lo) {
                return;
            }
            m -= 2;
            stalled = 0;
            continue;
        }

        if (++total > max_total)
            throw Error("eigvals_general: QR iteration failed to converge");

        // Wilkinson shift from the trailing 2x2 of the active block.
        Complex shift;
        if (++stalled % 12 == 0) {
            shift = h(m, m) + Complex(std::abs(h(m, m - 1)), 0.0);
        } else {
            auto [e1, e2] = eig2(h(m - 1, m - 1), h(m - 1, m), h(m, m - 1), h(m, m));
            shift = (std::abs(e1 - h(m, m)) < std::abs(e2 - h(m, m))) ? e1 : e2;
        }

        const std::size_t blk = m - l + 1;
        cs.assign(blk - 1, 0.0);
        sn.assign(blk - 1, Complex{});
        for (std::size_t i = l; i <= m; ++i) h(i, i) -= shift;

        // R = G_{m-1} ... G_l (H - shift I)
        for (std::size_t i = l; i < m; ++i) {
            double c;
            Complex s;
            givens_pair(h(i, i), h(i + 1, i), c, s);
            cs[i - l] = c;
            sn[i - l] = s;
            for (std::size_t j = i; j <= m; ++j) {
                const Complex top = h(i, j);
                const Complex bot = h(i + 1, j);
                h(i, j) = c * top + s * bot;
                h(i + 1, j) = -std::conj(s) * top + c * bot;
            }
        }
        // H = R G_l† ... G_{m-1}† + shift I
        for (std::size_t i = l; i < m; ++i) {
            const double c = cs[i - l];
            const Complex s = sn[i - l];
            for (std::size_t r = l; r <= std::min(i + 1, m); ++r) {
                const Complex u = h(r, i);
                const Complex v = h(r, i + 1);
                h(r, i) = c * u + std::conj(s) * v;
                h(r, i + 1) = -s * u + c * v;
            }
        }
        for (std::size_t i = l; i <= m; ++i) h(i, i) += shift;
    }
}

// ---------------------------------------------------------------------------
// Hermitian positive definite Cholesky (complex)
// ---------------------------------------------------------------------------

struct HermCholesky {
    ComplexMatrix l;
    bool ok = false;

    explicit HermCholesky(const ComplexMatrix& a) : l(a.rows(), a.cols()) {
        const std::size_t n = a.rows();
        ok = true;
        for (std::size_t j = 0; j < n; ++j) {
            double d = a(j, j).real();
            for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
            if (!(d > 0.0)) {
                ok = false;
                return;
            }
            const double dj = std::sqrt(d);
            l(j, j) = Complex(dj, 0.0);
            for (std::size_t i = j + 1; i < n; ++i) {
                Complex s = a(i, j);
                for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
                l(i, j) = s / dj;
            }
        }
    }

    ComplexVector solve(const ComplexVector& b) const {
        const std::size_t n = l.rows();
        ComplexVector y(n);
        for (std::size_t i = 0; i < n; ++i) {
            Complex s = b[i];
            for (std::size_t j = 0; j < i; ++j) s -= l(i, j) * y[j];
            y[i] = s / l(i, i);
        }
        for (std::size_t ii = n; ii-- > 0;) {
            Complex s = y[ii];
            for (std::size_t j = ii + 1; j < n; ++j) s -= std::conj(l(j, ii)) * y[j];
            y[ii] = s / l(ii, ii);
        }
        return y;
    }
};

} // namespace

// ---------------------------------------------------------------------------
// Public symmetric eigensolvers
// ---------------------------------------------------------------------------

SymmetricEigen sym_eig(const RealSymmetricMatrix& s) {
    const std::size_t n = s.dim();
    RealMatrix a = s.mat();
    RealMatrix v = RealMatrix::identity(n);
    const double scale = std::max(a.max_abs(), 1.0);

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (off_diagonal_norm(a) <= 1e-15 * scale * n) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > 1e-18 * scale) jacobi_rotate(a, v, p, q);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&a](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    SymmetricEigen out;
    out.values.resize(n);
    out.vectors = RealMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

RealVector sym_eigvals(const RealSymmetricMatrix& s) { return sym_eig(s).values; }

PsdCheck psd_min_eig(const RealSymmetricMatrix& s, double tol) {
    if (tol < 0) throw InvalidInput("psd_min_eig: tolerance must be nonnegative");
    const RealVector vals = sym_eigvals(s);
    PsdCheck check;
    check.min_eig = vals.front();
    check.is_psd = check.min_eig >= -tol;
    return check;
}

RealVector herm_eigvals(const ComplexMatrix& a) {
    if (!a.square()) throw InvalidInput("herm_eigvals: matrix must be square");
    if (!a.all_finite()) throw InvalidInput("herm_eigvals: non-finite entries");
    const std::size_t n = a.rows();
    ComplexMatrix h = a;
    // Enforce exact Hermiticity from the upper triangle.
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = Complex(h(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) h(j, i) = std::conj(h(i, j));
    }
    const double scale = std::max(h.max_abs(), 1.0);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += std::norm(h(i, j));
        if (std::sqrt(2.0 * off) <= 1e-15 * scale * n) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex g = h(p, q);
                const double ag = std::abs(g);
                if (ag <= 1e-18 * scale) continue;
                // Phase-rotate column/row q so the pivot becomes real,
                // then apply a real Jacobi rotation.
                const Complex e = std::conj(g) / ag; // h(p,q) * e = |g|
                for (std::size_t k = 0; k < n; ++k) h(k, q) *= e;
                for (std::size_t k = 0; k < n; ++k) h(q, k) *= std::conj(e);

                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                const double theta = (aqq - app) / (2.0 * ag);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sr = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex hkp = h(k, p);
                    const Complex hkq = h(k, q);
                    h(k, p) = c * hkp - sr * hkq;
                    h(k, q) = sr * hkp + c * hkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex hpk = h(p, k);
                    const Complex hqk = h(q, k);
                    h(p, k) = c * hpk - sr * hqk;
                    h(q, k) = sr * hpk + c * hqk;
                }
                h(p, q) = Complex{};
                h(q, p) = Complex{};
                h(p, p) = Complex(h(p, p).real(), 0.0);
                h(q, q) = Complex(h(q, q).real(), 0.0);
            }
        }
    }

    RealVector vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = h(i, i).real();
    std::sort(vals.begin(), vals.end());
    return vals;
}

ComplexVector eigvals_general(const ComplexMatrix& a) {
    if (!a.square()) throw InvalidInput("eigvals_general: matrix must be square");
    if (!a.all_finite()) throw InvalidInput("eigvals_general: non-finite entries");
    const std::size_t n = a.rows();
    if (n == 1) return {a(0, 0)};
    if (n == 2) {
        auto [e1, e2] = eig2(a(0, 0), a(0, 1), a(1, 0), a(1, 1));
        return {e1, e2};
    }
    ComplexMatrix h = a;
    hessenberg_in_place(h);
    ComplexVector out;
    out.reserve(n);
    qr_eigvals_block(h, 0, n - 1, out);
    return out;
}

ComplexVector eigvals_general(const RealMatrix& a) {
    return eigvals_general(to_complex(a));
}

double min_real_eigenvalue(const RealMatrix& a) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& e : eigvals_general(a)) best = std::min(best, e.real());
    return best;
}

bool is_hurwitz(const RealMatrix& a, double tol) {
    return min_real_eigenvalue(a) > tol;
}

// ---------------------------------------------------------------------------
// Lyapunov equation
// ---------------------------------------------------------------------------

RealSymmetricMatrix lyapunov_solve(const RealMatrix& k, const RealSymmetricMatrix& d) {
    if (!k.square()) throw InvalidInput("lyapunov_solve: K must be square");
    if (k.rows() != d.dim()) throw InvalidInput("lyapunov_solve: K and D dimensions differ");
    if (!k.all_finite()) throw InvalidInput("lyapunov_solve: non-finite entries in K");
    if (!is_hurwitz(k))
        throw SingularDynamics("lyapunov_solve: drift has an eigenvalue with real part <= 0");

    const std::size_t n = k.rows();
    const RealMatrix id = RealMatrix::identity(n);
    const RealMatrix system = kron(k, id) + kron(id, k);

    RealVector rhs(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rhs[i * n + j] = d(i, j);

    Lu<double> lu(system);
    if (lu.singular)
        throw SingularDynamics("lyapunov_solve: vectorized system is singular");
    const RealVector sol = lu.solve(rhs);

    RealMatrix v(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            v(i, j) = 0.5 * (sol[i * n + j] + sol[j * n + i]);

    RealSymmetricMatrix result(v);
    const RealMatrix res = k * result.mat() + result.mat() * k.transpose() - d.mat();
    if (res.frobenius_norm() > 1e-10 * (1.0 + d.mat().frobenius_norm()))
        throw Error("lyapunov_solve: residual exceeds tolerance (ill-conditioned system)");
    return result;
}

// ---------------------------------------------------------------------------
// Matrix exponential
// ---------------------------------------------------------------------------

ComplexMatrix expm(const ComplexMatrix& m) {
    if (!m.square()) throw InvalidInput("expm: matrix must be square");
    if (!m.all_finite()) throw InvalidInput("expm: non-finite entries");
    const std::size_t n = m.rows();

    const double norm = inf_norm(m);
    int squarings = 0;
    double scaled = norm;
    while (scaled > 0.5) {
        scaled *= 0.5;
        ++squarings;
    }
    ComplexMatrix a = m;
    if (squarings > 0) a *= Complex(std::ldexp(1.0, -squarings), 0.0);

    // Diagonal Padé of order 6.
    static const double b[7] = {1.0,        1.0 / 2.0,     5.0 / 44.0, 1.0 / 66.0,
                                1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};

    const ComplexMatrix id = ComplexMatrix::identity(n);
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;

    ComplexMatrix u_inner = id * Complex(b[1], 0) + a2 * Complex(b[3], 0) + a4 * Complex(b[5], 0);
    ComplexMatrix u = a * u_inner;
    ComplexMatrix v = id * Complex(b[0], 0) + a2 * Complex(b[2], 0) + a4 * Complex(b[4], 0) +
                      a6 * Complex(b[6], 0);

    ComplexMatrix num = v + u;
    ComplexMatrix den = v - u;

    Lu<Complex> lu(den);
    if (lu.singular) throw Error("expm: Padé denominator is singular");
    ComplexMatrix x = lu.solve_matrix(num);

    for (int i = 0; i < squarings; ++i) x = x * x;
    return x;
}

// ---------------------------------------------------------------------------
// Symmetric square root
// ---------------------------------------------------------------------------

RealMatrix sym_sqrt(const RealSymmetricMatrix& s) {
    const SymmetricEigen eig = sym_eig(s);
    if (eig.values.front() < -1e-10)
        throw NotPSD("sym_sqrt: matrix has eigenvalue below -1e-10");
    const std::size_t n = s.dim();
    RealMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0;
            for (std::size_t k = 0; k < n; ++k) {
                const double lam = std::max(eig.values[k], 0.0);
                acc += eig.vectors(i, k) * std::sqrt(lam) * eig.vectors(j, k);
            }
            out(i, j) = acc;
        }
    // exact symmetry
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (out(i, j) + out(j, i));
            out(i, j) = avg;
            out(j, i) = avg;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Nonnegative least squares (Lawson–Hanson on the normal equations)
// ---------------------------------------------------------------------------

namespace {

// Cholesky factor of the passive-set Gram block, stored row-major with
// stride n. Supports appending one column; removals trigger refactoring.
class PassiveCholesky {
public:
    PassiveCholesky(const RealMatrix& gram, std::size_t n) : gram_(gram), n_(n), l_(n * n, 0.0) {}

    std::size_t size() const { return passive_.size(); }
    const std::vector<std::size_t>& passive() const { return passive_; }

    // Returns false if the candidate column is numerically dependent.
    bool try_add(std::size_t col) {
        const std::size_t p = passive_.size();
        RealVector y(p);
        for (std::size_t i = 0; i < p; ++i) {
            double s = gram_(passive_[i], col);
            for (std::size_t j = 0; j < i; ++j) s -= l_[i * n_ + j] * y[j];
            y[i] = s / l_[i * n_ + i];
        }
        double d = gram_(col, col);
        for (std::size_t i = 0; i < p; ++i) d -= y[i] * y[i];
        if (!(d > 1e-12 * std::max(gram_(col, col), kEps))) return false;
        for (std::size_t i = 0; i < p; ++i) l_[p * n_ + i] = y[i];
        l_[p * n_ + p] = std::sqrt(d);
        passive_.push_back(col);
        return true;
    }

    void remove(std::size_t position) {
        passive_.erase(passive_.begin() + static_cast<std::ptrdiff_t>(position));
        refactor();
    }

    // Solves (G_PP) z = g_P.
    RealVector solve(const RealVector& g_full) const {
        const std::size_t p = passive_.size();
        RealVector y(p);
        for (std::size_t i = 0; i < p; ++i) {
            double s = g_full[passive_[i]];
            for (std::size_t j = 0; j < i; ++j) s -= l_[i * n_ + j] * y[j];
            y[i] = s / l_[i * n_ + i];
        }
        RealVector z(p);
        for (std::size_t ii = p; ii-- > 0;) {
            double s = y[ii];
            for (std::size_t j = ii + 1; j < p; ++j) s -= l_[j * n_ + ii] * z[j];
            z[ii] = s / l_[ii * n_ + ii];
        }
        return z;
    }

private:
    void refactor() {
        const std::size_t p = passive_.size();
        std::fill(l_.begin(), l_.end(), 0.0);
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                double s = gram_(passive_[i], passive_[j]);
                for (std::size_t k = 0; k < j; ++k) s -= l_[i * n_ + k] * l_[j * n_ + k];
                if (i == j) {
                    l_[i * n_ + i] = std::sqrt(std::max(s, 1e-300));
                } else {
                    l_[i * n_ + j] = s / l_[j * n_ + j];
                }
            }
        }
    }

    const RealMatrix& gram_;
    std::size_t n_;
    std::vector<double> l_;
    std::vector<std::size_t> passive_;
};

} // namespace

NnlsResult nnls_feasibility(const RealMatrix& a, const RealVector& b, double tol) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (b.size() != m) throw InvalidInput("nnls_feasibility: dimension mismatch");
    if (tol < 0) throw InvalidInput("nnls_feasibility: tolerance must be nonnegative");
    if (!a.all_finite()) throw InvalidInput("nnls_feasibility: non-finite entries in A");
    for (double v : b)
        if (!std::isfinite(v)) throw InvalidInput("nnls_feasibility: non-finite entries in b");

    // Normal equations, assembled once; zero entries of A are skipped so
    // block-sparse stacked systems stay cheap.
    RealMatrix gram(n, n);
    RealVector g(n, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        const double* row = &a(r, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const double ri = row[i];
            if (ri == 0.0) continue;
            g[i] += ri * b[r];
            double* grow = &gram(i, 0);
            for (std::size_t j = i; j < n; ++j) grow[j] += ri * row[j];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) gram(i, j) = gram(j, i);

    double gscale = 1.0;
    for (double v : g) gscale = std::max(gscale, std::abs(v));
    const double wtol = 1e-12 * gscale;

    NnlsResult result;
    result.x.assign(n, 0.0);
    PassiveCholesky chol(gram, n);
    RealVector w = g;
    std::vector<bool> in_passive(n, false);
    std::vector<bool> rejected(n, false);
    const std::size_t max_iterations = 10 * n;

    while (result.iterations < max_iterations) {
        // Pick the most negative-gradient candidate outside the passive set.
        std::size_t best = n;
        double wmax = wtol;
        for (std::size_t j = 0; j < n; ++j) {
            if (in_passive[j] || rejected[j]) continue;
            if (w[j] > wmax) {
                wmax = w[j];
                best = j;
            }
        }
        if (best == n) break; // KKT conditions hold

        if (!chol.try_add(best)) {
            rejected[best] = true; // numerically dependent column
            continue;
        }
        in_passive[best] = true;
        ++result.iterations;

        RealVector z = chol.solve(g);
        // Inner loop: walk back along the segment until all passive
        // coordinates are positive, dropping the blocking coordinate.
        while (true) {
            double alpha = 2.0;
            std::size_t block_pos = n;
            for (std::size_t idx = 0; idx < z.size(); ++idx) {
                if (z[idx] <= 0.0) {
                    const double xi = result.x[chol.passive()[idx]];
                    const double t = xi / (xi - z[idx]);
                    if (t < alpha) {
                        alpha = t;
                        block_pos = idx;
                    }
                }
            }
            if (block_pos == n) break; // all strictly positive

            for (std::size_t idx = 0; idx < z.size(); ++idx) {
                const std::size_t col = chol.passive()[idx];
                result.x[col] += alpha * (z[idx] - result.x[col]);
            }
            result.x[chol.passive()[block_pos]] = 0.0;
            // Remove the blocking coordinate and anything rounding below zero.
            for (std::size_t idx = chol.size(); idx-- > 0;) {
                const std::size_t col = chol.passive()[idx];
                if (result.x[col] <= 0.0) {
                    result.x[col] = 0.0;
                    in_passive[col] = false;
                    chol.remove(idx);
                }
            }
            ++result.iterations;
            if (result.iterations >= max_iterations) break;
            if (chol.size() == 0) {
                z.clear();
                break;
            }
            z = chol.solve(g);
        }

        const auto& passive = chol.passive();
        for (std::size_t idx = 0; idx < z.size(); ++idx) result.x[passive[idx]] = z[idx];
        std::fill(rejected.begin(), rejected.end(), false);

        // Gradient refresh: w = g - G x over the support of x.
        w = g;
        for (std::size_t j = 0; j < n; ++j) {
            const double xj = result.x[j];
            if (xj == 0.0) continue;
            const double* gcol = &gram(j, 0);
            for (std::size_t i = 0; i < n; ++i) w[i] -= gcol[i] * xj;
        }
        if (result.iterations >= max_iterations) break;
    }
    result.iteration_cap_reached = result.iterations >= max_iterations;

    // Residual against the original system, not the normal equations.
    double rss = 0;
    for (std::size_t r = 0; r < m; ++r) {
        double s = -b[r];
        const double* row = &a(r, 0);
        for (std::size_t j = 0; j < n; ++j) {
            if (result.x[j] != 0.0) s += row[j] * result.x[j];
        }
        rss += s * s;
    }
    result.residual = std::sqrt(rss);
    result.feasible =
        !result.iteration_cap_reached && result.residual <= tol * (1.0 + norm2(b));
    return result;
}

// ---------------------------------------------------------------------------
// Smallest singular pair via regularized inverse iteration
// ---------------------------------------------------------------------------

namespace {

ComplexVector deterministic_start(std::size_t n, std::uint64_t salt) {
    // splitmix64 stream; any fixed full-support vector works here.
    ComplexVector v(n);
    std::uint64_t state = 0x9E3779B97F4A7C15ull ^ salt;
    for (std::size_t i = 0; i < n; ++i) {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        z ^= z >> 31;
        const double re = static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
        state += 0x9E3779B97F4A7C15ull;
        z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        z ^= z >> 31;
        const double im = static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
        v[i] = Complex(re, im);
    }
    double nrm = norm2(v);
    for (auto& c : v) c /= nrm;
    return v;
}

void normalize(ComplexVector& v) {
    const double nrm = norm2(v);
    if (nrm > 0)
        for (auto& c : v) c /= nrm;
}

double rayleigh(const ComplexMatrix& g, const ComplexVector& v) {
    Complex acc{};
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        Complex row{};
        for (std::size_t j = 0; j < n; ++j) row += g(i, j) * v[j];
        acc += std::conj(v[i]) * row;
    }
    return acc.real();
}

} // namespace

SingularTail smallest_singular_tail(const ComplexMatrix& a) {
    if (!a.square()) throw InvalidInput("smallest_singular_tail: matrix must be square");
    const std::size_t n = a.rows();

    // Gram matrix A†A, upper half via row-wise rank-1 updates.
    ComplexMatrix g(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            const Complex ari = a(r, i);
            if (ari == Complex{}) continue;
            const Complex c = std::conj(ari);
            for (std::size_t j = i; j < n; ++j) g(i, j) += c * a(r, j);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        g(i, i) = Complex(g(i, i).real(), 0.0);
        for (std::size_t j = 0; j < i; ++j) g(i, j) = std::conj(g(j, i));
    }

    const double gnorm = inf_norm(g);
    SingularTail tail;
    if (gnorm == 0.0) {
        tail.v1 = ComplexVector(n, Complex{});
        tail.v1[0] = Complex(1, 0);
        return tail;
    }

    double shift = 1e-12 * gnorm;
    ComplexMatrix shifted = g;
    for (int attempt = 0;; ++attempt) {
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) = g(i, i) + Complex(shift, 0.0);
        HermCholesky chol(shifted);
        if (chol.ok) {
            auto iterate = [&](ComplexVector v, const ComplexVector* deflate) {
                double rho = std::numeric_limits<double>::infinity();
                for (int it = 0; it < 40; ++it) {
                    v = chol.solve(v);
                    if (deflate) {
                        Complex overlap{};
                        for (std::size_t i = 0; i < n; ++i)
                            overlap += std::conj((*deflate)[i]) * v[i];
                        for (std::size_t i = 0; i < n; ++i) v[i] -= overlap * (*deflate)[i];
                    }
                    normalize(v);
                    const double rho_new = rayleigh(g, v);
                    const bool settled = std::abs(rho_new - rho) <= 1e-12 * gnorm;
                    rho = rho_new;
                    if (it >= 2 && settled) break;
                }
                return v;
            };
            // The final singular values come from ‖A·v‖ rather than the
            // Rayleigh quotient of A†A, which floors at sqrt(eps).
            auto sigma_of = [&](const ComplexVector& v) { return norm2(a * v); };

            ComplexVector v1 = iterate(deterministic_start(n, 0x1234), nullptr);
            ComplexVector v2 = iterate(deterministic_start(n, 0xabcd), &v1);
            tail.sigma1 = sigma_of(v1);
            tail.sigma2 = sigma_of(v2);
            tail.v1 = std::move(v1);
            return tail;
        }
        if (attempt >= 6) throw Error("smallest_singular_tail: factorization failed");
        shift *= 100.0;
    }
}

} // namespace prens
