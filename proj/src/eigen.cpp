// Tridiagonal and Hessenberg eigenvalue engines.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "potalg/errors.hpp"
#include "potalg/spectral.hpp"

namespace potalg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kIterCap = 30;
constexpr int kExceptionalEvery = 10;

bool by_real_then_imag(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

double magnitude(double v) { return std::abs(v); }
double magnitude(const cplx& v) { return std::abs(v); }

// +r or -r, whichever makes |g + r| larger.
double with_sign_of(double r, double g) { return g >= 0.0 ? std::abs(r) : -std::abs(r); }
cplx with_sign_of(const cplx& r, const cplx& g) { return std::abs(g + r) >= std::abs(g - r) ? r : -r; }

double root_sum_squares(double f, double g) { return std::hypot(f, g); }
cplx root_sum_squares(const cplx& f, const cplx& g) { return std::sqrt(f * f + g * g); }

enum class SweepResult { Converged, Breakdown, IterationCap };

// Implicit QL with shifts on d (diagonal) and e (e[i] couples i and i+1,
// e[n-1] = 0), working on the block starting at l. For complex T the
// rotations are complex-orthogonal (c^2 + s^2 = 1), so symmetry is kept.
// On Breakdown/IterationCap, `block_end` holds the unreduced block's last index
// and d, e on [l, block_end] are restored to their values before the sweep.
template <typename T>
SweepResult ql_block(std::vector<T>& d, std::vector<T>& e, std::size_t l, std::size_t& block_end) {
    const std::size_t n = d.size();
    int iter = 0;
    std::vector<T> d_save;
    std::vector<T> e_save;
    while (true) {
        std::size_t m = l;
        for (; m + 1 < n; ++m) {
            const double dd = magnitude(d[m]) + magnitude(d[m + 1]);
            if (magnitude(e[m]) <= kEps * dd) break;
        }
        if (m == l) return SweepResult::Converged;
        block_end = m;
        if (iter == kIterCap) return SweepResult::IterationCap;
        ++iter;

        d_save.assign(d.begin() + l, d.begin() + m + 1);
        e_save.assign(e.begin() + l, e.begin() + m + 1);

        T g;
        if (iter % kExceptionalEvery == 0) {
            g = d[m] - (d[l] + T(0.75 * magnitude(e[l])));
        } else {
            g = (d[l + 1] - d[l]) / (T(2.0) * e[l]);
            T r = root_sum_squares(g, T(1.0));
            g = d[m] - d[l] + e[l] / (g + with_sign_of(r, g));
        }
        T s(1.0), c(1.0), p(0.0);
        bool deflated_early = false;
        bool breakdown = false;
        std::size_t i = m;
        while (i-- > l) {
            const T f = s * e[i];
            const T b = c * e[i];
            const T r = root_sum_squares(f, g);
            if (magnitude(r) == 0.0 && magnitude(f) == 0.0 && magnitude(g) == 0.0) {
                d[i + 1] -= p;
                e[m] = T(0.0);
                deflated_early = true;
                break;
            }
            if (magnitude(r) <= 1e-6 * std::max(magnitude(f), magnitude(g))) {
                breakdown = true;
                break;
            }
            e[i + 1] = r;
            s = f / r;
            c = g / r;
            g = d[i + 1] - p;
            const T rr = (d[i] - g) * s + T(2.0) * c * b;
            p = s * rr;
            d[i + 1] = g + p;
            g = c * rr - b;
        }
        if (breakdown) {
            std::copy(d_save.begin(), d_save.end(), d.begin() + l);
            std::copy(e_save.begin(), e_save.end(), e.begin() + l);
            return SweepResult::Breakdown;
        }
        if (deflated_early) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = T(0.0);
    }
}

}  // namespace

std::vector<double> eigen_real_tridiagonal(std::span<const double> diagonal, std::span<const double> off) {
    const std::size_t n = diagonal.size();
    if (n == 0) return {};
    if (off.size() + 1 != n) throw UsageError("eigen_real_tridiagonal: off-diagonal length must be n-1");
    std::vector<double> d(diagonal.begin(), diagonal.end());
    std::vector<double> e(off.begin(), off.end());
    e.push_back(0.0);
    for (std::size_t l = 0; l < n; ++l) {
        std::size_t block_end = l;
        const SweepResult r = ql_block(d, e, l, block_end);
        if (r != SweepResult::Converged)
            throw NumericalFailure("eigen_real_tridiagonal: no convergence for block starting at " +
                                       std::to_string(l),
                                   l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> eigen_real_tridiagonal(const TridiagonalOperator& op) {
    std::vector<double> d(op.size());
    for (std::size_t i = 0; i < op.size(); ++i) {
        const cplx v = op.diagonal[i];
        if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real())))
            throw UsageError("eigen_real_tridiagonal: complex diagonal at index " + std::to_string(i) +
                             "; use eigen_complex_tridiagonal");
        d[i] = v.real();
    }
    const std::vector<double> off(op.size() > 0 ? op.size() - 1 : 0, op.off_diagonal);
    return eigen_real_tridiagonal(d, off);
}

std::vector<cplx> eigen_hessenberg(std::vector<cplx> h, std::size_t n) {
    if (h.size() != n * n) throw UsageError("eigen_hessenberg: matrix size mismatch");
    auto at = [&h, n](std::size_t i, std::size_t j) -> cplx& { return h[i * n + j]; };
    double norm = 0.0;
    for (const cplx& v : h) norm = std::max(norm, std::abs(v));

    std::vector<cplx> eig(n);
    std::size_t hi = n;
    int iter = 0;
    while (hi-- > 0) {
        while (true) {
            std::size_t lo = hi;
            while (lo > 0) {
                double s = std::abs(at(lo, lo)) + std::abs(at(lo - 1, lo - 1));
                if (s == 0.0) s = norm;
                if (std::abs(at(lo, lo - 1)) <= kEps * s) {
                    at(lo, lo - 1) = 0.0;
                    break;
                }
                --lo;
            }
            if (lo == hi) {
                eig[hi] = at(hi, hi);
                iter = 0;
                break;
            }
            if (iter == kIterCap)
                throw NumericalFailure("eigen_hessenberg: no convergence in block ending at " + std::to_string(hi),
                                       hi);
            ++iter;

            cplx mu;
            if (iter % kExceptionalEvery == 0) {
                mu = at(hi, hi) + 0.75 * std::abs(at(hi, hi - 1));
            } else {
                const cplx a = at(hi - 1, hi - 1), b = at(hi - 1, hi), c = at(hi, hi - 1), d = at(hi, hi);
                const cplx half = 0.5 * (a - d);
                const cplx disc = std::sqrt(half * half + b * c);
                const cplx mid = 0.5 * (a + d);
                const cplx l1 = mid + disc, l2 = mid - disc;
                mu = std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
            }

            for (std::size_t i = lo; i <= hi; ++i) at(i, i) -= mu;
            std::vector<double> cs(hi - lo);
            std::vector<cplx> sn(hi - lo);
            for (std::size_t k = lo; k < hi; ++k) {
                const cplx a = at(k, k), b = at(k + 1, k);
                const double nrm = std::hypot(std::abs(a), std::abs(b));
                double c;
                cplx s;
                if (nrm == 0.0) {
                    c = 1.0;
                    s = 0.0;
                } else if (std::abs(a) == 0.0) {
                    c = 0.0;
                    s = std::conj(b) / std::abs(b);
                } else {
                    c = std::abs(a) / nrm;
                    s = (a / std::abs(a)) * std::conj(b) / nrm;
                }
                cs[k - lo] = c;
                sn[k - lo] = s;
                for (std::size_t j = k; j <= hi; ++j) {
                    const cplx x = at(k, j), y = at(k + 1, j);
                    at(k, j) = c * x + s * y;
                    at(k + 1, j) = -std::conj(s) * x + c * y;
                }
            }
            for (std::size_t k = lo; k < hi; ++k) {
                const double c = cs[k - lo];
                const cplx s = sn[k - lo];
                const std::size_t last = std::min(k + 1, hi);
                for (std::size_t i = lo; i <= last; ++i) {
                    const cplx x = at(i, k), y = at(i, k + 1);
                    at(i, k) = c * x + std::conj(s) * y;
                    at(i, k + 1) = -s * x + c * y;
                }
            }
            for (std::size_t i = lo; i <= hi; ++i) at(i, i) += mu;
        }
    }
    std::sort(eig.begin(), eig.end(), by_real_then_imag);
    return eig;
}

std::vector<cplx> eigen_complex_tridiagonal(std::span<const cplx> diagonal, std::span<const cplx> off) {
    const std::size_t n = diagonal.size();
    if (n == 0) return {};
    if (off.size() + 1 != n) throw UsageError("eigen_complex_tridiagonal: off-diagonal length must be n-1");
    std::vector<cplx> d(diagonal.begin(), diagonal.end());
    std::vector<cplx> e(off.begin(), off.end());
    e.push_back(0.0);
    for (std::size_t l = 0; l < n; ++l) {
        std::size_t block_end = l;
        if (ql_block(d, e, l, block_end) == SweepResult::Converged) continue;

        // Solve the unreduced block [l, block_end] with unitary Hessenberg QR.
        const std::size_t bn = block_end - l + 1;
        std::vector<cplx> dense(bn * bn, 0.0);
        for (std::size_t i = 0; i < bn; ++i) {
            dense[i * bn + i] = d[l + i];
            if (i + 1 < bn) {
                dense[i * bn + i + 1] = e[l + i];
                dense[(i + 1) * bn + i] = e[l + i];
            }
        }
        std::vector<cplx> block_eigs;
        try {
            block_eigs = eigen_hessenberg(std::move(dense), bn);
        } catch (const NumericalFailure& err) {
            throw NumericalFailure(std::string("eigen_complex_tridiagonal: ") + err.what(), l + err.block_index());
        }
        for (std::size_t i = 0; i < bn; ++i) {
            d[l + i] = block_eigs[i];
            e[l + i] = 0.0;
        }
    }
    std::sort(d.begin(), d.end(), by_real_then_imag);
    return d;
}

std::vector<cplx> eigen_complex_tridiagonal(const TridiagonalOperator& op) {
    const std::vector<cplx> off(op.size() > 0 ? op.size() - 1 : 0, cplx(op.off_diagonal));
    return eigen_complex_tridiagonal(op.diagonal, off);
}

}  // namespace potalg
