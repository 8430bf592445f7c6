#ifndef ALTAPPROX_A_SYSTEM_HPP
#define ALTAPPROX_A_SYSTEM_HPP

#include <stdexcept>
#include <vector>

#include "altapprox/rational_poly.hpp"

namespace altapprox {

inline constexpr int kMaxSystemOrder = 64;

/// The alternative orthogonal system {A_nk}, k = 0..n, for a fixed n.
/// All members have degree n; A_nk is divisible by x for k >= 1, and
/// the family is orthogonal with weight 1/x:  <A_nk, A_nl> = d_kl/(k+l).
struct ASystem {
    int n = 0;
    std::vector<RationalPoly> polys;  // polys[k] = A_nk

    const RationalPoly& at(int k) const {
        if (k < 0 || k > n) throw std::invalid_argument("ASystem: k out of range");
        return polys[static_cast<std::size_t>(k)];
    }
};

/// Integral co-basis {B_nk}: B_n0 = 1, B_nk = A_nk + 2*sum_{l>k} A_nl.
struct BSystem {
    int n = 0;
    std::vector<RationalPoly> polys;  // polys[k] = B_nk

    const RationalPoly& at(int k) const {
        if (k < 0 || k > n) throw std::invalid_argument("BSystem: k out of range");
        return polys[static_cast<std::size_t>(k)];
    }
};

/// Downward three-term recurrence, seeded at k = n and k = n-1.
/// Every step stays in exact rational arithmetic; the x^{-1} term is an
/// exact coefficient shift and must leave no remainder.
inline ASystem build_a_system(int n) {
    if (n < 1 || n > kMaxSystemOrder)
        throw std::invalid_argument("build_a_system: n must be in [1, 64]");
    std::vector<RationalPoly> a(static_cast<std::size_t>(n) + 1);
    a[n] = RationalPoly::monomial(n);
    a[n - 1] = RationalPoly::monomial(n - 1, Rational(2 * n - 1)) -
               RationalPoly::monomial(n, Rational(2 * n));
    for (int k = n - 1; k >= 1; --k) {
        const Rational lead = Rational(2 * k + 1) * (n + k) * (n - k + 1);
        const RationalPoly over_x = a[k].shift_down();
        RationalPoly rhs = Rational(2 * k) *
            (Rational((2 * k - 1) * (2 * k + 1)) * over_x -
             Rational(2) * Rational(n) * Rational(n) * a[k] -
             Rational(2 * (k * k + n)) * a[k]);
        rhs = rhs - Rational(2 * k - 1) * Rational(n - k) * Rational(n + k + 1) * a[k + 1];
        a[k - 1] = rhs / lead;
    }
    return ASystem{n, std::move(a)};
}

inline BSystem build_b_system(const ASystem& sys) {
    std::vector<RationalPoly> b(static_cast<std::size_t>(sys.n) + 1);
    RationalPoly tail;  // sum_{l > k} A_nl
    for (int k = sys.n; k >= 1; --k) {
        b[k] = sys.polys[k] + Rational(2) * tail;
        tail = tail + sys.polys[k];
    }
    b[0] = RationalPoly::constant(1);
    return BSystem{sys.n, std::move(b)};
}

/// Right side of the derivative identity
///   A_nk' = k A_nk/x + 2 sum_{l>k} (-1)^{l-k} l A_nl/x,   k >= 1.
inline RationalPoly a_derivative(const ASystem& sys, int k) {
    if (k < 1 || k > sys.n)
        throw std::invalid_argument("a_derivative: k must be in [1, n]");
    RationalPoly acc = Rational(k) * sys.polys[k].shift_down();
    for (int l = k + 1; l <= sys.n; ++l) {
        const int sign = ((l - k) % 2 == 0) ? 1 : -1;
        acc = acc + Rational(2 * sign * l) * sys.polys[l].shift_down();
    }
    return acc;
}

inline double a_eval(const ASystem& sys, int k, double x) {
    return sys.at(k).eval(x);
}

/// Exact Gram matrix under weight 1/x, indexed (k,l) with k,l = 1..n;
/// entry (k,l) lives at [k-1][l-1].
inline std::vector<std::vector<Rational>> gram_matrix(const ASystem& sys) {
    std::vector<std::vector<Rational>> g(sys.n, std::vector<Rational>(sys.n));
    for (int k = 1; k <= sys.n; ++k)
        for (int l = k; l <= sys.n; ++l) {
            g[k - 1][l - 1] = weighted_inner(sys.polys[k], sys.polys[l]);
            g[l - 1][k - 1] = g[k - 1][l - 1];
        }
    return g;
}

/// Entries ∫₀¹ A_nk B_nl' dx for k,l = 0..n. B_n0' = 0, so row/column 0
/// vanishes; for k,l >= 1 the exact value is d_kl/2.
inline std::vector<std::vector<Rational>> shifted_orthogonality_check(
    const ASystem& sysA, const BSystem& sysB) {
    if (sysA.n != sysB.n)
        throw std::invalid_argument("shifted_orthogonality_check: order mismatch");
    const int n = sysA.n;
    std::vector<std::vector<Rational>> m(n + 1, std::vector<Rational>(n + 1));
    for (int k = 0; k <= n; ++k)
        for (int l = 0; l <= n; ++l) {
            const RationalPoly prod = sysA.polys[k] * sysB.polys[l].derivative();
            m[k][l] = prod.integral01();
        }
    return m;
}

}  // namespace altapprox

#endif
