#ifndef ALTAPPROX_STRUCTURED_HPP
#define ALTAPPROX_STRUCTURED_HPP

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "altapprox/operators.hpp"
#include "altapprox/quadrature.hpp"
#include "altapprox/rational_poly.hpp"

namespace altapprox {

/// pi_k = x^{k - floor(k/2)} (1-x)^{floor(k/2)}, k = 0..n.
inline std::vector<RationalPoly> pi_seq(int n) {
    if (n < 1) throw std::invalid_argument("pi_seq: n must be >= 1");
    const RationalPoly x = RationalPoly::monomial(1);
    const RationalPoly one_minus_x =
        RationalPoly::constant(1) - RationalPoly::monomial(1);
    std::vector<RationalPoly> pis(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        RationalPoly p = RationalPoly::constant(1);
        const int right = k / 2;
        const int left = k - right;
        for (int i = 0; i < left; ++i) p = p * x;
        for (int i = 0; i < right; ++i) p = p * one_minus_x;
        pis[k] = std::move(p);
    }
    return pis;
}

/// Structured orthogonal polynomials: inverse-order Gram-Schmidt on the
/// pi-sequence with weight 1/x. raw[k] is un-normalized; norm_sq[k] is
/// its exact squared weighted norm for k >= 1 (k = 0 has none).
struct StructuredSystem {
    int n = 0;
    std::vector<RationalPoly> raw;
    std::vector<Rational> norm_sq;  // norm_sq[0] unused

    /// Normalized member as a double-coefficient evaluator, k >= 1.
    double eval_normalized(int k, double x) const {
        if (k < 1 || k > n)
            throw std::invalid_argument("StructuredSystem: k must be in [1, n]");
        return raw[k].eval(x) /
               std::sqrt(static_cast<double>(norm_sq[k]));
    }
};

inline StructuredSystem build_structured(int n) {
    if (n < 1 || n > 32)
        throw std::invalid_argument("build_structured: n must be in [1, 32]");
    const std::vector<RationalPoly> pis = pi_seq(n);
    StructuredSystem sys;
    sys.n = n;
    sys.raw.resize(static_cast<std::size_t>(n) + 1);
    sys.norm_sq.assign(static_cast<std::size_t>(n) + 1, Rational(0));
    for (int k = n; k >= 0; --k) {
        RationalPoly r = pis[k];
        for (int l = k + 1; l <= n; ++l) {
            const Rational proj = weighted_inner(pis[k], sys.raw[l]) / sys.norm_sq[l];
            r = r - proj * sys.raw[l];
        }
        sys.raw[k] = r;
        if (k >= 1) {
            sys.norm_sq[k] = weighted_inner(r, r);
            if (sys.norm_sq[k] <= 0)
                throw std::logic_error("build_structured: non-positive squared norm");
        }
    }
    return sys;
}

/// Rodrigues-type construction (un-normalized):
/// [pi_k / (x^k (1-x)^k)] d^{n-k}/dx^{n-k} [x^n (1-x)^n].
/// The prefactor reduces to exact division by x^{floor(k/2)} (1-x)^{ceil(k/2)}.
inline RationalPoly rodrigues(int n, int k) {
    if (n < 1 || n > 32 || k < 0 || k > n)
        throw std::invalid_argument("rodrigues: need 0 <= k <= n <= 32");
    const RationalPoly x = RationalPoly::monomial(1);
    const RationalPoly one_minus_x =
        RationalPoly::constant(1) - RationalPoly::monomial(1);
    RationalPoly w = RationalPoly::constant(1);
    for (int i = 0; i < n; ++i) w = w * x * one_minus_x;
    for (int i = 0; i < n - k; ++i) w = w.derivative();
    RationalPoly div = RationalPoly::constant(1);
    for (int i = 0; i < k / 2; ++i) div = div * x;
    for (int i = 0; i < k - k / 2; ++i) div = div * one_minus_x;
    return w.divexact(div);
}

/// Exact ratio q with rodrigues(n,k) = q * raw_k, if proportional.
inline Rational rodrigues_scale(const StructuredSystem& sys, int n, int k) {
    const RationalPoly r = rodrigues(n, k);
    const RationalPoly& g = sys.raw[k];
    if (r.degree() != g.degree())
        throw std::logic_error("rodrigues_scale: degree mismatch");
    const Rational q = r.coeff(r.degree()) / g.coeff(g.degree());
    if (!(r == q * g)) throw std::logic_error("rodrigues_scale: not proportional");
    return q;
}

namespace detail {

// Isolated real roots of p in (0,1) by sign scan plus bisection/Newton.
inline std::vector<double> interior_roots(const RationalPoly& p, int expected) {
    const std::vector<double> c = p.double_coeffs();
    auto f = [&c](double x) { return eval_monomials(c, x); };
    std::vector<double> dc(c.size() > 1 ? c.size() - 1 : 1, 0.0);
    for (std::size_t i = 1; i < c.size(); ++i) dc[i - 1] = i * c[i];
    auto df = [&dc](double x) { return eval_monomials(dc, x); };

    const int grid = 4096;
    std::vector<double> roots;
    double prev_x = 0.5 / grid, prev_f = f(prev_x);
    for (int i = 2; i < 2 * grid; ++i) {
        const double xi = 0.5 * i / grid;
        const double fi = f(xi);
        if (prev_f == 0.0) roots.push_back(prev_x);
        if (prev_f * fi < 0.0) {
            double lo = prev_x, hi = xi;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                (fm * f(lo) < 0.0 ? hi : lo) = mid;
                if (hi - lo < 1e-16) break;
            }
            double r = 0.5 * (lo + hi);
            // Newton with exact rational evaluation: the double Horner
            // residual is noise-dominated this close to the root.
            const RationalPoly dp = p.derivative();
            for (int it = 0; it < 6; ++it) {
                const Rational d = dp.eval(Rational(r));
                if (d == 0) break;
                const double step = static_cast<double>(p.eval(Rational(r)) / d);
                const double next = r - step;
                if (next <= 0.0 || next >= 1.0) break;
                r = next;
                if (std::abs(step) < 1e-16) break;
            }
            roots.push_back(r);
        }
        prev_x = xi;
        prev_f = fi;
    }
    if (static_cast<int>(roots.size()) != expected)
        throw std::runtime_error("interior_roots: unexpected root count");
    return roots;
}

}  // namespace detail

/// Zeros of S_n1 inside (0,1): the interior shifted Lobatto abscissas.
inline std::vector<double> lobatto_from_s1(const StructuredSystem& sys) {
    if (sys.n < 2) throw std::invalid_argument("lobatto_from_s1: n must be >= 2");
    // S_n1 has a simple zero at x = 0; factor it out before scanning.
    return detail::interior_roots(sys.raw[1].shift_down(), sys.n - 1);
}

/// Lambda_nk: the normalized S_nk on (0,1), zero elsewhere. Compactly
/// supported; requires k > 1.
inline double lambda_eval(const StructuredSystem& sys, int k, double x) {
    if (k <= 1 || k > sys.n)
        throw std::invalid_argument("lambda_eval: k must be in (1, n]");
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return sys.eval_normalized(k, x);
}

/// ∫_R Lambda_nk dx, evaluated as the exact rational ∫₀¹ raw_k dx scaled
/// by the float normalization.
inline double lambda_moment(const StructuredSystem& sys, int k) {
    if (k <= 1 || k > sys.n)
        throw std::invalid_argument("lambda_moment: k must be in (1, n]");
    const Rational m = sys.raw[k].integral01();
    return static_cast<double>(m) / std::sqrt(static_cast<double>(sys.norm_sq[k]));
}

/// Exact test for S_nk(x) = -S_nk(1-x); double evaluation is unreliable
/// here (the monomial coefficients cancel heavily at larger n).
inline bool is_antisymmetric(const StructuredSystem& sys, int k) {
    const RationalPoly& p = sys.raw[k];
    const RationalPoly lin{{Rational(1), Rational(-1)}};  // 1 - x
    RationalPoly flipped = RationalPoly::zero();
    RationalPoly pw = RationalPoly::constant(1);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        flipped = flipped + p.coeff(i) * pw;
        pw = pw * lin;
    }
    return (p + flipped).is_zero();
}

/// Members of {S_nk, k = 2..n} antisymmetric about x = 1/2; these are the
/// mother-wavelet generators (k even for odd n, k odd for even n).
inline std::vector<std::pair<int, int>> wavelet_subset(const StructuredSystem& sys) {
    if (sys.n < 3) throw std::invalid_argument("wavelet_subset: n must be >= 3");
    std::vector<std::pair<int, int>> out;
    for (int k = 2; k <= sys.n; ++k)
        if (is_antisymmetric(sys, k)) out.emplace_back(sys.n, k);
    return out;
}

/// Weighted-L2 projection of f0 onto {S_nk, k >= 1}; the structured
/// analog of the projection operator on the A system.
inline Expansion structured_project(const FuncSpec& f, const StructuredSystem& sys,
                                    double tol = default_quad_tol()) {
    Expansion e;
    e.n = sys.n;
    e.constant = f.f_at_0;
    e.coeffs.resize(sys.n);
    auto f0 = [&f](double t) { return f.f0(t); };
    for (int k = 1; k <= sys.n; ++k) {
        const double raw = integrate_weighted(f0, sys.raw[k],
                                              WeightMode::against_p_over_x, tol);
        e.coeffs[k - 1] = raw / std::sqrt(static_cast<double>(sys.norm_sq[k]));
    }
    e.basis = BasisTag::structured;
    e.provenance = Provenance::projection;
    return e;
}

/// Reference second-degree shape preserving fit of sin(pi x): monomial
/// coefficients of 60(12 - pi^2)/pi^3 * x(1 - x). It interpolates both
/// endpoints; structured_project does not derive it (its generating
/// algorithm is a different joint-approximation scheme).
inline std::vector<double> sin_reference_quadratic() {
    const double a = 60.0 * (12.0 - M_PI * M_PI) / (M_PI * M_PI * M_PI);
    return {0.0, a, -a};
}

inline double eval_structured(const Expansion& e, const StructuredSystem& sys, double x) {
    if (e.basis != BasisTag::structured || e.n != sys.n)
        throw std::invalid_argument("eval_structured: expansion/system mismatch");
    double acc = e.constant;
    for (int k = 1; k <= sys.n; ++k)
        acc += e.coeffs[k - 1] * sys.eval_normalized(k, x);
    return acc;
}

}  // namespace altapprox

#endif
