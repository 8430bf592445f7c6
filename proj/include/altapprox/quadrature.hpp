#ifndef ALTAPPROX_QUADRATURE_HPP
#define ALTAPPROX_QUADRATURE_HPP

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "altapprox/a_system.hpp"
#include "altapprox/rational_poly.hpp"

namespace altapprox {

/// Quadrature failed to reach the requested tolerance; carries the last
/// two refinement estimates for diagnosis.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double prev, double last)
        : std::runtime_error(what + " (last estimates " + fmt(prev) + ", " +
                             fmt(last) + ")"),
          previous_estimate(prev),
          last_estimate(last) {}

private:
    static std::string fmt(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

public:

    double previous_estimate;
    double last_estimate;
};

/// Shifted Legendre-Gauss rule on [0,1]: nodes are the roots of the
/// degree-n shifted Legendre polynomial, weights sum to 1.
struct QuadratureRule {
    int n = 0;
    std::vector<double> nodes;    // ascending, all in (0,1)
    std::vector<double> weights;  // positive
};

namespace detail {

// Legendre P_n(t) and P_n'(t) on [-1,1] by the standard recurrence.
inline std::pair<double, double> legendre_pair(int n, double t) {
    double p0 = 1.0, p1 = t;
    if (n == 0) return {1.0, 0.0};
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (t * p1 - p0) / (t * t - 1.0);
    return {p1, dp};
}

}  // namespace detail

inline QuadratureRule gauss_rule(int n) {
    if (n < 1 || n > 128) throw std::invalid_argument("gauss_rule: n must be in [1, 128]");
    QuadratureRule rule;
    rule.n = n;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    if (n == 1) {
        rule.nodes[0] = 0.5;
        rule.weights[0] = 1.0;
        return rule;
    }
    for (int i = 0; i < n; ++i) {
        // Chebyshev-angle seed, refined by Newton on P_n; the angle order
        // is chosen so nodes come out ascending on [0,1].
        double t = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p, dp;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            std::tie(p, dp) = detail::legendre_pair(n, t);
            const double step = p / dp;
            t -= step;
            if (std::abs(step) < 1e-15) {
                converged = true;
                break;
            }
        }
        if (!converged) throw QuadratureError("gauss_rule: Newton did not converge", t, t);
        std::tie(p, dp) = detail::legendre_pair(n, t);
        rule.nodes[i] = 0.5 * (1.0 + t);
        rule.weights[i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
    // enforce exact symmetry about 1/2
    for (int i = 0; i < n / 2; ++i) {
        const int j = n - 1 - i;
        const double lo = 0.5 * (rule.nodes[i] + (1.0 - rule.nodes[j]));
        rule.nodes[i] = lo;
        rule.nodes[j] = 1.0 - lo;
        const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.weights[i] = rule.weights[j] = w;
    }
    return rule;
}

/// Discrete Gram matrix sum_j (w_j/x_j) A_nk(x_j) A_nl(x_j), k,l = 1..n.
/// Matches the exact gram_matrix to quadrature accuracy.
inline std::vector<std::vector<double>> discrete_gram(const ASystem& sys,
                                                      const QuadratureRule& rule) {
    if (rule.n != sys.n) throw std::invalid_argument("discrete_gram: order mismatch");
    const int n = sys.n;
    std::vector<std::vector<double>> vals(n + 1, std::vector<double>(n));
    for (int k = 1; k <= n; ++k)
        for (int j = 0; j < n; ++j) vals[k][j] = sys.polys[k].eval_precise(rule.nodes[j]);
    std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
    for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
            double s = 0.0;
            for (int j = 0; j < n; ++j)
                s += rule.weights[j] / rule.nodes[j] * vals[k][j] * vals[l][j];
            g[k - 1][l - 1] = s;
        }
    return g;
}

namespace detail {

// 15-point Gauss-Legendre reference rule on [-1,1].
inline const std::vector<std::pair<double, double>>& gl15() {
    static const std::vector<std::pair<double, double>> rule = [] {
        QuadratureRule r = gauss_rule(15);
        std::vector<std::pair<double, double>> out(15);
        for (int i = 0; i < 15; ++i)
            out[i] = {2.0 * r.nodes[i] - 1.0, 2.0 * r.weights[i]};
        return out;
    }();
    return rule;
}

inline double gl15_on(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (const auto& [t, w] : gl15()) s += w * f(mid + half * t);
    return s * half;
}

struct AdaptiveState {
    long evals = 0;
    long budget = 0;
    double leaf_tol = 0.0;
};

inline constexpr int kMaxAdaptDepth = 96;

inline double adapt(const std::function<double(double)>& f, double a, double b,
                    double whole, int depth, AdaptiveState& st) {
    const double mid = 0.5 * (a + b);
    const double left = gl15_on(f, a, mid);
    const double right = gl15_on(f, mid, b);
    st.evals += 30;
    const double err = std::abs(left + right - whole);
    if (err < st.leaf_tol) return left + right;
    if (depth >= kMaxAdaptDepth)
        throw QuadratureError("integrate: refinement depth exhausted", whole,
                              left + right);
    if (st.evals > st.budget)
        throw QuadratureError("integrate: evaluation budget exhausted", whole,
                              left + right);
    return adapt(f, a, mid, left, depth + 1, st) +
           adapt(f, mid, b, right, depth + 1, st);
}

}  // namespace detail

/// Adaptive Gauss-Legendre integration of f over [a,b] to absolute
/// tolerance tol. Refinement bisects intervals whose two-half estimate
/// disagrees with the one-panel estimate; endpoint singularities are
/// handled by the grading this induces (nodes never touch a or b).
inline double integrate_adaptive(const std::function<double(double)>& f, double a,
                                 double b, double tol, long budget = 4'000'000) {
    detail::AdaptiveState st;
    st.budget = budget;
    // a fixed per-leaf tolerance well under the global target; refinement
    // produces few enough leaves that the accumulated error stays below tol
    st.leaf_tol = tol / 64.0;
    const double whole = detail::gl15_on(f, a, b);
    st.evals = 15;
    return detail::adapt(f, a, b, whole, 0, st);
}

inline double default_quad_tol() {
    if (const char* env = std::getenv("ALTAPPROX_QUAD_TOL")) {
        const double v = std::atof(env);
        if (v > 0) return v;
    }
    return 1e-11;
}

enum class WeightMode { against_p, against_p_over_x };

/// ∫₀¹ f(t) p(t) dt  or  ∫₀¹ f(t) [p/x](t) dt. In the over-x mode the
/// division is an exact coefficient shift and p must vanish at 0.
inline double integrate_weighted(const std::function<double(double)>& f,
                                 const RationalPoly& p, WeightMode mode,
                                 double tol = default_quad_tol()) {
    RationalPoly q = p;
    if (mode == WeightMode::against_p_over_x) {
        if (!p.is_zero() && p.coeff(0) != 0)
            throw std::invalid_argument("integrate_weighted: p is not divisible by x");
        q = p.is_zero() ? p : p.shift_down();
    }
    const std::vector<double> c = q.double_coeffs();
    auto integrand = [&f, &c](double t) {
        double acc = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
        return f(t) * acc;
    };
    return integrate_adaptive(integrand, 0.0, 1.0, tol);
}

}  // namespace altapprox

#endif
