#ifndef ALTAPPROX_OPERATORS_HPP
#define ALTAPPROX_OPERATORS_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "altapprox/a_system.hpp"
#include "altapprox/quadrature.hpp"
#include "altapprox/rational_poly.hpp"

namespace altapprox {

/// An approximable function: evaluator, optional derivative, endpoint
/// values. f0(x) = f(x) - f(0) is the part all operators expand.
struct FuncSpec {
    std::function<double(double)> eval;
    std::function<double(double)> deriv;  // may be empty
    double f_at_0 = 0.0;
    double f_at_1 = 0.0;
    bool deriv_endpoint_singular = false;

    double f0(double x) const { return eval(x) - f_at_0; }
    double f0_at_1() const { return f_at_1 - f_at_0; }
    bool has_deriv() const { return static_cast<bool>(deriv); }

    static FuncSpec from_callable(std::function<double(double)> f,
                                  std::function<double(double)> df = nullptr) {
        FuncSpec s;
        s.eval = std::move(f);
        s.deriv = std::move(df);
        s.f_at_0 = s.eval(0.0);
        s.f_at_1 = s.eval(1.0);
        return s;
    }
};

enum class BasisTag { a_with_constant, b_with_constant, structured };
enum class Provenance { spectral, weak, projection, discrete_w, discrete_what };

inline std::string to_string(BasisTag b) {
    switch (b) {
        case BasisTag::a_with_constant: return "A_with_constant";
        case BasisTag::b_with_constant: return "B_with_constant";
        case BasisTag::structured: return "structured";
    }
    return "?";
}

inline std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::spectral: return "spectral";
        case Provenance::weak: return "weak";
        case Provenance::projection: return "projection";
        case Provenance::discrete_w: return "discrete_w";
        case Provenance::discrete_what: return "discrete_what";
    }
    return "?";
}

/// Approximation result. In the A basis the value is
///   constant + sum_k coeffs[k-1] A_nk(x);
/// in the B basis
///   constant + 2 sum_k coeffs[k-1] B_nk(x).
struct Expansion {
    int n = 0;
    double constant = 0.0;
    std::vector<double> coeffs;  // coeffs[k-1] pairs with index k
    BasisTag basis = BasisTag::a_with_constant;
    Provenance provenance = Provenance::weak;
    std::string note;  // e.g. parity adjustment record
};

/// Monomial coefficients (double) of the expansion polynomial.
inline std::vector<double> expansion_monomials(const Expansion& e, const ASystem& sys) {
    if (e.n != sys.n) throw std::invalid_argument("expansion_monomials: order mismatch");
    std::vector<double> m(static_cast<std::size_t>(sys.n) + 1, 0.0);
    m[0] = e.constant;
    const double scale = e.basis == BasisTag::b_with_constant ? 2.0 : 1.0;
    const BSystem bsys = e.basis == BasisTag::b_with_constant ? build_b_system(sys) : BSystem{};
    for (int k = 1; k <= sys.n; ++k) {
        const RationalPoly& p =
            e.basis == BasisTag::b_with_constant ? bsys.polys[k] : sys.polys[k];
        const std::vector<double> pc = p.double_coeffs();
        for (std::size_t i = 0; i < pc.size(); ++i)
            m[i] += scale * e.coeffs[k - 1] * pc[i];
    }
    return m;
}

inline double eval_monomials(const std::vector<double>& m, double x) {
    double acc = 0.0;
    for (std::size_t i = m.size(); i-- > 0;) acc = acc * x + m[i];
    return acc;
}

inline double eval_expansion(const Expansion& e, const ASystem& sys, double x) {
    return eval_monomials(expansion_monomials(e, sys), x);
}

/// Lower triangular map between A- and B-coefficients:
/// 0 above the diagonal, 1/2 on it, (-1)^{l-k} below.
struct TriangularT {
    int n = 0;
    std::vector<std::vector<Rational>> entries;  // entries[l-1][k-1]
};

inline TriangularT t_matrix(int n) {
    if (n < 1) throw std::invalid_argument("t_matrix: n must be >= 1");
    TriangularT t;
    t.n = n;
    t.entries.assign(n, std::vector<Rational>(n, 0));
    for (int l = 1; l <= n; ++l)
        for (int k = 1; k <= l; ++k)
            t.entries[l - 1][k - 1] =
                (l == k) ? Rational(1, 2) : Rational(((l - k) % 2 == 0) ? 1 : -1);
    return t;
}

/// Coefficient transformation matrix of the weak form:
/// -1 on odd diagonal entries, 3 on even, (-1)^l * 2 off the diagonal.
struct MatrixS {
    int n = 0;
    std::vector<std::vector<int>> entries;  // entries[k-1][l-1]
};

inline MatrixS s_matrix(int n) {
    if (n < 1) throw std::invalid_argument("s_matrix: n must be >= 1");
    MatrixS s;
    s.n = n;
    s.entries.assign(n, std::vector<int>(n, 0));
    for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l)
            s.entries[k - 1][l - 1] =
                (k == l) ? (k % 2 == 1 ? -1 : 3) : (l % 2 == 0 ? 2 : -2);
    return s;
}

/// b_nl = ∫₀¹ f0'(t) A_nl(t) dt, l = 1..n.
inline std::vector<double> b_coeffs_direct(const FuncSpec& f, const ASystem& sys,
                                           double tol = -1.0) {
    if (!f.has_deriv())
        throw std::invalid_argument("b_coeffs_direct: FuncSpec has no derivative");
    if (tol <= 0) tol = f.deriv_endpoint_singular ? 1e-8 : default_quad_tol();
    std::vector<double> b(sys.n);
    for (int l = 1; l <= sys.n; ++l)
        b[l - 1] = integrate_weighted(f.deriv, sys.polys[l], WeightMode::against_p, tol);
    return b;
}

/// c_nk = 2k ∫₀¹ (1/t) f0(t) A_nk(t) dt, k = 1..n.
inline std::vector<double> c_coeffs(const FuncSpec& f, const ASystem& sys,
                                    double tol = default_quad_tol()) {
    std::vector<double> c(sys.n);
    auto f0 = [&f](double t) { return f.f0(t); };
    for (int k = 1; k <= sys.n; ++k)
        c[k - 1] = 2.0 * k *
                   integrate_weighted(f0, sys.polys[k], WeightMode::against_p_over_x, tol);
    return c;
}

/// Integration-by-parts route to the b-coefficients:
/// b_nk = (-1)^{n-k} f0(1) - c_nk/2 - sum_{l>k} (-1)^{l-k} c_nl.
inline std::vector<double> b_from_c(const std::vector<double>& c, double f0_at_1, int n) {
    if (static_cast<int>(c.size()) != n)
        throw std::invalid_argument("b_from_c: coefficient count != n");
    std::vector<double> b(n);
    for (int k = 1; k <= n; ++k) {
        double v = ((n - k) % 2 == 0 ? 1.0 : -1.0) * f0_at_1 - 0.5 * c[k - 1];
        for (int l = k + 1; l <= n; ++l)
            v -= ((l - k) % 2 == 0 ? 1.0 : -1.0) * c[l - 1];
        b[k - 1] = v;
    }
    return b;
}

/// Weighted-L2 projection of f0 onto the A system (plus the f(0) term).
inline Expansion omega_hat(const FuncSpec& f, const ASystem& sys,
                           double tol = default_quad_tol()) {
    Expansion e;
    e.n = sys.n;
    e.constant = f.f_at_0;
    e.coeffs = c_coeffs(f, sys, tol);
    e.basis = BasisTag::a_with_constant;
    e.provenance = Provenance::projection;
    return e;
}

inline std::vector<double> weak_a_from_c(const std::vector<double>& c, double f0_at_1,
                                         int n) {
    const MatrixS s = s_matrix(n);
    const double boundary = (n % 2 == 1 ? 1.0 : -1.0) * 2.0 * f0_at_1;
    std::vector<double> a(n);
    for (int k = 1; k <= n; ++k) {
        double v = boundary;
        for (int l = 1; l <= n; ++l) v += s.entries[k - 1][l - 1] * c[l - 1];
        a[k - 1] = v;
    }
    return a;
}

/// Shape preserving operator in the weak form: needs only values of f.
inline Expansion omega_weak(const FuncSpec& f, const ASystem& sys,
                            double tol = default_quad_tol()) {
    Expansion e;
    e.n = sys.n;
    e.constant = f.f_at_0;
    e.coeffs = weak_a_from_c(c_coeffs(f, sys, tol), f.f0_at_1(), sys.n);
    e.basis = BasisTag::a_with_constant;
    e.provenance = Provenance::weak;
    return e;
}

/// Spectral form: coefficients b in the co-basis B. When use_b_from_c is
/// set (or f has no derivative) the weak c-path supplies b.
inline Expansion omega_spectral(const FuncSpec& f, const ASystem& sys,
                                bool use_b_from_c = false, double tol = -1.0) {
    Expansion e;
    e.n = sys.n;
    e.constant = f.f_at_0;
    if (use_b_from_c || !f.has_deriv()) {
        if (tol <= 0) tol = default_quad_tol();
        e.coeffs = b_from_c(c_coeffs(f, sys, tol), f.f0_at_1(), sys.n);
    } else {
        e.coeffs = b_coeffs_direct(f, sys, tol);
    }
    e.basis = BasisTag::b_with_constant;
    e.provenance = Provenance::spectral;
    return e;
}

/// Solve T a = b by forward substitution (T is lower triangular with 1/2
/// on the diagonal); returns the A-basis coefficients of the same
/// polynomial the B-form expansion represents.
inline std::vector<double> a_from_b_via_t(const std::vector<double>& b, int n) {
    const TriangularT t = t_matrix(n);
    std::vector<double> a(n);
    for (int l = 1; l <= n; ++l) {
        double v = b[l - 1];
        for (int k = 1; k < l; ++k)
            v -= static_cast<double>(t.entries[l - 1][k - 1]) * a[k - 1];
        a[l - 1] = v / static_cast<double>(t.entries[l - 1][l - 1]);
    }
    return a;
}

/// Exact derivative polynomial of the expansion, as an evaluator.
/// For the B basis uses B_nk' = k A_nk / x.
inline std::function<double(double)> derivative_of(const Expansion& e,
                                                   const ASystem& sys) {
    std::vector<double> m = expansion_monomials(e, sys);
    std::vector<double> dm(m.size() > 1 ? m.size() - 1 : 1, 0.0);
    for (std::size_t i = 1; i < m.size(); ++i) dm[i - 1] = i * m[i];
    return [dm](double x) { return eval_monomials(dm, x); };
}

/// Discrete projection coefficients
/// d_nk = 2k sum_j (w_j/x_j) f0(x_j) A_nk(x_j).
inline std::vector<double> d_coeffs(const std::vector<double>& f0_samples,
                                    const QuadratureRule& rule, const ASystem& sys) {
    if (rule.n != sys.n) throw std::invalid_argument("d_coeffs: order mismatch");
    if (static_cast<int>(f0_samples.size()) != rule.n)
        throw std::invalid_argument("d_coeffs: sample count != number of nodes");
    std::vector<double> d(sys.n);
    for (int k = 1; k <= sys.n; ++k) {
        double s = 0.0;
        for (int j = 0; j < rule.n; ++j)
            s += rule.weights[j] / rule.nodes[j] * f0_samples[j] *
                 sys.polys[k].eval(rule.nodes[j]);
        d[k - 1] = 2.0 * k * s;
    }
    return d;
}

inline std::vector<double> f0_at_nodes(const FuncSpec& f, const QuadratureRule& rule) {
    std::vector<double> s(rule.nodes.size());
    for (std::size_t j = 0; j < s.size(); ++j) s[j] = f.f0(rule.nodes[j]);
    return s;
}

/// Interpolating operator: matches f at x = 0 and at the n Gauss nodes.
inline Expansion w_hat(const FuncSpec& f, const ASystem& sys, const QuadratureRule& rule) {
    Expansion e;
    e.n = sys.n;
    e.constant = f.f_at_0;
    e.coeffs = d_coeffs(f0_at_nodes(f, rule), rule, sys);
    e.basis = BasisTag::a_with_constant;
    e.provenance = Provenance::discrete_what;
    return e;
}

/// Discrete shape preserving operator: the weak form with all integrals
/// replaced by the n-point Gauss sums.
inline Expansion w_discrete(const FuncSpec& f, const ASystem& sys,
                            const QuadratureRule& rule) {
    const std::vector<double> samples = f0_at_nodes(f, rule);
    const MatrixS s = s_matrix(sys.n);
    const double f01 = f.f0_at_1();
    // inner[l-1] = l * sum_j (w_j/x_j) f0(x_j) A_nl(x_j)
    std::vector<double> inner(sys.n);
    for (int l = 1; l <= sys.n; ++l) {
        double acc = 0.0;
        for (int j = 0; j < rule.n; ++j)
            acc += rule.weights[j] / rule.nodes[j] * samples[j] *
                   sys.polys[l].eval(rule.nodes[j]);
        inner[l - 1] = l * acc;
    }
    Expansion e;
    e.n = sys.n;
    e.constant = f.f_at_0;
    e.coeffs.resize(sys.n);
    for (int k = 1; k <= sys.n; ++k) {
        double v = (sys.n % 2 == 1 ? 1.0 : -1.0) * f01;
        for (int l = 1; l <= sys.n; ++l) v += s.entries[k - 1][l - 1] * inner[l - 1];
        e.coeffs[k - 1] = 2.0 * v;
    }
    e.basis = BasisTag::a_with_constant;
    e.provenance = Provenance::discrete_w;
    return e;
}

/// Cardinal-like pseudo-basis P_n0..P_{n,n+1} of the discrete operator,
/// in monomial double coefficients. Unstable for larger n, hence the
/// hard guard.
inline std::vector<std::vector<double>> pseudo_basis(const ASystem& sys,
                                                     const QuadratureRule& rule) {
    if (sys.n > 12)
        throw std::invalid_argument(
            "pseudo_basis: n > 12 rejected; the pseudo-basis representation is "
            "numerically unstable for larger n, use the direct discrete operator");
    if (rule.n != sys.n) throw std::invalid_argument("pseudo_basis: order mismatch");
    const int n = sys.n;
    const MatrixS s = s_matrix(n);
    std::vector<std::vector<double>> basis(n + 2, std::vector<double>(n + 1, 0.0));
    basis[0][0] = 1.0;  // P_n0 = 1
    std::vector<std::vector<double>> ac(n + 1);
    for (int k = 1; k <= n; ++k) {
        ac[k] = sys.polys[k].double_coeffs();
        ac[k].resize(n + 1, 0.0);
    }
    for (int j = 1; j <= n; ++j) {
        const double xj = rule.nodes[j - 1];
        const double scale = 2.0 * rule.weights[j - 1] / xj;
        for (int k = 1; k <= n; ++k) {
            double inner = 0.0;
            for (int l = 1; l <= n; ++l)
                inner += s.entries[k - 1][l - 1] * l * sys.polys[l].eval(xj);
            for (int i = 0; i <= n; ++i) basis[j][i] += scale * ac[k][i] * inner;
        }
    }
    const double sign = (n % 2 == 1) ? 2.0 : -2.0;
    for (int k = 1; k <= n; ++k)
        for (int i = 0; i <= n; ++i) basis[n + 1][i] += sign * ac[k][i];
    return basis;
}

/// Discrete operator assembled through the pseudo-basis; agrees with
/// w_discrete for moderate n.
inline Expansion w_via_pseudo(const FuncSpec& f, const ASystem& sys,
                              const QuadratureRule& rule) {
    const std::vector<std::vector<double>> basis = pseudo_basis(sys, rule);
    const int n = sys.n;
    std::vector<double> m(n + 1, 0.0);
    for (int i = 0; i <= n; ++i) m[i] += f.f_at_0 * basis[0][i];
    for (int j = 1; j <= n; ++j) {
        const double v = f.f0(rule.nodes[j - 1]);
        for (int i = 0; i <= n; ++i) m[i] += v * basis[j][i];
    }
    const double f01 = f.f0_at_1();
    for (int i = 0; i <= n; ++i) m[i] += f01 * basis[n + 1][i];
    // express in the A basis so the result is a regular Expansion:
    // monomials -> (constant, a-coefficients) by triangular solve on the
    // A polynomials (A_nk has full degree n, so solve least-squares-free
    // via the values route instead: match at 0 and n Chebyshev points).
    Expansion e;
    e.n = n;
    e.constant = m[0];  // all A_nk vanish at 0
    // Solve sum_k a_k A_nk = m - m[0] by sampling at the Gauss nodes and
    // using discrete orthogonality: a_k = 2k sum_j (w_j/x_j) g(x_j) A_nk(x_j)
    // is exact for polynomials of degree <= n vanishing at 0.
    std::vector<double> g(n);
    for (int j = 0; j < n; ++j) g[j] = eval_monomials(m, rule.nodes[j]) - m[0];
    e.coeffs = d_coeffs(g, rule, sys);
    e.basis = BasisTag::a_with_constant;
    e.provenance = Provenance::discrete_w;
    e.note = "pseudo-basis route";
    return e;
}

enum class Parity { even, odd, asymmetric, unknown };

/// Degree selection rule: pick n of parity opposite to f0's, otherwise
/// keep the requested n.
inline int parity_select_n(Parity f_parity, int n_requested) {
    if (n_requested < 1) throw std::invalid_argument("parity_select_n: n must be >= 1");
    const bool n_even = n_requested % 2 == 0;
    if (f_parity == Parity::even && n_even) return n_requested + 1;
    if (f_parity == Parity::odd && !n_even) return n_requested + 1;
    return n_requested;
}

/// Classify f0 as even/odd about x = 1/2 by sampling 33 points.
inline Parity detect_parity(const FuncSpec& f, double tol = 1e-9) {
    double scale = 0.0, even_err = 0.0, odd_err = 0.0;
    for (int i = 0; i <= 32; ++i) {
        const double x = i / 32.0;
        const double a = f.f0(x), b = f.f0(1.0 - x);
        scale = std::max(scale, std::abs(a));
        even_err = std::max(even_err, std::abs(a - b));
        odd_err = std::max(odd_err, std::abs(a + b));
    }
    const double bound = tol * std::max(1.0, scale);
    if (even_err <= bound) return Parity::even;
    if (odd_err <= bound) return Parity::odd;
    return Parity::asymmetric;
}

}  // namespace altapprox

#endif
