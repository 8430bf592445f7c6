#ifndef ALTAPPROX_RATIONAL_POLY_HPP
#define ALTAPPROX_RATIONAL_POLY_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace altapprox {

using Rational = boost::multiprecision::cpp_rational;

/// Dense univariate polynomial with exact rational coefficients in the
/// monomial basis. coeffs()[i] multiplies x^i. The zero polynomial is
/// stored as an empty coefficient vector and reports degree 0.
class RationalPoly {
public:
    RationalPoly() = default;

    explicit RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
        trim();
    }

    static RationalPoly zero() { return RationalPoly{}; }

    static RationalPoly constant(Rational v) {
        return RationalPoly{{std::move(v)}};
    }

    // c * x^d
    static RationalPoly monomial(std::size_t d, Rational c = 1) {
        if (c == 0) return zero();
        std::vector<Rational> v(d + 1);
        v[d] = std::move(c);
        return RationalPoly{std::move(v)};
    }

    bool is_zero() const { return c_.empty(); }

    std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }

    const std::vector<Rational>& coeffs() const { return c_; }

    Rational coeff(std::size_t i) const {
        return i < c_.size() ? c_[i] : Rational(0);
    }

    friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
        return a.c_ == b.c_;
    }

    friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return RationalPoly{std::move(r)};
    }

    friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
        return RationalPoly{std::move(r)};
    }

    RationalPoly operator-() const {
        std::vector<Rational> r(c_);
        for (auto& v : r) v = -v;
        return RationalPoly{std::move(r)};
    }

    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        return RationalPoly{std::move(r)};
    }

    friend RationalPoly operator*(const Rational& s, const RationalPoly& p) {
        if (s == 0) return zero();
        std::vector<Rational> r(p.c_);
        for (auto& v : r) v *= s;
        return RationalPoly{std::move(r)};
    }

    friend RationalPoly operator*(const RationalPoly& p, const Rational& s) {
        return s * p;
    }

    friend RationalPoly operator/(const RationalPoly& p, const Rational& s) {
        if (s == 0) throw std::invalid_argument("RationalPoly: division by zero scalar");
        std::vector<Rational> r(p.c_);
        for (auto& v : r) v /= s;
        return RationalPoly{std::move(r)};
    }

    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    double eval(double x) const {
        double acc = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * x + static_cast<double>(c_[i]);
        return acc;
    }

    /// Evaluation with no monomial-basis rounding: x is lifted to an
    /// exact rational, the polynomial is evaluated exactly, and only the
    /// result is rounded. Slow; for high-accuracy checks at large degree.
    double eval_precise(double x) const {
        return static_cast<double>(eval(Rational(x)));
    }

    std::vector<double> double_coeffs() const {
        std::vector<double> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = static_cast<double>(c_[i]);
        return r;
    }

    RationalPoly derivative() const {
        if (c_.size() <= 1) return zero();
        std::vector<Rational> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = Rational(i) * c_[i];
        return RationalPoly{std::move(r)};
    }

    /// Exact division by x. Throws if the constant term is nonzero.
    RationalPoly shift_down() const {
        if (is_zero()) return zero();
        if (c_[0] != 0)
            throw std::logic_error("RationalPoly: not divisible by x (nonzero constant term)");
        return RationalPoly{std::vector<Rational>(c_.begin() + 1, c_.end())};
    }

    /// Exact integral over [0,1].
    Rational integral01() const {
        Rational acc = 0;
        for (std::size_t i = 0; i < c_.size(); ++i) acc += c_[i] / Rational(i + 1);
        return acc;
    }

    /// Exact quotient; throws if division leaves a remainder.
    RationalPoly divexact(const RationalPoly& d) const {
        if (d.is_zero()) throw std::invalid_argument("RationalPoly: division by zero polynomial");
        if (is_zero()) return zero();
        if (degree() < d.degree())
            throw std::logic_error("RationalPoly: inexact division (degree too small)");
        std::vector<Rational> rem(c_);
        std::vector<Rational> q(degree() - d.degree() + 1);
        const Rational lead = d.c_.back();
        for (std::size_t i = q.size(); i-- > 0;) {
            Rational f = rem[i + d.degree()] / lead;
            q[i] = f;
            if (f != 0)
                for (std::size_t j = 0; j < d.c_.size(); ++j)
                    rem[i + j] -= f * d.c_[j];
        }
        for (const auto& v : rem)
            if (v != 0) throw std::logic_error("RationalPoly: inexact division (remainder)");
        return RationalPoly{std::move(q)};
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += c_[i].str();
            if (i > 0) s += "*x^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Exact weighted inner product  ∫₀¹ (1/x) p q dx.
/// The product p*q must vanish at x = 0.
inline Rational weighted_inner(const RationalPoly& p, const RationalPoly& q) {
    const RationalPoly pq = p * q;
    if (pq.is_zero()) return 0;
    if (pq.coeff(0) != 0)
        throw std::logic_error("weighted_inner: integrand (1/x)pq is not integrable");
    Rational acc = 0;
    for (std::size_t i = 1; i <= pq.degree(); ++i)
        acc += pq.coeff(i) / Rational(i);
    return acc;
}

}  // namespace altapprox

#endif
