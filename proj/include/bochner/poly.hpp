#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace bochner {

/** Dense real polynomial in one variable, coefficient c[k] on x^k. */
struct Poly {
    std::vector<double> c;

    Poly() = default;
    explicit Poly(std::vector<double> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly constant(double v) { return Poly({v}); }
    static Poly monomial(int k, double v = 1.0) {
        std::vector<double> coeffs(static_cast<std::size_t>(k) + 1, 0.0);
        coeffs.back() = v;
        return Poly(std::move(coeffs));
    }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool empty() const { return c.empty(); }

    void trim() {
        while (!c.empty() && c.back() == 0.0) c.pop_back();
    }

    double operator()(double x) const {
        double v = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
        return v;
    }

    std::complex<double> operator()(std::complex<double> x) const {
        std::complex<double> v = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
        return v;
    }

    Poly derivative() const {
        if (c.size() <= 1) return Poly();
        std::vector<double> d(c.size() - 1);
        for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<double> r(std::max(a.c.size(), b.c.size()), 0.0);
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return Poly(std::move(r));
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<double> r(std::max(a.c.size(), b.c.size()), 0.0);
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
        return Poly(std::move(r));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c.empty() || b.c.empty()) return Poly();
        std::vector<double> r(a.c.size() + b.c.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        return Poly(std::move(r));
    }

    friend Poly operator*(double s, const Poly& a) {
        std::vector<double> r = a.c;
        for (double& v : r) v *= s;
        return Poly(std::move(r));
    }

    /** Sum of coefficient magnitudes (bounds |p| on [-1, 1]). */
    double abs_coeff_sum() const {
        double s = 0.0;
        for (double v : c) s += std::abs(v);
        return s;
    }
};

}  // namespace bochner
