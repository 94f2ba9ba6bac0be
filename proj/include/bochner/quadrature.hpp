#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "bochner/errors.hpp"

namespace bochner {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

namespace quad {

/** Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1]. */
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/** Builds the n-point rule by Newton iteration on the Legendre polynomial. */
inline Rule gauss_legendre(int n) {
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // evaluate P_n and P_n' by the three-term recurrence
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

inline const Rule& gl15() {
    static const Rule rule = gauss_legendre(15);
    return rule;
}

template <typename V, typename F>
V apply_rule(F&& f, double a, double b, const Rule& rule) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    V acc{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

struct Options {
    double abs_tol = 1e-10;
    int max_depth = 52;
    std::size_t max_panels = 400000;
};

/**
 * Adaptive Gauss-Legendre integration over a union of panels split at the
 * given breakpoints. A panel is accepted when the 15-point value and the sum
 * over its two halves agree within the panel's share of the budget; the sum
 * of accepted halves is returned. Throws NonConvergent when the panel budget
 * or depth limit is exhausted.
 */
template <typename V, typename F>
V integrate_breakpoints(F&& f, std::span<const double> pts, const Options& opt = {}) {
    struct Panel {
        double a, b;
        V coarse;
        int depth;
    };
    if (pts.size() < 2) return V{};
    const double total = pts.back() - pts.front();
    const Rule& rule = gl15();

    std::vector<Panel> stack;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1] <= pts[i]) continue;
        stack.push_back({pts[i], pts[i + 1], apply_rule<V>(f, pts[i], pts[i + 1], rule), 0});
    }
    V result{};
    std::size_t panels = 0;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        if (++panels > opt.max_panels)
            throw NonConvergent("adaptive quadrature: panel budget exhausted");
        const double mid = 0.5 * (p.a + p.b);
        V left = apply_rule<V>(f, p.a, mid, rule);
        V right = apply_rule<V>(f, mid, p.b, rule);
        V fine = left + right;
        const double err = std::abs(fine - p.coarse);
        const double budget = opt.abs_tol * std::max((p.b - p.a) / total, 1e-300);
        if (err <= budget || (p.b - p.a) < 1e-300) {
            result += fine;
        } else {
            if (p.depth >= opt.max_depth)
                throw NonConvergent("adaptive quadrature: depth limit reached");
            stack.push_back({p.a, mid, left, p.depth + 1});
            stack.push_back({mid, p.b, right, p.depth + 1});
        }
    }
    return result;
}

template <typename V, typename F>
V integrate(F&& f, double a, double b, const Options& opt = {}) {
    const double pts[2] = {a, b};
    return integrate_breakpoints<V>(std::forward<F>(f), std::span<const double>(pts, 2), opt);
}

template <typename F>
double integrate_real(F&& f, double a, double b, const Options& opt = {}) {
    return integrate<double>(std::forward<F>(f), a, b, opt);
}

template <typename F>
Complex integrate_complex(F&& f, double a, double b, const Options& opt = {}) {
    return integrate<Complex>(std::forward<F>(f), a, b, opt);
}

/** Merges sorted breakpoint candidates into [a, b], dropping outside points. */
inline std::vector<double> clip_breakpoints(double a, double b, std::span<const double> inner) {
    std::vector<double> pts;
    pts.push_back(a);
    for (double t : inner)
        if (t > a && t < b) pts.push_back(t);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace quad

/** sin(x)/x with the removable singularity expanded below 1e-8. */
inline double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

/** (e^{iz} - 1)/(iz) = e^{iz/2} sinc(z/2); stable near z = 0. */
inline Complex cis_ratio(double z) {
    return std::polar(1.0, 0.5 * z) * sinc(0.5 * z);
}

}  // namespace bochner
