#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "bochner/errors.hpp"
#include "bochner/fft.hpp"
#include "bochner/poly.hpp"
#include "bochner/quadrature.hpp"

namespace bochner {

/**
 * Bound on a Fourier transform: |phi_hat(l)| <= flat everywhere, and
 * |phi_hat(l)| <= coeff * |l|^-power * exp(-gauss * l^2) for |l| >= 1.
 */
struct FourierDecay {
    double flat = 0.0;
    double coeff = 0.0;
    double power = 0.0;
    double gauss = 0.0;

    double eval(double l) const {
        l = std::abs(l);
        if (l < 1.0) return flat;
        double b = coeff * std::pow(l, -power);
        if (gauss > 0.0) b *= std::exp(-gauss * l * l);
        return std::min(flat, b);
    }
};

namespace detail {

struct Node;

struct GaussianNode {
    double center = 0.0;
    double width = 1.0;
    Poly poly;  // in u = x - center
};

struct IndicatorNode {
    double a = 0.0;
    double b = 1.0;
};

struct BSplineNode {
    int order = 1;       // order k: k-fold convolution of a unit-mass indicator
    double scale = 1.0;  // knot spacing
    double offset = 0.0;
};

struct BumpNode {
    double center = 0.0;
    double radius = 1.0;
    double amplitude = 1.0;
    Poly numer = Poly::constant(1.0);  // in u = (x - center)/radius
    int denom_pow = 0;                 // value = A P(u) (1-u^2)^-m e^{-1/(1-u^2)}
};

/** Cardinal B-spline N_k, supported on [0, k], unit mass. */
inline double cardinal_bspline(int k, double x) {
    if (x <= 0.0 || x >= k) return 0.0;
    if (k == 1) return 1.0;
    return (x * cardinal_bspline(k - 1, x) + (k - x) * cardinal_bspline(k - 1, x - 1.0)) /
           (k - 1.0);
}

/** Mass of the reference bump shape, int_{-1}^{1} e^{-1/(1-u^2)} du. */
inline double bump_shape_mass() {
    static const double mass = [] {
        quad::Options opt;
        opt.abs_tol = 1e-14;
        return quad::integrate_real(
            [](double u) {
                const double s = 1.0 - u * u;
                return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
            },
            -1.0, 1.0, opt);
    }();
    return mass;
}

}  // namespace detail

/**
 * A member of the closed analytic test-function family: polynomial-times-
 * Gaussian, indicator, B-spline, bump (with derivative forms), finite linear
 * combinations and convolutions. Each member evaluates pointwise, knows its
 * Fourier transform exactly or by certified quadrature, and reports support
 * and transform-decay certificates.
 */
class TestFunction {
  public:
    TestFunction() = default;  // the zero function

    static TestFunction gaussian(double center = 0.0, double width = 1.0,
                                 double amplitude = 1.0);
    static TestFunction indicator(double a, double b);
    static TestFunction bspline(int order, double scale = 1.0, double offset = 0.0);
    static TestFunction bump(double center, double radius, double amplitude = 1.0);
    static TestFunction combination(std::vector<std::pair<Complex, TestFunction>> terms);
    static TestFunction convolution(const TestFunction& f, const TestFunction& g);
    static TestFunction zero() { return {}; }

    bool is_zero() const { return node_ == nullptr; }

    Complex operator()(double x) const;
    Complex fourier(double lambda) const;

    /** Total integral, int phi dx = phi_hat(0). */
    Complex integral() const { return fourier(0.0); }

    TestFunction derivative() const;
    TestFunction translated(double t) const;
    TestFunction scaled(Complex c) const;

    bool differentiable() const;
    bool compact_support() const;
    double support_lo() const;
    double support_hi() const;

    FourierDecay fourier_decay() const;

    /** Upper bound on the L1 norm; exact for single-sign single nodes. */
    double l1_norm() const;

    /** Non-null when the function is exactly one indicator node. */
    const detail::IndicatorNode* as_indicator() const;

    const detail::Node* node() const { return node_.get(); }

  private:
    static TestFunction make(detail::Node n);

    std::shared_ptr<const detail::Node> node_;
};

namespace detail {

struct CombinationNode {
    std::vector<std::pair<Complex, TestFunction>> terms;
};

struct ConvolutionNode {
    TestFunction lhs;
    TestFunction rhs;
};

struct Node {
    std::variant<GaussianNode, IndicatorNode, BSplineNode, BumpNode, CombinationNode,
                 ConvolutionNode>
        v;
};

template <typename T>
const T* node_as(const Node* n) {
    return n ? std::get_if<T>(&n->v) : nullptr;
}

}  // namespace detail

inline TestFunction TestFunction::make(detail::Node n) {
    TestFunction f;
    f.node_ = std::make_shared<const detail::Node>(std::move(n));
    return f;
}

inline const detail::IndicatorNode* TestFunction::as_indicator() const {
    return detail::node_as<detail::IndicatorNode>(node_.get());
}

inline TestFunction TestFunction::gaussian(double center, double width, double amplitude) {
    if (width <= 0.0) throw Error("gaussian: width must be positive");
    return make({detail::GaussianNode{center, width, Poly::constant(amplitude)}});
}

inline TestFunction TestFunction::indicator(double a, double b) {
    if (!(a < b)) throw Error("indicator: requires a < b");
    return make({detail::IndicatorNode{a, b}});
}

inline TestFunction TestFunction::bspline(int order, double scale, double offset) {
    if (order < 1 || scale <= 0.0) throw Error("bspline: order >= 1, scale > 0");
    return make({detail::BSplineNode{order, scale, offset}});
}

inline TestFunction TestFunction::bump(double center, double radius, double amplitude) {
    if (radius <= 0.0) throw Error("bump: radius must be positive");
    detail::BumpNode n;
    n.center = center;
    n.radius = radius;
    n.amplitude = amplitude;
    return make({std::move(n)});
}

inline TestFunction TestFunction::combination(
    std::vector<std::pair<Complex, TestFunction>> terms) {
    std::vector<std::pair<Complex, TestFunction>> kept;
    for (auto& [c, f] : terms)
        if (c != Complex(0.0) && !f.is_zero()) kept.emplace_back(c, f);
    if (kept.empty()) return {};
    return make({detail::CombinationNode{std::move(kept)}});
}

inline TestFunction TestFunction::convolution(const TestFunction& f, const TestFunction& g) {
    using detail::node_as;
    if (f.is_zero() || g.is_zero()) return {};
    // Gaussian * Gaussian stays Gaussian in closed form (plain, degree 0)
    const auto* a = node_as<detail::GaussianNode>(f.node());
    const auto* b = node_as<detail::GaussianNode>(g.node());
    if (a && b && a->poly.degree() == 0 && b->poly.degree() == 0) {
        const double w = std::hypot(a->width, b->width);
        const double amp =
            a->poly.c[0] * b->poly.c[0] * a->width * b->width * std::sqrt(kTwoPi) / w;
        return gaussian(a->center + b->center, w, amp);
    }
    return make({detail::ConvolutionNode{f, g}});
}

inline TestFunction TestFunction::scaled(Complex c) const {
    if (is_zero() || c == Complex(0.0)) return {};
    return combination({{c, *this}});
}

// ---------------------------------------------------------------------------
// evaluation

inline Complex TestFunction::operator()(double x) const {
    using namespace detail;
    if (!node_) return 0.0;
    if (const auto* n = node_as<GaussianNode>(node())) {
        const double u = x - n->center;
        return n->poly(u) * std::exp(-u * u / (2.0 * n->width * n->width));
    }
    if (const auto* n = node_as<IndicatorNode>(node()))
        return (x >= n->a && x <= n->b) ? 1.0 : 0.0;
    if (const auto* n = node_as<BSplineNode>(node()))
        return cardinal_bspline(n->order, (x - n->offset) / n->scale) / n->scale;
    if (const auto* n = node_as<BumpNode>(node())) {
        const double u = (x - n->center) / n->radius;
        const double s = 1.0 - u * u;
        if (s <= 0.0) return 0.0;
        return n->amplitude * n->numer(u) * std::pow(s, -n->denom_pow) * std::exp(-1.0 / s);
    }
    if (const auto* n = node_as<CombinationNode>(node())) {
        Complex v = 0.0;
        for (const auto& [c, f] : n->terms) v += c * f(x);
        return v;
    }
    const auto& n = std::get<ConvolutionNode>(node()->v);
    // (f*g)(x) = int f(t) g(x-t) dt over the overlap of supports
    const double lo = std::max(n.lhs.support_lo(), x - n.rhs.support_hi());
    const double hi = std::min(n.lhs.support_hi(), x - n.rhs.support_lo());
    if (!(lo < hi)) return 0.0;
    quad::Options opt;
    opt.abs_tol = 1e-12;
    return quad::integrate_complex([&](double t) { return n.lhs(t) * n.rhs(x - t); }, lo, hi,
                                   opt);
}

// ---------------------------------------------------------------------------
// Fourier transform, convention phi_hat(l) = int phi(x) e^{i l x} dx

inline Complex TestFunction::fourier(double lambda) const {
    using namespace detail;
    if (!node_) return 0.0;
    if (const auto* n = node_as<GaussianNode>(node())) {
        // int u^k e^{-u^2/2w^2} e^{ilu} du = (-i d/dl)^k [w sqrt(2pi) e^{-w^2 l^2/2}]
        const double w2 = n->width * n->width;
        Complex q = 0.0;
        Poly qk = Poly::constant(1.0);  // d^k/dl^k e^{-w^2 l^2/2} = qk(l) e^{-...}
        Complex ik = 1.0;               // (-i)^k
        for (int k = 0; k <= n->poly.degree(); ++k) {
            if (k > 0) {
                qk = qk.derivative() - w2 * (Poly::monomial(1) * qk);
                ik *= Complex(0.0, -1.0);
            }
            q += n->poly.c[k] * ik * qk(lambda);
        }
        return std::polar(1.0, lambda * n->center) * n->width * std::sqrt(kTwoPi) *
               std::exp(-0.5 * w2 * lambda * lambda) * q;
    }
    if (const auto* n = node_as<IndicatorNode>(node())) {
        const double len = n->b - n->a;
        return len * std::polar(1.0, 0.5 * lambda * (n->a + n->b)) * sinc(0.5 * lambda * len);
    }
    if (const auto* n = node_as<BSplineNode>(node())) {
        const Complex base = cis_ratio(lambda * n->scale);
        Complex p = 1.0;
        for (int k = 0; k < n->order; ++k) p *= base;
        return std::polar(1.0, lambda * n->offset) * p;
    }
    if (const auto* n = node_as<BumpNode>(node())) {
        quad::Options opt;
        opt.abs_tol = 1e-12;
        const double a = n->center - n->radius, b = n->center + n->radius;
        return quad::integrate_complex(
            [&](double x) { return (*this)(x)*std::polar(1.0, lambda * x); }, a, b, opt);
    }
    if (const auto* n = node_as<CombinationNode>(node())) {
        Complex v = 0.0;
        for (const auto& [c, f] : n->terms) v += c * f.fourier(lambda);
        return v;
    }
    const auto& n = std::get<ConvolutionNode>(node()->v);
    return n.lhs.fourier(lambda) * n.rhs.fourier(lambda);
}

// ---------------------------------------------------------------------------
// derivative, staying inside the family

inline bool TestFunction::differentiable() const {
    using namespace detail;
    if (!node_) return true;
    if (node_as<IndicatorNode>(node())) return false;
    if (const auto* n = node_as<BSplineNode>(node())) return n->order >= 2;
    if (const auto* n = node_as<CombinationNode>(node())) {
        for (const auto& [c, f] : n->terms)
            if (!f.differentiable()) return false;
        return true;
    }
    if (const auto* n = node_as<ConvolutionNode>(node()))
        return n->lhs.differentiable() || n->rhs.differentiable();
    return true;
}

inline TestFunction TestFunction::derivative() const {
    using namespace detail;
    if (!node_) return {};
    if (const auto* n = node_as<GaussianNode>(node())) {
        const double w2 = n->width * n->width;
        Poly p = n->poly.derivative() - (1.0 / w2) * (Poly::monomial(1) * n->poly);
        return make({GaussianNode{n->center, n->width, std::move(p)}});
    }
    if (node_as<IndicatorNode>(node()))
        throw NotDifferentiable("indicator functions are not differentiable");
    if (const auto* n = node_as<BSplineNode>(node())) {
        if (n->order < 2) throw NotDifferentiable("order-1 B-spline is not differentiable");
        TestFunction a = bspline(n->order - 1, n->scale, n->offset);
        TestFunction b = bspline(n->order - 1, n->scale, n->offset + n->scale);
        const double inv = 1.0 / n->scale;
        return combination({{inv, a}, {-inv, b}});
    }
    if (const auto* n = node_as<BumpNode>(node())) {
        const Poly& p = n->numer;
        const Poly one_mu2({1.0, 0.0, -1.0});  // 1 - u^2
        const double m = n->denom_pow;
        Poly q = p.derivative() * one_mu2 * one_mu2 +
                 (2.0 * m) * (Poly::monomial(1) * p * one_mu2) -
                 2.0 * (Poly::monomial(1) * p);
        BumpNode out;
        out.center = n->center;
        out.radius = n->radius;
        out.amplitude = n->amplitude / n->radius;
        out.numer = std::move(q);
        out.denom_pow = n->denom_pow + 2;
        return make({std::move(out)});
    }
    if (const auto* n = node_as<CombinationNode>(node())) {
        std::vector<std::pair<Complex, TestFunction>> terms;
        for (const auto& [c, f] : n->terms) terms.emplace_back(c, f.derivative());
        return combination(std::move(terms));
    }
    const auto& n = std::get<ConvolutionNode>(node()->v);
    if (n.lhs.differentiable()) return convolution(n.lhs.derivative(), n.rhs);
    return convolution(n.lhs, n.rhs.derivative());
}

inline TestFunction TestFunction::translated(double t) const {
    using namespace detail;
    if (!node_) return {};
    if (const auto* n = node_as<GaussianNode>(node()))
        return make({GaussianNode{n->center + t, n->width, n->poly}});
    if (const auto* n = node_as<IndicatorNode>(node()))
        return make({IndicatorNode{n->a + t, n->b + t}});
    if (const auto* n = node_as<BSplineNode>(node()))
        return make({BSplineNode{n->order, n->scale, n->offset + t}});
    if (const auto* n = node_as<BumpNode>(node())) {
        BumpNode out = *n;
        out.center += t;
        return make({std::move(out)});
    }
    if (const auto* n = node_as<CombinationNode>(node())) {
        std::vector<std::pair<Complex, TestFunction>> terms;
        for (const auto& [c, f] : n->terms) terms.emplace_back(c, f.translated(t));
        return combination(std::move(terms));
    }
    const auto& n = std::get<ConvolutionNode>(node()->v);
    return convolution(n.lhs.translated(t), n.rhs);
}

// ---------------------------------------------------------------------------
// support and decay certificates

inline bool TestFunction::compact_support() const {
    using namespace detail;
    if (!node_) return true;
    if (node_as<GaussianNode>(node())) return false;
    if (const auto* n = node_as<CombinationNode>(node())) {
        for (const auto& [c, f] : n->terms)
            if (!f.compact_support()) return false;
        return true;
    }
    if (const auto* n = node_as<ConvolutionNode>(node()))
        return n->lhs.compact_support() && n->rhs.compact_support();
    return true;
}

inline double TestFunction::support_lo() const {
    using namespace detail;
    if (!node_) return 0.0;
    if (const auto* n = node_as<GaussianNode>(node()))
        return n->center - n->width * (10.0 + 2.0 * n->poly.degree());
    if (const auto* n = node_as<IndicatorNode>(node())) return n->a;
    if (const auto* n = node_as<BSplineNode>(node())) return n->offset;
    if (const auto* n = node_as<BumpNode>(node())) return n->center - n->radius;
    if (const auto* n = node_as<CombinationNode>(node())) {
        double lo = std::numeric_limits<double>::infinity();
        for (const auto& [c, f] : n->terms) lo = std::min(lo, f.support_lo());
        return lo;
    }
    const auto& n = std::get<ConvolutionNode>(node()->v);
    return n.lhs.support_lo() + n.rhs.support_lo();
}

inline double TestFunction::support_hi() const {
    using namespace detail;
    if (!node_) return 0.0;
    if (const auto* n = node_as<GaussianNode>(node()))
        return n->center + n->width * (10.0 + 2.0 * n->poly.degree());
    if (const auto* n = node_as<IndicatorNode>(node())) return n->b;
    if (const auto* n = node_as<BSplineNode>(node())) return n->offset + n->order * n->scale;
    if (const auto* n = node_as<BumpNode>(node())) return n->center + n->radius;
    if (const auto* n = node_as<CombinationNode>(node())) {
        double hi = -std::numeric_limits<double>::infinity();
        for (const auto& [c, f] : n->terms) hi = std::max(hi, f.support_hi());
        return hi;
    }
    const auto& n = std::get<ConvolutionNode>(node()->v);
    return n.lhs.support_hi() + n.rhs.support_hi();
}

inline double TestFunction::l1_norm() const {
    using namespace detail;
    if (!node_) return 0.0;
    if (const auto* n = node_as<IndicatorNode>(node())) return n->b - n->a;
    if (node_as<BSplineNode>(node())) return 1.0;
    if (const auto* n = node_as<CombinationNode>(node())) {
        double s = 0.0;
        for (const auto& [c, f] : n->terms) s += std::abs(c) * f.l1_norm();
        return s;
    }
    if (const auto* n = node_as<ConvolutionNode>(node()))
        return n->lhs.l1_norm() * n->rhs.l1_norm();
    quad::Options opt;
    opt.abs_tol = 1e-12;
    return quad::integrate_real([&](double x) { return std::abs((*this)(x)); }, support_lo(),
                                support_hi(), opt);
}

inline FourierDecay TestFunction::fourier_decay() const {
    using namespace detail;
    if (!node_) return {};
    if (const auto* n = node_as<GaussianNode>(node())) {
        // |Q(l)| <= sum_j A_j |l|^j with A_j from the Hermite-style recurrence;
        // fold the polynomial growth into a halved Gaussian rate.
        const double w2 = n->width * n->width;
        Poly absq;  // coefficient-wise bound accumulating sum_k |c_k| |q_k|
        Poly qk = Poly::constant(1.0);
        for (int k = 0; k <= n->poly.degree(); ++k) {
            if (k > 0) qk = qk.derivative() - w2 * (Poly::monomial(1) * qk);
            Poly aq = qk;
            for (double& v : aq.c) v = std::abs(v) * std::abs(n->poly.c[k]);
            absq = absq + aq;
        }
        const double a = 0.5 * w2;  // true rate of e^{-w^2 l^2 / 2}
        double c = 0.0;
        for (int j = 0; j <= absq.degree(); ++j) {
            const double peak = j == 0 ? 1.0 : std::pow(j / a, 0.5 * j) * std::exp(-0.5 * j);
            c += std::abs(absq.c[j]) * peak;  // max of |l|^j e^{-a l^2 / 2}
        }
        FourierDecay d;
        d.flat = l1_norm();
        d.coeff = n->width * std::sqrt(kTwoPi) * c;
        d.power = 0.0;
        d.gauss = 0.5 * a;
        return d;
    }
    if (const auto* n = node_as<IndicatorNode>(node()))
        return {n->b - n->a, 2.0, 1.0, 0.0};
    if (const auto* n = node_as<BSplineNode>(node()))
        return {1.0, std::pow(2.0 / n->scale, n->order), static_cast<double>(n->order), 0.0};
    if (node_as<BumpNode>(node())) {
        // |phi_hat| <= ||phi''||_1 / l^2
        const double c2 = derivative().derivative().l1_norm();
        return {l1_norm(), c2, 2.0, 0.0};
    }
    if (const auto* n = node_as<CombinationNode>(node())) {
        FourierDecay d;
        d.power = std::numeric_limits<double>::infinity();
        d.gauss = std::numeric_limits<double>::infinity();
        for (const auto& [c, f] : n->terms) {
            FourierDecay t = f.fourier_decay();
            d.flat += std::abs(c) * t.flat;
            d.coeff += std::abs(c) * t.coeff;
            d.power = std::min(d.power, t.power);
            d.gauss = std::min(d.gauss, t.gauss);
        }
        if (!std::isfinite(d.power)) d.power = 0.0;
        if (!std::isfinite(d.gauss)) d.gauss = 0.0;
        return d;
    }
    const auto& n = std::get<ConvolutionNode>(node()->v);
    FourierDecay a = n.lhs.fourier_decay();
    FourierDecay b = n.rhs.fourier_decay();
    return {a.flat * b.flat, a.coeff * b.coeff, a.power + b.power, a.gauss + b.gauss};
}

/**
 * Unit-mass mollifier phi_{n,x}(t) = n phi(n (t - x)) built from the
 * reference bump of the given base radius; mass 1 at every scale n.
 */
struct Mollifier {
    int n = 1;
    double center = 0.0;
    double base_radius = 1.0;

    TestFunction as_test_function() const {
        const double amp = n / (base_radius * detail::bump_shape_mass());
        return TestFunction::bump(center, base_radius / n, amp);
    }
};

/** Sampled transform on the FFT grid l_k = pi k / L, k = -N/2 .. N/2 - 1. */
struct FourierGrid {
    std::vector<double> lambdas;
    std::vector<Complex> values;
};

/**
 * FFT-based numeric transform: samples phi on [center-L, center+L) at N
 * (power of two) points and returns phi_hat on the matching frequency grid.
 * Accurate for smooth compactly supported phi well inside the window.
 */
inline FourierGrid fourier_fft_grid(const TestFunction& phi, double center, double L,
                                    std::size_t N) {
    const double dx = 2.0 * L / static_cast<double>(N);
    std::vector<Complex> samples(N);
    for (std::size_t j = 0; j < N; ++j)
        samples[j] = phi(center - L + static_cast<double>(j) * dx);
    fft_radix2(samples, +1);
    FourierGrid g;
    g.lambdas.resize(N);
    g.values.resize(N);
    const auto half = static_cast<std::ptrdiff_t>(N / 2);
    for (std::ptrdiff_t k = -half; k < half; ++k) {
        const auto idx = static_cast<std::size_t>(k + half);
        const auto src = static_cast<std::size_t>(
            (k + static_cast<std::ptrdiff_t>(N)) % static_cast<std::ptrdiff_t>(N));
        const double lambda = kPi * static_cast<double>(k) / L;
        // undo the grid origin: sum phi(x_j) e^{i l x_j} = e^{i l (center-L)} FFT_k
        g.lambdas[idx] = lambda;
        g.values[idx] = dx * std::polar(1.0, lambda * (center - L)) * samples[src];
    }
    return g;
}

}  // namespace bochner
