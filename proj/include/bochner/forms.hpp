#pragma once

#include <cmath>
#include <vector>

#include "bochner/errors.hpp"
#include "bochner/kernel.hpp"
#include "bochner/quadrature.hpp"
#include "bochner/test_function.hpp"

namespace bochner {

namespace detail {

/** Decay certificate of a density, in the same shape as a Fourier bound. */
inline FourierDecay density_decay(const Density& rho) {
    switch (rho.kind()) {
        case Density::Kind::Cauchy:
            return {1.0 / kPi, 1.0 / kPi, 2.0, 0.0};
        case Density::Kind::Gauss:
            return {1.0 / std::sqrt(kTwoPi), 1.0 / std::sqrt(kTwoPi), 0.0, 0.5};
        case Density::Kind::Constant:
            return {rho.params()[0], rho.params()[0], 0.0, 0.0};
        case Density::Kind::PowerLaw:
            // rho = c|l|^p with p in (-1, 1): for |l| >= 1 the bound is c|l|^-(-p)
            return {std::numeric_limits<double>::infinity(), rho.params()[0], -rho.params()[1],
                    0.0};
        case Density::Kind::Custom:
            return {std::numeric_limits<double>::infinity(), rho.params()[0], rho.params()[1],
                    0.0};
    }
    return {};
}

/**
 * Certified bound on the two-sided tail int_{|l|>R} a(l) b(l) rho(l) dl for
 * decay-bounded factors; +inf when the combination cannot be certified.
 */
inline double tail_product_bound(const FourierDecay& a, const FourierDecay& b,
                                 const FourierDecay& rho, double R) {
    const double C = a.coeff * b.coeff * rho.coeff;
    const double P = a.power + b.power + rho.power;
    const double A = a.gauss + b.gauss + rho.gauss;
    if (R < 1.0 || C <= 0.0) return std::numeric_limits<double>::infinity();
    if (A > 0.0) {
        const double q = std::max(0.0, -P);   // residual polynomial growth
        const double p = std::max(0.0, P);
        if (A * R * R <= q + 1.0) return std::numeric_limits<double>::infinity();
        return 2.0 * C * std::pow(R, q - p) * std::exp(-A * R * R) / (A * R);
    }
    if (P > 1.0) return 2.0 * C * std::pow(R, 1.0 - P) / (P - 1.0);
    return std::numeric_limits<double>::infinity();
}

inline constexpr double kCutoffLadder[] = {16.0,   64.0,    256.0,   1024.0,
                                           4096.0, 16384.0, 65536.0, 262144.0};

}  // namespace detail

/**
 * Frequency-side pairing int phi_hat(l) conj(psi_hat(l)) dmu(l), certified to
 * absolute tolerance tol. Throws NonConvergent when no cutoff in the ladder
 * certifies the tail.
 */
inline Complex spectral_pairing(const TestFunction& phi, const TestFunction& psi,
                                const SpectralMeasure& mu, double tol = 1e-10) {
    Complex acc = 0.0;
    for (const Atom& a : mu.atoms())
        acc += a.weight * phi.fourier(a.location) * std::conj(psi.fourier(a.location));
    if (!mu.density()) return acc;
    const Density& rho = *mu.density();
    const FourierDecay da = phi.fourier_decay();
    const FourierDecay db = psi.fourier_decay();
    const FourierDecay dr = detail::density_decay(rho);
    double R = -1.0;
    for (double r : detail::kCutoffLadder) {
        if (detail::tail_product_bound(da, db, dr, r) <= tol / 2.0) {
            R = r;
            break;
        }
    }
    if (R < 0.0) throw NonConvergent("spectral_pairing: tail bound cannot certify tolerance");
    quad::Options opt;
    opt.abs_tol = tol / 2.0;
    acc += quad::integrate_complex(
        [&](double l) { return phi.fourier(l) * std::conj(psi.fourier(l)) * rho(l); }, -R, R,
        opt);
    return acc;
}

/**
 * Frequency-side squared norm int |phi_hat|^2 dmu. For a single indicator the
 * oscillation is split off analytically, which certifies slowly decaying
 * densities (Lebesgue included); otherwise delegates to spectral_pairing.
 */
inline double spectral_norm_sq(const TestFunction& phi, const SpectralMeasure& mu,
                               double tol = 1e-10) {
    const detail::IndicatorNode* ind = phi.as_indicator();
    if (!ind || !mu.density()) return std::real(spectral_pairing(phi, phi, mu, tol));

    const double W = ind->b - ind->a;
    double acc = 0.0;
    for (const Atom& a : mu.atoms()) acc += a.weight * std::norm(phi.fourier(a.location));
    const Density& rho = *mu.density();
    // |phi_hat(l)|^2 = W^2 sinc^2(W l / 2); tail splits into 2 rho/l^2 plus an
    // oscillatory remainder bounded by 8 rho(R) / (W R^2).
    double R = -1.0;
    double tail_value = 0.0;
    for (double r : detail::kCutoffLadder) {
        const TailEstimate smooth = rho.over_lambda_sq_tail(r);
        const double osc = 8.0 * rho.tail_bound_at(r) / (W * r * r);
        if (std::isfinite(smooth.value) && 2.0 * smooth.error + osc <= tol / 2.0) {
            R = r;
            tail_value = 2.0 * smooth.value;
            break;
        }
    }
    if (R < 0.0) throw NonConvergent("spectral_norm_sq: tail bound cannot certify tolerance");
    quad::Options opt;
    opt.abs_tol = tol / 2.0;
    acc += quad::integrate_real(
        [&](double l) {
            const double s = W * sinc(0.5 * W * l);
            return s * s * rho(l);
        },
        -R, R, opt);
    return acc + tail_value;
}

namespace detail {

inline bool pointwise_evaluable(const PdKernel& k) {
    if (k.form() == PdKernel::Form::BochnerOf)
        return k.measure().growth_class() == GrowthClass::Finite;
    return true;  // closed forms and regularized series evaluate pointwise
}

}  // namespace detail

/**
 * Convolution against the kernel: (phi * f)(x) = int phi(y) f(x - y) dy for
 * pointwise-evaluable kernels, or the frequency-side sum
 * sum_l w(l) phi_hat(l) e^{-i l x} for regularized series.
 */
inline Complex convolve_kernel(const TestFunction& phi, const PdKernel& kernel, double x,
                               double tol = 1e-10) {
    if (phi.is_zero()) return 0.0;
    if (kernel.form() == PdKernel::Form::RegularizedSeries) {
        Complex acc = 0.0;
        for (double l : kernel.frequencies())
            acc += kernel.series_weight(l) * phi.fourier(l) * std::polar(1.0, -l * x);
        return acc;
    }
    if (!detail::pointwise_evaluable(kernel))
        throw TemperedWithoutCutoff("convolve_kernel: kernel has no pointwise values");
    const double lo = phi.support_lo(), hi = phi.support_hi();
    std::vector<double> inner;
    for (double k : kernel.kinks()) inner.push_back(x - k);
    const std::vector<double> pts = quad::clip_breakpoints(lo, hi, inner);
    quad::Options opt;
    opt.abs_tol = tol;
    return quad::integrate_breakpoints<Complex>(
        [&](double y) { return phi(y) * kernel(x - y); }, pts, opt);
}

/**
 * The x-side sesquilinear form int int phi(x) conj(psi(y)) f(x - y) dy dx by
 * nested adaptive quadrature over the effective supports. The inner integral
 * splits at the kernel's kink locations.
 */
inline Complex double_form(const TestFunction& phi, const TestFunction& psi,
                           const PdKernel& kernel, double tol = 1e-10) {
    if (phi.is_zero() || psi.is_zero()) return 0.0;
    if (!detail::pointwise_evaluable(kernel))
        throw TemperedWithoutCutoff(
            "double_form: tempered kernels pair on the frequency side");
    const double a = phi.support_lo(), b = phi.support_hi();
    const double c = psi.support_lo(), d = psi.support_hi();
    const double inner_tol = tol / (4.0 * (1.0 + phi.l1_norm()));
    quad::Options inner_opt;
    inner_opt.abs_tol = inner_tol;
    quad::Options outer_opt;
    outer_opt.abs_tol = tol / 2.0;
    auto inner = [&](double x) {
        std::vector<double> kink_pts;
        for (double k : kernel.kinks()) kink_pts.push_back(x - k);
        const std::vector<double> pts = quad::clip_breakpoints(c, d, kink_pts);
        return quad::integrate_breakpoints<Complex>(
            [&](double y) { return std::conj(psi(y)) * kernel(x - y); }, pts, inner_opt);
    };
    return quad::integrate_complex([&](double x) { return phi(x) * inner(x); }, a, b,
                                   outer_opt);
}

/** Quadrature request for the positive definiteness double integral. */
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double refine_factor = 16.0;  // tolerance shrink for the verification pass
};

/**
 * The Riemann double integral int int phi(x) conj(phi(y)) f(x - y) dy dx,
 * evaluated twice (at the requested and a refined tolerance); disagreement
 * beyond 10x the tolerance raises GridTooCoarse. Nonnegative for p.d.
 * kernels up to tolerance.
 */
inline double pd_quadrature_form(const PdKernel& kernel, const TestFunction& phi,
                                 const QuadratureSpec& spec = {}) {
    const Complex coarse = double_form(phi, phi, kernel, spec.abs_tol);
    const Complex fine = double_form(phi, phi, kernel, spec.abs_tol / spec.refine_factor);
    if (std::abs(coarse - fine) > 10.0 * spec.abs_tol)
        throw GridTooCoarse("pd_quadrature_form: refinement moved the value beyond tolerance");
    if (std::abs(fine.imag()) > 10.0 * spec.abs_tol * std::max(1.0, std::abs(fine.real())))
        throw Error("pd_quadrature_form: unexpected imaginary part");
    return fine.real();
}

}  // namespace bochner
