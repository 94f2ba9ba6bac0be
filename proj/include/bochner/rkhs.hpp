#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bochner/errors.hpp"
#include "bochner/forms.hpp"
#include "bochner/kernel.hpp"
#include "bochner/test_function.hpp"

namespace bochner {

/** A verified Bochner pair: f = mu_hat, the kernel and its spectral measure. */
struct KernelCatalogEntry {
    std::string name;
    PdKernel kernel;
    SpectralMeasure measure;
};

/**
 * A finitely presented vector of H_f: the element phi * f, identified by its
 * test function and kernel. Norms are computable two independent ways.
 */
class RkhsElement {
  public:
    RkhsElement(TestFunction phi, PdKernel kernel)
        : phi_(std::move(phi)), kernel_(std::move(kernel)) {}

    const TestFunction& phi() const { return phi_; }
    const PdKernel& kernel() const { return kernel_; }

    bool same_kernel(const RkhsElement& other) const {
        return kernel_.name() == other.kernel_.name() && kernel_.form() == other.kernel_.form();
    }

  private:
    TestFunction phi_;
    PdKernel kernel_;
};

/**
 * <f_phi, f_psi> = int int phi(x) conj(psi(y)) f(x-y) dy dx. Continuous
 * kernels pair on the x side; tempered kernels always pair on the frequency
 * side against the kernel's spectral measure.
 */
inline Complex inner_product_double(const RkhsElement& x, const RkhsElement& y,
                                    double tol = 1e-9) {
    if (!x.same_kernel(y))
        throw KernelMismatch("inner_product_double: elements have different kernels");
    if (x.kernel().continuity_class() == PdKernel::Continuity::TemperedDistribution &&
        x.kernel().has_measure())
        return spectral_pairing(x.phi(), y.phi(), x.kernel().measure(), tol);
    return double_form(x.phi(), y.phi(), x.kernel(), tol);
}

/** ||f_phi||^2 by the double integral; the imaginary residue must be small. */
inline double norm_double_integral(const RkhsElement& x, double tol = 1e-9) {
    const Complex v = inner_product_double(x, x, tol);
    if (std::abs(v.imag()) > 100.0 * tol * std::max(1.0, std::abs(v.real())))
        throw Error("norm_double_integral: unexpected imaginary part");
    return v.real();
}

namespace detail {

inline bool same_measure(const SpectralMeasure& a, const SpectralMeasure& b) {
    if (a.atoms().size() != b.atoms().size()) return false;
    for (std::size_t i = 0; i < a.atoms().size(); ++i)
        if (a.atoms()[i].location != b.atoms()[i].location ||
            a.atoms()[i].weight != b.atoms()[i].weight)
            return false;
    if (a.density().has_value() != b.density().has_value()) return false;
    if (a.density() && (a.density()->kind() != b.density()->kind() ||
                        a.density()->params() != b.density()->params()))
        return false;
    return a.growth_class() == b.growth_class();
}

/** Checks that mu is plausibly the Bochner partner of the element's kernel. */
inline void require_partner(const RkhsElement& x, const SpectralMeasure& mu) {
    const PdKernel& k = x.kernel();
    if (k.has_measure()) {
        if (!same_measure(k.measure(), mu))
            throw MeasureMismatch("norm_spectral: measure is not the kernel's partner");
        return;
    }
    if (k.form() == PdKernel::Form::RegularizedSeries) {
        // partner of a unit-weight series: atoms at the listed frequencies
        if (mu.density() || mu.atoms().size() < k.frequencies().size())
            throw MeasureMismatch("norm_spectral: series kernel expects pure atoms");
        return;
    }
    if (mu.growth_class() != GrowthClass::Finite)
        throw MeasureMismatch("norm_spectral: cannot verify a tempered partner numerically");
    for (double xx : {0.0, 0.37, 1.13}) {
        const Complex lhs = k(xx);
        const Complex rhs = bochner_eval(mu, xx, 1e-10);
        if (std::abs(lhs - rhs) > 1e-6 * std::max(1.0, std::abs(lhs)))
            throw MeasureMismatch("norm_spectral: measure disagrees with kernel values");
    }
}

}  // namespace detail

/** ||f_phi||^2 = int |phi_hat|^2 dmu against the kernel's Bochner partner. */
inline double norm_spectral(const RkhsElement& x, const SpectralMeasure& mu,
                            double tol = 1e-9) {
    detail::require_partner(x, mu);
    return spectral_norm_sq(x.phi(), mu, tol);
}

struct IsometryReport {
    double lhs = 0.0;  // x-side double integral
    double rhs = 0.0;  // frequency-side integral
    double rel_err = 0.0;
};

/** Checks ||phi * f||^2 (double integral) against int |phi_hat|^2 dmu. */
inline IsometryReport verify_isometry(const TestFunction& phi, const KernelCatalogEntry& pair,
                                      double tol = 1e-9) {
    IsometryReport r;
    r.lhs = norm_double_integral(RkhsElement(phi, pair.kernel), tol / 2.0);
    r.rhs = spectral_norm_sq(phi, pair.measure, tol / 2.0);
    const double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
    r.rel_err = scale > 1e-300 ? std::abs(r.lhs - r.rhs) / scale : 0.0;
    return r;
}

struct ReproducingReport {
    Complex lhs = 0.0;  // <f(.-x0), psi * f> via the mollifier limit
    Complex rhs = 0.0;  // (psi * f)(x0)
    double abs_diff = 0.0;
};

/**
 * Reproducing property at x0: <f(.-x0), f_psi> = f_psi(x0). The left side is
 * the mollifier limit of eq-hi2 pairings, computed directly as
 * int conj(psi(y)) f(y - x0) dy; the right side is the convolution value.
 */
inline ReproducingReport reproducing_check(const PdKernel& kernel, double x0,
                                           const TestFunction& psi, double tol = 1e-9) {
    if (kernel.continuity_class() != PdKernel::Continuity::Continuous &&
        kernel.form() != PdKernel::Form::RegularizedSeries)
        throw TemperedWithoutCutoff("reproducing_check requires pointwise kernel values");
    ReproducingReport r;
    if (!psi.is_zero()) {
        const double lo = psi.support_lo(), hi = psi.support_hi();
        std::vector<double> kink_pts;
        for (double k : kernel.kinks()) kink_pts.push_back(x0 + k);
        const std::vector<double> pts = quad::clip_breakpoints(lo, hi, kink_pts);
        quad::Options opt;
        opt.abs_tol = tol;
        r.lhs = quad::integrate_breakpoints<Complex>(
            [&](double y) { return std::conj(psi(y)) * kernel(y - x0); }, pts, opt);
        r.rhs = convolve_kernel(psi, kernel, x0, tol);
    }
    r.abs_diff = std::abs(r.lhs - r.rhs);
    return r;
}

struct FactorizationReport {
    Complex pairing = 0.0;  // <f(.-x1), f(.-x2)> via mollifier approximants
    Complex direct = 0.0;   // f(x1 - x2)
    double abs_diff = 0.0;
};

/** Factorization f(x1-x2) = <f(.-x1), f(.-x2)>, via scale-n mollifiers. */
inline FactorizationReport factorization_check(const PdKernel& kernel, double x1, double x2,
                                               int mollifier_scale = 256, double tol = 1e-9) {
    const TestFunction a = Mollifier{mollifier_scale, x1}.as_test_function();
    const TestFunction b = Mollifier{mollifier_scale, x2}.as_test_function();
    FactorizationReport r;
    r.pairing = double_form(a, b, kernel, tol);
    r.direct = kernel(x1 - x2);
    r.abs_diff = std::abs(r.pairing - r.direct);
    return r;
}

/** One sampled configuration of the membership estimator. */
struct MembershipConfig {
    std::vector<double> points;
    std::vector<Complex> coeffs;
    double ratio = 0.0;
};

struct MembershipReport {
    double a0_estimate = 0.0;
    MembershipConfig witness;
    int skipped = 0;  // configurations with a degenerate denominator
};

/**
 * Sampled lower-bound estimator for the membership constant A0 of Thm-style
 * quadratic bounds: max over sampled (points, coefficients) of
 * |sum c_i xi(x_i)|^2 / sum c_i conj(c_j) f(x_i - x_j). Configurations are a
 * deterministic sampler: symmetric grids of sizes {2,4,8} in [-R, R] for each
 * requested range, coefficients from a golden-ratio quasi-random sequence.
 * This certifies only a lower bound for the true supremum.
 */
inline MembershipReport membership_bound(const PdKernel& kernel,
                                         const std::function<Complex(double)>& xi,
                                         const std::vector<double>& ranges = {1.0, 2.0, 4.0},
                                         int coeff_draws = 8, double degenerate_tol = 1e-12) {
    static constexpr double kGolden = 0.6180339887498949;
    MembershipReport rep;
    double g = 0.11;  // quasi-random phase, fixed for reproducibility
    for (double R : ranges) {
        for (int m : {2, 4, 8}) {
            std::vector<double> pts(m);
            for (int i = 0; i < m; ++i)
                pts[i] = m == 1 ? 0.0 : -R + 2.0 * R * i / (m - 1.0);
            const Eigen::MatrixXcd gram = gram_matrix(kernel, pts);
            for (int draw = 0; draw < coeff_draws; ++draw) {
                std::vector<Complex> c(m);
                for (int i = 0; i < m; ++i) {
                    g += kGolden;
                    g -= std::floor(g);
                    const double re = 2.0 * g - 1.0;
                    g += kGolden;
                    g -= std::floor(g);
                    const double im = 2.0 * g - 1.0;
                    c[i] = Complex(re, im);
                }
                Complex num = 0.0;
                for (int i = 0; i < m; ++i) num += c[i] * xi(pts[i]);
                Complex den = 0.0;
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j)
                        den += c[i] * std::conj(c[j]) * gram(i, j);
                if (den.real() <= degenerate_tol) {
                    ++rep.skipped;
                    continue;
                }
                const double ratio = std::norm(num) / den.real();
                if (ratio > rep.a0_estimate) {
                    rep.a0_estimate = ratio;
                    rep.witness = {pts, c, ratio};
                }
            }
        }
    }
    return rep;
}

struct SobolevReport {
    double lhs = 0.0;  // int (|phi_hat|^2 + |(D phi)_hat|^2) dmu/(1+l^2)
    double rhs = 0.0;  // int |phi_hat|^2 dmu
};

/**
 * Tempered-measure identity: the (1+l^2)-weighted first-order Sobolev energy
 * equals the plain spectral norm. The derivative transform is computed from
 * the derivative's own structure, not as l * phi_hat.
 */
inline SobolevReport sobolev_identity(const TestFunction& phi, const KernelCatalogEntry& pair,
                                      double tol = 1e-9) {
    if (!phi.differentiable()) throw NotDifferentiable("sobolev_identity: phi not smooth");
    SobolevReport rep;
    if (phi.is_zero()) return rep;
    const TestFunction dphi = phi.derivative();
    const SpectralMeasure& mu = pair.measure;

    double lhs = 0.0;
    for (const Atom& a : mu.atoms()) {
        const double num =
            std::norm(phi.fourier(a.location)) + std::norm(dphi.fourier(a.location));
        lhs += a.weight * num / (1.0 + a.location * a.location);
    }
    if (mu.density()) {
        const Density& rho = *mu.density();
        FourierDecay weighted = detail::density_decay(rho);
        weighted.power += 2.0;  // the 1/(1+l^2) weight
        const FourierDecay da = phi.fourier_decay();
        const FourierDecay db = dphi.fourier_decay();
        double R = -1.0;
        for (double r : detail::kCutoffLadder) {
            const double t = detail::tail_product_bound(da, da, weighted, r) +
                             detail::tail_product_bound(db, db, weighted, r);
            if (t <= tol / 2.0) {
                R = r;
                break;
            }
        }
        if (R < 0.0) throw NonConvergent("sobolev_identity: tail not certified");
        quad::Options opt;
        opt.abs_tol = tol / 2.0;
        lhs += quad::integrate_real(
            [&](double l) {
                const double num = std::norm(phi.fourier(l)) + std::norm(dphi.fourier(l));
                return num * rho(l) / (1.0 + l * l);
            },
            -R, R, opt);
    }
    rep.lhs = lhs;
    rep.rhs = spectral_norm_sq(phi, mu, tol);
    return rep;
}

/** U_t: phi * f -> phi(. - t) * f; unitary on H_f. */
inline RkhsElement translate(const RkhsElement& x, double t) {
    return RkhsElement(x.phi().translated(t), x.kernel());
}

/** phi * (psi * f) as an element, with test function phi * psi. */
inline RkhsElement convolve_element(const TestFunction& phi, const RkhsElement& x) {
    return RkhsElement(TestFunction::convolution(phi, x.phi()), x.kernel());
}

/**
 * Squared H_f distance || phi_{n,x0} * f  -  f(. - x0) ||^2, expanded through
 * the factorization identity: ||f_m||^2 - 2 Re (m * f)(x0) + f(0).
 */
inline double mollifier_distance_sq(const KernelCatalogEntry& pair, int n, double x0,
                                    double base_radius = 1.0, double tol = 1e-9) {
    const TestFunction m = Mollifier{n, x0, base_radius}.as_test_function();
    const double norm_sq = spectral_norm_sq(m, pair.measure, tol);
    const Complex cross = convolve_kernel(m, pair.kernel, x0, tol);
    const Complex f0 = pair.kernel(0.0);
    return norm_sq - 2.0 * cross.real() + f0.real();
}

}  // namespace bochner
