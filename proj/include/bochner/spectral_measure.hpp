#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bochner/errors.hpp"
#include "bochner/quadrature.hpp"

namespace bochner {

/** Point mass of a spectral measure. */
struct Atom {
    double location = 0.0;
    double weight = 0.0;
};

/** Growth class of a positive measure on the line. */
enum class GrowthClass { Finite, Tempered };

/** Certified value of a tail integral: value plus a bound on its error. */
struct TailEstimate {
    double value = 0.0;
    double error = 0.0;
};

/**
 * Absolutely continuous part of a spectral measure. Known analytic kinds
 * carry exact tail integrals; Custom densities supply a power-decay bound
 * rho(l) <= decay_coeff * |l|^-decay_power for |l| >= 1.
 */
class Density {
  public:
    enum class Kind { Cauchy, Gauss, Constant, PowerLaw, Custom };

    /** rho(l) = 1/(pi (1 + l^2)); the spectral side of e^{-|x|}. */
    static Density cauchy() { return Density(Kind::Cauchy, {}); }

    /** Standard normal pdf; the spectral side of e^{-x^2/2}. */
    static Density gauss() { return Density(Kind::Gauss, {}); }

    /** rho = c on the whole line (Lebesgue when c = 1). */
    static Density constant(double c) { return Density(Kind::Constant, {c}); }

    /** rho(l) = c |l|^p with p in (-1, 1); tempered power-law weight. */
    static Density power_law(double c, double p) { return Density(Kind::PowerLaw, {c, p}); }

    static Density custom(std::function<double(double)> f, double decay_coeff, double decay_power) {
        Density d(Kind::Custom, {decay_coeff, decay_power});
        d.fn_ = std::move(f);
        return d;
    }

    Kind kind() const { return kind_; }
    const std::vector<double>& params() const { return params_; }

    double operator()(double l) const {
        switch (kind_) {
            case Kind::Cauchy:
                return 1.0 / (kPi * (1.0 + l * l));
            case Kind::Gauss:
                return std::exp(-0.5 * l * l) / std::sqrt(kTwoPi);
            case Kind::Constant:
                return params_[0];
            case Kind::PowerLaw:
                return l == 0.0 ? 0.0 : params_[0] * std::pow(std::abs(l), params_[1]);
            case Kind::Custom:
                return fn_(l);
        }
        return 0.0;
    }

    /** Bound on rho(l) for |l| >= R (monotone tail assumption for Custom). */
    double tail_bound_at(double R) const {
        switch (kind_) {
            case Kind::Cauchy:
                return 1.0 / (kPi * (1.0 + R * R));
            case Kind::Gauss:
                return std::exp(-0.5 * R * R) / std::sqrt(kTwoPi);
            case Kind::Constant:
                return params_[0];
            case Kind::PowerLaw:
                return params_[1] <= 0.0 ? params_[0] * std::pow(R, params_[1])
                                         : std::numeric_limits<double>::infinity();
            case Kind::Custom:
                return params_[0] * std::pow(R, -params_[1]);
        }
        return 0.0;
    }

    /** Total mass of the two-sided tail { |l| > R }; infinite for Constant. */
    TailEstimate mass_tail(double R) const {
        switch (kind_) {
            case Kind::Cauchy:
                return {1.0 - (2.0 / kPi) * std::atan(R), 1e-16};
            case Kind::Gauss:
                return {std::erfc(R / std::sqrt(2.0)), 1e-16};
            case Kind::Constant:
                return {std::numeric_limits<double>::infinity(), 0.0};
            case Kind::PowerLaw: {
                const double p = params_[1];
                if (p >= -1.0) return {std::numeric_limits<double>::infinity(), 0.0};
                return {2.0 * params_[0] * std::pow(R, p + 1.0) / (-p - 1.0), 1e-16};
            }
            case Kind::Custom: {
                const double p = params_[1];
                if (p <= 1.0) return {std::numeric_limits<double>::infinity(), 0.0};
                const double b = 2.0 * params_[0] * std::pow(R, 1.0 - p) / (p - 1.0);
                return {0.0, b};
            }
        }
        return {};
    }

    /** Two-sided tail of rho(l)/l^2 over { |l| > R }; integrand of r^(mu). */
    TailEstimate over_lambda_sq_tail(double R) const {
        switch (kind_) {
            case Kind::Cauchy: {
                // 1/(l^2 (1+l^2)) = 1/l^2 - 1/(1+l^2)
                const double v = (2.0 / kPi) * (1.0 / R - (kPi / 2.0 - std::atan(R)));
                return {v, 1e-16};
            }
            case Kind::Gauss:
                return {0.0, std::erfc(R / std::sqrt(2.0)) / (R * R)};
            case Kind::Constant:
                return {2.0 * params_[0] / R, 1e-16};
            case Kind::PowerLaw: {
                const double p = params_[1];
                if (p >= 1.0) return {std::numeric_limits<double>::infinity(), 0.0};
                return {2.0 * params_[0] * std::pow(R, p - 1.0) / (1.0 - p), 1e-16};
            }
            case Kind::Custom: {
                const double p = params_[1];
                const double b = 2.0 * params_[0] * std::pow(R, -1.0 - p) / (1.0 + p);
                return {0.0, b};
            }
        }
        return {};
    }

    bool serializable() const { return kind_ != Kind::Custom; }

    std::string kind_name() const {
        switch (kind_) {
            case Kind::Cauchy: return "cauchy";
            case Kind::Gauss: return "gauss";
            case Kind::Constant: return "constant";
            case Kind::PowerLaw: return "power_law";
            case Kind::Custom: return "custom";
        }
        return "?";
    }

  private:
    Density(Kind k, std::vector<double> params) : kind_(k), params_(std::move(params)) {}

    Kind kind_;
    std::vector<double> params_;
    std::function<double(double)> fn_;
};

/**
 * Positive measure mu on the frequency line: finitely many atoms plus an
 * optional absolutely continuous density, with a declared growth class.
 */
class SpectralMeasure {
  public:
    SpectralMeasure() = default;

    static SpectralMeasure from_atoms(std::vector<Atom> atoms,
                                      GrowthClass g = GrowthClass::Finite, int order = 1) {
        SpectralMeasure m;
        m.atoms_ = std::move(atoms);
        m.growth_ = g;
        m.tempered_order_ = order;
        m.validate();
        return m;
    }

    static SpectralMeasure from_density(Density d, GrowthClass g = GrowthClass::Finite,
                                        int order = 1) {
        SpectralMeasure m;
        m.density_ = std::move(d);
        m.growth_ = g;
        m.tempered_order_ = order;
        m.validate();
        return m;
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::optional<Density>& density() const { return density_; }
    GrowthClass growth_class() const { return growth_; }
    int tempered_order() const { return tempered_order_; }

    /** Sum of atom weights plus the density integral; Finite measures only. */
    double total_mass(double tol = 1e-10) const {
        if (growth_ != GrowthClass::Finite)
            throw TemperedWithoutCutoff("total_mass: measure is tempered");
        double mass = 0.0;
        for (const Atom& a : atoms_) mass += a.weight;
        if (density_) {
            const double R = density_cutoff_for_mass(tol / 2.0);
            quad::Options opt;
            opt.abs_tol = tol / 2.0;
            mass += quad::integrate_real([&](double l) { return (*density_)(l); }, -R, R, opt);
            mass += density_->mass_tail(R).value;
        }
        return mass;
    }

    /**
     * Integral of 1/(1 + l^{2M}) against the measure, certifying the declared
     * temperedness; throws NonConvergent when the tail cannot be bounded.
     */
    double temperedness_integral(double tol = 1e-8) const {
        const int M = growth_ == GrowthClass::Finite ? 1 : tempered_order_;
        double s = 0.0;
        for (const Atom& a : atoms_) s += a.weight / (1.0 + std::pow(a.location, 2 * M));
        if (density_) {
            const double R = 1e4;
            quad::Options opt;
            opt.abs_tol = tol;
            s += quad::integrate_real(
                [&](double l) { return (*density_)(l) / (1.0 + std::pow(l, 2 * M)); }, -R, R, opt);
            // crude tail: rho(l)/l^{2M} decays at least like the density bound / R^{2M}
            const double tail = density_->tail_bound_at(R) * 2.0 / ((2 * M - 1) * std::pow(R, 2 * M - 1));
            if (!std::isfinite(tail)) throw NonConvergent("temperedness tail not certified");
            s += tail;
        }
        return s;
    }

    /** Cutoff radius R such that the density mass outside is below tol. */
    double density_cutoff_for_mass(double tol) const {
        if (!density_) return 1.0;
        for (double R : {8.0, 16.0, 64.0, 256.0, 1024.0, 8192.0, 65536.0, 1048576.0}) {
            TailEstimate t = density_->mass_tail(R);
            if (std::isfinite(t.value) && t.value + t.error <= tol) return R;
        }
        throw NonConvergent("density tail bound cannot certify tolerance");
    }

  private:
    void validate() const {
        for (const Atom& a : atoms_) {
            if (!(a.weight > 0.0)) throw Error("spectral measure: atom weights must be positive");
        }
        for (std::size_t i = 0; i < atoms_.size(); ++i)
            for (std::size_t j = i + 1; j < atoms_.size(); ++j)
                if (atoms_[i].location == atoms_[j].location)
                    throw Error("spectral measure: atom locations must be distinct");
        if (density_) {
            // spot-check nonnegativity on a fixed grid
            for (double l = -32.0; l <= 32.0; l += 0.5)
                if ((*density_)(l) < 0.0) throw Error("spectral measure: density must be >= 0");
        }
    }

    std::vector<Atom> atoms_;
    std::optional<Density> density_;
    GrowthClass growth_ = GrowthClass::Finite;
    int tempered_order_ = 1;
};

/**
 * Bochner transform f(x) = sum_j w_j e^{i l_j x} + int e^{i x l} rho(l) dl,
 * certified to absolute error tol. Finite measures only; tempered measures
 * must go through the cutoff overload.
 */
inline Complex bochner_eval(const SpectralMeasure& mu, double x, double tol = 1e-10) {
    if (mu.growth_class() != GrowthClass::Finite)
        throw TemperedWithoutCutoff("bochner_eval: pointwise evaluation of a tempered measure");
    Complex v = 0.0;
    for (const Atom& a : mu.atoms()) v += a.weight * std::polar(1.0, a.location * x);
    if (mu.density()) {
        const double R = mu.density_cutoff_for_mass(tol / 2.0);
        quad::Options opt;
        opt.abs_tol = tol / 2.0;
        v += quad::integrate_complex(
            [&](double l) { return (*mu.density())(l) * std::polar(1.0, x * l); }, -R, R, opt);
    }
    return v;
}

/** Regularized evaluation of a tempered measure: frequencies |l| > cutoff dropped. */
inline Complex bochner_eval_cutoff(const SpectralMeasure& mu, double x, double cutoff,
                                   double tol = 1e-10) {
    Complex v = 0.0;
    for (const Atom& a : mu.atoms())
        if (std::abs(a.location) <= cutoff) v += a.weight * std::polar(1.0, a.location * x);
    if (mu.density()) {
        quad::Options opt;
        opt.abs_tol = tol;
        v += quad::integrate_complex(
            [&](double l) { return (*mu.density())(l) * std::polar(1.0, x * l); }, -cutoff, cutoff,
            opt);
    }
    return v;
}

}  // namespace bochner
