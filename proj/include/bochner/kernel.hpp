#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bochner/errors.hpp"
#include "bochner/spectral_measure.hpp"

namespace bochner {

/** How a regularized Fourier series is summed. */
enum class Regularization { Truncate, Fejer };

/**
 * A positive definite function or tempered p.d. distribution, presented in
 * closed form, as the Bochner transform of a measure, or as a regularized
 * frequency series.
 */
class PdKernel {
  public:
    enum class Form { ClosedForm, BochnerOf, RegularizedSeries };
    enum class Continuity { Continuous, TemperedDistribution };

    PdKernel() = default;

    /** Closed-form kernel; kinks lists argument values where f has a corner. */
    static PdKernel closed_form(std::string name, std::function<Complex(double)> f,
                                std::vector<double> kinks = {}) {
        PdKernel k;
        k.form_ = Form::ClosedForm;
        k.continuity_ = Continuity::Continuous;
        k.name_ = std::move(name);
        k.fn_ = std::move(f);
        k.kinks_ = std::move(kinks);
        return k;
    }

    static PdKernel bochner_of(SpectralMeasure mu, std::string name = "bochner") {
        PdKernel k;
        k.form_ = Form::BochnerOf;
        k.continuity_ = mu.growth_class() == GrowthClass::Finite
                            ? Continuity::Continuous
                            : Continuity::TemperedDistribution;
        k.name_ = std::move(name);
        k.measure_ = std::make_shared<SpectralMeasure>(std::move(mu));
        return k;
    }

    /** f(x) = sum over listed frequencies of w(l) e^{i l x}, unit atom weights. */
    static PdKernel regularized_series(std::vector<double> frequencies, Regularization reg,
                                       double cutoff, std::string name = "series") {
        PdKernel k;
        k.form_ = Form::RegularizedSeries;
        k.continuity_ = Continuity::TemperedDistribution;
        k.name_ = std::move(name);
        k.freqs_ = std::move(frequencies);
        k.reg_ = reg;
        k.cutoff_ = cutoff;
        return k;
    }

    Form form() const { return form_; }
    Continuity continuity_class() const { return continuity_; }
    const std::string& name() const { return name_; }
    const std::vector<double>& kinks() const { return kinks_; }
    const std::vector<double>& frequencies() const { return freqs_; }
    Regularization regularization() const { return reg_; }
    double series_cutoff() const { return cutoff_; }

    bool has_measure() const { return measure_ != nullptr; }
    const SpectralMeasure& measure() const {
        if (!measure_) throw Error("kernel carries no spectral measure");
        return *measure_;
    }

    /** Fejer weight for frequency l at this kernel's cutoff N: max(0, 1-|l|/(N+1)). */
    double series_weight(double l) const {
        if (std::abs(l) > cutoff_) return 0.0;
        if (reg_ == Regularization::Truncate) return 1.0;
        return std::max(0.0, 1.0 - std::abs(l) / (cutoff_ + 1.0));
    }

    Complex operator()(double x) const {
        switch (form_) {
            case Form::ClosedForm:
                return fn_(x);
            case Form::BochnerOf:
                return bochner_eval(*measure_, x);  // throws for tempered measures
            case Form::RegularizedSeries: {
                Complex v = 0.0;
                for (double l : freqs_) v += series_weight(l) * std::polar(1.0, l * x);
                return v;
            }
        }
        return 0.0;
    }

  private:
    Form form_ = Form::ClosedForm;
    Continuity continuity_ = Continuity::Continuous;
    std::string name_;
    std::function<Complex(double)> fn_;
    std::vector<double> kinks_;
    std::shared_ptr<const SpectralMeasure> measure_;
    std::vector<double> freqs_;
    Regularization reg_ = Regularization::Truncate;
    double cutoff_ = 0.0;
};

/** Gram matrix G[i][j] = f(x_i - x_j); Hermitian by construction. */
inline Eigen::MatrixXcd gram_matrix(const PdKernel& kernel, std::span<const double> points) {
    if (kernel.continuity_class() != PdKernel::Continuity::Continuous)
        throw TemperedWithoutCutoff("gram_matrix requires a continuous kernel");
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        g(i, i) = kernel(0.0);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const Complex v = kernel(points[i] - points[j]);
            g(i, j) = v;
            g(j, i) = std::conj(v);
        }
    }
    return g;
}

struct PsdReport {
    bool is_psd = false;
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
};

/**
 * Positive semidefiniteness test with a threshold relative to the spectral
 * radius: is_psd = (min eig >= -rel_tol * max(1, max eig)). Throws
 * NotHermitian when the matrix deviates from its adjoint beyond rel_tol.
 */
inline PsdReport psd_check(const Eigen::MatrixXcd& g, double rel_tol = 1e-10) {
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    const double herm_dev = (g - g.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > rel_tol * scale)
        throw NotHermitian("psd_check: matrix is not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (g + g.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    PsdReport r;
    r.min_eigenvalue = es.eigenvalues().minCoeff();
    r.max_eigenvalue = es.eigenvalues().maxCoeff();
    r.is_psd = r.min_eigenvalue >= -rel_tol * std::max(1.0, r.max_eigenvalue);
    return r;
}

}  // namespace bochner
