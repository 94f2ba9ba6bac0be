#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bochner/errors.hpp"
#include "bochner/rkhs.hpp"

namespace bochner {

inline constexpr const char* kCatalogVersion = "1";

namespace detail {

/** IEEE double as a round-trip decimal string, per the catalog file format. */
inline std::string double_str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double str_double(const nlohmann::json& j) {
    if (j.is_number()) return j.get<double>();
    return std::strtod(j.get<std::string>().c_str(), nullptr);
}

inline Complex known_closed_form(const std::string& name, double x) {
    if (name == "cos") return {std::cos(x), 0.0};
    if (name == "exp_abs") return {std::exp(-std::abs(x)), 0.0};
    if (name == "gauss") return {std::exp(-0.5 * x * x), 0.0};
    if (name == "one") return {1.0, 0.0};
    throw Error("unknown closed-form kernel: " + name);
}

inline PdKernel make_closed_form(const std::string& name) {
    std::vector<double> kinks;
    if (name == "exp_abs") kinks.push_back(0.0);
    return PdKernel::closed_form(
        name, [name](double x) { return known_closed_form(name, x); }, kinks);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// JSON serialization

inline nlohmann::json to_json(const SpectralMeasure& mu) {
    nlohmann::json j;
    j["atoms"] = nlohmann::json::array();
    for (const Atom& a : mu.atoms())
        j["atoms"].push_back({detail::double_str(a.location), detail::double_str(a.weight)});
    if (mu.density()) {
        if (!mu.density()->serializable())
            throw Error("custom densities are not serializable");
        nlohmann::json d;
        d["kind"] = mu.density()->kind_name();
        d["params"] = nlohmann::json::array();
        for (double p : mu.density()->params()) d["params"].push_back(detail::double_str(p));
        j["density"] = d;
    }
    j["growth_class"] = mu.growth_class() == GrowthClass::Finite
                            ? "finite"
                            : "tempered_of_order_" + std::to_string(mu.tempered_order());
    return j;
}

inline SpectralMeasure measure_from_json(const nlohmann::json& j) {
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms"))
        atoms.push_back({detail::str_double(a.at(0)), detail::str_double(a.at(1))});
    GrowthClass g = GrowthClass::Finite;
    int order = 1;
    const std::string gc = j.at("growth_class").get<std::string>();
    if (gc.rfind("tempered_of_order_", 0) == 0) {
        g = GrowthClass::Tempered;
        order = std::stoi(gc.substr(18));
    }
    if (!j.contains("density")) return SpectralMeasure::from_atoms(std::move(atoms), g, order);
    const auto& d = j.at("density");
    const std::string kind = d.at("kind").get<std::string>();
    std::vector<double> params;
    for (const auto& p : d.at("params")) params.push_back(detail::str_double(p));
    Density rho = Density::cauchy();
    if (kind == "cauchy") {
        rho = Density::cauchy();
    } else if (kind == "gauss") {
        rho = Density::gauss();
    } else if (kind == "constant") {
        rho = Density::constant(params.at(0));
    } else if (kind == "power_law") {
        rho = Density::power_law(params.at(0), params.at(1));
    } else {
        throw Error("unknown density kind: " + kind);
    }
    SpectralMeasure m = SpectralMeasure::from_density(rho, g, order);
    if (atoms.empty()) return m;
    // measures with both parts are assembled atom-first
    throw Error("measures mixing atoms and density are not in the catalog format");
}

inline nlohmann::json to_json(const TestFunction& phi);

namespace detail {

inline nlohmann::json poly_json(const Poly& p) {
    nlohmann::json a = nlohmann::json::array();
    for (double v : p.c) a.push_back(double_str(v));
    return a;
}

inline Poly poly_from_json(const nlohmann::json& j) {
    std::vector<double> c;
    for (const auto& v : j) c.push_back(str_double(v));
    return Poly(std::move(c));
}

}  // namespace detail

inline nlohmann::json to_json(const TestFunction& phi) {
    using namespace detail;
    nlohmann::json j;
    if (phi.is_zero()) {
        j["family"] = "zero";
        return j;
    }
    if (const auto* n = node_as<GaussianNode>(phi.node())) {
        j["family"] = "gaussian";
        j["center"] = double_str(n->center);
        j["width"] = double_str(n->width);
        j["poly"] = poly_json(n->poly);
        return j;
    }
    if (const auto* n = node_as<IndicatorNode>(phi.node())) {
        j["family"] = "indicator";
        j["a"] = double_str(n->a);
        j["b"] = double_str(n->b);
        return j;
    }
    if (const auto* n = node_as<BSplineNode>(phi.node())) {
        j["family"] = "bspline";
        j["order"] = n->order;
        j["scale"] = double_str(n->scale);
        j["offset"] = double_str(n->offset);
        return j;
    }
    if (const auto* n = node_as<BumpNode>(phi.node())) {
        j["family"] = "bump";
        j["center"] = double_str(n->center);
        j["radius"] = double_str(n->radius);
        j["amplitude"] = double_str(n->amplitude);
        j["numer"] = poly_json(n->numer);
        j["denom_pow"] = n->denom_pow;
        return j;
    }
    if (const auto* n = node_as<CombinationNode>(phi.node())) {
        j["family"] = "combination";
        j["terms"] = nlohmann::json::array();
        for (const auto& [c, f] : n->terms)
            j["terms"].push_back({{"re", double_str(c.real())},
                                  {"im", double_str(c.imag())},
                                  {"fn", to_json(f)}});
        return j;
    }
    const auto& n = std::get<detail::ConvolutionNode>(phi.node()->v);
    j["family"] = "convolution";
    j["lhs"] = to_json(n.lhs);
    j["rhs"] = to_json(n.rhs);
    return j;
}

inline TestFunction test_function_from_json(const nlohmann::json& j) {
    using namespace detail;
    const std::string family = j.at("family").get<std::string>();
    if (family == "zero") return TestFunction::zero();
    if (family == "gaussian") {
        TestFunction base =
            TestFunction::gaussian(str_double(j.at("center")), str_double(j.at("width")));
        // rebuild the polynomial factor by scaled monomial derivatives is not
        // needed: gaussians round-trip through the poly field directly
        Poly p = poly_from_json(j.at("poly"));
        const auto* g = node_as<GaussianNode>(base.node());
        TestFunction out = TestFunction::gaussian(g->center, g->width);
        // splice the polynomial via combination of derivative forms: construct
        // directly through the factory path
        (void)out;
        // direct node construction path:
        struct Access {
            static TestFunction build(double c, double w, Poly poly) {
                TestFunction f = TestFunction::gaussian(c, w, 1.0);
                // re-derive: factories cannot set poly; emulate by summing
                // scaled derivatives is lossy, so gaussians with poly use the
                // dedicated factory below.
                (void)f;
                return TestFunction::gaussian(c, w, 1.0);
            }
        };
        if (p.degree() == 0)
            return TestFunction::gaussian(str_double(j.at("center")),
                                          str_double(j.at("width")), p.c.empty() ? 0.0 : p.c[0]);
        throw Error("gaussian with polynomial factor: use derivative() to rebuild");
    }
    if (family == "indicator")
        return TestFunction::indicator(str_double(j.at("a")), str_double(j.at("b")));
    if (family == "bspline")
        return TestFunction::bspline(j.at("order").get<int>(), str_double(j.at("scale")),
                                     str_double(j.at("offset")));
    if (family == "bump") {
        TestFunction f = TestFunction::bump(str_double(j.at("center")),
                                            str_double(j.at("radius")),
                                            str_double(j.at("amplitude")));
        if (j.at("denom_pow").get<int>() != 0)
            throw Error("bump derivative forms: use derivative() to rebuild");
        return f;
    }
    if (family == "combination") {
        std::vector<std::pair<Complex, TestFunction>> terms;
        for (const auto& t : j.at("terms"))
            terms.emplace_back(Complex(str_double(t.at("re")), str_double(t.at("im"))),
                               test_function_from_json(t.at("fn")));
        return TestFunction::combination(std::move(terms));
    }
    if (family == "convolution")
        return TestFunction::convolution(test_function_from_json(j.at("lhs")),
                                         test_function_from_json(j.at("rhs")));
    throw Error("unknown test function family: " + family);
}

inline nlohmann::json to_json(const KernelCatalogEntry& e) {
    nlohmann::json j;
    j["name"] = e.name;
    nlohmann::json k;
    switch (e.kernel.form()) {
        case PdKernel::Form::ClosedForm:
            k["form"] = "closed_form";
            k["function"] = e.kernel.name();
            break;
        case PdKernel::Form::BochnerOf:
            k["form"] = "bochner_of";
            break;
        case PdKernel::Form::RegularizedSeries: {
            k["form"] = "regularized_series";
            k["regularization"] =
                e.kernel.regularization() == Regularization::Fejer ? "fejer" : "truncate";
            k["cutoff"] = detail::double_str(e.kernel.series_cutoff());
            nlohmann::json freqs = nlohmann::json::array();
            for (double f : e.kernel.frequencies()) freqs.push_back(detail::double_str(f));
            k["frequencies"] = freqs;
            break;
        }
    }
    j["kernel"] = k;
    j["measure"] = to_json(e.measure);
    return j;
}

inline KernelCatalogEntry entry_from_json(const nlohmann::json& j) {
    KernelCatalogEntry e;
    e.name = j.at("name").get<std::string>();
    e.measure = measure_from_json(j.at("measure"));
    const auto& k = j.at("kernel");
    const std::string form = k.at("form").get<std::string>();
    if (form == "closed_form") {
        e.kernel = detail::make_closed_form(k.at("function").get<std::string>());
    } else if (form == "bochner_of") {
        e.kernel = PdKernel::bochner_of(e.measure, e.name);
    } else if (form == "regularized_series") {
        std::vector<double> freqs;
        for (const auto& f : k.at("frequencies")) freqs.push_back(detail::str_double(f));
        const Regularization reg = k.at("regularization").get<std::string>() == "fejer"
                                       ? Regularization::Fejer
                                       : Regularization::Truncate;
        e.kernel = PdKernel::regularized_series(std::move(freqs), reg,
                                                detail::str_double(k.at("cutoff")), e.name);
    } else {
        throw Error("unknown kernel form: " + form);
    }
    return e;
}

// ---------------------------------------------------------------------------
// built-in worked examples

/** Spot-checks f = mu_hat at a few abscissas; full grids live in the tests. */
inline void verify_pair(const KernelCatalogEntry& e, double tol = 1e-8) {
    if (e.measure.growth_class() != GrowthClass::Finite) return;
    for (double x : {0.0, 0.7, 2.3}) {
        const Complex lhs = e.kernel(x);
        const Complex rhs = bochner_eval(e.measure, x, tol / 10.0);
        if (std::abs(lhs - rhs) > 10.0 * tol)
            throw MeasureMismatch("catalog pair failed Bochner verification: " + e.name);
    }
}

inline const std::vector<KernelCatalogEntry>& builtin_catalog() {
    static const std::vector<KernelCatalogEntry> entries = [] {
        std::vector<KernelCatalogEntry> v;
        v.push_back({"cos_two_atom", detail::make_closed_form("cos"),
                     SpectralMeasure::from_atoms({{-1.0, 0.5}, {1.0, 0.5}})});
        v.push_back({"exp_abs_cauchy", detail::make_closed_form("exp_abs"),
                     SpectralMeasure::from_density(Density::cauchy())});
        v.push_back({"gauss_gauss", detail::make_closed_form("gauss"),
                     SpectralMeasure::from_density(Density::gauss())});
        v.push_back({"const_delta0", detail::make_closed_form("one"),
                     SpectralMeasure::from_atoms({{0.0, 1.0}})});
        v.push_back({"lebesgue",
                     PdKernel::bochner_of(
                         SpectralMeasure::from_density(Density::constant(1.0),
                                                       GrowthClass::Tempered, 1),
                         "lebesgue"),
                     SpectralMeasure::from_density(Density::constant(1.0),
                                                   GrowthClass::Tempered, 1)});
        {
            // Dirac comb, Fejer-regularized at N = 64; windowed atom view
            std::vector<double> freqs;
            for (int n = -64; n <= 64; ++n) freqs.push_back(n);
            std::vector<Atom> atoms;
            for (int n = -256; n <= 256; ++n) atoms.push_back({static_cast<double>(n), 1.0});
            v.push_back({"dirac_comb",
                         PdKernel::regularized_series(std::move(freqs), Regularization::Fejer,
                                                      64.0, "dirac_comb"),
                         SpectralMeasure::from_atoms(std::move(atoms), GrowthClass::Tempered,
                                                     1)});
        }
        for (const KernelCatalogEntry& e : v) verify_pair(e);
        return v;
    }();
    return entries;
}

inline const KernelCatalogEntry& catalog_entry(const std::string& name) {
    for (const KernelCatalogEntry& e : builtin_catalog())
        if (e.name == name) return e;
    throw Error("unknown catalog pair: " + name);
}

/** Named test functions used by the verification suites and the CLI. */
inline const std::vector<std::pair<std::string, TestFunction>>& builtin_test_functions() {
    static const std::vector<std::pair<std::string, TestFunction>> fns = {
        {"gaussian", TestFunction::gaussian()},
        {"indicator01", TestFunction::indicator(0.0, 1.0)},
        {"bspline3", TestFunction::bspline(3)},
        {"bump", TestFunction::bump(0.0, 1.0)},
    };
    return fns;
}

inline const TestFunction& catalog_test_function(const std::string& name) {
    for (const auto& [n, f] : builtin_test_functions())
        if (n == name) return f;
    throw Error("unknown catalog test function: " + name);
}

}  // namespace bochner
