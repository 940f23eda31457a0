#include "hyperfront/growth.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "hyperfront/errors.hpp"

namespace hyperfront {

namespace {

constexpr double kClampSlack = 1e-12;

double clamp_unit(double rho) {
    if (rho < 0.0) {
        if (rho < -kClampSlack)
            throw std::domain_error("growth function evaluated below 0: rho = " +
                                    std::to_string(rho));
        return 0.0;
    }
    if (rho > 1.0) {
        if (rho > 1.0 + kClampSlack)
            throw std::domain_error("growth function evaluated above 1: rho = " +
                                    std::to_string(rho));
        return 1.0;
    }
    return rho;
}

}  // namespace

GrowthFunction GrowthFunction::logistic(double rate) {
    if (!(rate > 0.0)) throw ValidationError("logistic growth needs rate > 0");
    GrowthFunction g;
    g.kind_ = Kind::Logistic;
    g.rate_ = rate;
    g.fprime0_ = rate;
    g.fprime1_ = -rate;
    g.alpha_ = 2.0 * rate;  // -F'' = 2r exactly
    return g;
}

GrowthFunction GrowthFunction::analytic(std::function<double(double)> f,
                                        std::function<double(double)> df,
                                        std::function<double(double)> d2f) {
    if (!f || !df || !d2f) throw ValidationError("analytic growth needs all of F, F', F''");
    GrowthFunction g;
    g.kind_ = Kind::Analytic;
    g.f_ = std::move(f);
    g.df_ = std::move(df);
    g.d2f_ = std::move(d2f);
    g.fprime0_ = g.df_(0.0);
    g.fprime1_ = g.df_(1.0);
    // Concavity bound sampled on a fixed fine grid; exactness is not needed,
    // only a positive lower bound for regime formulas and validation.
    const int n = 2001;
    double alpha = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double rho = static_cast<double>(i) / (n - 1);
        alpha = std::min(alpha, -g.d2f_(rho));
    }
    g.alpha_ = alpha;
    return g;
}

double GrowthFunction::evaluate(double rho, int order) const {
    const double r = clamp_unit(rho);
    if (kind_ == Kind::Logistic) {
        switch (order) {
            case 0: return rate_ * r * (1.0 - r);
            case 1: return rate_ * (1.0 - 2.0 * r);
            case 2: return -2.0 * rate_;
            default: break;
        }
    } else {
        switch (order) {
            case 0: return f_(r);
            case 1: return df_(r);
            case 2: return d2f_(r);
            default: break;
        }
    }
    throw ValidationError("growth derivative order must be 0, 1 or 2");
}

std::string GrowthValidation::summary() const {
    std::ostringstream os;
    os << (pass() ? "pass" : "FAIL") << " (roots " << (roots_ok ? "ok" : "bad")
       << ", positivity " << (positive_ok ? "ok" : "bad") << ", concavity "
       << (concave_ok ? "ok" : "bad") << ", end slopes " << (end_slopes_ok ? "ok" : "bad")
       << "; alpha ~ " << alpha_estimate << ", F'(0) = " << fprime0
       << ", F'(1) = " << fprime1 << ")";
    return os.str();
}

GrowthValidation validate(const GrowthFunction& g, int samples) {
    if (samples < 3) throw ValidationError("validate: need at least 3 samples");
    GrowthValidation rep;
    rep.fprime0 = g.fprime0();
    rep.fprime1 = g.fprime1();
    rep.roots_ok = std::abs(g(0.0)) <= 1e-12 && std::abs(g(1.0)) <= 1e-12;
    rep.end_slopes_ok = rep.fprime0 > 0.0 && rep.fprime1 < 0.0;
    bool positive = true;
    double alpha = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double rho = static_cast<double>(i) / (samples - 1);
        if (i > 0 && i + 1 < samples && !(g(rho) > 0.0)) positive = false;
        alpha = std::min(alpha, -g.second_derivative(rho));
    }
    rep.positive_ok = positive;
    rep.alpha_estimate = alpha;
    rep.concave_ok = alpha > 0.0;
    return rep;
}

}  // namespace hyperfront
