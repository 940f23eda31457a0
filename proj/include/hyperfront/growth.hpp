#pragma once

#include <functional>
#include <string>

namespace hyperfront {

/// Monostable reaction term F on [0,1]:
///   F(0) = F(1) = 0,  F > 0 on (0,1),  F'(0) > 0,  F'(1) < 0,
/// with uniformly concave graph (inf(-F'') > 0).
///
/// Immutable after construction.  Evaluation clamps arguments within 1e-12 of
/// [0,1] and rejects anything further outside.
class GrowthFunction {
  public:
    enum class Kind { Logistic, Analytic };

    /// F(rho) = rate * rho * (1 - rho); derivatives are exact closed forms.
    static GrowthFunction logistic(double rate);

    /// User-supplied C^2 triple (F, F', F'').  Slopes at the ends and the
    /// concavity bound are sampled numerically at construction.
    static GrowthFunction analytic(std::function<double(double)> f,
                                   std::function<double(double)> df,
                                   std::function<double(double)> d2f);

    /// d^order F / d rho^order for order in {0, 1, 2}.
    double evaluate(double rho, int order) const;

    double operator()(double rho) const { return evaluate(rho, 0); }
    double derivative(double rho) const { return evaluate(rho, 1); }
    double second_derivative(double rho) const { return evaluate(rho, 2); }

    Kind kind() const { return kind_; }
    /// Logistic rate r; meaningless for analytic kind.
    double rate() const { return rate_; }
    /// Growth rate of the invaded state, F'(0).
    double fprime0() const { return fprime0_; }
    /// Decay rate of the settled state, F'(1).
    double fprime1() const { return fprime1_; }
    /// Concavity bound alpha = inf_[0,1] (-F'').
    double alpha() const { return alpha_; }

  private:
    GrowthFunction() = default;

    Kind kind_ = Kind::Logistic;
    double rate_ = 1.0;
    std::function<double(double)> f_, df_, d2f_;
    double fprime0_ = 0.0, fprime1_ = 0.0, alpha_ = 0.0;
};

/// Result of sampling the monostability requirements over a uniform grid.
struct GrowthValidation {
    bool roots_ok = false;       ///< F(0) = F(1) = 0 (within 1e-12)
    bool positive_ok = false;    ///< F > 0 on the sampled interior
    bool concave_ok = false;     ///< -F'' >= alpha_min > 0 everywhere sampled
    bool end_slopes_ok = false;  ///< F'(0) > 0 and F'(1) < 0
    double alpha_estimate = 0.0;
    double fprime0 = 0.0;
    double fprime1 = 0.0;

    bool pass() const { return roots_ok && positive_ok && concave_ok && end_slopes_ok; }
    std::string summary() const;
};

/// Check the monostability requirements on `samples` uniformly spaced points.
GrowthValidation validate(const GrowthFunction& g, int samples = 1001);

}  // namespace hyperfront
