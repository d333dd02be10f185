#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "actuation/core.hpp"

namespace actuation {

/// One transmitted token: an F1 value and its social weight.
struct Token {
    double y = 0.0;
    double w = 1.0;
};

/// Non-owning view of a learner's data. Weights must be finite and >= 0.
struct TokenBatch {
    std::span<const Token> tokens;
    double sigma = 50.0;  ///< production SD assumed by the learner

    void validate() const;
};

/// Sufficient statistics of a batch for the weighted Gaussian likelihood.
struct BatchStats {
    std::size_t n = 0;
    double weight_sum = 0.0;
    double weighted_mean = 0.0;  ///< meaningless when weight_sum == 0
};

BatchStats summarize(const TokenBatch& batch);

/// Weighted log posterior (unnormalized):
///   -(n / sum w) * sum_i w_i (y_i - c)^2 / (2 sigma^2) + log prior(c).
/// Weights are renormalized to mean one, so multiplying every weight by the
/// same constant leaves the posterior unchanged.
double posterior_log_density(double c, const TokenBatch& batch, const PriorSpec& prior,
                             const LexiconParams& lex);

/// Global MAP search over the clamped domain: a uniform grid, then
/// golden-section refinement inside the bracketing cell of each competitive
/// grid maximum. The prior is tabulated on the grid once per estimator, so
/// one estimator is meant to be reused for many batches (and shared between
/// threads; it is immutable after construction).
class MapEstimator {
public:
    static constexpr std::size_t kDefaultGridPoints = 2048;
    static constexpr double kDefaultTolerance = 1e-3;

    MapEstimator(PriorSpec prior, LexiconParams lex, std::size_t grid_points = kDefaultGridPoints,
                 double tolerance = kDefaultTolerance);

    double estimate(const TokenBatch& batch) const;
    double estimate(const BatchStats& stats, double sigma) const;

    /// Best grid point only, without refinement.
    double grid_argmax(const BatchStats& stats, double sigma) const;

    const PriorSpec& prior() const noexcept { return prior_; }
    const LexiconParams& lexicon() const noexcept { return lex_; }
    SearchDomain domain() const noexcept { return domain_; }
    double grid_spacing() const noexcept { return spacing_; }

private:
    struct Objective {
        double precision;  ///< n / sigma^2, zero when the batch carries no weight
        double center;
    };

    Objective objective_for(const BatchStats& stats, double sigma) const;
    double evaluate(const Objective& obj, double c) const;
    double golden_section(const Objective& obj, double lo, double hi) const;

    PriorSpec prior_;
    LexiconParams lex_;
    SearchDomain domain_;
    bool prior_flat_;
    double spacing_;
    double tolerance_;
    std::vector<double> grid_;
    std::vector<double> prior_table_;
};

/// Convenience wrapper; builds a fresh estimator per call.
double map_estimate(const TokenBatch& batch, const PriorSpec& prior, const LexiconParams& lex);

}  // namespace actuation
