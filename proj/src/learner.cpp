#include "actuation/learner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace actuation {

void TokenBatch::validate() const {
    if (tokens.empty()) throw std::invalid_argument("TokenBatch: no tokens");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("TokenBatch: sigma must be > 0");
    for (const Token& t : tokens) {
        if (!std::isfinite(t.y)) throw std::invalid_argument("TokenBatch: non-finite token value");
        if (!(t.w >= 0.0) || !std::isfinite(t.w)) throw std::invalid_argument("TokenBatch: token weight must be >= 0");
    }
}

BatchStats summarize(const TokenBatch& batch) {
    BatchStats s;
    s.n = batch.tokens.size();
    double wy = 0.0;
    for (const Token& t : batch.tokens) {
        s.weight_sum += t.w;
        wy += t.w * t.y;
    }
    s.weighted_mean = s.weight_sum > 0.0 ? wy / s.weight_sum : 0.0;
    return s;
}

double posterior_log_density(double c, const TokenBatch& batch, const PriorSpec& prior,
                             const LexiconParams& lex) {
    batch.validate();
    double weight_sum = 0.0;
    double sq = 0.0;
    for (const Token& t : batch.tokens) {
        weight_sum += t.w;
        sq += t.w * (t.y - c) * (t.y - c);
    }
    double loglik = 0.0;
    if (weight_sum > 0.0) {
        const double scale = static_cast<double>(batch.tokens.size()) / weight_sum;
        loglik = -scale * sq / (2.0 * batch.sigma * batch.sigma);
    }
    return loglik + prior_log_density(c, prior, lex);
}

MapEstimator::MapEstimator(PriorSpec prior, LexiconParams lex, std::size_t grid_points, double tolerance)
    : prior_(prior), lex_(lex), domain_(search_domain(lex)), tolerance_(tolerance) {
    lex_.validate();
    prior_.validate();
    if (grid_points < 3) throw std::invalid_argument("MapEstimator: need at least 3 grid points");
    if (!(tolerance > 0.0)) throw std::invalid_argument("MapEstimator: tolerance must be > 0");
    prior_flat_ = prior_.family == PriorFamily::flat || endpoint_strength(prior_) == 0.0;
    spacing_ = (domain_.hi - domain_.lo) / static_cast<double>(grid_points - 1);
    grid_.resize(grid_points);
    prior_table_.resize(grid_points);
    for (std::size_t k = 0; k < grid_points; ++k) {
        grid_[k] = k + 1 == grid_points ? domain_.hi : domain_.lo + spacing_ * static_cast<double>(k);
        prior_table_[k] = prior_log_density(grid_[k], prior_, lex_);
    }
}

MapEstimator::Objective MapEstimator::objective_for(const BatchStats& stats, double sigma) const {
    if (stats.weight_sum <= 0.0) return {0.0, domain_.lo};
    return {static_cast<double>(stats.n) / (sigma * sigma), stats.weighted_mean};
}

double MapEstimator::evaluate(const Objective& obj, double c) const {
    const double d = c - obj.center;
    return -0.5 * obj.precision * d * d + prior_log_density(c, prior_, lex_);
}

double MapEstimator::golden_section(const Objective& obj, double lo, double hi) const {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = evaluate(obj, x1);
    double f2 = evaluate(obj, x2);
    while (hi - lo > tolerance_) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = evaluate(obj, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = evaluate(obj, x1);
        }
    }
    return 0.5 * (lo + hi);
}

double MapEstimator::grid_argmax(const BatchStats& stats, double sigma) const {
    const Objective obj = objective_for(stats, sigma);
    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid_.size(); ++k) {
        const double d = grid_[k] - obj.center;
        const double v = -0.5 * obj.precision * d * d + prior_table_[k];
        if (v > best_value) {
            best_value = v;
            best = k;
        }
    }
    return grid_[best];
}

double MapEstimator::estimate(const TokenBatch& batch) const {
    batch.validate();
    return estimate(summarize(batch), batch.sigma);
}

double MapEstimator::estimate(const BatchStats& stats, double sigma) const {
    const Objective obj = objective_for(stats, sigma);
    if (prior_flat_) {
        // Quadratic log-likelihood: the maximizer is the weighted mean.
        return obj.precision > 0.0 ? domain_.clamp(obj.center) : lex_.midpoint();
    }

    const std::size_t g = grid_.size();
    thread_local std::vector<double> values;
    values.resize(g);
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < g; ++k) {
        const double d = grid_[k] - obj.center;
        values[k] = -0.5 * obj.precision * d * d + prior_table_[k];
        best_value = std::max(best_value, values[k]);
    }

    // Competing modes of a bimodal posterior: refine every grid-local
    // maximum that is close enough to the best to overtake it.
    constexpr double kMargin = 0.5;
    constexpr std::size_t kMaxCandidates = 8;
    std::size_t candidates = 0;
    double best_c = domain_.lo;
    double best_f = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < g && candidates < kMaxCandidates; ++k) {
        const double v = values[k];
        if (v < best_value - kMargin) continue;
        const bool left_ok = k == 0 || v >= values[k - 1];
        const bool right_ok = k + 1 == g || v > values[k + 1];
        if (!left_ok || !right_ok) continue;
        ++candidates;
        const double lo = k == 0 ? grid_[0] : grid_[k - 1];
        const double hi = k + 1 == g ? grid_[g - 1] : grid_[k + 1];
        double c = golden_section(obj, lo, hi);
        double f = evaluate(obj, c);
        // The domain bounds themselves are admissible optima.
        if (k == 0 || k == 1) {
            const double fb = evaluate(obj, domain_.lo);
            if (fb >= f) { c = domain_.lo; f = fb; }
        }
        if (k + 1 >= g - 1) {
            const double fb = evaluate(obj, domain_.hi);
            if (fb > f) { c = domain_.hi; f = fb; }
        }
        if (f > best_f) {
            best_f = f;
            best_c = c;
        }
    }
    return best_c;
}

double map_estimate(const TokenBatch& batch, const PriorSpec& prior, const LexiconParams& lex) {
    return MapEstimator(prior, lex).estimate(batch);
}

}  // namespace actuation
