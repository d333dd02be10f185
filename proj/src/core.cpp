#include "actuation/core.hpp"

#include <cmath>

namespace actuation {

void LexiconParams::validate() const {
    if (!std::isfinite(mu_a) || !std::isfinite(mu_i)) throw ConfigError("lexicon", "category means must be finite");
    if (!(mu_i < mu_a)) throw ConfigError("lexicon.mu_i", "mu_i must be below mu_a");
    if (!(mu_a - mu_i > 2.0 * kDomainEpsilon))
        throw ConfigError("lexicon", "category means are too close for the search domain");
    if (!(sigma_a > 0.0) || !std::isfinite(sigma_a)) throw ConfigError("lexicon.sigma_a", "must be > 0");
    if (!(sigma_i > 0.0) || !std::isfinite(sigma_i)) throw ConfigError("lexicon.sigma_i", "must be > 0");
}

SearchDomain search_domain(const LexiconParams& lex) noexcept {
    return {lex.mu_i + kDomainEpsilon, lex.mu_a - kDomainEpsilon};
}

std::string_view to_string(PriorFamily f) noexcept {
    switch (f) {
        case PriorFamily::flat: return "flat";
        case PriorFamily::gaussian: return "gaussian";
        case PriorFamily::endpoint: return "endpoint";
        case PriorFamily::beta: return "beta";
    }
    return "unknown";
}

PriorFamily prior_family_from_string(std::string_view name) {
    if (name == "flat") return PriorFamily::flat;
    if (name == "gaussian") return PriorFamily::gaussian;
    if (name == "endpoint") return PriorFamily::endpoint;
    if (name == "beta") return PriorFamily::beta;
    throw ConfigError("prior.family", "unknown prior family '" + std::string(name) + "'");
}

void PriorSpec::validate() const {
    if (family == PriorFamily::flat) return;
    if (family == PriorFamily::gaussian) {
        if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("prior.tau", "must be > 0");
        return;
    }
    if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("prior.a", "must be > 0");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("prior.scale", "must be > 0");
}

double endpoint_strength(const PriorSpec& prior) noexcept {
    switch (prior.family) {
        case PriorFamily::beta: return 1.0 - prior.a;
        case PriorFamily::endpoint: return prior.scale * (1.0 - prior.a) / prior.a;
        default: return 0.0;
    }
}

double prior_log_density(double c, const PriorSpec& prior, const LexiconParams& lex) {
    if (!std::isfinite(c)) throw std::domain_error("prior_log_density: c is not finite");
    switch (prior.family) {
        case PriorFamily::flat: return 0.0;
        case PriorFamily::gaussian: {
            const double d = c - lex.mu_a;
            return -d * d / (2.0 * prior.tau * prior.tau);
        }
        case PriorFamily::endpoint:
        case PriorFamily::beta: {
            if (!search_domain(lex).contains(c))
                throw std::domain_error("prior_log_density: c outside the search domain");
            const double u = (c - lex.mu_i) / lex.width();
            return -endpoint_strength(prior) * (std::log(u) + std::log1p(-u));
        }
    }
    return 0.0;
}

}  // namespace actuation
