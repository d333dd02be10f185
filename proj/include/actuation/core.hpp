#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace actuation {

/// Raised for invalid scenario or sweep parameters. `key()` names the
/// offending configuration path (e.g. "prior.a", "axes[1].values").
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string key, const std::string& message)
        : std::invalid_argument(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

enum class Group : std::uint8_t { A = 0, B = 1 };

constexpr Group other(Group g) noexcept { return g == Group::A ? Group::B : Group::A; }
constexpr std::string_view to_string(Group g) noexcept { return g == Group::A ? "A" : "B"; }

/// Fixed F1 categories (Hz). V1 is /a/ (mean mu_a), V2 is /i/ (mean mu_i).
struct LexiconParams {
    double mu_a = 730.0;
    double mu_i = 530.0;
    double sigma_a = 50.0;
    double sigma_i = 50.0;

    void validate() const;
    double width() const noexcept { return mu_a - mu_i; }
    double midpoint() const noexcept { return 0.5 * (mu_a + mu_i); }

    friend bool operator==(const LexiconParams&, const LexiconParams&) = default;
};

/// Distance kept between the search domain and the category means.
inline constexpr double kDomainEpsilon = 0.5;

/// Closed interval every learned c is restricted to.
struct SearchDomain {
    double lo;
    double hi;

    double clamp(double c) const noexcept { return c < lo ? lo : (c > hi ? hi : c); }
    bool contains(double c) const noexcept { return c >= lo && c <= hi; }
};

SearchDomain search_domain(const LexiconParams& lex) noexcept;

enum class PriorFamily : std::uint8_t {
    flat,
    gaussian,  ///< centred on mu_a with SD tau
    endpoint,  ///< categoricity bias, strength scale*(1-a)/a
    beta,      ///< Beta(a, a)-shaped categoricity bias
};

std::string_view to_string(PriorFamily f) noexcept;
PriorFamily prior_family_from_string(std::string_view name);

/// Categoricity prior over c.
///
/// Both endpoint-type families share the symmetric U shape
/// `-k * [ln u + ln(1 - u)]` with `u = (c - mu_i) / (mu_a - mu_i)`:
///  - `beta`:     k = 1 - a
///  - `endpoint`: k = scale * (1 - a) / a
/// In both, a = 1 is flat and smaller a is a stronger preference for the
/// endpoints. The two coincide at a = scale (default 0.01).
struct PriorSpec {
    PriorFamily family = PriorFamily::endpoint;
    double a = 0.02;
    double tau = 50.0;
    double scale = 0.01;

    void validate() const;

    friend bool operator==(const PriorSpec&, const PriorSpec&) = default;
};

/// Coefficient k of -ln[u(1-u)] for the endpoint-type families (0 otherwise).
double endpoint_strength(const PriorSpec& prior) noexcept;

/// Unnormalized log prior density at c. Throws std::domain_error for
/// non-finite c, or c outside the search domain for endpoint-type families.
double prior_log_density(double c, const PriorSpec& prior, const LexiconParams& lex);

/// One speaker/learner.
struct Agent {
    double c = 0.0;
    Group group = Group::A;
    double w = 1.0;  ///< individual social weight (Model 4)

    friend bool operator==(const Agent&, const Agent&) = default;
};

}  // namespace actuation
