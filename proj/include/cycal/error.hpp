#pragma once

#include <stdexcept>
#include <string>

namespace cycal {

// Error kinds surfaced through the CLI as stable machine-readable strings.
enum class errc {
    ring_mismatch,
    scheme_mismatch,
    bad_argument,
    zero_input,
    non_unit,
    not_maximal,
    not_prime_certified,
    positive_dimensional,
    codimension_violation,
    improper_intersection,
    good_position_failure,
    infinite_length,
    degree_bound,
    precision_loss,
    resource_limit,
    unsupported,
    parse_error,
    unknown_variable,
};

inline const char* errc_name(errc k)
{
    switch (k) {
        case errc::ring_mismatch: return "ring-mismatch";
        case errc::scheme_mismatch: return "scheme-mismatch";
        case errc::bad_argument: return "bad-argument";
        case errc::zero_input: return "zero-input";
        case errc::non_unit: return "non-unit";
        case errc::not_maximal: return "not-maximal";
        case errc::not_prime_certified: return "not-prime-certified";
        case errc::positive_dimensional: return "positive-dimensional";
        case errc::codimension_violation: return "codimension-violation";
        case errc::improper_intersection: return "improper-intersection";
        case errc::good_position_failure: return "good-position-failure";
        case errc::infinite_length: return "infinite-length";
        case errc::degree_bound: return "degree-bound";
        case errc::precision_loss: return "precision-loss";
        case errc::resource_limit: return "resource-limit";
        case errc::unsupported: return "unsupported";
        case errc::parse_error: return "parse-error";
        case errc::unknown_variable: return "unknown-variable";
    }
    return "unknown";
}

class error : public std::runtime_error {
  public:
    error(errc kind, const std::string& what)
        : std::runtime_error(what), kind_(kind)
    {
    }

    errc kind() const { return kind_; }
    const char* kind_name() const { return errc_name(kind_); }

  private:
    errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& what)
{
    throw error(kind, what);
}

}  // namespace cycal
