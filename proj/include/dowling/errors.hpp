#ifndef DOWLING_ERRORS_HPP
#define DOWLING_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dowling
{

// Every failure raised by the library derives from dowling::error so callers
// can catch the whole family at once; the concrete type names the contract
// that was broken.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_argument : error {
    using error::error;
};

// Cayley-table validation failure. `kind` is one of "shape", "range",
// "identity", "associativity", "latin".
struct validation_error : error {
    validation_error(std::string kind_, const std::string &what) : error(what), kind(std::move(kind_)) {}
    std::string kind;
};

struct incompatible_series : error {
    using error::error;
};

struct not_invertible : error {
    using error::error;
};

struct plethysm_domain_error : error {
    using error::error;
};

struct not_plethystically_invertible : error {
    using error::error;
};

struct composition_error : error {
    using error::error;
};

struct grading_error : error {
    using error::error;
};

struct incomplete_class_function : error {
    using error::error;
};

struct contract_error : error {
    using error::error;
};

struct domain_error : error {
    using error::error;
};

struct hypothesis_violation : error {
    using error::error;
};

struct unsupported_family : error {
    using error::error;
};

struct usage_error : error {
    using error::error;
};

struct budget_exceeded : error {
    budget_exceeded(const std::string &what, long long estimate_) : error(what), estimate(estimate_) {}
    long long estimate;
};

} // namespace dowling

#endif
