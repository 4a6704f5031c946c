#pragma once

#include <stdexcept>
#include <string>

namespace levyup {

// Base of every error raised by the library. `kind()` is a stable
// machine-readable tag used by the CLI error record.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define LEVYUP_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& what) : Error(#Name, what) {}   \
    };

LEVYUP_DEFINE_ERROR(QuadratureFailure)
LEVYUP_DEFINE_ERROR(EvaluationFailure)
LEVYUP_DEFINE_ERROR(DegenerateSymbol)
LEVYUP_DEFINE_ERROR(InverseFailure)
LEVYUP_DEFINE_ERROR(IndeterminateBracket)
LEVYUP_DEFINE_ERROR(RateOverflow)
LEVYUP_DEFINE_ERROR(InvalidModel)
LEVYUP_DEFINE_ERROR(PreconditionViolated)

#undef LEVYUP_DEFINE_ERROR

}  // namespace levyup
