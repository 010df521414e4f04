#pragma once

#include <stdexcept>
#include <string>

namespace fmpkit {

struct NotPositiveDefinite : std::runtime_error {
    explicit NotPositiveDefinite(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct NonPositiveInput : std::invalid_argument {
    explicit NonPositiveInput(const std::string& what) : std::invalid_argument(what) {}
};

struct NonPositiveDenominator : std::invalid_argument {
    explicit NonPositiveDenominator(const std::string& what) : std::invalid_argument(what) {}
};

struct OutOfRange : std::invalid_argument {
    explicit OutOfRange(const std::string& what) : std::invalid_argument(what) {}
};

struct NonPositiveRate : std::runtime_error {
    explicit NonPositiveRate(const std::string& what) : std::runtime_error(what) {}
};

struct MultiStreamNotSupported : std::invalid_argument {
    explicit MultiStreamNotSupported(const std::string& what) : std::invalid_argument(what) {}
};

struct InfeasibleExpansion : std::runtime_error {
    explicit InfeasibleExpansion(const std::string& what) : std::runtime_error(what) {}
};

struct InfeasibleInit : std::runtime_error {
    explicit InfeasibleInit(const std::string& what) : std::runtime_error(what) {}
};

struct NonPositiveTermValue : std::runtime_error {
    explicit NonPositiveTermValue(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedKindConfig : std::invalid_argument {
    explicit UnsupportedKindConfig(const std::string& what) : std::invalid_argument(what) {}
};

struct BelowReferenceDistance : std::invalid_argument {
    explicit BelowReferenceDistance(const std::string& what) : std::invalid_argument(what) {}
};

struct ConfigInvalid : std::invalid_argument {
    explicit ConfigInvalid(const std::string& field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_path(field) {}
    std::string field_path;
};

}  // namespace fmpkit
