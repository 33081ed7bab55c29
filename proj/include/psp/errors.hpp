#pragma once

#include <stdexcept>
#include <string>

namespace psp {

struct ZeroDivisorError : std::runtime_error {
    explicit ZeroDivisorError(const std::string& what) : std::runtime_error(what) {}
};

struct GridTooSmallError : std::runtime_error {
    explicit GridTooSmallError(const std::string& what) : std::runtime_error(what) {}
};

struct GridMismatchError : std::runtime_error {
    explicit GridMismatchError(const std::string& what) : std::runtime_error(what) {}
};

struct VanishingGeneratorError : std::runtime_error {
    explicit VanishingGeneratorError(const std::string& what) : std::runtime_error(what) {}
};

struct UnnormalizedError : std::runtime_error {
    explicit UnnormalizedError(const std::string& what) : std::runtime_error(what) {}
};

struct DegeneratePairError : std::runtime_error {
    explicit DegeneratePairError(const std::string& what) : std::runtime_error(what) {}
};

struct PathOffGridError : std::runtime_error {
    explicit PathOffGridError(const std::string& what) : std::runtime_error(what) {}
};

struct DegreeOutOfRangeError : std::runtime_error {
    explicit DegreeOutOfRangeError(const std::string& what) : std::runtime_error(what) {}
};

struct NoConvergenceError : std::runtime_error {
    explicit NoConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

struct SingularStepError : std::runtime_error {
    explicit SingularStepError(const std::string& what) : std::runtime_error(what) {}
};

struct NonRealPotentialError : std::runtime_error {
    explicit NonRealPotentialError(const std::string& what) : std::runtime_error(what) {}
};

struct DerivativeMissingError : std::runtime_error {
    explicit DerivativeMissingError(const std::string& what) : std::runtime_error(what) {}
};

struct NotCompatibleError : std::runtime_error {
    explicit NotCompatibleError(const std::string& what) : std::runtime_error(what) {}
};

struct RadiusTooLargeError : std::runtime_error {
    explicit RadiusTooLargeError(const std::string& what) : std::runtime_error(what) {}
};

struct NotASolutionError : std::runtime_error {
    explicit NotASolutionError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace psp
