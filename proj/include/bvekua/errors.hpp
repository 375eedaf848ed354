#pragma once

#include <stdexcept>
#include <string>

namespace bvekua {

struct GridMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PointTooCloseToBoundaryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SolverDivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularSystemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SupportViolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyBasisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NodeNotOnGridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct WrongCoefficientsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotProperError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotStarShapedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotScalarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bvekua
