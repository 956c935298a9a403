#pragma once

#include <stdexcept>
#include <string>

namespace risim {

struct ZeroLengthVector : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonPositiveDistance : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptyPathList : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ZeroDirectChannel : std::domain_error {
    using std::domain_error::domain_error;
};

struct NoActiveUsers : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct NonPositivePower : std::domain_error {
    using std::domain_error::domain_error;
};

struct ZeroInterference : std::domain_error {
    using std::domain_error::domain_error;
};

struct BracketFailure : std::domain_error {
    using std::domain_error::domain_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownPreset : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace risim
