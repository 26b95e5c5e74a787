#pragma once

#include <stdexcept>
#include <string>

namespace groves {

// Bad caller input: malformed configs, out-of-range parameters.
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A value was requested outside the region where it is defined.
struct DomainError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// A cube was shuffled out of order.
struct ScheduleError : std::logic_error {
    using std::logic_error::logic_error;
};

// Two computations that must agree did not.
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A request would blow past the exhaustive-enumeration budget.
struct ResourceGuard : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace groves
