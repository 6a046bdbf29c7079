#pragma once

#include <stdexcept>
#include <string>

namespace eclc {

/// A world id that is not part of the frame was referenced.
class UnknownWorld : public std::out_of_range {
public:
    explicit UnknownWorld(const std::string& id)
        : std::out_of_range("unknown world '" + id + "'"), id_(id) {}

    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

/// An operation was invoked on a state that violates its precondition
/// (consumed resources, inaccessible pair, wrong scenario kind, ...).
class PreconditionViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Numerically degenerate input to a fit or statistic.
class DegenerateInput : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace eclc
