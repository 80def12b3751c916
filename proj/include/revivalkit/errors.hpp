#pragma once

#include <stdexcept>
#include <string>

namespace revivalkit {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation precondition.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Parameters or spectral data admit no chain with positive couplings.
/// `index()` is the coupling index n at which J_n^2 <= 0 was found.
class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& what, int index) : Error(what), index_(index) {}

    int index() const noexcept { return index_; }

private:
    int index_;
};

} // namespace revivalkit
