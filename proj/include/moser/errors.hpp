#pragma once

#include <stdexcept>
#include <string>

namespace moser {

/// Inputs that do not describe a consistent problem (mismatched rate bases,
/// schema violations, bad parameters).
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain.
class PreconditionViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An improper integral over [t, inf) was requested for a non-decaying integrand.
class DivergentImproperIntegral : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A supremum over t >= 0 was requested for a coefficient that grows.
class UnboundedOnHalfLine : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Measured bounds on g = dJ/dx left the region where the homological
/// solution is guaranteed bounded (Re g < omega/2 or |g| > 3 omega/2).
class HypothesisViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace moser
