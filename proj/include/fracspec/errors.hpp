#pragma once

#include <stdexcept>
#include <string>

namespace fracspec {

/// Enumeration or scan frontier exceeded the configured memory budget.
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

/// Adaptive quadrature failed to reach the requested tolerance.
class quadrature_error : public std::runtime_error {
public:
    explicit quadrature_error(const std::string& what) : std::runtime_error(what) {}
};

/// A spectral sum was requested beyond the cutoff of the supplied slice.
class incomplete_spectrum_error : public std::runtime_error {
public:
    explicit incomplete_spectrum_error(const std::string& what) : std::runtime_error(what) {}
};

/// Certified truncation tail cannot be brought below tolerance.
class truncation_error : public std::runtime_error {
public:
    explicit truncation_error(const std::string& what) : std::runtime_error(what) {}
};

/// A sampling grid could not capture the requested spectral mass.
class grid_error : public std::runtime_error {
public:
    explicit grid_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fracspec
