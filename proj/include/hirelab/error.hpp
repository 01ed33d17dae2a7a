#pragma once

#include <stdexcept>
#include <string>

namespace hirelab {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// (strategy, distribution, size) combination with no known closed form.
class UnsupportedError : public std::invalid_argument {
public:
  explicit UnsupportedError(const std::string& what) : std::invalid_argument(what) {}
};

/// Invalid or inconsistent run configuration.
class ConfigError : public std::invalid_argument {
public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Request exceeds a configured computational limit.
class ResourceError : public std::runtime_error {
public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// An exact computation produced a result that violates a structural invariant.
class ConsistencyError : public std::logic_error {
public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace hirelab
