#pragma once

#include <stdexcept>
#include <string>

namespace herdrisk {

/// Argument outside the domain an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested (mean, sd) pair cannot be matched by any Beta distribution.
class InfeasibleMomentsError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Every candidate decision was infeasible.
class NoSolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
[[noreturn]] inline void domain_fail(const std::string& what) { throw DomainError(what); }
}  // namespace detail

}  // namespace herdrisk
