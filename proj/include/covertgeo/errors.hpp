#pragma once

#include <stdexcept>
#include <string>

namespace covertgeo {

// Input outside an operation's domain (bad threshold, power <= 0, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// A root/maximum bracket could not be established.
class BracketError : public std::runtime_error {
 public:
  explicit BracketError(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative scheme (root finder, quadrature, series) hit its cap.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Closed form requested outside the regime where it exists (alpha != 4).
class UnsupportedRegimeError : public std::runtime_error {
 public:
  explicit UnsupportedRegimeError(const std::string& msg) : std::runtime_error(msg) {}
};

// A monotonicity assumption the solver relies on failed numerically.
class NumericalInconsistencyError : public std::runtime_error {
 public:
  explicit NumericalInconsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace covertgeo
