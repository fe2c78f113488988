#pragma once

#include <stdexcept>
#include <string>

namespace bnladder {

/// Argument outside an operation's domain (x <= 0, theta > 1, W <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure hit its subdivision or iteration budget before
/// reaching the requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// zeta_half was asked for |t| beyond the validated range.
class AccuracyCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A ladder parameter underflows double precision and only exists in log form.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Least-squares fit with too few usable points or a constant abscissa.
class DegenerateFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bnladder
