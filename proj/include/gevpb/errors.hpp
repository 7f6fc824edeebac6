#pragma once

#include <stdexcept>
#include <string>

namespace gevpb {

/// Invalid GEV parameters (sigma <= 0 or non-finite fields).
class ParameterError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An argument lies outside the domain an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// No usable estimate could be produced (e.g. every bootstrap fit failed).
class EstimationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problems reading series files or configuration.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gevpb
