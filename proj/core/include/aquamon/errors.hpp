#pragma once

#include <stdexcept>

namespace aquamon {

// Base for every error this library throws; catch this to handle them all.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Frame fails a SensorFrame invariant (encode side).
class InvalidFrame : public Error {
 public:
  using Error::Error;
};

// Input value outside its declared range.
class RangeViolation : public Error {
 public:
  using Error::Error;
};

// Computed result outside the physical bounds of its quantity.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Input outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Configuration value violates a config invariant.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Two-point calibration with (near-)identical voltages.
class DegenerateCalibration : public Error {
 public:
  using Error::Error;
};

// Statistic requested over an empty sample set.
class EmptyInput : public Error {
 public:
  using Error::Error;
};

// Fixture CSV rejected; message carries the line number.
class FixtureParseError : public Error {
 public:
  using Error::Error;
};

// Simulated value maps outside the ADC's voltage range.
class InversionOutOfRange : public Error {
 public:
  using Error::Error;
};

// Append-only log write failed; message carries the path.
class PersistenceFailure : public Error {
 public:
  using Error::Error;
};

// Listener could not bind its endpoint.
class BindFailure : public Error {
 public:
  using Error::Error;
};

// Peer unreachable after the configured retry budget.
class ConnectionRefused : public Error {
 public:
  using Error::Error;
};

// Socket I/O failed on an established connection.
class TransportError : public Error {
 public:
  using Error::Error;
};

}  // namespace aquamon
