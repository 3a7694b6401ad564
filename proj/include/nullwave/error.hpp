#pragma once

#include <stdexcept>
#include <string>

namespace nullwave {

/// Argument outside the mathematical domain of a profile or transform.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Array length does not match the grid or band limit it is used with.
class SizeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input carries harmonic content above what the grid can resolve.
class BandwidthError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid configuration; `field()` names the offending key as "section.key".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// The discrete solution left the finite range |value| <= 1e6.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(double u, double v, const std::string& what)
      : std::runtime_error(what), u_(u), v_(v) {}
  double u() const noexcept { return u_; }
  double v() const noexcept { return v_; }

 private:
  double u_;
  double v_;
};

/// A CSV or JSON input lacks required columns or keys; `missing()` lists them.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& file, std::string missing)
      : std::runtime_error(file + ": missing " + missing), missing_(std::move(missing)) {}
  const std::string& missing() const noexcept { return missing_; }

 private:
  std::string missing_;
};

}  // namespace nullwave
