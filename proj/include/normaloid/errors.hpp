#pragma once

#include <stdexcept>
#include <string>

namespace normaloid {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidMatrix : public Error {
 public:
  using Error::Error;
};

class NonHermitianInput : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class NotPositive : public Error {
 public:
  using Error::Error;
};

class NotUnit : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class NotBinormal : public Error {
 public:
  using Error::Error;
};

class PremiseViolated : public Error {
 public:
  using Error::Error;
};

class UnknownTheoremId : public Error {
 public:
  using Error::Error;
};

class FixtureMismatch : public Error {
 public:
  FixtureMismatch(std::string fixture, std::string class_id)
      : Error("fixture '" + fixture + "' does not reproduce expected verdict for '" + class_id +
              "'"),
        fixture_(std::move(fixture)),
        class_id_(std::move(class_id)) {}

  const std::string& fixture() const noexcept { return fixture_; }
  const std::string& class_id() const noexcept { return class_id_; }

 private:
  std::string fixture_;
  std::string class_id_;
};

}  // namespace normaloid
