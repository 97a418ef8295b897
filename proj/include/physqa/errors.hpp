#pragma once

#include <stdexcept>
#include <string>

namespace physqa {

// Base for all toolkit errors. Messages carry the specifics the caller
// needs (line number, record id, offending label, ...).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// Raised by stratified_split when some answer label cannot satisfy the
// share tolerance; names the label.
class InfeasibleSplitError : public Error {
 public:
  InfeasibleSplitError(const std::string& msg, std::string label)
      : Error(msg), label_(std::move(label)) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class RunnerError : public Error {
 public:
  using Error::Error;
};

// Autoencoder training produced a non-finite loss.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& msg, int epoch, double learning_rate)
      : Error(msg), epoch_(epoch), learning_rate_(learning_rate) {}
  int epoch() const { return epoch_; }
  double learning_rate() const { return learning_rate_; }

 private:
  int epoch_;
  double learning_rate_;
};

}  // namespace physqa
