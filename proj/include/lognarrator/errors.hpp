#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lognar {

// Failure classes; the numeric values double as CLI exit codes.
enum class ErrorCategory { config = 2, ingest = 3, pipeline = 4, output = 5 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string message)
      : std::runtime_error(std::move(message)), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

// Invalid configuration value, bad flag, malformed config file.
struct ConfigError : Error {
  explicit ConfigError(const std::string& m) : Error(ErrorCategory::config, m) {}
};

// Input cannot be parsed into an event log (missing column, broken XML, ...).
struct StructuralError : Error {
  explicit StructuralError(const std::string& m) : Error(ErrorCategory::ingest, m) {}
};

// Input contained no usable events.
struct EmptyLogError : Error {
  explicit EmptyLogError(const std::string& m) : Error(ErrorCategory::ingest, m) {}
};

struct UnknownActivityError : Error {
  explicit UnknownActivityError(const std::string& m) : Error(ErrorCategory::pipeline, m) {}
};

// Log and model disagree on the activity alphabet in strict replay.
struct ReplayMismatchError : Error {
  explicit ReplayMismatchError(const std::string& m) : Error(ErrorCategory::pipeline, m) {}
};

// Period comparison with an empty or zero denominator.
struct UndefinedComparisonError : Error {
  explicit UndefinedComparisonError(const std::string& m) : Error(ErrorCategory::pipeline, m) {}
};

// Quantified sentence evaluated over an empty (or fully excluded) population.
struct UndefinedTruthError : Error {
  explicit UndefinedTruthError(const std::string& m) : Error(ErrorCategory::pipeline, m) {}
};

struct InvalidArgumentError : Error {
  explicit InvalidArgumentError(const std::string& m) : Error(ErrorCategory::pipeline, m) {}
};

struct MissingTemplateError : Error {
  explicit MissingTemplateError(const std::string& m) : Error(ErrorCategory::pipeline, m) {}
};

struct TemplateSlotError : Error {
  explicit TemplateSlotError(const std::string& m) : Error(ErrorCategory::pipeline, m) {}
};

struct OutputError : Error {
  explicit OutputError(const std::string& m) : Error(ErrorCategory::output, m) {}
};

}  // namespace lognar
