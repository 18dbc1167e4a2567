#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mythforge {

// Base of every failure raised by the pipeline. `kind()` is the stable class
// name used when errors are aggregated into reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define MYTHFORGE_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  };

// core model
MYTHFORGE_DEFINE_ERROR(IriError)
MYTHFORGE_DEFINE_ERROR(LiteralError)
MYTHFORGE_DEFINE_ERROR(InvalidSegment)
MYTHFORGE_DEFINE_ERROR(PrefixError)
// ingest
MYTHFORGE_DEFINE_ERROR(SchemaError)
// normalize
MYTHFORGE_DEFINE_ERROR(NoiseError)
MYTHFORGE_DEFINE_ERROR(EmptyField)
MYTHFORGE_DEFINE_ERROR(EmptySlug)
// citeparse
MYTHFORGE_DEFINE_ERROR(CitationError)
MYTHFORGE_DEFINE_ERROR(RomanError)
// export / citeparse
MYTHFORGE_DEFINE_ERROR(UnknownWork)
// cli
MYTHFORGE_DEFINE_ERROR(ConfigError)

#undef MYTHFORGE_DEFINE_ERROR

class RowError : public Error {
 public:
  RowError(std::size_t row, const std::string& message)
      : Error("RowError", "row " + std::to_string(row) + ": " + message),
        row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class TimeFormatError : public Error {
 public:
  explicit TimeFormatError(std::string raw)
      : Error("TimeFormatError", "unrecognized date/time format: '" + raw + "'"),
        raw_(std::move(raw)) {}

  const std::string& raw() const noexcept { return raw_; }

 private:
  std::string raw_;
};

// Raised when the dataset violates a structural invariant. `offenders` lists
// the IRIs (or graph names) at fault.
class IntegrityError : public Error {
 public:
  IntegrityError(const std::string& message, std::vector<std::string> offenders)
      : Error("IntegrityError", compose(message, offenders)),
        offenders_(std::move(offenders)) {}

  const std::vector<std::string>& offenders() const noexcept {
    return offenders_;
  }

 private:
  static std::string compose(const std::string& message,
                             const std::vector<std::string>& offenders) {
    std::string out = message;
    for (const auto& o : offenders) out += "\n  " + o;
    return out;
  }

  std::vector<std::string> offenders_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("ParseError", "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class QueryParseError : public Error {
 public:
  QueryParseError(std::size_t position, std::vector<std::string> expected,
                  const std::string& found)
      : Error("QueryParseError", compose(position, expected, found)),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept {
    return expected_;
  }

 private:
  static std::string compose(std::size_t position,
                             const std::vector<std::string>& expected,
                             const std::string& found) {
    std::string out = "at offset " + std::to_string(position) + ": found '" +
                      found + "', expected one of {";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) out += ", ";
      out += expected[i];
    }
    return out + "}";
  }

  std::size_t position_;
  std::vector<std::string> expected_;
};

}  // namespace mythforge
