#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace streamtable {

enum class ErrorKind {
  NonPositiveWeight,
  TooFewColumns,
  EmptyTable,
  LabelCountMismatch,
  NonPositiveHeight,
  NonPositiveParameter,
  InvalidOrder,
  ParseError,
  UnequalRowSums,
  TooManyRows,
  InvalidTriples,
  WTooSmall,
  NotCubic,
  CertificateInvalid,
  ConstraintViolated,
  MissingVariable,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::TooFewColumns: return "TooFewColumns";
    case ErrorKind::EmptyTable: return "EmptyTable";
    case ErrorKind::LabelCountMismatch: return "LabelCountMismatch";
    case ErrorKind::NonPositiveHeight: return "NonPositiveHeight";
    case ErrorKind::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorKind::InvalidOrder: return "InvalidOrder";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnequalRowSums: return "UnequalRowSums";
    case ErrorKind::TooManyRows: return "TooManyRows";
    case ErrorKind::InvalidTriples: return "InvalidTriples";
    case ErrorKind::WTooSmall: return "WTooSmall";
    case ErrorKind::NotCubic: return "NotCubic";
    case ErrorKind::CertificateInvalid: return "CertificateInvalid";
    case ErrorKind::ConstraintViolated: return "ConstraintViolated";
    case ErrorKind::MissingVariable: return "MissingVariable";
  }
  return "Unknown";
}

/// Domain error. `row`/`col` locate the offending cell (or line/column for
/// parse errors) when that makes sense.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> row = {},
        std::optional<std::size_t> col = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        row_(row),
        col_(col) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> row() const noexcept { return row_; }
  std::optional<std::size_t> col() const noexcept { return col_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> row_;
  std::optional<std::size_t> col_;
};

}  // namespace streamtable
