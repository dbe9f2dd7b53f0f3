#pragma once

#include <stdexcept>
#include <string>

namespace crosscut {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// geometry
struct WeightError : Error { using Error::Error; };
struct DegenerateCenter : Error { using Error::Error; };
struct DegenerateGamma : Error { using Error::Error; };
struct CenterNotInterior : Error { using Error::Error; };
struct OriginNotInterior : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NotRegular : Error { using Error::Error; };

// lp
struct NumericalFailure : Error { using Error::Error; };
struct NotOptimal : Error { using Error::Error; };

// corner systems
struct NoFractionalRow : Error { using Error::Error; };
struct RowOutOfRange : Error { using Error::Error; };
struct NotSingleRow : Error { using Error::Error; };
struct RowsNotAllFractional : Error { using Error::Error; };
struct ColumnOutOfRange : Error { using Error::Error; };
struct NotUnimodular : Error { using Error::Error; };
struct TooManyPoints : Error { using Error::Error; };

// io
struct ParseError : Error {
  explicit ParseError(const std::string& what, long line = -1)
      : Error(line >= 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_number(line) {}
  long line_number;
};
struct UnsupportedFeature : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// harness
struct NotEnoughFractionalRows : Error { using Error::Error; };
struct IpUnavailable : Error { using Error::Error; };

}  // namespace crosscut
