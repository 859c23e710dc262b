#pragma once

#include <stdexcept>
#include <string>

namespace segredefect {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ffrank
struct ZeroInverse : Error { using Error::Error; };
struct SizeOverflow : Error { using Error::Error; };

// configs
struct InvalidShape : Error { using Error::Error; };
struct EmptyIntersection : Error { using Error::Error; };

// families
struct NonInteger : Error { using Error::Error; };
struct MissingCase : Error { using Error::Error; };
struct OutOfDomain : Error { using Error::Error; };
struct NegativeParameter : Error { using Error::Error; };
struct DomainMismatch : Error { using Error::Error; };
struct UnknownFamily : Error { using Error::Error; };

// checker
struct DegenerateSampling : Error { using Error::Error; };

// certs and text formats
struct ParseError : Error {
    ParseError(const std::string& what, long line_no)
        : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
    long line;
};
struct ConstraintViolation : Error { using Error::Error; };

} // namespace segredefect
