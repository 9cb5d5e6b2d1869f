#pragma once

#include <stdexcept>
#include <string>

namespace hfree {

// Error taxonomy mirrored by the CLI exit codes: input errors exit 2,
// precondition violations exit 3, internal inconsistencies exit 4.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user-supplied data (unparsable graph6, malformed flags, bad files).
struct InputError : Error {
  using Error::Error;
};

// An operation was called outside its documented domain.
struct PreconditionError : Error {
  using Error::Error;
};

// A cross-check that should never fail did fail.
struct InternalError : Error {
  using Error::Error;
};

// graph6 decoding failures, each kind reported distinctly.
struct Graph6Error : InputError {
  enum class Kind {
    malformed_header,   // empty string, byte outside 63..125 in header position
    unsupported_size,   // extended (>= 63 vertex) header or n over capacity
    bad_length,         // character count does not match the vertex count
    bad_character,      // payload byte outside the printable graph6 range
    trailing_bits,      // padding bits after the last pair are not zero
  };

  Graph6Error(Kind k, const std::string& msg) : InputError(msg), kind(k) {}

  Kind kind;
};

}  // namespace hfree
