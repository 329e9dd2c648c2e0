#ifndef MADCAP_ERRORS_HPP
#define MADCAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace madcap {

//============================================================================
// Error hierarchy
//
// Every failure mode surfaces as a typed exception carrying a descriptive
// message.  All types derive from MadcapError so callers may catch broadly,
// while the CLI maps specific types to its exit codes.
//============================================================================

/// Base class for all library errors.
class MadcapError : public std::runtime_error {
public:
  explicit MadcapError(const std::string &msg) : std::runtime_error(msg) {}
};

/// Operand shapes are incompatible with the requested operation.
class DimensionMismatch : public MadcapError {
public:
  using MadcapError::MadcapError;
};

/// A matrix required to be Hermitian fails the symmetry check.
class NonHermitian : public MadcapError {
public:
  using MadcapError::MadcapError;
};

/// A density matrix violates positivity or normalization.
class InvalidState : public MadcapError {
public:
  using MadcapError::MadcapError;
};

/// Requested decay parameters leave the completely positive
/// trace-preserving domain of the channel family.
class CptpViolation : public MadcapError {
public:
  using MadcapError::MadcapError;
};

/// Scalar argument outside its admissible range.
class OutOfRange : public MadcapError {
public:
  using MadcapError::MadcapError;
};

/// A derived quantity is not defined at the supplied parameters.
class Undefined : public MadcapError {
public:
  using MadcapError::MadcapError;
};

/// A denominator or linear system is singular at the supplied parameters.
class Singular : public MadcapError {
public:
  using MadcapError::MadcapError;
};

/// A generator failed to produce a complete biorthogonal eigensystem.
class DefectiveSpectrum : public MadcapError {
public:
  using MadcapError::MadcapError;
};

/// An operation requiring a diagonal input received significant
/// off-diagonal weight.
class NonDiagonalInput : public MadcapError {
public:
  using MadcapError::MadcapError;
};

/// A documented precondition of the operation does not hold.
class PreconditionViolation : public MadcapError {
public:
  using MadcapError::MadcapError;
};

/// The requested quantity has no implemented expression for this family.
class UnsupportedFamily : public MadcapError {
public:
  using MadcapError::MadcapError;
};

/// File input/output failure.
class IoError : public MadcapError {
public:
  using MadcapError::MadcapError;
};

} // namespace madcap

#endif // MADCAP_ERRORS_HPP
