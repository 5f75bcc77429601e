#pragma once

#include <stdexcept>
#include <string>

namespace pschur {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An index or order argument is outside the admissible range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Input violates a structural invariant (e.g. non-Hermitian data).
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// Moment-to-coefficient inversion requires c0 = 1.
class BadLeadingMoment : public Error {
public:
    using Error::Error;
};

/// Float backend found an eigenvalue within 10x of the zero threshold;
/// the sign count cannot be certified. Retry in exact mode.
class DegenerateTolerance : public Error {
public:
    using Error::Error;
};

/// Classification hit a determinant the float backend cannot certify as
/// zero or nonzero; exact input is required.
class InexactDegenerate : public Error {
public:
    using Error::Error;
};

/// No rank-preserving one-step extension exists for this data.
class NoRankPreservingExtension : public Error {
public:
    using Error::Error;
};

/// A constructive step was invoked outside its case.
class PreconditionViolated : public Error {
public:
    using Error::Error;
};

/// The requested class admits no extension.
class NotSolvable : public Error {
public:
    using Error::Error;
};

/// The bump phase alone needs more terms than the requested horizon.
class HorizonTooSmall : public Error {
public:
    using Error::Error;
};

/// A rational function denominator vanishes at a sample node.
class PoleAtSamplePoint : public Error {
public:
    using Error::Error;
};

/// Relation isometry residual exceeded tolerance (implementation bug sentinel).
class IsometryResidualTooLarge : public Error {
public:
    using Error::Error;
};

/// A defect subspace is not positive definite; the colligation
/// construction hypotheses fail for this input.
class DefectNotPositive : public Error {
public:
    using Error::Error;
};

/// The generator Gram is too ill-conditioned to complete the colligation.
class NumericallySingularCompletion : public Error {
public:
    using Error::Error;
};

/// Transfer function evaluated at (or too near) an exceptional point.
class ExceptionalPoint : public Error {
public:
    using Error::Error;
};

/// The two kernels of the two-kernel solver disagree on negative squares.
class KernelMismatch : public Error {
public:
    using Error::Error;
};

/// Instance file or number literal could not be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace pschur
