#pragma once

#include <stdexcept>

namespace fsgeo {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input vector has (numerically) zero norm and cannot be normalized.
struct ZeroVector : Error { using Error::Error; };

/// Operands have incompatible dimensions (vector length, bipartition, matrix shape).
struct DimMismatch : Error { using Error::Error; };

/// A vector handed to PureState is not normalized to the required tolerance.
struct NotNormalized : Error { using Error::Error; };

/// Symmetry residual of a matrix exceeds the Hermiticity tolerance.
struct NotHermitian : Error { using Error::Error; };

/// Spectrum contains an eigenvalue below the negativity tolerance.
struct InvalidSpectrum : Error { using Error::Error; };

/// A finite-difference stencil leaves the open coordinate box of a chart.
struct OutOfDomain : Error { using Error::Error; };

/// Metric inversion refused: degenerate or ill-conditioned metric.
struct SingularMetric : Error { using Error::Error; };

/// Squared gradient norm below the critical-point guard; the xi field is undefined.
struct VanishingGradient : Error { using Error::Error; };

/// Closed-form expression evaluated at (or numerically indistinguishable from)
/// a singular parameter value.
struct SingularPoint : Error { using Error::Error; };

/// Scalar argument outside the admissible range.
struct OutOfRange : Error { using Error::Error; };

/// All samples coincide (or none fall in the binning range); no histogram exists.
struct DegenerateSamples : Error { using Error::Error; };

/// Empty sample set.
struct EmptyInput : Error { using Error::Error; };

/// Fewer than three nonempty bins; no curve can be formed.
struct TooFewBins : Error { using Error::Error; };

/// Requested system size beyond the desk-scale cap.
struct TooLarge : Error { using Error::Error; };

}  // namespace fsgeo
