#pragma once

#include <stdexcept>
#include <string>

namespace bochner {

/** Base class for all toolkit errors. */
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Quadrature or series could not certify the requested tolerance. */
struct NonConvergent : Error {
    using Error::Error;
};

/** Pointwise evaluation requested for a tempered measure without a cutoff. */
struct TemperedWithoutCutoff : Error {
    using Error::Error;
};

/** Matrix deviates from Hermitian symmetry beyond tolerance. */
struct NotHermitian : Error {
    using Error::Error;
};

/** Refinement of a quadrature grid changed the result beyond tolerance. */
struct GridTooCoarse : Error {
    using Error::Error;
};

/** Two RKHS elements do not share the same kernel. */
struct KernelMismatch : Error {
    using Error::Error;
};

/** Supplied measure is not the Bochner partner of the element's kernel. */
struct MeasureMismatch : Error {
    using Error::Error;
};

/** Derivative requested for a non-differentiable family member. */
struct NotDifferentiable : Error {
    using Error::Error;
};

/** Series tail bound exceeds the requested tolerance. */
struct TailNotCertified : Error {
    using Error::Error;
};

/** IFS product/word depth insufficient for the requested accuracy. */
struct DepthInsufficient : Error {
    using Error::Error;
};

/** Orthogonality-clique search grid exceeds the documented budget. */
struct GridTooLarge : Error {
    using Error::Error;
};

/** Input failed a positive-definiteness precondition. */
struct NotPositiveDefinite : Error {
    using Error::Error;
};

/** Covariance factorization required clipping beyond the allowed budget. */
struct FactorizationFailure : Error {
    using Error::Error;
};

}  // namespace bochner
