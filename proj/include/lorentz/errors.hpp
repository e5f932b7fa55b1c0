#pragma once

#include <stdexcept>
#include <string>

namespace lorentz {

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// The Mobius inversion is undefined where |<p,p>| is below tolerance.
struct NearLightCone : Error { using Error::Error; };

// Parameter point outside the patch domain (or too close to the boundary
// for finite differencing).
struct OutOfDomain : Error { using Error::Error; };

// Parameter point excluded by the patch mask.
struct Masked : Error { using Error::Error; };

struct NonpositiveRadius : Error { using Error::Error; };
struct NonpositiveSemiaxis : Error { using Error::Error; };

// The induced metric is degenerate at the point (|EG - F^2| below tolerance).
struct OnLd : Error { using Error::Error; };

struct ZeroRho : Error { using Error::Error; };

// All three BDE coefficients vanish: principal directions undefined.
struct AllZero : Error { using Error::Error; };

// Source BDE coefficients all below tolerance; no scaling factor exists.
struct DegeneratePoint : Error { using Error::Error; };

// Line integration cannot start (fewer than two principal directions).
struct BadStart : Error { using Error::Error; };

// A line sample falls in the masked region of the inverted patch.
struct MaskedSample : Error { using Error::Error; };

// A sampled chord makes a right or obtuse angle with the inward normal,
// contradicting strict convexity.
struct NonconvexWitness : Error { using Error::Error; };

// Translation search exceeded its doubling budget.
struct SearchExhausted : Error { using Error::Error; };

struct IoError : Error { using Error::Error; };

}  // namespace lorentz
