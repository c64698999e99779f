#pragma once

#include <complex>

namespace cosfunk {

using cd = std::complex<double>;

/// Distance below which an argument is treated as sitting on a gamma pole.
inline constexpr double kPoleTolerance = 1e-12;

/// True when z lies within kPoleTolerance of 0, -1, -2, ...
bool is_gamma_pole(cd z, double tol = kPoleTolerance);

/// sin(pi z) with argument reduction, accurate near integers.
cd sin_pi(cd z);

/// Complex gamma function (Lanczos, g = 7, reflection for Re z < 1/2).
/// Throws PoleError at the nonpositive integers.
cd gamma(cd z);

/// Reciprocal gamma 1/Gamma(z); entire, returns 0 at the poles of Gamma.
cd rgamma(cd z);

/// Principal branch of log Gamma(z) for Re z >= 1/2 (recurses through the
/// reflection formula otherwise). Throws PoleError at the poles.
cd lgamma(cd z);

/// Gamma(a) / Gamma(b). Pole of the numerator raises PoleError; pole of the
/// denominator yields 0.
cd gamma_ratio(cd a, cd b);

/// Euler beta function B(a, b) for complex arguments.
cd beta(cd a, cd b);

}  // namespace cosfunk
