#include "cosfunk/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cosfunk/errors.hpp"

namespace cosfunk {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos sum and shifted argument for Re z >= 1/2.
void lanczos_parts(cd z, cd& sum, cd& t) {
    z -= 1.0;
    sum = kLanczosCoef[0];
    for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) sum += kLanczosCoef[i] / (z + double(i));
    t = z + kLanczosG + 0.5;
}

cd gamma_right(cd z) {
    cd sum, t;
    lanczos_parts(z, sum, t);
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z - 0.5) * std::exp(-t) * sum;
}

[[noreturn]] void throw_pole(cd z) {
    std::ostringstream os;
    os << "gamma pole at z = " << z.real();
    if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    throw PoleError(os.str(), z);
}

}  // namespace

bool is_gamma_pole(cd z, double tol) {
    const double k = std::round(z.real());
    return k <= 0.0 && std::abs(z - cd(k, 0.0)) < tol;
}

cd sin_pi(cd z) {
    const double k = std::round(z.real());
    const cd r = z - k;
    const double sign = (static_cast<long long>(k) % 2 == 0) ? 1.0 : -1.0;
    return sign * std::sin(std::numbers::pi * r);
}

cd gamma(cd z) {
    if (is_gamma_pole(z)) throw_pole(z);
    if (z.real() < 0.5) return std::numbers::pi / (sin_pi(z) * gamma_right(1.0 - z));
    return gamma_right(z);
}

cd rgamma(cd z) {
    if (z.real() < 0.5) return sin_pi(z) * gamma_right(1.0 - z) / std::numbers::pi;
    return 1.0 / gamma_right(z);
}

cd lgamma(cd z) {
    if (is_gamma_pole(z)) throw_pole(z);
    if (z.real() < 0.5) return std::log(std::numbers::pi / sin_pi(z)) - lgamma(1.0 - z);
    cd sum, t;
    lanczos_parts(z, sum, t);
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z - 0.5) * std::log(t) - t + std::log(sum);
}

cd gamma_ratio(cd a, cd b) {
    if (is_gamma_pole(a)) throw_pole(a);
    if (is_gamma_pole(b)) return 0.0;
    // Both arguments comfortably right of the origin: go through logs to
    // avoid overflow of the individual factors.
    if (a.real() > 30.0 && b.real() > 30.0) return std::exp(lgamma(a) - lgamma(b));
    return gamma(a) * rgamma(b);
}

cd beta(cd a, cd b) { return gamma(a) * gamma(b) * rgamma(a + b); }

}  // namespace cosfunk
