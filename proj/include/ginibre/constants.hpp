#pragma once

#include <numbers>

namespace ginibre {

// zeta'(-1) = 1/12 - log(Glaisher's constant)
inline constexpr const char* kZetaPrimeMinusOneDigits = "-0.1654211437004509292139196602";
inline constexpr double kZetaPrimeMinusOne = -0.1654211437004509292139196602;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kLog2Pi = 1.8378770664093454835606594728112;

}  // namespace ginibre
