#pragma once
// Numeric tolerances and sizes used by the checks. The acceptance run and the
// command-line tool both read them from here; flags may override.

namespace curlsym::defaults {

inline constexpr const char* kVersion = "1";

inline constexpr int kAccuracy = 3;
inline constexpr int kEtaNmax = 3000;
inline constexpr double kEtaS = 6.0;
inline constexpr double kEtaIdentityTol = 1e-6;
inline constexpr double kWeylLambda = 200.0;

inline constexpr double kBassetTol = 1e-8;
inline constexpr double kBassetCutoff = 2.5e4;
inline constexpr double kBesselRelTol = 1e-12;
inline constexpr double kBesselCrossoverTol = 1e-11;
inline constexpr double kLogFitT = 1e-3;
inline constexpr double kLogFitRelTol = 0.01;
inline constexpr double kSmallArgT = 0.01;
inline constexpr double kSphereAverageTol = 1e-10;
inline constexpr double kMomentRelTol = 1e-10;
inline constexpr double kMomentOffdiagTol = 1e-12;
inline constexpr int kSpherePoints = 12;

}  // namespace curlsym::defaults
