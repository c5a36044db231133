// SPDX-License-Identifier: Apache-2.0
//
// Every tolerance used by verification reports and the acceptance suite.
#pragma once

namespace bipdo::tolerances {

inline constexpr double kRoundTrip = 1e-12;
inline constexpr double kParseval = 1e-12;
inline constexpr double kBilinearity = 1e-12;
inline constexpr double kFastVsReference = 1e-12;
inline constexpr double kSeparability = 1e-12;
inline constexpr double kLeibniz = 1e-11;
inline constexpr double kAdjointPairing = 1e-11;
inline constexpr double kAdjointClosedForm = 1e-12;
inline constexpr double kDoubleAdjoint = 1e-11;
inline constexpr double kAngleInvolution = 1e-14;
inline constexpr double kCompositionExact = 1e-12;
inline constexpr double kBilinearExpansionVsExact = 1e-9;
inline constexpr double kLinearExpansionVsExact = 1e-10;
inline constexpr double kPrincipalConjugation = 1e-12;
inline constexpr double kSobolevSingleMode = 1e-12;
inline constexpr double kMoyal = 1e-10;
inline constexpr double kModulationShift = 1e-10;
inline constexpr double kPeetreRelative = 1e-12;
inline constexpr double kParserRoundTrip = 1e-14;
inline constexpr double kFiniteDifference = 1e-6;
inline constexpr double kFiniteDifferenceStep = 1e-4;

inline constexpr double kRemainderSlopeTarget = -1.0;
inline constexpr double kRemainderSlopeWindow = 0.5;
inline constexpr double kRemainderNoiseFloor = 1e-13;

inline constexpr double kGrowthFactorLimit = 2.0;
inline constexpr double kHolderStabilityFactor = 2.0;
inline constexpr double kDenominatorFloor = 1e-10;

/// Ceiling multiplier applied to the constants of the calibrating symbols of a class.
inline constexpr double kClassCeilingFactor = 10.0;

}  // namespace bipdo::tolerances
