#pragma once

// Trend thresholds of the acceptance experiments. Pilot-calibrated at desk scale;
// the underlying results are asymptotic and give no finite-size constants.
namespace pplab::calibration {

// Largest median two-point distance slope per doubling of n counted as non-growing.
inline constexpr double kFlatSlopePerDoubling = 0.1;
// Fraction of repetitions whose medians must increase strictly across sizes.
inline constexpr double kGrowingRepFraction = 0.8;
// Fraction of batches that must show the inward/outward asymmetry.
inline constexpr double kAsymmetryBatchFraction = 0.9;
// Minimal outward growth per doubling of the window side.
inline constexpr double kOutwardGrowthPerDoubling = 1.5;
// Minimal decay factor per step of the self-avoiding path counts.
inline constexpr double kSawDecayPerStep = 1.5;
// Fraction of boxing runs in which F1 holds at every annulus.
inline constexpr double kBoxingF1Fraction = 0.9;

}  // namespace pplab::calibration
