#pragma once

// Generated by tests/oracle/generate.py; do not edit.

namespace oracle {

inline constexpr double kTimes[] = {0.5, 2.0, 10.0, 50.0};
inline constexpr double kTheta3[] = {0.3, 1.1, 0.7};
inline constexpr double kPhi3[] = {0.2, 4.0, 2.5};
inline constexpr double kTransverseCut1[] = {0.5402415259297497, 0.7183731983589465, 0.7527345919995319, 0.8112890904389808};
inline constexpr double kTransverseCut2[] = {0.024874059522422196, 0.27969641559695724, 0.33731532392882096, 0.7197492707950633};
inline constexpr double kHeisenbergCut1[] = {0.5041388973404586, 1.12012073717254, 1.1939973406186057, 1.0834132739970468};
inline constexpr double kBreakerCut1[] = {0.4378502658495146, 0.4745621726251562, 0.27985680638979055, 0.22250817780734938};
inline constexpr double kSpectrumL2[] = {-8.088485671397745, -6.046445768408092, -6.046445768408091, -4.000000000000002, -2.828427124746193, -2.808904703708299, -1.9850676486457381, -1.9850676486457361, 1.9850676486457333, 1.9850676486457355, 2.778077220385384, 2.8284271247461916, 4.119313154720656, 6.046445768408089, 6.046445768408096, 8.0};
inline constexpr double kFidelityL2[] = {0.6405060415311928, 0.3911046755330961, 0.10811475195767245, 0.6024845520524315};

}  // namespace oracle

