#pragma once

// Reference values of zeta(1/2 + it).
//
// Produced by tools/oracles/zeta_oracle.py: Euler-Maclaurin summation in
// 60-digit mpmath arithmetic (floor(t) + 60 direct terms, 40 Bernoulli
// corrections), asserted to agree with mpmath.zeta to 1e-40, printed with 20
// significant digits. 14.134725141734695 is the first nontrivial zero ordinate
// rounded to double, so the stored value there is O(1e-15) rather than 0.

#include <array>

#include "bnladder/zeta.hpp"

namespace bnladder::fixtures {

inline constexpr std::array<ZetaOraclePoint, 10> kZetaHalfGrid{{
    {0.0, -1.4603545088095868129, 0.0},
    {1.0, 0.14393642707718906032, -0.72209974353167308913},
    {5.0, 0.70181237116568663004, 0.23103800839141992679},
    {14.134725141734695, -1.5082977475078431518e-16, 9.4743061547533882783e-16},
    {25.0, 0.0049845933640356753834, -0.014012301962583382963},
    {50.0, -0.081712108320979975048, 0.33079219403866129559},
    {100.0, 2.6926198856813240905, -0.020386029602598161771},
    {200.0, 4.5905773749690526592, -3.1894012475791441342},
    {500.0, -0.39625650727514661783, -1.4181267413453708155},
    {1000.0, 0.35633436719439605507, 0.93199783123299366512},
}};

}  // namespace bnladder::fixtures
