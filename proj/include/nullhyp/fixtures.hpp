/**
 * @file fixtures.hpp
 * @brief Small closed-form reference configurations used by the verification
 *        suites and tests.
 */
#pragma once

#include "nullhyp/hyperpolygon.hpp"
#include "nullhyp/mat2.hpp"

namespace nullhyp {

/// The standard 4-edge block configuration:
///   p = (0,1), (0,-1), (1,0), (-1,0);  q = (1,0)^t, (1,0)^t, (0,1)^t, (0,1)^t.
/// It lies on the zero level of both moment maps, is stable, and is fixed by
/// the transpose involution with S = {1, 2}.  Known values: objective at
/// [diag(2, 1/2); 1,1,1,1] equals 9/4; residues are the elementary nilpotent
/// matrices (+/-)E_12, (+/-)E_21; the null polygon has edges
/// (1,0,-1), (-1,0,-1), (1,0,1), (-1,0,1) and diagonal length 2.
inline HyperpolygonPoint p4_fixture() {
  HyperpolygonPoint x;
  x.p = {RowVec2{cx{0, 0}, cx{1, 0}}, RowVec2{cx{0, 0}, cx{-1, 0}},
         RowVec2{cx{1, 0}, cx{0, 0}}, RowVec2{cx{-1, 0}, cx{0, 0}}};
  x.q = {Vec2{cx{1, 0}, cx{0, 0}}, Vec2{cx{1, 0}, cx{0, 0}},
         Vec2{cx{0, 0}, cx{1, 0}}, Vec2{cx{0, 0}, cx{1, 0}}};
  return x;
}

/// Marked points used with the 4-edge fixture in closed-form residue and
/// field-evaluation checks: 1, -1, i, -i.
inline std::vector<cx> p4_marked() {
  return {cx{1, 0}, cx{-1, 0}, cx{0, 1}, cx{0, -1}};
}

}  // namespace nullhyp
