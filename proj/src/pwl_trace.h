// Copyright 2026 The switchgames Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Internal: exact tracing of a concave piecewise-linear function of one
// variable from point evaluations. For a concave function, agreement of the
// midpoint with the chord proves linearity on the whole interval, so
// recursive three-point checks isolate every breakpoint; the final knots come
// from intersecting the neighbouring segment lines.

#ifndef SWITCHGAMES_PWL_TRACE_H_
#define SWITCHGAMES_PWL_TRACE_H_

#include <cmath>
#include <cstdlib>
#include <functional>
#include <vector>

#include "switchgames/core.h"

namespace switchgames {
namespace internal {

inline PiecewiseLinearCurve TraceConcavePwl(
    const std::function<double(double)>& value_at, double c_max,
    int max_segments) {
  constexpr double kCollinearTolerance = 1e-8;
  constexpr double kMinWindow = 1e-9;

  struct Window {
    double c_lo, c_hi;
    double v_lo, v_hi;
  };

  std::vector<Window> confirmed;
  std::vector<Window> work;
  work.push_back({0.0, c_max, value_at(0.0), value_at(c_max)});
  while (!work.empty()) {
    Window seg = work.back();
    work.pop_back();
    if (seg.c_hi - seg.c_lo <= kMinWindow) {
      confirmed.push_back(seg);
      continue;
    }
    const double mid = 0.5 * (seg.c_lo + seg.c_hi);
    const double v_mid = value_at(mid);
    const double interpolated =
        seg.v_lo +
        (seg.v_hi - seg.v_lo) * (mid - seg.c_lo) / (seg.c_hi - seg.c_lo);
    if (std::abs(v_mid - interpolated) <= kCollinearTolerance) {
      confirmed.push_back(seg);
      continue;
    }
    // Each genuine breakpoint costs about 2*log2(range/resolution) windows;
    // anything far past that bound indicates a runaway subdivision.
    if (static_cast<int>(confirmed.size()) > 80 * max_segments + 1024) {
      throw ResourceLimitError("curve trace: more than " +
                               std::to_string(max_segments) + " segments");
    }
    // Right half pushed first so windows are confirmed left to right.
    work.push_back({mid, seg.c_hi, v_mid, seg.v_hi});
    work.push_back({seg.c_lo, mid, seg.v_lo, v_mid});
  }

  struct MergedSegment {
    double c_lo, c_hi;
    LinearPiece line;
  };
  std::vector<MergedSegment> merged;
  for (const Window& seg : confirmed) {
    // Windows at the resolution limit are unresolved knots; their two samples
    // are too close together to define a line.
    if (seg.c_hi - seg.c_lo <= 4 * kMinWindow) continue;
    LinearPiece line;
    line.slope = (seg.v_hi - seg.v_lo) / (seg.c_hi - seg.c_lo);
    line.intercept = seg.v_lo - line.slope * seg.c_lo;
    if (!merged.empty()) {
      MergedSegment& last = merged.back();
      if (std::abs(last.line.ValueAt(seg.c_lo) - seg.v_lo) <=
              2 * kCollinearTolerance &&
          std::abs(last.line.ValueAt(seg.c_hi) - seg.v_hi) <=
              2 * kCollinearTolerance) {
        // Extend the run and refresh its line from the outermost points.
        const double lo_value = last.line.ValueAt(last.c_lo);
        last.c_hi = seg.c_hi;
        last.line.slope = (seg.v_hi - lo_value) / (last.c_hi - last.c_lo);
        last.line.intercept = lo_value - last.line.slope * last.c_lo;
        continue;
      }
    }
    merged.push_back({seg.c_lo, seg.c_hi, line});
  }

  if (static_cast<int>(merged.size()) > max_segments) {
    throw ResourceLimitError("curve trace: more than " +
                             std::to_string(max_segments) + " segments");
  }

  std::vector<double> breakpoints{0.0};
  std::vector<LinearPiece> pieces{merged.front().line};
  for (size_t k = 1; k < merged.size(); ++k) {
    const LinearPiece& left = merged[k - 1].line;
    const LinearPiece& right = merged[k].line;
    double knot = 0.5 * (merged[k - 1].c_hi + merged[k].c_lo);
    const double slope_gap = left.slope - right.slope;
    if (std::abs(slope_gap) > 1e-12) {
      const double crossing = (right.intercept - left.intercept) / slope_gap;
      const double window = merged[k].c_lo - merged[k - 1].c_hi;
      if (crossing >= merged[k - 1].c_hi - std::max(window, 1e-7) &&
          crossing <= merged[k].c_lo + std::max(window, 1e-7)) {
        knot = crossing;
      }
    }
    if (knot <= breakpoints.back() + kMinWindow) {
      pieces.back() = right;
      continue;
    }
    breakpoints.push_back(knot);
    pieces.push_back(right);
  }
  return PiecewiseLinearCurve(std::move(breakpoints), std::move(pieces), c_max);
}

}  // namespace internal
}  // namespace switchgames

#endif  // SWITCHGAMES_PWL_TRACE_H_
