// Copyright 2026 The ftq Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "ftq/minkowski.hpp"

namespace ftq {

/// Axis-aligned box in (x, r) coordinates. Bounds may be infinite.
struct Box {
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    RealFourVector x_lo = RealFourVector::Constant(-kInf);
    RealFourVector x_hi = RealFourVector::Constant(kInf);
    RealFourVector r_lo = RealFourVector::Constant(-kInf);
    RealFourVector r_hi = RealFourVector::Constant(kInf);

    /// Box of half-width (hx, hr) per axis around a centre point.
    static Box around(const RealFourVector &x, const RealFourVector &r, double hx, double hr);

    [[nodiscard]] bool contains(const RealFourVector &x, const RealFourVector &r) const;
    [[nodiscard]] bool bounded() const;
    /// Euclidean 8-volume; infinite when unbounded.
    [[nodiscard]] double volume() const;
};

/**
 * A measurable subset of the tube: the union of its boxes intersected with
 * the tube. A region may instead be a single point, the limit in which a
 * measurement records an exact phase-space location.
 */
class Region {
  public:
    Region() = default;
    explicit Region(std::vector<Box> boxes) : boxes_(std::move(boxes)) {}

    static Region whole_tube();
    static Region point(const FutureTubePoint &z);
    /// The tube minus the union of the boxes of `r`.
    static Region complement(const Region &r);

    [[nodiscard]] const std::vector<Box> &boxes() const noexcept { return boxes_; }
    [[nodiscard]] const std::optional<FutureTubePoint> &point() const noexcept { return point_; }
    [[nodiscard]] bool is_point() const noexcept { return point_.has_value(); }
    [[nodiscard]] bool is_complement() const noexcept { return complement_; }
    [[nodiscard]] bool is_whole_tube() const;

    /// Membership in (union of boxes) intersected with the tube, or in the
    /// tube minus that union for a complement.
    [[nodiscard]] bool contains(const RealFourVector &x, const RealFourVector &r) const;

  private:
    std::vector<Box> boxes_;
    std::optional<FutureTubePoint> point_;
    bool complement_ = false;
};

} // namespace ftq
