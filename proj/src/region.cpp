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

#include "ftq/region.hpp"

#include <cmath>

namespace ftq {

Box Box::around(const RealFourVector &x, const RealFourVector &r, double hx, double hr) {
    Box b;
    b.x_lo = x.array() - hx;
    b.x_hi = x.array() + hx;
    b.r_lo = r.array() - hr;
    b.r_hi = r.array() + hr;
    return b;
}

bool Box::contains(const RealFourVector &x, const RealFourVector &r) const {
    return (x.array() >= x_lo.array()).all() && (x.array() <= x_hi.array()).all() &&
           (r.array() >= r_lo.array()).all() && (r.array() <= r_hi.array()).all();
}

bool Box::bounded() const {
    return x_lo.allFinite() && x_hi.allFinite() && r_lo.allFinite() && r_hi.allFinite();
}

double Box::volume() const {
    if (!bounded()) {
        return kInf;
    }
    return (x_hi - x_lo).cwiseMax(0.0).prod() * (r_hi - r_lo).cwiseMax(0.0).prod();
}

Region Region::whole_tube() { return Region({Box{}}); }

Region Region::point(const FutureTubePoint &z) {
    Region reg;
    reg.point_ = z;
    return reg;
}

Region Region::complement(const Region &r) {
    if (r.point_) {
        return whole_tube();
    }
    Region out(r.boxes_);
    out.complement_ = !r.complement_;
    return out;
}

bool Region::is_whole_tube() const {
    if (point_) {
        return false;
    }
    if (complement_) {
        return boxes_.empty();
    }
    for (const Box &b : boxes_) {
        const bool x_open = (b.x_lo.array() == -Box::kInf).all() && (b.x_hi.array() == Box::kInf).all();
        // The cone lies in r^0 > 0, |r_i| < r^0.
        const bool r_open = b.r_lo(0) <= 0.0 && b.r_hi(0) == Box::kInf &&
                            (b.r_lo.tail<3>().array() == -Box::kInf).all() &&
                            (b.r_hi.tail<3>().array() == Box::kInf).all();
        if (x_open && r_open) {
            return true;
        }
    }
    return false;
}

bool Region::contains(const RealFourVector &x, const RealFourVector &r) const {
    if (point_ || !is_timelike_future(r)) {
        return false;
    }
    bool inside = false;
    for (const Box &b : boxes_) {
        if (b.contains(x, r)) {
            inside = true;
            break;
        }
    }
    return inside != complement_;
}

} // namespace ftq
