// Copyright 2026 The vqad authors.
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

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vqad {

// One parameter axis of a sweep: a model field name plus the values it takes.
struct GridAxis {
    std::string name;
    std::vector<double> values;
};

inline std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 1) throw std::invalid_argument("linspace needs at least one point");
    std::vector<double> v(static_cast<std::size_t>(count));
    if (count == 1) {
        v[0] = lo;
        return v;
    }
    const double step = (hi - lo) / (count - 1);
    for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = lo + step * i;
    v.back() = hi;
    return v;
}

// Two-axis parameter grid.  Points are stored axis1-major inside a row:
// flat index = i + j * axis1.size() for axis1 index i, axis2 index j.
struct GridSpec {
    GridAxis axis1;
    GridAxis axis2;

    int n1() const { return static_cast<int>(axis1.values.size()); }
    int n2() const { return static_cast<int>(axis2.values.size()); }
    int size() const { return n1() * n2(); }

    int flat_index(int i, int j) const { return i + j * n1(); }
    std::pair<double, double> point(int i, int j) const {
        return {axis1.values[static_cast<std::size_t>(i)],
                axis2.values[static_cast<std::size_t>(j)]};
    }

    void validate() const {
        if (axis1.name.empty() || axis2.name.empty())
            throw std::invalid_argument("grid axes need names");
        if (axis1.name == axis2.name)
            throw std::invalid_argument("grid axes must name distinct fields");
        for (const GridAxis* ax : {&axis1, &axis2}) {
            if (ax->values.empty())
                throw std::invalid_argument("grid axis " + ax->name + " has no values");
            for (std::size_t k = 1; k < ax->values.size(); ++k)
                if (!(ax->values[k] > ax->values[k - 1]))
                    throw std::invalid_argument("grid axis " + ax->name +
                                                " must be strictly increasing");
        }
    }

    // Index of a coordinate pair that must match grid values exactly
    // (within a tiny absolute tolerance for formatting round trips).
    std::pair<int, int> locate(double x, double y) const {
        const auto find = [](const GridAxis& ax, double v) {
            for (std::size_t k = 0; k < ax.values.size(); ++k)
                if (std::abs(ax.values[k] - v) <= 1e-9) return static_cast<int>(k);
            throw std::invalid_argument("point coordinate " + std::to_string(v) +
                                        " is not on grid axis " + ax.name);
        };
        return {find(axis1, x), find(axis2, y)};
    }
};

}  // namespace vqad
