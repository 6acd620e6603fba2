// SPDX-License-Identifier: Apache-2.0
//
// ris3d - analytical beam model for cube-shaped reconfigurable intelligent surfaces
// Copyright (C) 2026 The ris3d authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#ifndef RIS3D_ELEMENT_HPP
#define RIS3D_ELEMENT_HPP

#include "geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace ris3d
{
    /*!
     * Cavity-model microstrip patch element.
     *
     * The radiating edges are modeled as two equivalent magnetic currents separated by
     * `le`; `h` is the substrate thickness and `w` the radiating aperture width. Defaults
     * are the 26 GHz reference design (0.787 mm substrate, 2.85 mm square patch).
     */
    struct ElementModel
    {
        double frequency_hz = 26.0e9;
        double h = 0.787e-3;
        double w = 2.85e-3;
        double le = 2.85e-3;
        double e0 = 1.0;

        double k0() const { return two_pi * frequency_hz / speed_of_light; }
        double wavelength() const { return ris3d::wavelength(frequency_hz); }

        void validate() const
        {
            if (!(frequency_hz > 0.0))
                throw std::invalid_argument("ElementModel: frequency must be positive");
            if (!(h > 0.0) || !(w > 0.0) || !(le > 0.0))
                throw std::invalid_argument("ElementModel: h, w and le must be positive");
            if (!(e0 > 0.0))
                throw std::invalid_argument("ElementModel: e0 must be positive");
        }

        bool operator==(const ElementModel &) const = default;
    };

    /// sin(x)/x, continuously extended to 1 at x = 0.
    inline double sinc(double x)
    {
        // below this the Taylor series is exact to double precision
        if (std::abs(x) < 1e-4)
        {
            const double x2 = x * x;
            return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
        }
        return std::sin(x) / x;
    }

    /// Patch pattern at local angles (theta_s from z_s, phi_s from the face normal x_s).
    inline double element_field(const ElementModel &model, double theta_s, double phi_s)
    {
        const double k0 = model.k0();
        const double st = std::sin(theta_s);
        const double x = 0.5 * k0 * model.h * st * std::cos(phi_s);
        const double z = 0.5 * k0 * model.w * std::cos(theta_s);
        const double array_term = std::cos(0.5 * k0 * model.le * st * std::sin(phi_s));
        return model.e0 * st * sinc(x) * sinc(z) * array_term;
    }

} // namespace ris3d

#endif // RIS3D_ELEMENT_HPP
