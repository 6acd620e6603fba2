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


#ifndef RIS3D_RIS3D_HPP
#define RIS3D_RIS3D_HPP

#include "analysis.hpp"
#include "config.hpp"
#include "control.hpp"
#include "element.hpp"
#include "field.hpp"
#include "geometry.hpp"
#include "scenes.hpp"
#include "synthesis.hpp"

#endif // RIS3D_RIS3D_HPP
