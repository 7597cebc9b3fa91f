// Copyright 2026 The rtnq Authors
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

namespace rtnq {

/// Exponentially scaled modified Bessel functions e^{-x} I_0(x) and
/// e^{-x} I_1(x) for x >= 0. Finite for every finite x.
double bessel_i0_scaled(double x);
double bessel_i1_scaled(double x);

}  // namespace rtnq
