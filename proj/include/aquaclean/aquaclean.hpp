// Copyright 2026 The AquaClean Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AQUACLEAN_AQUACLEAN_HPP_
#define AQUACLEAN_AQUACLEAN_HPP_

#include "aquaclean/color.hpp"
#include "aquaclean/config.hpp"
#include "aquaclean/fft.hpp"
#include "aquaclean/fixtures.hpp"
#include "aquaclean/image.hpp"
#include "aquaclean/io.hpp"
#include "aquaclean/metrics.hpp"
#include "aquaclean/parallel.hpp"
#include "aquaclean/pipeline.hpp"
#include "aquaclean/spatial.hpp"
#include "aquaclean/spectral.hpp"
#include "aquaclean/tone.hpp"
#include "aquaclean/wavelet.hpp"

#endif  // AQUACLEAN_AQUACLEAN_HPP_
