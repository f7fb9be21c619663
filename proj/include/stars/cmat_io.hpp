// SPDX-License-Identifier: Apache-2.0
//
// stars-fd: spectral-efficiency evaluation and passive-beamforming optimization
// for full-duplex massive-MIMO systems assisted by a simultaneously transmitting
// and reflecting surface.
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

#pragma once

#include "stars/types.hpp"

#include <filesystem>

namespace stars {

/// Binary matrix file: 16-byte header ("CMAT", uint32 rows, uint32 cols,
/// uint32 zero) followed by rows*cols little-endian complex64 pairs, row-major.
/// Entries are rounded to single precision on write.
void write_cmat(const std::filesystem::path& path, const cmat& m);
cmat read_cmat(const std::filesystem::path& path);

}  // namespace stars
