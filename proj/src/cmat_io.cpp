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

#include "stars/cmat_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace stars {

namespace {

static_assert(std::endian::native == std::endian::little, "CMAT I/O assumes a little-endian host");

void put_u32(std::ostream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  return v;
}

}  // namespace

void write_cmat(const std::filesystem::path& path, const cmat& m) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  os.write("CMAT", 4);
  put_u32(os, static_cast<std::uint32_t>(m.rows()));
  put_u32(os, static_cast<std::uint32_t>(m.cols()));
  put_u32(os, 0);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const std::array<float, 2> v{static_cast<float>(m(r, c).real()), static_cast<float>(m(r, c).imag())};
      os.write(reinterpret_cast<const char*>(v.data()), sizeof(v));
    }
  if (!os) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

cmat read_cmat(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "CMAT", 4) != 0) throw Error(ErrorKind::Parse, "not a CMAT file: " + path.string());
  const std::uint32_t rows = get_u32(is);
  const std::uint32_t cols = get_u32(is);
  get_u32(is);
  if (!is) throw Error(ErrorKind::Parse, "truncated CMAT header: " + path.string());
  cmat m(rows, cols);
  for (std::uint32_t r = 0; r < rows; ++r)
    for (std::uint32_t c = 0; c < cols; ++c) {
      std::array<float, 2> v{};
      is.read(reinterpret_cast<char*>(v.data()), sizeof(v));
      m(r, c) = cplx(v[0], v[1]);
    }
  if (!is) throw Error(ErrorKind::Parse, "truncated CMAT payload: " + path.string());
  return m;
}

}  // namespace stars
