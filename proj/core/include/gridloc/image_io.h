// Copyright 2026 The gridloc Authors
// SPDX-License-Identifier: Apache-2.0
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

#ifndef GRIDLOC_IMAGE_IO_H_
#define GRIDLOC_IMAGE_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "gridloc/image.h"

namespace gridloc {

// Decodes PNG or JPEG (sniffed from the magic bytes). Grayscale inputs are
// expanded to RGB and any alpha channel is dropped, so callers always get a
// plain 8-bit RGB buffer. Throws Error(kSchema) on undecodable data.
ImageBuffer DecodeImage(std::span<const std::uint8_t> encoded);

// Throws Error(kIo) when the file is missing or unreadable.
ImageBuffer ReadImage(const std::filesystem::path& path);

std::vector<std::uint8_t> EncodePng(const ImageBuffer& image);
std::vector<std::uint8_t> EncodeJpeg(const ImageBuffer& image, int quality = 95);

// Chooses the codec from the extension (.jpg/.jpeg, everything else PNG).
void WriteImage(const std::filesystem::path& path, const ImageBuffer& image);

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const std::uint8_t> bytes);

}  // namespace gridloc

#endif  // GRIDLOC_IMAGE_IO_H_
