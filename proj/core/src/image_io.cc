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

#include "gridloc/image_io.h"

#include <png.h>
#include <stdio.h>

#include <cctype>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>

// jpeglib.h needs FILE and size_t declared first.
#include <jpeglib.h>

#include "gridloc/error.h"

namespace gridloc {
namespace {

bool IsPng(std::span<const std::uint8_t> b) {
  static constexpr std::uint8_t kSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  return b.size() >= 8 && std::memcmp(b.data(), kSig, 8) == 0;
}

bool IsJpeg(std::span<const std::uint8_t> b) {
  return b.size() >= 3 && b[0] == 0xFF && b[1] == 0xD8 && b[2] == 0xFF;
}

ImageBuffer DecodePng(std::span<const std::uint8_t> encoded) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, encoded.data(), encoded.size())) {
    throw Error(ErrorCode::kSchema, std::string("png decode: ") + image.message);
  }
  // Read as RGBA so the alpha channel can be dropped rather than composited.
  image.format = PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, rgba.data(), 0, nullptr)) {
    png_image_free(&image);
    throw Error(ErrorCode::kSchema, std::string("png decode: ") + image.message);
  }
  const int width = static_cast<int>(image.width);
  const int height = static_cast<int>(image.height);
  std::vector<std::uint8_t> rgb(static_cast<std::size_t>(width) * height * 3);
  for (std::size_t i = 0, j = 0; j < rgb.size(); i += 4, j += 3) {
    rgb[j] = rgba[i];
    rgb[j + 1] = rgba[i + 1];
    rgb[j + 2] = rgba[i + 2];
  }
  return ImageBuffer(width, height, std::move(rgb));
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void JpegErrorExit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

// Runs the libjpeg decode with no C++ objects alive across setjmp.
bool DecodeJpegRaw(std::span<const std::uint8_t> encoded, std::vector<std::uint8_t>& out,
                   int& width, int& height, char* message) {
  jpeg_decompress_struct cinfo;
  JpegErrorManager err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = JpegErrorExit;
  if (setjmp(err.jump)) {
    std::strncpy(message, err.message, JMSG_LENGTH_MAX);
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, encoded.data(), static_cast<unsigned long>(encoded.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  width = static_cast<int>(cinfo.output_width);
  height = static_cast<int>(cinfo.output_height);
  out.resize(static_cast<std::size_t>(width) * height * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = out.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return true;
}

ImageBuffer DecodeJpeg(std::span<const std::uint8_t> encoded) {
  std::vector<std::uint8_t> rgb;
  int width = 0;
  int height = 0;
  char message[JMSG_LENGTH_MAX] = {0};
  if (!DecodeJpegRaw(encoded, rgb, width, height, message)) {
    throw Error(ErrorCode::kSchema, std::string("jpeg decode: ") + message);
  }
  return ImageBuffer(width, height, std::move(rgb));
}

bool EncodeJpegRaw(const ImageBuffer& image, int quality, unsigned char** buffer,
                   unsigned long* size, char* message) {
  jpeg_compress_struct cinfo;
  JpegErrorManager err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = JpegErrorExit;
  if (setjmp(err.jump)) {
    std::strncpy(message, err.message, JMSG_LENGTH_MAX);
    jpeg_destroy_compress(&cinfo);
    return false;
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, buffer, size);
  cinfo.image_width = static_cast<JDIMENSION>(image.width());
  cinfo.image_height = static_cast<JDIMENSION>(image.height());
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  const std::uint8_t* data = image.bytes().data();
  while (cinfo.next_scanline < cinfo.image_height) {
    // libjpeg takes a non-const row pointer but only reads from it.
    JSAMPROW row = const_cast<std::uint8_t*>(
        data + static_cast<std::size_t>(cinfo.next_scanline) * image.width() * 3);
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  return true;
}

}  // namespace

ImageBuffer DecodeImage(std::span<const std::uint8_t> encoded) {
  if (IsPng(encoded)) return DecodePng(encoded);
  if (IsJpeg(encoded)) return DecodeJpeg(encoded);
  throw Error(ErrorCode::kSchema, "unrecognized image format (expected PNG or JPEG)");
}

ImageBuffer ReadImage(const std::filesystem::path& path) {
  const auto bytes = ReadFileBytes(path);
  try {
    return DecodeImage(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> EncodePng(const ImageBuffer& image) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width());
  png.height = static_cast<png_uint_32>(image.height());
  png.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  const void* pixels = image.bytes().data();
  if (!png_image_write_to_memory(&png, nullptr, &size, 0, pixels, 0, nullptr)) {
    throw Error(ErrorCode::kIo, std::string("png encode: ") + png.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&png, out.data(), &size, 0, pixels, 0, nullptr)) {
    throw Error(ErrorCode::kIo, std::string("png encode: ") + png.message);
  }
  out.resize(size);
  return out;
}

std::vector<std::uint8_t> EncodeJpeg(const ImageBuffer& image, int quality) {
  unsigned char* buffer = nullptr;
  unsigned long size = 0;
  char message[JMSG_LENGTH_MAX] = {0};
  const bool ok = EncodeJpegRaw(image, quality, &buffer, &size, message);
  std::unique_ptr<unsigned char, decltype(&free)> owned(buffer, &free);
  if (!ok) throw Error(ErrorCode::kIo, std::string("jpeg encode: ") + message);
  return std::vector<std::uint8_t>(buffer, buffer + size);
}

void WriteImage(const std::filesystem::path& path, const ImageBuffer& image) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".jpg" || ext == ".jpeg") {
    WriteFileBytes(path, EncodeJpeg(image));
  } else {
    WriteFileBytes(path, EncodePng(image));
  }
}

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed: " + path.string());
  return bytes;
}

void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

}  // namespace gridloc
