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

#ifndef GRIDLOC_DATASET_H_
#define GRIDLOC_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "gridloc/box.h"
#include "gridloc/image.h"

namespace gridloc {

struct CocoBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  friend bool operator==(const CocoBox&, const CocoBox&) = default;
};

// Throws Error(kInvalidBox) unless w > 0 and h > 0.
BBox CocoToCorners(const CocoBox& box);
CocoBox CornersToCoco(const BBox& box);

struct ImageInfo {
  std::int64_t id = 0;
  std::string file_name;
  int width = 0;
  int height = 0;
};

struct Annotation {
  std::int64_t id = 0;
  std::int64_t image_id = 0;
  std::int64_t category_id = 0;
  CocoBox bbox;
  double area = 0.0;
};

// Cross-referenced view of a COCO instances file.
class DatasetIndex {
 public:
  DatasetIndex(std::vector<ImageInfo> images, std::vector<Annotation> annotations,
               std::map<std::int64_t, std::string> categories);

  const std::vector<ImageInfo>& images() const { return images_; }
  const std::vector<Annotation>& annotations() const { return annotations_; }
  const std::map<std::int64_t, std::string>& categories() const { return categories_; }

  const ImageInfo& image(std::int64_t image_id) const;
  const Annotation& annotation(std::int64_t annotation_id) const;
  const std::string& category_name(std::int64_t category_id) const;
  // Annotation ids of an image, ascending.
  const std::vector<std::int64_t>& annotations_of(std::int64_t image_id) const;

  // Annotations dropped at load time for non-positive width or height.
  std::size_t dropped_annotations() const { return dropped_annotations_; }
  void set_dropped_annotations(std::size_t n) { dropped_annotations_ = n; }

  // SHA-256 hex of the source file, empty for in-memory indexes.
  const std::string& source_sha256() const { return source_sha256_; }
  void set_source_sha256(std::string digest) { source_sha256_ = std::move(digest); }

 private:
  std::vector<ImageInfo> images_;
  std::vector<Annotation> annotations_;
  std::map<std::int64_t, std::string> categories_;
  std::unordered_map<std::int64_t, std::size_t> image_pos_;
  std::unordered_map<std::int64_t, std::size_t> annotation_pos_;
  std::unordered_map<std::int64_t, std::vector<std::int64_t>> by_image_;
  std::size_t dropped_annotations_ = 0;
  std::string source_sha256_;
};

// Throws Error(kIo) for a missing file, Error(kSchema) for malformed JSON or
// missing fields, Error(kReference) for annotations naming unknown images or
// categories.
DatasetIndex LoadAnnotations(const std::filesystem::path& path);
DatasetIndex ParseAnnotations(const std::string& json_text);

enum class SizeBucket { kSmall, kMedium, kLarge };

// COCO buckets: small < 32^2 <= medium <= 96^2 < large.
SizeBucket BucketOfArea(double area);

// One evaluation target: a single annotated object, with everything a trial
// needs denormalized so a sweep can run from the manifest alone.
struct SubsetEntry {
  std::int64_t image_id = 0;
  std::int64_t annotation_id = 0;
  std::string file_name;
  int width = 0;
  int height = 0;
  std::string category;
  CocoBox bbox;
};

struct EvalSubset {
  std::uint64_t seed = 0;
  std::string source_sha256;
  // Sorted by (image_id, annotation_id).
  std::vector<SubsetEntry> entries;

  std::size_t image_count() const;
  // Objects per sampled image, keyed by image id.
  std::map<std::int64_t, std::size_t> objects_per_image() const;
  double mean_objects_per_image() const;
};

// Draws `n` images and expands each into one entry per annotation. Images are
// bucketed by the size class holding most of their objects (ties go to the
// smaller class), the n draws are split across buckets in proportion to
// bucket prevalence (largest remainder), and images are drawn uniformly
// within each bucket. Deterministic for a given (index, n, seed) on every
// platform. Throws Error(kSampling) if fewer than n images have annotations.
EvalSubset SampleSubset(const DatasetIndex& index, std::size_t n, std::uint64_t seed);

// Line-delimited JSON: a header line carrying the seed and source hash,
// then one line per entry.
std::string SerializeManifest(const EvalSubset& subset);
EvalSubset ParseManifest(const std::string& text);
void WriteManifest(const std::filesystem::path& path, const EvalSubset& subset);
EvalSubset ReadManifest(const std::filesystem::path& path);

// Decodes image_root / file_name and checks it against the recorded size.
// Throws Error(kIo) when missing and Error(kDimensionMismatch) when the
// decoded size disagrees.
ImageBuffer ResolveImage(const std::filesystem::path& image_root,
                         const std::string& file_name, int expected_width,
                         int expected_height);
ImageBuffer ResolveImage(const DatasetIndex& index, std::int64_t image_id,
                         const std::filesystem::path& image_root);

}  // namespace gridloc

#endif  // GRIDLOC_DATASET_H_
