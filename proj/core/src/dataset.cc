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

#include "gridloc/dataset.h"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "gridloc/digest.h"
#include "gridloc/error.h"
#include "gridloc/image_io.h"
#include "json.hpp"

namespace gridloc {
namespace {

using json = nlohmann::json;

constexpr std::string_view kManifestFormat = "gridloc-subset";
constexpr int kManifestVersion = 1;

template <typename T>
T Field(const json& obj, const char* key, const char* what) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    throw Error(ErrorCode::kSchema, fmt::format("{} is missing field '{}'", what, key));
  }
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema,
                fmt::format("{} field '{}' has the wrong type: {}", what, key, e.what()));
  }
}

const json& ArrayField(const json& root, const char* key) {
  const auto it = root.find(key);
  if (it == root.end() || !it->is_array()) {
    throw Error(ErrorCode::kSchema, fmt::format("annotation file lacks a '{}' array", key));
  }
  return *it;
}

CocoBox ReadCocoBox(const json& value, const char* what) {
  if (!value.is_array() || value.size() != 4) {
    throw Error(ErrorCode::kSchema, fmt::format("{} bbox must be [x, y, w, h]", what));
  }
  for (const auto& v : value) {
    if (!v.is_number()) {
      throw Error(ErrorCode::kSchema, fmt::format("{} bbox holds a non-number", what));
    }
  }
  return {value[0].get<double>(), value[1].get<double>(), value[2].get<double>(),
          value[3].get<double>()};
}

// Unbiased draw from [0, bound) on top of mt19937_64, whose output sequence
// is fixed by the standard (std::uniform_int_distribution is not).
std::uint64_t Draw(std::mt19937_64& engine, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = engine();
  } while (v >= limit);
  return v % bound;
}

}  // namespace

BBox CocoToCorners(const CocoBox& box) {
  if (!(box.w > 0.0) || !(box.h > 0.0)) {
    throw Error(ErrorCode::kInvalidBox,
                fmt::format("COCO box needs positive size, got w={} h={}", box.w, box.h));
  }
  return BBox(box.x, box.y, box.x + box.w, box.y + box.h);
}

CocoBox CornersToCoco(const BBox& box) {
  return {box.x1(), box.y1(), box.width(), box.height()};
}

DatasetIndex::DatasetIndex(std::vector<ImageInfo> images, std::vector<Annotation> annotations,
                           std::map<std::int64_t, std::string> categories)
    : images_(std::move(images)),
      annotations_(std::move(annotations)),
      categories_(std::move(categories)) {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (!image_pos_.emplace(images_[i].id, i).second) {
      throw Error(ErrorCode::kSchema, fmt::format("duplicate image id {}", images_[i].id));
    }
  }
  for (std::size_t i = 0; i < annotations_.size(); ++i) {
    const Annotation& a = annotations_[i];
    if (!image_pos_.contains(a.image_id)) {
      throw Error(ErrorCode::kReference,
                  fmt::format("annotation {} references unknown image {}", a.id, a.image_id));
    }
    if (!categories_.contains(a.category_id)) {
      throw Error(ErrorCode::kReference, fmt::format("annotation {} references unknown category {}",
                                                     a.id, a.category_id));
    }
    if (!annotation_pos_.emplace(a.id, i).second) {
      throw Error(ErrorCode::kSchema, fmt::format("duplicate annotation id {}", a.id));
    }
    by_image_[a.image_id].push_back(a.id);
  }
  for (auto& [id, ids] : by_image_) std::sort(ids.begin(), ids.end());
}

const ImageInfo& DatasetIndex::image(std::int64_t image_id) const {
  const auto it = image_pos_.find(image_id);
  if (it == image_pos_.end()) {
    throw Error(ErrorCode::kReference, fmt::format("unknown image id {}", image_id));
  }
  return images_[it->second];
}

const Annotation& DatasetIndex::annotation(std::int64_t annotation_id) const {
  const auto it = annotation_pos_.find(annotation_id);
  if (it == annotation_pos_.end()) {
    throw Error(ErrorCode::kReference, fmt::format("unknown annotation id {}", annotation_id));
  }
  return annotations_[it->second];
}

const std::string& DatasetIndex::category_name(std::int64_t category_id) const {
  const auto it = categories_.find(category_id);
  if (it == categories_.end()) {
    throw Error(ErrorCode::kReference, fmt::format("unknown category id {}", category_id));
  }
  return it->second;
}

const std::vector<std::int64_t>& DatasetIndex::annotations_of(std::int64_t image_id) const {
  static const std::vector<std::int64_t> kNone;
  const auto it = by_image_.find(image_id);
  return it == by_image_.end() ? kNone : it->second;
}

DatasetIndex ParseAnnotations(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchema, std::string("annotation file is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw Error(ErrorCode::kSchema, "annotation file must be a JSON object");

  std::vector<ImageInfo> images;
  for (const auto& img : ArrayField(root, "images")) {
    ImageInfo info;
    info.id = Field<std::int64_t>(img, "id", "image");
    info.file_name = Field<std::string>(img, "file_name", "image");
    info.width = Field<int>(img, "width", "image");
    info.height = Field<int>(img, "height", "image");
    if (info.width <= 0 || info.height <= 0) {
      throw Error(ErrorCode::kSchema, fmt::format("image {} has non-positive size", info.id));
    }
    images.push_back(std::move(info));
  }

  std::map<std::int64_t, std::string> categories;
  for (const auto& cat : ArrayField(root, "categories")) {
    categories[Field<std::int64_t>(cat, "id", "category")] =
        Field<std::string>(cat, "name", "category");
  }

  std::vector<Annotation> annotations;
  std::size_t dropped = 0;
  for (const auto& ann : ArrayField(root, "annotations")) {
    Annotation a;
    a.id = Field<std::int64_t>(ann, "id", "annotation");
    a.image_id = Field<std::int64_t>(ann, "image_id", "annotation");
    a.category_id = Field<std::int64_t>(ann, "category_id", "annotation");
    const auto bbox = ann.find("bbox");
    if (bbox == ann.end()) throw Error(ErrorCode::kSchema, "annotation is missing field 'bbox'");
    a.bbox = ReadCocoBox(*bbox, "annotation");
    const auto area = ann.find("area");
    a.area = (area != ann.end() && area->is_number()) ? area->get<double>() : a.bbox.w * a.bbox.h;
    if (!(a.bbox.w > 0.0) || !(a.bbox.h > 0.0)) {
      ++dropped;
      continue;
    }
    annotations.push_back(a);
  }
  if (dropped > 0) {
    std::cerr << "gridloc: dropped " << dropped << " annotation(s) with non-positive width or height\n";
  }
  DatasetIndex index(std::move(images), std::move(annotations), std::move(categories));
  index.set_dropped_annotations(dropped);
  return index;
}

DatasetIndex LoadAnnotations(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kIo, "annotation file not found: " + path.string());
  }
  const auto bytes = ReadFileBytes(path);
  DatasetIndex index = ParseAnnotations(std::string(bytes.begin(), bytes.end()));
  index.set_source_sha256(Sha256Hex(bytes));
  return index;
}

SizeBucket BucketOfArea(double area) {
  if (area < 32.0 * 32.0) return SizeBucket::kSmall;
  if (area > 96.0 * 96.0) return SizeBucket::kLarge;
  return SizeBucket::kMedium;
}

std::size_t EvalSubset::image_count() const { return objects_per_image().size(); }

std::map<std::int64_t, std::size_t> EvalSubset::objects_per_image() const {
  std::map<std::int64_t, std::size_t> counts;
  for (const auto& e : entries) ++counts[e.image_id];
  return counts;
}

double EvalSubset::mean_objects_per_image() const {
  const std::size_t images = image_count();
  return images == 0 ? 0.0 : static_cast<double>(entries.size()) / static_cast<double>(images);
}

EvalSubset SampleSubset(const DatasetIndex& index, std::size_t n, std::uint64_t seed) {
  // Eligible images in id order, grouped by dominant size bucket.
  std::vector<const ImageInfo*> eligible;
  for (const auto& img : index.images()) {
    if (!index.annotations_of(img.id).empty()) eligible.push_back(&img);
  }
  if (n == 0 || n > eligible.size()) {
    throw Error(ErrorCode::kSampling,
                fmt::format("cannot sample {} images; {} images have annotations", n,
                            eligible.size()));
  }
  std::sort(eligible.begin(), eligible.end(),
            [](const ImageInfo* a, const ImageInfo* b) { return a->id < b->id; });

  std::array<std::vector<const ImageInfo*>, 3> buckets;
  for (const ImageInfo* img : eligible) {
    std::array<std::size_t, 3> counts{};
    for (std::int64_t ann_id : index.annotations_of(img->id)) {
      ++counts[static_cast<std::size_t>(BucketOfArea(index.annotation(ann_id).area))];
    }
    const auto dominant = std::max_element(counts.begin(), counts.end()) - counts.begin();
    buckets[static_cast<std::size_t>(dominant)].push_back(img);
  }

  // Largest-remainder apportionment of n over bucket sizes.
  const std::size_t total = eligible.size();
  std::array<std::size_t, 3> quota{};
  std::array<std::size_t, 3> remainder{};
  std::size_t assigned = 0;
  for (std::size_t b = 0; b < 3; ++b) {
    quota[b] = n * buckets[b].size() / total;
    remainder[b] = n * buckets[b].size() % total;
    assigned += quota[b];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++quota[order[k]];

  std::mt19937_64 engine(seed);
  std::vector<const ImageInfo*> chosen;
  for (std::size_t b = 0; b < 3; ++b) {
    auto& pool = buckets[b];
    // Partial Fisher-Yates: the first quota[b] slots become the sample.
    for (std::size_t i = 0; i < quota[b]; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(Draw(engine, pool.size() - i));
      std::swap(pool[i], pool[j]);
      chosen.push_back(pool[i]);
    }
  }
  std::sort(chosen.begin(), chosen.end(),
            [](const ImageInfo* a, const ImageInfo* b) { return a->id < b->id; });

  EvalSubset subset;
  subset.seed = seed;
  subset.source_sha256 = index.source_sha256();
  for (const ImageInfo* img : chosen) {
    for (std::int64_t ann_id : index.annotations_of(img->id)) {
      const Annotation& a = index.annotation(ann_id);
      subset.entries.push_back({img->id, a.id, img->file_name, img->width, img->height,
                                index.category_name(a.category_id), a.bbox});
    }
  }
  return subset;
}

std::string SerializeManifest(const EvalSubset& subset) {
  std::ostringstream out;
  json header = {{"format", kManifestFormat},
                 {"version", kManifestVersion},
                 {"seed", subset.seed},
                 {"source_sha256", subset.source_sha256},
                 {"images", subset.image_count()},
                 {"entries", subset.entries.size()}};
  out << header.dump() << '\n';
  for (const auto& e : subset.entries) {
    json line = {{"image_id", e.image_id},
                 {"annotation_id", e.annotation_id},
                 {"file_name", e.file_name},
                 {"width", e.width},
                 {"height", e.height},
                 {"category", e.category},
                 {"bbox", {e.bbox.x, e.bbox.y, e.bbox.w, e.bbox.h}}};
    out << line.dump() << '\n';
  }
  return out.str();
}

EvalSubset ParseManifest(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kSchema, "subset manifest is empty");
  EvalSubset subset;
  std::size_t expected_entries = 0;
  try {
    const json header = json::parse(line);
    if (header.value("format", "") != kManifestFormat) {
      throw Error(ErrorCode::kSchema, "not a gridloc subset manifest");
    }
    subset.seed = Field<std::uint64_t>(header, "seed", "manifest header");
    subset.source_sha256 = Field<std::string>(header, "source_sha256", "manifest header");
    expected_entries = Field<std::size_t>(header, "entries", "manifest header");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json j = json::parse(line);
      SubsetEntry e;
      e.image_id = Field<std::int64_t>(j, "image_id", "manifest entry");
      e.annotation_id = Field<std::int64_t>(j, "annotation_id", "manifest entry");
      e.file_name = Field<std::string>(j, "file_name", "manifest entry");
      e.width = Field<int>(j, "width", "manifest entry");
      e.height = Field<int>(j, "height", "manifest entry");
      e.category = Field<std::string>(j, "category", "manifest entry");
      e.bbox = ReadCocoBox(j.at("bbox"), "manifest entry");
      subset.entries.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("subset manifest: ") + e.what());
  }
  if (subset.entries.size() != expected_entries) {
    throw Error(ErrorCode::kSchema,
                fmt::format("subset manifest declares {} entries but holds {}", expected_entries,
                            subset.entries.size()));
  }
  return subset;
}

void WriteManifest(const std::filesystem::path& path, const EvalSubset& subset) {
  const std::string text = SerializeManifest(subset);
  WriteFileBytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

EvalSubset ReadManifest(const std::filesystem::path& path) {
  const auto bytes = ReadFileBytes(path);
  return ParseManifest(std::string(bytes.begin(), bytes.end()));
}

ImageBuffer ResolveImage(const std::filesystem::path& image_root, const std::string& file_name,
                         int expected_width, int expected_height) {
  const auto path = image_root / file_name;
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kIo, "image not found: " + path.string());
  }
  ImageBuffer image = ReadImage(path);
  if (image.width() != expected_width || image.height() != expected_height) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("{} decodes to {}x{} but the index records {}x{}", path.string(),
                            image.width(), image.height(), expected_width, expected_height));
  }
  return image;
}

ImageBuffer ResolveImage(const DatasetIndex& index, std::int64_t image_id,
                         const std::filesystem::path& image_root) {
  const ImageInfo& info = index.image(image_id);
  return ResolveImage(image_root, info.file_name, info.width, info.height);
}

}  // namespace gridloc
