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

#include <string>

#include "gridloc/error.h"
#include "gridloc/model_client.h"

namespace gridloc {

PromptTemplate::PromptTemplate(std::string text) : text_(std::move(text)) {
  if (text_.find(kCoordinateFormat) == std::string::npos) {
    throw Error(ErrorCode::kConfig, "prompt template must contain the coordinate format " +
                                        std::string(kCoordinateFormat));
  }
}

const PromptTemplate& PromptTemplate::Default() {
  static const PromptTemplate kDefault(
      "Please find the bounding box coordinates of the {object} in this image. "
      "When scanning the image to locate the {object}, look across the entire image and "
      "consider all visible human figures. Once you have found the {object}, determine "
      "their exact boundaries by identifying the left, right, top, and bottom boundaries. "
      "Please provide your reasoning process and give the final coordinates as "
      "[x1, y1, x2, y2] for the bounding box.");
  return kDefault;
}

std::string PromptTemplate::Render(std::string_view object_name) const {
  std::string out;
  out.reserve(text_.size() + 32);
  std::size_t pos = 0;
  while (true) {
    const std::size_t hit = text_.find(kPlaceholder, pos);
    if (hit == std::string::npos) break;
    out.append(text_, pos, hit - pos);
    out.append(object_name);
    pos = hit + kPlaceholder.size();
  }
  out.append(text_, pos, std::string::npos);
  return out;
}

std::string BuildPrompt(std::string_view category_name, const PromptTemplate& prompt_template) {
  if (category_name.empty()) {
    throw Error(ErrorCode::kConfig, "category name must not be empty");
  }
  return prompt_template.Render(category_name);
}

}  // namespace gridloc
