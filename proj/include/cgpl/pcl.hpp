// Copyright 2026 The cgpl Authors
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

// Product configuration language:
//
//   cfg := "generator" ID "{" ("output" "=" STRING ";")?
//                             "layers" "=" STRING ("," STRING)* ";" "}"

#ifndef CGPL_PCL_HPP
#define CGPL_PCL_HPP

#include <string>
#include <string_view>

#include "cgpl/model.hpp"

namespace cgpl {

// Throws SyntaxError, or EmptySelection for `layers = "";`.
ProductConfig parse_pcl(std::string_view text, std::string_view path = {});

std::string render_pcl(const ProductConfig& config);

}  // namespace cgpl

#endif  // CGPL_PCL_HPP
