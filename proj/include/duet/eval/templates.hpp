// Copyright 2026 The Duet Authors
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

#ifndef DUET_EVAL_TEMPLATES_HPP_
#define DUET_EVAL_TEMPLATES_HPP_

#include <string>

namespace duet::eval {

enum class Task { kAge, kGender, kEmotion, kSound, kLanguage, kKeyword };

Task task_from_string(const std::string& s);
std::string task_to_string(Task task);

// Natural-language prompt with exactly one {label} slot.
struct PromptTemplate {
  Task task;
  std::string pattern;

  void validate() const;
};

// Per-task defaults:
//   age      "A {label} year old"
//   gender   "A {label}"
//   emotion  "A person talking in a {label} voice"
//   sound    "The sound of {label}"
//   language "{label} speaker"
//   keyword  "{label}"
PromptTemplate default_template(Task task);

std::string build_prompt(const PromptTemplate& t, const std::string& label);

}  // namespace duet::eval

#endif  // DUET_EVAL_TEMPLATES_HPP_
