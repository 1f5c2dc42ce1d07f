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

#include "duet/eval/templates.hpp"

#include "duet/error.hpp"

namespace duet::eval {

namespace {
constexpr const char* kSlot = "{label}";
}

Task task_from_string(const std::string& s) {
  if (s == "age") return Task::kAge;
  if (s == "gender") return Task::kGender;
  if (s == "emotion") return Task::kEmotion;
  if (s == "sound") return Task::kSound;
  if (s == "language") return Task::kLanguage;
  if (s == "keyword") return Task::kKeyword;
  throw ArgumentError("unknown task: " + s);
}

std::string task_to_string(Task task) {
  switch (task) {
    case Task::kAge:
      return "age";
    case Task::kGender:
      return "gender";
    case Task::kEmotion:
      return "emotion";
    case Task::kSound:
      return "sound";
    case Task::kLanguage:
      return "language";
    case Task::kKeyword:
      return "keyword";
  }
  return "unknown";
}

void PromptTemplate::validate() const {
  const auto first = pattern.find(kSlot);
  if (first == std::string::npos) {
    throw ArgumentError("template must contain one {label} slot: " + pattern);
  }
  if (pattern.find(kSlot, first + 1) != std::string::npos) {
    throw ArgumentError("template must contain exactly one {label} slot: " + pattern);
  }
}

PromptTemplate default_template(Task task) {
  switch (task) {
    case Task::kAge:
      return {task, "A {label} year old"};
    case Task::kGender:
      return {task, "A {label}"};
    case Task::kEmotion:
      return {task, "A person talking in a {label} voice"};
    case Task::kSound:
      return {task, "The sound of {label}"};
    case Task::kLanguage:
      return {task, "{label} speaker"};
    case Task::kKeyword:
      return {task, "{label}"};
  }
  throw ArgumentError("unknown task");
}

std::string build_prompt(const PromptTemplate& t, const std::string& label) {
  if (label.empty()) throw ArgumentError("label must be nonempty");
  t.validate();
  std::string out = t.pattern;
  out.replace(out.find(kSlot), std::string(kSlot).size(), label);
  return out;
}

}  // namespace duet::eval
