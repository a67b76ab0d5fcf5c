// Copyright 2026 The Interlingua Repair Authors
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

// Minimal s-expression reader shared by the feature-structure, spec and
// record formats. Every node remembers the byte offset it started at so
// that the format-specific layers can report errors precisely.

#ifndef REPAIR_SEXPR_H_
#define REPAIR_SEXPR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace repair {

// Raised by every text reader in the library. offset() is a byte offset
// into the text that was being read.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &what, std::size_t offset);

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct Sexpr {
  enum class Kind { kSymbol, kInteger, kString, kList };

  Kind kind = Kind::kList;
  std::string text;        // symbol (as written) or decoded string
  long long integer = 0;   // valid for kInteger
  std::vector<Sexpr> items;
  std::size_t offset = 0;

  bool is_list() const { return kind == Kind::kList; }
  bool is_symbol() const { return kind == Kind::kSymbol; }
  bool is_atom() const { return kind != Kind::kList; }

  // True if this is a symbol equal to `name`, ignoring ASCII case.
  bool is_symbol(std::string_view name) const;
};

// Reads every top-level form in `text`. `;` starts a comment that runs to
// the end of the line.
std::vector<Sexpr> read_all_sexprs(std::string_view text);

// Reads exactly one form; trailing non-comment text is an error.
Sexpr read_one_sexpr(std::string_view text);

std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);

}  // namespace repair

#endif  // REPAIR_SEXPR_H_
