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

#include "repair/sexpr.h"

#include <cctype>
#include <charconv>

namespace repair {

ParseError::ParseError(const std::string &what, std::size_t offset)
    : std::runtime_error(what + " at byte " + std::to_string(offset)),
      offset_(offset) {}

bool Sexpr::is_symbol(std::string_view name) const {
  if (kind != Kind::kSymbol || text.size() != name.size()) return false;
  for (std::size_t i = 0; i < name.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[i])) !=
        std::tolower(static_cast<unsigned char>(name[i]))) {
      return false;
    }
  }
  return true;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string to_upper(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  std::size_t pos() const { return pos_; }

  Sexpr read() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') return read_list();
    if (c == ')') throw ParseError("unbalanced ')'", pos_);
    if (c == '"') return read_string();
    return read_atom();
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  Sexpr read_list() {
    Sexpr list;
    list.kind = Sexpr::Kind::kList;
    list.offset = pos_;
    ++pos_;  // '('
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) {
        throw ParseError("unbalanced '(' opened", list.offset);
      }
      if (text_[pos_] == ')') {
        ++pos_;
        return list;
      }
      list.items.push_back(read());
    }
  }

  Sexpr read_string() {
    Sexpr s;
    s.kind = Sexpr::Kind::kString;
    s.offset = pos_;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      s.text.push_back(text_[pos_++]);
    }
    if (pos_ >= text_.size()) throw ParseError("unterminated string", s.offset);
    ++pos_;  // closing quote
    return s;
  }

  Sexpr read_atom() {
    Sexpr a;
    a.offset = pos_;
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(' || c == ')' || c == '"' || c == ';' ||
          std::isspace(static_cast<unsigned char>(c))) {
        break;
      }
      ++pos_;
    }
    std::string_view tok = text_.substr(start, pos_ - start);
    long long value = 0;
    const char *first = tok.data();
    const char *last = tok.data() + tok.size();
    if (!tok.empty() && tok != "-" && tok != "+") {
      const char *digits = first;
      if (*digits == '-') ++digits;
      if (digits != last && std::isdigit(static_cast<unsigned char>(*digits))) {
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec == std::errc() && ptr == last) {
          a.kind = Sexpr::Kind::kInteger;
          a.integer = value;
          a.text = std::string(tok);
          return a;
        }
      }
    }
    a.kind = Sexpr::Kind::kSymbol;
    a.text = std::string(tok);
    return a;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Sexpr> read_all_sexprs(std::string_view text) {
  Reader reader(text);
  std::vector<Sexpr> forms;
  while (!reader.at_end()) forms.push_back(reader.read());
  return forms;
}

Sexpr read_one_sexpr(std::string_view text) {
  Reader reader(text);
  if (reader.at_end()) throw ParseError("empty input", 0);
  Sexpr form = reader.read();
  if (!reader.at_end()) {
    throw ParseError("trailing text after expression", reader.pos());
  }
  return form;
}

}  // namespace repair
