// Copyright 2026 The hcstruct Authors.
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

#pragma once

// Newick subset: names, parentheses, commas and the ';' terminator. Branch
// lengths (":1.5") and internal node names are accepted and dropped.

#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hcstruct/error.hpp"
#include "hcstruct/tree.hpp"

namespace hcs {

namespace detail {

class NewickParser {
 public:
  using Resolve = std::function<Vertex(std::string_view)>;

  NewickParser(std::string_view text, Resolve resolve)
      : text_(text), resolve_(std::move(resolve)) {}

  HcTree parse() {
    skip_ws();
    const NodeId root = subtree();
    skip_ws();
    expect(';');
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters after ';'");
    return builder_.build(root);
  }

 private:
  static bool is_name_char(char c) {
    switch (c) {
      case '(': case ')': case ',': case ':': case ';':
      case '[': case ']': case '\'':
      case ' ': case '\t': case '\n': case '\r':
        return false;
      default:
        return true;
    }
  }

  NodeId subtree() {
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      std::vector<NodeId> kids{subtree()};
      skip_ws();
      while (peek() == ',') {
        ++pos_;
        kids.push_back(subtree());
        skip_ws();
      }
      expect(')');
      name();  // internal label, ignored
      length();
      if (kids.size() < 2) fail("internal node with a single child");
      return builder_.join(std::move(kids));
    }
    const std::string_view label = name();
    if (label.empty()) fail("expected a leaf name");
    length();
    const Vertex v = resolve_(label);
    if (!seen_.emplace(v, true).second)
      throw Error(Errc::leaf_mismatch,
                  "leaf '" + std::string(label) + "' appears twice");
    return builder_.leaf(v);
  }

  std::string_view name() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  void length() {
    skip_ws();
    if (peek() != ':') return;
    ++pos_;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    const std::string digits(text_.substr(start, pos_ - start));
    std::size_t used = 0;
    try {
      (void)std::stod(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (digits.empty() || used != digits.size()) fail("bad branch length");
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::parse_error,
                what + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Resolve resolve_;
  TreeBuilder builder_;
  std::unordered_map<Vertex, bool> seen_;
};

}  // namespace detail

/// Parses against a fixed label table; unknown names raise LeafMismatch.
inline HcTree parse_newick(std::string_view text,
                           const std::vector<std::string>& labels) {
  std::unordered_map<std::string_view, Vertex> index;
  for (std::size_t i = 0; i < labels.size(); ++i)
    index.emplace(labels[i], static_cast<Vertex>(i));
  detail::NewickParser parser(text, [&](std::string_view name) {
    auto it = index.find(name);
    if (it == index.end())
      throw Error(Errc::leaf_mismatch,
                  "leaf '" + std::string(name) + "' is not a known vertex");
    return it->second;
  });
  return parser.parse();
}

/// Parses with vertex indices assigned in first-appearance order.
inline std::pair<HcTree, std::vector<std::string>> parse_newick(
    std::string_view text) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, Vertex> index;
  detail::NewickParser parser(text, [&](std::string_view name) {
    auto [it, inserted] =
        index.emplace(std::string(name), static_cast<Vertex>(labels.size()));
    if (inserted) labels.emplace_back(name);
    return it->second;
  });
  HcTree t = parser.parse();
  return {std::move(t), std::move(labels)};
}

/// Canonical Newick: children ordered by smallest contained leaf index.
/// Leaves print as labels[v], or as the bare index when labels is empty.
inline std::string serialize_newick(const HcTree& t,
                                    const std::vector<std::string>& labels = {}) {
  if (t.empty()) throw Error(Errc::invalid_param, "empty tree");
  std::string out;
  std::function<void(NodeId)> emit = [&](NodeId u) {
    const auto& nd = t.node(u);
    if (nd.is_leaf()) {
      if (labels.empty())
        out += std::to_string(nd.leaf);
      else
        out += labels.at(nd.leaf);
      return;
    }
    out += '(';
    bool first = true;
    for (NodeId c : detail::canonical_children(t, u)) {
      if (!first) out += ',';
      first = false;
      emit(c);
    }
    out += ')';
  };
  emit(t.root());
  out += ';';
  return out;
}

}  // namespace hcs
