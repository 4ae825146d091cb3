#pragma once

#include <string>
#include <utility>
#include <vector>

namespace termclamp::xml {

/// Minimal element tree; text is escaped on serialization.
struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Element> children;
  std::string text;

  Element() = default;
  explicit Element(std::string tag) : name(std::move(tag)) {}
  Element(std::string tag, std::string content) : name(std::move(tag)), text(std::move(content)) {}
  Element(std::string tag, std::vector<Element> kids) : name(std::move(tag)), children(std::move(kids)) {}

  Element& attr(std::string key, std::string value) {
    attributes.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  Element& add(Element child) {
    children.push_back(std::move(child));
    return *this;
  }

  std::string serialize() const;
};

std::string escape(const std::string& text);

}  // namespace termclamp::xml
