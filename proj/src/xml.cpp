#include "termclamp/xml.hpp"

namespace termclamp::xml {

std::string escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

namespace {

void write(const Element& e, std::string& out) {
  out += '<';
  out += e.name;
  for (const auto& [k, v] : e.attributes) {
    out += ' ';
    out += k;
    out += "=\"";
    out += escape(v);
    out += '"';
  }
  if (e.children.empty() && e.text.empty()) {
    out += "/>";
    return;
  }
  out += '>';
  out += escape(e.text);
  for (const auto& c : e.children) write(c, out);
  out += "</";
  out += e.name;
  out += '>';
}

}  // namespace

std::string Element::serialize() const {
  std::string out;
  write(*this, out);
  return out;
}

}  // namespace termclamp::xml
