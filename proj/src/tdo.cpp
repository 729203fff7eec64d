/*
   Copyright 2026 The uvcark Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "uvcark/tdo.hpp"

#include "uvcark/base64.hpp"
#include "uvcark/digest.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace uvcark {

namespace {

// Container format version attribute; records the digest algorithm so a 2105
// reader need not guess it.
constexpr std::string_view kContainerVersion = "1-sha256";

// ---------------------------------------------------------------------------
// Minimal XML subset: elements, attributes, text, the five standard entities.
// The container layout is fixed, so a tiny strict reader/writer keeps packing
// byte-deterministic.
// ---------------------------------------------------------------------------

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct XmlElement {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<XmlElement> children;
  std::string text;

  const std::string* attr(std::string_view key) const {
    for (const auto& [k, v] : attrs) {
      if (k == key) return &v;
    }
    return nullptr;
  }
  const XmlElement* child(std::string_view tag) const {
    for (const auto& c : children) {
      if (c.name == tag) return &c;
    }
    return nullptr;
  }
};

class XmlParser {
 public:
  explicit XmlParser(std::string_view text) : text_(text) {}

  XmlElement parse_document() {
    skip_ws();
    if (text_.substr(pos_).starts_with("<?")) {
      const std::size_t end = text_.find("?>", pos_);
      if (end == std::string_view::npos) fail("unterminated XML declaration");
      pos_ = end + 2;
    }
    skip_ws();
    XmlElement root = parse_element();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing content after document element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw TdoError("malformed XML at byte " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r' || text_[pos_] == '\t')) {
      ++pos_;
    }
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool name_char(char c) const {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.' ||
           c == ':';
  }

  std::string parse_name() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("expected name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string unescape(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size();) {
      if (raw[i] != '&') {
        out.push_back(raw[i++]);
        continue;
      }
      const std::size_t semi = raw.find(';', i);
      if (semi == std::string_view::npos) fail("unterminated entity");
      const std::string_view ent = raw.substr(i + 1, semi - i - 1);
      if (ent == "amp") out.push_back('&');
      else if (ent == "lt") out.push_back('<');
      else if (ent == "gt") out.push_back('>');
      else if (ent == "quot") out.push_back('"');
      else if (ent == "apos") out.push_back('\'');
      else fail("unknown entity &" + std::string(ent) + ";");
      i = semi + 1;
    }
    return out;
  }

  XmlElement parse_element() {
    if (peek() != '<') fail("expected element");
    ++pos_;
    XmlElement el;
    el.name = parse_name();
    while (true) {
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        if (peek() != '>') fail("expected '>' after '/'");
        ++pos_;
        return el;  // self-closing
      }
      if (peek() == '>') {
        ++pos_;
        break;
      }
      const std::string key = parse_name();
      skip_ws();
      if (peek() != '=') fail("expected '=' in attribute");
      ++pos_;
      skip_ws();
      const char quote = peek();
      if (quote != '"' && quote != '\'') fail("expected quoted attribute value");
      ++pos_;
      const std::size_t end = text_.find(quote, pos_);
      if (end == std::string_view::npos) fail("unterminated attribute value");
      el.attrs.emplace_back(key, unescape(text_.substr(pos_, end - pos_)));
      pos_ = end + 1;
    }
    // Content: children and character data until the closing tag.
    while (true) {
      const std::size_t lt = text_.find('<', pos_);
      if (lt == std::string_view::npos) fail("missing closing tag for <" + el.name + ">");
      el.text += unescape(text_.substr(pos_, lt - pos_));
      pos_ = lt;
      if (text_.substr(pos_).starts_with("</")) {
        pos_ += 2;
        const std::string closing = parse_name();
        if (closing != el.name) {
          fail("mismatched closing tag </" + closing + "> for <" + el.name + ">");
        }
        skip_ws();
        if (peek() != '>') fail("expected '>'");
        ++pos_;
        return el;
      }
      el.children.push_back(parse_element());
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw TdoError(msg);
}

std::uint64_t parse_u64_attr(const XmlElement& el, std::string_view key) {
  const std::string* v = el.attr(key);
  require(v != nullptr, "schema: <" + el.name + "> missing attribute " + std::string(key));
  require(!v->empty() && std::all_of(v->begin(), v->end(),
                                     [](char c) { return c >= '0' && c <= '9'; }),
          "schema: bad numeric attribute " + std::string(key));
  return std::stoull(*v);
}

std::string required_attr(const XmlElement& el, std::string_view key) {
  const std::string* v = el.attr(key);
  require(v != nullptr, "schema: <" + el.name + "> missing attribute " + std::string(key));
  return *v;
}

}  // namespace

std::string_view to_string(PartRole role) {
  switch (role) {
    case PartRole::Payload: return "payload";
    case PartRole::PayloadTransformed: return "payload-transformed";
    case PartRole::UvcProgram: return "uvc-program";
    case PartRole::DocAlphabet: return "doc-alphabet";
    case PartRole::DocDescription: return "doc-description";
    case PartRole::DocSchema: return "doc-schema";
    case PartRole::DocInvocation: return "doc-invocation";
    case PartRole::Other: return "other";
  }
  return "other";
}

std::optional<PartRole> part_role_from_string(std::string_view s) {
  for (PartRole r : {PartRole::Payload, PartRole::PayloadTransformed, PartRole::UvcProgram,
                     PartRole::DocAlphabet, PartRole::DocDescription, PartRole::DocSchema,
                     PartRole::DocInvocation, PartRole::Other}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

const TdoPart* Tdo::part(std::string_view name) const {
  for (const auto& p : parts) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const TdoPart* Tdo::first_with_role(PartRole role) const {
  for (const auto& p : parts) {
    if (p.role == role) return &p;
  }
  return nullptr;
}

std::string seal_digest(const Tdo& tdo) {
  std::string summary = tdo.id + "\n";
  for (const auto& p : tdo.parts) {
    summary += p.name + ":" + std::to_string(p.bits) + ":" + p.sha256 + "\n";
  }
  for (const auto& l : tdo.links) {
    summary += l.ref + ":" + l.sha256 + "\n";
  }
  return sha256_hex(summary);
}

std::vector<std::uint8_t> pack(Tdo tdo) {
  std::set<std::string> names;
  for (auto& p : tdo.parts) {
    require(names.insert(p.name).second, "duplicate part name '" + p.name + "'");
    require(p.bits <= p.content.size() * 8ull && (p.bits + 7) / 8 == p.content.size(),
            "part '" + p.name + "': bit length " + std::to_string(p.bits) +
                " inconsistent with " + std::to_string(p.content.size()) + " content bytes");
    p.sha256 = sha256_hex(p.content);
  }
  for (const auto& r : tdo.relationships) {
    require(names.count(r.from) != 0,
            "relationship endpoint '" + r.from + "' names no part");
    require(names.count(r.to) != 0, "relationship endpoint '" + r.to + "' names no part");
  }
  tdo.seal = seal_digest(tdo);

  std::string x;
  x += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  x += "<tdo id=\"" + xml_escape(tdo.id) + "\" version=\"" + std::string(kContainerVersion) +
       "\">\n";
  x += "  <metadata>\n";
  x += "    <created>" + xml_escape(tdo.created) + "</created>\n";
  if (!tdo.title.empty()) {
    x += "    <title>" + xml_escape(tdo.title) + "</title>\n";
  }
  if (tdo.provenance.empty()) {
    x += "    <provenance/>\n";
  } else {
    x += "    <provenance>\n";
    for (const auto& e : tdo.provenance) {
      x += "      <event who=\"" + xml_escape(e.who) + "\" when=\"" + xml_escape(e.when) +
           "\" what=\"" + xml_escape(e.what) + "\"/>\n";
    }
    x += "    </provenance>\n";
  }
  x += "  </metadata>\n";
  if (tdo.parts.empty()) {
    x += "  <manifest/>\n";
  } else {
    x += "  <manifest>\n";
    for (const auto& p : tdo.parts) {
      x += "    <part name=\"" + xml_escape(p.name) + "\" role=\"" + std::string(to_string(p.role)) +
           "\"";
      if (!p.media_hint.empty()) x += " media=\"" + xml_escape(p.media_hint) + "\"";
      x += " bits=\"" + std::to_string(p.bits) + "\" sha256=\"" + p.sha256 + "\">";
      x += base64_encode(p.content);
      x += "</part>\n";
    }
    x += "  </manifest>\n";
  }
  if (tdo.relationships.empty()) {
    x += "  <relationships/>\n";
  } else {
    x += "  <relationships>\n";
    for (const auto& r : tdo.relationships) {
      x += "    <rel from=\"" + xml_escape(r.from) + "\" to=\"" + xml_escape(r.to) +
           "\" label=\"" + xml_escape(r.label) + "\"/>\n";
    }
    x += "  </relationships>\n";
  }
  if (tdo.links.empty()) {
    x += "  <links/>\n";
  } else {
    x += "  <links>\n";
    for (const auto& l : tdo.links) {
      x += "    <link ref=\"" + xml_escape(l.ref) + "\" sha256=\"" + l.sha256 + "\"/>\n";
    }
    x += "  </links>\n";
  }
  x += "  <seal sha256=\"" + tdo.seal + "\"/>\n";
  x += "</tdo>\n";
  return std::vector<std::uint8_t>(x.begin(), x.end());
}

Tdo unpack(std::span<const std::uint8_t> bytes) {
  const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  XmlParser parser(text);
  const XmlElement root = parser.parse_document();
  require(root.name == "tdo", "schema: document element must be <tdo>");

  Tdo tdo;
  tdo.id = required_attr(root, "id");
  const std::string version = required_attr(root, "version");
  require(version == kContainerVersion,
          "schema: unsupported container version '" + version + "'");

  if (const XmlElement* meta = root.child("metadata")) {
    if (const XmlElement* created = meta->child("created")) tdo.created = created->text;
    if (const XmlElement* title = meta->child("title")) tdo.title = title->text;
    if (const XmlElement* prov = meta->child("provenance")) {
      for (const auto& e : prov->children) {
        require(e.name == "event", "schema: <provenance> may contain only <event>");
        tdo.provenance.push_back(
            {required_attr(e, "who"), required_attr(e, "when"), required_attr(e, "what")});
      }
    }
  }
  if (const XmlElement* manifest = root.child("manifest")) {
    for (const auto& p : manifest->children) {
      require(p.name == "part", "schema: <manifest> may contain only <part>");
      TdoPart part;
      part.name = required_attr(p, "name");
      const std::string role = required_attr(p, "role");
      const auto parsed_role = part_role_from_string(role);
      require(parsed_role.has_value(), "schema: unknown part role '" + role + "'");
      part.role = *parsed_role;
      if (const std::string* media = p.attr("media")) part.media_hint = *media;
      part.bits = parse_u64_attr(p, "bits");
      part.sha256 = required_attr(p, "sha256");
      try {
        part.content = base64_decode(p.text);
      } catch (const std::invalid_argument& e) {
        throw TdoError("part '" + part.name + "': " + e.what());
      }
      tdo.parts.push_back(std::move(part));
    }
  }
  if (const XmlElement* rels = root.child("relationships")) {
    for (const auto& r : rels->children) {
      require(r.name == "rel", "schema: <relationships> may contain only <rel>");
      tdo.relationships.push_back(
          {required_attr(r, "from"), required_attr(r, "to"), required_attr(r, "label")});
    }
  }
  if (const XmlElement* links = root.child("links")) {
    for (const auto& l : links->children) {
      require(l.name == "link", "schema: <links> may contain only <link>");
      tdo.links.push_back({required_attr(l, "ref"), required_attr(l, "sha256")});
    }
  }
  if (const XmlElement* seal = root.child("seal")) {
    tdo.seal = required_attr(seal, "sha256");
  }
  return tdo;
}

bool VerifyReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.pass; });
}

std::string VerifyReport::to_text() const {
  std::string out;
  for (const auto& e : entries) {
    out += e.pass ? "PASS " + e.check : "FAIL " + e.check + " " + e.detail;
    out += "\n";
  }
  return out;
}

VerifyReport verify(const Tdo& tdo) {
  VerifyReport report;
  auto add = [&](bool pass, std::string check, std::string detail) {
    report.entries.push_back({pass, std::move(check), pass ? "" : std::move(detail)});
  };

  Tdo recomputed = tdo;  // declared values below, recomputed digests here
  for (auto& p : recomputed.parts) p.sha256 = sha256_hex(p.content);

  for (std::size_t i = 0; i < tdo.parts.size(); ++i) {
    const TdoPart& p = tdo.parts[i];
    add(p.sha256 == recomputed.parts[i].sha256, "digest:" + p.name,
        "declared " + p.sha256 + " recomputed " + recomputed.parts[i].sha256);

    const std::uint64_t expect_bytes = (p.bits + 7) / 8;
    bool plausible = p.content.size() == expect_bytes;
    std::string detail = "declared " + std::to_string(p.bits) + " bits vs " +
                         std::to_string(p.content.size()) + " content bytes";
    if (plausible && (p.bits & 7) != 0 && !p.content.empty()) {
      const unsigned used = static_cast<unsigned>(p.bits & 7);
      if ((p.content.back() & static_cast<std::uint8_t>(0xFF >> used)) != 0) {
        plausible = false;
        detail = "padding bits past bit " + std::to_string(p.bits) + " are not zero";
      }
    }
    add(plausible, "bits:" + p.name, std::move(detail));
  }

  add(seal_digest(recomputed) == tdo.seal, "seal",
      "declared " + tdo.seal + " recomputed " + seal_digest(recomputed));

  const bool has_program = tdo.first_with_role(PartRole::UvcProgram) != nullptr;
  const auto invocations = std::count_if(tdo.parts.begin(), tdo.parts.end(), [](const TdoPart& p) {
    return p.role == PartRole::DocInvocation;
  });
  add(!has_program || invocations == 1, "completeness",
      "uvc-program present with " + std::to_string(invocations) +
          " doc-invocation parts (need exactly 1)");
  return report;
}

RestoreResult restore_from_tdo(const Tdo& tdo, std::uint64_t fuel, MachineLimits limits) {
  const VerifyReport report = verify(tdo);
  if (!report.all_pass()) {
    throw TdoError("verification failed, refusing to restore:\n" + report.to_text());
  }
  const TdoPart* invocation = tdo.first_with_role(PartRole::DocInvocation);
  if (invocation == nullptr) {
    throw TdoError("no doc-invocation part; nothing describes how to run this object");
  }
  const std::string text(invocation->content.begin(), invocation->content.end());
  const InvocationDescriptor descriptor = parse_invocation_descriptor(text);
  const PartResolver resolver = [&](const std::string& name) -> std::optional<BitString> {
    const TdoPart* p = tdo.part(name);
    if (p == nullptr) return std::nullopt;
    return p->bit_string();
  };
  return restore_run(descriptor, resolver, fuel, limits);
}

}  // namespace uvcark
