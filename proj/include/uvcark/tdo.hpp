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

#pragma once

#include "uvcark/bitstring.hpp"
#include "uvcark/restore.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace uvcark {

/// How each packaged object is to be treated by a future consumer.
enum class PartRole {
  Payload,             // the original data, untransformed
  PayloadTransformed,  // optional reworked form that simplifies the program
  UvcProgram,          // Item C
  DocAlphabet,         // Item A
  DocDescription,      // Item B
  DocSchema,           // Item D
  DocInvocation,       // Item E
  Other,
};

std::string_view to_string(PartRole role);
std::optional<PartRole> part_role_from_string(std::string_view s);

struct TdoPart {
  std::string name;        // unique ASCII token
  PartRole role = PartRole::Other;
  std::string media_hint;  // free text, may be empty
  std::uint64_t bits = 0;  // true bit length; content is zero-padded to bytes
  std::vector<std::uint8_t> content;
  std::string sha256;      // hex digest of content bytes

  BitString bit_string() const { return BitString::from_bytes(content, bits); }
};

struct ProvenanceEvent {
  std::string who, when, what;
};

struct TdoRelationship {
  std::string from, to, label;
};

struct TdoLink {
  std::string ref;     // opaque external reference, never dereferenced here
  std::string sha256;  // expected digest of the referent
};

/// A packaged, self-describing, sealed archival object: identifier, metadata
/// and provenance, a manifest of typed parts, a relationship table binding
/// parts together, sealed external references, and the seal itself.
struct Tdo {
  std::string id;       // URI-like unique string
  std::string created;  // UTC ISO 8601
  std::string title;
  std::vector<ProvenanceEvent> provenance;
  std::vector<TdoPart> parts;
  std::vector<TdoRelationship> relationships;
  std::vector<TdoLink> links;
  std::string seal;  // hex digest; see seal_digest()

  const TdoPart* part(std::string_view name) const;
  const TdoPart* first_with_role(PartRole role) const;
};

class TdoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The seal binds the identifier, the manifest (names, bit lengths, part
/// digests, in order), and the external links. SHA-256 over the ASCII string:
/// id "\n", then per part "name:bits:digest\n", then per link "ref:digest\n".
std::string seal_digest(const Tdo& tdo);

/// Serializes to the container XML, computing part digests and the seal.
/// Throws TdoError on duplicate part names or dangling relationship
/// endpoints. Output is deterministic: fixed element and attribute order,
/// two-space indentation, UTF-8, base64 content.
std::vector<std::uint8_t> pack(Tdo tdo);

/// Parses container bytes. Declared digests and seal are preserved verbatim
/// for later verification, never recomputed here.
Tdo unpack(std::span<const std::uint8_t> bytes);

struct VerifyReport {
  struct Entry {
    bool pass;
    std::string check;   // e.g. "digest:payload.rle"
    std::string detail;
  };
  std::vector<Entry> entries;

  bool all_pass() const;
  /// Line-oriented ASCII: "PASS <check>" / "FAIL <check> <detail>".
  std::string to_text() const;
};

/// Integrity report: per part, recomputed-vs-declared digest and bit-length
/// plausibility; the seal recomputed from part contents; and role
/// completeness (a uvc-program part demands exactly one doc-invocation).
/// All findings are report entries; verify itself never throws.
VerifyReport verify(const Tdo& tdo);

/// End-to-end restore: refuses (throws TdoError, report text included) unless
/// verify passes, then parses the doc-invocation part and runs the program
/// against parts resolved from the container.
RestoreResult restore_from_tdo(const Tdo& tdo, std::uint64_t fuel, MachineLimits limits = {});

}  // namespace uvcark
