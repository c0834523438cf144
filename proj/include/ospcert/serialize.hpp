#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ospcert/deformation.hpp"

namespace ospcert {

using Json = nlohmann::json;

enum class FieldKind { Q, QSqrt2 };

std::string field_name(FieldKind f);  // "Q", "Q(sqrt2)"
FieldKind field_parse(const std::string& s);

// Over Q a scalar is the string "p/q" (or "p"); over Q(sqrt2) it is the pair
// ["p/q", "r/s"] standing for p/q + r/s sqrt2. Writing an irrational value in
// a Q file throws IntegrityError.
Json scalar_to_json(const QuadScalar& x, FieldKind f);
QuadScalar scalar_from_json(const Json& j, FieldKind f);

extern const char* const kBasisOrderConvention;
extern const char* const kRelationConvention;
extern const char* const kWeightConvention;

Json algebra_to_json(const StructureConstants& sc);
StructureConstants algebra_from_json(const Json& j);

Json gamma_to_json(const StructureConstants& sc, const GammaStructure& gs);
// The algebra supplies the basis the entries refer to; header m, n must agree.
GammaStructure gamma_from_json(const Json& j, const StructureConstants& sc);

// Objects have sorted keys (nlohmann uses std::map), two-space indentation,
// trailing newline. The hash of a file is the SHA-256 of this text.
std::string canonical_dump(const Json& j);
std::string sha256_hex(const std::string& data);

std::filesystem::path algebra_path(const std::filesystem::path& dir, int m, int n);  // algebra_structures/B_m_n.json
std::filesystem::path gamma_path(const std::filesystem::path& dir, int m, int n);    // gamma_structures/B_m_n.json

struct StructureHashes {
    std::string algebra;
    std::string gamma;
};

StructureHashes structure_hashes(const Structures& s);

struct WriteResult {
    std::filesystem::path algebra_file, gamma_file;
    StructureHashes written, reloaded;
    bool identical() const { return written.algebra == reloaded.algebra && written.gamma == reloaded.gamma; }
};

// Writes both files, reads them back and re-serializes. A mismatch raises
// IntegrityError; the result records both hashes either way.
WriteResult write_structures(const std::filesystem::path& dir, const Structures& s);

bool structures_exist(const std::filesystem::path& dir, int m, int n);
// Throws UsageError when a file is missing or unreadable, IntegrityError when
// the content is inconsistent.
Structures read_structures(const std::filesystem::path& dir, int m, int n);

}  // namespace ospcert
