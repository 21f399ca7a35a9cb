#pragma once

#include <string>

#include "json.hpp"
#include "tilejep/canonical.hpp"
#include "tilejep/checker.hpp"
#include "tilejep/classdesc.hpp"
#include "tilejep/tiling.hpp"

namespace tilejep::io {

using nlohmann::json;

// Readers throw ParseError on malformed documents and the domain errors of
// the validated types (BadTileId, InvalidTiling, ...) on bad content.

json to_json(const MultiPerm& s);
MultiPerm mperm_from_json(const json& j);

json to_json(const StringTilingProblem& p);
StringTilingProblem string_problem_from_json(const json& j);

json to_json(const WangProblem& p);
WangProblem wang_problem_from_json(const json& j);

/// {"kind":"periodic","px","py","table"} or {"kind":"window","w","h","rows"}.
json to_json(const Tiling& t);
Tiling tiling_from_json(const json& j);

json to_json(const ClassDescriptor& c);
/// Rebuilds the gadget family from variant, size and seed.
ClassDescriptor class_from_json(const json& j);

json to_json(const BlockCodec& codec);
json to_json(const TilingVerdict& v);

/// {"member":true} for members; otherwise violations (and truncated when set).
json to_json(const Verdict& v);

json ledger_json(const CanonicalBuild& b, const GadgetSet& g);

/// Detected copies, special intervals, coordinates, weak coordinates per
/// pairing, origins and axes, and the verdict.
json explain_json(const TaggedStructure& t, const Verdict& v);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace tilejep::io
