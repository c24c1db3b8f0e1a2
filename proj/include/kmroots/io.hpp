#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kmroots/closed_sets.hpp"
#include "kmroots/levi.hpp"

namespace kmroots::io {

/// Insertion-ordered JSON, so that printed objects keep a stable layout.
using Json = nlohmann::ordered_json;

/// Reads a whole file; throws Error(InvalidInput) if it cannot be opened.
std::string read_file(const std::string& path);

/// {"rank": n, "matrix": [[...], ...]}. Syntax errors are reported as
/// "source:line:col: message" with kind ParseError; a matrix that is not a
/// GCM throws GcmError.
GCM parse_gcm(std::string_view text, std::string_view source = "<input>");
GCM load_gcm(const std::string& path);

/// A list of integer vectors of length rank, e.g. [[1,0],[2,1]].
std::vector<RootVec> parse_roots(std::string_view text, std::size_t rank,
                                 std::string_view source = "<input>");
std::vector<RootVec> load_roots(const std::string& path, std::size_t rank);

Json to_json(const GCM& gcm);
Json to_json(const RootVec& v);
Json to_json(const std::vector<RootVec>& vs);
Json to_json(const RootSet& s);
Json to_json(const SumWitness& w);

/// {"height_bound": h, "roots": [{"coeffs": [...], "real": bool}, ...]}.
Json slice_to_json(const RootSlice& slice);
/// {"status": ..., "cap": c, "roots": [...], "witness": [...] or null}.
Json to_json(const ClosureResult& r);
/// {"psi_s": [...], "psi_n": [...], "type": "A1xB2", "coroot_rank": k,
///  "checks": {name: {"passed": bool, "detail": str}}, "passed": bool}.
Json to_json(const LeviReport& r);

/// Two-space indentation, arrays of scalars kept on one line, trailing
/// newline. Valid JSON.
std::string dump(const Json& j);

}  // namespace kmroots::io
