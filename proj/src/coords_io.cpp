#include "fwp/coords_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fwp/error.hpp"

namespace fwp {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::kParse, "coordinate file: " + msg); }

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) bad(std::string("unknown field '") + it.key() + "' in " + where);
  }
}

}  // namespace

CoordFn coords_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    bad(e.what());
  }
  if (!doc.is_object()) bad("top level must be an object");
  only_keys(doc, {"kind", "model", "entries"}, "top level");
  if (!doc.contains("kind") || !doc["kind"].is_string()) bad("missing string field 'kind'");
  if (!doc.contains("entries") || !doc["entries"].is_array()) bad("missing array field 'entries'");
  if (doc.contains("model") && doc["model"] != "H") bad("only model \"H\" is supported");

  const std::string kind = doc["kind"];
  CoordKind k;
  if (kind == "shear") k = CoordKind::kShear;
  else if (kind == "diamond") k = CoordKind::kDiamond;
  else bad("kind must be \"shear\" or \"diamond\"");

  CoordFn out(k);
  std::set<Edge> seen;
  for (const json& ent : doc["entries"]) {
    if (!ent.is_object()) bad("entries must be objects");
    only_keys(ent, {"edge", "value"}, "entry");
    if (!ent.contains("edge") || !ent["edge"].is_array() || ent["edge"].size() != 2 ||
        !ent["edge"][0].is_string() || !ent["edge"][1].is_string())
      bad("entry needs \"edge\": [\"p/q\", \"r/s\"]");
    if (!ent.contains("value") || !ent["value"].is_number()) bad("entry needs a numeric \"value\"");
    double v = ent["value"].get<double>();
    if (!std::isfinite(v)) bad("non-finite value");
    Edge e = Edge::root();
    try {
      e = Edge::parse(ent["edge"][0].get<std::string>(), ent["edge"][1].get<std::string>());
    } catch (const Error& err) {
      bad(err.what());
    }
    if (!seen.insert(e).second) bad("duplicate edge " + e.str());
    out.set(e, v);
  }
  return out;
}

std::string coords_to_json(const CoordFn& f) {
  json doc;
  doc["kind"] = kind_name(f.kind());
  doc["model"] = "H";
  json entries = json::array();
  for (const auto& [e, v] : f.entries()) {
    entries.push_back({{"edge", {e.a().str(), e.b().str()}}, {"value", v}});
  }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

CoordFn load_coords(const std::string& path) { return coords_from_json(read_file(path)); }

void save_coords(const std::string& path, const CoordFn& f) { write_file(path, coords_to_json(f)); }

}  // namespace fwp
