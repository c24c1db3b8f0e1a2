#include "kmroots/io.hpp"

#include <fstream>
#include <sstream>

namespace kmroots::io {

namespace {

[[noreturn]] void parse_fail(std::string_view source, const std::string& what) {
  throw Error(ErrorKind::ParseError, std::string(source) + ": " + what);
}

Json parse_text(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // e.byte counts characters read, so the offending one sits at byte - 1.
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw Error(ErrorKind::ParseError, std::string(source) + ":" + std::to_string(line) + ":" +
                                           std::to_string(col) + ": " + msg);
  }
}

Coeff as_coeff(const Json& j, std::string_view source, const std::string& where) {
  if (!j.is_number_integer()) parse_fail(source, where + ": expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(
                                                           std::numeric_limits<Coeff>::max()))
    parse_fail(source, where + ": integer out of range");
  return j.get<Coeff>();
}

std::vector<Coeff> as_vector(const Json& j, std::string_view source, const std::string& where) {
  if (!j.is_array()) parse_fail(source, where + ": expected an array of integers");
  std::vector<Coeff> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k)
    out.push_back(as_coeff(j[k], source, where + "/" + std::to_string(k)));
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GCM parse_gcm(std::string_view text, std::string_view source) {
  const Json j = parse_text(text, source);
  if (!j.is_object()) parse_fail(source, "expected an object with \"rank\" and \"matrix\"");
  if (!j.contains("matrix")) parse_fail(source, "missing \"matrix\"");
  const Json& m = j["matrix"];
  if (!m.is_array() || m.empty()) parse_fail(source, "/matrix: expected a nonempty array");
  IntMatrix a;
  for (std::size_t r = 0; r < m.size(); ++r) a.push_back(as_vector(m[r], source, "/matrix/" + std::to_string(r)));
  for (std::size_t r = 0; r < a.size(); ++r)
    if (a[r].size() != a.size())
      parse_fail(source, "/matrix/" + std::to_string(r) + ": row length " +
                             std::to_string(a[r].size()) + ", expected " +
                             std::to_string(a.size()));
  if (j.contains("rank")) {
    const Coeff n = as_coeff(j["rank"], source, "/rank");
    if (n != static_cast<Coeff>(a.size()))
      parse_fail(source, "/rank: " + std::to_string(n) + " does not match a " +
                             std::to_string(a.size()) + "x" + std::to_string(a.size()) +
                             " matrix");
  } else {
    parse_fail(source, "missing \"rank\"");
  }
  return validate_gcm(a);
}

GCM load_gcm(const std::string& path) { return parse_gcm(read_file(path), path); }

std::vector<RootVec> parse_roots(std::string_view text, std::size_t rank,
                                 std::string_view source) {
  const Json j = parse_text(text, source);
  if (!j.is_array()) parse_fail(source, "expected a list of integer vectors");
  std::vector<RootVec> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string where = "/" + std::to_string(k);
    std::vector<Coeff> c = as_vector(j[k], source, where);
    if (c.size() != rank)
      parse_fail(source, where + ": length " + std::to_string(c.size()) + ", expected " +
                             std::to_string(rank));
    out.emplace_back(std::move(c));
  }
  return out;
}

std::vector<RootVec> load_roots(const std::string& path, std::size_t rank) {
  return parse_roots(read_file(path), rank, path);
}

Json to_json(const GCM& gcm) {
  return Json{{"rank", gcm.rank()}, {"matrix", gcm.matrix()}};
}

Json to_json(const RootVec& v) { return v.coeffs(); }

Json to_json(const std::vector<RootVec>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

Json to_json(const RootSet& s) { return to_json(s.vectors()); }

Json to_json(const SumWitness& w) {
  return Json{{"a", to_json(w.a.root)}, {"b", to_json(w.b.root)}, {"sum", to_json(w.sum)}};
}

Json slice_to_json(const RootSlice& slice) {
  Json roots = Json::array();
  for (const RootVec& v : slice.roots())
    roots.push_back(Json{{"coeffs", to_json(v)}, {"real", slice.is_real(v)}});
  return Json{{"height_bound", slice.height_bound()}, {"roots", std::move(roots)}};
}

Json to_json(const ClosureResult& r) {
  return Json{{"status", to_string(r.status)},
              {"cap", r.cap},
              {"roots", to_json(r.roots)},
              {"witness", r.witness ? to_json(*r.witness) : Json(nullptr)}};
}

Json to_json(const LeviReport& r) {
  auto check = [](const LeviCheck& c) {
    return Json{{"passed", c.passed}, {"detail", c.detail}};
  };
  return Json{{"psi_s", to_json(r.psi_s)},
              {"psi_n", to_json(r.psi_n)},
              {"type", r.type.to_string()},
              {"coroot_rank", r.coroot_rank},
              {"filtration_levels", r.filtration_levels},
              {"checks",
               {{"symmetric_closed", check(r.symmetric_closed)},
                {"nilradical_ideal", check(r.nilradical_ideal)},
                {"nilradical_filtered", check(r.nilradical_filtered)},
                {"classified", check(r.classified)}}},
              {"passed", r.all_passed()}};
}

namespace {

bool scalar_array(const Json& j) {
  for (const auto& e : j)
    if (e.is_structured()) return false;
  return true;
}

void dump_to(const Json& j, std::string& out, std::size_t indent) {
  const std::string pad(indent + 2, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t k = 0;
    for (const auto& [key, val] : j.items()) {
      out += pad + Json(key).dump() + ": ";
      dump_to(val, out, indent + 2);
      out += ++k < j.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "}";
  } else if (j.is_array() && !j.empty() && !scalar_array(j)) {
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      out += pad;
      dump_to(j[k], out, indent + 2);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t k = 0; k < j.size(); ++k) out += (k ? ", " : "") + j[k].dump();
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  dump_to(j, out, 0);
  return out + "\n";
}

}  // namespace kmroots::io
