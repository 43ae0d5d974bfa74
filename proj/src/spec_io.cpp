#include "mkit/spec_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>

#include "mkit/constructions.hpp"
#include "mkit/errors.hpp"

namespace mkit {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SchemaError(path + ": " + what);
}

const Json& field(const Json& o, const char* name, const std::string& path) {
  auto it = o.find(name);
  if (it == o.end()) fail(path, std::string("missing field '") + name + "'");
  return *it;
}

long long int_field(const Json& o, const char* name, const std::string& path,
                    long long lo, long long hi) {
  const Json& v = field(o, name, path);
  if (!v.is_number_integer())
    fail(path + "." + name, "must be an integer");
  long long x = v.get<long long>();
  if (x < lo || x > hi)
    fail(path + "." + name, "must be between " + std::to_string(lo) + " and " +
                                std::to_string(hi));
  return x;
}

void check_known_keys(const Json& o, const std::string& path,
                      std::initializer_list<const char*> keys) {
  for (const auto& item : o.items()) {
    bool known = item.key() == "type";
    for (const char* k : keys) known = known || item.key() == k;
    if (!known) fail(path, "unknown field '" + item.key() + "'");
  }
}

void check_label_array(const Json& v, const std::string& path,
                       long long expected) {
  if (!v.is_array()) fail(path, "must be an array of strings");
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_string())
      fail(path + "[" + std::to_string(i) + "]", "must be a string");
  if (expected >= 0 && static_cast<long long>(v.size()) != expected)
    fail(path, "must list exactly " + std::to_string(expected) + " labels");
}

void check_optional_labels(const Json& o, const std::string& path,
                           long long expected) {
  if (o.contains("labels"))
    check_label_array(o.at("labels"), path + ".labels", expected);
}

// Integer or "p", "p/q", "-p/q" with a non-zero denominator.
bool is_rational_literal(const std::string& s) {
  size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  size_t num_start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == num_start) return false;
  if (i == s.size()) return true;
  if (s[i] != '/') return false;
  ++i;
  size_t den_start = i;
  bool nonzero = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    nonzero = nonzero || s[i] != '0';
    ++i;
  }
  return i == s.size() && i > den_start && nonzero;
}

void check_matrix_entry(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return;
  if (v.is_string() && is_rational_literal(v.get<std::string>())) return;
  fail(path, "must be an integer or a rational string like \"3/4\"");
}

mpq_class entry_to_mpq(const Json& v) {
  if (v.is_number_integer())
    return mpq_class(std::to_string(v.get<long long>()));
  mpq_class q(v.get<std::string>());
  q.canonicalize();
  return q;
}

void check_graph(const Json& g, const std::string& path) {
  if (!g.is_object()) fail(path, "must be an object");
  for (const auto& item : g.items())
    if (item.key() != "vertices" && item.key() != "edges")
      fail(path, "unknown field '" + item.key() + "'");
  long long n = int_field(g, "vertices", path, 0, 100000);
  const Json& edges = field(g, "edges", path);
  if (!edges.is_array()) fail(path + ".edges", "must be an array");
  if (edges.size() > 64) fail(path + ".edges", "must have at most 64 edges");
  for (size_t i = 0; i < edges.size(); ++i) {
    std::string epath = path + ".edges[" + std::to_string(i) + "]";
    const Json& e = edges[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      fail(epath, "must be a pair of vertex indices");
    for (int side = 0; side < 2; ++side) {
      long long v = e[side].get<long long>();
      if (v < 0 || v >= n) fail(epath, "vertex index out of range");
    }
  }
}

Multigraph graph_from_json(const Json& g) {
  Multigraph out;
  out.vertex_count = static_cast<int>(g.at("vertices").get<long long>());
  for (const Json& e : g.at("edges"))
    out.edges.emplace_back(static_cast<int>(e[0].get<long long>()),
                           static_cast<int>(e[1].get<long long>()));
  out.validate();
  return out;
}

std::vector<std::string> string_vector(const Json& v) {
  std::vector<std::string> out;
  for (const Json& s : v) out.push_back(s.get<std::string>());
  return out;
}

Json canonical_entry(const mpq_class& q) {
  static const mpz_class kIntCap = mpz_class(1) << 53;
  if (q.get_den() == 1 && abs(q.get_num()) < kIntCap)
    return Json(q.get_num().get_si());
  return Json(q.get_str());
}

Json canonicalize(const Json& j);

Json canonical_labels(const Json& j) { return j.at("labels"); }

Json canonicalize(const Json& j) {
  std::string type = j.at("type").get<std::string>();
  Json out;
  out["type"] = type;
  if (type == "uniform") {
    out["rank"] = j.at("rank").get<long long>();
    out["size"] = j.at("size").get<long long>();
    if (j.contains("labels")) out["labels"] = canonical_labels(j);
  } else if (type == "linear") {
    const Json& f = j.at("field");
    if (f.is_string())
      out["field"] = "rational";
    else
      out["field"] = Json{{"prime", f.at("prime").get<long long>()}};
    Json matrix = Json::array();
    for (const Json& row : j.at("matrix")) {
      Json orow = Json::array();
      for (const Json& e : row) orow.push_back(canonical_entry(entry_to_mpq(e)));
      matrix.push_back(std::move(orow));
    }
    out["matrix"] = std::move(matrix);
    if (j.contains("labels")) out["labels"] = canonical_labels(j);
  } else if (type == "graphic" || type == "count") {
    if (type == "count") {
      out["a"] = j.at("a").get<long long>();
      out["b"] = j.at("b").get<long long>();
    }
    const Json& g = j.at("graph");
    Json edges = Json::array();
    for (const Json& e : g.at("edges")) {
      long long u = e[0].get<long long>(), v = e[1].get<long long>();
      edges.push_back(Json::array({std::min(u, v), std::max(u, v)}));
    }
    out["graph"] =
        Json{{"vertices", g.at("vertices").get<long long>()}, {"edges", edges}};
    if (j.contains("labels")) out["labels"] = canonical_labels(j);
  } else if (type == "circuits") {
    out["ground"] = j.at("ground");
    std::vector<std::vector<std::string>> circuits;
    for (const Json& c : j.at("circuits")) {
      auto labels = string_vector(c);
      std::sort(labels.begin(), labels.end());
      circuits.push_back(std::move(labels));
    }
    std::sort(circuits.begin(), circuits.end());
    out["circuits"] = circuits;
  } else if (type == "dual") {
    out["of"] = canonicalize(j.at("of"));
  } else if (type == "restrict") {
    out["of"] = canonicalize(j.at("of"));
    auto subset = string_vector(j.at("subset"));
    std::sort(subset.begin(), subset.end());
    out["subset"] = subset;
  } else if (type == "direct_sum") {
    Json parts = Json::array();
    for (const Json& p : j.at("parts")) parts.push_back(canonicalize(p));
    out["parts"] = std::move(parts);
  } else {
    out["left"] = canonicalize(j.at("left"));
    out["right"] = canonicalize(j.at("right"));
    out["element"] = j.at("element").get<std::string>();
  }
  return out;
}

BuiltMatroid build_impl(const Json& j) {
  std::string type = j.at("type").get<std::string>();
  auto labels_or = [&](std::vector<std::string> fallback) {
    if (j.contains("labels")) return string_vector(j.at("labels"));
    return fallback;
  };

  if (type == "uniform") {
    int r = static_cast<int>(j.at("rank").get<long long>());
    int n = static_cast<int>(j.at("size").get<long long>());
    return {uniform_matroid(r, n, labels_or({})), std::nullopt, std::nullopt};
  }
  if (type == "linear") {
    LinearMatroidSpec spec;
    const Json& f = j.at("field");
    if (!f.is_string()) spec.prime = f.at("prime").get<long long>();
    for (const Json& row : j.at("matrix")) {
      std::vector<mpq_class> r;
      for (const Json& e : row) r.push_back(entry_to_mpq(e));
      spec.matrix.push_back(std::move(r));
    }
    spec.labels = labels_or({});
    return {linear_matroid(std::move(spec)), std::nullopt, std::nullopt};
  }
  if (type == "graphic") {
    Multigraph g = graph_from_json(j.at("graph"));
    return {graphic_matroid(g, labels_or({})), g, std::nullopt};
  }
  if (type == "count") {
    CountParams p{static_cast<int>(j.at("a").get<long long>()),
                  static_cast<int>(j.at("b").get<long long>())};
    Multigraph g = graph_from_json(j.at("graph"));
    return {count_matroid(p, g, labels_or({})), g, p};
  }
  if (type == "circuits") {
    GroundPtr ground = make_ground(string_vector(j.at("ground")));
    std::vector<Mask> circuits;
    for (const Json& c : j.at("circuits"))
      circuits.push_back(ground->mask_of(string_vector(c)));
    return {explicit_circuits_matroid(ground, std::move(circuits)),
            std::nullopt, std::nullopt};
  }
  if (type == "dual")
    return {build_impl(j.at("of")).matroid.dual(), std::nullopt, std::nullopt};
  if (type == "restrict") {
    Matroid child = build_impl(j.at("of")).matroid;
    Mask keep = child.ground().mask_of(string_vector(j.at("subset")));
    return {child.restrict(keep), std::nullopt, std::nullopt};
  }
  if (type == "direct_sum") {
    std::vector<Matroid> parts;
    for (const Json& p : j.at("parts")) parts.push_back(build_impl(p).matroid);
    return {direct_sum(parts), std::nullopt, std::nullopt};
  }
  Matroid left = build_impl(j.at("left")).matroid;
  Matroid right = build_impl(j.at("right")).matroid;
  std::string element = j.at("element").get<std::string>();
  if (type == "two_sum")
    return {two_sum(left, right, element), std::nullopt, std::nullopt};
  return {parallel_connection(left, right, element), std::nullopt, std::nullopt};
}

}  // namespace

Json parse_spec_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
}

Json load_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

void validate_spec(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "must be an object");
  const Json& t = field(j, "type", path);
  if (!t.is_string()) fail(path + ".type", "must be a string");
  std::string type = t.get<std::string>();

  if (type == "uniform") {
    check_known_keys(j, path, {"rank", "size", "labels"});
    int_field(j, "rank", path, 0, 64);
    long long n = int_field(j, "size", path, 0, 64);
    check_optional_labels(j, path, n);
  } else if (type == "linear") {
    check_known_keys(j, path, {"field", "matrix", "labels"});
    const Json& f = field(j, "field", path);
    if (f.is_string()) {
      if (f.get<std::string>() != "rational")
        fail(path + ".field", "must be \"rational\" or {\"prime\": p}");
    } else if (f.is_object()) {
      for (const auto& item : f.items())
        if (item.key() != "prime")
          fail(path + ".field", "unknown field '" + item.key() + "'");
      int_field(f, "prime", path + ".field", 2,
                std::numeric_limits<long long>::max() / 4);
    } else {
      fail(path + ".field", "must be \"rational\" or {\"prime\": p}");
    }
    const Json& matrix = field(j, "matrix", path);
    if (!matrix.is_array() || matrix.empty())
      fail(path + ".matrix", "must be a non-empty array of rows");
    size_t cols = matrix[0].is_array() ? matrix[0].size() : 0;
    for (size_t r = 0; r < matrix.size(); ++r) {
      std::string rpath = path + ".matrix[" + std::to_string(r) + "]";
      if (!matrix[r].is_array() || matrix[r].size() != cols)
        fail(rpath, "rows must be arrays of equal length");
      for (size_t c = 0; c < cols; ++c)
        check_matrix_entry(matrix[r][c], rpath + "[" + std::to_string(c) + "]");
    }
    if (cols > 64) fail(path + ".matrix", "must have at most 64 columns");
    check_optional_labels(j, path, static_cast<long long>(cols));
  } else if (type == "graphic") {
    check_known_keys(j, path, {"graph", "labels"});
    check_graph(field(j, "graph", path), path + ".graph");
    check_optional_labels(
        j, path, static_cast<long long>(j.at("graph").at("edges").size()));
  } else if (type == "count") {
    check_known_keys(j, path, {"a", "b", "graph", "labels"});
    int_field(j, "a", path, 1, 1000);
    int_field(j, "b", path, 0, 1999);
    check_graph(field(j, "graph", path), path + ".graph");
    check_optional_labels(
        j, path, static_cast<long long>(j.at("graph").at("edges").size()));
  } else if (type == "circuits") {
    check_known_keys(j, path, {"ground", "circuits"});
    check_label_array(field(j, "ground", path), path + ".ground", -1);
    if (j.at("ground").size() > 64)
      fail(path + ".ground", "must have at most 64 elements");
    const Json& circuits = field(j, "circuits", path);
    if (!circuits.is_array()) fail(path + ".circuits", "must be an array");
    for (size_t i = 0; i < circuits.size(); ++i)
      check_label_array(circuits[i],
                        path + ".circuits[" + std::to_string(i) + "]", -1);
  } else if (type == "dual") {
    check_known_keys(j, path, {"of"});
    validate_spec(field(j, "of", path), path + ".of");
  } else if (type == "restrict") {
    check_known_keys(j, path, {"of", "subset"});
    validate_spec(field(j, "of", path), path + ".of");
    check_label_array(field(j, "subset", path), path + ".subset", -1);
  } else if (type == "direct_sum") {
    check_known_keys(j, path, {"parts"});
    const Json& parts = field(j, "parts", path);
    if (!parts.is_array() || parts.empty())
      fail(path + ".parts", "must be a non-empty array");
    for (size_t i = 0; i < parts.size(); ++i)
      validate_spec(parts[i], path + ".parts[" + std::to_string(i) + "]");
  } else if (type == "two_sum" || type == "parallel_connection") {
    check_known_keys(j, path, {"left", "right", "element"});
    validate_spec(field(j, "left", path), path + ".left");
    validate_spec(field(j, "right", path), path + ".right");
    if (!field(j, "element", path).is_string())
      fail(path + ".element", "must be a string");
  } else {
    fail(path + ".type",
         "unknown type '" + type +
             "'; expected one of uniform, linear, graphic, count, circuits, "
             "dual, restrict, direct_sum, two_sum, parallel_connection");
  }
}

Json canonical_spec(const Json& j) {
  validate_spec(j);
  return canonicalize(j);
}

BuiltMatroid build_matroid(const Json& j) {
  validate_spec(j);
  return build_impl(j);
}

}  // namespace mkit
