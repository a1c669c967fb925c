#include "sud/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sud::io {

namespace {

using nlohmann::json;

void require_keys(const json& j, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional, const char* what) {
  if (!j.is_object()) throw validation_error(std::string(what) + ": expected a JSON object");
  for (const char* k : required)
    if (!j.contains(k))
      throw validation_error(std::string(what) + ": missing field '" + k + "'");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : required) known = known || it.key() == k;
    for (const char* k : optional) known = known || it.key() == k;
    if (!known)
      throw validation_error(std::string(what) + ": unknown field '" + it.key() + "'");
  }
}

double as_double(const json& j, const char* what) {
  if (!j.is_number()) throw validation_error(std::string(what) + ": expected a number");
  return j.get<double>();
}

} // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json plj_to_json(const plj_function& f) {
  json nodes = json::array();
  for (const auto& nd : f.nodes())
    nodes.push_back({{"t", nd.t}, {"left", nd.left}, {"right", nd.right}});
  json slopes = json::array();
  for (std::size_t i = 0; i < f.piece_count(); ++i) slopes.push_back(f.slope(i));
  return {{"domain", {f.a(), f.b()}}, {"nodes", std::move(nodes)}, {"slopes", std::move(slopes)}};
}

plj_function plj_from_json(const nlohmann::json& j) {
  require_keys(j, {"domain", "nodes"}, {"slopes"}, "plj");
  const auto& dom = j.at("domain");
  if (!dom.is_array() || dom.size() != 2)
    throw validation_error("plj: 'domain' must be [a, b]");
  double a = as_double(dom[0], "plj domain"), b = as_double(dom[1], "plj domain");
  const auto& jnodes = j.at("nodes");
  if (!jnodes.is_array() || jnodes.size() < 2)
    throw validation_error("plj: 'nodes' must list at least two breakpoints");
  std::vector<plj_node> nodes;
  nodes.reserve(jnodes.size());
  for (const auto& jn : jnodes) {
    require_keys(jn, {"t", "left", "right"}, {}, "plj node");
    nodes.push_back({as_double(jn.at("t"), "plj node t"), as_double(jn.at("left"), "plj node left"),
                     as_double(jn.at("right"), "plj node right")});
  }
  if (nodes.front().t != a || nodes.back().t != b)
    throw validation_error("plj: breakpoints must start at a and end at b");
  plj_function f(std::move(nodes));
  if (j.contains("slopes")) {
    const auto& js = j.at("slopes");
    if (!js.is_array() || js.size() != f.piece_count())
      throw validation_error("plj: 'slopes' must have one entry per piece");
    for (std::size_t i = 0; i < f.piece_count(); ++i) {
      double given = as_double(js[i], "plj slope");
      double derived = f.slope(i);
      double scale = std::max({1.0, std::abs(given), std::abs(derived)});
      if (std::abs(given - derived) > 1e-9 * scale)
        throw validation_error("plj: slope " + std::to_string(i) +
                               " disagrees with the node values");
    }
  }
  return f;
}

nlohmann::json measure_to_json(const finite_signed_measure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms()) {
    json ja;
    if (a.location)
      ja["x"] = *a.location;
    else
      ja["x"] = a.label;
    ja["w"] = a.weight;
    atoms.push_back(std::move(ja));
  }
  return {{"atoms", std::move(atoms)}};
}

finite_signed_measure measure_from_json(const nlohmann::json& j) {
  require_keys(j, {"atoms"}, {}, "measure");
  const auto& jatoms = j.at("atoms");
  if (!jatoms.is_array() || jatoms.empty())
    throw validation_error("measure: 'atoms' must be a nonempty array");
  std::vector<atom> atoms;
  atoms.reserve(jatoms.size());
  for (const auto& ja : jatoms) {
    require_keys(ja, {"x", "w"}, {}, "atom");
    atom a;
    const auto& jx = ja.at("x");
    if (jx.is_number()) {
      a.location = jx.get<double>();
      a.label = format_double(*a.location);
    } else if (jx.is_string()) {
      a.label = jx.get<std::string>();
    } else {
      throw validation_error("atom: 'x' must be a number or a string label");
    }
    a.weight = as_double(ja.at("w"), "atom w");
    atoms.push_back(std::move(a));
  }
  return finite_signed_measure(std::move(atoms));
}

nlohmann::json plan_to_json(const block_plan& p) {
  return {{"constants", p.constants()}, {"lengths", p.lengths()}, {"offsets", p.offsets()}};
}

block_plan plan_from_json(const nlohmann::json& j) {
  require_keys(j, {"constants", "lengths"}, {"offsets"}, "plan");
  std::vector<double> constants = j.at("constants").get<std::vector<double>>();
  std::vector<std::uint64_t> lengths = j.at("lengths").get<std::vector<std::uint64_t>>();
  block_plan p = block_plan::from_parts(std::move(constants), std::move(lengths));
  if (j.contains("offsets")) {
    auto offsets = j.at("offsets").get<std::vector<std::uint64_t>>();
    if (offsets != p.offsets())
      throw validation_error("plan: 'offsets' disagree with the block lengths");
  }
  return p;
}

nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path.string() + "' for reading");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw validation_error("malformed JSON in '" + path.string() + "': " + e.what());
  }
  return j;
}

void save_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw io_error("failed writing '" + path.string() + "'");
}

void write_signed_csv(const std::filesystem::path& path, std::span<const signed_term> terms) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
  out << "step,x,eps\n";
  for (std::size_t i = 0; i < terms.size(); ++i)
    out << (i + 1) << ',' << format_double(terms[i].x) << ',' << terms[i].sign << '\n';
  if (!out) throw io_error("failed writing '" + path.string() + "'");
}

std::vector<signed_term> read_signed_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path.string() + "' for reading");
  std::string line;
  if (!std::getline(in, line)) throw validation_error("empty sequence file '" + path.string() + "'");
  std::vector<signed_term> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string step, xs, es;
    if (!std::getline(ss, step, ',') || !std::getline(ss, xs, ',') || !std::getline(ss, es, ','))
      throw validation_error("bad row " + std::to_string(lineno) + " in '" + path.string() + "'");
    try {
      double x = std::stod(xs);
      int e = std::stoi(es);
      if (e != 1 && e != -1) throw validation_error("eps must be +-1");
      out.push_back({x, e});
    } catch (const validation_error&) {
      throw;
    } catch (const std::exception&) {
      throw validation_error("bad numeric row " + std::to_string(lineno) + " in '" +
                             path.string() + "'");
    }
  }
  return out;
}

csv_table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path.string() + "' for reading");
  csv_table t;
  if (!std::getline(in, t.header))
    throw validation_error("empty CSV file '" + path.string() + "'");
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) t.rows.push_back(line);
  return t;
}

void write_lines(const std::filesystem::path& path, const std::string& header,
                 const std::vector<std::string>& rows) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
  out << header << '\n';
  for (const auto& r : rows) out << r << '\n';
  if (!out) throw io_error("failed writing '" + path.string() + "'");
}

std::filesystem::path resolve_output_path(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("SUD_OUT_DIR")) return std::filesystem::path(dir) / p;
  }
  return p;
}

} // namespace sud::io
