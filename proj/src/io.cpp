#include "entb/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace entb {

using nlohmann::json;

namespace {

// nlohmann reports a byte offset; turn it into line/column for humans.
std::string position(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col) + " (offset " + std::to_string(byte) + ")";
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, position(text, e.byte) + ": " + e.what());
  }
}

BipartiteDims read_dims(const json& doc) {
  if (!doc.is_object() || !doc.contains("dims")) throw Error(ErrorKind::Parse, "missing \"dims\"");
  const json& d = doc["dims"];
  if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer())
    throw Error(ErrorKind::Parse, "\"dims\" must be [m, n] with integer entries");
  const auto m = d[0].get<long long>(), n = d[1].get<long long>();
  if (m < 1 || n < 1 || m > 64 || n > 64) throw Error(ErrorKind::Parse, "\"dims\" entries out of range");
  return {static_cast<int>(m), static_cast<int>(n)};
}

Complex read_entry(const json& e, const std::string& where) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    throw Error(ErrorKind::Parse, where + ": entries must be [re, im] number pairs");
  return {e[0].get<double>(), e[1].get<double>()};
}

ComplexMatrix read_square(const json& entries, Eigen::Index size, const std::string& where) {
  if (!entries.is_array()) throw Error(ErrorKind::Parse, where + " must be an array");
  if (entries.size() != static_cast<std::size_t>(size * size))
    throw Error(ErrorKind::DimensionMismatch, where + " has " + std::to_string(entries.size()) +
                                                  " entries, expected " + std::to_string(size * size));
  ComplexMatrix mat(size, size);
  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index j = 0; j < size; ++j) mat(i, j) = read_entry(entries[i * size + j], where);
  return mat;
}

json write_square(const ComplexMatrix& mat) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < mat.rows(); ++i)
    for (Eigen::Index j = 0; j < mat.cols(); ++j) entries.push_back({mat(i, j).real(), mat(i, j).imag()});
  return entries;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

std::vector<ComplexMatrix> read_observables(const json& doc, const char* key, int dim) {
  if (!doc.contains(key) || !doc[key].is_array()) throw Error(ErrorKind::Parse, std::string("missing \"") + key + "\"");
  std::vector<ComplexMatrix> obs;
  for (std::size_t i = 0; i < doc[key].size(); ++i)
    obs.push_back(read_square(doc[key][i], dim, std::string(key) + "[" + std::to_string(i) + "]"));
  return obs;
}

}  // namespace

StateFile parse_state_json(std::string_view text) {
  const json doc = parse_json(text);
  StateFile sf;
  sf.dims = read_dims(doc);
  if (!doc.contains("matrix")) throw Error(ErrorKind::Parse, "missing \"matrix\"");
  sf.matrix = read_square(doc["matrix"], sf.dims.total(), "\"matrix\"");
  return sf;
}

std::string dump_state_json(const ComplexMatrix& mat, BipartiteDims dims) {
  json doc;
  doc["dims"] = {dims.m, dims.n};
  doc["matrix"] = write_square(mat);
  return doc.dump() + "\n";
}

StateFile read_state_file(const std::filesystem::path& path) { return parse_state_json(slurp(path)); }

void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho) {
  spill(path, dump_state_json(rho.matrix(), rho.dims()));
}

std::string dump_loo_pair_json(const LooPair& pair) {
  json doc;
  doc["dims"] = {pair.dims().m, pair.dims().n};
  doc["set_a"] = json::array();
  doc["set_b"] = json::array();
  for (const auto& g : pair.set_a().observables) doc["set_a"].push_back(write_square(g));
  for (const auto& g : pair.set_b().observables) doc["set_b"].push_back(write_square(g));
  return doc.dump() + "\n";
}

LooPair parse_loo_pair_json(std::string_view text) {
  const json doc = parse_json(text);
  const BipartiteDims dims = read_dims(doc);
  return LooPair(make_loo_set(read_observables(doc, "set_a", dims.m), dims.m),
                 make_loo_set(read_observables(doc, "set_b", dims.n), dims.n));
}

LooPair read_loo_pair_file(const std::filesystem::path& path) { return parse_loo_pair_json(slurp(path)); }

void write_loo_pair_file(const std::filesystem::path& path, const LooPair& pair) {
  spill(path, dump_loo_pair_json(pair));
}

}  // namespace entb
