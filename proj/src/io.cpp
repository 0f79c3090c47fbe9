#include "cmg/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace cmg {
namespace {

class LineReader {
public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  // Next non-blank line split into tokens, with comments stripped. Seed
  // comments are captured on the way.
  bool next(std::vector<std::string>& tokens) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      std::string body = raw;
      if (auto hash = raw.find('#'); hash != std::string::npos) {
        capture_seed(raw.substr(hash + 1));
        body = raw.substr(0, hash);
      }
      tokens.clear();
      std::istringstream ss(body);
      for (std::string tok; ss >> tok;) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw InputError(source_ + ":" + std::to_string(line_) + ": " + message);
  }

  std::size_t line() const noexcept { return line_; }
  std::optional<std::uint64_t> seed;

  template <class Int>
  Int number(const std::string& token, const char* what) const {
    Int value{};
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc() || ptr != end) fail(std::string("bad ") + what + " '" + token + "'");
    return value;
  }

  void expect_arity(const std::vector<std::string>& tokens, std::size_t n) const {
    if (tokens.size() != n) {
      fail("'" + tokens.front() + "' expects " + std::to_string(n - 1) + " arguments, got " +
           std::to_string(tokens.size() - 1));
    }
  }

private:
  void capture_seed(const std::string& comment) {
    std::istringstream ss(comment);
    std::string word;
    std::uint64_t value = 0;
    if (ss >> word && word == "seed" && ss >> value) seed = value;
  }

  std::istream& in_;
  std::string source_;
  std::size_t line_ = 0;
};

// Returns true when the line was a sidecar record.
bool parse_sidecar_line(LineReader& reader, const std::vector<std::string>& tokens,
                        GraphDocument& doc) {
  const auto& head = tokens.front();
  if (head == "color") {
    reader.expect_arity(tokens, 3);
    doc.colors.emplace_back(reader.number<Vertex>(tokens[1], "vertex"),
                            reader.number<int>(tokens[2], "color"));
    return true;
  }
  if (head == "forest") {
    reader.expect_arity(tokens, 4);
    doc.forests.push_back({reader.number<Vertex>(tokens[1], "vertex"),
                           reader.number<Vertex>(tokens[2], "vertex"),
                           reader.number<int>(tokens[3], "forest index")});
    return true;
  }
  if (head == "map") {
    reader.expect_arity(tokens, 3);
    doc.maps.emplace_back(reader.number<Vertex>(tokens[1], "vertex"),
                          reader.number<Vertex>(tokens[2], "vertex"));
    return true;
  }
  return false;
}

} // namespace

GraphDocument parse_document(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  std::vector<std::string> tokens;
  GraphDocument doc;

  if (!reader.next(tokens)) reader.fail("empty input, expected 'mixedgraph 1'");
  if (tokens.size() != 2 || tokens[0] != "mixedgraph") reader.fail("expected 'mixedgraph 1'");
  if (tokens[1] != "1") reader.fail("unsupported format version '" + tokens[1] + "'");

  if (!reader.next(tokens) || tokens[0] != "signature") reader.fail("expected 'signature <m> <n>'");
  reader.expect_arity(tokens, 3);
  try {
    doc.draft.signature = ColorSignature(reader.number<int>(tokens[1], "m"),
                                         reader.number<int>(tokens[2], "n"));
  } catch (const InputError& e) {
    reader.fail(e.what());
  }

  if (!reader.next(tokens) || tokens[0] != "vertices") reader.fail("expected 'vertices <N>'");
  reader.expect_arity(tokens, 2);
  doc.draft.order = reader.number<Vertex>(tokens[1], "vertex count");
  if (doc.draft.order < 0) reader.fail("negative vertex count");

  while (reader.next(tokens)) {
    const auto& head = tokens.front();
    if (head == "a" || head == "e") {
      reader.expect_arity(tokens, 4);
      doc.draft.relations.push_back({reader.number<Vertex>(tokens[1], "vertex"),
                                     reader.number<Vertex>(tokens[2], "vertex"), head == "a",
                                     reader.number<int>(tokens[3], "color"), reader.line()});
    } else if (!parse_sidecar_line(reader, tokens, doc)) {
      reader.fail("unknown directive '" + head + "'");
    }
  }
  doc.seed = reader.seed;
  return doc;
}

MixedGraph read_graph(std::istream& in, const std::string& source) {
  auto doc = parse_document(in, source);
  if (auto violation = validate(doc.draft)) {
    throw InputError(source + ":" + to_string(*violation));
  }
  return MixedGraph::from_draft(doc.draft);
}

namespace {
std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}
} // namespace

MixedGraph read_graph_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_graph(in, path);
}

GraphDocument read_document_file(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_document(in, path);
}

GraphDocument parse_sidecar(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  std::vector<std::string> tokens;
  GraphDocument doc;
  static const char* const graph_directives[] = {"mixedgraph", "signature", "vertices", "a", "e"};
  while (reader.next(tokens)) {
    if (parse_sidecar_line(reader, tokens, doc)) continue;
    bool graph_line = false;
    for (const char* d : graph_directives) graph_line = graph_line || tokens.front() == d;
    if (!graph_line) reader.fail("unknown directive '" + tokens.front() + "'");
  }
  doc.seed = reader.seed;
  return doc;
}

GraphDocument read_sidecar_file(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_sidecar(in, path);
}

namespace {
template <class Value>
std::vector<Value> total_assignment(const std::vector<std::pair<Vertex, Value>>& records,
                                    Vertex order, const char* what) {
  std::vector<Value> out(static_cast<std::size_t>(order));
  std::vector<bool> seen(static_cast<std::size_t>(order), false);
  for (const auto& [v, value] : records) {
    if (v < 0 || v >= order) {
      throw InputError(std::string(what) + ": vertex " + std::to_string(v) + " out of range");
    }
    if (seen[static_cast<std::size_t>(v)]) {
      throw InputError(std::string(what) + ": vertex " + std::to_string(v) + " assigned twice");
    }
    seen[static_cast<std::size_t>(v)] = true;
    out[static_cast<std::size_t>(v)] = value;
  }
  for (Vertex v = 0; v < order; ++v) {
    if (!seen[static_cast<std::size_t>(v)]) {
      throw InputError(std::string(what) + ": vertex " + std::to_string(v) + " unassigned");
    }
  }
  return out;
}
} // namespace

std::vector<int> coloring_from_records(const GraphDocument& doc, Vertex order) {
  return total_assignment(doc.colors, order, "coloring");
}

std::vector<Vertex> map_from_records(const GraphDocument& doc, Vertex order) {
  return total_assignment(doc.maps, order, "map");
}

void write_graph(std::ostream& out, const MixedGraph& graph, const WriteOptions& options) {
  out << "mixedgraph 1\n";
  for (const auto& c : options.header_comments) out << "# " << c << "\n";
  if (options.seed) out << "# seed " << *options.seed << "\n";
  out << "signature " << graph.signature().arc_colors() << " " << graph.signature().edge_colors()
      << "\n";
  out << "vertices " << graph.order() << "\n";
  for (std::size_t v = 0; v < options.vertex_annotations.size(); ++v) {
    out << "# role " << v << " " << options.vertex_annotations[v] << "\n";
  }
  for (const auto& r : graph.relations()) {
    switch (r.kind.type) {
    case RelationType::ArcOut: out << "a " << r.u << " " << r.v; break;
    case RelationType::ArcIn: out << "a " << r.v << " " << r.u; break;
    case RelationType::Edge: out << "e " << r.u << " " << r.v; break;
    }
    out << " " << r.kind.color << "\n";
  }
}

std::string graph_to_string(const MixedGraph& graph, const WriteOptions& options) {
  std::ostringstream os;
  write_graph(os, graph, options);
  return os.str();
}

void write_coloring(std::ostream& out, std::span<const int> colors) {
  for (std::size_t v = 0; v < colors.size(); ++v) out << "color " << v << " " << colors[v] << "\n";
}

void write_map(std::ostream& out, std::span<const Vertex> map) {
  for (std::size_t v = 0; v < map.size(); ++v) out << "map " << v << " " << map[v] << "\n";
}

void write_forests(std::ostream& out, std::span<const ForestRecord> forests) {
  for (const auto& f : forests) out << "forest " << f.u << " " << f.v << " " << f.forest << "\n";
}

} // namespace cmg
