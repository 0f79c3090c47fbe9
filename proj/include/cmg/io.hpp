#pragma once

// Line-oriented text format for colored mixed graphs and their sidecars.
//
//   mixedgraph 1
//   signature <m> <n>
//   vertices <N>
//   a <u> <v> <c>      arc u->v of color c in [1..m]
//   e <u> <v> <c>      edge u-v of color c in [1..n]
//
// '#' starts a comment. Sidecar records may follow the graph or live in
// their own file:
//
//   color <v> <c>      vertex coloring / partition block
//   forest <u> <v> <i> forest index of the edge u-v
//   map <u> <x>        homomorphism image of u
//
// A comment of the form "# seed <s>" records the RNG seed of a sampled graph.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmg/core.hpp"

namespace cmg {

struct ForestRecord {
  Vertex u;
  Vertex v;
  int forest;
};

struct GraphDocument {
  GraphDraft draft;
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<Vertex, int>> colors;
  std::vector<ForestRecord> forests;
  std::vector<std::pair<Vertex, Vertex>> maps;
};

/// Parses a full document. Structural errors (bad header, unknown
/// directive, malformed numbers) throw InputError with the line number;
/// graph invariants are left to validate() so callers can report them.
GraphDocument parse_document(std::istream& in, const std::string& source = "<input>");

/// Parses and validates, throwing InputError on the first violation.
MixedGraph read_graph(std::istream& in, const std::string& source = "<input>");
MixedGraph read_graph_file(const std::string& path);
GraphDocument read_document_file(const std::string& path);

/// Parses sidecar-only content: color/forest/map lines and comments. Graph
/// directives are skipped so a combined file also works.
GraphDocument parse_sidecar(std::istream& in, const std::string& source = "<input>");
GraphDocument read_sidecar_file(const std::string& path);

/// Turns `color` records into a total vertex -> color vector.
std::vector<int> coloring_from_records(const GraphDocument& doc, Vertex order);
/// Turns `map` records into a total vertex -> image vector.
std::vector<Vertex> map_from_records(const GraphDocument& doc, Vertex order);

struct WriteOptions {
  std::vector<std::string> header_comments;
  std::span<const std::string> vertex_annotations; ///< emitted as "# role <v> <text>"
  std::optional<std::uint64_t> seed;
};

void write_graph(std::ostream& out, const MixedGraph& graph, const WriteOptions& options = {});
std::string graph_to_string(const MixedGraph& graph, const WriteOptions& options = {});

void write_coloring(std::ostream& out, std::span<const int> colors);
void write_map(std::ostream& out, std::span<const Vertex> map);
void write_forests(std::ostream& out, std::span<const ForestRecord> forests);

} // namespace cmg
