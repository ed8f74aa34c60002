#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "velim/dag.hpp"
#include "velim/reductions.hpp"

namespace velim::io {

/// Optional instance annotations carried next to the graph payload.
struct Metadata {
  std::string problem;  // "soja", "mec" or empty
  std::optional<std::int64_t> k;
  bool empty() const { return problem.empty() && !k.has_value(); }
};

struct ParsedInstance {
  Dag dag;
  Metadata meta;
};

/// Reads a DAG instance from canonical JSON or from the DOT subset
/// (digraph with node attribute kind=terminal|internal and optional edge
/// attribute w="p/q"). The format is detected from the first byte. Unknown
/// attributes or keys are rejected, not ignored.
ParsedInstance parse_instance(std::string_view text);

/// Canonical single-line JSON: vertices in ascending id order, arcs sorted
/// by (tail, head), weights as "p/q" strings, metadata omitted when empty.
/// parse / serialize round-trips are stable on this form.
std::string serialize_instance(const Dag& d, const Metadata& meta = {});

struct ParsedUndirected {
  reductions::UndirectedGraph graph;
  Metadata meta;
};

/// Reads an undirected graph from JSON ({"vertices":[names],"edges":[[a,b]]})
/// or from the DOT subset (graph with bare nodes and -- edges).
ParsedUndirected parse_undirected(std::string_view text);

std::string serialize_undirected(const reductions::UndirectedGraph& g,
                                 const Metadata& meta = {});

/// FNV-1a 64 hash (hex) of the canonical payload without metadata, so the
/// same graph under different thresholds keeps one digest.
std::string instance_digest(const Dag& d);

/// External label of v, or "v<id>" when the graph carries no names.
std::string vertex_label(const Dag& d, VertexId v);

/// Resolves an external label; throws Error(UnknownVertex) if absent.
VertexId vertex_by_name(const Dag& d, std::string_view name);

}  // namespace velim::io
