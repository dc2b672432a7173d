#pragma once

#include "cfsem/graph.hpp"
#include "cfsem/sem.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace cfsem {

/// SEM document (JSON):
///
///   {
///     "nodes": ["L", "A", "Y"],
///     "edges": [["L", "A"], ["L", "Y"], ["A", "Y"]],
///     "domains": {"L": [0, 1], ...},
///     "mode": "NPSEM-IE" | "FFRCISTG",                      (optional)
///     "disturbances": {
///       "supports": {"L": [0, 1], ...},                       (optional per node)
///       "independent": {"L": ["1/2", "1/2"], ...}
///         or
///       "joint": [{"u": {"L": 0, "A": 1, ...}, "p": "1/4"}, ...]
///     },
///     "functions": {
///       "Y": [{"pa": {"L": 0, "A": 1}, "u": 0, "out": 0}, ...], ...
///     }
///   }
///
/// Domain and support values are JSON integers or strings. Missing supports
/// default to 0..|domain|-1. Serialization is canonical, so
/// parse(serialize(parse(x))) == parse(x) and serialize is a fixed point.
SemModel parse_sem_json(std::string_view text);
std::string serialize_sem_json(const SemModel& m);

std::string read_file(const std::filesystem::path& path);
SemModel load_sem_file(const std::filesystem::path& path);

// Graph text, or the graph of a SEM document when the file starts with '{'.
Dag load_graph_file(const std::filesystem::path& path);

}  // namespace cfsem
