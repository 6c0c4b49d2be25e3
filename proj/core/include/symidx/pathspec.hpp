#pragma once

#include <optional>
#include <string>

#include "symidx/maslov.hpp"

namespace symidx {

/// A path-spec document: the path itself plus optional front-end hints.
struct PathSpecFile {
  SymplecticPathSpec path;
  std::optional<LagrangianFrame> seed_frame;
  std::optional<std::string> flavor;  // "lagrangian" | "periodic"
};

/// Parses the JSON path-spec document:
///   { "n": int, "segments": [{"S": [row-major (2n)^2 reals], "d": real}],
///     "start": [...], "seed_frame": [...], "flavor": "..." }
/// Errors are PARSE and name the offending field; generators are checked for
/// symmetry, `start` for symplecticity.
PathSpecFile parse_pathspec(const std::string& text);

PathSpecFile load_pathspec(const std::string& filename);

std::string pathspec_to_json(const PathSpecFile& f);

}  // namespace symidx
