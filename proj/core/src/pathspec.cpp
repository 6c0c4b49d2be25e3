#include "symidx/pathspec.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace symidx {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& field, const std::string& why) {
  fail(ErrKind::Parse, "field '" + field + "': " + why);
}

Mat matrix_field(const json& j, const std::string& field, int dim) {
  if (!j.is_array()) parse_fail(field, "expected a flat row-major array of reals");
  if (static_cast<int>(j.size()) != dim * dim)
    parse_fail(field, "expected " + std::to_string(dim * dim) + " entries, got " +
                          std::to_string(j.size()));
  Mat m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      const json& v = j[static_cast<size_t>(r * dim + c)];
      if (!v.is_number()) parse_fail(field, "entry " + std::to_string(r * dim + c) + " is not a number");
      m(r, c) = v.get<double>();
    }
  return m;
}

}  // namespace

PathSpecFile parse_pathspec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrKind::Parse, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrKind::Parse, "document root must be an object");

  if (!j.contains("n") || !j["n"].is_number_integer()) parse_fail("n", "required positive integer");
  const int n = j["n"].get<int>();
  if (n <= 0) parse_fail("n", "must be positive");
  const int dim = 2 * n;

  PathSpecFile out;
  out.path.space = SympSpace::standard(n);

  if (!j.contains("segments") || !j["segments"].is_array() || j["segments"].empty())
    parse_fail("segments", "required non-empty array");
  size_t idx = 0;
  for (const json& seg : j["segments"]) {
    const std::string where = "segments[" + std::to_string(idx) + "]";
    if (!seg.is_object()) parse_fail(where, "expected an object with S and d");
    if (!seg.contains("S")) parse_fail(where + ".S", "required");
    const Mat s = matrix_field(seg["S"], where + ".S", dim);
    if ((s - s.transpose()).lpNorm<Eigen::Infinity>() > 1e-9)
      parse_fail(where + ".S", "generator must be symmetric");
    if (!seg.contains("d") || !seg["d"].is_number()) parse_fail(where + ".d", "required real");
    const double d = seg["d"].get<double>();
    if (!(d > 0)) parse_fail(where + ".d", "duration must be positive");
    out.path.segments.push_back({s, d});
    ++idx;
  }

  if (j.contains("start")) {
    const Mat start = matrix_field(j["start"], "start", dim);
    if (!is_symplectic(out.path.space, start, 1e-7))
      parse_fail("start", "matrix is not symplectic");
    out.path.start = start;
  }

  if (j.contains("seed_frame")) {
    const json& sf = j["seed_frame"];
    if (!sf.is_array() || static_cast<int>(sf.size()) != dim * n)
      parse_fail("seed_frame", "expected " + std::to_string(dim * n) + " row-major entries");
    Mat cols(dim, n);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < n; ++c) cols(r, c) = sf[static_cast<size_t>(r * n + c)].get<double>();
    LagrangianFrame frame{cols};
    if (!is_lagrangian(out.path.space, frame, 1e-7))
      parse_fail("seed_frame", "columns do not span a Lagrangian subspace");
    out.seed_frame = frame;
  }

  if (j.contains("flavor")) {
    if (!j["flavor"].is_string()) parse_fail("flavor", "expected a string");
    const std::string f = j["flavor"].get<std::string>();
    if (f != "lagrangian" && f != "periodic")
      parse_fail("flavor", "must be 'lagrangian' or 'periodic'");
    out.flavor = f;
  }

  return out;
}

PathSpecFile load_pathspec(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) fail(ErrKind::Parse, "cannot open input file: " + filename);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pathspec(buf.str());
}

std::string pathspec_to_json(const PathSpecFile& f) {
  json j;
  j["n"] = f.path.space.n;
  json segs = json::array();
  for (const PathSegment& seg : f.path.segments) {
    json s;
    json flat = json::array();
    for (int r = 0; r < seg.generator.rows(); ++r)
      for (int c = 0; c < seg.generator.cols(); ++c) flat.push_back(seg.generator(r, c));
    s["S"] = flat;
    s["d"] = seg.duration;
    segs.push_back(s);
  }
  j["segments"] = segs;
  if (f.path.start.size() != 0) {
    json flat = json::array();
    for (int r = 0; r < f.path.start.rows(); ++r)
      for (int c = 0; c < f.path.start.cols(); ++c) flat.push_back(f.path.start(r, c));
    j["start"] = flat;
  }
  if (f.seed_frame) {
    json flat = json::array();
    const Mat& cols = f.seed_frame->columns;
    for (int r = 0; r < cols.rows(); ++r)
      for (int c = 0; c < cols.cols(); ++c) flat.push_back(cols(r, c));
    j["seed_frame"] = flat;
  }
  if (f.flavor) j["flavor"] = *f.flavor;
  return j.dump(2);
}

}  // namespace symidx
