#include "tukey/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <system_error>

#include "tukey/combinatorics.hpp"
#include "tukey/errors.hpp"
#include "tukey/search.hpp"

namespace tukey {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

namespace {

using Vec3 = std::array<double, 3>;

Vec3 rotate(const Vec3& p, const RotationSpec& rot) {
  const double len = std::sqrt(rot.axis[0] * rot.axis[0] + rot.axis[1] * rot.axis[1] +
                               rot.axis[2] * rot.axis[2]);
  if (!(len > 0.0)) throw PreconditionError("rotation axis must be non-zero");
  const Vec3 k{rot.axis[0] / len, rot.axis[1] / len, rot.axis[2] / len};
  const double a = rot.degrees * std::numbers::pi / 180.0;
  const double c = std::cos(a), s = std::sin(a);
  const double kp = k[0] * p[0] + k[1] * p[1] + k[2] * p[2];
  const Vec3 cross{k[1] * p[2] - k[2] * p[1], k[2] * p[0] - k[0] * p[2],
                   k[0] * p[1] - k[1] * p[0]};
  Vec3 out;
  for (int i = 0; i < 3; ++i) out[i] = p[i] * c + cross[i] * s + k[i] * kp * (1.0 - c);
  return out;
}

bool in_set(int i, const std::array<int, 4>& set) {
  return std::find(set.begin(), set.end(), i) != set.end();
}

void check_counterexample(const Dataset& x) {
  auto fail = [](const std::string& why) {
    throw ConstructionFailed("counterexample construction: " + why);
  };
  if (!is_general_position(x)) fail("points are not in general position");
  SearchEngine engine(x);
  bool ok = true;
  std::string why;
  for_each_combination(x.n(), 3, [&](std::span<const int> t) {
    const int blues = static_cast<int>(std::count_if(t.begin(), t.end(),
                                                     [](int i) { return in_set(i, kBlue); }));
    const bool all_red = std::all_of(t.begin(), t.end(), [](int i) { return in_set(i, kRed); });
    const SideCounts c = engine.counts(t);
    if ((c.smaller() == 0) != all_red) {
      why = "the hull is not spanned by the red points alone";
      ok = false;
    } else if (blues == 3) {
      const auto h = make_halfspace(x, hyperplane_through(x, t),
                                    c.neg < c.pos ? Side::Plus : Side::Minus);
      const bool red_green = h.cutoff.size() == 2 && in_set(h.cutoff[0], kRed) &&
                             in_set(h.cutoff[1], kGreen);
      if (!red_green) {
        why = "a blue face does not cut off exactly one red and one green point";
        ok = false;
      }
      // The fourth blue point must be on the far side from the cut-off green.
      const auto signs = classify_points(x, hyperplane_through(x, t));
      const int other = kBlue[0] + kBlue[1] + kBlue[2] + kBlue[3] - t[0] - t[1] - t[2];
      if (ok && signs[other] == signs[h.cutoff[1]]) {
        why = "a green point lies inside the blue tetrahedron";
        ok = false;
      }
    } else if (blues == 2 && (c.neg == 2 || c.pos == 2)) {
      why = "a plane through two blue points is relevant at k = 3";
      ok = false;
    }
    return ok;
  });
  if (!ok) fail(why);
}

void check_octagon(const Dataset& x) {
  SearchEngine engine(x);
  auto orbit_sets = [&](int k) {
    const auto res = engine.search(k, InitStrategy{Strategy::C, {}});
    std::vector<std::vector<int>> sets;
    for (const auto& orbit : res.orbits) {
      std::vector<int> pts;
      for (std::size_t i : orbit)
        for (int p : res.halfspaces[i].plane.indices) pts.push_back(p);
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      sets.push_back(std::move(pts));
    }
    std::sort(sets.begin(), sets.end());
    return sets;
  };
  using Sets = std::vector<std::vector<int>>;
  const Sets all{{0, 1, 2, 3, 4, 5, 6, 7}};
  const bool ok = orbit_sets(1) == all && orbit_sets(3) == all &&
                  orbit_sets(2) == Sets{{0, 2, 4, 6}, {1, 3, 5, 7}} &&
                  orbit_sets(4) == Sets{{0, 4}, {1, 5}, {2, 6}, {3, 7}};
  if (!ok) throw ConstructionFailed("octagon orbit structure differs from the intended one");
}

}  // namespace

Dataset generate_counterexample(const CounterexampleSpec& spec) {
  const double s2 = 1.0 / std::sqrt(2.0);
  std::array<Vec3, 4> red;
  for (int i = 0; i < 3; ++i) {
    Vec3 e{-0.5, -0.5, -0.5};
    e[i] += 1.0;
    red[i] = {s2 * e[0], s2 * e[1], s2 * e[2]};
  }
  const double s8 = 1.0 / std::sqrt(8.0);
  red[3] = {s8, s8, s8};

  SplitMix64 rng(spec.seed);
  auto jitter = [&](Vec3 p) {
    if (spec.seed != 0)
      for (auto& v : p) v += (2.0 * rng.uniform() - 1.0) * 1e-4;
    return p;
  };

  std::vector<double> coords;
  std::vector<std::string> labels;
  auto push = [&](const Vec3& p, std::string label) {
    coords.insert(coords.end(), p.begin(), p.end());
    labels.push_back(std::move(label));
  };
  for (int i = 0; i < 4; ++i) push(red[i], "r" + std::to_string(i + 1));
  for (int i = 0; i < 4; ++i) {
    const Vec3 b{-0.3 * red[i][0], -0.3 * red[i][1], -0.3 * red[i][2]};
    push(jitter(rotate(b, spec.blue_rotation)), "b" + std::to_string(i + 1));
  }
  for (int i = 0; i < 4; ++i) {
    const Vec3 g{0.15 * red[i][0], 0.15 * red[i][1], 0.15 * red[i][2]};
    push(jitter(rotate(g, spec.green_rotation)), "g" + std::to_string(i + 1));
  }
  Dataset x(3, std::move(coords), std::move(labels));
  check_counterexample(x);
  return x;
}

Dataset generate_gaussian(int n, int d, std::uint64_t seed) {
  if (d < 2 || d > kMaxDim) throw PreconditionError("dimension must be in [2, 8]");
  if (n <= d + 1) throw PreconditionError("need n > d + 1 points");
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::vector<double> coords(static_cast<std::size_t>(n) * d);
    for (auto& v : coords) v = rng.normal();
    Dataset x(d, std::move(coords));
    if (is_general_position(x)) return x;
  }
  throw ConstructionFailed("could not draw a sample in general position");
}

Dataset generate_octagon() {
  // Offsets in degrees from the regular positions 0, 45, 90, 135.
  constexpr std::array<double, 4> kOffset{0.0, 0.31, -0.17, 0.53};
  std::vector<double> coords(16);
  for (int i = 0; i < 4; ++i) {
    const double a = (45.0 * i + kOffset[i]) * std::numbers::pi / 180.0;
    coords[2 * i] = std::cos(a);
    coords[2 * i + 1] = std::sin(a);
    coords[2 * (i + 4)] = -coords[2 * i];
    coords[2 * (i + 4) + 1] = -coords[2 * i + 1];
  }
  Dataset x(2, std::move(coords), {"A", "B", "C", "D", "E", "F", "G", "H"});
  if (!is_general_position(x)) throw ConstructionFailed("octagon is not in general position");
  check_octagon(x);
  return x;
}

Dataset perturb(const Dataset& data, double magnitude, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> coords(data.coords().begin(), data.coords().end());
  for (auto& v : coords) v += (2.0 * rng.uniform() - 1.0) * magnitude;
  return Dataset(data.dim(), std::move(coords), data.labels());
}

// ------------------------------------------------------------------- CSV

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Dataset parse_points(std::string_view text, const LoadOptions& opts) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("empty input", 1, 1);

  const auto header = split(trim(lines[0]));
  int d = static_cast<int>(header.size());
  bool has_label = false;
  if (d > 0 && trim(header.back()) == "label") {
    has_label = true;
    --d;
  }
  for (int j = 0; j < d; ++j)
    if (trim(header[j]) != "x" + std::to_string(j + 1))
      throw ParseError("header must be x1,...,xd", 1, j + 1);
  if (d < 2 || d > kMaxDim) throw ParseError("dimension must be in [2, 8]", 1, 1);

  std::vector<double> coords;
  std::vector<std::string> labels;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const long row = static_cast<long>(r) + 1;
    const auto line = trim(lines[r]);
    if (line.empty()) throw ParseError("blank line at row " + std::to_string(row), row, 1);
    const auto cells = split(line);
    const std::size_t want = static_cast<std::size_t>(d) + (has_label ? 1 : 0);
    if (cells.size() != want)
      throw ParseError("row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                           " fields, expected " + std::to_string(want),
                       row, static_cast<long>(std::min(cells.size(), want)) + 1);
    for (int j = 0; j < d; ++j) {
      const auto cell = trim(cells[j]);
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size() || !std::isfinite(v))
        throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(j + 1) +
                             ": not a finite number '" + std::string(cell) + "'",
                         row, j + 1);
      coords.push_back(v);
    }
    if (has_label) labels.emplace_back(trim(cells[d]));
  }
  const int n = static_cast<int>(coords.size()) / d;
  if (n <= d + 1) throw ParseError("need more than d + 1 points", static_cast<long>(lines.size()), 1);
  Dataset x(d, std::move(coords), std::move(labels));
  if (opts.check_general_position && !is_general_position(x, opts.pred))
    throw DegenerateInput("points are not in general position");
  return x;
}

Dataset load_points(const std::filesystem::path& path, const LoadOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_points(buf.str(), opts);
}

std::string format_points(const Dataset& data) {
  std::string out;
  for (int j = 0; j < data.dim(); ++j) {
    if (j) out += ',';
    out += "x" + std::to_string(j + 1);
  }
  const bool labelled = !data.labels().empty();
  if (labelled) out += ",label";
  out += '\n';
  for (int i = 0; i < data.n(); ++i) {
    const auto p = data.point(i);
    for (int j = 0; j < data.dim(); ++j) {
      if (j) out += ',';
      out += format_double(p[j]);
    }
    if (labelled) out += "," + data.labels()[i];
    out += '\n';
  }
  return out;
}

void save_points(const Dataset& data, const std::filesystem::path& path) {
  write_file_atomic(path, format_points(data));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("write failed for " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

}  // namespace tukey
