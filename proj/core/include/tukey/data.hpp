#pragma once

// Dataset generators and CSV I/O.

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "tukey/geometry.hpp"

namespace tukey {

/// SplitMix64 (Steele, Lea & Flood). State advances by 0x9E3779B97F4A7C15;
/// output mixer constants 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB with
/// shifts 30, 27, 31.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via the Box-Muller transform (both variates are used).
  double normal();

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Rotation about `axis` (need not be unit) by `degrees`.
struct RotationSpec {
  std::array<double, 3> axis{1.0, 1.0, 1.0};
  double degrees = 0.0;
};

struct CounterexampleSpec {
  RotationSpec blue_rotation{{1.0, 1.0, 1.0}, 2.0};
  RotationSpec green_rotation{{1.0, -1.0, 0.5}, 3.0};
  /// 0 keeps the construction as is. Any other value adds a deterministic
  /// jitter of at most 1e-4 per coordinate to the blue and green points.
  std::uint64_t seed = 0;
};

/// Twelve points in R^3: red r1..r4 (indices 0-3), blue b1..b4 (4-7) and
/// green g1..g4 (8-11), labelled "r1".."g4". The red points span the hull,
/// the blue tetrahedron is inverted and the smaller green one keeps the red
/// orientation, so each green vertex lies just beyond a blue face. Throws
/// ConstructionFailed when the rotations break the intended structure.
Dataset generate_counterexample(const CounterexampleSpec& spec = {});

/// Index sets of the counterexample colours.
inline constexpr std::array<int, 4> kRed{0, 1, 2, 3};
inline constexpr std::array<int, 4> kBlue{4, 5, 6, 7};
inline constexpr std::array<int, 4> kGreen{8, 9, 10, 11};

/// n standard-normal points in R^d from SplitMix64(seed). Redraws (continuing
/// the stream) if the sample is not in general position; ConstructionFailed
/// after 16 attempts.
Dataset generate_gaussian(int n, int d, std::uint64_t seed);

/// Eight points A..H on the unit circle in cyclic order. Vertices A-D are
/// rotated off the regular positions by fractions of a degree and E-H are
/// their antipodes, so every line through opposite vertices passes through
/// the origin.
Dataset generate_octagon();

/// Adds independent uniform noise in [-magnitude, magnitude] to every
/// coordinate.
Dataset perturb(const Dataset& data, double magnitude, std::uint64_t seed);

struct LoadOptions {
  bool check_general_position = true;
  Predicates pred{};
};

/// CSV with header x1,...,xd and an optional trailing `label` column.
/// Throws IoError, ParseError (with 1-based row/column) or DegenerateInput.
Dataset load_points(const std::filesystem::path& path, const LoadOptions& opts = {});
Dataset parse_points(std::string_view text, const LoadOptions& opts = {});

/// Shortest round-trip decimal form of every coordinate.
void save_points(const Dataset& data, const std::filesystem::path& path);
std::string format_points(const Dataset& data);

/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace tukey
