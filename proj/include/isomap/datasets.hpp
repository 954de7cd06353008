#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <span>
#include <string_view>

#include "isomap/dataset.hpp"

namespace isomap {

/// A generated 3-D manifold sample together with its ground-truth parameters.
struct SyntheticSample {
  DataSet data;
  Eigen::MatrixXd params;  ///< N x q generating parameters, row-aligned with data
  std::uint64_t seed = 0;
};

/**
 * @brief Seeded uniform source with a fully pinned algorithm.
 *
 * `std::uniform_real_distribution` is implementation-defined, so samples are
 * drawn from the raw `std::mt19937_64` stream instead: the top 53 bits of each
 * output scaled by 2^-53, giving a double in [0, 1).
 */
class UniformSource {
public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double next(double lo, double hi) { return lo + (hi - lo) * next(); }
  /// Integer in [0, bound) by rejection on the raw stream.
  std::uint64_t below(std::uint64_t bound);

private:
  std::mt19937_64 engine_;
};

/// Toroidal helix ((2+cos 8t) cos t, (2+cos 8t) sin t, sin 8t), t ~ U[0, 2pi).
SyntheticSample gen_helix(std::size_t n, std::uint64_t seed);

/// Swiss roll (t cos t, h, t sin t), t ~ U[3pi/2, 9pi/2], h ~ U[0, 21].
SyntheticSample gen_swiss_roll(std::size_t n, std::uint64_t seed);

/// Unit sphere with the south cap removed (polar angle <= 0.8 pi), dense
/// near the north pole: polar angle = 0.8 pi u^2.
SyntheticSample gen_punctured_sphere(std::size_t n, std::uint64_t seed);

enum class Manifold { Helix, SwissRoll, PuncturedSphere };
Manifold parse_manifold(std::string_view text);
SyntheticSample generate(Manifold manifold, std::size_t n, std::uint64_t seed);

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

struct IdxOptions {
  std::optional<std::filesystem::path> labels;
  /// Keep only this many images; the first ones unless `sample_seed` is set.
  std::optional<std::size_t> take;
  /// When set together with `take`, draw a seeded random subset (kept in
  /// file order) instead of the leading images.
  std::optional<std::uint64_t> sample_seed;
};

/// IDX unsigned-byte image file, pixels scaled to [0, 1].
DataSet load_idx(const std::filesystem::path& path, const IdxOptions& options = {});

void write_idx_images(const std::filesystem::path& path, std::span<const std::uint8_t> pixels,
                      std::uint32_t count, std::uint32_t rows, std::uint32_t cols);
void write_idx_labels(const std::filesystem::path& path, std::span<const std::uint8_t> labels);

struct CsvOptions {
  bool has_header = false;
  /// Treat the final column as an integer label.
  bool label_last = false;
};

DataSet parse_csv(std::string_view text, const CsvOptions& options = {});
DataSet load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

}  // namespace isomap
