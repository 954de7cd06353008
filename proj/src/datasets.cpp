#include "isomap/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "isomap/error.hpp"

namespace isomap {

namespace {

constexpr double kPi = std::numbers::pi;

void check_count(std::size_t n) {
  if (n < 10) {
    throw Error(ErrorCode::BadCount, "synthetic generators need n >= 10");
  }
}

SyntheticSample make_sample(std::size_t n, Eigen::Index q, std::uint64_t seed) {
  SyntheticSample s;
  s.data.points.resize(static_cast<Eigen::Index>(n), 3);
  s.params.resize(static_cast<Eigen::Index>(n), q);
  s.seed = seed;
  return s;
}

std::vector<unsigned char> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t read_be32(const std::vector<unsigned char>& bytes, std::size_t offset) {
  if (bytes.size() < offset + 4) {
    throw Error(ErrorCode::TruncatedFile, "IDX header cut short");
  }
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void put_be32(std::ofstream& out, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16), static_cast<char>(v >> 8),
                     static_cast<char>(v)};
  out.write(b, 4);
}

std::vector<std::size_t> choose_rows(std::size_t total, const IdxOptions& options) {
  std::vector<std::size_t> rows(total);
  for (std::size_t i = 0; i < total; ++i) rows[i] = i;
  if (!options.take) return rows;
  const std::size_t take = *options.take;
  if (take == 0 || take > total) {
    throw Error(ErrorCode::BadCount,
                "cannot take " + std::to_string(take) + " of " + std::to_string(total) + " images");
  }
  if (options.sample_seed) {
    // Partial Fisher-Yates on the pinned uniform source.
    UniformSource rng(*options.sample_seed);
    for (std::size_t i = 0; i < take; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(total - i));
      std::swap(rows[i], rows[j]);
    }
    rows.resize(take);
    std::sort(rows.begin(), rows.end());
  } else {
    rows.resize(take);
  }
  return rows;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_cell(std::string_view cell, std::size_t line_no) {
  cell = trim(cell);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
    throw Error(ErrorCode::NonNumericCell,
                "line " + std::to_string(line_no) + ": '" + std::string(cell) + "' is not a number");
  }
  return v;
}

}  // namespace

std::uint64_t UniformSource::below(std::uint64_t bound) {
  // Largest multiple of bound representable; reject the tail to stay unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

SyntheticSample gen_helix(std::size_t n, std::uint64_t seed) {
  check_count(n);
  auto s = make_sample(n, 1, seed);
  UniformSource rng(seed);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
    const double t = 2.0 * kPi * rng.next();
    const double r = 2.0 + std::cos(8.0 * t);
    s.data.points.row(i) << r * std::cos(t), r * std::sin(t), std::sin(8.0 * t);
    s.params(i, 0) = t;
  }
  return s;
}

SyntheticSample gen_swiss_roll(std::size_t n, std::uint64_t seed) {
  check_count(n);
  auto s = make_sample(n, 2, seed);
  UniformSource rng(seed);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
    const double t = rng.next(1.5 * kPi, 4.5 * kPi);
    const double h = rng.next(0.0, 21.0);
    s.data.points.row(i) << t * std::cos(t), h, t * std::sin(t);
    s.params.row(i) << t, h;
  }
  return s;
}

SyntheticSample gen_punctured_sphere(std::size_t n, std::uint64_t seed) {
  check_count(n);
  auto s = make_sample(n, 2, seed);
  UniformSource rng(seed);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
    const double u = rng.next();
    const double polar = 0.8 * kPi * u * u;
    const double azimuth = 2.0 * kPi * rng.next();
    s.data.points.row(i) << std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
        std::cos(polar);
    s.params.row(i) << polar, azimuth;
  }
  return s;
}

Manifold parse_manifold(std::string_view text) {
  if (text == "helix") return Manifold::Helix;
  if (text == "swissroll" || text == "swiss-roll") return Manifold::SwissRoll;
  if (text == "sphere" || text == "punctured-sphere") return Manifold::PuncturedSphere;
  throw Error(ErrorCode::InvalidConfig, "unknown manifold '" + std::string(text) + "'");
}

SyntheticSample generate(Manifold manifold, std::size_t n, std::uint64_t seed) {
  switch (manifold) {
    case Manifold::Helix: return gen_helix(n, seed);
    case Manifold::SwissRoll: return gen_swiss_roll(n, seed);
    case Manifold::PuncturedSphere: return gen_punctured_sphere(n, seed);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown manifold");
}

DataSet load_idx(const std::filesystem::path& path, const IdxOptions& options) {
  const auto bytes = read_bytes(path);
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic != kIdxImageMagic) {
    throw Error(ErrorCode::BadMagic, path.string() + " is not an IDX unsigned-byte image file");
  }
  const std::size_t count = read_be32(bytes, 4);
  const std::size_t rows = read_be32(bytes, 8);
  const std::size_t cols = read_be32(bytes, 12);
  const std::size_t pixels = rows * cols;
  if (bytes.size() < 16 + count * pixels) {
    throw Error(ErrorCode::TruncatedFile, path.string() + " holds fewer pixels than its header declares");
  }

  std::optional<std::vector<unsigned char>> label_bytes;
  if (options.labels) {
    label_bytes = read_bytes(*options.labels);
    if (read_be32(*label_bytes, 0) != kIdxLabelMagic) {
      throw Error(ErrorCode::BadMagic, options.labels->string() + " is not an IDX label file");
    }
    const std::size_t n_labels = read_be32(*label_bytes, 4);
    if (n_labels != count) {
      throw Error(ErrorCode::DimensionMismatch, std::to_string(n_labels) + " labels for " +
                                                    std::to_string(count) + " images");
    }
    if (label_bytes->size() < 8 + n_labels) {
      throw Error(ErrorCode::TruncatedFile, options.labels->string() + " holds fewer labels than declared");
    }
  }

  const auto chosen = choose_rows(count, options);
  DataSet out;
  out.points.resize(static_cast<Eigen::Index>(chosen.size()), static_cast<Eigen::Index>(pixels));
  if (label_bytes) out.labels.emplace();
  for (std::size_t r = 0; r < chosen.size(); ++r) {
    const std::size_t base = 16 + chosen[r] * pixels;
    for (std::size_t c = 0; c < pixels; ++c) {
      out.points(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = bytes[base + c] / 255.0;
    }
    if (label_bytes) out.labels->push_back((*label_bytes)[8 + chosen[r]]);
  }
  return out;
}

void write_idx_images(const std::filesystem::path& path, std::span<const std::uint8_t> pixels,
                      std::uint32_t count, std::uint32_t rows, std::uint32_t cols) {
  if (pixels.size() != std::size_t{count} * rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, "pixel buffer does not match count x rows x cols");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  put_be32(out, kIdxImageMagic);
  put_be32(out, count);
  put_be32(out, rows);
  put_be32(out, cols);
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path.string());
}

void write_idx_labels(const std::filesystem::path& path, std::span<const std::uint8_t> labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  put_be32(out, kIdxLabelMagic);
  put_be32(out, static_cast<std::uint32_t>(labels.size()));
  out.write(reinterpret_cast<const char*>(labels.data()), static_cast<std::streamsize>(labels.size()));
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path.string());
}

DataSet parse_csv(std::string_view text, const CsvOptions& options) {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::size_t width = 0;
  std::size_t line_no = 0;
  bool skip = options.has_header;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (trim(line).empty()) continue;
    if (skip) {
      skip = false;
      continue;
    }
    const auto cells = split(line, ',');
    if (rows.empty()) {
      width = cells.size();
      if (options.label_last && width < 2) {
        throw Error(ErrorCode::RaggedRows, "label column requested but rows have a single cell");
      }
    } else if (cells.size() != width) {
      throw Error(ErrorCode::RaggedRows, "line " + std::to_string(line_no) + " has " +
                                             std::to_string(cells.size()) + " cells, expected " +
                                             std::to_string(width));
    }
    const std::size_t n_values = options.label_last ? width - 1 : width;
    std::vector<double> values(n_values);
    for (std::size_t c = 0; c < n_values; ++c) values[c] = parse_cell(cells[c], line_no);
    if (options.label_last) {
      const double v = parse_cell(cells.back(), line_no);
      if (v != std::floor(v)) {
        throw Error(ErrorCode::NonNumericCell, "line " + std::to_string(line_no) + ": label is not an integer");
      }
      labels.push_back(static_cast<int>(v));
    }
    rows.push_back(std::move(values));
  }

  DataSet out;
  const std::size_t d = rows.empty() ? 0 : rows.front().size();
  out.points.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      out.points(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  if (options.label_last) out.labels = std::move(labels);
  return out;
}

DataSet load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), options);
}

}  // namespace isomap
