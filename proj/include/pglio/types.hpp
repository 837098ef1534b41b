#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pglio/geometry.hpp"

namespace pglio {

// Parser/validator failures carry a human-readable location in what().
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Spinning-lidar beam layout. Rings are image rows, encoder steps columns.
struct BeamIntrinsics {
  std::uint32_t rows = 0;           // H
  std::uint32_t cols = 0;           // W
  std::vector<double> elevation;    // phi_i, radians, strictly monotonic
  std::vector<double> azimuth_off;  // theta_a_i, radians, |.| <= 0.35
  double beam_origin = 0.0;         // n, meters, >= 0
  double vertical_fov = 0.0;        // theta_fov, radians

  // Encoder angle of column j, chosen so that a point emitted at theta_e(j)
  // with zero beam offsets projects exactly onto column j.
  double encoder_angle(std::uint32_t col) const {
    return M_PI * (1.0 - 2.0 * static_cast<double>(col) / cols);
  }

  void validate() const {
    if (rows < 1 || cols < 1) throw ValidationError("intrinsics: empty grid");
    if (elevation.size() != rows || azimuth_off.size() != rows)
      throw ValidationError("intrinsics: per-ring array size mismatch");
    if (beam_origin < 0.0)
      throw ValidationError("intrinsics: beam origin offset negative");
    if (!(vertical_fov > 0.0))
      throw ValidationError("intrinsics: vertical fov must be positive");
    const bool increasing = rows < 2 || elevation[1] > elevation[0];
    for (std::uint32_t i = 0; i + 1 < rows; ++i) {
      const bool step_up = elevation[i + 1] > elevation[i];
      if (step_up != increasing || elevation[i + 1] == elevation[i])
        throw ValidationError("intrinsics: elevation not strictly monotonic at ring " +
                              std::to_string(i + 1));
    }
    for (std::uint32_t i = 0; i < rows; ++i) {
      if (std::abs(azimuth_off[i]) > 0.35)
        throw ValidationError("intrinsics: azimuth offset out of range at ring " +
                              std::to_string(i));
    }
  }
};

inline constexpr float kMinRange = 0.1f;
inline constexpr float kMaxRange = 500.0f;

// Organized scan: H x W grid of (range, intensity) plus per-column firing
// time offsets. range == 0 marks an invalid cell.
struct LidarScan {
  BeamIntrinsics intrinsics;
  double start_time = 0.0;
  double end_time = 0.0;
  std::vector<double> col_offset;   // seconds from start, size W, non-decreasing
  std::vector<float> range;        // size H*W, row-major
  std::vector<float> intensity;    // size H*W, row-major

  std::size_t cell(std::uint32_t ring, std::uint32_t col) const {
    return static_cast<std::size_t>(ring) * intrinsics.cols + col;
  }
  double col_time(std::uint32_t col) const { return start_time + col_offset[col]; }
  bool valid(std::uint32_t ring, std::uint32_t col) const {
    return range[cell(ring, col)] > 0.0f;
  }

  void validate() const {
    intrinsics.validate();
    const std::size_t n = static_cast<std::size_t>(intrinsics.rows) * intrinsics.cols;
    if (!(end_time >= start_time))
      throw ValidationError("scan: end_time precedes start_time");
    if (col_offset.size() != intrinsics.cols)
      throw ValidationError("scan: column offset count mismatch");
    if (range.size() != n || intensity.size() != n)
      throw ValidationError("scan: cell count mismatch");
    const double span = end_time - start_time;
    for (std::uint32_t j = 0; j < intrinsics.cols; ++j) {
      if (col_offset[j] < 0.0 || col_offset[j] > span + 1e-12)
        throw ValidationError("scan: column " + std::to_string(j) +
                              " time offset outside scan span");
      if (j > 0 && col_offset[j] < col_offset[j - 1])
        throw ValidationError("scan: column " + std::to_string(j) +
                              " time offset decreases");
    }
    for (std::uint32_t i = 0; i < intrinsics.rows; ++i) {
      for (std::uint32_t j = 0; j < intrinsics.cols; ++j) {
        const float r = range[cell(i, j)];
        if (r != 0.0f && (r < kMinRange || r > kMaxRange))
          throw ValidationError("scan: range out of [0.1, 500] at cell (" +
                                std::to_string(i) + ", " + std::to_string(j) + ")");
        if (!(intensity[cell(i, j)] >= 0.0f))
          throw ValidationError("scan: negative intensity at cell (" +
                                std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
};

struct ImuSample {
  double stamp = 0.0;
  Vec3 gyro = Vec3::Zero();   // rad/s
  Vec3 accel = Vec3::Zero();  // m/s^2
};

}  // namespace pglio
