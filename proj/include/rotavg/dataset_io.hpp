#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rotavg/means.hpp"
#include "rotavg/so3.hpp"

namespace rotavg {

enum class Representation { Matrix, Quaternion };

std::string_view to_string(Representation r);
/// "matrix" or "quat"; throws std::invalid_argument otherwise.
Representation parse_representation(std::string_view name);

/// Inputs farther than this from the manifold are rejected even with repair.
inline constexpr double kRepairLimit = 1e-3;

/**
 * Contents of a dataset file.
 *
 * One record per line: 9 reals (row-major matrix) or 4 reals (w, x, y, z),
 * optionally followed by a weight. Fields are separated by commas and/or
 * whitespace; '#' starts a comment.
 */
struct DatasetFile {
  Representation representation = Representation::Matrix;
  bool has_weights = false;
  std::vector<Rotation> rotations;
  std::vector<double> weights;  ///< empty unless has_weights
  int repaired = 0;             ///< records moved onto the manifold by repair

  /// Weighted view; unit weights when the file has no weight column or
  /// use_weights is false.
  WeightedDataset to_dataset(bool use_weights = true) const;
};

struct ReadOptions {
  /// Project records within kRepairLimit of the manifold instead of failing.
  bool repair = false;
};

/// Throws ParseError (malformed text) or ValidationError (off-manifold record).
DatasetFile parse_dataset(std::istream& in, const ReadOptions& opts = {});
DatasetFile read_dataset(const std::filesystem::path& path, const ReadOptions& opts = {});

/// Writes rotations in the requested representation with 17 significant
/// digits. weights may be empty.
void write_dataset(std::ostream& out, std::span<const Rotation> rotations,
                   std::span<const double> weights, Representation representation,
                   std::string_view header_comment = {});

/// Same, but writes raw quaternions as given (sign preserved).
void write_dataset(std::ostream& out, std::span<const UnitQuaternion> quaternions,
                   std::span<const double> weights, std::string_view header_comment = {});

/// Writes contents to path via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// %.17g
std::string format_double(double v);

}  // namespace rotavg
