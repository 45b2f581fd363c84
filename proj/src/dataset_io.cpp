#include "rotavg/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace rotavg {

std::string_view to_string(Representation r) {
  return r == Representation::Matrix ? "matrix" : "quat";
}

Representation parse_representation(std::string_view name) {
  if (name == "matrix") return Representation::Matrix;
  if (name == "quat" || name == "quaternion") return Representation::Quaternion;
  throw std::invalid_argument("unknown representation '" + std::string(name) + "'");
}

WeightedDataset DatasetFile::to_dataset(bool use_weights) const {
  if (use_weights && has_weights) return WeightedDataset(rotations, weights);
  return WeightedDataset(rotations);
}

namespace {

bool is_separator(char c) { return c == ',' || c == ';' || c == ' ' || c == '\t' || c == '\r'; }

std::vector<double> tokenize(std::string_view line, int line_no) {
  std::vector<double> values;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_separator(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !is_separator(line[j])) ++j;
    const std::string_view tok = line.substr(i, j - i);
    // from_chars rejects a leading '+'.
    const std::string_view digits = (tok.size() > 1 && tok[0] == '+') ? tok.substr(1) : tok;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || !std::isfinite(v)) {
      std::ostringstream os;
      os << "line " << line_no << ": cannot parse number '" << tok << "'";
      throw ParseError(os.str());
    }
    values.push_back(v);
    i = j;
  }
  return values;
}

std::string line_prefix(int line_no) { return "line " + std::to_string(line_no) + ": "; }

Rotation validate_matrix(const Matrix3& m, const ReadOptions& opts, int line_no, int& repaired) {
  const double err = membership_error(m);
  if (err <= kManifoldTolerance) return Rotation::unchecked(m);
  if (opts.repair && err <= kRepairLimit) {
    ++repaired;
    return project_to_so3(m);
  }
  std::ostringstream os;
  os << line_prefix(line_no) << "matrix is not a rotation (membership error " << err << ")";
  if (!opts.repair && err <= kRepairLimit) os << "; rerun with --repair to project it onto SO(3)";
  throw ValidationError(os.str());
}

Rotation validate_quaternion(const Vector4& q, const ReadOptions& opts, int line_no, int& repaired) {
  const double err = std::abs(q.norm() - 1.0);
  if (err <= kManifoldTolerance) return quat_to_rotation(UnitQuaternion(q));
  if (opts.repair && err <= kRepairLimit) {
    ++repaired;
    return quat_to_rotation(UnitQuaternion(Vector4(q.normalized())));
  }
  std::ostringstream os;
  os << line_prefix(line_no) << "quaternion norm is off by " << err;
  if (!opts.repair && err <= kRepairLimit) os << "; rerun with --repair to normalize it";
  throw ValidationError(os.str());
}

}  // namespace

DatasetFile parse_dataset(std::istream& in, const ReadOptions& opts) {
  DatasetFile file;
  std::string line;
  int line_no = 0;
  int arity = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    const std::string_view body = std::string_view(line).substr(0, hash);
    const std::vector<double> v = tokenize(body, line_no);
    if (v.empty()) continue;

    const int cols = static_cast<int>(v.size());
    if (cols != 4 && cols != 5 && cols != 9 && cols != 10) {
      throw ParseError(line_prefix(line_no) + "expected 4, 5, 9 or 10 fields, got " + std::to_string(cols));
    }
    if (arity == 0) {
      arity = cols;
      file.representation = (cols >= 9) ? Representation::Matrix : Representation::Quaternion;
      file.has_weights = (cols == 5 || cols == 10);
    } else if (cols != arity) {
      throw ParseError(line_prefix(line_no) + "record has " + std::to_string(cols) +
                       " fields but earlier records have " + std::to_string(arity));
    }

    if (file.representation == Representation::Matrix) {
      Matrix3 m;
      m << v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8];
      file.rotations.push_back(validate_matrix(m, opts, line_no, file.repaired));
    } else {
      file.rotations.push_back(validate_quaternion(Vector4(v[0], v[1], v[2], v[3]), opts, line_no, file.repaired));
    }
    if (file.has_weights) {
      const double w = v.back();
      if (w < 0.0) throw ValidationError(line_prefix(line_no) + "negative weight");
      file.weights.push_back(w);
    }
  }
  if (file.rotations.empty()) throw ParseError("dataset contains no records");
  return file;
}

DatasetFile read_dataset(const std::filesystem::path& path, const ReadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset file " + path.string());
  return parse_dataset(in, opts);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void write_header(std::ostream& out, std::string_view header_comment) {
  if (header_comment.empty()) return;
  std::istringstream lines{std::string(header_comment)};
  std::string line;
  while (std::getline(lines, line)) out << "# " << line << '\n';
}

}  // namespace

void write_dataset(std::ostream& out, std::span<const Rotation> rotations, std::span<const double> weights,
                   Representation representation, std::string_view header_comment) {
  if (!weights.empty() && weights.size() != rotations.size()) {
    throw SizeMismatch("weight count does not match rotation count");
  }
  write_header(out, header_comment);
  for (std::size_t i = 0; i < rotations.size(); ++i) {
    const Matrix3& m = rotations[i].matrix();
    if (representation == Representation::Matrix) {
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
          if (r != 0 || c != 0) out << ", ";
          out << format_double(m(r, c));
        }
      }
    } else {
      const UnitQuaternion q = rotation_to_quat(rotations[i]);
      out << format_double(q.w()) << ", " << format_double(q.x()) << ", " << format_double(q.y()) << ", "
          << format_double(q.z());
    }
    if (!weights.empty()) out << ", " << format_double(weights[i]);
    out << '\n';
  }
}

void write_dataset(std::ostream& out, std::span<const UnitQuaternion> quaternions, std::span<const double> weights,
                   std::string_view header_comment) {
  if (!weights.empty() && weights.size() != quaternions.size()) {
    throw SizeMismatch("weight count does not match quaternion count");
  }
  write_header(out, header_comment);
  for (std::size_t i = 0; i < quaternions.size(); ++i) {
    const UnitQuaternion& q = quaternions[i];
    out << format_double(q.w()) << ", " << format_double(q.x()) << ", " << format_double(q.y()) << ", "
        << format_double(q.z());
    if (!weights.empty()) out << ", " << format_double(weights[i]);
    out << '\n';
  }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

}  // namespace rotavg
