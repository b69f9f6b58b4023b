#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "multinet/tensor.hpp"

namespace multinet {

/// Shortest decimal representation that parses back to the same double
/// (std::to_chars), locale-independent.
std::string formatDouble(double value);

/// Writes content to path via a temporary file in the same directory plus an
/// atomic rename, so readers never observe a half-written file.
void writeFileAtomic(const std::filesystem::path& path, const std::string& content);

struct ReadTnsResult {
  Tensor3d tensor;
  long duplicate_count = 0;  ///< entries that overwrote an earlier one (last wins)
};

/// Sparse coordinate text format:
///   TNS3 n1 n2 n3
///   i j k value        (0-based indices, one entry per line)
/// Lines whose first non-blank character is '#' are comments. Unlisted
/// entries are zero; duplicate coordinates keep the last value and are
/// counted. Malformed input raises ParseError with path and line number.
ReadTnsResult readTns(const std::filesystem::path& path);

/// Writes the nonzero entries in storage order (k slowest, then j, then i
/// fastest ascending), LF line endings, formatDouble values. Byte-identical
/// output for equal tensors.
void writeTns(const Tensor3d& tensor, const std::filesystem::path& path);

/// CSV with a header line; numeric cells use formatDouble.
void writeCsvMatrix(const Eigen::MatrixXd& m, const std::filesystem::path& path,
                    const std::vector<std::string>& column_names = {});

/// Reads a CSV produced by writeCsvMatrix (first line is the header).
Eigen::MatrixXd readCsvMatrix(const std::filesystem::path& path,
                              std::vector<std::string>* column_names = nullptr);

/// One integer per line; a single leading non-numeric line (e.g. "label") is
/// tolerated and skipped.
std::vector<int> readIntLabels(const std::filesystem::path& path);
void writeIntLabels(const std::vector<int>& labels, const std::filesystem::path& path);

struct DatasetDescriptor {
  std::string name;
  Index n1 = 0, n2 = 0, n3 = 0;
  std::string description;
};

/// Bundled real-dataset shapes, used to validate files loaded with a
/// --dataset claim.
const std::vector<DatasetDescriptor>& datasetDescriptors();

/// Loads a tensor file and checks it against the named descriptor; dimension
/// mismatches raise ValidationError naming expected and found shapes.
Tensor3d loadDataset(const std::filesystem::path& path, const std::string& dataset_name);

}  // namespace multinet
