#include "multinet/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace multinet {

namespace fs = std::filesystem;

std::string formatDouble(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void writeFileAtomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp~";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError(tmp.string() + ": cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ParseError(tmp.string() + ": write failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw ParseError(path.string() + ": rename failed: " + ec.message());
  }
}

namespace {

std::vector<std::string_view> splitTokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos > start) tokens.push_back(line.substr(start, pos - start));
  }
  return tokens;
}

bool parseLong(std::string_view token, long& out) {
  const auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  return res.ec == std::errc() && res.ptr == token.data() + token.size();
}

bool parseDouble(std::string_view token, double& out) {
  const auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  return res.ec == std::errc() && res.ptr == token.data() + token.size();
}

void stripCr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

ReadTnsResult readTns(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");

  std::string line;
  long line_no = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + msg);
  };

  ReadTnsResult out;
  std::vector<char> seen;
  Dims3 dims{0, 0, 0};
  bool have_header = false;

  while (std::getline(in, line)) {
    ++line_no;
    stripCr(line);
    const auto tokens = splitTokens(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;

    if (!have_header) {
      if (tokens.size() != 4 || tokens[0] != "TNS3")
        fail("expected header 'TNS3 n1 n2 n3'");
      for (int m = 0; m < 3; ++m) {
        long d = 0;
        if (!parseLong(tokens[static_cast<std::size_t>(m + 1)], d) || d < 1)
          fail("dimension '" + std::string(tokens[static_cast<std::size_t>(m + 1)]) +
               "' is not a positive integer");
        dims[static_cast<std::size_t>(m)] = d;
      }
      out.tensor = Tensor3d(dims);
      seen.assign(static_cast<std::size_t>(out.tensor.size()), 0);
      have_header = true;
      continue;
    }

    if (tokens.size() != 4) fail("expected 'i j k value'");
    long idx[3];
    for (int m = 0; m < 3; ++m) {
      if (!parseLong(tokens[static_cast<std::size_t>(m)], idx[m]))
        fail("index '" + std::string(tokens[static_cast<std::size_t>(m)]) +
             "' is not an integer");
      if (idx[m] < 0 || idx[m] >= dims[static_cast<std::size_t>(m)])
        fail("index " + std::to_string(idx[m]) + " out of range [0, " +
             std::to_string(dims[static_cast<std::size_t>(m)]) + ") in mode " +
             std::to_string(m + 1));
    }
    double value = 0;
    if (!parseDouble(tokens[3], value))
      fail("value '" + std::string(tokens[3]) + "' is not a number");
    const std::size_t linear = static_cast<std::size_t>(
        idx[0] + dims[0] * (idx[1] + dims[1] * idx[2]));
    if (seen[linear]) ++out.duplicate_count;
    seen[linear] = 1;
    out.tensor(idx[0], idx[1], idx[2]) = value;
  }

  if (!have_header) throw ParseError(path.string() + ": missing TNS3 header");
  return out;
}

void writeTns(const Tensor3d& tensor, const fs::path& path) {
  std::string body = "TNS3 " + std::to_string(tensor.dim(1)) + " " +
                     std::to_string(tensor.dim(2)) + " " + std::to_string(tensor.dim(3)) +
                     "\n";
  for (Index k = 0; k < tensor.dim(3); ++k)
    for (Index j = 0; j < tensor.dim(2); ++j)
      for (Index i = 0; i < tensor.dim(1); ++i) {
        const double value = tensor(i, j, k);
        if (value == 0.0) continue;
        body += std::to_string(i) + " " + std::to_string(j) + " " + std::to_string(k) +
                " " + formatDouble(value) + "\n";
      }
  writeFileAtomic(path, body);
}

void writeCsvMatrix(const Eigen::MatrixXd& m, const fs::path& path,
                    const std::vector<std::string>& column_names) {
  if (!column_names.empty() && column_names.size() != static_cast<std::size_t>(m.cols()))
    throw ArgumentError("writeCsvMatrix: " + std::to_string(column_names.size()) +
                        " column names for " + std::to_string(m.cols()) + " columns");
  std::string body;
  for (Index c = 0; c < m.cols(); ++c) {
    if (c > 0) body += ",";
    body += column_names.empty() ? "dim" + std::to_string(c)
                                 : column_names[static_cast<std::size_t>(c)];
  }
  body += "\n";
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c > 0) body += ",";
      body += formatDouble(m(r, c));
    }
    body += "\n";
  }
  writeFileAtomic(path, body);
}

Eigen::MatrixXd readCsvMatrix(const fs::path& path, std::vector<std::string>* column_names) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::string line;
  long line_no = 0;

  if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file");
  ++line_no;
  stripCr(line);
  std::vector<std::string> names;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) names.push_back(cell);
  }
  if (names.empty()) throw ParseError(path.string() + ":1: empty header");
  if (column_names) *column_names = names;

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    stripCr(line);
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      double value = 0;
      if (!parseDouble(cell, value))
        throw ParseError(path.string() + ":" + std::to_string(line_no) + ": cell '" +
                         cell + "' is not a number");
      row.push_back(value);
    }
    if (row.size() != names.size())
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(names.size()) + " cells, got " +
                       std::to_string(row.size()));
    rows.push_back(std::move(row));
  }

  Eigen::MatrixXd m(static_cast<Index>(rows.size()), static_cast<Index>(names.size()));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  return m;
}

std::vector<int> readIntLabels(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::vector<int> labels;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    stripCr(line);
    const auto tokens = splitTokens(line);
    if (tokens.empty()) continue;
    long value = 0;
    if (!parseLong(tokens[0], value) || tokens.size() != 1) {
      if (line_no == 1 && labels.empty()) continue;  // header line like "label"
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected one integer");
    }
    labels.push_back(static_cast<int>(value));
  }
  return labels;
}

void writeIntLabels(const std::vector<int>& labels, const fs::path& path) {
  std::string body;
  for (int lab : labels) body += std::to_string(lab) + "\n";
  writeFileAtomic(path, body);
}

const std::vector<DatasetDescriptor>& datasetDescriptors() {
  static const std::vector<DatasetDescriptor> descriptors = {
      {"malaria", 212, 212, 9, "malaria parasite gene recombination networks"},
      {"food-trade", 99, 99, 30, "worldwide food trade flows by commodity"},
      {"un-commodity", 48, 48, 97, "UN commodity trade among 48 countries"},
  };
  return descriptors;
}

Tensor3d loadDataset(const fs::path& path, const std::string& dataset_name) {
  const DatasetDescriptor* descriptor = nullptr;
  for (const auto& d : datasetDescriptors())
    if (d.name == dataset_name) descriptor = &d;
  if (!descriptor) {
    std::string known;
    for (const auto& d : datasetDescriptors()) known += (known.empty() ? "" : ", ") + d.name;
    throw ArgumentError("unknown dataset '" + dataset_name + "' (known: " + known + ")");
  }
  Tensor3d tensor = readTns(path).tensor;
  if (tensor.dim(1) != descriptor->n1 || tensor.dim(2) != descriptor->n2 ||
      tensor.dim(3) != descriptor->n3)
    throw ValidationError("dataset '" + dataset_name + "' expects dimensions (" +
                          std::to_string(descriptor->n1) + ", " +
                          std::to_string(descriptor->n2) + ", " +
                          std::to_string(descriptor->n3) + ") but " + path.string() +
                          " has " + dimsToString(tensor.dims()));
  return tensor;
}

}  // namespace multinet
