#include "hdct/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace hdct {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    fields.push_back(trim(field));
  }
  if (!line.empty() && line.back() == ',') {
    fields.push_back("");
  }
  return fields;
}

double parse_cell(const std::string& cell, std::int64_t row, std::int64_t col) {
  if (cell.empty()) {
    throw ParseError(row, col, "empty cell");
  }
  double value = 0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(row, col, "not a number: '" + cell + "'");
  }
  return value;
}

// Resolves the group column to an index; by name needs a header.
std::size_t group_column_index(const std::string& spec,
                               const std::vector<std::string>& header,
                               std::size_t n_cols) {
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == spec) return j;
  }
  std::size_t index = 0;
  const auto [ptr, ec] =
      std::from_chars(spec.data(), spec.data() + spec.size(), index);
  if (ec == std::errc() && ptr == spec.data() + spec.size() && index < n_cols) {
    return index;
  }
  throw GroupError("group column '" + spec + "' not found");
}

IngestFlags apply_transforms(Eigen::MatrixXd& values,
                             const IngestOptions& options) {
  IngestFlags flags;
  if (options.pseudocount > 0.0) {
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
      for (Eigen::Index j = 0; j < values.cols(); ++j) {
        if (values(i, j) == 0.0) {
          values(i, j) = options.pseudocount;
          ++flags.zeros_replaced;
        }
      }
    }
    if (flags.zeros_replaced > 0) {
      flags.pseudocount_applied = true;
      flags.pseudocount = options.pseudocount;
    }
  }
  flags.closed = options.auto_close || flags.pseudocount_applied;
  return flags;
}

CompositionMatrix to_composition_matrix(Eigen::MatrixXd values,
                                        const IngestFlags& flags) {
  if (flags.closed) {
    return close(values);
  }
  return validate_composition(values);
}

}  // namespace

CsvDataset read_csv(const std::string& path, const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open '" + path + "'");
  }

  std::vector<std::vector<std::string>> raw;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    raw.push_back(split_fields(t));
  }
  if (raw.empty()) {
    throw InputError("'" + path + "' has no data rows");
  }

  CsvDataset ds;
  std::size_t first_row = 0;
  if (options.has_header) {
    ds.header = raw[0];
    first_row = 1;
    if (raw.size() == 1) {
      throw InputError("'" + path + "' has a header but no data rows");
    }
  }

  const std::size_t n_cols = raw[first_row].size();
  std::optional<std::size_t> group_col;
  if (options.group_column) {
    group_col = group_column_index(*options.group_column, ds.header, n_cols);
  }

  const std::size_t n_rows = raw.size() - first_row;
  const std::size_t n_numeric = n_cols - (group_col ? 1 : 0);
  if (n_numeric == 0) {
    throw InputError("'" + path + "' has no numeric columns");
  }
  ds.rows.resize(n_rows, n_numeric);
  if (group_col) ds.group_labels.reserve(n_rows);

  for (std::size_t i = 0; i < n_rows; ++i) {
    const auto& fields = raw[first_row + i];
    if (fields.size() != n_cols) {
      throw ParseError(static_cast<std::int64_t>(i),
                       static_cast<std::int64_t>(fields.size()),
                       "ragged row: expected " + std::to_string(n_cols) +
                           " fields, got " + std::to_string(fields.size()));
    }
    std::size_t out_j = 0;
    for (std::size_t j = 0; j < n_cols; ++j) {
      if (group_col && j == *group_col) {
        ds.group_labels.push_back(fields[j]);
        continue;
      }
      ds.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(out_j)) =
          parse_cell(fields[j], static_cast<std::int64_t>(i),
                     static_cast<std::int64_t>(j));
      ++out_j;
    }
  }

  // Header minus the group column, so downstream names line up.
  if (group_col && !ds.header.empty()) {
    ds.header.erase(ds.header.begin() + static_cast<std::ptrdiff_t>(*group_col));
  }
  return ds;
}

IngestedSample ingest_csv(const std::string& path,
                          const IngestOptions& options) {
  if (options.group_column) {
    throw GroupError("one-sample ingestion does not take a group column");
  }
  CsvDataset ds = read_csv(path, options);
  const IngestFlags flags = apply_transforms(ds.rows, options);
  return {to_composition_matrix(std::move(ds.rows), flags), flags};
}

IngestedPair ingest_csv_grouped(const std::string& path,
                                const IngestOptions& options) {
  if (!options.group_column) {
    throw GroupError("two-sample ingestion from one file needs a group column");
  }
  CsvDataset ds = read_csv(path, options);

  std::string label1, label2;
  std::vector<int> assignment(ds.group_labels.size());
  int n1 = 0, n2 = 0;
  for (std::size_t i = 0; i < ds.group_labels.size(); ++i) {
    const std::string& label = ds.group_labels[i];
    if (label1.empty() && n1 == 0) {
      label1 = label;
    }
    if (label == label1) {
      assignment[i] = 1;
      ++n1;
    } else if (label2.empty() && n2 == 0) {
      label2 = label;
      assignment[i] = 2;
      ++n2;
    } else if (label == label2) {
      assignment[i] = 2;
      ++n2;
    } else {
      throw GroupError("more than two group labels: '" + label1 + "', '" +
                       label2 + "', '" + label + "'");
    }
  }
  if (n1 == 0 || n2 == 0) {
    throw GroupError("need exactly two group labels, found " +
                     std::to_string(n1 == 0 || n2 == 0 ? 1 : 2));
  }

  Eigen::MatrixXd m1(n1, ds.rows.cols());
  Eigen::MatrixXd m2(n2, ds.rows.cols());
  int i1 = 0, i2 = 0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == 1) {
      m1.row(i1++) = ds.rows.row(static_cast<Eigen::Index>(i));
    } else {
      m2.row(i2++) = ds.rows.row(static_cast<Eigen::Index>(i));
    }
  }

  const IngestFlags flags1 = apply_transforms(m1, options);
  IngestFlags flags2 = apply_transforms(m2, options);
  IngestFlags flags = flags1;
  flags.zeros_replaced += flags2.zeros_replaced;
  flags.pseudocount_applied |= flags2.pseudocount_applied;

  return {to_composition_matrix(std::move(m1), flags1),
          to_composition_matrix(std::move(m2), flags2), label1, label2, flags};
}

Eigen::VectorXd read_vector_csv(const std::string& path) {
  IngestOptions options;
  const CsvDataset ds = read_csv(path, options);
  if (ds.rows.rows() == 1) {
    return ds.rows.row(0).transpose();
  }
  if (ds.rows.cols() == 1) {
    return ds.rows.col(0);
  }
  throw InputError("'" + path + "' must hold a single row or column vector");
}

}  // namespace hdct
