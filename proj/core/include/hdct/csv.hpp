#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hdct/composition.hpp"

namespace hdct {

/// Raw rectangular CSV content: optional header, numeric cells, and an
/// optional group label column (kept as strings until splitting).
struct CsvDataset {
  std::vector<std::string> header;            // empty if no header row
  Eigen::MatrixXd rows;                       // numeric cells
  std::vector<std::string> group_labels;      // per row; empty if no group col
};

struct IngestOptions {
  bool has_header = false;
  // Group column by header name or 0-based column index (two-sample input).
  std::optional<std::string> group_column;
  // Close every row to the simplex (for count / abundance tables).
  bool auto_close = false;
  // If > 0, zeros are replaced by this value and the row re-closed. This is
  // a deliberate departure from strict positivity and is flagged in the
  // result so reports can disclose it.
  double pseudocount = 0.0;
};

/// How the raw input was transformed on its way to a valid composition.
struct IngestFlags {
  bool closed = false;
  bool pseudocount_applied = false;
  double pseudocount = 0.0;
  int zeros_replaced = 0;
};

struct IngestedSample {
  CompositionMatrix composition;
  IngestFlags flags;
};

struct IngestedPair {
  CompositionMatrix group1;
  CompositionMatrix group2;
  std::string label1;
  std::string label2;
  IngestFlags flags;
};

/// Reads a CSV file of numeric cells (comma separated, '.' decimal point,
/// optional '#' comment lines). Throws ParseError with 0-based row/col
/// coordinates of the offending cell, InputError if unreadable.
CsvDataset read_csv(const std::string& path, const IngestOptions& options);

/// One-sample ingestion: parse, optionally pseudocount/close, validate.
IngestedSample ingest_csv(const std::string& path, const IngestOptions& options);

/// Two-sample ingestion from one file with a group column; the file must
/// contain exactly two distinct labels (group 1 = first label seen).
IngestedPair ingest_csv_grouped(const std::string& path,
                                const IngestOptions& options);

/// Reads a single numeric row (or column) as a vector; used for mu0 input.
Eigen::VectorXd read_vector_csv(const std::string& path);

}  // namespace hdct
