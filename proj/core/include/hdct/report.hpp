#pragma once

#include <string>
#include <vector>

#include "hdct/mean_tests.hpp"
#include "hdct/simulation.hpp"

namespace hdct {

/// Shortest decimal representation that parses back to exactly the same
/// double. Report files must be byte-stable across runs and thread counts,
/// and must round-trip.
std::string format_double(double value);

const char* dist_name(Innovation kind);
const char* cov_name(CovKind kind);

Innovation parse_dist(const std::string& name);   // throws ConfigError
CovKind parse_cov(const std::string& name);       // throws ConfigError

/// Experiment report as CSV. Leading '# key=value' lines echo the resolved
/// statistical configuration (seed included; thread count and wall time are
/// execution details and deliberately left out so output bytes do not
/// depend on scheduling).
///
/// Size modes:   statistic,dist,cov,n,p,alpha,reps,rate,se,seed
/// Power modes:  statistic,dist,cov,n,p,alpha,reps,m,rate,se,seed
/// Null checks:  diagnostic,dist,cov,n,p,alpha,reps,value,seed
std::string report_to_csv(const ExperimentReport& report);

/// Re-parses a report CSV produced by report_to_csv into (column-name,
/// row-values) form; values equal the originals exactly.
struct ParsedReport {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> config;
};
ParsedReport parse_report_csv(const std::string& text);

/// Per-test report block used by the test commands, one row per family:
/// family,statistic,pvalue,threshold,alpha,reject,n,p
std::string outcomes_to_csv(const std::vector<TestOutcome>& outcomes,
                            const std::vector<std::pair<std::string, std::string>>&
                                provenance);

}  // namespace hdct
