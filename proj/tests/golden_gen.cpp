// Regenerates golden/fixture_stats.csv from the fixture compositions using
// only the naive reference implementations in oracle.hpp. Usage:
//   hdct_golden_gen <fixtures-dir>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"

namespace {

oracle::Matrix load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    std::exit(1);
  }
  oracle::Matrix rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      row.push_back(std::stod(cell));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit(const std::string& key, double value) {
  std::printf("%s,%.17g\n", key.c_str(), value);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: hdct_golden_gen <fixtures-dir>\n";
    return 1;
  }
  const std::string dir = argv[1];

  const oracle::Matrix f1 = oracle::clr(load_csv(dir + "/f1.csv"));
  const oracle::Matrix f2a = oracle::clr(load_csv(dir + "/f2a.csv"));
  const oracle::Matrix f2b = oracle::clr(load_csv(dir + "/f2b.csv"));

  std::printf("quantity,value\n");

  const oracle::Moments m1 = oracle::moments_one(f1);
  for (std::size_t j = 0; j < m1.mean.size(); ++j) {
    emit("f1_mean_" + std::to_string(j), m1.mean[j]);
  }
  for (std::size_t j = 0; j < m1.var_diag.size(); ++j) {
    emit("f1_var_diag_" + std::to_string(j), m1.var_diag[j]);
  }
  emit("f1_corr_trace_sq", m1.corr_trace_sq);

  const oracle::Moments m2 = oracle::moments_two(f2a, f2b);
  for (std::size_t j = 0; j < m2.mean.size(); ++j) {
    emit("f2_mean_diff_" + std::to_string(j), m2.mean[j]);
  }
  for (std::size_t j = 0; j < m2.var_diag.size(); ++j) {
    emit("f2_var_diag_" + std::to_string(j), m2.var_diag[j]);
  }
  emit("f2_corr_trace_sq", m2.corr_trace_sq);
  emit("f2_cpn", m2.cpn);

  const oracle::Statistics s1 = oracle::stats_one(f1);
  emit("f1_sum_stat", s1.sum_stat);
  emit("f1_max_stat", s1.max_stat);
  emit("f1_combo_stat", s1.combo_stat);

  const oracle::Statistics s2 = oracle::stats_two(f2a, f2b);
  emit("f2_sum_stat", s2.sum_stat);
  emit("f2_max_stat", s2.max_stat);
  emit("f2_combo_stat", s2.combo_stat);

  return 0;
}
