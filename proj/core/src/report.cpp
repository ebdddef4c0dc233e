#include "hdct/report.hpp"

#include <cstdio>
#include <cstring>
#include <sstream>

namespace hdct {

std::string format_double(double value) {
  char buffer[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
    if (std::strtod(buffer, nullptr) == value) {
      return buffer;
    }
  }
  return buffer;
}

const char* dist_name(Innovation kind) {
  switch (kind) {
    case Innovation::A1_Normal: return "A1";
    case Innovation::A2_ScaledT3: return "A2";
    case Innovation::A3_MixtureNormal: return "A3";
  }
  return "?";
}

const char* cov_name(CovKind kind) {
  switch (kind) {
    case CovKind::B1_AR: return "B1";
    case CovKind::B2_SpikedCorrelation: return "B2";
    case CovKind::B3_SpatialFactor: return "B3";
    case CovKind::Explicit: return "explicit";
  }
  return "?";
}

Innovation parse_dist(const std::string& name) {
  if (name == "A1") return Innovation::A1_Normal;
  if (name == "A2") return Innovation::A2_ScaledT3;
  if (name == "A3") return Innovation::A3_MixtureNormal;
  throw ConfigError("unknown distribution '" + name + "' (expected A1|A2|A3)");
}

CovKind parse_cov(const std::string& name) {
  if (name == "B1") return CovKind::B1_AR;
  if (name == "B2") return CovKind::B2_SpikedCorrelation;
  if (name == "B3") return CovKind::B3_SpatialFactor;
  throw ConfigError("unknown covariance '" + name + "' (expected B1|B2|B3)");
}

namespace {

std::string n_field(const ExperimentConfig& config) {
  if (config.two_sample()) {
    return std::to_string(config.n1) + "+" + std::to_string(config.n2);
  }
  return std::to_string(config.n);
}

void write_config_echo(std::ostringstream& out, const ExperimentConfig& c) {
  out << "# mode=" << mode_name(c.mode) << "\n";
  out << "# dist=" << dist_name(c.dist.kind) << "\n";
  out << "# cov=" << cov_name(c.cov.kind) << "\n";
  out << "# n=" << n_field(c) << "\n";
  out << "# p=" << c.p << "\n";
  out << "# alpha=" << format_double(c.alpha) << "\n";
  out << "# reps=" << c.reps << "\n";
  out << "# seed=" << c.master_seed << "\n";
  if (!c.m_grid.empty()) {
    out << "# m_grid=";
    for (std::size_t i = 0; i < c.m_grid.size(); ++i) {
      if (i) out << ",";
      out << c.m_grid[i];
    }
    out << "\n";
    out << "# energy=" << format_double(c.energy) << "\n";
  }
  if (c.unbiased_cov) out << "# unbiased_cov=1\n";
  if (c.redraw_cov_per_rep) out << "# redraw_cov_per_rep=1\n";
}

constexpr const char* kStatNames[3] = {"sum", "max", "com"};

}  // namespace

std::string report_to_csv(const ExperimentReport& report) {
  const ExperimentConfig& c = report.config;
  std::ostringstream out;
  write_config_echo(out, c);

  const std::string common = std::string(dist_name(c.dist.kind)) + "," +
                             cov_name(c.cov.kind) + "," + n_field(c) + "," +
                             std::to_string(c.p) + "," +
                             format_double(c.alpha) + "," +
                             std::to_string(c.reps);

  switch (c.mode) {
    case ExperimentMode::SizeOne:
    case ExperimentMode::SizeTwo:
      out << "statistic,dist,cov,n,p,alpha,reps,rate,se,seed\n";
      for (int j = 0; j < 3; ++j) {
        out << kStatNames[j] << "," << common << ","
            << format_double(report.rejection_rate[j]) << ","
            << format_double(report.rejection_se[j]) << "," << c.master_seed
            << "\n";
      }
      break;
    case ExperimentMode::PowerOne:
    case ExperimentMode::PowerTwo:
      out << "statistic,dist,cov,n,p,alpha,reps,m,rate,se,seed\n";
      for (std::size_t mi = 0; mi < c.m_grid.size(); ++mi) {
        for (int j = 0; j < 3; ++j) {
          out << kStatNames[j] << "," << common << "," << c.m_grid[mi] << ","
              << format_double(report.power[mi][j]) << ","
              << format_double(report.power_se[mi][j]) << "," << c.master_seed
              << "\n";
        }
      }
      break;
    case ExperimentMode::NullDiagnostics: {
      out << "diagnostic,dist,cov,n,p,alpha,reps,value,seed\n";
      const Diagnostics& d = report.diagnostics.value();
      const std::pair<const char*, double> rows[] = {
          {"ks_sum_normal", d.ks_sum_normal},
          {"gumbel_exceedance", d.gumbel_exceedance},
          {"combo_gof_pvalue", d.combo_gof_pvalue},
          {"combo_rejection_rate", d.combo_rejection_rate},
          {"sum_max_corr", d.sum_max_corr},
      };
      for (const auto& [name, value] : rows) {
        out << name << "," << common << "," << format_double(value) << ","
            << c.master_seed << "\n";
      }
      break;
    }
  }
  return out.str();
}

ParsedReport parse_report_csv(const std::string& text) {
  ParsedReport parsed;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key = line.substr(1, eq - 1);
        while (!key.empty() && key.front() == ' ') key.erase(key.begin());
        parsed.config.emplace_back(key, line.substr(eq + 1));
      }
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream fs(line);
    std::string field;
    while (std::getline(fs, field, ',')) fields.push_back(field);
    if (!have_header) {
      parsed.columns = std::move(fields);
      have_header = true;
    } else {
      parsed.rows.push_back(std::move(fields));
    }
  }
  return parsed;
}

std::string outcomes_to_csv(
    const std::vector<TestOutcome>& outcomes,
    const std::vector<std::pair<std::string, std::string>>& provenance) {
  std::ostringstream out;
  for (const auto& [key, value] : provenance) {
    out << "# " << key << "=" << value << "\n";
  }
  out << "family,statistic,pvalue,threshold,alpha,reject,n,p\n";
  for (const TestOutcome& o : outcomes) {
    out << family_name(o.family) << "," << format_double(o.statistic) << ","
        << format_double(o.pvalue) << "," << format_double(o.threshold) << ","
        << format_double(o.alpha) << "," << (o.reject ? 1 : 0) << ","
        << o.n_effective << "," << o.p << "\n";
  }
  return out.str();
}

}  // namespace hdct
