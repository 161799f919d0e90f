// Copyright 2026 The qsym Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qsym: dual quantile reports, symmetry checks, transformations and the
// verification suite on delimited data files.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qsym/cli/commands.hpp"

#ifdef QSYM_MUTANT_ENGINE
#include "qsym/verify/mutation.hpp"
#endif

namespace {

struct DataFlags {
  qsym::cli::DataColumnSpec spec;
  std::string delimiter = ",";
  bool header = false;
  bool no_header = false;
};

void add_data_flags(CLI::App* cmd, DataFlags& f) {
  cmd->add_option("file", f.spec.path, "Delimited data file")->required();
  cmd->add_option("--column,-c", f.spec.column, "Value column (header name or 0-based index)")->capture_default_str();
  cmd->add_option("--weights,-w", f.spec.weights, "Weight column (header name or 0-based index)");
  cmd->add_option("--delimiter,-d", f.delimiter, "Field delimiter ('tab' for a tab)")->capture_default_str();
  cmd->add_flag("--header", f.header, "First row is a header");
  cmd->add_flag("--no-header", f.no_header, "First row is data");
}

void finish_data_flags(DataFlags& f) {
  if (f.delimiter == "tab" || f.delimiter == "\\t") f.delimiter = "\t";
  if (f.delimiter.size() != 1) throw CLI::ValidationError("--delimiter", "must be a single character");
  f.spec.delimiter = f.delimiter.front();
  if (f.header && f.no_header) throw CLI::ValidationError("--header", "conflicts with --no-header");
  if (f.header) f.spec.header = true;
  if (f.no_header) f.spec.header = false;
}

void add_levels(CLI::App* cmd, std::vector<std::string>& levels) {
  cmd->add_option("--levels,-p", levels, "Levels in [0,1] or percentages, comma separated")
      ->required()
      ->delimiter(',');
}

qsym::cli::OutputFormat parse_format(const std::string& s) {
  return s == "json" ? qsym::cli::OutputFormat::kJson : qsym::cli::OutputFormat::kText;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Left and right quantiles with exact arithmetic"};
  app.require_subcommand(1);

  DataFlags qdata;
  std::vector<std::string> qlevels;
  std::string qformat = "text";
  auto* quantile = app.add_subcommand("quantile", "Left, right and traditional quantiles of a column");
  add_data_flags(quantile, qdata);
  add_levels(quantile, qlevels);
  quantile->add_option("--format,-f", qformat)->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  DataFlags sdata;
  std::vector<std::string> slevels;
  std::string sformat = "text";
  std::optional<std::string> paired;
  auto* symmetry = app.add_subcommand("symmetry", "Check lq(p) = -rq(1-p) of the negated data");
  add_data_flags(symmetry, sdata);
  add_levels(symmetry, slevels);
  symmetry->add_option("--format,-f", sformat)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  symmetry->add_option("--paired", paired,
                       "Column holding an order-reversing rescaling of the data (default: the only other column)");

  DataFlags tdata;
  std::vector<std::string> tlevels;
  std::string tformat = "text";
  std::string map;
  std::string side = "left";
  auto* transform = app.add_subcommand("transform", "Compare the quantile of phi(X) with phi of the quantile");
  add_data_flags(transform, tdata);
  add_levels(transform, tlevels);
  transform->add_option("--map,-m", map, "Map spec: inline JSON or a JSON file")->required();
  transform->add_option("--side,-s", side)->check(CLI::IsMember({"left", "right"}))->capture_default_str();
  transform->add_option("--format,-f", tformat)->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  qsym::cli::VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "Run the property suite on random mixtures");
  verify->add_option("--seed", vopt.seed)->capture_default_str();
  verify->add_option("--n", vopt.n, "Number of mixtures")->capture_default_str();
  verify->add_option("--random-levels", vopt.random_levels, "Random levels added to the 21-point grid")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_option("--threads", vopt.threads, "Worker threads (0: all cores)")->capture_default_str();
  verify->add_option("--report", vopt.report_path, "Write a JSON report to this path");

  try {
    app.parse(argc, argv);
    for (auto* f : {&qdata, &sdata, &tdata}) {
      if (!f->spec.path.empty()) finish_data_flags(*f);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (*quantile) {
    return qsym::cli::cmd_quantile({qdata.spec, qlevels, parse_format(qformat)}, std::cout, std::cerr);
  }
  if (*symmetry) {
    return qsym::cli::cmd_symmetry({sdata.spec, slevels, paired, parse_format(sformat)}, std::cout, std::cerr);
  }
  if (*transform) {
    const auto s = side == "left" ? qsym::Side::kLeft : qsym::Side::kRight;
    return qsym::cli::cmd_transform({tdata.spec, map, tlevels, s, parse_format(tformat)}, std::cout, std::cerr);
  }
#ifdef QSYM_MUTANT_ENGINE
  vopt.engine = qsym::verify::kOffByOneAtomEngine;
#endif
  return qsym::cli::cmd_verify(vopt, std::cout, std::cerr);
}
