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

// Subcommands of the qsym tool. Each returns its process exit code, writes
// data to `out` and diagnostics to `err`.
//
// Exit codes:
//   0 success
//   1 a reported identity or verification check failed
//   2 I/O error
//   3 parse error in the data file (message names line and column)
//   4 invalid level
//   5 bad map spec, or a map that cannot be applied to the data
//   6 continuity hypothesis does not match the requested side

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsym/cli/data_file.hpp"
#include "qsym/distribution.hpp"
#include "qsym/error.hpp"
#include "qsym/extended_real.hpp"
#include "qsym/map_spec.hpp"
#include "qsym/probability.hpp"
#include "qsym/quantile.hpp"
#include "qsym/transform.hpp"
#include "qsym/verify/generator.hpp"
#include "qsym/verify/suite.hpp"

namespace qsym::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitLevel = 4;
inline constexpr int kExitMap = 5;
inline constexpr int kExitContinuity = 6;

enum class OutputFormat { kText, kJson };

/// One line of a quantile report. `traditional` is the left quantile.
struct ReportRow {
  Probability level;
  ExtendedReal left;
  ExtendedReal right;
  ExtendedReal traditional;
};

/// JSON number for finite values, "-inf"/"+inf" otherwise.
inline nlohmann::json json_value(const ExtendedReal& x) {
  if (x.is_finite()) return x.to_double();
  return format(x);
}

namespace detail {

// Loaded column plus the empirical distribution built from it.
struct LoadedData {
  Table table;
  std::size_t column = 0;
  std::vector<Real> values;
  MixtureDistribution dist;
};

inline LoadedData load(const DataColumnSpec& spec) {
  Table table = read_table(spec.path, spec.delimiter, spec.header);
  if (table.rows.empty()) throw ParseError(1, 1, "no data rows in '" + spec.path + "'");
  const std::size_t column = table.resolve(spec.column);
  auto values = numeric_column(table, column);
  std::optional<std::vector<Real>> weights;
  if (spec.weights) weights = numeric_column(table, table.resolve(*spec.weights), /*positive=*/true);
  auto dist = weights ? make_empirical(std::span<const Real>(values), std::span<const Real>(*weights))
                      : make_empirical(std::span<const Real>(values));
  return LoadedData{std::move(table), column, std::move(values), std::move(dist)};
}

// Parses every level or reports the first bad one.
inline std::optional<std::vector<Probability>> parse_levels(const std::vector<std::string>& raw, std::ostream& err) {
  std::vector<Probability> out;
  for (const auto& text : raw) {
    auto p = parse_level(text);
    if (!p) {
      err << "error: invalid level '" << text << "' (expected a decimal in [0,1] or a percentage)\n";
      return std::nullopt;
    }
    out.push_back(*p);
  }
  if (out.empty()) {
    err << "error: at least one level is required\n";
    return std::nullopt;
  }
  return out;
}

// Runs `body`, translating the shared error types into exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::kEmptyData:
      case ErrorCode::kBadValue:
      case ErrorCode::kBadWeight:
        return kExitParse;
      case ErrorCode::kBadLevel:
        return kExitLevel;
      case ErrorCode::kContinuityMismatch:
        return kExitContinuity;
      default:
        return kExitMap;
    }
  }
}

inline void print_table(std::ostream& out, const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

}  // namespace detail

struct QuantileOptions {
  DataColumnSpec data;
  std::vector<std::string> levels;
  OutputFormat format = OutputFormat::kText;
};

inline std::vector<ReportRow> quantile_rows(const MixtureDistribution& d, const std::vector<Probability>& levels) {
  std::vector<ReportRow> rows;
  for (const auto& p : levels) {
    const auto pair = quantile_pair(d, p);
    rows.push_back(ReportRow{p, pair.left, pair.right, pair.left});
  }
  return rows;
}

/// Left and right quantiles of one data column at each level.
inline int cmd_quantile(const QuantileOptions& opt, std::ostream& out, std::ostream& err) {
  auto levels = detail::parse_levels(opt.levels, err);
  if (!levels) return kExitLevel;
  return detail::guarded(err, [&] {
    const auto data = detail::load(opt.data);
    const auto rows = quantile_rows(data.dist, *levels);
    if (opt.format == OutputFormat::kJson) {
      nlohmann::json j{{"column", data.table.name_of(data.column)}, {"n", data.values.size()}};
      j["rows"] = nlohmann::json::array();
      for (const auto& r : rows) {
        j["rows"].push_back({{"level", r.level.to_double()},
                             {"level_exact", format(r.level)},
                             {"left", json_value(r.left)},
                             {"right", json_value(r.right)},
                             {"traditional", json_value(r.traditional)},
                             {"left_exact", format(r.left)},
                             {"right_exact", format(r.right)}});
      }
      out << j.dump(2) << '\n';
      return kExitOk;
    }
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows) cells.push_back({format(r.level), format(r.left), format(r.right), format(r.traditional)});
    out << "column " << data.table.name_of(data.column) << ", n = " << data.values.size() << '\n';
    detail::print_table(out, {"level", "left", "right", "traditional"}, cells);
    return kExitOk;
  });
}

struct SymmetryOptions {
  DataColumnSpec data;
  std::vector<std::string> levels;
  // Column holding an order-reversing rescaling of the data column. When
  // unset and the file has exactly one other column, that column is used.
  std::optional<std::string> paired;
  OutputFormat format = OutputFormat::kText;
};

/// One level of the paired-scale comparison.
struct PairedComparison {
  Probability level;
  ExtendedReal paired_traditional;   // lq on the paired scale at p
  ExtendedReal mapped_back;          // the data value of that row
  ExtendedReal data_traditional;     // lq on the data scale at 1 - p
  long position_offset = 0;          // rank(mapped_back) - rank(data_traditional)
  ExtendedReal paired_right;         // rq on the paired scale at 1 - p
  ExtendedReal dual_mapped_back;     // the data value of that row
  ExtendedReal data_left;            // lq on the data scale at p
  bool dual_identity = false;        // dual_mapped_back == data_left
};

namespace detail {

// Row-wise pairing value -> data value, when the paired column reverses the
// order of the data column; nullopt otherwise.
inline std::optional<std::map<Real, Real>> reversing_pairing(const std::vector<Real>& data,
                                                             const std::vector<Real>& paired) {
  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return data[a] < data[b]; });
  std::map<Real, Real> back;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto i = order[k];
    if (k > 0) {
      const auto j = order[k - 1];
      if (data[j] == data[i] ? paired[j] != paired[i] : !(paired[j] > paired[i])) return std::nullopt;
    }
    back.emplace(paired[i], data[i]);
  }
  return back;
}

}  // namespace detail

inline std::vector<PairedComparison> paired_comparisons(const std::vector<Real>& data,
                                                        const std::vector<Real>& paired,
                                                        const std::vector<Probability>& levels) {
  const auto pairing = detail::reversing_pairing(data, paired);
  if (!pairing) throw Error(ErrorCode::kBadValue, "paired column is not an order-reversing rescaling");
  const auto data_dist = make_empirical(std::span<const Real>(data));
  const auto paired_dist = make_empirical(std::span<const Real>(paired));
  std::vector<Real> ranks;
  for (const auto& a : data_dist.atoms()) ranks.push_back(a.location);
  auto rank = [&](const ExtendedReal& x) {
    return static_cast<long>(std::lower_bound(ranks.begin(), ranks.end(), x.value()) - ranks.begin()) + 1;
  };
  auto back = [&](const ExtendedReal& x) { return ExtendedReal(pairing->at(x.value())); };

  std::vector<PairedComparison> out;
  for (const auto& p : levels) {
    PairedComparison c{p, {}, {}, {}, 0, {}, {}, {}, false};
    c.paired_traditional = left_quantile(paired_dist, p);
    c.data_traditional = left_quantile(data_dist, p.complement());
    if (c.paired_traditional.is_finite() && c.data_traditional.is_finite()) {
      c.mapped_back = back(c.paired_traditional);
      c.position_offset = rank(c.mapped_back) - rank(c.data_traditional);
    } else {
      c.mapped_back = -c.paired_traditional;
    }
    c.paired_right = right_quantile(paired_dist, p.complement());
    c.data_left = left_quantile(data_dist, p);
    c.dual_mapped_back = c.paired_right.is_finite() ? back(c.paired_right) : -c.paired_right;
    c.dual_identity = c.dual_mapped_back == c.data_left;
    out.push_back(std::move(c));
  }
  return out;
}

/// Symmetry table for one column and, with a paired column, the comparison
/// of traditional quantiles across the two scales.
inline int cmd_symmetry(const SymmetryOptions& opt, std::ostream& out, std::ostream& err) {
  auto levels = detail::parse_levels(opt.levels, err);
  if (!levels) return kExitLevel;
  return detail::guarded(err, [&] {
    const auto data = detail::load(opt.data);
    const auto neg = negate(data.dist);
    const std::string name = data.table.name_of(data.column);

    std::optional<std::size_t> paired_index;
    if (opt.paired) {
      paired_index = data.table.resolve(*opt.paired);
    } else {
      std::vector<std::size_t> others;
      for (std::size_t c = 0; c < data.table.width(); ++c) {
        const bool is_weight = opt.data.weights && data.table.resolve(*opt.data.weights) == c;
        if (c != data.column && !is_weight) others.push_back(c);
      }
      if (others.size() == 1) paired_index = others.front();
    }

    bool all_pass = true;
    nlohmann::json j{{"column", name}, {"rows", nlohmann::json::array()}};
    std::vector<std::vector<std::string>> cells;
    for (const auto& p : *levels) {
      const auto lq = left_quantile(data.dist, p);
      const auto rq = right_quantile(data.dist, p);
      const auto lq_sym = -right_quantile(neg, p.complement());
      const auto rq_sym = -left_quantile(neg, p.complement());
      const bool pass = lq == lq_sym && rq == rq_sym;
      all_pass = all_pass && pass;
      cells.push_back({format(p), format(lq), format(rq), format(lq_sym), format(rq_sym), pass ? "pass" : "FAIL"});
      j["rows"].push_back({{"level", p.to_double()},
                           {"level_exact", format(p)},
                           {"left", json_value(lq)},
                           {"right", json_value(rq)},
                           {"left_via_negation", json_value(lq_sym)},
                           {"right_via_negation", json_value(rq_sym)},
                           {"pass", pass}});
    }

    std::vector<PairedComparison> comparisons;
    std::string paired_name;
    std::string pairing_problem;
    if (paired_index) {
      paired_name = data.table.name_of(*paired_index);
      try {
        comparisons = paired_comparisons(data.values, numeric_column(data.table, *paired_index), *levels);
      } catch (const Error&) {
        pairing_problem = paired_name + " is not an order-reversing rescaling of " + name;
      }
    }

    if (opt.format == OutputFormat::kJson) {
      if (!comparisons.empty()) {
        j["paired_column"] = paired_name;
        j["paired"] = nlohmann::json::array();
        for (const auto& c : comparisons) {
          j["paired"].push_back({{"level", c.level.to_double()},
                                 {"paired_traditional", json_value(c.paired_traditional)},
                                 {"mapped_back", json_value(c.mapped_back)},
                                 {"traditional_at_complement", json_value(c.data_traditional)},
                                 {"position_offset", c.position_offset},
                                 {"paired_right_at_complement", json_value(c.paired_right)},
                                 {"dual_mapped_back", json_value(c.dual_mapped_back)},
                                 {"left", json_value(c.data_left)},
                                 {"dual_identity", c.dual_identity}});
          all_pass = all_pass && c.dual_identity;
        }
      } else if (!pairing_problem.empty()) {
        j["paired_problem"] = pairing_problem;
      }
      j["pass"] = all_pass;
      out << j.dump(2) << '\n';
      return all_pass ? kExitOk : kExitCheckFailed;
    }

    out << "column " << name << ", n = " << data.values.size() << '\n';
    detail::print_table(out, {"level", "lq(p)", "rq(p)", "-rq_neg(1-p)", "-lq_neg(1-p)", "symmetry"}, cells);
    if (!pairing_problem.empty()) out << '\n' << pairing_problem << "; paired comparison skipped\n";
    if (!comparisons.empty()) {
      out << '\n' << "Traditional quantile on the reversed scale " << paired_name << ", mapped back to " << name
          << ":\n";
      for (const auto& c : comparisons) {
        out << "  p=" << format(c.level) << ": lq_" << paired_name << "(" << format(c.level)
            << ") = " << format(c.paired_traditional) << " -> " << name << " " << format(c.mapped_back) << "; lq_"
            << name << "(" << format(c.level.complement()) << ") = " << format(c.data_traditional) << "; ";
        if (c.position_offset == 0) {
          out << "same position\n";
        } else {
          const long off = c.position_offset < 0 ? -c.position_offset : c.position_offset;
          out << "off by " << off << " position" << (off == 1 ? "" : "s") << '\n';
        }
      }
      out << "Dual identity lq_" << name << "(p) = rq_" << paired_name << "(1-p) mapped back:\n";
      for (const auto& c : comparisons) {
        out << "  p=" << format(c.level) << ": rq_" << paired_name << "(" << format(c.level.complement())
            << ") = " << format(c.paired_right) << " -> " << format(c.dual_mapped_back) << " vs lq_" << name << "("
            << format(c.level) << ") = " << format(c.data_left) << ": " << (c.dual_identity ? "pass" : "FAIL")
            << '\n';
        all_pass = all_pass && c.dual_identity;
      }
    }
    return all_pass ? kExitOk : kExitCheckFailed;
  });
}

struct TransformOptions {
  DataColumnSpec data;
  std::string map;  // inline JSON (starting with '{') or a path to a JSON file
  std::vector<std::string> levels;
  Side side = Side::kLeft;
  OutputFormat format = OutputFormat::kText;
};

inline MonotoneMap load_map_spec(const std::string& spec) {
  const auto first = spec.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && spec[first] == '{') return parse_map_spec(spec);
  std::ifstream in(spec);
  if (!in) throw Error(ErrorCode::kInvalidMap, "cannot open map spec '" + spec + "'");
  return parse_map_spec(std::string(std::istreambuf_iterator<char>(in), {}));
}

/// Quantile of the transformed data vs the transformed quantile.
inline int cmd_transform(const TransformOptions& opt, std::ostream& out, std::ostream& err) {
  auto levels = detail::parse_levels(opt.levels, err);
  if (!levels) return kExitLevel;
  return detail::guarded(err, [&] {
    const MonotoneMap map = load_map_spec(opt.map);
    const auto data = detail::load(opt.data);
    if (!equivariance_applies(map, opt.side)) {
      // Throws CONTINUITY_MISMATCH with the hypothesis in the message.
      (void)equivariant_quantile(data.dist, map, levels->front(), opt.side);
    }
    const auto image = pushforward(data.dist, map);
    bool all_equal = true;
    nlohmann::json j{{"column", data.table.name_of(data.column)},
                     {"side", std::string(to_string(opt.side))},
                     {"rows", nlohmann::json::array()}};
    std::vector<std::vector<std::string>> cells;
    for (const auto& p : *levels) {
      const auto direct = opt.side == Side::kLeft ? left_quantile(image, p) : right_quantile(image, p);
      const auto via = equivariant_quantile(data.dist, map, p, opt.side);
      const bool equal = direct == via;
      all_equal = all_equal && equal;
      cells.push_back({format(p), format_display(direct), format_display(via), equal ? "equal" : "DIFFERENT"});
      j["rows"].push_back({{"level", p.to_double()},
                           {"level_exact", format(p)},
                           {"quantile_of_image", json_value(direct)},
                           {"image_of_quantile", json_value(via)},
                           {"quantile_of_image_exact", format(direct)},
                           {"image_of_quantile_exact", format(via)},
                           {"equal", equal}});
    }
    if (opt.format == OutputFormat::kJson) {
      j["pass"] = all_equal;
      out << j.dump(2) << '\n';
    } else {
      const std::string q = opt.side == Side::kLeft ? "lq" : "rq";
      out << "column " << data.table.name_of(data.column) << ", side " << to_string(opt.side) << '\n';
      detail::print_table(out, {"level", q + "_phi(X)(p)", "phi(quantile)", "check"}, cells);
    }
    return all_equal ? kExitOk : kExitCheckFailed;
  });
}

struct VerifyOptions {
  std::uint64_t seed = 42;
  int n = 100;
  int random_levels = 50;
  unsigned threads = 0;
  std::optional<std::string> report_path;  // JSON report destination
  verify::QuantileEngine engine = verify::kReferenceEngine;
};

/// Levels used by the verification run: the 21-point grid plus random levels.
inline std::vector<Probability> verify_levels(std::uint64_t seed, int random_count) {
  auto levels = verify::level_grid(20);
  const auto extra = verify::random_levels(seed ^ 0x9e3779b97f4a7c15ULL, random_count);
  levels.insert(levels.end(), extra.begin(), extra.end());
  return levels;
}

/// Runs the verification suite; exit 0 iff every check passes.
inline int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.n < 1) {
    err << "error: --n must be at least 1\n";
    return kExitCheckFailed;
  }
  verify::GeneratorConfig cfg;
  cfg.seed = opt.seed;
  const auto levels = verify_levels(opt.seed, opt.random_levels);
  verify::SuiteOptions so;
  so.engine = opt.engine;
  so.threads = opt.threads;
  const auto result = verify::run_suite(cfg, opt.n, levels, so);

  out << "engine " << opt.engine.name << ", seed " << opt.seed << ": " << result.distributions << " distributions x "
      << levels.size() << " levels\n";
  out << "checks " << result.checks << ", failures " << result.failures << ", vacuous " << result.vacuous << '\n';
  for (const char* group : {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "S", "V-", "F-", "E:"}) {
    const auto t = result.tally(group);
    out << "  " << std::left << std::setw(4) << group << " checks " << t.checks << ", failures " << t.failures
        << '\n';
  }
  if (auto f = result.first_failure()) {
    const auto& [rep, r] = *f;
    out << "first failure: " << r->id << " on " << rep->distribution;
    if (rep->level) out << " at p=" << format(*rep->level);
    out << "\n  expected " << r->expected << "\n  actual   " << r->actual << '\n';
    if (!r->details.empty()) out << "  " << r->details << '\n';
  }
  if (opt.report_path) {
    std::ofstream file(*opt.report_path);
    if (!file) {
      err << "error: cannot write '" << *opt.report_path << "'\n";
      return kExitIo;
    }
    file << verify::to_json(result).dump(2) << '\n';
  }
  out << (result.passed() ? "PASS" : "FAIL") << '\n';
  return result.passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace qsym::cli
