#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include "sud/convex.hpp"
#include "sud/finite_ud.hpp"
#include "sud/interval_ud.hpp"
#include "sud/io.hpp"
#include "sud/verify.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_validation = 2;
constexpr int exit_io = 3;
constexpr int exit_numeric = 4;

using sud::io::format_double;

std::vector<double> parse_grid(const std::string& spec) {
  // comma list of lengths, scientific notation allowed: "1e3,1e4,1e5"
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw sud::validation_error("empty grid '" + spec + "'");
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1]) throw sud::validation_error("grid must be strictly increasing");
  return out;
}

std::vector<double> parse_probes(const std::string& spec) {
  // "start:end:step"
  double start, end, step;
  char c1, c2;
  std::istringstream ss(spec);
  if (!(ss >> start >> c1 >> end >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0.0)
    throw sud::validation_error("probe spec must be start:end:step");
  std::vector<double> out;
  for (double p = start; p <= end + 1e-12; p += step) out.push_back(std::min(p, end));
  return out;
}

sud::plj_function load_normalized_phi(const std::string& path, bool auto_normalize) {
  auto phi = sud::io::plj_from_json(sud::io::load_json_file(path));
  double v = sud::total_variation_value(phi);
  if (!(v > 0.0)) throw sud::degenerate_measure_error("input function has zero total variation");
  if (auto_normalize && std::abs(v - 1.0) > 1e-9) {
    std::cerr << "note: normalizing input (total variation " << format_double(v) << ")\n";
    return sud::normalize(phi);
  }
  return phi;
}

int cmd_gen_finite(const std::string& measure_path, std::uint64_t n, const std::string& out) {
  auto mu = sud::io::measure_from_json(sud::io::load_json_file(measure_path));
  auto seq = sud::generate_finite(mu, n);
  double c = static_cast<double>(sud::discrepancy_constant(mu.size()));
  std::vector<std::string> rows;
  rows.reserve(n);
  std::vector<std::uint64_t> counts(mu.size(), 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    ++counts[seq.indices[i]];
    double disc = sud::subset_discrepancy_from_counts(counts, mu, i + 1);
    std::ostringstream row;
    row << (i + 1) << ',' << mu.at(seq.indices[i]).label << ',' << format_double(disc) << ','
        << format_double(c / static_cast<double>(i + 1));
    rows.push_back(row.str());
  }
  sud::io::write_lines(sud::io::resolve_output_path(out),
                       "step,atom_label,running_subset_discrepancy,bound", rows);
  return exit_ok;
}

int cmd_merge(const std::string& plan_path, const std::string& sources_arg, std::uint64_t n,
              const std::string& out) {
  auto plan = sud::io::plan_from_json(sud::io::load_json_file(plan_path));
  std::vector<std::string> paths;
  std::stringstream ss(sources_arg);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) paths.push_back(item);
  if (paths.empty()) throw sud::validation_error("merge: no sources given");

  std::vector<sud::io::csv_table> tables;
  tables.reserve(paths.size());
  for (const auto& p : paths) tables.push_back(sud::io::read_csv(p));

  auto payload_of = [](const std::string& row) {
    auto pos = row.find(',');
    return pos == std::string::npos ? std::string() : row.substr(pos + 1);
  };

  if (n > plan.coverage())
    throw sud::validation_error("merge: N exceeds the plan coverage " +
                                std::to_string(plan.coverage()));
  std::vector<std::string> rows;
  rows.reserve(n);
  for (std::uint64_t i = 1; i <= n; ++i) {
    auto [block, pos] = plan.locate(i);
    if (block > tables.size())
      throw sud::validation_error("merge: plan block " + std::to_string(block) +
                                  " has no source file");
    const auto& table = tables[block - 1];
    if (pos > table.rows.size())
      throw sud::numeric_error("merge: source " + paths[block - 1] + " exhausted at position " +
                               std::to_string(pos) + " (sources must be unbounded)");
    std::ostringstream row;
    row << i << ',' << block << ',' << pos << ',' << payload_of(table.rows[pos - 1]);
    rows.push_back(row.str());
  }
  std::string header = "step,block,pos," + payload_of(tables.front().header);
  sud::io::write_lines(sud::io::resolve_output_path(out), header, rows);
  return exit_ok;
}

int cmd_convex(const std::string& points_path, const std::string& weights_path, std::uint64_t n,
               const std::string& out) {
  auto jp = sud::io::load_json_file(points_path);
  auto jw = sud::io::load_json_file(weights_path);
  if (!jp.is_object() || !jp.contains("points") || !jp.at("points").is_array())
    throw sud::validation_error("points file must be {\"points\": [[...], ...]}");
  if (!jw.is_object() || !jw.contains("weights") || !jw.at("weights").is_array())
    throw sud::validation_error("weights file must be {\"weights\": [...]}");
  std::vector<Eigen::VectorXd> points;
  for (const auto& row : jp.at("points")) {
    if (!row.is_array() || row.empty())
      throw sud::validation_error("each point must be a nonempty array of numbers");
    Eigen::VectorXd v(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) v[static_cast<Eigen::Index>(i)] = row[i];
    points.push_back(std::move(v));
  }
  auto wlist = jw.at("weights").get<std::vector<double>>();
  Eigen::VectorXd weights(static_cast<Eigen::Index>(wlist.size()));
  for (std::size_t i = 0; i < wlist.size(); ++i) weights[static_cast<Eigen::Index>(i)] = wlist[i];
  auto ct = sud::convex_target::from_weights(std::move(points), std::move(weights));

  // running mean over one generated schedule; one row per prefix length
  auto seq = sud::generate_finite(ct.weight_measure(), n);
  Eigen::VectorXd run = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ct.dimension()));
  double c = static_cast<double>(sud::discrepancy_constant(ct.points.size()));
  std::vector<std::string> rows;
  rows.reserve(n);
  for (std::uint64_t i = 1; i <= n; ++i) {
    run += ct.points[seq.indices[i - 1]];
    double err = (run / static_cast<double>(i) - ct.target).norm();
    double bound = 2.0 * ct.radius / static_cast<double>(i) * (1.0 + c);
    std::ostringstream row;
    row << i << ',' << format_double(err) << ',' << format_double(bound);
    rows.push_back(row.str());
  }
  sud::io::write_lines(sud::io::resolve_output_path(out), "N,error,bound", rows);
  return exit_ok;
}

int cmd_gen_bv(const std::string& phi_path, std::uint64_t n, const std::string& out, bool direct) {
  auto phi = load_normalized_phi(phi_path, true);
  std::vector<sud::signed_term> terms;
  if (direct) {
    terms = sud::signed_sequence_polygonal(phi, n);
  } else {
    auto stream = sud::diagonal_signed_sequence(sud::bv_oracle::from_plj(phi));
    auto prefix = stream.prefix(n);
    terms.assign(prefix.begin(), prefix.end());
  }
  sud::io::write_signed_csv(sud::io::resolve_output_path(out), terms);
  return exit_ok;
}

int cmd_discrepancy(const std::string& seq_path, const std::string& target_path, bool star,
                    bool interval) {
  auto terms = sud::io::read_signed_csv(seq_path);
  auto target = sud::io::plj_from_json(sud::io::load_json_file(target_path));
  if (star == interval)
    throw sud::validation_error("pick exactly one of --star / --interval");
  double v = star ? sud::star_discrepancy_signed(terms, target)
                  : sud::interval_discrepancy_signed(terms, target);
  std::cout << format_double(v) << "\n";
  return exit_ok;
}

int cmd_sample(const std::string& phi_path, std::uint64_t seed, std::uint64_t n,
               const std::string& out) {
  auto phi = load_normalized_phi(phi_path, true);
  auto stream = sud::iid_sampler(phi, seed);
  auto prefix = stream.prefix(n);
  sud::io::write_signed_csv(sud::io::resolve_output_path(out),
                            std::vector<sud::signed_term>(prefix.begin(), prefix.end()));
  return exit_ok;
}

int cmd_report(const std::string& phi_path, const std::string& grid_spec,
               const std::string& probe_spec, const std::string& out) {
  auto phi = load_normalized_phi(phi_path, true);
  auto ups = sud::total_variation(phi);
  auto grid = parse_grid(grid_spec);
  auto probes = parse_probes(probe_spec);
  auto stream = sud::diagonal_signed_sequence(sud::bv_oracle::from_plj(phi));

  std::vector<std::string> rows;
  for (double nd : grid) {
    auto n = static_cast<std::uint64_t>(nd);
    auto prefix = stream.prefix(n);
    std::vector<std::pair<double, int>> sorted;
    sorted.reserve(n);
    for (const auto& t : prefix) sorted.emplace_back(t.x, t.sign);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> xs(n);
    std::vector<double> cum(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = sorted[i].first;
      cum[i + 1] = cum[i] + sorted[i].second;
    }
    for (double p : probes) {
      auto it = std::lower_bound(xs.begin(), xs.end(), p);
      auto k = static_cast<std::size_t>(it - xs.begin());
      double emp_u = static_cast<double>(k) / nd;
      double emp_s = cum[k] / nd;
      double tu = ups.value(p), ts = phi.value(p);
      std::ostringstream r1, r2;
      r1 << n << ',' << format_double(p) << ",unsigned," << format_double(emp_u) << ','
         << format_double(tu) << ',' << format_double(std::abs(emp_u - tu)) << ",none";
      r2 << n << ',' << format_double(p) << ",signed," << format_double(emp_s) << ','
         << format_double(ts) << ',' << format_double(std::abs(emp_s - ts)) << ",none";
      rows.push_back(r1.str());
      rows.push_back(r2.str());
    }
  }
  sud::io::write_lines(sud::io::resolve_output_path(out),
                       "N,probe,kind,empirical,target,abs_error,bound", rows);
  return exit_ok;
}

int cmd_verify(const std::string& suite, std::uint64_t trials, std::uint64_t seed,
               const std::string& out) {
  auto result = sud::verify::run_suite(suite, trials, seed);
  auto j = result.to_json();
  if (!out.empty()) sud::io::save_json_file(sud::io::resolve_output_path(out), j);
  std::cout << j.dump(2) << "\n";
  return result.passed() ? exit_ok : exit_numeric;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"signed-measure realization toolkit: generates point/sign sequences whose "
               "averages converge to a target finite signed measure, with exact discrepancies "
               "and bound verification"};
  app.require_subcommand(1);

  std::string measure_path, out_path, plan_path, sources_arg, points_path, weights_path;
  std::string phi_path, seq_path, target_path, grid_spec = "1e3,1e4,1e5";
  std::string probe_spec = "0:1:0.05", suite_name;
  std::uint64_t n = 0, seed = 0, trials = 0;
  bool star = false, interval = false, direct = false;

  auto* gen_finite = app.add_subcommand("gen-finite", "schedule a finite probability measure");
  gen_finite->add_option("--measure", measure_path, "measure JSON")->required();
  gen_finite->add_option("--n", n, "sequence length")->required()->check(CLI::PositiveNumber);
  gen_finite->add_option("--out", out_path, "output CSV")->required();

  auto* merge = app.add_subcommand("merge", "concatenate source sequences along a block plan");
  merge->add_option("--plan", plan_path, "plan JSON")->required();
  merge->add_option("--sources", sources_arg, "comma-separated source CSVs")->required();
  merge->add_option("--n", n, "merged prefix length")->required()->check(CLI::PositiveNumber);
  merge->add_option("--out", out_path, "output CSV")->required();

  auto* convex = app.add_subcommand("convex", "approximate a convex combination by running means");
  convex->add_option("--points", points_path, "points JSON")->required();
  convex->add_option("--weights", weights_path, "weights JSON")->required();
  convex->add_option("--n", n, "sequence length")->required()->check(CLI::PositiveNumber);
  convex->add_option("--out", out_path, "output CSV")->required();

  auto* gen_bv = app.add_subcommand("gen-bv", "signed sequence for a BV distribution function");
  gen_bv->add_option("--phi", phi_path, "function JSON")->required();
  gen_bv->add_option("--n", n, "sequence length")->required()->check(CLI::PositiveNumber);
  gen_bv->add_option("--out", out_path, "output CSV")->required();
  gen_bv->add_flag("--direct", direct,
                   "place jump mass exactly at the jump locations instead of the "
                   "approximant pipeline");

  auto* disc = app.add_subcommand("discrepancy", "discrepancy of a signed sequence vs a target");
  disc->add_option("--seq", seq_path, "sequence CSV")->required();
  disc->add_option("--target", target_path, "target function JSON")->required();
  disc->add_flag("--star", star, "anchored-interval discrepancy");
  disc->add_flag("--interval", interval, "all-intervals discrepancy");

  auto* sample = app.add_subcommand("sample", "seeded i.i.d. sampling from |mu| with signs");
  sample->add_option("--phi", phi_path, "function JSON")->required();
  sample->add_option("--seed", seed, "64-bit seed")->required();
  sample->add_option("--n", n, "sample count")->required()->check(CLI::PositiveNumber);
  sample->add_option("--out", out_path, "output CSV")->required();

  auto* report = app.add_subcommand("report", "empirical vs target values on a probe grid");
  report->add_option("--phi", phi_path, "function JSON")->required();
  report->add_option("--n-grid", grid_spec, "comma list of prefix lengths");
  report->add_option("--probe-points", probe_spec, "start:end:step probe grid");
  report->add_option("--out", out_path, "output CSV")->required();

  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->add_option("--suite", suite_name, "suite name")
      ->required()
      ->check(CLI::IsMember(sud::verify::suite_names()));
  verify->add_option("--trials", trials, "sweep size (0 = default)");
  verify->add_option("--seed", seed, "sweep seed");
  verify->add_option("--out", out_path, "summary JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_validation;
  }

  try {
    if (gen_finite->parsed()) return cmd_gen_finite(measure_path, n, out_path);
    if (merge->parsed()) return cmd_merge(plan_path, sources_arg, n, out_path);
    if (convex->parsed()) return cmd_convex(points_path, weights_path, n, out_path);
    if (gen_bv->parsed()) return cmd_gen_bv(phi_path, n, out_path, direct);
    if (disc->parsed()) return cmd_discrepancy(seq_path, target_path, star, interval);
    if (sample->parsed()) return cmd_sample(phi_path, seed, n, out_path);
    if (report->parsed()) return cmd_report(phi_path, grid_spec, probe_spec, out_path);
    if (verify->parsed()) return cmd_verify(suite_name, trials, seed, out_path);
  } catch (const sud::io_error& e) {
    std::cerr << "io-error: " << e.what() << "\n";
    return exit_io;
  } catch (const sud::validation_error& e) {
    std::cerr << "validation-error: " << e.what() << "\n";
    return exit_validation;
  } catch (const sud::numeric_error& e) {
    std::cerr << "numeric-error: " << e.what() << "\n";
    return exit_numeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_numeric;
  }
  return exit_validation;
}
