// Copyright 2026 The renyi-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// renyi-lab: command line front end.
//
// Exit codes: 0 success / pass, 1 violation found by a verification
// campaign, 2 usage or input error. `divergence` also exits with 2 when the
// value is +inf by the support (kernel) convention.

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "renyi/channels.hpp"
#include "renyi/divergence.hpp"
#include "renyi/harness.hpp"
#include "renyi/io.hpp"
#include "renyi/rng.hpp"
#include "renyi/sampling.hpp"

namespace {

using renyi::io::json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

long parse_long(const std::string& s) {
  long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw UsageError("not an integer: '" + s + "'");
  return v;
}

double parse_double(const std::string& s) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw UsageError("not a number: '" + s + "'");
  return v;
}

/// "2..5" or "2,3,4".
std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> dims;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const long lo = parse_long(text.substr(0, dots));
    const long hi = parse_long(text.substr(dots + 2));
    if (lo > hi) throw UsageError("empty dimension range '" + text + "'");
    for (long d = lo; d <= hi; ++d) dims.push_back(static_cast<std::size_t>(d));
  } else {
    for (const std::string& item : split(text, ',')) {
      const long d = parse_long(item);
      if (d < 0) throw UsageError("negative dimension");
      dims.push_back(static_cast<std::size_t>(d));
    }
  }
  return dims;
}

std::vector<renyi::RenyiOrder> parse_orders(const std::string& text) {
  std::vector<renyi::RenyiOrder> out;
  for (const std::string& item : split(text, ',')) out.push_back(renyi::RenyiOrder::parse(item));
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split(text, ',')) out.push_back(parse_double(item));
  return out;
}

renyi::PsdOperator read_operator(const std::string& path) {
  return renyi::PsdOperator(renyi::io::hermitian_from_json(renyi::io::read_json(path)));
}

void emit_json(const json& j, const std::string& path) {
  if (path.empty() || path == "-")
    std::cout << j.dump(2) << '\n';
  else
    renyi::io::write_json(path, j);
}

// ---------------------------------------------------------------------------

struct DivergenceArgs {
  std::string rho, sigma, alpha, base = "e";
  bool traditional = false;
};

int cmd_divergence(const DivergenceArgs& a) {
  const renyi::RenyiOrder order = renyi::RenyiOrder::parse(a.alpha);
  const renyi::DivergencePair pair(read_operator(a.rho), read_operator(a.sigma));
  renyi::ExtendedReal value = renyi::ExtendedReal::plus_infinity();
  if (a.traditional) {
    if (order.kind() == renyi::RenyiOrder::Kind::Infinity)
      throw UsageError("--traditional is defined for finite orders and 1 only");
    value = order.kind() == renyi::RenyiOrder::Kind::One
                ? renyi::d_alpha(pair, order)
                : renyi::d_prime_alpha(pair, order.alpha());
  } else {
    value = renyi::d_alpha(pair, order);
  }
  if (a.base == "2") value = renyi::to_base2(value);
  if (value.is_infinite()) {
    std::cout << "+inf\n";
    // Orders >= 1 reach +inf only through the support convention; below 1
    // it is the ordinary log 0 case and not an error.
    return order.alpha() >= 1.0 && !pair.support_contained() ? kExitUsage : kExitOk;
  }
  std::cout << renyi::io::format_double(value.value()) << '\n';
  return kExitOk;
}

struct ChannelArgs {
  std::size_t din = 2, dout = 2, kraus = 1;
  std::uint64_t seed = 0;
  std::string channel, state, out;
};

int cmd_channel_random(const ChannelArgs& a) {
  emit_json(renyi::io::to_json(renyi::random_channel(a.din, a.dout, a.kraus, a.seed)), a.out);
  return kExitOk;
}

int cmd_channel_apply(const ChannelArgs& a) {
  const renyi::QuantumChannel ch = renyi::io::channel_from_json(renyi::io::read_json(a.channel));
  if (!renyi::validate_cptp(ch)) throw UsageError("channel is not trace preserving");
  const renyi::PsdOperator gamma = read_operator(a.state);
  emit_json(renyi::io::to_json(renyi::apply(ch, gamma).hermitian()), a.out);
  return kExitOk;
}

int cmd_channel_dilate(const ChannelArgs& a) {
  const renyi::QuantumChannel ch = renyi::io::channel_from_json(renyi::io::read_json(a.channel));
  emit_json(renyi::io::to_json(renyi::stinespring(ch)), a.out);
  return kExitOk;
}

struct CampaignArgs {
  std::string claim, dims, alphas, params, q_values, report;
  long trials = 0;
  long inner_trials = 0;
  std::uint64_t seed = 20130621;
  double tol = 1e-9;
  int threads = 0;
  bool normalize_sigma = false;
  bool commuting = false;
};

renyi::harness::CampaignConfig make_config(const CampaignArgs& a) {
  renyi::harness::CampaignConfig cfg;
  if (!a.dims.empty()) cfg.dims = parse_dims(a.dims);
  if (!a.alphas.empty()) cfg.alphas = parse_orders(a.alphas);
  if (!a.params.empty()) cfg.params = parse_doubles(a.params);
  if (!a.q_values.empty()) cfg.q_values = parse_doubles(a.q_values);
  if (a.trials != 0) cfg.trials = static_cast<int>(a.trials);
  if (a.inner_trials != 0) cfg.inner_trials = static_cast<int>(a.inner_trials);
  cfg.seed = a.seed;
  cfg.tolerance = a.tol;
  cfg.output_path = a.report;
  cfg.normalize_sigma = a.normalize_sigma;
  cfg.commuting = a.commuting;
  cfg.threads = a.threads;
  return cfg;
}

int cmd_verify(const CampaignArgs& a) {
  const renyi::harness::CampaignReport report = renyi::harness::run_claim(a.claim, make_config(a));
  const json j = report.to_json();
  if (!a.report.empty()) renyi::io::write_json(a.report, j);
  std::cout << report.claim << ": instances=" << report.instances
            << " max_violation=" << renyi::io::format_double(report.max_violation())
            << (report.pass() ? " PASS" : " FAIL") << '\n';
  for (const auto& p : report.parameters)
    std::cout << "  " << p.label << ": min_margin=" << renyi::io::format_double(p.min_margin)
              << " count=" << p.finite_count << " inf_satisfied=" << p.satisfied_infinite
              << " inf_skipped=" << p.skipped << (p.pass() ? "" : " FAIL") << '\n';
  return report.pass() ? kExitOk : kExitViolation;
}

struct ScanArgs {
  std::string rho, sigma, csv;
  std::size_t dim = 3;
  std::uint64_t seed = 20130621;
  int points = 25;
  double lo = 0.05, hi = 100.0;
};

int cmd_scan(const ScanArgs& a) {
  if (a.rho.empty() != a.sigma.empty())
    throw UsageError("--rho and --sigma must be given together");
  std::optional<renyi::DivergencePair> pair;
  if (!a.rho.empty()) {
    pair.emplace(read_operator(a.rho), read_operator(a.sigma));
  } else {
    if (a.dim < 1) throw UsageError("--dim must be positive");
    renyi::CounterRng rng(a.seed, 0x7363616e);
    pair.emplace(renyi::random_density(a.dim, rng), renyi::random_density(a.dim, rng));
  }
  if (!(a.lo > 0.0 && a.hi > a.lo)) throw UsageError("need 0 < --lo < --hi");
  const auto scan = renyi::harness::run_alpha_scan(*pair, renyi::harness::default_scan_grid(a.lo, a.hi, a.points));
  const std::string csv = renyi::harness::to_csv(scan);
  if (a.csv.empty() || a.csv == "-") {
    std::cout << csv;
  } else {
    std::ofstream out(a.csv);
    if (!out) throw UsageError("cannot write " + a.csv);
    out << csv;
  }
  if (!scan.continuity) return kExitOk;
  const auto& c = *scan.continuity;
  std::cerr << "continuity: decreasing=" << c.decreasing
            << " gap(1e-4)=" << renyi::io::format_double(std::max(c.below_one.back(), c.above_one.back()))
            << " gap(1e4,inf)=" << renyi::io::format_double(c.large_alpha_gap)
            << (c.pass() ? " PASS" : " FAIL") << '\n';
  return c.pass() ? kExitOk : kExitViolation;
}

int cmd_search(const CampaignArgs& a, double alpha, int climb) {
  CampaignArgs args = a;
  if (args.dims.empty()) args.dims = "2,3";
  if (args.trials == 0) args.trials = 500;
  const auto report = renyi::harness::search_violation(make_config(args), alpha, climb);
  const json j = report.to_json();
  if (!a.report.empty()) renyi::io::write_json(a.report, j);
  std::cout << "search alpha=" << renyi::io::format_double(alpha) << ": trials=" << report.trials
            << " climb_steps=" << report.climb_steps
            << " min_margin=" << renyi::io::format_double(report.min_margin)
            << " violation_found=" << (report.violation_found ? "yes" : "no") << '\n';
  return kExitOk;
}

void add_campaign_flags(CLI::App* cmd, CampaignArgs& a) {
  cmd->add_option("--dims", a.dims, "Dimensions, e.g. 2..5 or 2,3,4");
  cmd->add_option("--trials", a.trials, "Trials per dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", a.seed, "Master seed");
  cmd->add_option("--tol", a.tol, "Violation tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--report", a.report, "Write the JSON report to this file");
  cmd->add_option("--threads", a.threads, "Worker threads (default: RENYI_LAB_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sandwiched Renyi divergence toolkit and claim verifier", "renyi-lab"};
  app.require_subcommand(1);

  DivergenceArgs div;
  auto* divergence = app.add_subcommand("divergence", "Evaluate D_alpha(rho||sigma)");
  divergence->add_option("--rho", div.rho, "Hermitian JSON file")->required();
  divergence->add_option("--sigma", div.sigma, "Hermitian JSON file")->required();
  divergence->add_option("--alpha", div.alpha, "Order: number, 1 or inf")->required();
  divergence->add_option("--base", div.base, "Logarithm base")->check(CLI::IsMember({"e", "2"}));
  divergence->add_flag("--traditional", div.traditional, "Traditional (non-sandwiched) divergence");

  ChannelArgs chan;
  auto* channel = app.add_subcommand("channel", "Random channels, application and dilation");
  channel->require_subcommand(1);
  auto* ch_random = channel->add_subcommand("random", "Sample a random CPTP map");
  ch_random->add_option("--din", chan.din)->required()->check(CLI::PositiveNumber);
  ch_random->add_option("--dout", chan.dout)->required()->check(CLI::PositiveNumber);
  ch_random->add_option("--kraus", chan.kraus)->required()->check(CLI::PositiveNumber);
  ch_random->add_option("--seed", chan.seed)->required();
  ch_random->add_option("--out", chan.out, "Output file (default stdout)");
  auto* ch_apply = channel->add_subcommand("apply", "Apply a channel to a state");
  ch_apply->add_option("--channel", chan.channel)->required();
  ch_apply->add_option("--state", chan.state)->required();
  ch_apply->add_option("--out", chan.out, "Output file (default stdout)");
  auto* ch_dilate = channel->add_subcommand("dilate", "Stinespring dilation of a square channel");
  ch_dilate->add_option("--channel", chan.channel)->required();
  ch_dilate->add_option("--out", chan.out, "Output file (default stdout)");

  CampaignArgs camp;
  auto* verify = app.add_subcommand("verify", "Run a randomized verification campaign");
  std::string claims_help = "One of:";
  for (const auto& n : renyi::harness::claim_names()) claims_help += " " + n;
  verify->add_option("claim", camp.claim, claims_help)->required();
  add_campaign_flags(verify, camp);
  verify->add_option("--alphas", camp.alphas, "Orders, e.g. 0.5,2,inf");
  verify->add_option("--params", camp.params, "Exponents p (lemma2, eq3, young)");
  verify->add_option("--q", camp.q_values, "Exponents q paired with --params (lemma2)");
  verify->add_option("--inner-trials", camp.inner_trials, "Inner samples per instance")
      ->check(CLI::PositiveNumber);
  verify->add_flag("--normalize-sigma", camp.normalize_sigma, "Unit-trace sigma (thm1)");

  ScanArgs sc;
  auto* scan = app.add_subcommand("scan", "Tabulate D_alpha and D'_alpha over alpha");
  scan->add_option("--rho", sc.rho, "Hermitian JSON file");
  scan->add_option("--sigma", sc.sigma, "Hermitian JSON file");
  scan->add_option("--dim", sc.dim, "Dimension of the random pair when no files are given");
  scan->add_option("--seed", sc.seed, "Seed of the random pair");
  scan->add_option("--points", sc.points, "Log-spaced grid points")->check(CLI::NonNegativeNumber);
  scan->add_option("--lo", sc.lo, "Smallest alpha of the grid");
  scan->add_option("--hi", sc.hi, "Largest finite alpha of the grid");
  scan->add_option("--csv", sc.csv, "Output CSV (default stdout)");

  CampaignArgs srch;
  double search_alpha = 0.0;
  int climb = 200;
  auto* search = app.add_subcommand("search", "Look for monotonicity violations below alpha = 1/2");
  search->add_option("--alpha", search_alpha, "Order in (0, 1/2)")->required();
  add_campaign_flags(search, srch);
  search->add_option("--climb-steps", climb, "Hill-climbing steps")->check(CLI::NonNegativeNumber);
  search->add_flag("--commuting", srch.commuting, "Diagonal states and classical channels only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*divergence) return cmd_divergence(div);
    if (*ch_random) return cmd_channel_random(chan);
    if (*ch_apply) return cmd_channel_apply(chan);
    if (*ch_dilate) return cmd_channel_dilate(chan);
    if (*verify) return cmd_verify(camp);
    if (*scan) return cmd_scan(sc);
    if (*search) return cmd_search(srch, search_alpha, climb);
  } catch (const std::exception& e) {
    std::cerr << "renyi-lab: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
