// kmroots command-line front end: enumerate | closure | decompose | verify.
#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "kmroots/campaign.hpp"
#include "kmroots/io.hpp"

using namespace kmroots;

namespace {

constexpr int kExitInvalid = 2;

Coeff default_cap(const std::vector<RootVec>& roots) {
  Coeff h = 0;
  for (const auto& v : roots) h = std::max(h, std::abs(height(v)));
  return 4 * (h + 1);
}

int cmd_enumerate(const std::string& gcm_path, Coeff max_height, bool real_only) {
  const GCM gcm = io::load_gcm(gcm_path);
  const RootSlice slice(gcm, max_height);
  if (real_only) {
    std::vector<RootVec> real;
    for (const auto& r : slice.real_roots()) real.push_back(r.root);
    std::cout << io::dump(io::to_json(real));
  } else {
    std::cout << io::dump(io::slice_to_json(slice));
  }
  return 0;
}

int cmd_closure(const std::string& gcm_path, const std::string& roots_path,
                std::optional<Coeff> cap) {
  const GCM gcm = io::load_gcm(gcm_path);
  const auto vecs = io::load_roots(roots_path, gcm.rank());
  const Coeff c = cap.value_or(default_cap(vecs));
  const RootSlice slice(gcm, c, SliceMode::Lazy);
  const RootSet psi = RootSet::from_vectors(slice, vecs);
  const ClosureResult r = closure(psi, slice, c);
  std::cout << io::dump(io::to_json(r));
  return 0;
}

int cmd_decompose(const std::string& gcm_path, const std::string& roots_path,
                  std::optional<Coeff> cap) {
  const GCM gcm = io::load_gcm(gcm_path);
  const auto vecs = io::load_roots(roots_path, gcm.rank());
  Coeff h = 1;
  for (const auto& v : vecs) h = std::max(h, std::abs(height(v)));
  const Coeff depth = std::max(cap.value_or(default_cap(vecs)), 2 * h);
  const RootSlice slice(gcm, depth, SliceMode::Lazy);
  const RootSet psi = RootSet::from_vectors(slice, vecs);
  const LeviReport r = verify_levi(psi, slice);
  std::cout << io::dump(io::to_json(r));
  return r.all_passed() ? 0 : 1;
}

int cmd_verify(campaign::CampaignConfig cfg, const std::vector<std::string>& gcm_paths,
               const std::string& report_path) {
  for (const auto& p : gcm_paths) {
    cfg.gcms.push_back(io::load_gcm(p));
    cfg.gcm_sources.push_back(p);
  }
  const auto t0 = std::chrono::steady_clock::now();
  const campaign::Report rep = campaign::run(cfg);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string text = io::dump(campaign::to_json(rep));
  if (report_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + report_path);
    out << text;
  }
  for (const auto& rec : rep.records)
    if (rec.outcome == campaign::Outcome::Fail) std::cerr << "FAIL " << rec.data.dump() << "\n";
  std::cerr << campaign::to_string(cfg.suite) << ": " << rep.records.size() << " cases, "
            << rep.counts.pass << " pass, " << rep.counts.fail << " fail, "
            << rep.counts.inconclusive << " inconclusive (" << secs << " s)\n";
  return campaign::exit_code(rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real and imaginary roots, closed sets and Levi decompositions of Kac-Moody root systems"};
  app.require_subcommand(1);

  std::string gcm_path, roots_path, report_path, suite_name = "dictionary", cases_text = "100";
  std::vector<std::string> gcm_paths;
  Coeff max_height = 5;
  std::optional<Coeff> cap, verify_height;
  std::optional<std::size_t> radius, min_rank, max_rank;
  std::uint64_t seed = 0;
  std::size_t threads = 1, pool_size = 24;
  bool real_only = false;

  auto* en = app.add_subcommand("enumerate", "List the roots of height at most N");
  en->add_option("--gcm", gcm_path, "GCM file")->required();
  en->add_option("--max-height", max_height, "Height bound")->check(CLI::PositiveNumber);
  en->add_flag("--real-only", real_only, "Print only the real roots, as a root list");

  auto* cl = app.add_subcommand("closure", "Close a set of real roots under root sums");
  cl->add_option("--gcm", gcm_path, "GCM file")->required();
  cl->add_option("--roots", roots_path, "Root list file")->required();
  cl->add_option("--cap", cap, "Height cap (default 4 * (max height + 1))")->check(CLI::PositiveNumber);

  auto* de = app.add_subcommand("decompose", "Levi decomposition of a closed set of real roots");
  de->add_option("--gcm", gcm_path, "GCM file")->required();
  de->add_option("--roots", roots_path, "Root list file")->required();
  de->add_option("--cap", cap, "Height cap for the checks")->check(CLI::PositiveNumber);

  auto* ve = app.add_subcommand("verify", "Run a seeded verification campaign");
  std::string suites;
  for (auto s : campaign::all_suites()) suites += (suites.empty() ? "" : ", ") + campaign::to_string(s);
  ve->add_option("--suite", suite_name, "One of: " + suites)->required();
  ve->add_option("--gcm", gcm_paths, "GCM file(s); random GCMs when omitted");
  ve->add_option("--seed", seed, "64-bit seed");
  ve->add_option("--cases", cases_text, "Number of cases, or 'all' (lemma12, finite types)");
  ve->add_option("--radius", radius, "Ball radius")->check(CLI::PositiveNumber);
  ve->add_option("--cap", cap, "Height cap")->check(CLI::PositiveNumber);
  ve->add_option("--max-height", verify_height, "Height bound for sampled roots")->check(CLI::PositiveNumber);
  ve->add_option("--min-rank", min_rank, "Smallest rank of random GCMs")->check(CLI::PositiveNumber);
  ve->add_option("--max-rank", max_rank, "Largest rank of random GCMs")->check(CLI::PositiveNumber);
  ve->add_option("--pool-size", pool_size, "Number of random GCMs")->check(CLI::PositiveNumber);
  ve->add_option("--threads", threads, "Worker threads (the report does not depend on it)")
      ->check(CLI::PositiveNumber);
  ve->add_option("--report", report_path, "Write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*en) return cmd_enumerate(gcm_path, max_height, real_only);
    if (*cl) return cmd_closure(gcm_path, roots_path, cap);
    if (*de) return cmd_decompose(gcm_path, roots_path, cap);

    campaign::CampaignConfig cfg;
    auto suite = campaign::parse_suite(suite_name);
    if (!suite) throw Error(ErrorKind::InvalidInput, "unknown suite " + suite_name);
    cfg.suite = *suite;
    cfg.seed = seed;
    if (cases_text == "all") {
      cfg.cases = std::nullopt;
    } else {
      std::size_t used = 0;
      long long n = -1;
      try {
        n = std::stoll(cases_text, &used);
      } catch (const std::exception&) {
      }
      if (n < 1 || used != cases_text.size())
        throw Error(ErrorKind::InvalidInput, "--cases must be a positive integer or 'all'");
      cfg.cases = static_cast<std::size_t>(n);
    }
    cfg.radius = radius;
    cfg.cap = cap;
    cfg.max_height = verify_height;
    cfg.min_rank = min_rank;
    cfg.max_rank = max_rank;
    cfg.pool_size = pool_size;
    cfg.threads = threads;
    return cmd_verify(std::move(cfg), gcm_paths, report_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const auto k = e.kind();
    const bool invalid = k == ErrorKind::ParseError || k == ErrorKind::InvalidInput ||
                         k == ErrorKind::DiagonalNotTwo || k == ErrorKind::PositiveOffDiagonal ||
                         k == ErrorKind::AsymmetricZero || k == ErrorKind::DimensionMismatch ||
                         k == ErrorKind::NotARealRoot || k == ErrorKind::NotClosedInput ||
                         k == ErrorKind::PreconditionViolated;
    return invalid ? kExitInvalid : 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
