#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "kcoex/automaton.hpp"
#include "kcoex/bench.hpp"
#include "kcoex/engine.hpp"
#include "kcoex/ingest.hpp"
#include "kcoex/oracle.hpp"
#include "kcoex/pattern_set.hpp"
#include "kcoex/report.hpp"

namespace kcoex::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string format = "auto";
  std::string patterns;
  bool builtin = false;
  std::size_t workers = 1;
  std::vector<std::size_t> worker_list{1};
  std::vector<std::size_t> pattern_workers;
  std::size_t window = kDefaultWindow;
  std::string output = "tsv";
  std::string synthetic_size;
  std::uint64_t seed = 1;
  double other_rate = 0.0;
  std::size_t repetitions = kDefaultRepetitions;
  bool dump_minimized = false;
};

void add_pattern_options(CLI::App& cmd, Options& o) {
  auto* file = cmd.add_option("--patterns", o.patterns, "Pattern file, one expression per line");
  auto* builtin = cmd.add_flag("--builtin-patterns", o.builtin, "Use the built-in regex-dna motif set");
  file->excludes(builtin);
}

void add_input_options(CLI::App& cmd, Options& o) {
  cmd.add_option("--input", o.input, "Input sequence file");
  cmd.add_option("--format", o.format, "Input format")
      ->check(CLI::IsMember({"auto", "fasta", "raw"}))
      ->capture_default_str();
}

void add_output_option(CLI::App& cmd, Options& o) {
  cmd.add_option("--output", o.output, "Report format")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
}

ExpressionSet load_patterns(const Options& o) {
  if (o.builtin) return builtin_expression_set();
  if (o.patterns.empty()) throw UsageError("one of --patterns or --builtin-patterns is required");
  std::ifstream in(o.patterns, std::ios::binary);
  if (!in) throw InputError("cannot open pattern file '" + o.patterns + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  ExpressionSet set = parse_expressions(text);
  if (set.empty()) throw InputError("pattern file '" + o.patterns + "' holds no expressions");
  return set;
}

Sequence load_input(const Options& o) {
  if (o.input.empty()) throw UsageError("--input is required");
  InputFormat fmt = format_from_extension(o.input);
  if (o.format == "fasta") fmt = InputFormat::Fasta;
  if (o.format == "raw") fmt = InputFormat::Raw;
  return load_sequence(o.input, fmt);
}

int do_scan(const Options& o, ScanMode mode, std::ostream& out) {
  if (o.workers == 0) throw UsageError("--workers must be at least 1");
  const ExpressionSet set = load_patterns(o);
  const Sequence seq = load_input(o);
  const Dfa dfa = build_dfa(expand_to_literals(set));
  const MatchReport report = run(dfa, seq, EngineConfig{o.workers, o.window, mode});
  if (o.output == "json") {
    out << report_json(set, report).dump(2) << '\n';
    return 0;
  }
  write_counts_tsv(out, set, report);
  if (mode == ScanMode::Locate) {
    out << '\n';
    write_locations_tsv(out, report);
  }
  return 0;
}

int do_bench(const Options& o, std::ostream& out) {
  const ExpressionSet set = load_patterns(o);
  Sequence seq;
  if (!o.synthetic_size.empty()) {
    if (!o.input.empty()) throw UsageError("--input and --synthetic-size are mutually exclusive");
    const auto size = parse_size(o.synthetic_size);
    if (!size) throw UsageError("invalid --synthetic-size '" + o.synthetic_size + "'");
    seq = synthetic_sequence(*size, o.seed, o.other_rate);
  } else {
    seq = load_input(o);
  }
  if (o.repetitions == 0) throw UsageError("--repeat must be at least 1");

  std::vector<BenchScenario> scenarios;
  for (std::size_t w : o.worker_list) {
    if (w == 0) throw UsageError("worker counts must be at least 1");
    scenarios.push_back({"input-w" + std::to_string(w), Strategy::InputBased, w, o.window});
  }
  for (std::size_t w : o.pattern_workers) {
    if (w == 0) throw UsageError("worker counts must be at least 1");
    scenarios.push_back({"pattern-w" + std::to_string(w), Strategy::PatternBased, w, o.window});
  }
  const Dfa dfa = build_dfa(expand_to_literals(set));
  const auto results = bench(set, dfa, seq, scenarios, o.repetitions);
  if (o.output == "json") {
    out << bench_json(results, seq).dump(2) << '\n';
  } else {
    write_bench_tsv(out, results);
  }
  return 0;
}

int do_dump(const Options& o, std::ostream& out) {
  const ExpressionSet set = load_patterns(o);
  const Dfa raw = build_dfa(expand_to_literals(set));
  write_dfa_summary(out, raw, minimize(raw), o.dump_minimized);
  return 0;
}

}  // namespace

std::optional<std::uint64_t> parse_size(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::uint64_t mult = 1;
  switch (text.back()) {
    case 'k': case 'K': mult = 1ull << 10; break;
    case 'm': case 'M': mult = 1ull << 20; break;
    case 'g': case 'G': mult = 1ull << 30; break;
    default: break;
  }
  if (mult != 1) text.remove_suffix(1);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  if (value > UINT64_MAX / mult) return std::nullopt;
  return value * mult;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parallel k-mer motif counting with speculative DFA chunk scanning", "kcoex"};
  app.require_subcommand(1);
  Options o;

  auto* count = app.add_subcommand("count", "Count motif occurrences per expression");
  auto* locate = app.add_subcommand("locate", "Count and list (end offset, expression) pairs");
  for (auto* cmd : {count, locate}) {
    add_input_options(*cmd, o);
    add_pattern_options(*cmd, o);
    add_output_option(*cmd, o);
    cmd->add_option("--workers", o.workers, "Worker threads")->capture_default_str();
    cmd->add_option("--window", o.window, "Convergence window")->capture_default_str();
  }

  auto* bench_cmd = app.add_subcommand("bench", "Time scenarios over one input");
  add_input_options(*bench_cmd, o);
  add_pattern_options(*bench_cmd, o);
  add_output_option(*bench_cmd, o);
  bench_cmd->add_option("--workers", o.worker_list, "Comma-separated worker counts (input-based)")
      ->delimiter(',');
  bench_cmd->add_option("--pattern-workers", o.pattern_workers,
                        "Comma-separated worker counts (pattern-based)")
      ->delimiter(',');
  bench_cmd->add_option("--window", o.window, "Convergence window")->capture_default_str();
  bench_cmd->add_option("--synthetic-size", o.synthetic_size, "Synthetic input size, e.g. 64M");
  bench_cmd->add_option("--seed", o.seed, "Synthetic input seed")->capture_default_str();
  bench_cmd->add_option("--other-rate", o.other_rate, "Fraction of non-acgt synthetic symbols")
      ->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--repeat", o.repetitions, "Repetitions per scenario")->capture_default_str();

  auto* dump = app.add_subcommand("dump-dfa", "Print the automaton table and state counts");
  add_pattern_options(*dump, o);
  dump->add_flag("--minimized", o.dump_minimized, "Dump the minimized table instead of the raw one");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (count->parsed()) return do_scan(o, ScanMode::Count, out);
    if (locate->parsed()) return do_scan(o, ScanMode::Locate, out);
    if (bench_cmd->parsed()) return do_bench(o, out);
    return do_dump(o, out);
  } catch (const UsageError& e) {
    err << "kcoex: " << e.what() << '\n';
    return 2;
  } catch (const PatternError& e) {
    err << "kcoex: pattern error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "kcoex: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace kcoex::cli
