// psts: command-line front end over the library.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "psts/generators.hpp"
#include "psts/io.hpp"
#include "psts/packing.hpp"
#include "psts/sequencer.hpp"
#include "report.hpp"

using namespace psts;
using nlohmann::ordered_json;

namespace {

struct Globals {
  bool json = false;
  std::uint64_t seed = 0;
  std::uint64_t budget = seq::kDefaultBudget;
  unsigned parallel = 1;
  bool deterministic = false;
};

/// What a subcommand hands back: an exit code and lines for text mode.
struct Outcome {
  int code = cli::kOk;
  std::string text;
};

struct Loaded {
  TripleSystem system;
  std::string bytes;
};

Loaded load_system(const std::string& path, cli::RunReport& report) {
  Loaded l;
  l.bytes = io::read_file(path);
  report.set_input(l.bytes);
  l.system = io::parse_system(l.bytes);
  return l;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::size_t parse_count(const std::string& token, const char* what) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(token, &used);
    if (used == token.size() && token[0] != '-') return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::ParseError, std::string("bad ") + what + " '" + token + "'");
}

PointSet parse_points(const std::string& text, const TripleSystem& t) {
  PointSet s;
  for (const auto& tok : split_list(text)) {
    auto p = t.find_label(tok);
    if (!p) throw Error(ErrorKind::PointOutOfRange, "unknown point '" + tok + "'");
    s.insert(*p);
  }
  return s;
}

ordered_json set_json(const PointSet& s, const TripleSystem& t) {
  ordered_json a = ordered_json::array();
  for (Point p : s.to_vector()) a.push_back(t.label(p));
  return a;
}

std::string set_text(const PointSet& s, const TripleSystem& t) {
  std::string out = "{";
  bool first = true;
  for (Point p : s.to_vector()) {
    if (!first) out += ",";
    out += t.label(p);
    first = false;
  }
  return out + "}";
}

std::string blocks_text(std::span<const Block> blocks, const TripleSystem& t) {
  std::string out;
  for (const auto& b : blocks) {
    if (!out.empty()) out += " ";
    out += block_to_string(b, t);
  }
  return out;
}

const char* outcome_word(seq::Outcome o) {
  switch (o) {
    case seq::Outcome::Sequenceable:
      return "sequenceable";
    case seq::Outcome::NotSequenceable:
      return "not-sequenceable";
    default:
      return "unknown";
  }
}

int outcome_code(seq::Outcome o) {
  switch (o) {
    case seq::Outcome::Sequenceable:
      return cli::kOk;
    case seq::Outcome::NotSequenceable:
      return cli::kNo;
    default:
      return cli::kUnknown;
  }
}

seq::DecideOptions decide_options(const Globals& g) {
  seq::DecideOptions o;
  o.budget = g.budget;
  o.parallel = g.deterministic ? 1 : std::max(1U, g.parallel);
  o.deterministic = g.deterministic;
  return o;
}

// ---- subcommands ---------------------------------------------------------

Outcome cmd_validate(const std::string& path, cli::RunReport& r) {
  auto [t, bytes] = load_system(path, r);
  PointSet covered;
  for (std::size_t i = 0; i < t.block_count(); ++i) covered |= t.block_set(i);
  const PointSet isolated = t.points() - covered;
  r.result()["order"] = t.order();
  r.result()["blocks"] = t.block_count();
  r.result()["bound"] = gen::johnson_schonheim(t.order());
  r.result()["isolated"] = set_json(isolated, t);
  r.set_outcome("valid");
  std::ostringstream os;
  os << "valid: order " << t.order() << ", " << t.block_count() << " blocks, "
     << isolated.size() << " isolated points\n";
  return {cli::kOk, os.str()};
}

Outcome cmd_check_seq(const std::string& path, const std::string& seq_path,
                      const std::string& inline_seq, cli::RunReport& r) {
  auto [t, bytes] = load_system(path, r);
  std::string seq_bytes = inline_seq.empty() ? io::read_file(seq_path) : inline_seq;
  r.set_input(bytes + "\n" + seq_bytes);
  const Sequence s = io::parse_sequence(seq_bytes, t);
  const auto bad = inadmissible_segments(s, t);
  r.result()["sequence"] = io::sequence_to_json(s, t);
  ordered_json segs = ordered_json::array();
  std::ostringstream os;
  for (const auto& b : bad) {
    ordered_json j;
    j["start"] = b.segment.start;
    j["length"] = b.segment.length;
    j["partition"] = io::blocks_to_json(b.witness.parts, t);
    segs.push_back(std::move(j));
    os << "segment at " << b.segment.start << " of length " << b.segment.length << ": "
       << blocks_text(b.witness.parts, t) << "\n";
  }
  r.result()["inadmissible_segments"] = std::move(segs);
  const bool ok = bad.empty();
  r.set_outcome(ok ? "admissible" : "inadmissible");
  return {ok ? cli::kOk : cli::kNo, (ok ? "admissible\n" : "inadmissible\n") + os.str()};
}

Outcome cmd_decide(const std::string& path, const Globals& g, cli::RunReport& r) {
  auto [t, bytes] = load_system(path, r);
  const auto d = seq::decide(t, decide_options(g));
  r.set_outcome(outcome_word(d.outcome));
  r.set_nodes(d.budget_spent);
  std::string text = std::string(outcome_word(d.outcome)) + "\n";
  if (d.witness) {
    r.result()["witness"] = io::sequence_to_json(*d.witness, t);
    text += io::sequence_to_string(*d.witness, t) + "\n";
  }
  if (d.certificate) {
    r.result()["certificate"] = {{"nodes_explored", d.certificate->nodes_explored},
                                 {"exhausted", d.certificate->exhausted}};
    text += "search exhausted after " + std::to_string(d.certificate->nodes_explored) + " nodes\n";
  }
  r.result()["budget"] = g.budget;
  return {outcome_code(d.outcome), text};
}

Outcome cmd_construct(const std::string& path, const Globals& g, cli::RunReport& r) {
  auto [t, bytes] = load_system(path, r);
  const auto c = seq::construct_with_trace(t, g.budget);
  r.set_outcome("sequenceable");
  r.result()["sequence"] = io::sequence_to_json(c.sequence, t);
  r.result()["method"] = c.method;
  r.result()["nu"] = c.nu;
  r.result()["repairs"] = c.repairs;
  return {cli::kOk, io::sequence_to_string(c.sequence, t) + "\n"};
}

Outcome emit_system(const TripleSystem& t, cli::RunReport& r, const std::string& note = {}) {
  const std::string text = io::write_psts(t);
  r.set_input(text);
  r.result()["system"] = io::system_to_json(t);
  return {cli::kOk, note + text};
}

Outcome cmd_pack(const std::string& path, const Globals& g, bool budget_given, cli::RunReport& r) {
  auto [t, bytes] = load_system(path, r);
  const auto p = pack::max_disjoint_blocks(t, budget_given ? std::optional(g.budget) : std::nullopt);
  r.set_nodes(p.nodes_explored);
  r.set_outcome(p.exact ? "exact" : "unknown");
  r.result()["nu"] = p.nu;
  r.result()["exact"] = p.exact;
  r.result()["witness"] = io::blocks_to_json(p.witness, t);
  std::string text = "nu " + std::to_string(p.nu) + (p.exact ? "" : " (lower bound)") + "\n" +
                     blocks_text(p.witness, t) + "\n";
  return {p.exact ? cli::kOk : cli::kUnknown, text};
}

Outcome cmd_bad_sets(const std::string& path, cli::RunReport& r) {
  auto [t, bytes] = load_system(path, r);
  const auto rep = pack::bad_sets(t);
  ordered_json list = ordered_json::array();
  std::ostringstream os;
  os << rep.bad_sets.size() << " bad sets of size " << rep.m_size << "\n";
  for (std::size_t i = 0; i < rep.bad_sets.size(); ++i) {
    ordered_json j;
    j["set"] = set_json(rep.bad_sets[i], t);
    j["realization"] = io::blocks_to_json(rep.realizations[i], t);
    list.push_back(std::move(j));
    os << set_text(rep.bad_sets[i], t) << ": " << blocks_text(rep.realizations[i], t) << "\n";
  }
  r.result()["m_size"] = rep.m_size;
  r.result()["bad_sets"] = std::move(list);
  return {cli::kOk, os.str()};
}

Outcome cmd_good_set(const std::string& path, const std::string& points, cli::RunReport& r) {
  auto [t, bytes] = load_system(path, r);
  const PointSet m = parse_points(points, t);
  const auto g = pack::is_good_set(t, m);
  r.set_outcome(g.good ? "good" : "bad");
  r.result()["set"] = set_json(m, t);
  r.result()["good"] = g.good;
  std::string text = g.good ? "good\n" : "bad\n";
  if (g.realization) {
    r.result()["realization"] = io::blocks_to_json(*g.realization, t);
    text += blocks_text(*g.realization, t) + "\n";
  }
  return {g.good ? cli::kOk : cli::kNo, text};
}

Outcome cmd_bound(std::size_t n, cli::RunReport& r) {
  const auto b = gen::johnson_schonheim(n);
  r.set_input(std::to_string(n));
  r.result()["order"] = n;
  r.result()["bound"] = b;
  return {cli::kOk, std::to_string(b) + "\n"};
}

Outcome cmd_verify_sts13(cli::RunReport& r) {
  const auto t = gen::sts13();
  r.set_input(io::write_psts(t));
  const auto cert = seq::verify_sts13_certificate();
  ordered_json entries = ordered_json::array();
  std::ostringstream os;
  for (const auto& e : cert.entries) {
    ordered_json j;
    j["vertex"] = e.vertex;
    j["exponent"] = e.exponent;
    j["blocks"] = io::blocks_to_json(e.blocks, t);
    entries.push_back(std::move(j));
    os << "vertex " << e.vertex << " (shift " << e.exponent << "): " << blocks_text(e.blocks, t)
       << "\n";
  }
  r.result()["entries"] = std::move(entries);
  r.result()["verified"] = cert.every_sequence_inadmissible;
  const bool ok = cert.every_sequence_inadmissible && cert.entries.size() == 13;
  r.set_outcome(ok ? "verified" : "failed");
  os << (ok ? "verified: no admissible sequence\n" : "certificate failed\n");
  return {ok ? cli::kOk : cli::kNo, os.str()};
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = parse_count(text, "seed range");
    return {v, v};
  }
  const auto a = parse_count(text.substr(0, dots), "seed range");
  const auto b = parse_count(text.substr(dots + 2), "seed range");
  if (b < a) throw Error(ErrorKind::ParseError, "empty seed range '" + text + "'");
  return {a, b};
}

/// One NDJSON line per seed; a summary line closes the stream.
int cmd_hunt(std::size_t order, const std::string& seeds, std::optional<std::size_t> blocks,
             const Globals& g) {
  const auto [lo, hi] = parse_seed_range(seeds);
  const std::size_t target = blocks.value_or(gen::johnson_schonheim(order));
  std::size_t found = 0, unknown = 0, scanned = 0;
  for (std::uint64_t seed = lo;; ++seed) {
    const auto r = gen::random_system(order, target, seed);
    const auto d = seq::decide(r.system, decide_options(g));
    ordered_json j;
    j["seed"] = seed;
    j["order"] = order;
    j["blocks"] = r.achieved;
    j["digest"] = cli::fnv1a_hex(io::write_psts(r.system));
    j["outcome"] = outcome_word(d.outcome);
    j["nodes"] = d.budget_spent;
    if (d.outcome != seq::Outcome::Sequenceable) j["system"] = io::system_to_json(r.system);
    std::cout << j.dump() << "\n" << std::flush;
    ++scanned;
    if (d.outcome == seq::Outcome::NotSequenceable) ++found;
    if (d.outcome == seq::Outcome::Unknown) ++unknown;
    if (seed == hi) break;
  }
  ordered_json summary;
  summary["summary"] = {{"scanned", scanned}, {"not_sequenceable", found}, {"unknown", unknown}};
  std::cout << summary.dump() << "\n";
  if (found) return cli::kNo;
  return unknown ? cli::kUnknown : cli::kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequenceability of partial Steiner triple systems", "psts"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Print a JSON report instead of text")->group("Global");
  app.add_option("--seed", g.seed, "Seed for generators")->group("Global");
  app.add_option("--budget", g.budget, "Search node budget")->group("Global");
  app.add_option("--parallel", g.parallel, "Worker threads for decide")->group("Global");
  app.add_flag("--deterministic", g.deterministic, "Force a single sequential search")->group("Global");
  for (auto* opt : app.get_options()) opt->configurable(false);
  app.fallthrough();

  std::string file, seq_file, inline_seq, points, seeds, sizes;
  std::vector<std::string> bases;
  std::size_t n = 0, m = 0, gen_blocks = 0;
  std::optional<std::size_t> hunt_blocks;

  auto* validate = app.add_subcommand("validate", "Check a system file");
  validate->add_option("file", file, "System (.psts or JSON)")->required();

  auto* check = app.add_subcommand("check-seq", "Check a sequence against a system");
  check->add_option("file", file, "System file")->required();
  check->add_option("seqfile", seq_file, "Sequence file");
  check->add_option("--sequence", inline_seq, "Sequence given inline");

  auto* decide = app.add_subcommand("decide", "Exhaustive search for an admissible sequence");
  decide->add_option("file", file)->required();

  auto* construct = app.add_subcommand("construct", "Build an admissible sequence directly");
  construct->add_option("file", file)->required();

  auto* gen_cmd = app.add_subcommand("gen", "Generate a system");
  gen_cmd->require_subcommand(1);
  auto* cyclic = gen_cmd->add_subcommand("cyclic", "Develop base blocks over Z_n");
  cyclic->add_option("--n", n, "Modulus")->required();
  cyclic->add_option("--base", bases, "Base block a,b,c (repeatable)")->required();
  auto* friendship = gen_cmd->add_subcommand("friendship", "Triangles sharing one hub");
  friendship->add_option("--m", m, "Number of triangles")->required();
  auto* chain = gen_cmd->add_subcommand("chain", "Chain of friendship graphs");
  chain->add_option("--sizes", sizes, "Triangle counts, e.g. 2,2,2")->required();
  auto* random = gen_cmd->add_subcommand("random", "Greedy random system");
  random->add_option("--n", n, "Order")->required();
  random->add_option("--blocks", gen_blocks, "Target number of blocks")->required();

  auto* pack_cmd = app.add_subcommand("pack", "Maximum set of disjoint blocks");
  pack_cmd->add_option("file", file)->required();

  auto* bad = app.add_subcommand("bad-sets", "Sets whose complement splits into three blocks");
  bad->add_option("file", file)->required();

  auto* good = app.add_subcommand("good-set", "Classify one (n-9)-set");
  good->add_option("file", file)->required();
  good->add_option("--points", points, "Comma separated labels")->required();

  auto* bound = app.add_subcommand("bound", "Johnson-Schonheim bound for order N");
  bound->add_option("n", n)->required();

  auto* verify = app.add_subcommand("verify-sts13", "Check the STS(13) certificate");

  auto* hunt = app.add_subcommand("hunt", "Run decide over seeded random systems (NDJSON)");
  hunt->add_option("--order", n)->required();
  hunt->add_option("--seeds", seeds, "Inclusive range A..B")->required();
  hunt->add_option("--blocks", hunt_blocks, "Blocks per system (default: the bound)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInputError;
  }

  auto* chosen = app.get_subcommands().front();
  std::string name = chosen->get_name();
  if (chosen == gen_cmd) name += " " + gen_cmd->get_subcommands().front()->get_name();
  cli::RunReport report(name);

  Outcome out;
  try {
    if (chosen == hunt) return cmd_hunt(n, seeds, hunt_blocks, g);
    if (chosen == validate) {
      out = cmd_validate(file, report);
    } else if (chosen == check) {
      if (seq_file.empty() && inline_seq.empty())
        throw Error(ErrorKind::ParseError, "check-seq needs a sequence file or --sequence");
      out = cmd_check_seq(file, seq_file, inline_seq, report);
    } else if (chosen == decide) {
      out = cmd_decide(file, g, report);
    } else if (chosen == construct) {
      out = cmd_construct(file, g, report);
    } else if (chosen == gen_cmd) {
      if (cyclic->parsed()) {
        gen::CyclicBase base{n, {}};
        for (const auto& b : bases) {
          const auto toks = split_list(b);
          if (toks.size() != 3) throw Error(ErrorKind::ParseError, "base block needs three points: " + b);
          base.base_blocks.push_back({parse_count(toks[0], "point"), parse_count(toks[1], "point"),
                                      parse_count(toks[2], "point")});
        }
        out = emit_system(gen::cyclic_system(base), report);
      } else if (friendship->parsed()) {
        out = emit_system(gen::friendship(m), report);
      } else if (chain->parsed()) {
        std::vector<std::size_t> s;
        for (const auto& tok : split_list(sizes)) s.push_back(parse_count(tok, "size"));
        out = emit_system(gen::friendship_chain(s), report);
      } else {
        const auto r = gen::random_system(n, gen_blocks, g.seed);
        report.result()["seed"] = g.seed;
        report.result()["saturated"] = r.saturated;
        const std::string note =
            r.saturated ? "# saturated at " + std::to_string(r.achieved) + " of " +
                              std::to_string(r.requested) + " blocks\n"
                        : "";
        out = emit_system(r.system, report, note);
      }
    } else if (chosen == pack_cmd) {
      out = cmd_pack(file, g, app.count("--budget") > 0, report);
    } else if (chosen == bad) {
      out = cmd_bad_sets(file, report);
    } else if (chosen == good) {
      out = cmd_good_set(file, points, report);
    } else if (chosen == bound) {
      out = cmd_bound(n, report);
    } else if (chosen == verify) {
      out = cmd_verify_sts13(report);
    }
  } catch (const Error& e) {
    out.code = cli::exit_code_for(e.kind());
    report.set_outcome(out.code == cli::kInputError ? "input-error"
                       : out.code == cli::kNo       ? "not-sequenceable"
                                                    : "unknown");
    report.result()["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    if (!g.json) {
      std::cerr << "psts: " << e.what() << "\n";
      return out.code;
    }
  }

  if (g.json)
    std::cout << report.to_json().dump(2) << "\n";
  else
    std::cout << out.text;
  return out.code;
}
