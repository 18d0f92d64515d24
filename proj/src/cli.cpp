#include "oddkh/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <sstream>

#include "oddkh/homology.hpp"
#include "oddkh/moves.hpp"
#include "oddkh/pu.hpp"
#include "oddkh/validate.hpp"

namespace oddkh {

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(Errc::IoError, "cannot write " + path);
}

int exit_code_for(const Error& e) {
  if (e.is_internal()) return kExitInternal;
  switch (e.code()) {
    case Errc::SyntaxError:
    case Errc::DuplicateName:
    case Errc::SelfLoop:
    case Errc::SamePartEdge:
    case Errc::DuplicateEdge:
    case Errc::UnknownVertex:
    case Errc::IoError:
      return kExitUsage;
    case Errc::MoveFailed: {
      const auto& m = static_cast<const MoveError&>(e);
      return m.cause() == Errc::SyntaxError ? kExitUsage : kExitNegative;
    }
    default:
      return kExitNegative;
  }
}

LabeledGraph load_graph(const std::string& path) {
  try {
    return parse_graph(read_text(path));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

struct Flags {
  std::string file, script, output, method = "minors-b", kind = "X", convention, coeffs = "z";
  std::vector<std::string> files;
  std::vector<std::uint64_t> random;
  double density = 0.5;
  bool corrupt = false;
};

int cmd_check_pu(const Flags& f, std::ostream& out) {
  const LabeledGraph g = load_graph(f.file);
  if (auto cx = is_pu(g, parse_pu_method(f.method))) {
    out << "NOT PU: " << describe(g, *cx) << '\n';
    return kExitNegative;
  }
  out << "PU\n";
  return kExitOk;
}

int cmd_orient(const Flags& f, std::ostream& out) {
  GraphFile file;
  try {
    file = parse_graph_file(read_text(f.file));
  } catch (const Error& e) {
    throw Error(e.code(), f.file + ": " + e.what());
  }
  if (file.undirected.empty()) {
    const LabeledGraph g = LabeledGraph::from_edges(file.vertices, file.directed);
    if (!is_pu(g)) {
      out << "# input orientation is already PU\n" << serialize_graph(g);
      return kExitOk;
    }
  }
  UnorientedGraph u{file.vertices, file.directed};
  u.edges.insert(u.edges.end(), file.undirected.begin(), file.undirected.end());
  if (auto g = find_pu_orientation(u)) {
    out << serialize_graph(*g);
    return kExitOk;
  }
  out << "NONE\n";
  return kExitNegative;
}

KhovanovOptions khovanov_options(const Flags& f, std::ostream& err) {
  KhovanovOptions o;
  o.kind = parse_assignment_kind(f.kind);
  if (!f.convention.empty()) o.convention = parse_convention(f.convention);
  o.warnings = &err;
  return o;
}

int cmd_homology(const Flags& f, std::ostream& out, std::ostream& err) {
  const LabeledGraph g = load_graph(f.file);
  if (f.coeffs != "z" && f.coeffs != "f2") throw Error(Errc::SyntaxError, "--coeffs must be z or f2");
  const KhovanovResult r = khovanov_full(g, khovanov_options(f, err));
  out << (f.coeffs == "z" ? format_table(r.integral) : format_table(r.mod2));
  return kExitOk;
}

MoveScript load_script(const std::string& path) {
  try {
    return parse_script(read_text(path));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

int cmd_apply(const Flags& f, std::ostream& out) {
  const LabeledGraph g = load_graph(f.file);
  const LabeledGraph h = apply_script(g, load_script(f.script));
  if (f.output.empty()) out << serialize_graph(h);
  else write_text(f.output, serialize_graph(h));
  return kExitOk;
}

int cmd_invariance(const Flags& f, std::ostream& out, std::ostream& err) {
  const LabeledGraph g = load_graph(f.file);
  const LabeledGraph h = apply_script(g, load_script(f.script));
  const KhovanovOptions o = khovanov_options(f, err);
  const BigradedGroups before = khovanov(g, o), after = khovanov(h, o);
  const Alignment a = align_and_compare(before, after);
  out << "# before\n" << format_table(before) << "# after\n" << format_table(after);
  if (a.equal) {
    out << "Equal(" << a.di << "," << a.dq << ")\n";
    return kExitOk;
  }
  out << "Different\n" << a.report;
  return kExitNegative;
}

int cmd_faces(const Flags& f, std::ostream& out) {
  const LabeledGraph g = load_graph(f.file);
  const Convention conv = f.convention.empty() ? kDefaultConvention : parse_convention(f.convention);
  if (auto cx = is_pu(g)) throw Error(Errc::NotPU, describe(g, *cx));
  StateCube cube(g);
  FaceTable faces(cube, conv);
  const auto counts = faces.counts();
  const auto raw = faces.raw_counts();
  out << "convention " << convention_name(conv) << '\n';
  out << "faces A=" << counts[0] << " C=" << counts[1] << " X=" << counts[2] << " Y=" << counts[3] << '\n';
  out << "types";
  for (int t = 1; t <= 5; ++t) out << ' ' << t << '=' << raw[static_cast<std::size_t>(t)];
  out << '\n';
  const ParityReport report = validate_cube_parity(faces);
  out << "subcubes " << report.subcubes << " violations " << report.violations << '\n';
  for (const auto& v : report.examples)
    out << "violation at " << format_state(g, cube.state_at(v.position)) << " along " << g.vertex(v.i).name << ','
        << g.vertex(v.j).name << ',' << g.vertex(v.k).name << ": A=" << v.a << " C=" << v.c << " X=" << v.x
        << " Y=" << v.y << '\n';
  return report.clean() ? kExitOk : kExitNegative;
}

int cmd_validate(const Flags& f, std::ostream& out) {
  std::vector<std::pair<std::string, LabeledGraph>> graphs;
  for (const auto& path : f.files) graphs.emplace_back(path, load_graph(path));
  std::size_t skipped = 0;
  if (!f.random.empty()) {
    if (f.random.size() != 3) throw Error(Errc::SyntaxError, "--random takes n k seed");
    const std::size_t n = f.random[0], k = f.random[1];
    const std::uint64_t seed = f.random[2];
    for (std::size_t s = 0; s < k; ++s) {
      const std::size_t size = n < 2 ? n : 2 + s % (n - 1);
      const std::uint64_t sample_seed = seed * 1000003u + s;
      try {
        graphs.emplace_back("random n=" + std::to_string(size) + " seed=" + std::to_string(sample_seed),
                            random_pu_graph(size, f.density, sample_seed));
      } catch (const Error& e) {
        if (e.code() != Errc::GiveUp) throw;
        ++skipped;
      }
    }
  }
  if (graphs.empty()) throw Error(Errc::SyntaxError, "validate needs graph files or --random n k seed");

  ValidateOptions options;
  options.corrupt_assignment = f.corrupt;
  if (!f.convention.empty()) options.convention = parse_convention(f.convention);

  // Aggregated per property, in first-seen order.
  std::vector<std::string> order;
  std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // passed, total
  std::vector<std::string> failures;
  for (const auto& [label, g] : graphs) {
    for (const auto& r : validate_graph(g, options)) {
      if (!tally.count(r.name)) order.push_back(r.name);
      auto& [passed, total] = tally[r.name];
      ++total;
      if (r.passed) ++passed;
      else failures.push_back(label + ": " + r.name + (r.detail.empty() ? "" : ": " + r.detail));
    }
  }
  bool ok = true;
  for (const auto& name : order) {
    const auto [passed, total] = tally[name];
    ok = ok && passed == total;
    out << (passed == total ? "PASS " : "FAIL ") << name << " (" << passed << "/" << total << " graphs)\n";
  }
  for (const auto& line : failures) out << "  " << line << '\n';
  out << "graphs " << graphs.size() << " skipped " << skipped << '\n';
  return ok ? kExitOk : kExitNegative;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Principal unimodularity, graph-link moves and odd Khovanov homology", "oddkh"};
  app.require_subcommand(1);
  Flags f;

  auto* check_pu = app.add_subcommand("check-pu", "Decide principal unimodularity");
  check_pu->add_option("file", f.file, "Graph file")->required();
  check_pu->add_option("--method", f.method, "minors-b | minors-a | state-dets");

  auto* orient = app.add_subcommand("orient", "Find a PU orientation (accepts `uedge a b` lines)");
  orient->add_option("file", f.file, "Graph file")->required();

  auto* homology = app.add_subcommand("homology", "Reduced odd Khovanov homology table");
  homology->add_option("file", f.file, "Graph file")->required();

  auto* apply = app.add_subcommand("apply", "Apply a move script");
  apply->add_option("file", f.file, "Graph file")->required();
  apply->add_option("script", f.script, "Move script")->required();
  apply->add_option("-o,--output", f.output, "Write the result here instead of stdout");

  auto* invariance = app.add_subcommand("invariance", "Compare homology before and after a move script");
  invariance->add_option("file", f.file, "Graph file")->required();
  invariance->add_option("script", f.script, "Move script")->required();

  for (auto* cmd : {homology, invariance}) {
    cmd->add_option("--assignment-type", f.kind, "X | Y");
    cmd->add_option("--convention", f.convention, "inner | signed | inner-signed");
  }
  homology->add_option("--coeffs", f.coeffs, "z | f2");

  auto* faces = app.add_subcommand("faces", "Face class statistics and cube parity report");
  faces->add_option("file", f.file, "Graph file")->required();
  faces->add_option("--convention", f.convention, "inner | signed | inner-signed");

  auto* validate = app.add_subcommand("validate", "Run the invariant battery");
  validate->add_option("files", f.files, "Graph files");
  validate->add_option("--random", f.random, "n k seed: k random PU graphs with up to n vertices")->expected(3);
  validate->add_option("--density", f.density, "Edge density of random graphs");
  validate->add_option("--convention", f.convention, "inner | signed | inner-signed");
  validate->add_flag("--corrupt-assignment", f.corrupt, "Negative control: flip one edge sign; d^2 = 0 must fail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*check_pu) return cmd_check_pu(f, out);
    if (*orient) return cmd_orient(f, out);
    if (*homology) return cmd_homology(f, out, err);
    if (*apply) return cmd_apply(f, out);
    if (*invariance) return cmd_invariance(f, out, err);
    if (*faces) return cmd_faces(f, out);
    if (*validate) return cmd_validate(f, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace oddkh
