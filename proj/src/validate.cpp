#include "oddkh/validate.hpp"

#include <functional>
#include <sstream>

#include "oddkh/moves.hpp"
#include "oddkh/pu.hpp"

namespace oddkh {

namespace {

std::string fresh(const LabeledGraph& g, const std::string& base) {
  std::string name = base;
  for (int k = 1; g.find(name); ++k) name = base + std::to_string(k);
  return name;
}

// Every move applicable to g that the battery exercises, by name.
std::vector<std::pair<std::string, std::function<LabeledGraph()>>> candidate_moves(const LabeledGraph& g,
                                                                                   std::size_t max_edges) {
  std::vector<std::pair<std::string, std::function<LabeledGraph()>>> out;
  const std::size_t n = g.size();
  for (std::size_t v = 0; v < n; ++v) {
    const std::string name = g.vertex(v).name;
    out.emplace_back("R " + name, [&g, name] { return apply_R(g, name); });
    if (neighborhood(g, v).empty()) out.emplace_back("O1- " + name, [&g, name] { return omega1_remove(g, name); });
  }
  const std::string z = fresh(g, "z");
  out.emplace_back("O1+ " + z + " 0 -", [&g, z] { return omega1_add(g, z, -1, 0); });
  out.emplace_back("O1+ " + z + " 1 +", [&g, z] { return omega1_add(g, z, 1, 1); });
  if (n > 0) {
    const std::string w = g.vertex(0).name, t1 = fresh(g, "t"), t2 = fresh(g, "t'");
    out.emplace_back("O2+ " + t1 + " " + t2 + " + N=" + w, [&g, w, t1, t2] {
      return omega2_add(g, {t1, t2}, {1, -1}, {w}, {EdgeDir::Out});
    });
  }
  auto edges = g.edges();
  for (std::size_t k = 0; k < edges.size() && k < max_edges; ++k) {
    const std::string a = g.vertex(edges[k].first).name, b = g.vertex(edges[k].second).name;
    out.emplace_back("O4 " + a + " " + b, [&g, a, b] { return omega4(g, a, b); });
    out.emplace_back("flip " + a + " " + b, [&g, a, b] { return flip_edge_macro(g, a, b).graph; });
  }
  for (std::size_t u = 0; u < n; ++u) {
    const auto nb = neighborhood(g, u).indices();
    if (nb.size() == 2) {
      const std::string a = g.vertex(u).name, b = g.vertex(nb[0]).name, c = g.vertex(nb[1]).name;
      out.emplace_back("O3 " + a + " " + b + " " + c, [&g, a, b, c] { return omega3_forward(g, a, b, c); });
    }
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w) {
        if (u == v || u == w || v == w || g.vertex(u).sign != -1 || g.vertex(v).sign != 1 || g.vertex(w).sign != 1)
          continue;
        const std::string a = g.vertex(u).name, b = g.vertex(v).name, c = g.vertex(w).name;
        out.emplace_back("O3inv " + a + " " + b + " " + c, [&g, a, b, c] { return omega3_backward(g, a, b, c); });
      }
  }
  // Remove twin pairs present in g.
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      const std::string a = g.vertex(u).name, b = g.vertex(v).name;
      out.emplace_back("O2- " + a + " " + b, [&g, a, b] { return omega2_remove(g, a, b); });
    }
  return out;
}

CheckResult check(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok, std::move(detail)};
}

}  // namespace

std::vector<CheckResult> validate_graph(const LabeledGraph& g, const ValidateOptions& options) {
  std::vector<CheckResult> out;

  // PU criteria.
  const auto b = is_pu(g, PuMethod::MinorsB), a = is_pu(g, PuMethod::MinorsA), s = is_pu(g, PuMethod::StateDets);
  const bool agree = b.has_value() == a.has_value() && a.has_value() == s.has_value();
  out.push_back(check("pu-criteria-agree", agree));
  out.push_back(check("principally-unimodular", !b, b ? describe(g, *b) : ""));
  if (b) return out;

  const auto odd = all_chordless_even(g);
  out.push_back(check("chordless-cycles-even", !odd));

  {
    std::size_t bad = 0;
    if (g.size() <= 8) {
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << g.size()); ++bits)
        if (is_pu(induced_subgraph(g, State(bits)))) ++bad;
    } else {
      for (std::size_t v = 0; v < g.size(); ++v)
        if (is_pu(induced_subgraph(g, g.all().without(v)))) ++bad;
    }
    out.push_back(check("subgraph-closure", bad == 0, std::to_string(bad) + " non-PU subgraphs"));
  }

  StateCube cube(g);
  {
    std::size_t checks = 0;
    std::string failure;
    bool torsion = false;
    try {
      for (std::uint64_t bits = 0; bits < cube.state_count(); ++bits)
        for (std::size_t i = 0; i < g.size(); ++i) {
          cube.xi_zero(State(bits), i);
          ++checks;
        }
    } catch (const Error& e) {
      failure = e.what();
      torsion = e.code() == Errc::TorsionDetected;
    }
    out.push_back(check("free-modules", !torsion, torsion ? failure : ""));
    out.push_back(check("corank-lemma", failure.empty(),
                        failure.empty() ? std::to_string(checks) + " edges agree" : failure));
    if (!failure.empty()) return out;
  }

  FaceTable faces(cube, options.convention);
  const ParityReport parity = validate_cube_parity(faces);
  out.push_back(check("cube-parity", parity.clean(),
                      std::to_string(parity.violations) + " of " + std::to_string(parity.subcubes) + " subcubes"));

  std::vector<EdgeAssignment> assignments;
  try {
    const EdgeAssignment x = solve_edge_assignment(cube, faces, AssignmentKind::X, options.convention);
    assignments = {x, flip_initial_corner(x), solve_edge_assignment(cube, faces, AssignmentKind::Y, options.convention)};
    out.push_back(check("edge-assignments", true));
  } catch (const Error& e) {
    out.push_back(check("edge-assignments", false, e.what()));
    return out;
  }

  if (options.corrupt_assignment) {
    if (auto broken = corrupt_assignment(faces, assignments[0])) {
      try {
        build_complex(cube, *broken);
        out.push_back(check("d-squared-zero", true, "corrupted assignment went undetected"));
      } catch (const Error& e) {
        out.push_back(check("d-squared-zero", false, e.what()));
      }
    } else {
      out.push_back(check("d-squared-zero", true, "no A or C face to corrupt"));
    }
    return out;
  }

  std::vector<BigradedGroups> groups;
  std::string failure;
  try {
    for (const auto& eps : assignments) groups.push_back(khovanov_with(cube, eps).integral);
  } catch (const Error& e) {
    failure = e.what();
  }
  out.push_back(check("d-squared-zero", failure.find("d^2") == std::string::npos, failure));
  out.push_back(check("euler-and-uct", failure.empty(), failure));
  if (!failure.empty()) return out;
  out.push_back(check("assignment-independence", groups[0] == groups[1] && groups[0] == groups[2]));

  std::size_t tried = 0, equal = 0;
  std::string diff, escaped;
  for (const auto& [name, move] : candidate_moves(g, options.max_edge_moves)) {
    LabeledGraph h;
    try {
      h = move();
    } catch (const Error& e) {
      if (e.is_internal()) throw;
      continue;  // not applicable here
    }
    if (is_pu(h)) {
      if (name.rfind("flip", 0) == 0) continue;  // reversing an edge of an even cycle
      escaped += name + "\n";
      continue;
    }
    ++tried;
    const Alignment al = align_and_compare(groups[0], khovanov(h));
    if (al.equal) ++equal;
    else diff += name + ":\n" + al.report;
  }
  out.push_back(check("move-closure", escaped.empty(), escaped.empty() ? "" : "non-PU results:\n" + escaped));
  out.push_back(check("move-invariance", equal == tried,
                      std::to_string(equal) + "/" + std::to_string(tried) + " moves" + (diff.empty() ? "" : "\n" + diff)));
  return out;
}

}  // namespace oddkh
