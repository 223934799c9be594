#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cactus/cactus_group.hpp"
#include "cactus/closure.hpp"
#include "cactus/equivalence.hpp"
#include "cactus/export.hpp"
#include "cactus/gauss_diagram.hpp"
#include "cactus/json_io.hpp"
#include "cactus/realize.hpp"

namespace {

using namespace cactus;

constexpr int exit_ok = 0;
constexpr int exit_differs = 1;
constexpr int exit_error = 2;

std::string slurp(std::string const& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// A word argument is either a file holding the word or the word itself.
CactusWord read_word(std::string const& arg) {
  std::error_code ec;
  auto const text = std::filesystem::is_regular_file(arg, ec) ? slurp(arg) : arg;
  return parse_word(text);
}

GaussDiagram read_diagram(std::string const& path) {
  auto d = parse_diagram(slurp(path));
  if (auto problem = validate(d)) throw ParseError(path + ": " + *problem);
  return d;
}

struct Options {
  std::size_t max_nodes = 1'000'000;
  unsigned threads = 1;
  bool labeled_components = false;

  SearchOptions search() const {
    return {max_nodes, threads, CanonicalOptions{labeled_components}};
  }
};

void add_search_flags(CLI::App* cmd, Options& opts) {
  cmd->add_option("--max-nodes", opts.max_nodes, "Node budget for each orbit search");
  cmd->add_option("--threads", opts.threads, "Worker threads for orbit search")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--labeled-components", opts.labeled_components,
                "Do not identify diagrams that differ by permuting circles");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cactus groups and cactus doodles"};
  app.require_subcommand(1);
  Options opts;
  std::string word;
  std::string first;
  std::string second;
  std::string format = "svg";
  bool with_faces = false;
  bool with_path = false;

  auto* perm = app.add_subcommand("perm", "Print the permutation of a word");
  perm->add_option("word", word, "Word text such as \"n=3 s(1,3)\", or a file")->required();

  auto* close_cmd = app.add_subcommand("close", "Close a word into a diagram (JSON)");
  close_cmd->add_option("word", word, "Word text or file")->required();

  auto* validate_cmd = app.add_subcommand("validate", "Check a diagram file");
  validate_cmd->add_option("diagram", first, "Diagram JSON file, - for stdin")->required();

  auto* minimize_cmd = app.add_subcommand("minimize", "Print a minimal equivalent diagram");
  minimize_cmd->add_option("diagram", first)->required();
  minimize_cmd->add_flag("--path", with_path, "Print the move sequence instead");
  add_search_flags(minimize_cmd, opts);

  auto* equiv = app.add_subcommand("equiv", "Decide equivalence (exit 0 yes, 1 no)");
  equiv->add_option("first", first)->required();
  equiv->add_option("second", second)->required();
  add_search_flags(equiv, opts);

  auto* orbit = app.add_subcommand("orbit", "Print the Psi-orbit of a diagram");
  orbit->add_option("diagram", first)->required();
  add_search_flags(orbit, opts);

  auto* realize = app.add_subcommand("realize", "Report realizability and face counts");
  realize->add_option("diagram", first)->required();
  realize->add_flag("--faces", with_faces, "Dump face boundary walks as JSON");

  auto* export_cmd = app.add_subcommand("export", "Draw a diagram schematically");
  export_cmd->add_option("diagram", first)->required();
  export_cmd->add_option("--format", format)->check(CLI::IsMember({"dot", "svg", "json"}));

  auto* replay = app.add_subcommand("replay", "Check a move sequence file and print its end");
  replay->add_option("sequence", first)->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e) == 0 ? exit_ok : exit_error;
  }

  try {
    if (perm->parsed()) {
      auto const images = perm_image(read_word(word)).images();
      for (std::size_t i = 0; i < images.size(); ++i) {
        std::cout << (i ? " " : "") << images[i];
      }
      std::cout << '\n';
    } else if (close_cmd->parsed()) {
      std::cout << to_json(close(read_word(word))).dump() << '\n';
    } else if (validate_cmd->parsed()) {
      auto d = parse_diagram(slurp(first));
      if (auto problem = validate(d)) {
        std::cerr << "invalid: " << *problem << '\n';
        return exit_error;
      }
      std::cout << "ok: " << d.circles.size() << " circles, " << crossing_count(d)
                << " singular sets\n";
    } else if (minimize_cmd->parsed()) {
      auto const seq = minimize_path(read_diagram(first), opts.search());
      if (with_path) {
        std::cout << to_json(seq).dump(2) << '\n';
      } else {
        auto const& m = seq.finish();
        Json out{{"crossings", crossing_count(m)},
                 {"diagram", to_json(canonical_diagram(m, opts.search().canonical))}};
        std::cout << out.dump() << '\n';
      }
    } else if (equiv->parsed()) {
      auto const s = opts.search();
      auto const k1 = equivalence_key(read_diagram(first), s);
      auto const k2 = equivalence_key(read_diagram(second), s);
      std::cout << (k1 == k2 ? "equivalent" : "not equivalent") << '\n';
      return k1 == k2 ? exit_ok : exit_differs;
    } else if (orbit->parsed()) {
      auto const summary = psi_orbit(read_diagram(first), opts.search());
      std::cout << "size " << summary.size() << '\n';
      for (auto const& key : summary.representatives) std::cout << key << '\n';
    } else if (realize->parsed()) {
      auto const d = read_diagram(first);
      auto const g = ribbon_graph(d);
      auto const fs = faces(g);
      bool ok = true;
      for (auto const& c : fs.components) ok = ok && c.euler() == 2;
      std::cout << (ok ? "realizable" : "not realizable");
      if (fs.components.size() > 1) std::cout << " (checked per component)";
      std::cout << '\n';
      for (std::size_t i = 0; i < fs.components.size(); ++i) {
        auto const& c = fs.components[i];
        std::cout << "component " << i << ": V=" << c.vertices << " E=" << c.edges
                  << " F=" << c.faces << " euler=" << c.euler() << " genus=" << c.genus()
                  << (c.free_loop ? " free-loop" : "") << '\n';
      }
      if (with_faces) {
        Json walks = Json::array();
        for (auto const& walk : fs.faces) {
          Json w = Json::array();
          for (auto h : walk) {
            auto const& e = g.half_edges[h];
            auto const& to = g.half_edges[g.twin[h]];
            w.push_back({{"half_edge", {e.point, e.sign}}, {"twin", {to.point, to.sign}}});
          }
          walks.push_back(std::move(w));
        }
        std::cout << walks.dump() << '\n';
      }
    } else if (export_cmd->parsed()) {
      auto const d = read_diagram(first);
      if (format == "dot") {
        std::cout << to_dot(d);
      } else if (format == "svg") {
        std::cout << to_svg(d);
      } else {
        std::cout << to_json(d).dump() << '\n';
      }
    } else if (replay->parsed()) {
      Json j;
      try {
        j = Json::parse(slurp(first));
      } catch (Json::parse_error const& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
      }
      auto const seq = sequence_from_json(j);
      std::cout << to_json(seq.finish()).dump() << '\n';
    }
  } catch (BudgetExceeded const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_error;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_error;
  }
  return exit_ok;
}
