// Writes a synthetic power-law edge stream as `u v t` lines.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "swconn/synth.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Synthetic power-law edge stream generator"};
  swconn::PowerLawSpec spec;
  std::string out_path;
  app.add_option("--vertices", spec.vertices, "vertex count")->check(CLI::Range(2ull, 1ull << 32));
  app.add_option("--edges", spec.edges, "edge count");
  app.add_option("--exponent", spec.exponent, "degree tail exponent (> 2)");
  app.add_option("--t-max", spec.t_max, "timestamps are drawn from [0, t-max); default: edge count");
  app.add_option("--seed", spec.seed, "generator seed");
  app.add_option("--out", out_path, "output file (stdout when omitted)");
  CLI11_PARSE(app, argc, argv);

  std::vector<swconn::StreamingEdge> edges;
  try {
    edges = swconn::power_law_stream(spec);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  std::ofstream file;
  if (!out_path.empty()) file.open(out_path);
  std::ostream& out = out_path.empty() ? std::cout : file;
  out << "# power-law stream: vertices=" << spec.vertices << " edges=" << spec.edges
      << " exponent=" << spec.exponent << " seed=" << spec.seed << '\n';
  for (const auto& e : edges) out << e.u << ' ' << e.v << ' ' << e.t << '\n';
  return 0;
}
