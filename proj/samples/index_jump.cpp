// Partial indices and tangent dimension at the reference lift for a few
// values of lambda; the jump at lambda = 1 is visible in both columns.
#include <cstdio>
#include <string>

#include "holodisc/holodisc.hpp"

using namespace holodisc;

int main() {
  std::puts("lambda  indices        maslov  dim  gap");
  for (double lambda : {0.0, 0.5, 0.9, 1.0, 1.1}) {
    const IndexReport ix = partial_indices(build_symbol_A(lambda));
    const TangentReport tan = tangent_analysis({0.01, lambda}, LiftedDisc::reference());
    std::string ks = "{";
    for (std::size_t i = 0; i < ix.partial_indices.size(); ++i) {
      ks += (i ? "," : "") + std::to_string(ix.partial_indices[i]);
    }
    ks += "}";
    std::printf("%-6.2f  %-13s  %-6d  %-3d  %.1e\n", lambda, ks.c_str(), ix.maslov, tan.dimension, tan.gap);
  }
  return 0;
}
