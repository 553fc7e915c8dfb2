// Prints L'_k, K_k, A^t_k, D'_k and ker eta'_k for a small rank, then shows
// one rerooting and the image of a tripod under eta'.
#include "qlie/treediag.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  using namespace qlie;
  unsigned n = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1])) : 2;
  unsigned kmax = argc > 2 ? static_cast<unsigned>(std::atoi(argv[2])) : 3;

  for (unsigned k = 1; k <= kmax; ++k) {
    std::cout << "k=" << k << "  L'=" << group_structure(lprime_presentation(n, k))
              << "  K=" << group_structure(kernel_gamma(n, k).group)
              << "  At=" << group_structure(at_presentation(n, k))
              << "  D'=" << group_structure(dprime_group(n, k).group) << "  ker eta'=" << ker_etaprime(n, k)
              << '\n';
  }

  RootLabeledTree t = RootLabeledTree::parse("3@(1,2)");
  std::cout << t.code() << " rerooted at its first leaf: " << reroot(t, 0).code() << '\n';

  PresentedHom e = etaprime_hom(std::max(n, 3u), 1);
  std::size_t j = e.source.require_index(t.code());
  std::cout << "eta'(" << t.code() << ") = " << e.target.format(e.lift.column(j)) << '\n';
}
