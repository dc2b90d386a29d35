// Integer matrix models: build the induced representation of a quandle's
// enveloping group, print the generator matrices, probe faithfulness, and
// reduce mod a separating prime.

#include <iostream>
#include <string>

#include "qf/qf.hpp"

using namespace qf;

namespace {

void print_matrix(const IntMatrix& m, const std::string& label) {
    std::cout << label << " =\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::cout << "    [";
        for (std::size_t j = 0; j < m.cols(); ++j)
            std::cout << (j ? " " : "") << m(i, j).get_str();
        std::cout << "]\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    FiniteQuandle q = argc > 1 ? read_quandle_file(argv[1]) : dihedral_quandle(3);

    EnvelopeModel m = build_envelope(q);
    GroupRep krep = abelian_faithful_rep(m.k);
    GroupRep rep = induced_rep(m, krep);
    std::cout << "dimension " << rep.dim << ", kernel blocks of size " << krep.dim << "\n\n";

    for (int x = 0; x < q.size(); ++x) print_matrix(rep.images[x], "x" + std::to_string(x));

    VerifyResult vr = verify_rep(q, rep.images);
    std::cout << "\nconjugation relations: " << (vr.ok ? "all hold" : "BROKEN") << "\n";

    ProbeResult probe = faithfulness_probe(m, rep.images, 4);
    std::cout << "faithfulness probe to length 4: "
              << (probe.ok ? "no collisions" : "collision found") << " (" << probe.words_checked
              << " words)\n";

    if (!non_injectivity_witness(q)) {
        SeparationResult sep = separating_finite_quotient(q, 97);
        std::cout << "separating prime: " << sep.prime << " (dimension " << sep.dim << ")\n";
    } else {
        std::cout << "quandle is not injective; mod-p separation targets the image classes\n";
    }
    return 0;
}
