// Guided tour of the enveloping-group model: load a quandle table (or fall
// back to the three-element dihedral quandle), build the model, and walk
// through the word problem, orders, and the subgroup machinery.

#include <iostream>
#include <string>

#include "qf/qf.hpp"

using namespace qf;

int main(int argc, char** argv) {
    FiniteQuandle q = argc > 1 ? read_quandle_file(argv[1]) : dihedral_quandle(3);
    std::cout << "quandle table (1-based):\n" << format_table(q.table());

    EnvelopeModel m = build_envelope(q);
    check_model_soundness(m);

    std::cout << "\ninner group order:  " << m.inn.order() << "\n";
    std::cout << "transversal size:   " << m.transversal.size() << "\n";
    std::cout << "kernel K:           " << m.k.to_string() << "\n";
    std::cout << "abelianization:     " << abelianization(q).to_string() << "\n";
    std::cout << "center of G:        " << center(m).to_string() << "\n";

    QConj qc = q_conj(m);
    std::cout << "image in G:         " << qc.quandle.size() << " element(s), "
              << (qc.quandle.size() == static_cast<std::size_t>(q.size()) ? "injective"
                                                                          : "collapsed")
              << "\n";

    // A few word-problem samples: conjugation relations and a commutator.
    GroupWord lhs = {{1, 1}, {0, 1}, {1, -1}};
    std::cout << "\nword problem samples:\n";
    std::cout << "  " << word_to_string(lhs) << " = x" << q.op(1, 0) << "  ->  "
              << (m.words_equal(lhs, {{q.op(1, 0), 1}}) ? "true" : "false") << "\n";
    if (q.size() > 1) {
        GroupWord comm = {{0, 1}, {1, 1}, {0, -1}, {1, -1}};
        NormalForm nf = m.normal_form(comm);
        std::cout << "  [x0, x1] normal form: inn index " << nf.inn_index << ", K part "
                  << (nf == m.identity_nf() ? "zero (they commute)" : "nonzero") << "\n";
        std::cout << "  x0 x1^-1 has infinite order: "
                  << (m.is_infinite_order({{0, 1}, {1, -1}}) ? "yes" : "no") << "\n";
    }

    SubgroupData d = derived_subgroup_data(m);
    std::cout << "\nderived subgroup:   ";
    if (d.finite)
        std::cout << "finite of order " << d.order->get_str() << "\n";
    else
        std::cout << "infinite (inn image " << d.inn_indices.size() << ", K part "
                  << d.kpart.to_string() << ")\n";

    ModelNilpotency nil = model_nilpotency(m);
    std::cout << "G nilpotent:        " << (nil.nilpotent ? "yes" : "no") << "\n";
    if (nil.nilpotent) std::cout << "torsion elements:   " << torsion_count(m).get_str() << "\n";
    return 0;
}
