#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "qf/caps.hpp"
#include "qf/derived.hpp"
#include "qf/envelope.hpp"
#include "qf/errors.hpp"
#include "qf/group.hpp"
#include "qf/invariants.hpp"
#include "qf/io.hpp"
#include "qf/quandle.hpp"
#include "qf/rep.hpp"
#include "qf/word.hpp"

// Command-line front end.  Exit codes: 0 success, 1 domain/contract/resource
// failure (including invalid quandles), 2 malformed input (files, flags, or
// QF_CAPS).  Reports are JSON by default, flat text with --text, and
// byte-deterministic either way; --jobs only changes timing, not output.

namespace qf::cli {

namespace detail {

struct Options {
    bool text = false;
    unsigned jobs = 1;
    std::string from_group = "conj";
    long length_bound = -1;
    unsigned long prime_cap = 97;
    bool block_sparse = false;
    Caps caps;
};

struct FileOutcome {
    json report;
    int code = 0;
    std::string text_line;  // one-line summary used by --text when set
};

inline bool has_suffix(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

// Directories expand to their *.qnd and *.grp files, sorted by name.
inline std::vector<std::string> expand_paths(const std::vector<std::string>& paths) {
    std::vector<std::string> out;
    for (const std::string& p : paths) {
        std::error_code ec;
        if (std::filesystem::is_directory(p, ec)) {
            std::vector<std::string> inner;
            for (const auto& e : std::filesystem::directory_iterator(p)) {
                if (!e.is_regular_file()) continue;
                std::string f = e.path().string();
                if (has_suffix(f, ".qnd") || has_suffix(f, ".grp")) inner.push_back(f);
            }
            std::sort(inner.begin(), inner.end());
            out.insert(out.end(), inner.begin(), inner.end());
        } else {
            out.push_back(p);
        }
    }
    return out;
}

inline FiniteQuandle load_quandle(const std::string& path, const Options& opt) {
    if (has_suffix(path, ".grp")) {
        FiniteGroup g = read_group_file(path);
        return opt.from_group == "core" ? core_quandle(g) : conj_quandle(g);
    }
    return read_quandle_file(path);
}

inline json matrices_json(const std::vector<IntMatrix>& images, std::size_t block_dim,
                          bool block_sparse) {
    json arr = json::array();
    for (const IntMatrix& m : images)
        arr.push_back(block_sparse ? matrix_blocks_json(m, block_dim) : matrix_dense_json(m));
    return arr;
}

inline json table_1based(const Table& t) {
    json rows = json::array();
    for (const std::vector<int>& row : t) {
        json r = json::array();
        for (int v : row) r.push_back(v + 1);
        rows.push_back(std::move(r));
    }
    return rows;
}

inline json index_lists(const std::vector<std::vector<int>>& lists) {
    json out = json::array();
    for (const std::vector<int>& l : lists) out.push_back(l);
    return out;
}

// ---- per-file handlers ---------------------------------------------------------

inline FileOutcome handle_validate(const std::string& path, const Options&) {
    Table t = read_table_file(path);  // MalformedInput propagates (exit 2)
    json j{{"file", path}};
    if (has_suffix(path, ".grp")) {
        j["kind"] = "group";
        try {
            FiniteGroup g = FiniteGroup::from_table(t);
            j["valid"] = true;
            j["n"] = g.size();
            return {std::move(j), 0, "valid group, n=" + std::to_string(g.size())};
        } catch (const DomainError& e) {
            j["valid"] = false;
            j["witness"] = e.what();
            return {std::move(j), 1, std::string("invalid group: ") + e.what()};
        }
    }
    j["kind"] = "quandle";
    ValidationResult res = validate_quandle(t);
    j["valid"] = res.valid;
    j["n"] = t.size();
    if (!res.valid) j["witness"] = res.witness->to_string();
    return {std::move(j), res.valid ? 0 : 1,
            res.valid ? "valid quandle, n=" + std::to_string(t.size())
                      : "invalid quandle: " + res.witness->to_string()};
}

inline FileOutcome handle_invariants(const std::string& path, const Options& opt) {
    FiniteQuandle q = load_quandle(path, opt);
    json j{{"file", path}};
    j.update(invariant_json(full_report(q, opt.caps)));
    return {std::move(j), 0, ""};
}

inline FileOutcome handle_envelope(const std::string& path, const Options& opt) {
    FiniteQuandle q = load_quandle(path, opt);
    EnvelopeModel model = build_envelope(q, opt.caps);
    json j{{"file", path}};
    j.update(envelope_json(model, q_conj(model), abelianization(q), derived_subgroup_data(model)));
    return {std::move(j), 0, ""};
}

inline FileOutcome handle_qconj(const std::string& path, const Options& opt) {
    FiniteQuandle q = load_quandle(path, opt);
    QConj qc = q_conj(build_envelope(q, opt.caps));
    std::vector<std::vector<int>> classes(qc.reps.size());
    for (int x = 0; x < q.size(); ++x) classes[static_cast<std::size_t>(qc.theta[x])].push_back(x);
    json identified = json::array();
    for (int x = 0; x < q.size(); ++x)
        for (int y = x + 1; y < q.size(); ++y)
            if (qc.theta[x] == qc.theta[y]) identified.push_back(json::array({x, y}));
    return {json{{"file", path},
                 {"n", q.size()},
                 {"qconj_size", qc.quandle.size()},
                 {"injective", qc.quandle.size() == q.size()},
                 {"theta", qc.theta},
                 {"classes", index_lists(classes)},
                 {"identified", std::move(identified)},
                 {"table_1based", table_1based(qc.quandle.table())}},
            0, ""};
}

inline FileOutcome handle_represent(const std::string& path, const Options& opt) {
    FiniteQuandle q = load_quandle(path, opt);
    QuandleRep rep = quandle_rep(q, opt.caps);
    if (!verify_rep(q, rep.images).ok)
        throw InternalError("induced representation breaks a conjugation relation");
    json j{{"file", path},
           {"dim", rep.generator_rep.dim},
           {"block_dim", rep.k_rep.dim},
           {"reduced_to_image", rep.reduced_to_image},
           {"K", abelian_json(rep.model.k)},
           {"images", matrices_json(rep.images, rep.k_rep.dim, opt.block_sparse)}};
    if (opt.length_bound >= 0) {
        ProbeResult pr = faithfulness_probe(rep.model, rep.generator_rep.images,
                                            static_cast<std::size_t>(opt.length_bound));
        json pj{{"ok", pr.ok}, {"words_checked", pr.words_checked}};
        if (!pr.ok) {
            pj["witness_a"] = word_to_string(pr.witness_a);
            pj["witness_b"] = word_to_string(pr.witness_b);
        }
        j["probe"] = std::move(pj);
    }
    return {std::move(j), 0, ""};
}

inline FileOutcome handle_separate(const std::string& path, const Options& opt) {
    FiniteQuandle q = load_quandle(path, opt);
    SeparationResult res = separating_finite_quotient(q, opt.prime_cap, opt.caps);
    return {json{{"file", path},
                 {"prime", res.prime},
                 {"dim", res.dim},
                 {"reduced_to_image", res.reduced_to_image},
                 {"images", matrices_json(res.images, res.block_dim, opt.block_sparse)}},
            0, ""};
}

inline FileOutcome handle_classify(const std::string& path, const Options& opt) {
    FiniteQuandle q = load_quandle(path, opt);
    std::vector<std::vector<int>> orb = orbits(q);
    std::vector<std::vector<int>> comps = indecomposable_components(q, opt.caps.components);
    return {json{{"file", path},
                 {"n", q.size()},
                 {"orbit_count", orb.size()},
                 {"orbits", index_lists(orb)},
                 {"component_count", comps.size()},
                 {"components", index_lists(comps)},
                 {"indecomposable", comps.size() == 1},
                 {"injective", is_injective(q, opt.caps)}},
            0, ""};
}

inline json error_json(const std::string& path, const std::string& kind, const char* what) {
    return json{{"file", path}, {"error", what}, {"kind", kind}};
}

template <typename H>
FileOutcome guarded(const std::string& path, const Options& opt, H&& handler) {
    try {
        return handler(path, opt);
    } catch (const MalformedInput& e) {
        return {error_json(path, "malformed", e.what()), 2, ""};
    } catch (const DomainError& e) {
        return {error_json(path, "domain", e.what()), 1, ""};
    } catch (const ResourceError& e) {
        return {error_json(path, "resource", e.what()), 1, ""};
    } catch (const InternalError& e) {
        return {error_json(path, "internal", e.what()), 1, ""};
    }
}

template <typename H>
int run_over_files(const std::vector<std::string>& files, const Options& opt, std::ostream& out,
                   H&& handler) {
    std::vector<FileOutcome> results(files.size());
    if (opt.jobs > 1 && files.size() > 1) {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (std::size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1))
                results[i] = guarded(files[i], opt, handler);
        };
        std::vector<std::thread> pool;
        std::size_t nthreads = std::min<std::size_t>(opt.jobs, files.size());
        for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    } else {
        for (std::size_t i = 0; i < files.size(); ++i)
            results[i] = guarded(files[i], opt, handler);
    }

    if (opt.text) {
        for (const FileOutcome& r : results) {
            if (!r.text_line.empty())
                out << r.text_line << "\n";
            else
                out << render_text(r.report);
        }
    } else {
        json report;
        if (files.size() == 1) {
            report = std::move(results[0].report);
        } else {
            report = json::array();
            for (FileOutcome& r : results) report.push_back(std::move(r.report));
        }
        out << report.dump(2) << "\n";
    }

    int code = 0;
    for (const FileOutcome& r : results) code = std::max(code, r.code);
    return code;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    detail::Options opt;
    try {
        opt.caps = Caps::from_env();
    } catch (const MalformedInput& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"finite quandles and their enveloping groups", "qf"};
    app.require_subcommand(1);
    app.add_flag("--text", opt.text, "render reports as flat text instead of JSON");
    app.add_option("--jobs", opt.jobs, "process files in parallel")->check(CLI::PositiveNumber);
    app.add_option("--from-group", opt.from_group,
                   "turn .grp files into this quandle (conj or core)")
        ->check(CLI::IsMember({"conj", "core"}));

    std::vector<std::string> paths;
    auto add_files = [&](CLI::App* sc, int expected) {
        sc->fallthrough();
        sc->add_option("paths", paths, "table files or directories")
            ->required()
            ->expected(expected);
    };
    CLI::App* sc_validate = app.add_subcommand("validate", "check table axioms");
    add_files(sc_validate, -1);
    CLI::App* sc_invariants = app.add_subcommand("invariants", "full invariant report");
    add_files(sc_invariants, -1);
    CLI::App* sc_envelope = app.add_subcommand("envelope", "enveloping-group model report");
    add_files(sc_envelope, -1);
    CLI::App* sc_qconj = app.add_subcommand("qconj", "image quandle inside the enveloping group");
    add_files(sc_qconj, -1);
    CLI::App* sc_represent = app.add_subcommand("represent", "integer matrix representation");
    add_files(sc_represent, -1);
    sc_represent->add_option("--length-bound", opt.length_bound,
                             "also probe faithfulness on words up to this length");
    sc_represent->add_flag("--block-sparse", opt.block_sparse, "emit matrices as nonzero blocks");
    CLI::App* sc_separate = app.add_subcommand("separate", "separating finite quotient mod p");
    add_files(sc_separate, -1);
    sc_separate->add_option("--prime-cap", opt.prime_cap, "largest prime to try");
    sc_separate->add_flag("--block-sparse", opt.block_sparse, "emit matrices as nonzero blocks");
    CLI::App* sc_classify = app.add_subcommand("classify", "orbits and indecomposable components");
    add_files(sc_classify, -1);
    CLI::App* sc_homsearch =
        app.add_subcommand("homsearch", "enumerate morphisms source -> target");
    add_files(sc_homsearch, 2);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    using detail::FileOutcome;
    using detail::Options;

    if (app.got_subcommand(sc_homsearch)) {
        // Exactly two files: source and target; no directory expansion.
        FileOutcome r = detail::guarded(paths[0], opt, [&](const std::string& src, const Options& o) {
            FiniteQuandle q = detail::load_quandle(src, o);
            FiniteQuandle target = detail::load_quandle(paths[1], o);
            std::vector<std::vector<int>> maps = enumerate_morphisms(q, target, o.caps.hom_nodes);
            std::vector<std::vector<int>> comps = indecomposable_components(q, o.caps.components);
            std::size_t constant = 0;
            for (const std::vector<int>& f : maps) {
                bool ok = true;
                for (const std::vector<int>& c : comps)
                    for (int x : c)
                        if (f[x] != f[c[0]]) ok = false;
                if (ok) ++constant;
            }
            return FileOutcome{json{{"source", src},
                                    {"target", paths[1]},
                                    {"count", maps.size()},
                                    {"component_constant_count", constant},
                                    {"all_component_constant", constant == maps.size()},
                                    {"morphisms", detail::index_lists(maps)}},
                               0, ""};
        });
        if (opt.text)
            out << render_text(r.report);
        else
            out << r.report.dump(2) << "\n";
        return r.code;
    }

    std::vector<std::string> files = detail::expand_paths(paths);
    if (files.empty()) {
        err << "error: no input files\n";
        return 2;
    }
    if (app.got_subcommand(sc_validate))
        return detail::run_over_files(files, opt, out, detail::handle_validate);
    if (app.got_subcommand(sc_invariants))
        return detail::run_over_files(files, opt, out, detail::handle_invariants);
    if (app.got_subcommand(sc_envelope))
        return detail::run_over_files(files, opt, out, detail::handle_envelope);
    if (app.got_subcommand(sc_qconj))
        return detail::run_over_files(files, opt, out, detail::handle_qconj);
    if (app.got_subcommand(sc_represent))
        return detail::run_over_files(files, opt, out, detail::handle_represent);
    if (app.got_subcommand(sc_separate))
        return detail::run_over_files(files, opt, out, detail::handle_separate);
    if (app.got_subcommand(sc_classify))
        return detail::run_over_files(files, opt, out, detail::handle_classify);
    err << "error: unknown subcommand\n";
    return 2;
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace qf::cli
