// Command-line front end: presentation files in, certificates and tables out.
// All data goes to stdout, diagnostics to stderr. Exit codes: 0 ok, 2 syntax
// error, 3 semantic error, 4 axiom failure, 5 non-conormal verdict, 6 no
// positive-degree quotient, 7 failed certificate verification.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grhopf/grhopf.hpp"

namespace {

using namespace grhopf;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

PresPtr load_presentation(const std::string& path, bool require_axioms = true) {
    PresPtr h = presentation_from_text(read_file(path));
    if (require_axioms) {
        AxiomReport rep = check_hopf_axioms(*h);
        if (!rep.ok) {
            for (auto& v : rep.violations)
                std::cerr << "axiom failure: " << v.axiom << " witness: " << v.witness << "\n";
            std::exit(4);
        }
    }
    return h;
}

unsigned default_tmax(const HopfPresentation& h) {
    unsigned maxdeg = 1;
    for (std::size_t g = 0; g < h.num_gens(); ++g) maxdeg = std::max(maxdeg, h.gen(g).degree);
    return 4 * h.p() * maxdeg;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"graded Hopf algebra toolkit"};
    app.require_subcommand(1);
    unsigned threads = 1;
    app.add_option("--threads", threads, "worker threads for cohomology columns");

    std::string file, module_file, kill, strategy = "search", cert_file, input_file, ilist;
    unsigned smax = 6, tmax = 0, coeff_dim = 1, rpar = 1, ppar = 2;
    bool positive_degree = false;

    auto* c_check = app.add_subcommand("check", "verify the structural axioms");
    c_check->add_option("file", file)->required();

    auto* c_dual = app.add_subcommand("dual", "dump dual structure constants");
    c_dual->add_option("file", file)->required();

    auto* c_prims = app.add_subcommand("primitives", "per-degree primitive bases of the dual");
    c_prims->add_option("file", file)->required();

    auto* c_conn = app.add_subcommand("connectivize", "quotient by the degree-0 part");
    c_conn->add_option("file", file)->required();

    auto* c_frob = app.add_subcommand("frobenius", "Frobenius kernel quotient");
    c_frob->add_option("file", file)->required();
    c_frob->add_option("--r", rpar, "height")->required();

    auto* c_conormal = app.add_subcommand("conormal", "conormality certificate for a quotient");
    c_conormal->add_option("file", file)->required();
    c_conormal->add_option("--kill", kill, "comma-separated ideal generators")->required();

    auto* c_find = app.add_subcommand("find-elementary", "find an elementary conormal quotient");
    c_find->add_option("file", file)->required();
    c_find->add_flag("--positive-degree", positive_degree);
    c_find->add_option("--strategy", strategy)->check(CLI::IsMember({"search", "chain", "auto"}));

    auto* c_chain = app.add_subcommand("ut-chain", "unitriangular peeling chain");
    c_chain->add_option("--I", ilist, "comma-separated degrees")->required();
    c_chain->add_option("--r", rpar)->required();
    c_chain->add_option("--p", ppar)->required();

    auto* c_cohom = app.add_subcommand("cohomology", "bigraded Betti table via the bar complex");
    c_cohom->add_option("file", file)->required();
    c_cohom->add_option("--smax", smax);
    auto* tmax_opt = c_cohom->add_option("--tmax", tmax);
    c_cohom->add_option("--coeff-dim", coeff_dim);

    auto* c_products = app.add_subcommand("products", "cup products and generation evidence");
    c_products->add_option("file", file)->required();
    c_products->add_option("--smax", smax);
    auto* tmax_opt2 = c_products->add_option("--tmax", tmax);

    auto* c_restrict = app.add_subcommand("restrict", "restriction maps along a quotient");
    c_restrict->add_option("file", file)->required();
    c_restrict->add_option("--kill", kill)->required();
    c_restrict->add_option("--smax", smax);
    auto* tmax_opt3 = c_restrict->add_option("--tmax", tmax);

    auto* c_inv = app.add_subcommand("invariant-power", "invariant p-power of a coaction");
    c_inv->add_option("file", file)->required();
    c_inv->add_option("--module", module_file)->required();

    auto* c_verify = app.add_subcommand("verify", "recheck a certificate");
    c_verify->add_option("certificate", cert_file)->required();
    c_verify->add_option("input", input_file);

    CLI11_PARSE(app, argc, argv);

    if (c_check->parsed()) {
        PresPtr h = presentation_from_text(read_file(file));
        AxiomReport rep = check_hopf_axioms(*h);
        for (auto& v : rep.violations)
            std::cout << "violation: " << v.axiom << " witness: " << v.witness
                      << (v.detail.empty() ? "" : " detail: " + v.detail) << "\n";
        std::cout << "axioms: " << (rep.ok ? "pass" : "fail") << "\n";
        return rep.ok ? 0 : 4;
    }

    if (c_dual->parsed()) {
        PresPtr h = load_presentation(file);
        DualAlgebra d = dualize(*h);
        std::cout << "dim: " << d.dim() << "\n";
        std::cout << "grading:";
        for (std::size_t i = 0; i < d.dim(); ++i) std::cout << " " << d.degree(BasisIndex(i));
        std::cout << "\nunit: 0\n";
        for (std::size_t a = 0; a < d.dim(); ++a)
            for (std::size_t b = 0; b < d.dim(); ++b) {
                const SparseVec& m = d.mult(BasisIndex(a), BasisIndex(b));
                if (m.empty()) continue;
                std::cout << "mult: " << a << " " << b << " =";
                bool first = true;
                for (auto& [k, c] : m) {
                    std::cout << (first ? " " : " + ") << k << ":" << unsigned(c);
                    first = false;
                }
                std::cout << "\n";
            }
        for (std::size_t k = 0; k < d.dim(); ++k) {
            const TensorElement& cm = d.comult(BasisIndex(k));
            if (cm.is_zero()) continue;
            std::cout << "comult: " << k << " =";
            bool first = true;
            for (auto& [kk, c] : cm.terms) {
                std::cout << (first ? " " : " + ") << tensor_left(kk) << "," << tensor_right(kk)
                          << ":" << unsigned(c);
                first = false;
            }
            std::cout << "\n";
        }
        return 0;
    }

    if (c_prims->parsed()) {
        PresPtr h = load_presentation(file);
        DualAlgebra d = dualize(*h);
        for (auto& [deg, sub] : primitives(d)) {
            std::cout << "degree: " << deg << "\n";
            for (std::size_t i = 0; i < sub.dim(); ++i) {
                std::cout << "row:";
                for (Scalar c : sub.basis_vector(i)) std::cout << " " << unsigned(c);
                std::cout << "\n";
            }
        }
        return 0;
    }

    if (c_conn->parsed()) {
        PresPtr h = load_presentation(file);
        auto [target, q] = connectivization(h);
        (void)q;
        std::cout << print_presentation(*target);
        return 0;
    }

    if (c_frob->parsed()) {
        PresPtr h = load_presentation(file);
        auto [target, q] = frobenius_quotient(h, rpar);
        (void)q;
        std::cout << print_presentation(*target);
        return 0;
    }

    if (c_conormal->parsed()) {
        PresPtr h = load_presentation(file);
        std::string cert = render_conormal_certificate(*h, split_commas(kill));
        std::cout << cert;
        certimpl::CertFile cf = certimpl::parse_cert(cert);
        bool ok = cf.has("conormal") && cf.get("conormal") == "true";
        return ok ? 0 : 5;
    }

    if (c_find->parsed()) {
        PresPtr h = load_presentation(file);
        FindOptions opt;
        opt.positive_degree_only = positive_degree;
        opt.strategy = strategy == "chain"    ? SearchStrategy::chain
                       : strategy == "auto"   ? SearchStrategy::automatic
                                              : SearchStrategy::search;
        ElementaryQuotientResult res = find_elementary_conormal_quotient(h, opt);
        std::cout << render_elementary_certificate(*h, res);
        return 0;
    }

    if (c_chain->parsed()) {
        UTIndex idx;
        for (auto& s : split_commas(ilist)) idx.I.push_back(unsigned(std::stoul(s)));
        idx.r = rpar;
        std::vector<ChainStep> chain = ut_chain(idx, ppar);
        for (std::size_t i = 0; i < chain.size(); ++i) {
            if (i) std::cout << "=====\n";
            std::cout << render_chain_step_certificate(idx, ppar, i + 1, chain[i]);
        }
        return 0;
    }

    if (c_cohom->parsed()) {
        PresPtr h = load_presentation(file);
        BarOptions opt;
        opt.smax = smax;
        opt.tmax = tmax_opt->count() ? tmax : default_tmax(*h);
        opt.threads = threads;
        DualAlgebra d = dualize(*h);
        BettiTable table = coeff_dim == 1 ? bar_betti(d, opt) : coefficients_betti(d, coeff_dim, opt);
        std::cout << table.to_tsv();
        return 0;
    }

    if (c_products->parsed()) {
        PresPtr h = load_presentation(file);
        BarOptions opt;
        opt.smax = smax;
        opt.tmax = tmax_opt2->count() ? tmax : default_tmax(*h);
        opt.threads = threads;
        DualAlgebra d = dualize(*h);
        CohomologyRing ring(d, opt);
        for (auto& [st, dim] : ring.table().dims)
            std::cout << "cell: " << st.first << " " << st.second << " dim=" << dim << "\n";
        std::cout << "---\n";
        for (auto& [st1, dim1] : ring.table().dims)
            for (auto& [st2, dim2] : ring.table().dims) {
                for (unsigned i = 0; i < dim1; ++i)
                    for (unsigned j = 0; j < dim2; ++j) {
                        Vec c1(dim1, 0), c2(dim2, 0);
                        c1[i] = 1;
                        c2[j] = 1;
                        auto prod = ring.cup_classes(st1.first, st1.second, c1, st2.first, st2.second, c2);
                        if (!prod) continue;
                        std::cout << "product: " << st1.first << " " << st1.second << " " << i
                                  << " * " << st2.first << " " << st2.second << " " << j << " =";
                        bool zero = true;
                        for (Scalar c : *prod)
                            if (c) zero = false;
                        if (zero) {
                            std::cout << " 0\n";
                        } else {
                            std::cout << " " << (st1.first + st2.first) << " "
                                      << (st1.second + st2.second) << " :";
                            for (Scalar c : *prod) std::cout << " " << unsigned(c);
                            std::cout << "\n";
                        }
                    }
            }
        std::cout << "---\n";
        FGEvidenceReport rep = fg_evidence(ring, 2);
        for (auto& g : rep.generators) {
            std::cout << "generator: " << g.s << " " << g.t << " :";
            for (Scalar c : g.class_coords) std::cout << " " << unsigned(c);
            std::cout << "\n";
        }
        if (rep.unspanned.empty()) {
            std::cout << "unspanned: none\n";
        } else {
            for (auto& st : rep.unspanned)
                std::cout << "unspanned: " << st.first << " " << st.second << "\n";
        }
        return 0;
    }

    if (c_restrict->parsed()) {
        PresPtr h = load_presentation(file);
        std::vector<Element> kills;
        for (auto& e : split_commas(kill)) kills.push_back(parse_element_text(*h, e));
        auto [target, q] = quotient(h, ideal_from_elements(*h, kills));
        BarOptions opt;
        opt.smax = smax;
        opt.tmax = tmax_opt3->count() ? tmax : default_tmax(*h);
        opt.threads = threads;
        DualAlgebra dA = dualize(*h);
        DualAlgebra dB = dualize(*target);
        CohomologyRing ringA(dA, opt), ringB(dB, opt);
        RestrictionMaps maps = restriction_map(ringA, ringB, q);
        for (auto& [st, m] : maps.maps) {
            std::cout << "restriction: s=" << st.first << " t=" << st.second << " rows=" << m.rows
                      << " cols=" << m.cols << "\n";
            for (std::size_t r = 0; r < m.rows; ++r) {
                std::cout << "row:";
                for (std::size_t c = 0; c < m.cols; ++c) std::cout << " " << unsigned(m.at(r, c));
                std::cout << "\n";
            }
        }
        return 0;
    }

    if (c_inv->parsed()) {
        PresPtr h = load_presentation(file);
        ComoduleAlgebra cm = comodule_from_text(h, read_file(module_file));
        InvariantPowerReport rep = invariant_power(cm);
        std::cout << "kind: invariant-power\n";
        std::cout << "scope: monomial basis of the module\n";
        std::cout << "N: " << rep.N << "\n";
        std::cout << "witness: " << (rep.witness.empty() ? "none" : rep.witness) << "\n";
        for (auto& line : rep.transcript)
            std::cout << "check: " << line.element << " pow=" << line.first_invariant_power << "\n";
        return 0;
    }

    if (c_verify->parsed()) {
        std::string cert = read_file(cert_file);
        std::string input = input_file.empty() ? std::string{} : read_file(input_file);
        bool ok = verify_certificate(cert, input);
        std::cout << "verify: " << (ok ? "pass" : "fail") << "\n";
        return ok ? 0 : 7;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const grhopf::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.semantic() ? 3 : 2;
    } catch (const grhopf::AlgebraError& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case grhopf::Errc::no_positive_degree_quotient: return 6;
            default: return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
