#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "normality.hpp"
#include "parse.hpp"
#include "unitriangular.hpp"

namespace grhopf {

/// Element expression: [coeff '*'] mono ('+' [coeff '*'] mono)*
inline Element parse_element_text(const HopfPresentation& h, const std::string& text) {
    parseimpl::LineScanner sc(text, 1);
    std::map<std::string, std::size_t> index;
    for (std::size_t g = 0; g < h.num_gens(); ++g) index[h.gen(g).name] = g;
    Element out;
    for (;;) {
        unsigned coeff = 1;
        if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
            unsigned v = sc.integer();
            if (sc.accept('*')) {
                coeff = v;
            } else if (v == 1) {
                coeff = 1;
                if (coeff >= h.p()) sc.fail("coefficient not reduced", true);
                out = h.add(out, Element::monomial(0, 1));
                if (!sc.accept('+')) break;
                continue;
            } else {
                sc.fail("bare integer is not a monomial");
            }
        }
        if (coeff == 0 || coeff >= h.p()) sc.fail("coefficient must be reduced and nonzero", true);
        parseimpl::RawMono m = parseimpl::parse_mono(sc);
        BasisIndex idx = parseimpl::bind_mono(h.basis(), m, index, 1);
        out = h.add(out, Element::monomial(idx, Scalar(coeff)));
        if (!sc.accept('+')) break;
    }
    if (!sc.eof()) sc.fail("trailing input in element");
    return out;
}

namespace certimpl {

inline void render_subspace(std::ostringstream& os, const std::string& name, const Subspace& s) {
    os << "---\n";
    os << "section: " << name << "\n";
    os << "ambient: " << s.ambient_dim() << "\n";
    for (std::size_t i = 0; i < s.dim(); ++i) {
        Vec v = s.basis_vector(i);
        os << "row:";
        for (Scalar c : v) os << " " << unsigned(c);
        os << "\n";
    }
}

inline void render_presentation_section(std::ostringstream& os, const std::string& name,
                                        const HopfPresentation& h) {
    os << "---\n";
    os << "section: " << name << "\n";
    os << print_presentation(h);
}

inline void render_verdicts(std::ostringstream& os, const ConormalCertificate& c) {
    os << "conormal: " << (c.conormal() ? "true" : "false") << "\n";
    os << "cond-a: " << (c.cond_a ? "true" : "false") << "\n";
    os << "cond-b: " << (c.hopf_ideal_witness ? "true" : "false") << "\n";
    os << "cond-d: " << (c.lie_ideal_witness ? "true" : "false") << "\n";
    os << "cond-h: " << (c.equal ? "true" : "false") << "\n";
    os << "dim-identity: " << (c.dim_identity ? "true" : "false") << "\n";
    os << "left-cotensor-dim: " << c.left_cotensor.dim() << "\n";
    os << "right-cotensor-dim: " << c.right_cotensor.dim() << "\n";
}

}  // namespace certimpl

/// Certificate of a conormality decision for the quotient by a generated
/// ideal. When the ideal is not a Hopf ideal the certificate records the
/// witness and nothing else.
inline std::string render_conormal_certificate(const HopfPresentation& h,
                                               const std::vector<std::string>& kill_exprs) {
    std::ostringstream os;
    os << "kind: conormal\n";
    os << "prime: " << h.p() << "\n";
    os << "source-dim: " << h.dim() << "\n";
    std::vector<Element> kills;
    for (const std::string& e : kill_exprs) {
        Element el = parse_element_text(h, e);
        os << "kill: " << h.element_string(el) << "\n";
        kills.push_back(el);
    }
    IdealSubspace ideal = ideal_from_elements(h, kills);
    os << "ideal-dim: " << ideal.space.dim() << "\n";
    HopfIdealCheck chk = is_hopf_ideal(h, ideal);
    if (!ideal_is_graded(h, ideal.space)) {
        os << "hopf-ideal: false\n";
        os << "witness: (ideal not graded)\n";
        return os.str();
    }
    os << "hopf-ideal: " << (chk.ok ? "true" : "false") << "\n";
    if (!chk.ok) {
        os << "witness: " << h.element_string(*chk.witness) << "\n";
        return os.str();
    }
    PresPtr hp = std::make_shared<const HopfPresentation>(h);
    auto [target, q] = quotient(hp, ideal);
    ConormalCertificate cert = is_conormal(h, q);
    os << "target-dim: " << target->dim() << "\n";
    certimpl::render_verdicts(os, cert);
    certimpl::render_presentation_section(os, "target", *target);
    certimpl::render_subspace(os, "left-cotensor", cert.left_cotensor);
    certimpl::render_subspace(os, "right-cotensor", cert.right_cotensor);
    return os.str();
}

inline const char* strategy_name(SearchStrategy s) {
    switch (s) {
        case SearchStrategy::search: return "search";
        case SearchStrategy::chain: return "chain";
        default: return "auto";
    }
}

inline std::string render_elementary_certificate(const HopfPresentation& h,
                                                 const ElementaryQuotientResult& res) {
    std::ostringstream os;
    os << "kind: elementary-quotient\n";
    os << "prime: " << h.p() << "\n";
    os << "source-dim: " << h.dim() << "\n";
    os << "strategy: " << strategy_name(res.strategy) << "\n";
    os << "chi-degree: " << res.degree << "\n";
    os << "chi:";
    for (Scalar c : res.chi) os << " " << unsigned(c);
    os << "\n";
    os << "target: elementary degree=" << res.quotient.target->gen(0).degree << "\n";
    os << "target-dim: " << res.quotient.target->dim() << "\n";
    os << "cocentral: " << (res.cocentral ? "true" : "false") << "\n";
    certimpl::render_verdicts(os, res.certificate);
    certimpl::render_presentation_section(os, "target", *res.quotient.target);
    certimpl::render_subspace(os, "left-cotensor", res.certificate.left_cotensor);
    certimpl::render_subspace(os, "right-cotensor", res.certificate.right_cotensor);
    return os.str();
}

inline std::string render_chain_step_certificate(const UTIndex& idx, unsigned p,
                                                 std::size_t step_number, const ChainStep& step) {
    std::ostringstream os;
    os << "kind: chain-step\n";
    os << "prime: " << p << "\n";
    os << "I:";
    for (unsigned d : idx.I) os << " " << d;
    os << "\n";
    os << "r: " << idx.r << "\n";
    os << "step: " << step_number << "\n";
    os << "pair: " << step.m << " " << step.l << "\n";
    os << "exponent: " << step.exp << "\n";
    os << "stage-dim: " << step.stage->dim() << "\n";
    os << "kernel-dim: " << step.kernel->dim() << "\n";
    os << "target-degree: " << step.quotient_to_elementary.target->gen(0).degree << "\n";
    certimpl::render_verdicts(os, step.certificate);
    certimpl::render_presentation_section(os, "stage", *step.stage);
    certimpl::render_presentation_section(os, "target", *step.quotient_to_elementary.target);
    certimpl::render_presentation_section(os, "kernel", *step.kernel);
    return os.str();
}

inline std::string render_embedding_certificate(const HopfPresentation& h,
                                                const UnitriangularEmbedding& emb) {
    std::ostringstream os;
    os << "kind: embedding\n";
    os << "prime: " << h.p() << "\n";
    os << "n: " << emb.index.n() << "\n";
    os << "I:";
    for (unsigned d : emb.index.I) os << " " << d;
    os << "\n";
    os << "r: " << emb.index.r << "\n";
    os << "verified: true\n";
    os << "---\n";
    os << "section: comatrix\n";
    for (std::size_t i = 0; i + 1 < emb.index.n(); ++i)
        for (std::size_t j = i + 1; j < emb.index.n(); ++j)
            os << "c " << (i + 1) << " " << (j + 1) << ": "
               << h.element_string(emb.comatrix[i][j]) << "\n";
    return os.str();
}

namespace certimpl {

struct CertFile {
    std::map<std::string, std::vector<std::string>> fields;  // key -> values in order

    std::string get(const std::string& key) const {
        auto it = fields.find(key);
        if (it == fields.end() || it->second.empty())
            throw AlgebraError(Errc::invalid_argument, "certificate missing field '" + key + "'");
        return it->second.front();
    }
    std::vector<std::string> all(const std::string& key) const {
        auto it = fields.find(key);
        return it == fields.end() ? std::vector<std::string>{} : it->second;
    }
    bool has(const std::string& key) const { return fields.count(key) > 0; }
};

inline CertFile parse_cert(const std::string& text) {
    CertFile out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line == "---") continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) continue;
        std::string key = line.substr(0, colon);
        std::string value = colon + 1 < line.size() ? line.substr(colon + 2) : "";
        if (colon + 1 < line.size() && line[colon + 1] != ' ') value = line.substr(colon + 1);
        out.fields[key].push_back(value);
    }
    return out;
}

}  // namespace certimpl

/// Recompute a certificate from its parameters and the input presentation;
/// bit-exact agreement of the canonical rendering is the verification.
inline bool verify_certificate(const std::string& cert_text, const std::string& input_text) {
    certimpl::CertFile cf = certimpl::parse_cert(cert_text);
    std::string kind = cf.get("kind");
    if (kind == "conormal") {
        PresPtr h = presentation_from_text(input_text);
        std::string recomputed = render_conormal_certificate(*h, cf.all("kill"));
        return recomputed == cert_text;
    }
    if (kind == "elementary-quotient") {
        PresPtr h = presentation_from_text(input_text);
        DualAlgebra L = dualize(*h, false);
        std::istringstream is(cf.get("chi"));
        Vec chi;
        unsigned v;
        while (is >> v) chi.push_back(Scalar(v));
        if (chi.size() != h->dim()) return false;
        ElementaryQuotientResult res;
        res.chi = chi;
        unsigned deg = 0;
        if (!L.is_homogeneous(chi, &deg)) return false;
        res.degree = deg;
        res.quotient = elementary_quotient_from_chi(h, L, chi);
        res.certificate = is_conormal(*h, res.quotient, &L);
        res.cocentral = is_cocentral(*h, res.quotient, &L);
        std::string strat = cf.get("strategy");
        res.strategy = strat == "chain" ? SearchStrategy::chain : SearchStrategy::search;
        std::string recomputed = render_elementary_certificate(*h, res);
        return recomputed == cert_text && res.certificate.conormal();
    }
    if (kind == "chain-step") {
        UTIndex idx;
        {
            std::istringstream is(cf.get("I"));
            unsigned v;
            while (is >> v) idx.I.push_back(v);
        }
        idx.r = unsigned(std::stoul(cf.get("r")));
        unsigned p = unsigned(std::stoul(cf.get("prime")));
        std::size_t step_number = std::stoul(cf.get("step"));
        std::vector<ChainStep> chain = ut_chain(idx, p);
        if (step_number == 0 || step_number > chain.size()) return false;
        std::string recomputed =
            render_chain_step_certificate(idx, p, step_number, chain[step_number - 1]);
        return recomputed == cert_text;
    }
    if (kind == "embedding") {
        PresPtr h = presentation_from_text(input_text);
        UnitriangularEmbedding emb = embed_into_unitriangular(h);
        std::string recomputed = render_embedding_certificate(*h, emb);
        return recomputed == cert_text;
    }
    throw AlgebraError(Errc::invalid_argument, "unknown certificate kind '" + kind + "'");
}

}  // namespace grhopf
