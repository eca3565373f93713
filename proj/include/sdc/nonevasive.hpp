#pragma once

#include "sdc/collapse.hpp"
#include "sdc/complex.hpp"
#include "sdc/subdivision.hpp"

#include <map>
#include <memory>

namespace sdc {

/// Point(v) when link and deletion are absent; otherwise Node(v, link, deletion).
struct NECertificate {
    Vertex v = 0;
    std::shared_ptr<const NECertificate> link;
    std::shared_ptr<const NECertificate> deletion;

    bool is_point() const { return !link; }
    std::size_t size() const;

    static std::shared_ptr<const NECertificate> point(Vertex v);
    static std::shared_ptr<const NECertificate> node(Vertex v, std::shared_ptr<const NECertificate> link,
                                                     std::shared_ptr<const NECertificate> deletion);
};
using NECert = std::shared_ptr<const NECertificate>;

NECert relabel(const NECert& cert, const std::map<Vertex, Vertex>& map);

struct NEOutcome {
    OutcomeKind kind = OutcomeKind::BudgetExhausted;
    NECert certificate;
    std::uint64_t nodes_visited = 0;

    bool found() const { return kind == OutcomeKind::Certificate; }
};

NEOutcome is_nonevasive(const SimplicialComplex& c, std::uint64_t budget = kDefaultSearchBudget);

/// Certificate for a complex with a vertex in every facet.
NECert cone_certificate(Vertex apex, const SimplicialComplex& c);

VerifyResult verify_ne(const SimplicialComplex& c, const NECert& cert);

/// Collapse to a point induced by the certificate. Throws if it does not verify.
CollapseCertificate ne_to_collapse(const SimplicialComplex& c, const NECert& cert);

struct NEStep {
    Vertex v;
    NECert link_cert;
};

/// start ↘_NE final by deleting the listed vertices in order.
struct NEStepSequence {
    SimplicialComplex start;
    std::vector<NEStep> steps;
    SimplicialComplex final_complex;
};

VerifyResult verify_ne_steps(const NEStepSequence& seq);

/// Node chain: the steps followed by `rest`, a certificate for seq.final_complex.
NECert chain_certificate(const NEStepSequence& seq, const NECert& rest);

/**
 * (sd^m C) - v ↘_NE sd^m(C - v), in the vertex ids of it.complex where
 * it = sd_m(C, m). v is an original vertex of C.
 */
NEStepSequence sd_ne_deletion(const IteratedSubdivision& it, Vertex v);

/// Convenience overload building sd^m C itself.
NEStepSequence sd_ne_deletion(const SimplicialComplex& c, Vertex v, int m);

/// sd K non-evasive, from a certificate for K; ids are those of `s`, whose base contains K.
NECert lift_ne_to_sd(const DerivedComplex& s, const SimplicialComplex& k, const NECert& cert);

/// sd K ↘_NE sd K' from K ↘_NE K'; ids are those of `s`, whose base contains seq.start.
NEStepSequence lift_ne_steps(const DerivedComplex& s, const NEStepSequence& seq);

} // namespace sdc
