#pragma once

#include "sdc/complex.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace sdc {

inline constexpr std::uint64_t kDefaultSearchBudget = 1'000'000;

struct CollapseStep {
    Face free_face;
    Face coface;

    bool operator==(const CollapseStep& o) const { return free_face == o.free_face && coface == o.coface; }
};

struct CollapseCertificate {
    std::vector<CollapseStep> steps;
    SimplicialComplex target;
};

/**
 * Face poset given by vertex sets, ordered by strict inclusion. Used by the
 * checker so that polytopal cells (a cell is the set of its vertices) can be
 * replayed alongside simplices.
 */
class FacePoset {
public:
    FacePoset() = default;
    static FacePoset from_complex(const SimplicialComplex& c);

    void add(const Face& f);
    bool remove(const Face& f);
    bool contains(const Face& f) const { return faces_.count(f) > 0; }
    std::size_t size() const { return faces_.size(); }
    const std::set<Face>& faces() const { return faces_; }
    std::vector<Face> strict_superfaces(const Face& f) const;

    bool operator==(const FacePoset& o) const { return faces_ == o.faces_; }

private:
    std::set<Face> faces_;
    std::map<Vertex, std::set<Face>> by_vertex_;
};

struct VerifyResult {
    bool ok = false;
    std::optional<std::size_t> failed_step;   // steps.size() means the target mismatched
    std::string message;

    explicit operator bool() const { return ok; }
};

VerifyResult verify_collapse(const SimplicialComplex& c, const CollapseCertificate& cert);
VerifyResult verify_collapse(FacePoset start, const std::vector<CollapseStep>& steps, const FacePoset& target);

/// Faces with exactly one strict superface.
std::vector<Face> free_faces(const SimplicialComplex& c);

/// Throws Error("face not free") unless sigma is free.
SimplicialComplex elementary_collapse(const SimplicialComplex& c, const Face& sigma);

enum class Strategy { Greedy, Backtracking, OrderGuided };

struct SearchOptions {
    Strategy strategy = Strategy::Greedy;
    std::uint64_t budget = kDefaultSearchBudget;
    std::uint64_t seed = 0;
    // OrderGuided: vertex ranks; free faces with earlier vertices go first.
    std::map<Vertex, std::size_t> vertex_rank;
};

enum class OutcomeKind { Certificate, Refuted, BudgetExhausted };
enum class RefutationReason { NoFreeFace, Exhaustive };

struct SearchOutcome {
    OutcomeKind kind = OutcomeKind::BudgetExhausted;
    std::optional<CollapseCertificate> certificate;
    RefutationReason reason = RefutationReason::Exhaustive;
    std::uint64_t nodes_visited = 0;

    bool found() const { return kind == OutcomeKind::Certificate; }
};

/// Collapse c onto `target`, or onto some single vertex when target is nullopt.
SearchOutcome collapse_search(const SimplicialComplex& c, const std::optional<SimplicialComplex>& target,
                              const SearchOptions& opts = {});

/// Cone over B collapses to the cone over a subcomplex B' (B' may be empty).
CollapseCertificate cone_collapse(Vertex apex, const SimplicialComplex& base, const SimplicialComplex& sub);

/// Given Lk(v, C) ↘ S, the lifted sequence C ↘ (C - v) ∪ v*S.
CollapseCertificate lift_link_collapse(const SimplicialComplex& c, Vertex v, const CollapseCertificate& link_cert);

/// Given Lk(v, C) ↘ point, the sequence C ↘ C - v.
CollapseCertificate remove_vertex_by_link_collapse(const SimplicialComplex& c, Vertex v,
                                                   const CollapseCertificate& link_cert);

/// Replays C ↘ C' inside D ∪ C; requires D ∩ C = C'. Result targets D.
CollapseCertificate collapse_union_lemma(const SimplicialComplex& c, const CollapseCertificate& c_to_cprime,
                                         const SimplicialComplex& d);

/// Concatenation; a's target must equal b's start, which is not checked here.
CollapseCertificate concat(const CollapseCertificate& a, const CollapseCertificate& b);

std::string to_string(OutcomeKind k);

} // namespace sdc
