#include "temporeach/verify.hpp"

#include "temporeach/errors.hpp"
#include "temporeach/reach.hpp"

namespace temporeach {

namespace {

std::optional<TemporalGraph> checked_apply(const TemporalGraph& g, const Perturbation& p, Vertex source,
                                           VerifyReport& rep) {
    if (source < 0 || source >= g.vertex_count()) {
        rep.reason = "source out of range";
        return std::nullopt;
    }
    TemporalGraph g2;
    try {
        g2 = apply_perturbation(g, p);
    } catch (const InvalidInput& e) {
        rep.reason = e.what();
        return std::nullopt;
    }
    auto moved = validate_relabelling(g, g2, p.delta);
    if (!moved) {
        rep.reason = "perturbed graph not within delta";
        return std::nullopt;
    }
    rep.moved = *moved;
    if (*moved > p.zeta) {
        rep.reason = "moved count " + std::to_string(*moved) + " exceeds zeta " + std::to_string(p.zeta);
        return std::nullopt;
    }
    return g2;
}

}  // namespace

VerifyReport verify_reach(const TemporalGraph& g, const Perturbation& p, Vertex source, int h) {
    VerifyReport rep;
    auto g2 = checked_apply(g, p, source, rep);
    if (!g2) return rep;
    rep.reach = foremost_tree(*g2, source).reach_count();
    if (rep.reach < h) {
        rep.reason = "reach " + std::to_string(rep.reach) + " below h " + std::to_string(h);
        return rep;
    }
    rep.valid = true;
    return rep;
}

VerifyReport verify_ecc(const TemporalGraph& g, const Perturbation& p, Vertex source, EccVariant variant, int k) {
    VerifyReport rep;
    auto g2 = checked_apply(g, p, source, rep);
    if (!g2) return rep;
    rep.reach = foremost_tree(*g2, source).reach_count();
    rep.eccentricity = eccentricity(*g2, source, variant);
    if (!rep.eccentricity || *rep.eccentricity > k) {
        rep.reason = rep.eccentricity ? "eccentricity " + std::to_string(*rep.eccentricity) + " exceeds k " + std::to_string(k)
                                      : "some vertex unreachable";
        return rep;
    }
    rep.valid = true;
    return rep;
}

}  // namespace temporeach
