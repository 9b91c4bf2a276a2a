#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "handshake/errors.hpp"
#include "handshake/qcore.hpp"
#include "handshake/rng.hpp"

// The transactional core. An emitter's offer wave meets a set of absorbers;
// each available absorber answers with a confirmation wave whose weight at the
// emitter is the Born probability of its outcome. The weighted incipient
// transactions are ordered into a pseudotime hierarchy by invariant spacetime
// interval and resolved stage by stage: at most one transaction actualizes per
// trial, and a failed stage hands the renormalized orthogonal residue of the
// offer wave to the stages after it.

namespace handshake::engine {

using qcore::BasisLabel;
using qcore::BasisPtr;
using qcore::Complex;
using qcore::Operator;
using qcore::StateVector;

/// Confirmation weights below this are bookkeeping zeros: the absorber still
/// answers, but the branch can never win a draw in practice.
inline constexpr double kWeightFloor = 1e-12;
/// Transactions at or below this weight count as dead branches in
/// conservation checks.
inline constexpr double kDeadBranchWeight = 1e-10;
/// Allowed defect when comparing a conserved outcome value to the emitted one.
inline constexpr double kConservationTolerance = 1e-9;
/// Squared intervals closer than this share a hierarchy stage.
inline constexpr double kIntervalTieTolerance = 1e-9;
/// Stage weights may exceed 1 by at most this before the stage is rejected.
inline constexpr double kStageWeightSlack = 1e-10;

/// Reserved outcome label for trials in which nothing actualizes.
inline constexpr const char* kNoTransactionLabel = "NoTransaction";

/// An event in Minkowski spacetime, natural units (c = 1).
struct SpacetimeEvent {
    double t = 0.0;
    std::array<double, 3> x{0.0, 0.0, 0.0};

    SpacetimeEvent() = default;
    SpacetimeEvent(double t_, std::array<double, 3> x_) : t(t_), x(x_) {
        qcore::detail::require_finite(t, "event time");
        for (double c : x) qcore::detail::require_finite(c, "event coordinate");
    }
};

/// Squared invariant interval (dt)^2 - |dx|^2, timelike positive.
inline double interval_squared(const SpacetimeEvent& a, const SpacetimeEvent& b) {
    const double dt = a.t - b.t;
    double dx2 = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double d = a.x[i] - b.x[i];
        dx2 += d * d;
    }
    return dt * dt - dx2;
}

/// An emitted offer wave: a normalized state plus its emission event.
struct OfferWave {
    std::string emitter_id;
    StateVector state;
    SpacetimeEvent emission;

    OfferWave(std::string emitter_id_, StateVector state_, SpacetimeEvent emission_)
        : emitter_id(std::move(emitter_id_)), state(std::move(state_)), emission(emission_) {
        qcore::require_normalized(state, "OfferWave");
    }
};

/// What a resolved stage contributes to the trial record.
struct TransactionSummary {
    std::string absorber_id;
    std::string outcome_label;
    double weight = 0.0;
};

struct StageRecord {
    int stage_rank = 0;
    bool formed = false;
    std::string outcome_label;  // empty when the stage failed
    std::vector<TransactionSummary> transactions;
};

using ResolutionHistory = std::vector<StageRecord>;

/// Availability of an absorber as a pure predicate over the resolution history
/// accumulated so far. The default is "always there"; a contingent absorber
/// (the moveable far detector) keys on earlier stage failures instead.
using AvailabilityCondition = std::function<bool(const ResolutionHistory&)>;

/// A detector: a projector onto an outcome subspace, a spacetime event, and an
/// availability condition.
class Absorber {
public:
    Absorber(std::string absorber_id, std::string outcome_label, Operator projector,
             SpacetimeEvent event)
        : Absorber(std::move(absorber_id), std::move(outcome_label), std::move(projector), event,
                   nullptr, false) {}

    static Absorber contingent(std::string absorber_id, std::string outcome_label,
                               Operator projector, SpacetimeEvent event,
                               AvailabilityCondition availability) {
        return Absorber(std::move(absorber_id), std::move(outcome_label), std::move(projector),
                        event, std::move(availability), true);
    }

    const std::string& id() const { return id_; }
    const std::string& outcome_label() const { return outcome_label_; }
    const Operator& projector() const { return projector_; }
    const SpacetimeEvent& event() const { return event_; }
    bool is_contingent() const { return contingent_; }

    bool available(const ResolutionHistory& history) const {
        return contingent_ ? availability_(history) : true;
    }

private:
    Absorber(std::string absorber_id, std::string outcome_label, Operator projector,
             SpacetimeEvent event, AvailabilityCondition availability, bool contingent)
        : id_(std::move(absorber_id)),
          outcome_label_(std::move(outcome_label)),
          projector_(std::move(projector)),
          event_(event),
          availability_(std::move(availability)),
          contingent_(contingent) {
        if (!projector_.is_projector()) {
            throw InvalidOperatorError("absorber '" + id_ + "' needs a projector");
        }
        if (id_.empty()) throw ParameterError("absorber id must be nonempty");
        if (contingent_ && !availability_) {
            throw ParameterError("contingent absorber needs an availability condition");
        }
    }

    std::string id_;
    std::string outcome_label_;
    Operator projector_;
    SpacetimeEvent event_;
    AvailabilityCondition availability_;
    bool contingent_;
};

/// The advanced response an absorber returns. Only its weight at the emitter
/// (the Born probability of the outcome) matters downstream, so that real
/// number is all the engine keeps.
struct ConfirmationWave {
    std::string absorber_id;
    double weight = 0.0;
};

/// One candidate OW/CW pairing awaiting the per-trial competition.
struct IncipientTransaction {
    std::string emitter_id;
    std::string absorber_id;
    std::string outcome_label;
    double weight = 0.0;
    double interval2 = 0.0;
};

/// One level of the pseudotime hierarchy: an optional propagation unitary
/// applied on entry, then a set of absorbers with mutually orthogonal
/// projectors competing at (numerically) equal interval.
struct CascadeStage {
    std::optional<Operator> propagation;
    std::vector<Absorber> absorbers;
    int stage_rank = 0;
};

/// Constraint that joint outcomes of an entangled system preserve the
/// conserved quantity behind the entanglement. The applicability predicate is
/// evaluated against the cascade's measurement settings.
struct ConservationRule {
    std::string quantity_name;
    std::map<std::string, double> outcome_value;
    double emitted_value = 0.0;
    std::function<bool(const std::map<std::string, double>&)> applicability;

    bool applies_to(const std::map<std::string, double>& settings) const {
        return applicability ? applicability(settings) : true;
    }
};

namespace detail {

inline void validate_stage(const CascadeStage& stage, const BasisPtr& space) {
    const std::size_t d = space->dimension();
    for (const auto& a : stage.absorbers) {
        qcore::require_same_space(a.projector().space(), space, "cascade stage");
        if (a.outcome_label() == kNoTransactionLabel) {
            throw ParameterError("outcome label 'NoTransaction' is reserved");
        }
    }
    if (stage.propagation) {
        if (!stage.propagation->is_unitary()) {
            throw InvalidOperatorError("stage propagation must be unitary");
        }
        qcore::require_same_space(stage.propagation->space(), space, "cascade stage");
    }
    for (std::size_t a = 0; a + 1 < stage.absorbers.size(); ++a) {
        for (std::size_t b = a + 1; b < stage.absorbers.size(); ++b) {
            const Operator& pa = stage.absorbers[a].projector();
            const Operator& pb = stage.absorbers[b].projector();
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) {
                    Complex s(0.0, 0.0);
                    for (std::size_t k = 0; k < d; ++k) s += pa.entry(i, k) * pb.entry(k, j);
                    if (std::abs(s) > qcore::kAlgebraTolerance) {
                        throw InvalidAbsorberSetError(
                            "absorbers '" + stage.absorbers[a].id() + "' and '" +
                            stage.absorbers[b].id() + "' overlap within one stage");
                    }
                }
            }
        }
    }
}

}  // namespace detail

/// A full experiment: the offer wave, the interval-ordered stages, and an
/// optional conservation rule together with the measurement settings its
/// applicability predicate inspects. Immutable and shareable across trials.
class Cascade {
public:
    static Cascade make(OfferWave initial, std::vector<CascadeStage> stages,
                        std::optional<ConservationRule> conservation = std::nullopt,
                        std::map<std::string, double> settings = {}) {
        if (stages.empty()) {
            throw ParameterError(
                "a cascade needs stages; use make_absorber_free for an unabsorbed offer wave");
        }
        return Cascade(std::move(initial), std::move(stages), std::move(conservation),
                       std::move(settings), false);
    }

    /// An offer wave with no absorbers at all: nothing ever actualizes.
    static Cascade make_absorber_free(OfferWave initial) {
        return Cascade(std::move(initial), {}, std::nullopt, {}, true);
    }

    const OfferWave& initial() const { return initial_; }
    const std::vector<CascadeStage>& stages() const { return stages_; }
    const std::optional<ConservationRule>& conservation() const { return conservation_; }
    const std::map<std::string, double>& settings() const { return settings_; }
    bool absorber_free() const { return absorber_free_; }

private:
    Cascade(OfferWave initial, std::vector<CascadeStage> stages,
            std::optional<ConservationRule> conservation, std::map<std::string, double> settings,
            bool absorber_free)
        : initial_(std::move(initial)),
          stages_(std::move(stages)),
          conservation_(std::move(conservation)),
          settings_(std::move(settings)),
          absorber_free_(absorber_free) {
        int previous_rank = -1;
        std::vector<std::string> ids;
        for (auto& stage : stages_) {
            if (stage.stage_rank <= previous_rank) {
                throw ParameterError("stage ranks must strictly increase along the cascade");
            }
            previous_rank = stage.stage_rank;
            detail::validate_stage(stage, initial_.state.space());
            // Canonical internal order: equal-seed runs stay bit-identical no
            // matter how the caller enumerated the absorbers.
            std::sort(stage.absorbers.begin(), stage.absorbers.end(),
                      [](const Absorber& a, const Absorber& b) { return a.id() < b.id(); });
            for (const auto& a : stage.absorbers) ids.push_back(a.id());
        }
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
            throw ParameterError("absorber ids must be unique across a cascade");
        }
    }

    OfferWave initial_;
    std::vector<CascadeStage> stages_;
    std::optional<ConservationRule> conservation_;
    std::map<std::string, double> settings_;
    bool absorber_free_;
};

/// Group absorbers into hierarchy stages by ascending squared interval from
/// the emission event: shorter intervals resolve first. Intervals equal
/// within kIntervalTieTolerance share a stage and compete in one weighted
/// draw. `propagations` maps a resulting stage index to the unitary applied
/// on entry to that stage.
inline Cascade build_cascade(OfferWave initial, std::vector<Absorber> absorbers,
                             std::map<int, Operator> propagations = {},
                             std::optional<ConservationRule> conservation = std::nullopt,
                             std::map<std::string, double> settings = {}) {
    if (absorbers.empty()) {
        if (!propagations.empty()) {
            throw ParameterError("an absorber-free cascade has no stages to propagate into");
        }
        return Cascade::make_absorber_free(std::move(initial));
    }
    std::vector<std::pair<double, Absorber>> ordered;
    ordered.reserve(absorbers.size());
    for (auto& a : absorbers) {
        ordered.emplace_back(interval_squared(initial.emission, a.event()), std::move(a));
    }
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<CascadeStage> stages;
    double group_interval = 0.0;
    for (auto& [interval2, absorber] : ordered) {
        if (stages.empty() || interval2 - group_interval > kIntervalTieTolerance) {
            stages.push_back(CascadeStage{std::nullopt, {}, static_cast<int>(stages.size())});
            group_interval = interval2;
        }
        stages.back().absorbers.push_back(std::move(absorber));
    }
    for (auto& [index, unitary] : propagations) {
        if (index < 0 || static_cast<std::size_t>(index) >= stages.size()) {
            throw ParameterError("propagation index does not name a stage");
        }
        stages[static_cast<std::size_t>(index)].propagation = unitary;
    }
    return Cascade::make(std::move(initial), std::move(stages), std::move(conservation),
                         std::move(settings));
}

/// One confirmation wave per available absorber, each carrying the Born weight
/// of its outcome on the given state. Unavailable absorbers answer nothing;
/// near-zero weights still answer (they are pruned later as dead branches).
/// Returned in canonical lexicographic absorber order.
inline std::vector<ConfirmationWave> gather_confirmations(const StateVector& state,
                                                          const CascadeStage& stage,
                                                          const ResolutionHistory& history) {
    qcore::require_normalized(state, "gather_confirmations");
    std::vector<ConfirmationWave> cws;
    cws.reserve(stage.absorbers.size());
    for (const auto& absorber : stage.absorbers) {
        if (!absorber.available(history)) continue;
        cws.push_back({absorber.id(), qcore::projector_weight(absorber.projector(), state)});
    }
    std::sort(cws.begin(), cws.end(), [](const ConfirmationWave& a, const ConfirmationWave& b) {
        return a.absorber_id < b.absorber_id;
    });
    return cws;
}

namespace detail {

inline const Absorber& absorber_by_id(const CascadeStage& stage, const std::string& id) {
    auto it = std::find_if(stage.absorbers.begin(), stage.absorbers.end(),
                           [&](const Absorber& a) { return a.id() == id; });
    if (it == stage.absorbers.end()) {
        throw ParameterError("confirmation wave from an absorber outside this stage");
    }
    return *it;
}

}  // namespace detail

/// Pair each confirmation wave with the offer into an incipient transaction,
/// in deterministic lexicographic absorber order.
inline std::vector<IncipientTransaction> form_incipient(const OfferWave& offer,
                                                        const std::vector<ConfirmationWave>& cws,
                                                        const CascadeStage& stage) {
    std::vector<IncipientTransaction> transactions;
    transactions.reserve(cws.size());
    for (const auto& cw : cws) {
        const Absorber& absorber = detail::absorber_by_id(stage, cw.absorber_id);
        transactions.push_back({offer.emitter_id, absorber.id(), absorber.outcome_label(),
                                cw.weight, interval_squared(offer.emission, absorber.event())});
    }
    std::sort(transactions.begin(), transactions.end(),
              [](const IncipientTransaction& a, const IncipientTransaction& b) {
                  return a.absorber_id < b.absorber_id;
              });
    return transactions;
}

enum class ConservationStatus { Clean, NotApplicable };

struct ConservationReport {
    ConservationStatus status = ConservationStatus::NotApplicable;
    std::string quantity_name;
    /// Conservation-violating branches with (numerically) zero weight: the
    /// dead branches that are never permitted to form.
    std::vector<TransactionSummary> dead_branches;
};

/// Verify that every transaction carrying real weight conserves the entangled
/// quantity. A violating transaction above the dead-branch floor throws: the
/// amplitude structure of a correct scenario already makes such branches
/// weightless, so nonzero weight means the scenario construction is wrong.
inline ConservationReport assert_conservation(const std::vector<IncipientTransaction>& transactions,
                                              const ConservationRule& rule,
                                              const std::map<std::string, double>& settings) {
    ConservationReport report;
    report.quantity_name = rule.quantity_name;
    if (!rule.applies_to(settings)) {
        report.status = ConservationStatus::NotApplicable;
        return report;
    }
    report.status = ConservationStatus::Clean;
    for (const auto& t : transactions) {
        auto it = rule.outcome_value.find(t.outcome_label);
        if (it == rule.outcome_value.end()) {
            throw ParameterError("conservation rule has no value for outcome '" + t.outcome_label +
                                 "'");
        }
        const bool conserved = std::abs(it->second - rule.emitted_value) <= kConservationTolerance;
        if (conserved) continue;
        if (t.weight > kDeadBranchWeight) {
            throw ConservationViolationError(
                "transaction '" + t.outcome_label + "' violates conservation of " +
                rule.quantity_name + " with weight " + std::to_string(t.weight));
        }
        report.dead_branches.push_back({t.absorber_id, t.outcome_label, t.weight});
    }
    return report;
}

/// Everything one stage resolution produced, for the trial record and audits.
struct StageResolution {
    bool formed = false;
    std::string outcome_label;
    std::string absorber_id;
    std::vector<IncipientTransaction> transactions;
    /// Residual state for the next stage; nullopt when the trial ended here
    /// (either a transaction formed, or nothing survived the projection).
    std::optional<StateVector> next_state;
};

/// Resolve one hierarchy stage. With total available weight W, one transaction
/// forms with probability W, chosen among the candidates in proportion to
/// weight; otherwise the stage fails and the offer wave continues as the
/// renormalized orthogonal residue. A stage with no available absorbers fails
/// with the state untouched. Weights under kWeightFloor are numerical zeros:
/// those confirmation waves are recorded but can never actualize.
inline StageResolution resolve_stage(const StateVector& state, const CascadeStage& stage,
                                     const ResolutionHistory& history, rng::RandomStream& stream) {
    StageResolution resolution;
    const auto cws = gather_confirmations(state, stage, history);
    double total_weight = 0.0;
    for (const auto& cw : cws) {
        const Absorber& absorber = detail::absorber_by_id(stage, cw.absorber_id);
        resolution.transactions.push_back(
            {"", absorber.id(), absorber.outcome_label(), cw.weight, 0.0});
        total_weight += cw.weight;
    }
    if (total_weight > 1.0 + kStageWeightSlack) {
        throw InvalidStageError("stage weights sum to " + std::to_string(total_weight) +
                                "; projectors not orthogonal or state not normalized");
    }
    if (resolution.transactions.empty()) {
        resolution.next_state = state;
        return resolution;
    }

    // One uniform draw decides both whether the stage forms and which
    // transaction wins: u inside the cumulative weight bands selects, u beyond
    // them fails the stage. Sub-floor weights get a zero-width band, so dead
    // branches never actualize.
    const double u = stream.uniform01();
    double cumulative = 0.0;
    for (const auto& t : resolution.transactions) {
        if (t.weight < kWeightFloor) continue;
        cumulative += t.weight;
        if (u < cumulative) {
            resolution.formed = true;
            resolution.outcome_label = t.outcome_label;
            resolution.absorber_id = t.absorber_id;
            return resolution;
        }
    }

    std::vector<Operator> projectors;
    projectors.reserve(cws.size());
    for (const auto& cw : cws) {
        projectors.push_back(detail::absorber_by_id(stage, cw.absorber_id).projector());
    }
    resolution.next_state = qcore::complement_renormalize(projectors, state);
    return resolution;
}

/// The actualized transaction of a trial, when one formed.
struct Actualized {
    std::string outcome_label;
    std::string absorber_id;
    int stage_rank = 0;
};

/// Per-trial result: at most one actualized outcome, the stage-by-stage
/// history, and — when nothing actualized — the surviving offer wave.
struct TrialOutcome {
    std::optional<Actualized> actualized;
    ResolutionHistory history;
    std::optional<StateVector> residual_state;

    bool no_transaction() const { return !actualized.has_value(); }
};

namespace detail {

inline void stamp_transactions(std::vector<IncipientTransaction>& transactions,
                               const OfferWave& offer, const CascadeStage& stage) {
    for (auto& t : transactions) {
        t.emitter_id = offer.emitter_id;
        t.interval2 = interval_squared(offer.emission, absorber_by_id(stage, t.absorber_id).event());
    }
}

inline std::vector<TransactionSummary> summarize(const std::vector<IncipientTransaction>& ts) {
    std::vector<TransactionSummary> out;
    out.reserve(ts.size());
    for (const auto& t : ts) out.push_back({t.absorber_id, t.outcome_label, t.weight});
    return out;
}

}  // namespace detail

/// Run one trial: propagate and resolve stage after stage in ascending rank.
/// The first formation ends the trial — collapse is exactly the formation of
/// a transaction — and surviving every stage leaves an unabsorbed offer wave.
inline TrialOutcome resolve_cascade(const Cascade& cascade, rng::RandomStream& stream) {
    TrialOutcome outcome;
    StateVector state = cascade.initial().state;
    for (const auto& stage : cascade.stages()) {
        if (stage.propagation) {
            state = qcore::apply(*stage.propagation, state);
        }
        StageResolution resolution = resolve_stage(state, stage, outcome.history, stream);
        detail::stamp_transactions(resolution.transactions, cascade.initial(), stage);
        if (cascade.conservation()) {
            assert_conservation(resolution.transactions, *cascade.conservation(),
                                cascade.settings());
        }
        outcome.history.push_back({stage.stage_rank, resolution.formed, resolution.outcome_label,
                                   detail::summarize(resolution.transactions)});
        if (resolution.formed) {
            outcome.actualized =
                Actualized{resolution.outcome_label, resolution.absorber_id, stage.stage_rank};
            return outcome;
        }
        if (!resolution.next_state) {
            // Nothing of the offer wave survived the failed stage; the trial
            // ends with no transaction and no residue.
            return outcome;
        }
        state = std::move(*resolution.next_state);
    }
    outcome.residual_state = std::move(state);
    return outcome;
}

/// Exact per-outcome formation probabilities by the stage recursion, no
/// sampling. A later stage is reached only if every earlier stage failed, so
/// the history each availability condition sees is the unique all-failed
/// prefix; contingent cascades therefore analyze exactly like plain ones.
struct CascadeAnalysis {
    std::map<std::string, double> probabilities;
    double no_transaction = 0.0;
};

inline CascadeAnalysis analyze_cascade(const Cascade& cascade) {
    CascadeAnalysis analysis;
    StateVector state = cascade.initial().state;
    ResolutionHistory history;
    double survival = 1.0;
    for (const auto& stage : cascade.stages()) {
        if (stage.propagation) {
            state = qcore::apply(*stage.propagation, state);
        }
        const auto cws = gather_confirmations(state, stage, history);
        const auto transactions = form_incipient(cascade.initial(), cws, stage);
        if (cascade.conservation()) {
            assert_conservation(transactions, *cascade.conservation(), cascade.settings());
        }
        double stage_weight = 0.0;
        for (const auto& t : transactions) {
            analysis.probabilities[t.outcome_label] += survival * t.weight;
            stage_weight += t.weight;
        }
        if (stage_weight > 1.0 + kStageWeightSlack) {
            throw InvalidStageError("stage weights sum past 1 during analysis");
        }
        history.push_back({stage.stage_rank, false, "", {}});
        if (transactions.empty()) continue;

        survival *= std::max(0.0, 1.0 - stage_weight);
        std::vector<Operator> projectors;
        projectors.reserve(cws.size());
        for (const auto& cw : cws) {
            projectors.push_back(detail::absorber_by_id(stage, cw.absorber_id).projector());
        }
        auto residue = qcore::complement_renormalize(projectors, state);
        if (!residue) {
            survival = 0.0;
            break;
        }
        state = std::move(*residue);
    }
    analysis.no_transaction = survival;
    return analysis;
}

/// Spin-1/2 space with the z basis {+, -}.
inline BasisPtr spin_space() { return qcore::Basis::make({"+", "-"}); }

/// Projector onto the spin-up (+1) or spin-down (-1) outcome along a
/// direction in the x-z plane, angle measured from +z. Real entries since the
/// direction never leaves the plane.
inline Operator spin_projector(const BasisPtr& space, double angle, int sign) {
    if (sign != +1 && sign != -1) {
        throw ParameterError("spin projector sign must be +1 or -1");
    }
    qcore::detail::require_finite(angle, "measurement angle");
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const std::vector<Complex> amps = (sign > 0)
                                          ? std::vector<Complex>{Complex(c, 0), Complex(s, 0)}
                                          : std::vector<Complex>{Complex(-s, 0), Complex(c, 0)};
    return qcore::projector_onto(StateVector(space, amps));
}

/// The four joint product absorbers P_a(+-) (x) P_b(+-) for two spin
/// measurements at widely separated sites. Both sites sit at the same
/// invariant interval from the emission, so all four absorbers share one
/// (representative) event and resolve as a single joint atemporal stage.
inline std::vector<Absorber> joint_absorbers(double angle_a, double angle_b) {
    const BasisPtr one = spin_space();
    const SpacetimeEvent joint_site(1.0, {0.5, 0.0, 0.0});

    std::vector<Absorber> absorbers;
    const std::array<int, 2> signs{+1, -1};
    for (int sa : signs) {
        for (int sb : signs) {
            const Operator pa = spin_projector(one, angle_a, sa);
            const Operator pb = spin_projector(one, angle_b, sb);
            const std::string label = std::string(sa > 0 ? "+" : "-") + (sb > 0 ? "+" : "-");
            absorbers.emplace_back("AB_" + label, label, qcore::tensor(pa, pb), joint_site);
        }
    }
    return absorbers;
}

}  // namespace handshake::engine
