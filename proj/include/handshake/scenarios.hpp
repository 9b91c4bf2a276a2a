#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "handshake/engine.hpp"
#include "handshake/errors.hpp"
#include "handshake/qcore.hpp"

// Executable experiment definitions. Each builder assembles a cascade plus
// the analytically expected outcome statistics it should reproduce, so every
// scenario doubles as its own verification target.

namespace handshake::scenarios {

using engine::Absorber;
using engine::Cascade;
using engine::CascadeStage;
using engine::OfferWave;
using engine::SpacetimeEvent;
using qcore::Basis;
using qcore::BasisPtr;
using qcore::Complex;
using qcore::Operator;
using qcore::StateVector;

/// A named experiment: its cascade, the analytic outcome probabilities
/// (actualized outcomes only; any remainder is the expected NoTransaction
/// mass), and the resolved parameter values it was built with.
struct ScenarioDefinition {
    std::string name;
    Cascade cascade;
    std::map<std::string, double> expected;
    std::map<std::string, double> parameters;
    std::string notes;
};

namespace detail {

inline void check_expected_mass(const ScenarioDefinition& def) {
    double total = 0.0;
    for (const auto& [label, p] : def.expected) {
        if (p < -1e-12 || p > 1.0 + 1e-9) {
            throw ParameterError("scenario '" + def.name + "' expects probability " +
                                 std::to_string(p) + " for '" + label + "'");
        }
        total += p;
    }
    if (total > 1.0 + 1e-9) {
        throw ParameterError("scenario '" + def.name + "' expected probabilities sum past 1");
    }
}

inline ScenarioDefinition finish(ScenarioDefinition def) {
    check_expected_mass(def);
    return def;
}

}  // namespace detail

/// The contingent-absorber thought experiment: a near detector A intercepts
/// the rightward component; the far detector B swings over to the leftward
/// side only after A's transaction fails. The naive CW weight at B is 1/2,
/// yet B fires with certainty once stage 0 has failed — resolved by giving
/// the shorter-interval transaction priority and letting B compete against
/// the leftover offer wave.
inline ScenarioDefinition maudlin() {
    const BasisPtr space = Basis::make({"right", "left"});
    const double a = 1.0 / std::sqrt(2.0);
    StateVector initial(space, {Complex(a, 0.0), Complex(a, 0.0)});
    OfferWave offer("maudlin_source", std::move(initial), SpacetimeEvent{});

    Absorber near("A", "A", qcore::projector_onto_labels(space, {"right"}),
                  SpacetimeEvent(1.0, {0.5, 0.0, 0.0}));
    Absorber far = Absorber::contingent(
        "B", "B", qcore::projector_onto_labels(space, {"left"}),
        SpacetimeEvent(2.0, {-1.0, 0.0, 0.0}), [](const engine::ResolutionHistory& history) {
            for (const auto& record : history) {
                if (record.stage_rank == 0) return !record.formed;
            }
            return false;
        });

    ScenarioDefinition def{
        "maudlin",
        engine::build_cascade(std::move(offer), {std::move(near), std::move(far)}),
        {{"A", 0.5}, {"B", 0.5}},
        {},
        "Slow massive particle offered in two directions; B is available only "
        "on stage-0 failure. P(B | A failed) = 1."};
    return detail::finish(std::move(def));
}

namespace detail {

inline StateVector singlet_state(const BasisPtr& composite) {
    const double a = 1.0 / std::sqrt(2.0);
    return StateVector(composite,
                       {Complex(0.0, 0.0), Complex(a, 0.0), Complex(-a, 0.0), Complex(0.0, 0.0)});
}

}  // namespace detail

/// Spin-1/2 pair in the singlet state, measured along two directions in the
/// x-z plane at widely separated sites. The four joint outcomes resolve as a
/// single atemporal transaction; total spin-z projection is conserved, and
/// when both sites measure along z the rule is asserted on every trial.
inline ScenarioDefinition epr_bohm(double angle_a, double angle_b) {
    qcore::detail::require_finite(angle_a, "angle_a");
    qcore::detail::require_finite(angle_b, "angle_b");
    const BasisPtr one = engine::spin_space();
    const BasisPtr composite = qcore::tensor_basis(one, one);
    OfferWave offer("epr_source", detail::singlet_state(composite), SpacetimeEvent{});

    engine::ConservationRule rule;
    rule.quantity_name = "total spin-z projection";
    rule.outcome_value = {{"++", 1.0}, {"+-", 0.0}, {"-+", 0.0}, {"--", -1.0}};
    rule.emitted_value = 0.0;
    rule.applicability = [](const std::map<std::string, double>& settings) {
        auto a = settings.find("angle_a");
        auto b = settings.find("angle_b");
        return a != settings.end() && b != settings.end() && a->second == 0.0 &&
               b->second == 0.0;
    };

    const double theta = angle_a - angle_b;
    const double same = 0.25 * (1.0 - std::cos(theta));
    const double diff = 0.25 * (1.0 + std::cos(theta));

    ScenarioDefinition def{
        "epr_bohm",
        engine::build_cascade(std::move(offer), engine::joint_absorbers(angle_a, angle_b), {},
                              std::move(rule),
                              {{"angle_a", angle_a}, {"angle_b", angle_b}}),
        {{"++", same}, {"+-", diff}, {"-+", diff}, {"--", same}},
        {{"angle_a", angle_a}, {"angle_b", angle_b}},
        "Singlet pair; joint correlation E(a,b) = -cos(angle_a - angle_b)."};
    return detail::finish(std::move(def));
}

/// Symmetric 50/50 beam splitter with an i phase on reflection.
inline Operator beam_splitter(const BasisPtr& space) {
    if (space->dimension() != 2) {
        throw ParameterError("beam_splitter is defined on 2-mode spaces");
    }
    const double a = 1.0 / std::sqrt(2.0);
    return Operator::unitary(
        space, {Complex(a, 0.0), Complex(0.0, a), Complex(0.0, a), Complex(a, 0.0)});
}

/// Interaction-free measurement in a two-arm interferometer. The photon
/// enters the lower port; an obstacle in the lower arm (when present) sits at
/// a shorter interval than the output detectors, so its transaction resolves
/// first. With the obstacle absent the interferometer sends every photon to
/// the bright port; a dark-port click therefore reveals the obstacle without
/// the photon ever being absorbed by it.
inline ScenarioDefinition elitzur_vaidman(bool obstacle_present) {
    const BasisPtr space = Basis::make({"upper", "lower"});
    OfferWave offer("photon", StateVector::basis_state(space, "lower"), SpacetimeEvent{});
    const Operator splitter = beam_splitter(space);

    CascadeStage arm_stage;
    arm_stage.propagation = splitter;
    arm_stage.stage_rank = 0;
    if (obstacle_present) {
        arm_stage.absorbers.emplace_back("obstacle", "obstacle",
                                         qcore::projector_onto_labels(space, {"lower"}),
                                         SpacetimeEvent(1.0, {0.0, 0.0, 0.0}));
    }

    CascadeStage detector_stage;
    detector_stage.propagation = splitter;
    detector_stage.stage_rank = 1;
    // With this splitter convention a lower-port photon exits at the upper
    // port when both arms stay open: upper is the bright port.
    detector_stage.absorbers.emplace_back("D_bright", "bright",
                                          qcore::projector_onto_labels(space, {"upper"}),
                                          SpacetimeEvent(2.0, {0.2, 0.0, 0.0}));
    detector_stage.absorbers.emplace_back("D_dark", "dark",
                                          qcore::projector_onto_labels(space, {"lower"}),
                                          SpacetimeEvent(2.0, {-0.2, 0.0, 0.0}));

    std::map<std::string, double> expected;
    if (obstacle_present) {
        expected = {{"obstacle", 0.5}, {"bright", 0.25}, {"dark", 0.25}};
    } else {
        expected = {{"bright", 1.0}, {"dark", 0.0}};
    }

    ScenarioDefinition def{
        "elitzur_vaidman",
        Cascade::make(std::move(offer), {std::move(arm_stage), std::move(detector_stage)}),
        std::move(expected),
        {{"obstacle", obstacle_present ? 1.0 : 0.0}},
        "Two-arm interferometer; symmetric 50/50 splitters with i phase on "
        "reflection; a dark click is an interaction-free detection."};
    return detail::finish(std::move(def));
}

enum class DeutschOracle { Constant0, Constant1, BalancedId, BalancedNot };

inline DeutschOracle deutsch_oracle_from_index(double index) {
    if (index == 0.0) return DeutschOracle::Constant0;
    if (index == 1.0) return DeutschOracle::Constant1;
    if (index == 2.0) return DeutschOracle::BalancedId;
    if (index == 3.0) return DeutschOracle::BalancedNot;
    throw ParameterError("oracle must be 0 (constant0), 1 (constant1), 2 (balanced_id) or "
                         "3 (balanced_not)");
}

inline const char* deutsch_oracle_name(DeutschOracle oracle) {
    switch (oracle) {
        case DeutschOracle::Constant0: return "constant0";
        case DeutschOracle::Constant1: return "constant1";
        case DeutschOracle::BalancedId: return "balanced_id";
        default: return "balanced_not";
    }
}

/// One-query decision of whether a 1-bit function is constant or balanced.
/// The circuit constraints leave exactly one incipient transaction with any
/// weight, so the answer actualizes deterministically: the offer wave probed
/// both function values, yet only the final result was ever an outcome.
inline ScenarioDefinition deutsch(DeutschOracle oracle) {
    const BasisPtr qubit = Basis::make({"0", "1"});
    const BasisPtr composite = qcore::tensor_basis(qubit, qubit);
    OfferWave offer("deutsch_register", StateVector::basis_state(composite, "01"),
                    SpacetimeEvent{});

    const Operator h = qcore::hadamard(qubit);
    const Operator eye = Operator::identity(qubit);
    Operator oracle_unitary = Operator::identity(composite);
    switch (oracle) {
        case DeutschOracle::Constant0:
            break;
        case DeutschOracle::Constant1:
            oracle_unitary = qcore::tensor(eye, qcore::pauli_x(qubit));
            break;
        case DeutschOracle::BalancedId:
            // |x,y> -> |x, y xor x>
            oracle_unitary = qcore::permutation(composite, {0, 1, 3, 2});
            break;
        case DeutschOracle::BalancedNot:
            // |x,y> -> |x, y xor (1-x)>
            oracle_unitary = qcore::permutation(composite, {1, 0, 2, 3});
            break;
    }
    const Operator circuit = qcore::compose(
        qcore::tensor(h, eye), qcore::compose(oracle_unitary, qcore::tensor(h, h)));

    std::vector<Absorber> absorbers;
    absorbers.emplace_back("Q0", "0", qcore::projector_onto_labels(composite, {"00", "01"}),
                           SpacetimeEvent(1.0, {0.1, 0.0, 0.0}));
    absorbers.emplace_back("Q1", "1", qcore::projector_onto_labels(composite, {"10", "11"}),
                           SpacetimeEvent(1.0, {-0.1, 0.0, 0.0}));

    const bool constant =
        oracle == DeutschOracle::Constant0 || oracle == DeutschOracle::Constant1;
    ScenarioDefinition def{
        "deutsch",
        engine::build_cascade(std::move(offer), std::move(absorbers),
                              {{0, circuit}}),
        {{"0", constant ? 1.0 : 0.0}, {"1", constant ? 0.0 : 1.0}},
        {{"oracle", static_cast<double>(static_cast<int>(oracle))}},
        std::string("Measures the query qubit after H.Uf.(HxH); oracle kind ") +
            deutsch_oracle_name(oracle) + "."};
    return detail::finish(std::move(def));
}

/// An offer wave nobody answers: no confirmation, no transaction, no
/// collapse. The state simply persists, trial after trial.
inline ScenarioDefinition unabsorbed_offer() {
    const BasisPtr space = Basis::make({"up", "down"});
    const double a = 1.0 / std::sqrt(2.0);
    OfferWave offer("lone_emitter",
                    StateVector(space, {Complex(a, 0.0), Complex(a, 0.0)}), SpacetimeEvent{});
    ScenarioDefinition def{"unabsorbed_offer",
                           Cascade::make_absorber_free(std::move(offer)),
                           {},
                           {},
                           "No absorbers respond; every trial ends with the offer wave intact."};
    return detail::finish(std::move(def));
}

/// CLI-facing parameter description.
struct ParameterSpec {
    std::string name;
    double default_value = 0.0;
    std::string description;
};

struct ScenarioInfo {
    std::string name;
    std::string description;
    std::vector<ParameterSpec> parameters;
};

/// Catalog of every scenario, sorted by name.
inline const std::vector<ScenarioInfo>& scenario_catalog() {
    static const std::vector<ScenarioInfo> catalog = {
        {"deutsch",
         "one-query constant-vs-balanced decision as a competitor-free transaction",
         {{"oracle", 0.0, "0=constant0 1=constant1 2=balanced_id 3=balanced_not"}}},
        {"elitzur_vaidman",
         "interaction-free obstacle detection in a two-arm interferometer",
         {{"obstacle", 1.0, "1 places the obstacle in the lower arm, 0 removes it"}}},
        {"epr_bohm",
         "singlet pair measured along two x-z plane directions; joint atemporal transaction",
         {{"angle_a", 0.0, "site A measurement angle from +z, radians"},
          {"angle_b", 0.0, "site B measurement angle from +z, radians"}}},
        {"maudlin",
         "contingent far absorber behind a near one; hierarchy resolves the 1/2-vs-certainty puzzle",
         {}},
        {"unabsorbed_offer",
         "offer wave with no absorbers; nothing ever actualizes",
         {}},
    };
    return catalog;
}

/// Build a scenario by name, applying parameter overrides over the defaults.
inline ScenarioDefinition make_scenario(const std::string& name,
                                        const std::map<std::string, double>& overrides = {}) {
    const ScenarioInfo* info = nullptr;
    for (const auto& entry : scenario_catalog()) {
        if (entry.name == name) {
            info = &entry;
            break;
        }
    }
    if (!info) {
        throw NotFoundError("unknown scenario '" + name + "'");
    }
    std::map<std::string, double> params;
    for (const auto& p : info->parameters) params[p.name] = p.default_value;
    for (const auto& [key, value] : overrides) {
        auto it = params.find(key);
        if (it == params.end()) {
            throw ParameterError("scenario '" + name + "' has no parameter '" + key + "'");
        }
        qcore::detail::require_finite(value, "parameter value");
        it->second = value;
    }

    if (name == "deutsch") {
        return deutsch(deutsch_oracle_from_index(params.at("oracle")));
    }
    if (name == "elitzur_vaidman") {
        const double flag = params.at("obstacle");
        if (flag != 0.0 && flag != 1.0) {
            throw ParameterError("obstacle must be 0 or 1");
        }
        return elitzur_vaidman(flag == 1.0);
    }
    if (name == "epr_bohm") {
        return epr_bohm(params.at("angle_a"), params.at("angle_b"));
    }
    if (name == "maudlin") {
        return maudlin();
    }
    return unabsorbed_offer();
}

}  // namespace handshake::scenarios
