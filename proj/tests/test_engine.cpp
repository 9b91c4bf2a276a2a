#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cascade_cases.hpp"
#include "handshake/engine.hpp"
#include "handshake/errors.hpp"
#include "handshake/qcore.hpp"
#include "handshake/rng.hpp"
#include "oracle.hpp"
#include "testutil.hpp"

using namespace handshake;
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

namespace {

const double kInvSqrt2 = 0.70710678118654752440;

BasisPtr qubit() { return Basis::make({"0", "1"}); }

StateVector plus_state(const BasisPtr& space) {
    return StateVector(space, {Complex(kInvSqrt2, 0), Complex(kInvSqrt2, 0)});
}

OfferWave offer_at_origin(StateVector state) {
    return OfferWave("emitter", std::move(state), SpacetimeEvent{});
}

StateVector singlet() {
    auto composite = qcore::tensor_basis(engine::spin_space(), engine::spin_space());
    return StateVector(composite, {Complex(0, 0), Complex(kInvSqrt2, 0), Complex(-kInvSqrt2, 0),
                                   Complex(0, 0)});
}

}  // namespace

TEST_CASE("interval_squared basics and Lorentz invariance") {
    SpacetimeEvent origin{};
    CHECK(engine::interval_squared(origin, origin) == 0.0);

    SpacetimeEvent moved(2.0, {1.0, 0.0, 0.0});
    CHECK(engine::interval_squared(moved, origin) == 3.0);
    CHECK(engine::interval_squared(origin, moved) == 3.0);

    std::mt19937_64 gen(8101);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    for (int rep = 0; rep < 200; ++rep) {
        oracle::Event a{coord(gen), {coord(gen), coord(gen), coord(gen)}};
        oracle::Event b{coord(gen), {coord(gen), coord(gen), coord(gen)}};
        const double beta = std::uniform_real_distribution<double>(-0.9, 0.9)(gen);
        const oracle::Event ab = oracle::boost_x(a, beta);
        const oracle::Event bb = oracle::boost_x(b, beta);
        const double before = engine::interval_squared(SpacetimeEvent(a.t, a.x),
                                                       SpacetimeEvent(b.t, b.x));
        const double after = engine::interval_squared(SpacetimeEvent(ab.t, ab.x),
                                                      SpacetimeEvent(bb.t, bb.x));
        CHECK(std::abs(before - after) < 1e-9);
    }
}

TEST_CASE("build_cascade orders absorbers into stages by interval") {
    auto space = qubit();
    auto p0 = qcore::projector_onto_labels(space, {"0"});
    auto p1 = qcore::projector_onto_labels(space, {"1"});

    SUBCASE("distinct intervals become distinct stages, nearest first") {
        // declared far-first to prove ordering is by interval, not declaration
        std::vector<Absorber> absorbers;
        absorbers.emplace_back("far", "far", p1, SpacetimeEvent(2.0, {0.0, 0.0, 0.0}));
        absorbers.emplace_back("near", "near", p0, SpacetimeEvent(1.0, {0.0, 0.0, 0.0}));
        auto cascade = engine::build_cascade(offer_at_origin(plus_state(space)), absorbers);
        REQUIRE(cascade.stages().size() == 2);
        CHECK(cascade.stages()[0].stage_rank == 0);
        CHECK(cascade.stages()[0].absorbers.size() == 1);
        CHECK(cascade.stages()[0].absorbers[0].id() == "near");
        CHECK(cascade.stages()[1].stage_rank == 1);
        CHECK(cascade.stages()[1].absorbers[0].id() == "far");
    }

    SUBCASE("equal intervals share a stage") {
        std::vector<Absorber> absorbers;
        absorbers.emplace_back("x", "x", p0, SpacetimeEvent(1.0, {0.3, 0.0, 0.0}));
        absorbers.emplace_back("y", "y", p1, SpacetimeEvent(1.0, {-0.3, 0.0, 0.0}));
        auto cascade = engine::build_cascade(offer_at_origin(plus_state(space)), absorbers);
        REQUIRE(cascade.stages().size() == 1);
        CHECK(cascade.stages()[0].absorbers.size() == 2);
    }

    SUBCASE("empty absorber list builds an absorber-free cascade") {
        auto cascade = engine::build_cascade(offer_at_origin(plus_state(space)), {});
        CHECK(cascade.absorber_free());
        CHECK(cascade.stages().empty());
    }

    SUBCASE("overlapping projectors forced into one stage are rejected") {
        std::vector<Absorber> absorbers;
        absorbers.emplace_back("x", "x", p0, SpacetimeEvent(1.0, {0.3, 0.0, 0.0}));
        absorbers.emplace_back("y", "y", qcore::projector_onto(plus_state(space)),
                               SpacetimeEvent(1.0, {-0.3, 0.0, 0.0}));
        CHECK_THROWS_AS(engine::build_cascade(offer_at_origin(plus_state(space)), absorbers),
                        InvalidAbsorberSetError);
    }

    SUBCASE("propagation indices must name stages") {
        std::vector<Absorber> absorbers;
        absorbers.emplace_back("x", "x", p0, SpacetimeEvent(1.0, {0.0, 0.0, 0.0}));
        CHECK_THROWS_AS(engine::build_cascade(offer_at_origin(plus_state(space)), absorbers,
                                              {{1, Operator::identity(space)}}),
                        ParameterError);
    }
}

TEST_CASE("cascade construction guards") {
    auto space = qubit();
    auto p0 = qcore::projector_onto_labels(space, {"0"});
    auto p1 = qcore::projector_onto_labels(space, {"1"});

    SUBCASE("reserved outcome label") {
        std::vector<Absorber> absorbers;
        absorbers.emplace_back("x", "NoTransaction", p0, SpacetimeEvent(1.0, {0.0, 0.0, 0.0}));
        CHECK_THROWS_AS(engine::build_cascade(offer_at_origin(plus_state(space)), absorbers),
                        ParameterError);
    }
    SUBCASE("duplicate absorber ids") {
        std::vector<Absorber> absorbers;
        absorbers.emplace_back("x", "a", p0, SpacetimeEvent(1.0, {0.0, 0.0, 0.0}));
        absorbers.emplace_back("x", "b", p1, SpacetimeEvent(2.0, {0.0, 0.0, 0.0}));
        CHECK_THROWS_AS(engine::build_cascade(offer_at_origin(plus_state(space)), absorbers),
                        ParameterError);
    }
    SUBCASE("stage ranks must increase") {
        CascadeStage s0{std::nullopt, {Absorber("x", "a", p0, SpacetimeEvent{})}, 1};
        CascadeStage s1{std::nullopt, {Absorber("y", "b", p1, SpacetimeEvent{})}, 1};
        CHECK_THROWS_AS(Cascade::make(offer_at_origin(plus_state(space)), {s0, s1}),
                        ParameterError);
    }
    SUBCASE("non-unitary propagation is rejected") {
        CascadeStage s0{p0, {Absorber("x", "a", p0, SpacetimeEvent{})}, 0};
        CHECK_THROWS_AS(Cascade::make(offer_at_origin(plus_state(space)), {s0}),
                        InvalidOperatorError);
    }
}

TEST_CASE("gather_confirmations weights available absorbers by the Born rule") {
    auto space = qubit();
    auto p0 = qcore::projector_onto_labels(space, {"0"});
    auto p1 = qcore::projector_onto_labels(space, {"1"});

    CascadeStage stage{std::nullopt,
                       {Absorber("a0", "zero", p0, SpacetimeEvent(1.0, {0.0, 0.0, 0.0})),
                        Absorber("a1", "one", p1, SpacetimeEvent(1.0, {0.0, 0.0, 0.0}))},
                       0};
    auto cws = engine::gather_confirmations(plus_state(space), stage, {});
    REQUIRE(cws.size() == 2);
    CHECK(cws[0].absorber_id == "a0");
    CHECK(cws[0].weight == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cws[1].weight == doctest::Approx(0.5).epsilon(1e-12));
    // Matrix oracle agrees.
    CHECK(cws[0].weight ==
          doctest::Approx(oracle::weight(oracle::basis_projector(2, 0),
                                         {oracle::cx(kInvSqrt2, 0), oracle::cx(kInvSqrt2, 0)}))
              .epsilon(1e-14));

    SUBCASE("unavailable absorbers answer nothing") {
        CascadeStage gated{std::nullopt,
                           {Absorber::contingent("a0", "zero", p0, SpacetimeEvent{},
                                                 [](const engine::ResolutionHistory&) {
                                                     return false;
                                                 }),
                            Absorber("a1", "one", p1, SpacetimeEvent{})},
                           0};
        auto gated_cws = engine::gather_confirmations(plus_state(space), gated, {});
        REQUIRE(gated_cws.size() == 1);
        CHECK(gated_cws[0].absorber_id == "a1");
    }

    SUBCASE("near-zero weights still answer") {
        auto zero_state = StateVector::basis_state(space, "0");
        auto weights = engine::gather_confirmations(zero_state, stage, {});
        REQUIRE(weights.size() == 2);
        CHECK(weights[1].weight == 0.0);
    }
}

TEST_CASE("form_incipient pairs confirmations with the offer deterministically") {
    auto space = qubit();
    auto p0 = qcore::projector_onto_labels(space, {"0"});
    auto p1 = qcore::projector_onto_labels(space, {"1"});
    auto offer = offer_at_origin(plus_state(space));

    CascadeStage stage{std::nullopt,
                       {Absorber("zz", "one", p1, SpacetimeEvent(2.0, {0.0, 0.0, 0.0})),
                        Absorber("aa", "zero", p0, SpacetimeEvent(1.0, {0.0, 0.0, 0.0}))},
                       0};

    auto cws = engine::gather_confirmations(plus_state(space), stage, {});
    auto transactions = engine::form_incipient(offer, cws, stage);
    REQUIRE(transactions.size() == 2);
    CHECK(transactions[0].absorber_id == "aa");  // lexicographic, not declaration order
    CHECK(transactions[1].absorber_id == "zz");
    CHECK(transactions[0].weight == cws[0].weight);
    CHECK(transactions[0].interval2 == doctest::Approx(1.0));
    CHECK(transactions[1].interval2 == doctest::Approx(4.0));
    CHECK(transactions[0].emitter_id == "emitter");

    CHECK(engine::form_incipient(offer, {}, stage).empty());
}

TEST_CASE("assert_conservation separates dead branches from live violations") {
    engine::ConservationRule rule;
    rule.quantity_name = "total spin-z projection";
    rule.outcome_value = {{"++", 1.0}, {"+-", 0.0}, {"-+", 0.0}, {"--", -1.0}};
    rule.emitted_value = 0.0;
    rule.applicability = [](const std::map<std::string, double>& settings) {
        return settings.at("angle_a") == 0.0 && settings.at("angle_b") == 0.0;
    };

    SUBCASE("singlet along z is clean with two dead branches") {
        auto absorbers = engine::joint_absorbers(0.0, 0.0);
        CascadeStage stage{std::nullopt, absorbers, 0};
        std::sort(stage.absorbers.begin(), stage.absorbers.end(),
                  [](const Absorber& a, const Absorber& b) { return a.id() < b.id(); });
        auto offer = offer_at_origin(singlet());
        auto cws = engine::gather_confirmations(singlet(), stage, {});
        auto transactions = engine::form_incipient(offer, cws, stage);

        auto report = engine::assert_conservation(transactions, rule,
                                                  {{"angle_a", 0.0}, {"angle_b", 0.0}});
        CHECK(report.status == engine::ConservationStatus::Clean);
        REQUIRE(report.dead_branches.size() == 2);
        std::set<std::string> dead;
        for (const auto& d : report.dead_branches) dead.insert(d.outcome_label);
        CHECK(dead == std::set<std::string>{"++", "--"});
    }

    SUBCASE("different axes make the rule not applicable") {
        auto report =
            engine::assert_conservation({}, rule, {{"angle_a", 0.0}, {"angle_b", 1.0}});
        CHECK(report.status == engine::ConservationStatus::NotApplicable);
    }

    SUBCASE("a weighted violating transaction throws") {
        std::vector<engine::IncipientTransaction> bogus = {
            {"emitter", "AB_++", "++", 0.1, 0.75}};
        CHECK_THROWS_AS(engine::assert_conservation(bogus, rule,
                                                    {{"angle_a", 0.0}, {"angle_b", 0.0}}),
                        ConservationViolationError);
    }

    SUBCASE("missing outcome entry is a rule construction bug") {
        std::vector<engine::IncipientTransaction> odd = {{"emitter", "X", "??", 0.1, 0.75}};
        CHECK_THROWS_AS(
            engine::assert_conservation(odd, rule, {{"angle_a", 0.0}, {"angle_b", 0.0}}),
            ParameterError);
    }
}

TEST_CASE("resolve_stage draws by weight and projects out failures") {
    auto space = qubit();
    auto p0 = qcore::projector_onto_labels(space, {"0"});
    auto p1 = qcore::projector_onto_labels(space, {"1"});

    SUBCASE("complete stage reproduces the projective-measurement oracle") {
        CascadeStage stage{std::nullopt,
                           {Absorber("a0", "zero", p0, SpacetimeEvent{}),
                            Absorber("a1", "one", p1, SpacetimeEvent{})},
                           0};
        std::map<std::string, int> counts;
        const int n = 100000;
        for (int i = 0; i < n; ++i) {
            rng::RandomStream stream(901, static_cast<std::uint64_t>(i));
            auto r = engine::resolve_stage(plus_state(space), stage, {}, stream);
            REQUIRE(r.formed);
            counts[r.outcome_label]++;
        }
        CHECK(std::abs(counts["zero"] / double(n) - 0.5) < 0.01);
        CHECK(std::abs(counts["one"] / double(n) - 0.5) < 0.01);
    }

    SUBCASE("failed stage leaves the exact orthogonal residue") {
        CascadeStage stage{std::nullopt, {Absorber("A", "A", p0, SpacetimeEvent{})}, 0};
        bool saw_failure = false;
        for (int i = 0; i < 64 && !saw_failure; ++i) {
            rng::RandomStream stream(902, static_cast<std::uint64_t>(i));
            auto r = engine::resolve_stage(plus_state(space), stage, {}, stream);
            if (r.formed) continue;
            saw_failure = true;
            REQUIRE(r.next_state.has_value());
            CHECK(r.next_state->amplitude(0) == Complex(0.0, 0.0));
            CHECK(r.next_state->amplitude(1) == Complex(1.0, 0.0));
        }
        CHECK(saw_failure);
    }

    SUBCASE("empty stage fails with the state untouched") {
        CascadeStage stage{std::nullopt, {}, 0};
        rng::RandomStream stream(903);
        auto r = engine::resolve_stage(plus_state(space), stage, {}, stream);
        CHECK_FALSE(r.formed);
        CHECK(r.transactions.empty());
        REQUIRE(r.next_state.has_value());
        CHECK(r.next_state->amplitude(0) == plus_state(space).amplitude(0));
    }

    SUBCASE("weights summing past one reject the stage") {
        CascadeStage overlap{std::nullopt,
                             {Absorber("a", "a", p0, SpacetimeEvent{}),
                              Absorber("b", "b", qcore::projector_onto(plus_state(space)),
                                       SpacetimeEvent{})},
                             0};
        rng::RandomStream stream(904);
        CHECK_THROWS_AS(engine::resolve_stage(StateVector::basis_state(space, "0"), overlap, {},
                                              stream),
                        InvalidStageError);
    }

    SUBCASE("sub-floor weights never actualize") {
        auto three = testutil::numbered_basis(3);
        // Weight 1e-14 on outcome 1: an answering absorber whose band is a
        // numerical zero.
        StateVector state(three, {Complex(std::sqrt(0.5), 0), Complex(1e-7, 0),
                                  Complex(std::sqrt(0.5 - 1e-14), 0)});
        REQUIRE(state.is_normalized());
        CascadeStage stage{std::nullopt,
                           {Absorber("dust", "dust",
                                     qcore::projector_onto_labels(three, {"1"}),
                                     SpacetimeEvent{}),
                            Absorber("real", "real",
                                     qcore::projector_onto_labels(three, {"0"}),
                                     SpacetimeEvent{})},
                           0};
        int real_count = 0;
        for (int i = 0; i < 10000; ++i) {
            rng::RandomStream stream(915, static_cast<std::uint64_t>(i));
            auto r = engine::resolve_stage(state, stage, {}, stream);
            REQUIRE(r.transactions.size() == 2);  // the dust absorber still answers
            if (r.formed) {
                CHECK(r.outcome_label == "real");
                ++real_count;
            }
        }
        CHECK(std::abs(real_count / 10000.0 - 0.5) < 0.025);
    }

    SUBCASE("residue after a failed stage is normalized") {
        std::mt19937_64 gen(905);
        auto big = testutil::numbered_basis(6);
        for (int rep = 0; rep < 40; ++rep) {
            auto v = testutil::random_state(big, gen);
            CascadeStage stage{std::nullopt,
                               {Absorber("s", "s",
                                         qcore::projector_onto_labels(big, {"0", "3"}),
                                         SpacetimeEvent{})},
                               0};
            for (int i = 0; i < 32; ++i) {
                rng::RandomStream stream(906, static_cast<std::uint64_t>(rep * 64 + i));
                auto r = engine::resolve_stage(v, stage, {}, stream);
                if (r.formed) continue;
                REQUIRE(r.next_state.has_value());
                CHECK(std::abs(r.next_state->norm_squared() - 1.0) < 1e-10);
                break;
            }
        }
    }
}

TEST_CASE("resolve_cascade: absorber-free offer waves persist") {
    auto space = qubit();
    auto cascade = engine::build_cascade(offer_at_origin(plus_state(space)), {});
    for (int i = 0; i < 200; ++i) {
        rng::RandomStream stream(907, static_cast<std::uint64_t>(i));
        auto outcome = engine::resolve_cascade(cascade, stream);
        CHECK(outcome.no_transaction());
        CHECK(outcome.history.empty());
        REQUIRE(outcome.residual_state.has_value());
        CHECK(outcome.residual_state->amplitude(0) == plus_state(space).amplitude(0));
        CHECK(outcome.residual_state->amplitude(1) == plus_state(space).amplitude(1));
        CHECK(std::abs(outcome.residual_state->norm_squared() - 1.0) < 1e-12);
    }
}

TEST_CASE("hierarchy marginal invariance: stage partition never shifts the Born weights") {
    std::mt19937_64 gen(908);
    for (int rep = 0; rep < 60; ++rep) {
        auto c = testutil::random_noncontingent_case(gen);
        auto analysis = engine::analyze_cascade(c.cascade);
        double mass = analysis.no_transaction;
        for (const auto& [label, p] : analysis.probabilities) {
            CHECK(std::abs(p - c.single_stage_weights.at(label)) < 1e-12);
            mass += p;
        }
        CHECK(std::abs(mass - 1.0) < 1e-12);
        CHECK(std::abs(analysis.no_transaction - c.unabsorbed) < 1e-12);
    }
}

TEST_CASE("sampled frequencies track the analytic cascade distribution") {
    std::mt19937_64 gen(909);
    auto c = testutil::random_noncontingent_case(gen);
    auto analysis = engine::analyze_cascade(c.cascade);

    const int n = 40000;
    std::map<std::string, int> counts;
    for (int i = 0; i < n; ++i) {
        rng::RandomStream stream(910, static_cast<std::uint64_t>(i));
        auto outcome = engine::resolve_cascade(c.cascade, stream);
        counts[outcome.actualized ? outcome.actualized->outcome_label : "none"]++;
        // Single actualization: at most one formed record per history.
        int formed = 0;
        for (const auto& rec : outcome.history) formed += rec.formed ? 1 : 0;
        CHECK(formed <= 1);
    }
    for (const auto& [label, p] : analysis.probabilities) {
        const double freq = counts[label] / double(n);
        CHECK(std::abs(freq - p) < 4.0 * std::sqrt(p * (1.0 - p) / n) + 1e-9);
    }
    const double none_freq = counts["none"] / double(n);
    const double q = analysis.no_transaction;
    CHECK(std::abs(none_freq - q) < 4.0 * std::sqrt(q * (1.0 - q) / n) + 1e-9);
}

TEST_CASE("absorber enumeration order changes nothing") {
    auto space = testutil::numbered_basis(4);
    const double h = 0.5;
    StateVector state(space, {Complex(h, 0), Complex(h, 0), Complex(h, 0), Complex(h, 0)});

    auto make = [&](bool reversed) {
        std::vector<Absorber> absorbers;
        for (std::size_t k = 0; k < 4; ++k) {
            const std::string id = "d" + std::to_string(k);
            absorbers.emplace_back(id, id,
                                   qcore::projector_onto_labels(space, {std::to_string(k)}),
                                   SpacetimeEvent(1.0 + 0.5 * double(k % 2), {0.0, 0.0, 0.0}));
        }
        if (reversed) std::reverse(absorbers.begin(), absorbers.end());
        return engine::build_cascade(offer_at_origin(state), absorbers);
    };

    auto forward = make(false);
    auto backward = make(true);

    auto a1 = engine::analyze_cascade(forward);
    auto a2 = engine::analyze_cascade(backward);
    REQUIRE(a1.probabilities.size() == a2.probabilities.size());
    for (const auto& [label, p] : a1.probabilities) {
        CHECK(a2.probabilities.at(label) == p);  // exact: canonical internal order
    }

    for (int i = 0; i < 500; ++i) {
        rng::RandomStream s1(911, static_cast<std::uint64_t>(i));
        rng::RandomStream s2(911, static_cast<std::uint64_t>(i));
        auto o1 = engine::resolve_cascade(forward, s1);
        auto o2 = engine::resolve_cascade(backward, s2);
        REQUIRE(o1.actualized.has_value());
        REQUIRE(o2.actualized.has_value());
        CHECK(o1.actualized->outcome_label == o2.actualized->outcome_label);
    }
}

TEST_CASE("joint_absorbers reproduce the singlet joint distribution") {
    auto offer = offer_at_origin(singlet());

    SUBCASE("along z: equal outcomes are exactly dead") {
        auto cascade = engine::build_cascade(offer, engine::joint_absorbers(0.0, 0.0));
        REQUIRE(cascade.stages().size() == 1);
        auto cws = engine::gather_confirmations(singlet(), cascade.stages()[0], {});
        auto ts = engine::form_incipient(offer, cws, cascade.stages()[0]);
        REQUIRE(ts.size() == 4);
        std::map<std::string, double> weights;
        for (const auto& t : ts) weights[t.outcome_label] = t.weight;
        CHECK(weights.at("++") == 0.0);
        CHECK(weights.at("--") == 0.0);
        CHECK(weights.at("+-") == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(weights.at("-+") == doctest::Approx(0.5).epsilon(1e-14));
    }

    SUBCASE("joint weights match the closed-form singlet oracle across angles") {
        const std::vector<std::pair<double, double>> grid = {
            {0.0, 1.5707963267948966}, {0.3, 1.1}, {2.5, 0.4}, {-0.7, 0.9}, {1.0, 1.0}};
        for (const auto& [a, b] : grid) {
            auto cascade = engine::build_cascade(offer, engine::joint_absorbers(a, b));
            auto analysis = engine::analyze_cascade(cascade);
            for (const auto& [sa, sb] : std::vector<std::pair<int, int>>{
                     {+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}}) {
                const std::string label =
                    std::string(sa > 0 ? "+" : "-") + (sb > 0 ? "+" : "-");
                const double expect = oracle::singlet_joint_probability(a, b, sa, sb);
                CHECK(std::abs(analysis.probabilities.at(label) - expect) < 1e-12);
            }
            // Analytic correlation telescopes to -cos(a - b).
            const double e = analysis.probabilities.at("++") + analysis.probabilities.at("--") -
                             analysis.probabilities.at("+-") - analysis.probabilities.at("-+");
            CHECK(std::abs(e - oracle::singlet_correlation(a, b)) < 1e-12);
        }
    }

    SUBCASE("identical settings leave equal outcomes weightless") {
        auto cascade = engine::build_cascade(offer, engine::joint_absorbers(0.7, 0.7));
        auto analysis = engine::analyze_cascade(cascade);
        CHECK(analysis.probabilities.at("++") <= 1e-15);
        CHECK(analysis.probabilities.at("--") <= 1e-15);
    }
}

TEST_CASE("conservation assertion runs inside cascade resolution") {
    // A deliberately corrupt rule: it demands the singlet's live branches be
    // dead, so resolving along z must throw.
    engine::ConservationRule wrong;
    wrong.quantity_name = "corrupt";
    wrong.outcome_value = {{"++", 0.0}, {"+-", 1.0}, {"-+", 1.0}, {"--", 0.0}};
    wrong.emitted_value = 0.0;
    wrong.applicability = [](const std::map<std::string, double>&) { return true; };

    auto cascade = engine::build_cascade(offer_at_origin(singlet()),
                                         engine::joint_absorbers(0.0, 0.0), {}, wrong, {});
    rng::RandomStream stream(912);
    CHECK_THROWS_AS(engine::resolve_cascade(cascade, stream), ConservationViolationError);
    CHECK_THROWS_AS(engine::analyze_cascade(cascade), ConservationViolationError);
}
