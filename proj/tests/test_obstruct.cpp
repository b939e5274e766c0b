#include <gtest/gtest.h>

#include <knotpos/io.hpp>
#include <knotpos/obstruct.hpp>

#include "generators.hpp"
#include "test_common.hpp"

using namespace knotpos;
using namespace knotpos::testing;

namespace {

const std::vector<TableEntry>& table() {
    static const std::vector<TableEntry> rows = [] {
        std::vector<TableEntry> out;
        for (const auto& line : read_lines(KNOTPOS_TABLE))
            if (!line.empty()) out.push_back(parse_table_entry(line));
        return out;
    }();
    return rows;
}

const TableEntry& entry(const std::string& name) {
    for (const auto& e : table())
        if (e.name == name) return e;
    throw std::runtime_error("no table entry " + name);
}

ProfileOptions with_dubrovnik() {
    ProfileOptions o;
    o.dubrovnik = true;
    return o;
}

InvariantProfile table_profile(const std::string& name, const ProfileOptions& opts = {}) {
    const TableEntry& e = entry(name);
    InvariantProfile p = build_profile(name, entry_diagram(e), opts);
    p.known = e.known;
    return p;
}

Outcome outcome_of(const std::vector<TestRecord>& recs, const std::string& id) {
    for (const auto& r : recs)
        if (r.id == id) return r.outcome;
    ADD_FAILURE() << "no record " << id;
    return Outcome::Inconclusive;
}

Outcome outcome_of(const ObstructionReport& rep, const std::string& id) { return outcome_of(rep.records, id); }

std::set<std::string> failing_ids(const ObstructionReport& r) {
    std::set<std::string> out;
    for (const auto& t : r.records)
        if (t.outcome == Outcome::Fail) out.insert(t.id);
    return out;
}

// Every optional external field, as a way to clear it on a copy.
std::vector<std::pair<std::string, std::function<void(ExternalData&)>>> external_fields() {
    return {
        {"genus", [](ExternalData& e) { e.genus.reset(); }},
        {"g4", [](ExternalData& e) { e.g4.reset(); }},
        {"chi", [](ExternalData& e) { e.chi.reset(); }},
        {"unknotting", [](ExternalData& e) { e.unknotting.reset(); }},
        {"u_plus", [](ExternalData& e) { e.u_plus.reset(); }},
        {"d_plus_trefoil", [](ExternalData& e) { e.d_plus_trefoil.reset(); }},
        {"tau", [](ExternalData& e) { e.tau.reset(); }},
        {"splitting_number", [](ExternalData& e) { e.splitting_number.reset(); }},
        {"u_comp", [](ExternalData& e) { e.u_comp.reset(); }},
        {"fibered", [](ExternalData& e) { e.fibered.reset(); }},
        {"prime", [](ExternalData& e) { e.prime.reset(); }},
        {"split", [](ExternalData& e) { e.split.reset(); }},
        {"bennequin_sharp", [](ExternalData& e) { e.bennequin_sharp.reset(); }},
        {"nontrivial", [](ExternalData& e) { e.nontrivial.reset(); }},
    };
}

}  // namespace

// ---------------------------------------------------------------------------
// Conway family

TEST(ConwayTests, DegreeFailureFor12n293) {
    auto recs = conway_tests(table_profile("12_1581"));
    EXPECT_EQ(outcome_of(recs, "conway.ii.degree"), Outcome::Fail);
}

TEST(ConwayTests, IntermediateUnitCoefficient) {
    // a_2 > a_4 = 1 with max deg 6.
    InvariantProfile p;
    p.name = "synthetic";
    p.components = 1;
    p.conway = z_poly("1 + 3*z^2 + z^4 + 2*z^6");
    p.signature = 2;
    auto recs = conway_tests(p);
    EXPECT_EQ(outcome_of(recs, "conway.a_j_one"), Outcome::Fail);
    for (const auto& r : recs)
        if (r.id == "conway.a_j_one") {
            EXPECT_NE(r.lhs.find("a_4 = 1"), std::string::npos);
            EXPECT_NE(r.rhs.find("6"), std::string::npos);
        }
}

TEST(ConwayTests, TrefoilPasses) {
    InvariantProfile p = table_profile("3_1");
    for (const auto& r : conway_tests(p)) EXPECT_NE(r.outcome, Outcome::Fail) << r.id << ": " << r.reason;
    EXPECT_EQ(outcome_of(conway_tests(p), "conway.iii.positive"), Outcome::Pass);
    EXPECT_EQ(outcome_of(conway_tests(p), "conway.char_trefoil"), Outcome::Pass);
}

TEST(ConwayTests, FigureEightFailsPositivity) {
    InvariantProfile p = build_profile("4_1", figure_eight());
    EXPECT_EQ(outcome_of(conway_tests(p), "conway.iii.positive"), Outcome::Fail);
}

// ---------------------------------------------------------------------------
// HOMFLY family

TEST(HomflyTests, Fixtures) {
    EXPECT_EQ(outcome_of(homfly_tests(table_profile("10_140")), "homfly.i-b"), Outcome::Fail);
    EXPECT_EQ(outcome_of(homfly_tests(build_profile("4_1", figure_eight())), "homfly.i-a"), Outcome::Fail);
    for (const auto& r : homfly_tests(table_profile("3_1"))) EXPECT_EQ(r.outcome, Outcome::Pass) << r.id << ": " << r.reason;
}

TEST(HomflyTests, FailuresInstantiateBothSides) {
    for (const char* name : {"10_140", "4_1", "10_132", "11_500"}) {
        ObstructionReport rep = run_battery(table_profile(name));
        for (const auto& r : rep.records)
            if (r.outcome == Outcome::Fail) {
                EXPECT_FALSE(r.lhs.empty()) << name << " " << r.id;
                EXPECT_FALSE(r.rhs.empty()) << name << " " << r.id;
                EXPECT_FALSE(r.citation.empty()) << name << " " << r.id;
            }
    }
}

// ---------------------------------------------------------------------------
// Jones family

TEST(JonesTests, Fixtures) {
    EXPECT_EQ(outcome_of(jones_tests(build_profile("4_1", figure_eight())), "jones.iii"), Outcome::Fail);
    auto t = jones_tests(build_profile("3_1", trefoil()));
    for (const auto& r : t) EXPECT_EQ(r.outcome, Outcome::Pass) << r.id << ": " << r.reason;
    EXPECT_EQ(outcome_of(jones_tests(build_profile("hopf", hopf())), "jones.i"), Outcome::Pass);
    EXPECT_EQ(outcome_of(jones_tests(build_profile("3_1*", mirror(trefoil()))), "jones.i"), Outcome::Fail);
}

// ---------------------------------------------------------------------------
// Signature family

TEST(SignatureTests, Fixtures) {
    EXPECT_EQ(outcome_of(signature_tests(table_profile("10_132")), "signature.positive"), Outcome::Fail);
    EXPECT_EQ(outcome_of(signature_tests(table_profile("3_1")), "signature.positive"), Outcome::Pass);
    EXPECT_EQ(outcome_of(signature_tests(table_profile("3_1")), "signature.deg_conway"), Outcome::Pass);
    EXPECT_NE(outcome_of(signature_tests(build_profile("0_1", unknot_diagram())), "signature.positive"), Outcome::Fail);
}

TEST(SignatureTests, LevineTristramPassesOnWeaklyPositiveDiagrams) {
    Rng rng(61);
    int checked = 0;
    for (int i = 0; checked < 30; ++i) {
        Diagram d = make_weakly_positive(random_diagram(rng, 2 + i % 3, 3 + i % 7, 0.5, i % 2));
        if (!is_weakly_positive(d)) continue;
        InvariantProfile p = build_profile("wp", d);
        EXPECT_EQ(outcome_of(signature_tests(p), "signature.levine_tristram"), Outcome::Pass) << to_pd(d);
        ++checked;
    }
}

// ---------------------------------------------------------------------------
// Unknotting family

TEST(UnknottingTests, Fixtures) {
    EXPECT_EQ(outcome_of(unknotting_tests(table_profile("11_500")), "unknotting.u_le_a2"), Outcome::Fail);
    EXPECT_EQ(outcome_of(unknotting_tests(table_profile("3_1")), "unknotting.u_le_a2"), Outcome::Pass);
    EXPECT_EQ(outcome_of(unknotting_tests(build_profile("3_1", trefoil())), "unknotting.u_le_a2"), Outcome::Inconclusive);
}

TEST(UnknottingTests, TorsionHelper) {
    TorsionBound a = torsion_test({3, 3});
    EXPECT_EQ(a.delta, 3);
    EXPECT_EQ(a.unknotting_lower, 2);
    EXPECT_EQ(a.trefoil_distance_lower, 0);
    TorsionBound b = torsion_test({5, 15, 25});
    EXPECT_EQ(b.delta, 5);
    EXPECT_EQ(b.unknotting_lower, 3);
    EXPECT_EQ(b.trefoil_distance_lower, 3);
    TorsionBound c = torsion_test({3, 5});
    EXPECT_EQ(c.delta, 1);
    EXPECT_EQ(c.unknotting_lower, 0);
}

// ---------------------------------------------------------------------------
// Bennequin-sharp family

TEST(BennequinSharpTests, Fixtures) {
    InvariantProfile p = table_profile("8_15");
    ASSERT_EQ(p.tag, PositivityTag::Positive);
    auto recs = bennequin_sharp_tests(p);
    EXPECT_EQ(outcome_of(recs, "bsharp.ii"), Outcome::Pass);
    EXPECT_EQ(p.homfly->min_x(), 4);
    EXPECT_EQ(p.homfly->max_y(), 4);
    for (const auto& r : recs) EXPECT_NE(r.outcome, Outcome::Fail) << r.id << ": " << r.reason;

    InvariantProfile t = table_profile("3_1");
    ASSERT_TRUE(t.known.fibered && *t.known.fibered);
    auto tr = bennequin_sharp_tests(t);
    EXPECT_EQ(outcome_of(tr, "bsharp.iv"), Outcome::Pass);
    EXPECT_EQ(outcome_of(tr, "bsharp.iv_fibered"), Outcome::Pass);
    EXPECT_EQ(homfly_coeff(*t.homfly, 2, 0), 2);
}

TEST(BennequinSharpTests, NotFlaggedSharp) {
    InvariantProfile p = build_profile("4_1", figure_eight());
    try {
        bennequin_sharp_tests(p);
        FAIL() << "expected NotFlaggedSharp";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotFlaggedSharp);
    }
    p.known.bennequin_sharp = true;
    EXPECT_NO_THROW(bennequin_sharp_tests(p));
}

// ---------------------------------------------------------------------------
// Battery

TEST(Battery, NamedVerdicts) {
    ObstructionReport r140 = run_battery(table_profile("10_140"), Target::Wsap);
    EXPECT_EQ(r140.verdict, Verdict::NotWSAP);
    EXPECT_EQ(r140.find("homfly.i-b")->outcome, Outcome::Fail);
    EXPECT_NE(r140.find("homfly.i-b")->citation.find("(i-b)"), std::string::npos);

    EXPECT_EQ(run_battery(table_profile("3_1"), Target::Wsap).verdict, Verdict::ConsistentWithWSAP);
    EXPECT_EQ(run_battery(table_profile("3_1"), Target::Wsap).count(Outcome::Fail), 0);

    ObstructionReport u = run_battery(build_profile("0_1", unknot_diagram(), with_dubrovnik()), Target::Positive);
    EXPECT_EQ(u.verdict, Verdict::ConsistentWithWSAP);

    EXPECT_EQ(run_battery(table_profile("10_132")).find("signature.positive")->outcome, Outcome::Fail);
    EXPECT_EQ(run_battery(table_profile("11_500")).find("unknotting.u_le_a2")->outcome, Outcome::Fail);
}

TEST(Battery, VerdictIsFailIffSomeRecordFails) {
    for (const auto& e : table()) {
        ObstructionReport r = run_battery(table_profile(e.name));
        EXPECT_EQ(r.verdict == Verdict::NotWSAP, r.count(Outcome::Fail) > 0) << e.name;
    }
}

TEST(Battery, RowCountIsIndependentOfInput) {
    size_t rows = run_battery(table_profile("3_1")).records.size();
    for (const auto& e : table()) EXPECT_EQ(run_battery(table_profile(e.name)).records.size(), rows) << e.name;
    EXPECT_EQ(run_battery(build_profile("0_1", unknot_diagram())).records.size(), rows);
    EXPECT_EQ(run_battery(build_profile("hopf", hopf())).records.size(), rows);
}

TEST(Battery, PositiveTargetIsMonotone) {
    for (const auto& e : table()) {
        InvariantProfile p = table_profile(e.name, with_dubrovnik());
        auto wsap = failing_ids(run_battery(p, Target::Wsap));
        auto pos = failing_ids(run_battery(p, Target::Positive));
        for (const auto& id : wsap) EXPECT_TRUE(pos.count(id)) << e.name << " " << id;
    }
}

TEST(Battery, DroppingExternalDataOnlyWeakens) {
    for (const auto& e : table()) {
        InvariantProfile full = table_profile(e.name);
        ObstructionReport base = run_battery(full);
        for (const auto& [field, clear] : external_fields()) {
            InvariantProfile less = full;
            clear(less.known);
            ObstructionReport r = run_battery(less);
            ASSERT_EQ(r.records.size(), base.records.size());
            for (size_t i = 0; i < r.records.size(); ++i) {
                ASSERT_EQ(r.records[i].id, base.records[i].id);
                if (r.records[i].outcome == Outcome::Inconclusive) continue;
                EXPECT_EQ(r.records[i].outcome, base.records[i].outcome)
                    << e.name << " without " << field << ": " << r.records[i].id;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Soundness: no false failures on certified diagrams

TEST(Soundness, CertifiedTableEntriesAreConsistent) {
    int certified = 0;
    for (const auto& e : table()) {
        Diagram d = entry_diagram(e);
        if (!classify(d).is_wsap()) continue;
        ++certified;
        for (Target t : {Target::Wsap, Target::Sap}) {
            ObstructionReport r = run_battery(table_profile(e.name), t);
            std::string first = r.count(Outcome::Fail) ? *failing_ids(r).begin() : "";
            EXPECT_EQ(r.verdict, Verdict::ConsistentWithWSAP) << e.name << " " << first;
        }
        if (classify(d).tag == PositivityTag::Positive) {
            ObstructionReport r = run_battery(table_profile(e.name, with_dubrovnik()), Target::Positive);
            EXPECT_EQ(r.verdict, Verdict::ConsistentWithWSAP) << e.name;
        }
    }
    EXPECT_GE(certified, 8);
}

TEST(Soundness, CertifiedCorpusDiagramsAreConsistent) {
    int certified = 0;
    auto check = [&](const std::string& name, const Diagram& d) {
        if (!classify(d).is_wsap()) return;
        ++certified;
        ObstructionReport r = run_battery(build_profile(name, d));
        std::string first = r.count(Outcome::Fail) ? *failing_ids(r).begin() : "";
        EXPECT_EQ(r.verdict, Verdict::ConsistentWithWSAP) << name << " " << first;
    };
    for (const auto& k : knot_corpus()) {
        check(k.name, k.diagram());
        check(k.name + "*", mirror(k.diagram()));
    }
    for (const auto& l : link_corpus()) {
        if (l.diagram().num_crossings() > 8) continue;
        check(l.name, l.diagram());
        check(l.name + "*", mirror(l.diagram()));
    }
    EXPECT_GT(certified, 30);
}

TEST(Soundness, GeneratedWsapDiagramsAreConsistent) {
    Rng rng(62);
    int checked = 0;
    for (int i = 0; checked < 60; ++i) {
        Diagram d = make_wsap(random_diagram(rng, 2 + i % 3, 3 + i % 8, 0.5, i % 2), rng, 1 + i % 5);
        if (!classify(d).is_wsap() || !d.is_connected()) continue;
        ObstructionReport r = run_battery(build_profile("generated", d));
        std::string first = r.count(Outcome::Fail) ? *failing_ids(r).begin() : "";
        EXPECT_EQ(r.verdict, Verdict::ConsistentWithWSAP) << to_pd(d) << " " << first;
        ++checked;
    }
}

// ---------------------------------------------------------------------------
// Serialization

TEST(Csv, HeaderAndQuoting) {
    EXPECT_EQ(csv_header(), "name,test_id,citation,outcome,lhs,rhs,reason\n");
    ObstructionReport r = run_battery(table_profile("10_140"));
    std::string csv = to_csv({r});
    size_t lines = std::count(csv.begin(), csv.end(), '\n');
    EXPECT_EQ(lines, r.records.size() + 1);
    EXPECT_NE(csv.find("10_140,homfly.i-b,"), std::string::npos);
}
