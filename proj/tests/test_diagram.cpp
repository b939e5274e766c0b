#include <gtest/gtest.h>

#include <knotpos/moves.hpp>
#include <knotpos/polynomials.hpp>
#include <knotpos/positivity.hpp>

#include "generators.hpp"
#include "test_common.hpp"

using namespace knotpos;
using namespace knotpos::testing;

namespace {

Errc error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return Errc::Internal;
}

// Independent orientation oracle: walking arcs label by label, every label
// is entered at one crossing and left at another.
bool labels_consistent(const std::string& pd_text) {
    Diagram d = parse_pd(pd_text);
    std::vector<int> in(d.num_arcs(), 0), out(d.num_arcs(), 0);
    for (const auto& c : d.crossings()) {
        ++in[c.ui];
        ++in[c.oi];
        ++out[c.uo];
        ++out[c.oo];
    }
    for (int a = 0; a < d.num_arcs(); ++a)
        if (in[a] != 1 || out[a] != 1) return false;
    return true;
}

Diagram relabel_pd(const Diagram& d, int shift) {
    // Rotate every component's labels by `shift` positions.
    std::string pd = to_pd(d);
    std::vector<int> labels;
    std::string out;
    size_t i = 0;
    while (i < pd.size()) {
        if (std::isdigit(static_cast<unsigned char>(pd[i]))) {
            size_t j = i;
            while (j < pd.size() && std::isdigit(static_cast<unsigned char>(pd[j]))) ++j;
            int v = std::stoi(pd.substr(i, j - i)) - 1;
            int k = d.comp_of_arc(v);
            int len = d.comp_size(k), base = d.comp_begin(k);
            out += std::to_string(base + (v - base + shift) % len + 1);
            i = j;
        } else {
            out += pd[i++];
        }
    }
    return parse_pd(out);
}

}  // namespace

// ---------------------------------------------------------------------------
// PD codec

TEST(ParsePd, SpecTrefoilHasThreeEqualSigns) {
    Diagram d = parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]");
    EXPECT_EQ(d.num_crossings(), 3);
    EXPECT_EQ(d.num_components(), 1);
    int s = d.crossing(0).sign;
    for (const auto& c : d.crossings()) EXPECT_EQ(c.sign, s);
    EXPECT_TRUE(labels_consistent("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]"));
    // Euler check on the 4-valent graph: V - E + F = 2.
    EXPECT_EQ(d.num_crossings() - 2 * d.num_crossings() + d.faces().count(), 2);
}

TEST(ParsePd, CirclesShorthand) {
    Diagram d = parse_pd("PD[]+O1");
    EXPECT_EQ(d.num_crossings(), 0);
    EXPECT_EQ(d.num_components(), 1);
    EXPECT_EQ(parse_pd("PD[] + O3").num_components(), 3);
}

TEST(ParsePd, LabelOccurringOnce) {
    EXPECT_EQ(error_of([] { parse_pd("PD[X[1,1,2,2],X[3,4,5,4]]"); }), Errc::ArcLabelNotTwice);
}

TEST(ParsePd, MalformedText) {
    EXPECT_EQ(error_of([] { parse_pd("PD[X[1,2,3]]"); }), Errc::MalformedSyntax);
    EXPECT_EQ(error_of([] { parse_pd("hello"); }), Errc::MalformedSyntax);
}

TEST(ParsePd, AcceptsBareListForm) {
    EXPECT_EQ(canonical_key(parse_pd("[[1,5,2,4],[3,1,4,6],[5,3,6,2]]")), canonical_key(trefoil()));
}

// ---------------------------------------------------------------------------
// Gauss codec

TEST(ParseGauss, TrefoilMatchesPd) {
    Diagram g = parse_gauss(kTrefoilGauss);
    EXPECT_EQ(g.num_crossings(), 3);
    EXPECT_EQ(g.c_plus(), 3);
    EXPECT_EQ(canonical_key(g), canonical_key(trefoil()));
}

TEST(ParseGauss, PositiveKink) {
    Diagram d = parse_gauss("O1+U1+");
    EXPECT_EQ(d.num_crossings(), 1);
    EXPECT_EQ(d.num_components(), 1);
    EXPECT_EQ(d.crossing(0).sign, 1);
}

TEST(ParseGauss, InterleavedChordsAreNotRealizable) {
    // Regression fixture: the planarity test rejects this chord pattern.
    EXPECT_EQ(error_of([] { parse_gauss("O1+O2+U1+U2+"); }), Errc::NonRealizable);
}

TEST(ParseGauss, UnpairedCrossing) {
    EXPECT_EQ(error_of([] { parse_gauss("O1+U2+"); }), Errc::UnpairedCrossing);
}

TEST(ParseGauss, MultiComponent) {
    Diagram h = parse_gauss("O1+U2+;U1+O2+");
    EXPECT_EQ(h.num_components(), 2);
    EXPECT_EQ(h.num_crossings(), 2);
    EXPECT_EQ(conway(h), z_poly("z"));
}

// ---------------------------------------------------------------------------
// Gauss diagrams and linking numbers

TEST(GaussDiagram, TrefoilArrows) {
    GaussDiagram g = to_gauss_diagram(trefoil());
    ASSERT_EQ(g.arrows.size(), 3u);
    std::set<int> ends;
    for (const auto& a : g.arrows) {
        EXPECT_EQ(a.sign, 1);
        ends.insert(a.tail);
        ends.insert(a.head);
    }
    EXPECT_EQ(ends.size(), 6u);
}

TEST(GaussDiagram, UnknotIsEmpty) { EXPECT_TRUE(to_gauss_diagram(unknot_diagram()).arrows.empty()); }

TEST(GaussDiagram, HopfArrowsJoinCircles) {
    GaussDiagram g = to_gauss_diagram(hopf(), {0, 1});
    ASSERT_EQ(g.arrows.size(), 2u);
    for (const auto& a : g.arrows) {
        EXPECT_EQ(a.sign, 1);
        EXPECT_NE(g.circle_of_position(a.tail), g.circle_of_position(a.head));
    }
}

TEST(GaussDiagram, BasepointOffComponent) {
    Diagram h = hopf();
    int wrong = h.comp_begin(1);
    EXPECT_EQ(error_of([&] { to_gauss_diagram(h, {0, 1}, {wrong, wrong}); }), Errc::BasepointOffComponent);
}

TEST(LinkingNumber, Fixtures) {
    GaussDiagram h = to_gauss_diagram(hopf());
    EXPECT_EQ(linking_number(h, 0, 1), 1);
    EXPECT_EQ(linking_number(h, 1, 0), 1);
    GaussDiagram u = to_gauss_diagram(unknot_diagram(2));
    EXPECT_TRUE(u.arrows.empty());
    EXPECT_EQ(linking_number(unknot_diagram(2), 0, 1), 0);
    GaussDiagram t = to_gauss_diagram(torus_2(4));
    EXPECT_EQ(linking_number(t, 0, 1), 2);
    EXPECT_EQ(linking_number(t, 1, 0), 2);
}

TEST(LinkingNumber, BothHeadDirectionsAgreeOnLinks) {
    for (const auto& l : link_corpus()) {
        Diagram d = l.diagram();
        GaussDiagram g = to_gauss_diagram(d);
        for (int i = 0; i < d.num_arc_components(); ++i)
            for (int j = i + 1; j < d.num_arc_components(); ++j)
                EXPECT_EQ(linking_number(g, i, j), linking_number(g, j, i)) << l.name;
    }
}

// ---------------------------------------------------------------------------
// Edits

TEST(Edits, HopfCrossingChangeGivesUnlink) {
    Diagram u = crossing_change(hopf(), 0);
    EXPECT_EQ(u.num_crossings(), 2);
    EXPECT_EQ(u.num_components(), 2);
    EXPECT_EQ(linking_number(u, 0, 1), 0);
    EXPECT_TRUE(conway(u).is_zero());
    EXPECT_EQ(simplify(u).num_crossings(), 0);
}

TEST(Edits, HopfSmoothingGivesKink) {
    Diagram k = smooth(hopf(), 0);
    EXPECT_EQ(k.num_components(), 1);
    EXPECT_EQ(k.num_crossings(), 1);
}

TEST(Edits, NoSuchCrossing) {
    EXPECT_EQ(error_of([] { crossing_change(hopf(), 5); }), Errc::NoSuchCrossing);
    EXPECT_EQ(error_of([] { smooth(hopf(), -1); }), Errc::NoSuchCrossing);
}

TEST(Edits, MirrorIsAnInvolution) {
    for (const auto& k : knots_up_to(7)) {
        Diagram d = k.diagram();
        EXPECT_EQ(canonical_key(mirror(mirror(d))), canonical_key(d)) << k.name;
    }
}

TEST(TwistMove, KinkKeepsGenusZero) {
    Diagram k = parse_gauss("O1+U1+");
    Diagram t = bt_twist(k, 0);
    EXPECT_EQ(t.num_crossings(), 3);
    EXPECT_EQ(t.c_minus(), 0);
    EXPECT_EQ(seifert_data(t).s, seifert_data(k).s + 2);
    EXPECT_EQ(seifert_data(t).genus, 0);
    EXPECT_EQ(conway(t), z_poly("1"));
}

TEST(TwistMove, HopfGivesAntiparallelTorusLink) {
    // A full twist of two antiparallel strands inserted at a Hopf crossing:
    // four positive clasp crossings, linking number 2, genus 0, so the
    // Conway polynomial is 2z.
    Diagram t = bt_twist(hopf(), 0);
    EXPECT_EQ(t.num_crossings(), 4);
    EXPECT_EQ(t.c_plus(), 4);
    EXPECT_EQ(linking_number(t, 0, 1), 2);
    EXPECT_EQ(conway(t), z_poly("2*z"));
}

TEST(TwistMove, TrefoilGivesFiveTwo) {
    Diagram t = bt_twist(trefoil(), 0);
    EXPECT_EQ(conway(t), z_poly("1+2*z^2"));
    EXPECT_EQ(determinant_from_conway(conway(t)), 7);
}

TEST(TwistMove, NegativeCrossingRejected) {
    EXPECT_EQ(error_of([] { bt_twist(negative_hopf(), 0); }), Errc::NegativeCrossing);
}

TEST(TwistMove, PreservesGenusOnRandomPositiveDiagrams) {
    Rng rng(11);
    int checked = 0;
    while (checked < 20) {
        Diagram d = make_positive(random_diagram(rng, 3, 3 + static_cast<int>(rng() % 5), 0.0));
        if (!d.is_connected() || d.num_crossings() == 0) continue;
        int c = static_cast<int>(rng() % d.num_crossings());
        Diagram t = bt_twist(d, c);
        SeifertData a = seifert_data(d), b = seifert_data(t);
        EXPECT_EQ(b.chi, a.chi);
        EXPECT_EQ(b.genus, a.genus);
        EXPECT_EQ(t.num_crossings(), d.num_crossings() + 2);
        ++checked;
    }
}

TEST(Sums, ConnectedSumOfTrefoils) {
    Diagram s = connected_sum(trefoil(), 0, trefoil(), 0);
    EXPECT_EQ(s.num_components(), 1);
    EXPECT_EQ(conway(s), z_poly("1+2*z^2+z^4"));
}

TEST(Sums, MurasugiSumOfHopfBands) {
    // Two Hopf bands plumbed together: a_{1-chi} of the sum is the product
    // of the a_1's, which is 1.
    Diagram h = hopf();
    Diagram m = murasugi_sum(h, 0, h, 1, Alignment{"1212", 0});
    SeifertData sd = seifert_data(m);
    EXPECT_EQ(sd.chi, -1);
    Poly1 n = conway(m);
    EXPECT_EQ(n.coeff(1 - sd.chi), 1);
    EXPECT_EQ(n, z_poly("1+z^2"));
}

TEST(Sums, MurasugiSeifertGraphIsJoin) {
    Diagram h = hopf();
    Diagram m = murasugi_sum(h, 0, h, 1, Alignment{"1122", 0});
    SeifertData sd = seifert_data(m);
    EXPECT_EQ(sd.s, 2 + 2 - 1);
    EXPECT_EQ(static_cast<int>(sd.edges.size()), 4);
    EXPECT_EQ(conway(m).coeff(1 - sd.chi), 1);
}

TEST(Sums, MurasugiRejectsMiddleCircle) {
    Diagram b = braid_closure(3, {1, 1, 2, 2});
    EXPECT_EQ(error_of([&] { murasugi_sum(b, 1, hopf(), 0, Alignment{"1212", 0}); }), Errc::NotInnermost);
}

TEST(Sums, MurasugiRejectsBadPattern) {
    EXPECT_EQ(error_of([] { murasugi_sum(hopf(), 0, hopf(), 1, Alignment{"12", 0}); }), Errc::InvalidAlignment);
}

// ---------------------------------------------------------------------------
// Reidemeister perturbations

TEST(Reidemeister, KinkOnUnknot) {
    EXPECT_EQ(perturb_reidemeister(unknot_diagram(), Move::R1, 3).num_crossings(), 1);
}

TEST(Reidemeister, R2OnTrefoilKeepsJones) {
    Diagram d = perturb_reidemeister(trefoil(), Move::R2, 7);
    EXPECT_EQ(d.num_crossings(), 5);
    EXPECT_EQ(jones_bracket(d), jones_bracket(trefoil()));
}

TEST(Reidemeister, R3NeedsATriangle) {
    EXPECT_EQ(error_of([] { perturb_reidemeister(unknot_diagram(), Move::R3, 1); }), Errc::NoValidSite);
}

TEST(Reidemeister, SeedIsDeterministic) {
    Diagram a = perturb_reidemeister(figure_eight(), Move::R2, 42);
    Diagram b = perturb_reidemeister(figure_eight(), Move::R2, 42);
    EXPECT_EQ(to_pd(a), to_pd(b));
}

// ---------------------------------------------------------------------------
// Canonical keys

TEST(CanonicalKey, RelabelingInvariance) {
    Diagram t = trefoil();
    for (int shift = 1; shift < 6; ++shift) EXPECT_EQ(canonical_key(relabel_pd(t, shift)), canonical_key(t));
}

TEST(CanonicalKey, MirrorDiffers) { EXPECT_NE(canonical_key(mirror(trefoil())), canonical_key(trefoil())); }

TEST(CanonicalKey, EncodesCircleCount) {
    EXPECT_NE(canonical_key(unknot_diagram(1)), canonical_key(unknot_diagram(2)));
    EXPECT_EQ(canonical_key(unknot_diagram(3)), canonical_key(parse_pd("PD[]+O3")));
}

// ---------------------------------------------------------------------------
// Properties

TEST(DiagramProperties, RoundTripsOnCorpus) {
    for (const auto& k : knot_corpus()) {
        Diagram d = k.diagram();
        EXPECT_EQ(canonical_key(parse_pd(to_pd(d))), canonical_key(d)) << k.name;
        EXPECT_EQ(canonical_key(parse_gauss(to_gauss(d))), canonical_key(d)) << k.name;
    }
    for (const auto& l : link_corpus()) {
        Diagram d = l.diagram();
        EXPECT_EQ(l.components, d.num_components()) << l.name;
        EXPECT_EQ(canonical_key(parse_pd(to_pd(d))), canonical_key(d)) << l.name;
        EXPECT_EQ(canonical_key(parse_gauss(to_gauss(d))), canonical_key(d)) << l.name;
    }
}

TEST(DiagramProperties, WritheAndMirror) {
    Rng rng(5);
    for (int i = 0; i < 60; ++i) {
        Diagram d = random_diagram(rng, 2 + i % 3, 2 + i % 7, 0.4, i % 4);
        int plus = 0, minus = 0;
        for (const auto& c : d.crossings()) (c.sign > 0 ? plus : minus)++;
        EXPECT_EQ(d.writhe(), plus - minus);
        EXPECT_EQ(mirror(d).writhe(), -d.writhe());
    }
}

TEST(DiagramProperties, SmoothingChangesComponentsByOne) {
    Rng rng(6);
    for (int i = 0; i < 80; ++i) {
        Diagram d = random_diagram(rng, 3, 3 + i % 6, 0.5, i % 3);
        if (d.num_crossings() == 0) continue;
        int c = static_cast<int>(rng() % d.num_crossings());
        bool self = d.over_comp(c) == d.under_comp(c);
        EXPECT_EQ(smooth(d, c).num_components(), d.num_components() + (self ? 1 : -1));
    }
}

TEST(DiagramProperties, WeaklyPositiveHaveNonnegativeLinking) {
    Rng rng(7);
    int seen = 0;
    for (int i = 0; i < 200 && seen < 60; ++i) {
        Diagram d = make_weakly_positive(random_diagram(rng, 3 + i % 2, 4 + i % 6, 0.5, i % 3));
        if (d.num_components() < 2 || !is_weakly_positive(d)) continue;
        ++seen;
        for (int a = 0; a < d.num_components(); ++a)
            for (int b = a + 1; b < d.num_components(); ++b) EXPECT_GE(linking_number(d, a, b), 0);
    }
    EXPECT_GE(seen, 30);
}
