#pragma once

// Random diagram generators for property tests.

#include <random>
#include <set>
#include <vector>

#include <knotpos/diagram.hpp>
#include <knotpos/moves.hpp>
#include <knotpos/positivity.hpp>

namespace knotpos::testing {

using Rng = std::mt19937_64;

inline std::vector<int> random_braid_word(Rng& rng, int strands, int length, double negative_prob) {
    std::uniform_int_distribution<int> gen(1, strands - 1);
    std::bernoulli_distribution neg(negative_prob);
    std::vector<int> w;
    for (int i = 0; i < length; ++i) w.push_back(neg(rng) ? -gen(rng) : gen(rng));
    return w;
}

// A random braid closure, optionally roughened by Reidemeister moves so
// that it is no longer braided.
inline Diagram random_diagram(Rng& rng, int strands, int length, double negative_prob, int moves = 0) {
    Diagram d = braid_closure(strands, random_braid_word(rng, strands, length, negative_prob));
    for (int i = 0; i < moves; ++i) {
        Move mv = static_cast<Move>(rng() % 3);
        try {
            d = perturb_reidemeister(d, mv, rng());
        } catch (const Error&) {
        }
    }
    return d;
}

inline Diagram make_positive(Diagram d) {
    for (int x = 0; x < d.num_crossings(); ++x)
        if (d.crossing(x).sign < 0) d = crossing_change(d, x);
    return d;
}

// Forces a stretch of up to `length` passages after a random arc to pass
// over, then makes every crossing off that stretch positive.
inline Diagram make_wsap(Diagram d, Rng& rng, int length) {
    if (d.num_crossings() == 0) return d;
    int a = static_cast<int>(rng() % d.num_arcs());
    std::set<int> on_run;
    for (int i = 0; i < length; ++i) {
        int x = d.head(a);
        if (on_run.count(x)) break;
        if (!d.head_over(a)) d = crossing_change(d, x);
        on_run.insert(x);
        a = d.next_arc(a);
    }
    for (int x = 0; x < d.num_crossings(); ++x)
        if (!on_run.count(x) && d.crossing(x).sign < 0) d = crossing_change(d, x);
    return d;
}

// Makes every negative crossing that is met first at its underpass, under
// the diagram's own order and basepoints, positive.
inline Diagram make_weakly_positive(Diagram d) {
    GaussDiagram g = to_gauss_diagram(d);
    for (const auto& ar : g.arrows)
        if (ar.crossing >= 0 && ar.sign < 0 && ar.head < ar.tail) d = crossing_change(d, ar.crossing);
    return d;
}

}  // namespace knotpos::testing
