#pragma once

// Shared fixtures for the test suites: standard diagrams and the reference
// corpus exported from KnotInfo/LinkInfo (tests/data/*.tsv).

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <knotpos/polynomials.hpp>

namespace knotpos::testing {

// Positive trefoil, figure-eight and Hopf diagrams.
inline const char* kTrefoilPd = "PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]";
inline const char* kTrefoilGauss = "O1+U2+O3+U1+O2+U3+";
inline const char* kFigureEightPd = "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]";
inline const char* kHopfPd = "PD[X[4,2,3,1],X[2,4,1,3]]";
inline const char* kNegativeHopfPd = "PD[X[4,1,3,2],X[2,3,1,4]]";
inline const char* k815Pd =
    "PD[X[1,7,2,6],X[3,15,4,14],X[5,9,6,8],X[7,3,8,2],X[9,13,10,12],X[11,1,12,16],X[13,5,14,4],X[15,11,16,10]]";

inline Diagram trefoil() { return parse_pd(kTrefoilPd); }
inline Diagram figure_eight() { return parse_pd(kFigureEightPd); }
inline Diagram hopf() { return parse_pd(kHopfPd); }
inline Diagram negative_hopf() { return parse_pd(kNegativeHopfPd); }
inline Diagram knot_8_15() { return parse_pd(k815Pd); }
inline Diagram torus_2(int n) { return braid_closure(2, std::vector<int>(n, 1)); }

struct KnotRow {
    std::string name;
    std::string pd;
    int signature = 0;
    std::string conway;
    Int det;
    Diagram diagram() const { return parse_pd(pd); }
    int crossings() const { return std::stoi(name.substr(0, name.find('_'))); }
};

struct LinkRow {
    std::string name;
    std::string pd;
    int components = 0;
    int signature = 0;
    std::string conway;
    Diagram diagram() const { return parse_pd(pd); }
};

inline std::vector<std::vector<std::string>> read_tsv(const std::string& file) {
    std::ifstream in(std::string(KNOTPOS_TEST_DATA) + "/" + file);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, '\t')) f.push_back(cell);
        rows.push_back(std::move(f));
    }
    return rows;
}

inline const std::vector<KnotRow>& knot_corpus() {
    static const std::vector<KnotRow> rows = [] {
        std::vector<KnotRow> out;
        for (const auto& f : read_tsv("knots.tsv"))
            out.push_back({f[0], f[1], std::stoi(f[2]), f[3], Int(f[4])});
        return out;
    }();
    return rows;
}

inline const std::vector<LinkRow>& link_corpus() {
    static const std::vector<LinkRow> rows = [] {
        std::vector<LinkRow> out;
        for (const auto& f : read_tsv("links.tsv")) out.push_back({f[0], f[1], std::stoi(f[2]), std::stoi(f[3]), f[4]});
        return out;
    }();
    return rows;
}

inline std::vector<KnotRow> knots_up_to(int crossings) {
    std::vector<KnotRow> out;
    for (const auto& k : knot_corpus())
        if (k.crossings() <= crossings) out.push_back(k);
    return out;
}

inline Poly1 z_poly(const std::string& s) { return Poly1::parse(s, 'z'); }

}  // namespace knotpos::testing
