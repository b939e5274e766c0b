#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <knotpos/cli.hpp>

#include "test_common.hpp"

using namespace knotpos;
using namespace knotpos::testing;
namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int code;
    std::string out;
    std::string err;
};

template <class Cmd>
CmdResult call(Cmd cmd, const CliOptions& o) {
    std::ostringstream out, err;
    int code;
    try {
        code = cmd(o, out, err);
    } catch (const Error& e) {
        err << e.what();
        code = exit_code_for(e.code());
    }
    return {code, out.str(), err.str()};
}

CliOptions pd(const std::string& code) {
    CliOptions o;
    o.pd = code;
    return o;
}

// Runs the installed executable; stderr is discarded.
CmdResult exec(const std::string& args) {
    std::string cmd = std::string(KNOTPOS_BIN) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("knotpos_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(file(name)) << text;
        return file(name);
    }

private:
    fs::path path_;
    static inline int counter_ = 0;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::string table_line(const std::string& name) {
    for (const auto& line : read_lines(KNOTPOS_TABLE))
        if (parse_table_entry(line).name == name) return line;
    ADD_FAILURE() << "no table entry " << name;
    return "";
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Invariants, DocumentedExamples) {
    CliOptions t = pd(kTrefoilPd);
    t.invariants = {"conway"};
    EXPECT_EQ(call(cmd_invariants, t).out, "1 + z^2\n");

    CliOptions k;
    k.gauss = "O1+U1+";
    k.invariants = {"jones"};
    EXPECT_EQ(call(cmd_invariants, k).out, "1\n");

    CliOptions e = pd(k815Pd);
    e.invariants = {"conway"};
    EXPECT_EQ(call(cmd_invariants, e).out, "1 + 4*z^2 + 3*z^4\n");
}

TEST(Invariants, DefaultSetAndJson) {
    CmdResult r = call(cmd_invariants, pd(kFigureEightPd));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("conway: 1 - z^2"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("signature: 0"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("det: 5"), std::string::npos) << r.out;

    CliOptions j = pd(kTrefoilPd);
    j.format = "json";
    j.invariants = {"signature", "det", "seifert"};
    Json doc = Json::parse(call(cmd_invariants, j).out);
    EXPECT_EQ(doc["invariants"]["signature"], "2");
    EXPECT_EQ(doc["invariants"]["det"], "3");
    EXPECT_EQ(doc["invariants"]["seifert_circles"], "2");
    EXPECT_EQ(doc["invariants"]["canonical_genus"], "1");
}

TEST(Invariants, LevineTristramList) {
    CliOptions o = pd(kTrefoilPd);
    o.invariants = {"lt"};
    o.omegas = parse_omegas("2/1,8/1");
    CmdResult r = call(cmd_invariants, o);
    EXPECT_NE(r.out.find("sigma_omega(2,1): 2"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("sigma_omega(8,1): 0"), std::string::npos) << r.out;
}

TEST(Invariants, BoundsReportApplicability) {
    CliOptions o = pd(kFigureEightPd);
    o.invariants = {"bounds"};
    CmdResult r = call(cmd_invariants, o);
    EXPECT_NE(r.out.find("sigma_lower_bound: -2"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("sigma_lower_bound_sap: n/a (NotSAP)"), std::string::npos) << r.out;
}

TEST(ExitCodes, Mapping) {
    EXPECT_EQ(exit_code_for(Errc::MalformedSyntax), 1);
    EXPECT_EQ(exit_code_for(Errc::NotWSAP), 1);
    EXPECT_EQ(exit_code_for(Errc::ResourceLimit), 2);
    EXPECT_EQ(exit_code_for(Errc::Internal), 3);
}

TEST(ExitCodes, ParseErrorIsInputError) {
    CmdResult r = call(cmd_invariants, pd("PD[X[1,2"));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("MalformedSyntax"), std::string::npos) << r.err;
}

TEST(ExitCodes, ConflictingInputsRejected) {
    CliOptions o = pd(kTrefoilPd);
    o.gauss = kTrefoilGauss;
    EXPECT_EQ(call(cmd_classify, o).code, 1);
    EXPECT_EQ(call(cmd_classify, CliOptions{}).code, 1);
}

TEST(ExitCodes, BudgetExhaustionIsResourceLimit) {
    CliOptions o = pd(k815Pd);
    o.invariants = {"homfly"};
    o.budget = 1;
    CmdResult r = call(cmd_invariants, o);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("ResourceLimit"), std::string::npos) << r.err;
}

TEST(ExitCodes, BadOmegaRejected) {
    try {
        parse_omegas("3/3");
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::OmegaEqualsOne);
    }
    try {
        parse_omegas("3:1");
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::MalformedSyntax);
    }
    auto w = parse_omegas(" 2/1, 5/2 ");
    ASSERT_EQ(w.size(), 2u);
    EXPECT_EQ(w[1], std::make_pair(5, 2));
}

TEST(Classify, DocumentedExamples) {
    EXPECT_EQ(call(cmd_classify, pd(kTrefoilPd)).out, "Positive\n");
    CmdResult f = call(cmd_classify, pd(kFigureEightPd));
    EXPECT_EQ(f.code, 0);
    EXPECT_EQ(f.out.rfind("WeaklyPositiveOnly (witness", 0), 0u) << f.out;
    EXPECT_NE(f.out.find("basepoint="), std::string::npos) << f.out;
    EXPECT_EQ(call(cmd_classify, pd(kNegativeHopfPd)).out, "None\n");
}

TEST(Classify, JsonWitness) {
    CliOptions o;
    o.pd = to_pd(braid_closure(3, {1, 1, 1, -2}));
    o.format = "json";
    Json j = Json::parse(call(cmd_classify, o).out);
    EXPECT_EQ(j["sap"], true);
    EXPECT_EQ(j["k"], 1);
    EXPECT_TRUE(j.contains("overarc"));
}

TEST(Obstruct, EmptyTable) {
    TempDir tmp;
    CliOptions o;
    o.table = tmp.write("empty.jsonl", "");
    CmdResult r = call(cmd_obstruct, o);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, csv_header());
    EXPECT_NE(r.err.find("entries=0"), std::string::npos) << r.err;
}

TEST(Obstruct, SingleTrefoilEntryIsConsistent) {
    TempDir tmp;
    CliOptions o;
    o.table = tmp.write("t.jsonl", table_line("3_1") + "\n");
    o.format = "json";
    CmdResult r = call(cmd_obstruct, o);
    EXPECT_EQ(r.code, 0);
    Json j = Json::parse(r.out);
    ASSERT_EQ(j.size(), 1u);
    EXPECT_EQ(j[0]["verdict"], "ConsistentWithWSAP");
    EXPECT_NE(r.err.find("NotWSAP=0 ConsistentWithWSAP=1"), std::string::npos) << r.err;
}

TEST(Obstruct, BundledTableNamedRows) {
    CliOptions o;
    o.table = KNOTPOS_TABLE;
    o.jobs = 4;
    CmdResult r = call(cmd_obstruct, o);
    EXPECT_EQ(r.code, 0);
    auto has = [&](const std::string& name, const std::string& id) {
        std::istringstream in(r.out);
        std::string line;
        while (std::getline(in, line))
            if (line.rfind(name + "," + id + ",", 0) == 0 && line.find(",Fail,") != std::string::npos) return true;
        return false;
    };
    EXPECT_TRUE(has("10_140", "homfly.i-b"));
    EXPECT_TRUE(has("10_132", "signature.positive"));
    EXPECT_TRUE(has("11_500", "unknotting.u_le_a2"));
    EXPECT_FALSE(has("3_1", "signature.positive"));
}

TEST(Obstruct, PerEntryErrorsReportedInline) {
    TempDir tmp;
    CliOptions o;
    o.table = tmp.write("mixed.jsonl", table_line("3_1") + "\n{\"name\": \"broken\", \"pd\": \"[[1,2\"}\n");
    CmdResult r = call(cmd_obstruct, o);
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("broken,input,"), std::string::npos) << r.out;
    EXPECT_NE(r.err.find("errors=1"), std::string::npos) << r.err;
}

TEST(Obstruct, CsvRowCountIsEntriesTimesTests) {
    TempDir tmp;
    std::string lines;
    for (const auto* n : {"3_1", "4_1", "5_2", "8_15"}) lines += table_line(n) + "\n";
    CliOptions o;
    o.table = tmp.write("four.jsonl", lines);
    CmdResult r = call(cmd_obstruct, o);
    int rows = count_lines(r.out) - 1;
    CliOptions one;
    one.table = tmp.write("one.jsonl", table_line("3_1") + "\n");
    int per = count_lines(call(cmd_obstruct, one).out) - 1;
    EXPECT_GT(per, 10);
    EXPECT_EQ(rows, 4 * per);
}

TEST(Obstruct, OutFileCarriesReport) {
    TempDir tmp;
    CliOptions o;
    o.table = tmp.write("t.jsonl", table_line("4_1") + "\n");
    o.out = tmp.file("report.csv");
    CmdResult r = call(cmd_obstruct, o);
    EXPECT_EQ(r.out.find("summary:"), 0u) << r.out;
    EXPECT_EQ(slurp(*o.out).rfind(csv_header(), 0), 0u);
}

TEST(Obstruct, JobsDoNotChangeOutput) {
    CliOptions o;
    o.table = KNOTPOS_TABLE;
    o.jobs = 1;
    std::string one = call(cmd_obstruct, o).out;
    o.jobs = 6;
    EXPECT_EQ(call(cmd_obstruct, o).out, one);
}

TEST(Obstruct, CacheRoundTripIsBitIdentical) {
    TempDir tmp;
    CliOptions o;
    o.table = KNOTPOS_TABLE;
    o.jobs = 3;
    std::string plain = call(cmd_obstruct, o).out;
    o.cache = tmp.file("cache.jsonl");
    std::string cold = call(cmd_obstruct, o).out;
    std::string cached = slurp(*o.cache);
    EXPECT_FALSE(cached.empty());
    std::string warm = call(cmd_obstruct, o).out;
    EXPECT_EQ(cold, plain);
    EXPECT_EQ(warm, plain);
    EXPECT_EQ(slurp(*o.cache), cached);
}

TEST(SkeinTree, Trefoil) {
    CmdResult r = call(cmd_skein_tree, pd(kTrefoilPd));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("step 1:"), std::string::npos);
    EXPECT_EQ(r.out.find("step 2:"), std::string::npos);
    EXPECT_NE(r.out.find("D0 complexity (2,1)  nabla = z"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("nabla = 1  (Hopf-sum terminal)"), std::string::npos) << r.out;
}

TEST(SkeinTree, HopfIsTerminal) {
    CmdResult r = call(cmd_skein_tree, pd(kHopfPd));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("(already terminal)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("nabla = z  (Hopf-sum terminal)"), std::string::npos) << r.out;
}

TEST(SkeinTree, FigureEightRejected) {
    CmdResult r = call(cmd_skein_tree, pd(kFigureEightPd));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("NotWSAP"), std::string::npos) << r.err;
}

TEST(SkeinTree, JsonComplexitiesDecrease) {
    CliOptions o = pd(k815Pd);
    o.format = "json";
    Json j = Json::parse(call(cmd_skein_tree, o).out);
    ASSERT_FALSE(j["steps"].empty());
    EXPECT_EQ(j["hopf_sum_terminal"], true);
}

TEST(Binary, ExitCodesAndOutput) {
    CmdResult ok = exec(std::string("invariants --conway --pd '") + kTrefoilPd + "'");
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(ok.out, "1 + z^2\n");
    EXPECT_EQ(exec("invariants --pd 'PD[X[1,2'").code, 1);
    EXPECT_EQ(exec(std::string("invariants --homfly --budget 1 --pd '") + k815Pd + "'").code, 2);
    EXPECT_EQ(exec("no-such-command").code, 1);
    EXPECT_EQ(exec(std::string("skein-tree --pd '") + kFigureEightPd + "'").code, 1);
}

TEST(Binary, JobsAndCacheDeterminism) {
    TempDir tmp;
    std::string base = std::string("obstruct --table ") + KNOTPOS_TABLE + " --format csv";
    CmdResult j1 = exec(base + " --jobs 1");
    CmdResult j4 = exec(base + " --jobs 4");
    EXPECT_EQ(j1.code, 0);
    EXPECT_EQ(j1.out, j4.out);
    std::string cache = tmp.file("c.jsonl");
    CmdResult cold = exec(base + " --jobs 4 --cache " + cache);
    CmdResult warm = exec(base + " --jobs 2 --cache " + cache);
    EXPECT_EQ(cold.out, j1.out);
    EXPECT_EQ(warm.out, j1.out);
}
