#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"

using namespace bideal;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

TEST(Cli, Normalize) {
    Result r = call({"normalize", "omega(FIN)"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "P(1)\n");
    EXPECT_EQ(call({"perp", "P(3)"}).out, "Q(3)\n");
    EXPECT_EQ(call({"rank", "omega(Q(3))"}).out, "4\n");
}

TEST(Cli, Iso) {
    Result r = call({"iso", "P(1)", "Q(1)"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "non-isomorphic\n");
    EXPECT_EQ(call({"iso", "sum(P(2),Q(1))", "P(2)"}).out, "isomorphic\n");
}

TEST(Cli, ClassifyFull) {
    Result r = call({"classify", "full"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, 10), "NON-BOREL\n");
    EXPECT_NE(r.out.find("witness"), std::string::npos);
    EXPECT_EQ(call({"classify", "fan([];const(chain))", "--via", "derivative"}).out, "P(1)\n");
}

TEST(Cli, Compile) {
    EXPECT_EQ(call({"compile", "P(1)"}).out, "fan([];const(chain))\n");
    Result dot = call({"compile", "P(1)", "--emit", "dot", "--depth", "2", "--width", "1"});
    EXPECT_EQ(dot.out.substr(0, 7), "digraph");
    EXPECT_NE(dot.out.find("doublecircle"), std::string::npos);
    Result js = call({"compile", "P(1)", "--emit", "json", "--depth", "2", "--width", "1"});
    auto j = nlohmann::json::parse(js.out);
    EXPECT_EQ(j["result"]["elements"], nlohmann::json::parse("[[0,0],[1,0]]"));
}

TEST(Cli, TreeRankAndMembership) {
    EXPECT_EQ(call({"treerank", "fan([];const(chain))"}).out, "rank 2, core empty\n");
    EXPECT_EQ(call({"member", "fan([chain];const(empty))", "in", "P(1)"}).out, "no\n");
    EXPECT_EQ(call({"member", "fan([chain];const(empty))", "in", "P(1)", "--perp"}).out, "yes\n");
    EXPECT_EQ(call({"frechet", "fan([];const(chain))", "in", "P(1)"}).out, "fan([chain];const(empty))\n");
    EXPECT_EQ(call({"idwitness", "spine([];const(chain))"}).out, "dominated by (1)^w\n");
}

TEST(Cli, Scattered) {
    EXPECT_EQ(call({"wo", "classify", "osum([];rev(N))"}).out, "P(1)\n");
    EXPECT_EQ(call({"wo", "reverse", "N"}).out, "rev(N)\nFIN\n");
    EXPECT_EQ(call({"wo", "rationalize", "N", "--count", "3"}).out, "0 1 2\n");
    EXPECT_EQ(call({"wo", "classify", "QQ"}).out, "NON-SCATTERED\n");
}

TEST(Cli, Enumerate) {
    EXPECT_EQ(call({"enumerate", "chain", "--budget", "3,6,200"}).out, "<0>\n<0,0>\n<0,0,0>\n");
    EXPECT_EQ(call({"enumerate", "chain", "--budget", "3,0,200"}).code, 1);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(call({"normalize", "P(w"}).code, 1);
    EXPECT_EQ(call({"bogus"}).code, 1);
    EXPECT_EQ(call({"normalize", "limsum(3)"}).code, 2);
    EXPECT_EQ(call({"member", "full", "in", "P(1)"}).code, 2);
    EXPECT_EQ(call({"classify", "eps"}).code, 2);
    EXPECT_EQ(call({"frechet", "transversal(fan([];const(chain)))", "in", "P(1)"}).code, 2);
    Result r = call({"member", "full", "in", "P(1)"});
    EXPECT_EQ(r.err.substr(0, 10), "NotASubset");
}

TEST(Cli, JsonMode) {
    for (std::vector<std::string> args : {std::vector<std::string>{"normalize", "omega(FIN)", "--json"},
                                          {"--json", "iso", "P(1)", "Q(1)"},
                                          {"classify", "full", "--json"},
                                          {"wo", "classify", "QQ", "--json"},
                                          {"selftest", "--seed", "3", "--trials", "2", "--json"}}) {
        Result r = call(args);
        EXPECT_EQ(r.code, 0) << r.err;
        auto j = nlohmann::json::parse(r.out);
        EXPECT_TRUE(j.contains("verb"));
        EXPECT_TRUE(j.contains("result"));
    }
    auto j = nlohmann::json::parse(call({"classify", "full", "--json"}).out);
    EXPECT_EQ(j["result"]["witness"]["kind"], "embedding");
    EXPECT_EQ(j["result"]["witness"]["checkedAtBudget"]["depth"], 6);
}

TEST(Cli, Selftest) {
    Result r = call({"selftest", "--seed", "42", "--trials", "20"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("all laws hold"), std::string::npos);
}

}  // namespace
