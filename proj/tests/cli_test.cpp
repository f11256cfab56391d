// Integration checks that drive the installed CLI binary end to end.
// Usage: cli_tests <path-to-spgq-binary> <scratch-dir>

#include "fixtures.hpp"
#include "spgq/labelling.hpp"
#include "spgq/search.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace std;
using namespace spgq;
namespace fs = std::filesystem;

namespace {

string g_binary;
fs::path g_dir;
int g_failures = 0;

void check(bool ok, const string &what)
{
    if (!ok)
    {
        g_failures++;
        cerr << "FAILED: " << what << "\n";
    }
}

struct RunResult
{
    int exit_code;
    string out;
};

RunResult run(const string &args)
{
    fs::path out_file = g_dir / "cmd_out.txt";
    string cmd = g_binary + " " + args + " > " + out_file.string() + " 2> " +
                 (g_dir / "cmd_err.txt").string();
    int rc = system(cmd.c_str());
    ifstream in(out_file);
    stringstream ss;
    ss << in.rdbuf();
    int exit_code = rc == -1 ? -1 : WEXITSTATUS(rc);
    return {exit_code, ss.str()};
}

string slurp(const fs::path &p)
{
    ifstream in(p, ios::binary);
    stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path &p, const string &content)
{
    ofstream out(p);
    out << content;
}

string grab_value(const string &text, const string &key)
{
    istringstream in(text);
    string k, v;
    while (in >> k >> v)
        if (k == key)
            return v;
    return "";
}

void test_gen()
{
    fs::path er1 = g_dir / "er1.txt", er2 = g_dir / "er2.txt";
    check(run("gen --model er --n 10 --p 1.0 --seed 3 -o " + er1.string()).exit_code == 0,
          "gen er exits 0");
    check(run("gen --model er --n 10 --p 1.0 --seed 3 -o " + er2.string()).exit_code == 0,
          "gen er repeat exits 0");
    string text = slurp(er1);
    check(text == slurp(er2), "gen is deterministic for equal flags");
    size_t lines = count(text.begin(), text.end(), '\n');
    check(lines == 45, "complete graph on 10 vertices has 45 edges");

    fs::path ba = g_dir / "ba.txt";
    check(run("gen --model ba --n 1000 --m 5 --seed 9 -o " + ba.string()).exit_code == 0,
          "gen ba exits 0");
    ifstream in(ba);
    Graph g = load_edge_list(in);
    uint64_t degree_sum = 0;
    for (VertexId v = 0; v < g.vertex_count(); v++)
        degree_sum += g.degree(v);
    check(degree_sum == 2 * g.edge_count(), "ba degree sum equals twice the edge count");

    check(run("gen --model nosuch --n 5 -o " + (g_dir / "x.txt").string()).exit_code != 0,
          "unknown model is an error");
}

void test_build_and_query()
{
    fs::path graph = g_dir / "fig3a.txt";
    write_file(graph, spgq::testing::kFig3aEdgeList);
    fs::path index = g_dir / "fig3a.idx";

    RunResult build = run("build -g " + graph.string() + " -o " + index.string() +
                          " --landmarks 1,2,3 --threads 2");
    check(build.exit_code == 0, "build exits 0");
    check(grab_value(build.out, "landmarks") == "3", "build reports landmark count");
    check(grab_value(build.out, "size_labelling_bytes") == to_string(14 * 3),
          "labelling size is k bytes per vertex");

    // decoded index matches an in-memory build
    {
        ifstream in(index, ios::binary);
        LabellingScheme scheme = deserialize(in);
        ifstream gin(graph);
        Graph g = load_edge_list(gin);
        auto l4 = scheme.labels.of(*g.find_external(4));
        check(l4.size() == 2, "vertex 4 carries two label entries");
        check(grab_value(build.out, "size_delta_bytes") == to_string(delta_size_bytes(scheme)),
              "reported delta size matches serialized bytes");
    }

    // determinism across thread counts
    fs::path index1 = g_dir / "t1.idx";
    run("build -g " + graph.string() + " -o " + index1.string() + " --landmarks 1,2,3 --threads 1");
    check(slurp(index) == slurp(index1), "index bytes identical across thread counts");

    check(run("build -g " + graph.string() + " -o " + (g_dir / "bad.idx").string() + " -k 0")
                  .exit_code != 0,
          "k = 0 is an argument error");
    check(run("build -g " + graph.string() + " -o " + (g_dir / "bad.idx").string() + " -k 99")
                  .exit_code != 0,
          "k larger than the graph is an argument error");

    // the example query through the CLI
    RunResult q = run("query -g " + graph.string() + " -i " + index.string() +
                      " -s 6 -t 11 --method qbs");
    check(q.exit_code == 0, "query exits 0");
    string expected =
        "distance 5\n1 2\n1 4\n1 6\n2 3\n2 9\n3 4\n3 12\n6 7\n7 8\n8 9\n9 10\n10 11\n11 12\n";
    check(q.out == expected, "qbs answer matches the expected edge list");

    RunResult oracle = run("query -g " + graph.string() + " -s 6 -t 11 --method oracle");
    check(oracle.out == expected, "oracle output is byte-identical");
    for (const string &method : {string("bibfs"), string("ppl"), string("parentppl")})
    {
        RunResult r = run("query -g " + graph.string() + " -i " + index.string() + " -s 6 -t 11 --method " + method);
        check(r.out == expected, method + " output is byte-identical");
    }

    RunResult same = run("query -g " + graph.string() + " -i " + index.string() + " -s 6 -t 6");
    check(same.out == "distance 0\n", "s == t answers distance 0 with no edges");

    check(run("query -g " + graph.string() + " -i " + index.string() + " -s 6 -t 999").exit_code != 0,
          "unknown vertex id is an error");

    // json mirrors text and carries the sketch when asked
    RunResult js = run("query -g " + graph.string() + " -i " + index.string() +
                       " -s 6 -t 11 --format json --explain");
    check(js.exit_code == 0, "json query exits 0");
    check(js.out.find("\"distance\": 5") != string::npos, "json has the distance");
    check(js.out.find("\"d_top\": 5") != string::npos, "sketch dump has d_top");
    check(js.out.find("\"d_u_star\": 0") != string::npos, "sketch dump has d_u_star");
    check(js.out.find("\"d_v_star\": 2") != string::npos, "sketch dump has d_v_star");

    // build-then-query equals in-memory build and query
    {
        ifstream gin(graph);
        Graph g = load_edge_list(gin);
        vector<VertexId> lm{*g.find_external(1), *g.find_external(2), *g.find_external(3)};
        LabellingScheme scheme = build_labelling(g, make_landmark_set(g, lm), 2);
        SpgResult res = query_spg(g, scheme, *g.find_external(6), *g.find_external(11));
        ostringstream expect;
        expect << "distance " << res.distance << "\n";
        vector<pair<uint64_t, uint64_t>> ee;
        for (const Edge &e : res.edges)
        {
            uint64_t a = g.external_id(e.first), b = g.external_id(e.second);
            ee.emplace_back(min(a, b), max(a, b));
        }
        sort(ee.begin(), ee.end());
        for (auto [a, b] : ee)
            expect << a << ' ' << b << "\n";
        check(q.out == expect.str(), "CLI round trip equals in-process answer");
    }
}

void test_bench_and_stats()
{
    fs::path graph = g_dir / "bench_graph.txt";
    run("gen --model ba --n 300 --m 3 --seed 4 -o " + graph.string());

    RunResult bench = run("bench -g " + graph.string() +
                          " -n 60 --seed 11 -k 8 --methods qbs,bibfs,ppl,parentppl --verify");
    check(bench.exit_code == 0, "bench with --verify exits 0");
    istringstream lines(bench.out);
    string header;
    getline(lines, header);
    check(header ==
              "method\tbuild_s\tlabel_bytes\tquery_count\tmean_us\tp50_us\tp99_us\tverified",
          "bench TSV header is stable");
    int pass_rows = 0;
    string row;
    while (getline(lines, row))
        if (row.find("\tpass") != string::npos)
            pass_rows++;
    check(pass_rows == 4, "all four methods verify against the oracle");

    RunResult dnf = run("bench -g " + graph.string() +
                        " -n 5 --seed 11 --methods ppl --timeout 0.0");
    check(dnf.out.find("ppl\tDNF") != string::npos, "zero budget reports DNF");

    // query worker threads: private scratch per worker, answers still verify
    RunResult mt = run("bench -g " + graph.string() +
                       " -n 60 --seed 11 -k 8 --methods qbs,bibfs --query-threads 2 --verify");
    check(mt.exit_code == 0, "bench with query worker threads verifies");
    check(count(mt.out.begin(), mt.out.end(), '\n') == 3, "one row per method plus header");

    // stats: deterministic output, sweep over landmark counts
    RunResult s1 = run("stats -g " + graph.string() + " -n 200 --seed 5 --landmark-sweep 4,8");
    RunResult s2 = run("stats -g " + graph.string() + " -n 200 --seed 5 --landmark-sweep 4,8");
    check(s1.exit_code == 0, "stats exits 0");
    check(s1.out == s2.out, "stats output is deterministic");
    check(count(s1.out.begin(), s1.out.end(), '\n') == 3, "stats prints one row per k");

    // forced coverage cases on a 3-path
    fs::path path_graph = g_dir / "path3.txt";
    write_file(path_graph, "0 1\n1 2\n");
    RunResult ps = run("stats -g " + path_graph.string() + " -n 3 --seed 1 -k 1");
    istringstream pl(ps.out);
    string hdr, data;
    getline(pl, hdr);
    getline(pl, data);
    // landmark is the middle vertex: every sampled pair is covered entirely
    check(data.find("3\t3\t0\t0\t0") != string::npos, "path graph pairs all classified 'all'");
}

} // namespace

int main(int argc, char **argv)
{
    if (argc < 3)
    {
        cerr << "usage: cli_tests <binary> <scratch-dir>\n";
        return 2;
    }
    g_binary = argv[1];
    g_dir = argv[2];
    fs::create_directories(g_dir);

    test_gen();
    test_build_and_query();
    test_bench_and_stats();

    if (g_failures)
    {
        cerr << g_failures << " CLI check(s) failed\n";
        return 1;
    }
    cout << "all CLI checks passed\n";
    return 0;
}
