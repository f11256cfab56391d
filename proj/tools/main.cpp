// Command-line driver: build indexes, answer queries, benchmark methods,
// report pair coverage, and generate synthetic graphs.

#include "spgq/baselines.hpp"
#include "spgq/bench.hpp"
#include "spgq/gen.hpp"
#include "spgq/labelling.hpp"
#include "spgq/search.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace std;
using namespace spgq;
using json = nlohmann::ordered_json;

namespace {

double seconds_since(chrono::steady_clock::time_point start)
{
    return chrono::duration<double>(chrono::steady_clock::now() - start).count();
}

Graph load_graph_file(const string &path, IngestReport *report = nullptr)
{
    ifstream in(path);
    if (!in)
        throw runtime_error("cannot open graph file: " + path);
    return load_edge_list(in, report);
}

LabellingScheme load_index_file(const string &path, const Graph &g)
{
    ifstream in(path, ios::binary);
    if (!in)
        throw runtime_error("cannot open index file: " + path);
    LabellingScheme scheme = deserialize(in);
    if (scheme.vertex_count != g.vertex_count())
        throw runtime_error("index does not match the graph (vertex counts differ)");
    return scheme;
}

VertexId resolve_vertex(const Graph &g, uint64_t external)
{
    auto v = g.find_external(external);
    if (!v)
        throw runtime_error("unknown vertex id: " + to_string(external));
    return *v;
}

vector<uint64_t> parse_id_list(const string &text)
{
    vector<uint64_t> out;
    stringstream ss(text);
    string item;
    while (getline(ss, item, ','))
        if (!item.empty())
            out.push_back(stoull(item));
    return out;
}

string format_distance(Distance d)
{
    return d == kInfDistance ? "inf" : to_string(d);
}

json sketch_to_json(const Graph &g, const LabellingScheme &scheme, const Sketch &sk,
                    VertexId u, VertexId v)
{
    json edges = json::array();
    vector<uint64_t> vertices;
    auto add_edge = [&](VertexId a, VertexId b, Distance w) {
        uint64_t ea = g.external_id(a), eb = g.external_id(b);
        edges.push_back({{"a", ea}, {"b", eb}, {"w", w}});
        vertices.push_back(ea);
        vertices.push_back(eb);
    };
    for (const SketchTerminal &t : sk.terminals_u)
        add_edge(scheme.landmark_set.vertex(t.landmark), u, t.dist);
    for (const SketchTerminal &t : sk.terminals_v)
        add_edge(scheme.landmark_set.vertex(t.landmark), v, t.dist);
    for (uint32_t id : sk.meta_edge_ids)
    {
        const MetaEdge &e = scheme.meta.edges()[id];
        add_edge(scheme.landmark_set.vertex(e.a), scheme.landmark_set.vertex(e.b), e.weight);
    }
    sort(vertices.begin(), vertices.end());
    vertices.erase(unique(vertices.begin(), vertices.end()), vertices.end());

    json out;
    out["d_top"] = sk.reachable() ? json(sk.d_top) : json(nullptr);
    out["d_u_star"] = sk.d_u_star;
    out["d_v_star"] = sk.d_v_star;
    out["vertices"] = vertices;
    out["edges"] = edges;
    return out;
}

//--------------------------- build ---------------------------

struct BuildArgs
{
    string graph_path, index_path, landmark_list;
    uint32_t k = 20;
    unsigned threads = 0;
};

int run_build(const BuildArgs &args)
{
    IngestReport report;
    Graph g = load_graph_file(args.graph_path, &report);

    LandmarkSet landmarks;
    if (!args.landmark_list.empty())
    {
        vector<VertexId> ids;
        for (uint64_t ext : parse_id_list(args.landmark_list))
            ids.push_back(resolve_vertex(g, ext));
        landmarks = make_landmark_set(g, std::move(ids));
    }
    else
    {
        landmarks = select_landmarks(g, args.k);
    }

    unsigned threads = args.threads ? args.threads : max(1u, thread::hardware_concurrency());
    auto start = chrono::steady_clock::now();
    LabellingScheme scheme = build_labelling(g, std::move(landmarks), threads);
    double build_s = seconds_since(start);

    ofstream out(args.index_path, ios::binary);
    if (!out)
        throw runtime_error("cannot write index file: " + args.index_path);
    uint64_t bytes = serialize(scheme, out);
    out.close();

    cout << "vertices " << g.vertex_count() << "\n";
    cout << "edges " << g.edge_count() << "\n";
    cout << "dropped_self_loops " << report.self_loops << "\n";
    cout << "dropped_duplicates " << report.duplicates << "\n";
    cout << "landmarks " << scheme.landmark_set.size() << "\n";
    cout << "threads " << threads << "\n";
    cout << "build_seconds " << build_s << "\n";
    cout << "label_entries " << scheme.labels.entry_count() << "\n";
    cout << "size_labelling_bytes " << labelling_size_bytes(scheme) << "\n";
    cout << "size_delta_bytes " << delta_size_bytes(scheme) << "\n";
    cout << "index_bytes " << bytes << "\n";
    return 0;
}

//--------------------------- query ---------------------------

struct QueryArgs
{
    string graph_path, index_path, method = "qbs", format = "text";
    uint64_t source = 0, target = 0;
    uint32_t k = 20;
    bool explain = false, no_memo = false;
};

SpgResult dispatch_query(const QueryArgs &args, const Graph &g, VertexId u, VertexId v,
                         LabellingScheme &scheme, bool &scheme_ready)
{
    auto ensure_scheme = [&]() {
        if (scheme_ready)
            return;
        if (!args.index_path.empty())
            scheme = load_index_file(args.index_path, g);
        else
            scheme = build_labelling(g, select_landmarks(g, min<uint32_t>(args.k, g.vertex_count())),
                                     max(1u, thread::hardware_concurrency()));
        scheme_ready = true;
    };

    if (args.method == "qbs")
    {
        ensure_scheme();
        return query_spg(g, scheme, u, v);
    }
    if (args.method == "bibfs")
        return bibfs_spg(g, u, v);
    if (args.method == "oracle")
        return oracle_spg(g, u, v);
    if (args.method == "ppl")
    {
        PplLabels labels = *ppl_build(g, degree_descending(g));
        return ppl_query(labels, g, u, v, !args.no_memo);
    }
    if (args.method == "parentppl")
    {
        ParentPplLabels labels = *parentppl_build(g, degree_descending(g));
        return parentppl_query(labels, g, u, v);
    }
    throw runtime_error("unknown method: " + args.method);
}

int run_query(const QueryArgs &args)
{
    Graph g = load_graph_file(args.graph_path);
    VertexId u = resolve_vertex(g, args.source);
    VertexId v = resolve_vertex(g, args.target);

    LabellingScheme scheme;
    bool scheme_ready = false;
    SpgResult res = dispatch_query(args, g, u, v, scheme, scheme_ready);

    // external-id edge list, ascending with a < b per line
    vector<pair<uint64_t, uint64_t>> edges;
    for (const Edge &e : res.edges)
    {
        uint64_t a = g.external_id(e.first), b = g.external_id(e.second);
        edges.emplace_back(min(a, b), max(a, b));
    }
    sort(edges.begin(), edges.end());

    json sketch_dump;
    if (args.explain && u != v)
    {
        if (!scheme_ready)
        {
            if (!args.index_path.empty())
                scheme = load_index_file(args.index_path, g);
            else
                scheme = build_labelling(
                    g, select_landmarks(g, min<uint32_t>(args.k, g.vertex_count())),
                    max(1u, thread::hardware_concurrency()));
            scheme_ready = true;
        }
        sketch_dump = sketch_to_json(g, scheme, compute_sketch(scheme, u, v), u, v);
    }

    if (args.format == "json")
    {
        json out;
        out["method"] = args.method;
        out["source"] = args.source;
        out["target"] = args.target;
        out["distance"] = res.distance == kInfDistance ? json(nullptr) : json(res.distance);
        json je = json::array();
        for (auto [a, b] : edges)
            je.push_back({a, b});
        out["edges"] = je;
        json jv = json::array();
        for (VertexId x : res.vertices)
            jv.push_back(g.external_id(x));
        out["vertices"] = jv;
        if (args.explain && u != v)
            out["sketch"] = sketch_dump;
        cout << out.dump(2) << "\n";
    }
    else
    {
        cout << "distance " << format_distance(res.distance) << "\n";
        for (auto [a, b] : edges)
            cout << a << ' ' << b << "\n";
        if (args.explain && u != v)
            cout << "sketch " << sketch_dump.dump() << "\n";
    }
    return 0;
}

//--------------------------- bench ---------------------------

struct BenchArgs
{
    string graph_path, index_path, methods = "qbs,bibfs", format = "tsv";
    uint64_t n = 10000, seed = 42;
    uint32_t k = 20;
    unsigned threads = 0, query_threads = 1;
    double timeout_s = -1.0;
    bool verify = false;
};

struct MethodReport
{
    string method;
    bool dnf = false;
    double build_s = 0.0;
    uint64_t label_bytes = 0;
    vector<double> query_us;
    bool verified = true;
    bool verify_ran = false;
};

template <typename QueryFn>
void run_timed_queries(const QuerySet &pairs, unsigned query_threads, QueryFn &&make_worker,
                       MethodReport &report, const vector<SpgResult> *oracle)
{
    const size_t n = pairs.pairs.size();
    report.query_us.assign(n, 0.0);
    vector<uint8_t> ok(n, 1);

    auto run_range = [&](size_t begin, size_t end) {
        auto query = make_worker();
        for (size_t i = begin; i < end; i++)
        {
            auto [u, v] = pairs.pairs[i];
            auto t0 = chrono::steady_clock::now();
            SpgResult res = query(u, v);
            report.query_us[i] = seconds_since(t0) * 1e6;
            if (oracle && (res.distance != (*oracle)[i].distance || res.edges != (*oracle)[i].edges))
                ok[i] = 0;
        }
    };

    if (query_threads <= 1)
    {
        run_range(0, n);
    }
    else
    {
        vector<thread> workers;
        size_t chunk = (n + query_threads - 1) / query_threads;
        for (unsigned t = 0; t < query_threads; t++)
        {
            size_t begin = min<size_t>(t * chunk, n), end = min<size_t>(begin + chunk, n);
            if (begin < end)
                workers.emplace_back(run_range, begin, end);
        }
        for (thread &w : workers)
            w.join();
    }
    if (oracle)
    {
        report.verify_ran = true;
        report.verified = all_of(ok.begin(), ok.end(), [](uint8_t x) { return x == 1; });
    }
}

int run_bench(const BenchArgs &args)
{
    Graph g = load_graph_file(args.graph_path);
    QuerySet pairs = sample_query_set(g, args.n, args.seed);
    unsigned threads = args.threads ? args.threads : max(1u, thread::hardware_concurrency());

    vector<SpgResult> oracle;
    if (args.verify)
    {
        oracle.reserve(pairs.pairs.size());
        for (auto [u, v] : pairs.pairs)
            oracle.push_back(oracle_spg(g, u, v));
    }
    const vector<SpgResult> *oracle_ptr = args.verify ? &oracle : nullptr;

    vector<MethodReport> reports;
    stringstream methods(args.methods);
    string method;
    while (getline(methods, method, ','))
    {
        MethodReport report;
        report.method = method;
        auto t0 = chrono::steady_clock::now();

        if (method == "qbs")
        {
            LabellingScheme scheme;
            if (!args.index_path.empty())
                scheme = load_index_file(args.index_path, g);
            else
                scheme = build_labelling(
                    g, select_landmarks(g, min<uint32_t>(args.k, g.vertex_count())), threads);
            report.build_s = seconds_since(t0);
            report.label_bytes = labelling_size_bytes(scheme) + delta_size_bytes(scheme);
            run_timed_queries(pairs, args.query_threads,
                              [&]() {
                                  auto querier = make_shared<SpgQuerier>(g, scheme);
                                  return [querier](VertexId u, VertexId v) {
                                      return querier->query(u, v);
                                  };
                              },
                              report, oracle_ptr);
        }
        else if (method == "bibfs")
        {
            report.build_s = 0.0;
            run_timed_queries(pairs, args.query_threads,
                              [&]() {
                                  auto querier = make_shared<BiBfsQuerier>(g);
                                  return [querier](VertexId u, VertexId v) {
                                      return querier->query(u, v);
                                  };
                              },
                              report, oracle_ptr);
        }
        else if (method == "oracle")
        {
            report.build_s = 0.0;
            run_timed_queries(pairs, args.query_threads,
                              [&]() {
                                  return [&g](VertexId u, VertexId v) {
                                      return oracle_spg(g, u, v);
                                  };
                              },
                              report, oracle_ptr);
        }
        else if (method == "ppl")
        {
            auto labels = ppl_build(g, degree_descending(g), PruneMode::path_cover, args.timeout_s);
            report.build_s = seconds_since(t0);
            if (!labels)
                report.dnf = true;
            else
            {
                // 32-bit landmark + 8-bit distance per entry
                report.label_bytes = labels->entry_count() * 5;
                run_timed_queries(pairs, args.query_threads,
                                  [&]() {
                                      const PplLabels *l = &*labels;
                                      return [l, &g](VertexId u, VertexId v) {
                                          return ppl_query(*l, g, u, v);
                                      };
                                  },
                                  report, oracle_ptr);
            }
        }
        else if (method == "parentppl")
        {
            auto labels = parentppl_build(g, degree_descending(g), args.timeout_s);
            report.build_s = seconds_since(t0);
            if (!labels)
                report.dnf = true;
            else
            {
                report.label_bytes = labels->entry_count() * 5 + labels->parent_count() * 4;
                run_timed_queries(pairs, args.query_threads,
                                  [&]() {
                                      const ParentPplLabels *l = &*labels;
                                      return [l, &g](VertexId u, VertexId v) {
                                          return parentppl_query(*l, g, u, v);
                                      };
                                  },
                                  report, oracle_ptr);
            }
        }
        else
        {
            throw runtime_error("unknown method: " + method);
        }
        reports.push_back(std::move(report));
    }

    auto stats = [](vector<double> us) {
        sort(us.begin(), us.end());
        double mean = 0;
        for (double x : us)
            mean += x;
        mean = us.empty() ? 0 : mean / us.size();
        double p50 = us.empty() ? 0 : us[us.size() / 2];
        double p99 = us.empty() ? 0 : us[min(us.size() - 1, us.size() * 99 / 100)];
        return tuple{mean, p50, p99};
    };

    if (args.format == "json")
    {
        json out = json::array();
        for (const MethodReport &r : reports)
        {
            json row;
            row["method"] = r.method;
            if (r.dnf)
            {
                row["build_s"] = nullptr; // DNF
                row["label_bytes"] = nullptr;
                row["mean_us"] = nullptr;
                row["p50_us"] = nullptr;
                row["p99_us"] = nullptr;
                row["verified"] = nullptr;
            }
            else
            {
                auto [mean, p50, p99] = stats(r.query_us);
                row["build_s"] = r.build_s;
                row["label_bytes"] = r.label_bytes;
                row["mean_us"] = mean;
                row["p50_us"] = p50;
                row["p99_us"] = p99;
                row["verified"] = r.verify_ran ? json(r.verified) : json(nullptr);
            }
            out.push_back(row);
        }
        cout << out.dump(2) << "\n";
    }
    else
    {
        cout << "method\tbuild_s\tlabel_bytes\tquery_count\tmean_us\tp50_us\tp99_us\tverified\n";
        for (const MethodReport &r : reports)
        {
            if (r.dnf)
            {
                cout << r.method << "\tDNF\t-\t-\t-\t-\t-\t-\n";
                continue;
            }
            auto [mean, p50, p99] = stats(r.query_us);
            cout << r.method << '\t' << r.build_s << '\t' << r.label_bytes << '\t'
                 << r.query_us.size() << '\t' << mean << '\t' << p50 << '\t' << p99 << '\t'
                 << (r.verify_ran ? (r.verified ? "pass" : "fail") : "-") << "\n";
        }
    }

    if (args.verify)
        for (const MethodReport &r : reports)
            if (r.verify_ran && !r.verified)
                return 1;
    return 0;
}

//--------------------------- stats ---------------------------

struct StatsArgs
{
    string graph_path, index_path, sweep;
    uint64_t n = 10000, seed = 42;
    uint32_t k = 20;
    unsigned threads = 0;
};

int run_stats(const StatsArgs &args)
{
    Graph g = load_graph_file(args.graph_path);
    QuerySet pairs = sample_query_set(g, args.n, args.seed);
    unsigned threads = args.threads ? args.threads : max(1u, thread::hardware_concurrency());

    vector<uint32_t> ks;
    if (!args.sweep.empty())
        for (uint64_t k : parse_id_list(args.sweep))
            ks.push_back(static_cast<uint32_t>(k));
    else
        ks.push_back(args.k);

    cout << "k\tpairs\tall\tsome\tnone\tunreachable\tratio_all\tratio_some\tratio_none\n";
    for (uint32_t k : ks)
    {
        LabellingScheme scheme;
        if (!args.index_path.empty() && ks.size() == 1)
            scheme = load_index_file(args.index_path, g);
        else
            scheme = build_labelling(g, select_landmarks(g, min<uint32_t>(k, g.vertex_count())),
                                     threads);
        SpgQuerier querier(g, scheme);
        CoverageReport report;
        for (auto [u, v] : pairs.pairs)
            report.count(classify_pair(querier.probe(u, v)));
        double denom = max<uint64_t>(1, report.total());
        cout << scheme.landmark_set.size() << '\t' << report.total() << '\t' << report.n_all
             << '\t' << report.n_some << '\t' << report.n_none << '\t' << report.n_unreachable
             << '\t' << report.n_all / denom << '\t' << report.n_some / denom << '\t'
             << report.n_none / denom << "\n";
    }
    return 0;
}

//--------------------------- gen ---------------------------

struct GenArgs
{
    string model = "er", out_path;
    uint32_t n = 0;
    double p = 0.1;
    uint32_t m = 3;
    uint64_t seed = 1;
};

int run_gen(const GenArgs &args)
{
    Graph g;
    if (args.model == "er")
        g = gen_erdos_renyi(args.n, args.p, args.seed);
    else if (args.model == "ba")
        g = gen_barabasi_albert(args.n, args.m, args.seed);
    else if (args.model == "grid")
        g = gen_grid(args.n);
    else
        throw runtime_error("unknown model: " + args.model);

    if (args.out_path.empty() || args.out_path == "-")
        write_canonical_edge_list(g, cout);
    else
    {
        ofstream out(args.out_path);
        if (!out)
            throw runtime_error("cannot write: " + args.out_path);
        write_canonical_edge_list(g, out);
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"shortest-path-graph query engine"};
    app.require_subcommand(1);

    BuildArgs build_args;
    auto *build = app.add_subcommand("build", "construct and save a landmark index");
    build->add_option("-g,--graph", build_args.graph_path, "edge list file")->required();
    build->add_option("-o,--output", build_args.index_path, "index output file")->required();
    build->add_option("-k,--landmark-count", build_args.k, "number of landmarks (default 20)");
    build->add_option("--landmarks", build_args.landmark_list,
                      "comma-separated external ids overriding degree selection");
    build->add_option("--threads", build_args.threads, "construction threads (default: all)");

    QueryArgs query_args;
    auto *query = app.add_subcommand("query", "answer one shortest-path-graph query");
    query->add_option("-g,--graph", query_args.graph_path, "edge list file")->required();
    query->add_option("-i,--index", query_args.index_path, "index file (qbs)");
    query->add_option("-s,--source", query_args.source, "source external id")->required();
    query->add_option("-t,--target", query_args.target, "target external id")->required();
    query->add_option("--method", query_args.method, "qbs|bibfs|ppl|parentppl|oracle");
    query->add_option("--format", query_args.format, "text|json");
    query->add_option("-k,--landmark-count", query_args.k, "landmarks when building in-process");
    query->add_flag("--explain", query_args.explain, "also print the sketch");
    query->add_flag("--no-memo", query_args.no_memo, "disable sub-query deduplication (ppl)");

    BenchArgs bench_args;
    auto *bench = app.add_subcommand("bench", "time methods over sampled query pairs");
    bench->add_option("-g,--graph", bench_args.graph_path, "edge list file")->required();
    bench->add_option("-i,--index", bench_args.index_path, "index file (qbs)");
    bench->add_option("-n,--pairs", bench_args.n, "number of query pairs (default 10000)");
    bench->add_option("--seed", bench_args.seed, "sampling seed");
    bench->add_option("--methods", bench_args.methods, "comma list: qbs,bibfs,ppl,parentppl,oracle");
    bench->add_option("-k,--landmark-count", bench_args.k, "landmarks when building in-process");
    bench->add_option("--threads", bench_args.threads, "construction threads");
    bench->add_option("--query-threads", bench_args.query_threads, "query worker threads");
    bench->add_option("--timeout", bench_args.timeout_s, "build budget in seconds (DNF beyond)");
    bench->add_option("--format", bench_args.format, "tsv|json");
    bench->add_flag("--verify", bench_args.verify, "check every answer against the oracle");

    StatsArgs stats_args;
    auto *stats = app.add_subcommand("stats", "pair coverage ratios");
    stats->add_option("-g,--graph", stats_args.graph_path, "edge list file")->required();
    stats->add_option("-i,--index", stats_args.index_path, "index file");
    stats->add_option("-n,--pairs", stats_args.n, "number of query pairs");
    stats->add_option("--seed", stats_args.seed, "sampling seed");
    stats->add_option("-k,--landmark-count", stats_args.k, "landmark count");
    stats->add_option("--landmark-sweep", stats_args.sweep, "comma list of landmark counts");
    stats->add_option("--threads", stats_args.threads, "construction threads");

    GenArgs gen_args;
    auto *gen = app.add_subcommand("gen", "generate a synthetic graph");
    gen->add_option("--model", gen_args.model, "er|ba|grid")->required();
    gen->add_option("--n", gen_args.n, "vertex count")->required();
    gen->add_option("--p", gen_args.p, "edge probability (er)");
    gen->add_option("--m", gen_args.m, "edges per new vertex (ba)");
    gen->add_option("--seed", gen_args.seed, "generator seed");
    gen->add_option("-o,--output", gen_args.out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*build)
            return run_build(build_args);
        if (*query)
            return run_query(query_args);
        if (*bench)
            return run_bench(bench_args);
        if (*stats)
            return run_stats(stats_args);
        if (*gen)
            return run_gen(gen_args);
    }
    catch (const exception &e)
    {
        cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
