#include "spgq/sketch.hpp"

#include <algorithm>

using namespace std;

namespace spgq {

Sketch compute_sketch(const LabellingScheme &scheme, VertexId u, VertexId v)
{
    if (u == v)
        throw invalid_argument("sketch endpoints must differ");
    if (u >= scheme.vertex_count || v >= scheme.vertex_count)
        throw invalid_argument("sketch endpoint out of range");

    const MetaGraph &meta = scheme.meta;
    LabelEntry virt_u, virt_v;
    auto label_view = [&](VertexId t, LabelEntry &slot) -> span<const LabelEntry> {
        if (scheme.landmark_set.is_landmark(t))
        {
            slot = {scheme.landmark_set.index(t), 0};
            return {&slot, 1};
        }
        return scheme.labels.of(t);
    };
    auto lu = label_view(u, virt_u);
    auto lv = label_view(v, virt_v);

    Sketch sk;
    constexpr uint32_t inf32 = 0xFFFFFFFF;
    uint32_t best = inf32;
    for (const LabelEntry &eu : lu)
        for (const LabelEntry &ev : lv)
        {
            Distance dm = meta.distance(eu.landmark, ev.landmark);
            if (dm == kInfDistance)
                continue;
            uint32_t total = static_cast<uint32_t>(eu.dist) + dm + ev.dist;
            if (total > best)
                continue;
            if (total < best)
            {
                best = total;
                sk.min_pairs.clear();
                sk.terminals_u.clear();
                sk.terminals_v.clear();
            }
            sk.min_pairs.emplace_back(eu.landmark, ev.landmark);
            sk.terminals_u.push_back({eu.landmark, eu.dist});
            sk.terminals_v.push_back({ev.landmark, ev.dist});
        }
    if (best == inf32)
        return sk; // no landmark route

    sk.d_top = static_cast<Distance>(best);
    for (auto [ru, rv] : sk.min_pairs)
        if (ru != rv)
        {
            auto ids = meta.spg_edges(ru, rv);
            sk.meta_edge_ids.insert(sk.meta_edge_ids.end(), ids.begin(), ids.end());
        }

    auto dedup_terminals = [](vector<SketchTerminal> &ts) {
        sort(ts.begin(), ts.end(), [](const SketchTerminal &x, const SketchTerminal &y) {
            return x.landmark < y.landmark;
        });
        ts.erase(unique(ts.begin(), ts.end()), ts.end());
    };
    dedup_terminals(sk.terminals_u);
    dedup_terminals(sk.terminals_v);
    sort(sk.meta_edge_ids.begin(), sk.meta_edge_ids.end());
    sk.meta_edge_ids.erase(unique(sk.meta_edge_ids.begin(), sk.meta_edge_ids.end()),
                           sk.meta_edge_ids.end());

    // search-step suggestion per side: deepest terminal weight minus one
    auto star = [](const vector<SketchTerminal> &ts) {
        Distance s = 0;
        for (const SketchTerminal &t : ts)
            if (t.dist > 0)
                s = max<Distance>(s, t.dist - 1);
        return s;
    };
    sk.d_u_star = star(sk.terminals_u);
    sk.d_v_star = star(sk.terminals_v);
    return sk;
}

} // namespace spgq
