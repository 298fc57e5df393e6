#include "swseg/hierarchy_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <memory>
#include <sstream>

namespace swseg {

namespace {

constexpr char kMagic[4] = {'S', 'W', 'S', 'H'};
constexpr std::uint32_t kVersion = 1;

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f != nullptr) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void put_u32(std::FILE* f, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    if (std::fwrite(b, 1, 4, f) != 4) throw DataError("hierarchy write failed");
}

void put_f64(std::FILE* f, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
    if (std::fwrite(b, 1, 8, f) != 8) throw DataError("hierarchy write failed");
}

std::uint32_t get_u32(std::FILE* f, const std::string& path) {
    unsigned char b[4];
    if (std::fread(b, 1, 4, f) != 4) throw DataError("'" + path + "': truncated hierarchy file");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

double get_f64(std::FILE* f, const std::string& path) {
    unsigned char b[8];
    if (std::fread(b, 1, 8, f) != 8) throw DataError("'" + path + "': truncated hierarchy file");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

void save_hierarchy(const std::string& path, const IndexedHierarchy& h) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw DataError("cannot write '" + path + "'");
    const std::int32_t n = h.n_leaves();
    if (std::fwrite(kMagic, 1, 4, f.get()) != 4) throw DataError("hierarchy write failed");
    put_u32(f.get(), kVersion);
    put_u32(f.get(), static_cast<std::uint32_t>(n));
    put_u32(f.get(), static_cast<std::uint32_t>(n - 1));
    put_u32(f.get(), static_cast<std::uint32_t>(h.provenance.size()));
    if (!h.provenance.empty() &&
        std::fwrite(h.provenance.data(), 1, h.provenance.size(), f.get()) != h.provenance.size())
        throw DataError("hierarchy write failed");
    for (std::int32_t k = n; k < h.n_nodes(); ++k) {
        const DendNode& node = h.nodes[static_cast<std::size_t>(k)];
        const RagEdge& e = h.mst->edge(node.mst_pos);
        put_u32(f.get(), static_cast<std::uint32_t>(e.p));
        put_u32(f.get(), static_cast<std::uint32_t>(e.q));
        put_u32(f.get(),
                static_cast<std::uint32_t>(
                    h.mst->edge_ids[static_cast<std::size_t>(node.mst_pos)]));
        put_f64(f.get(), h.mst->weights[static_cast<std::size_t>(node.mst_pos)]);
    }
    for (std::int32_t k = n; k < h.n_nodes(); ++k)
        put_f64(f.get(), h.nodes[static_cast<std::size_t>(k)].altitude);
}

IndexedHierarchy load_hierarchy(const std::string& path, std::shared_ptr<const Rag> rag) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw DataError("cannot open '" + path + "'");
    char magic[4];
    if (std::fread(magic, 1, 4, f.get()) != 4 || std::memcmp(magic, kMagic, 4) != 0)
        throw DataError("'" + path + "' is not a hierarchy file");
    const std::uint32_t version = get_u32(f.get(), path);
    if (version != kVersion)
        throw DataError("'" + path + "': unsupported hierarchy version " +
                        std::to_string(version));
    const std::uint32_t n = get_u32(f.get(), path);
    const std::uint32_t n_edges = get_u32(f.get(), path);
    if (n < 1 || n_edges != n - 1) throw DataError("'" + path + "': bad hierarchy header");
    const std::uint32_t prov_len = get_u32(f.get(), path);
    std::string provenance(prov_len, '\0');
    if (prov_len > 0 && std::fread(provenance.data(), 1, prov_len, f.get()) != prov_len)
        throw DataError("'" + path + "': truncated hierarchy file");

    struct StoredEdge {
        std::uint32_t p, q, rag_id;
        double weight;
    };
    std::vector<StoredEdge> stored(n_edges);
    for (auto& e : stored) {
        e.p = get_u32(f.get(), path);
        e.q = get_u32(f.get(), path);
        e.rag_id = get_u32(f.get(), path);
        e.weight = get_f64(f.get(), path);
    }
    std::vector<double> altitudes(n_edges);
    for (auto& a : altitudes) a = get_f64(f.get(), path);
    for (std::uint32_t i = 0; i < n_edges; ++i) {
        if (altitudes[i] != stored[i].weight)
            throw DataError("'" + path + "': altitude table does not match edge weights");
    }

    auto mst = std::make_shared<Mst>();
    if (rag != nullptr) {
        if (rag->n_nodes != static_cast<std::int32_t>(n))
            throw DataError("'" + path + "': hierarchy does not match the given graph");
        // Re-attach by rag edge id, restoring the original tie-break keys.
        std::vector<std::uint32_t> order(n_edges);
        for (std::uint32_t i = 0; i < n_edges; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            return stored[a].rag_id < stored[b].rag_id;
        });
        mst->rag = rag;
        for (std::uint32_t i : order) {
            const StoredEdge& e = stored[i];
            if (e.rag_id >= rag->edges.size())
                throw DataError("'" + path + "': edge id out of range for the given graph");
            const RagEdge& re = rag->edges[e.rag_id];
            if (static_cast<std::uint32_t>(re.p) != e.p || static_cast<std::uint32_t>(re.q) != e.q)
                throw DataError("'" + path + "': edge endpoints do not match the given graph");
            mst->edge_ids.push_back(static_cast<std::int32_t>(e.rag_id));
            mst->weights.push_back(e.weight);
        }
    } else {
        // Synthesize a minimal graph; relative edge-id order is preserved so
        // tie-breaks replay identically.
        std::vector<std::uint32_t> order(n_edges);
        for (std::uint32_t i = 0; i < n_edges; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            return stored[a].rag_id < stored[b].rag_id;
        });
        auto abstract = std::make_shared<Rag>();
        abstract->n_nodes = static_cast<std::int32_t>(n);
        abstract->nodes.assign(n, RagNode{1, {0, 0, 0}, {0, 0, 0}});
        for (std::uint32_t i : order) {
            RagEdge re;
            re.p = static_cast<std::int32_t>(stored[i].p);
            re.q = static_cast<std::int32_t>(stored[i].q);
            re.weight = stored[i].weight;
            re.boundary_len = 1;
            mst->edge_ids.push_back(static_cast<std::int32_t>(abstract->edges.size()));
            mst->weights.push_back(stored[i].weight);
            abstract->edges.push_back(re);
        }
        mst->rag = abstract;
    }
    return build_dendrogram(std::move(mst), provenance);
}

std::string dump_hierarchy(const IndexedHierarchy& h) {
    std::ostringstream out;
    out << "hierarchy " << h.provenance << "\n";
    out << "leaves " << h.n_leaves() << "\n";
    for (std::int32_t k = h.n_leaves(); k < h.n_nodes(); ++k) {
        const DendNode& node = h.nodes[static_cast<std::size_t>(k)];
        const RagEdge& e = h.mst->edge(node.mst_pos);
        out << "merge " << (k - h.n_leaves()) << ": node " << k << " <- (" << node.left << ", "
            << node.right << ") edge (" << e.p << "," << e.q << ") altitude "
            << format_double(node.altitude) << "\n";
    }
    return out.str();
}

}  // namespace swseg
