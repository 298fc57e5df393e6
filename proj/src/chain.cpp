#include "swseg/chain.hpp"

#include <algorithm>
#include <cmath>

namespace swseg {

namespace {

// Parses one operator token: name[(erode=shape:size)][@process(amount)].
SwsOperator parse_operator(const std::string& token, const MarkerDefaults& defaults) {
    SwsOperator op;
    op.model.process = defaults.process;
    op.model.amount = defaults.amount;

    std::string head = token;
    const auto at = token.find('@');
    if (at != std::string::npos) {
        head = token.substr(0, at);
        std::string ann = token.substr(at + 1);
        const auto open = ann.find('(');
        if (open == std::string::npos || ann.back() != ')')
            throw ConfigError("bad marker annotation in '" + token + "'");
        const std::string proc = ann.substr(0, open);
        std::string arg = ann.substr(open + 1, ann.size() - open - 2);
        if (proc == "poisson")
            op.model.process = MarkerProcess::Poisson;
        else if (proc == "uniform")
            op.model.process = MarkerProcess::Uniform;
        else
            throw ConfigError("unknown marker process '" + proc + "'");
        op.model.amount_is_rate = false;
        if (arg.rfind("rate=", 0) == 0) {
            if (op.model.process != MarkerProcess::Poisson)
                throw ConfigError("rate= applies to poisson only");
            op.model.amount_is_rate = true;
            arg = arg.substr(5);
        }
        try {
            std::size_t used = 0;
            op.model.amount = std::stod(arg, &used);
            if (used != arg.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ConfigError("bad marker amount in '" + token + "'");
        }
        if (!(op.model.amount > 0)) throw ConfigError("marker amount must be positive");
    }

    bool volume = false;
    if (head.rfind("ssurf", 0) == 0) {
        head = head.substr(5);
    } else if (head.rfind("svol", 0) == 0) {
        volume = true;
        head = head.substr(4);
    } else {
        throw ConfigError("unknown operator '" + token + "'");
    }
    if (head.empty()) {
        op.model.kind = volume ? MeasureKind::Volume : MeasureKind::Surface;
    } else {
        if (head.front() != '(' || head.back() != ')' || head.rfind("(erode=", 0) != 0)
            throw ConfigError("bad operator arguments in '" + token + "'");
        op.model.kind = volume ? MeasureKind::ErodedVolume : MeasureKind::ErodedSurface;
        op.model.se = StructuringElement::parse(head.substr(7, head.size() - 8));
    }
    return op;
}

}  // namespace

std::string SwsOperator::grammar(bool with_annotation) const {
    std::string text = model.describe();
    if (!with_annotation) {
        const auto at = text.find('@');
        if (at != std::string::npos) text = text.substr(0, at);
    }
    return text;
}

std::string HierarchySpec::canonical() const {
    std::string out;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) out += it->grammar() + "|";
    return out + "grad";
}

HierarchySpec HierarchySpec::parse(const std::string& text, const MarkerDefaults& defaults) {
    std::vector<std::string> tokens;
    std::size_t start = 0;
    for (;;) {
        const auto bar = text.find('|', start);
        tokens.push_back(text.substr(start, bar == std::string::npos ? bar : bar - start));
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    for (auto& t : tokens) {
        while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.erase(t.begin());
        while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.pop_back();
    }
    if (tokens.empty() || tokens.back() != "grad")
        throw ConfigError("hierarchy spec must end with 'grad': '" + text + "'");
    if (tokens.size() > 3)
        throw ConfigError("operator chains deeper than two are not supported: '" + text + "'");
    HierarchySpec spec;
    // Grammar lists outermost first; the chain stores application order.
    for (std::size_t i = tokens.size() - 1; i-- > 0;)
        spec.chain.push_back(parse_operator(tokens[i], defaults));
    return spec;
}

std::vector<SwsOperator> default_operator_set(const std::vector<StructuringElement>& se_catalog,
                                              const MarkerDefaults& defaults) {
    std::vector<SwsOperator> ops;
    auto add = [&](MeasureKind kind, std::optional<StructuringElement> se) {
        SwsOperator op;
        op.model.process = defaults.process;
        op.model.amount = defaults.amount;
        op.model.kind = kind;
        op.model.se = std::move(se);
        ops.push_back(std::move(op));
    };
    add(MeasureKind::Surface, std::nullopt);
    add(MeasureKind::Volume, std::nullopt);
    for (const auto& se : se_catalog) add(MeasureKind::ErodedSurface, se);
    for (const auto& se : se_catalog) add(MeasureKind::ErodedVolume, se);
    return ops;
}

std::vector<HierarchySpec> enumerate_specs(const std::vector<SwsOperator>& operators) {
    std::vector<HierarchySpec> specs;
    specs.emplace_back();  // the base gradient hierarchy
    for (const auto& op : operators) {
        HierarchySpec s;
        s.chain = {op};
        specs.push_back(std::move(s));
    }
    for (const auto& first : operators) {
        for (const auto& second : operators) {
            HierarchySpec s;
            s.chain = {first, second};
            specs.push_back(std::move(s));
        }
    }
    return specs;
}

ImageContext make_image_context(Image img, const PipelineConfig& cfg,
                                const LabelMap* imported_labels) {
    ImageContext ctx;
    ctx.relief = morphological_gradient(img, cfg.gradient_radius);
    if (imported_labels != nullptr) {
        if (imported_labels->width != img.width || imported_labels->height != img.height)
            throw DataError("imported label map dimensions do not match the image");
        ctx.fine = *imported_labels;
    } else {
        ctx.fine = watershed_fine_partition(ctx.relief);
    }
    ctx.rag = std::make_shared<const Rag>(build_rag(img, ctx.fine, ctx.relief, cfg.edge_weight));
    ctx.mst = minimum_spanning_tree(ctx.rag);
    ctx.img = std::move(img);
    return ctx;
}

IndexedHierarchy compose_chain(const ImageContext& ctx, const HierarchySpec& spec) {
    IndexedHierarchy h = build_dendrogram(ctx.mst, "grad");
    std::string provenance = "grad";
    for (const auto& op : spec.chain) {
        provenance = op.grammar() + "|" + provenance;
        h = sws_reweight(h, op.model, provenance);
    }
    return h;
}

IndexedHierarchy compose_chain(const Image& img, const LabelMap& labels,
                               const ScalarField& relief, const HierarchySpec& spec,
                               EdgeWeight weight_kind) {
    ImageContext ctx;
    ctx.img = img;
    ctx.relief = relief;
    ctx.fine = labels;
    ctx.rag = std::make_shared<const Rag>(build_rag(img, labels, relief, weight_kind));
    ctx.mst = minimum_spanning_tree(ctx.rag);
    return compose_chain(ctx, spec);
}

}  // namespace swseg
