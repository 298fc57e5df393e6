#pragma once

#include "swseg/sws.hpp"
#include "swseg/watershed.hpp"

namespace swseg {

/// Process/amount pair applied to operators that carry no explicit annotation.
struct MarkerDefaults {
    MarkerProcess process = MarkerProcess::Poisson;
    double amount = 100.0;
};

/// One stochastic re-weighting step of a chain.
struct SwsOperator {
    MarkerModel model;
    /// Grammar form, e.g. "ssurf", "svol(erode=vseg:15)@poisson(100)".
    std::string grammar(bool with_annotation = true) const;
};

/// Declarative chain of at most two re-weighting operators over the base
/// gradient hierarchy. `chain[0]` is applied first; the canonical string lists
/// operators outermost first and ends with "grad":
///   grad
///   ssurf@poisson(100)|grad
///   svol(erode=vseg:15)@poisson(100)|ssurf@poisson(100)|grad
struct HierarchySpec {
    std::vector<SwsOperator> chain;  // application order, size <= 2

    std::string canonical() const;
    int depth() const { return static_cast<int>(chain.size()); }
    /// Re-weighted altitudes are probabilities; raw gradient altitudes are not.
    bool normalized_altitudes() const { return depth() > 0; }

    static HierarchySpec parse(const std::string& text, const MarkerDefaults& defaults = {});
};

/// The operator palette of the experiments: plain surface and volume plus their
/// eroded variants, one per catalog element.
std::vector<SwsOperator> default_operator_set(const std::vector<StructuringElement>& se_catalog,
                                              const MarkerDefaults& defaults = {});

/// Base hierarchy, every single operator, and every ordered pair, in a fixed
/// canonical order.
std::vector<HierarchySpec> enumerate_specs(const std::vector<SwsOperator>& operators);

/// Everything derived once per image and shared across hierarchy specs.
struct PipelineConfig {
    int gradient_radius = 1;
    EdgeWeight edge_weight = EdgeWeight::PassValue;
};

struct ImageContext {
    Image img;
    ScalarField relief;
    LabelMap fine;
    std::shared_ptr<const Rag> rag;
    std::shared_ptr<const Mst> mst;
};

/// Gradient, fine partition (watershed unless labels are supplied), RAG, MST.
ImageContext make_image_context(Image img, const PipelineConfig& cfg = {},
                                const LabelMap* imported_labels = nullptr);

/// Applies the chain over the shared base; provenance records the canonical
/// spec string.
IndexedHierarchy compose_chain(const ImageContext& ctx, const HierarchySpec& spec);

/// One-shot form building the context from explicit inputs.
IndexedHierarchy compose_chain(const Image& img, const LabelMap& labels,
                               const ScalarField& relief, const HierarchySpec& spec,
                               EdgeWeight weight_kind = EdgeWeight::PassValue);

}  // namespace swseg
