#include "globsci/types.hpp"

namespace globsci {

namespace {

constexpr std::array<IndicatorSpec, kIndicatorCount> kSpecs = {{
    {IndicatorId::Euclidean, "euclidean", Orientation::Minimizing, true, false},
    {IndicatorId::Cosine, "cosine", Orientation::Maximizing, true, false},
    {IndicatorId::GiniSimpson, "gini_simpson", Orientation::Maximizing, false, false},
    {IndicatorId::LargestContributorsSurplus, "largest_contributors_surplus", Orientation::Minimizing, true, false},
    {IndicatorId::InstitutionalDiversity, "institutional_diversity", Orientation::Minimizing, false, false},
    {IndicatorId::EnglishDocuments, "english_documents", Orientation::Maximizing, false, false},
    {IndicatorId::LocalAuthors, "local_authors", Orientation::Minimizing, false, true},
}};

}  // namespace

const IndicatorSpec& indicator_spec(IndicatorId id) { return kSpecs[index_of(id)]; }

std::string_view indicator_name(IndicatorId id) { return kSpecs[index_of(id)].name; }

std::optional<IndicatorId> parse_indicator(std::string_view name) {
    for (const auto& spec : kSpecs) {
        if (spec.name == name) {
            return spec.id;
        }
    }
    return std::nullopt;
}

}  // namespace globsci
