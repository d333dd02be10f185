#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "actuation/core.hpp"

namespace actuation {

/// Frozen snapshot of one generation. In two-group populations the first
/// `a_count` agents are group A and the rest group B.
struct PopulationState {
    int generation = 0;
    std::vector<Agent> agents;
    std::size_t a_count = 0;
    bool two_groups = false;

    std::size_t size() const noexcept { return agents.size(); }
    std::size_t group_size(Group g) const noexcept {
        if (!two_groups) return g == Group::A ? agents.size() : 0;
        return g == Group::A ? a_count : agents.size() - a_count;
    }
    std::size_t group_offset(Group g) const noexcept { return two_groups && g == Group::B ? a_count : 0; }
    std::span<const Agent> group(Group g) const noexcept {
        return std::span<const Agent>(agents).subspan(group_offset(g), group_size(g));
    }
    Group group_of(std::size_t index) const noexcept {
        return two_groups && index >= a_count ? Group::B : Group::A;
    }
    /// Index of `index` within its own group.
    std::size_t index_in_group(std::size_t index) const noexcept { return index - group_offset(group_of(index)); }

    friend bool operator==(const PopulationState&, const PopulationState&) = default;
};

}  // namespace actuation
