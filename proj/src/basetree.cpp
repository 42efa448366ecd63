#include "rage/basetree.hpp"

#include <algorithm>
#include <cmath>

namespace rage {

double binary_mse(uint64_t mapped_chunks, unsigned significance, uint64_t total_chunks) {
    const double term = double(uint64_t{1} << (2 * significance));  // 4^m
    return double(mapped_chunks) * term / double(total_chunks);
}

double prune_psnr(double bmse, unsigned max_significance) {
    const double peak = double(uint64_t{1} << max_significance);
    return 20.0 * std::log10(peak / std::sqrt(bmse));
}

BaseTree::BaseTree(std::span<const uint32_t> chunks, unsigned chunk_bits)
    : chunk_bits_(chunk_bits), original_(chunks.begin(), chunks.end()) {
    if (chunks.empty()) throw ArgumentError("BaseTree needs at least one chunk");
    if (chunk_bits == 0 || chunk_bits > 32)
        throw ArgumentError("chunk width must be in [1, 32]");
    flip_mask_.assign(chunks.size(), 0);
    Leaf root;
    root.members.resize(chunks.size());
    for (uint32_t i = 0; i < chunks.size(); ++i) root.members[i] = i;
    leaves_.push_back(std::move(root));
}

void BaseTree::check_pos(unsigned pos) const {
    if (pos >= chunk_bits_) throw ArgumentError("bit position exceeds chunk width");
    for (uint8_t lv : levels_)
        if (lv == pos) throw ArgumentError("bit position already expanded");
}

size_t BaseTree::count_new_bases(unsigned pos) const {
    check_pos(pos);
    const uint32_t bit = 1u << pos;
    size_t splits = 0;
    for (const Leaf& leaf : leaves_) {
        bool seen0 = false, seen1 = false;
        for (uint32_t i : leaf.members) {
            ((original_[i] ^ flip_mask_[i]) & bit) ? seen1 = true : seen0 = true;
            if (seen0 && seen1) {
                ++splits;
                break;
            }
        }
    }
    return splits;
}

void BaseTree::expand(unsigned pos) {
    check_pos(pos);
    const uint32_t bit = 1u << pos;
    std::vector<Leaf> next;
    next.reserve(leaves_.size());
    last_siblings_.clear();
    for (Leaf& leaf : leaves_) {
        Leaf zero, one;
        zero.prefix = leaf.prefix << 1;
        one.prefix = (leaf.prefix << 1) | 1u;
        for (uint32_t i : leaf.members)
            ((original_[i] ^ flip_mask_[i]) & bit ? one : zero).members.push_back(i);
        if (!zero.members.empty() && !one.members.empty())
            last_siblings_.emplace_back(next.size(), next.size() + 1);
        if (!zero.members.empty()) next.push_back(std::move(zero));
        if (!one.members.empty()) next.push_back(std::move(one));
    }
    leaves_ = std::move(next);
    levels_.push_back(static_cast<uint8_t>(pos));
    prune_done_ = false;
}

std::vector<PruneEvent> BaseTree::prune_level(unsigned pos, double psnr_thr,
                                              unsigned max_significance) {
    if (levels_.empty() || levels_.back() != pos || prune_done_)
        throw ArgumentError("prune_level must follow expand of the same position");
    prune_done_ = true;

    std::vector<PruneEvent> events;
    std::vector<size_t> dead;
    const unsigned m = pos % 8;
    const uint32_t bit = 1u << pos;
    for (auto [zero_idx, one_idx] : last_siblings_) {
        Leaf& zero = leaves_[zero_idx];
        Leaf& one = leaves_[one_idx];
        // Candidate is the child with fewer chunks; ties prune the 1 branch.
        const bool prune_one = one.members.size() <= zero.members.size();
        Leaf& source = prune_one ? one : zero;
        Leaf& target = prune_one ? zero : one;

        const uint64_t k = source.members.size();
        const double psnr = prune_psnr(binary_mse(k, m, chunk_count()), max_significance);
        if (!(psnr > psnr_thr)) continue;

        for (uint32_t i : source.members) flip_mask_[i] ^= bit;
        target.members.insert(target.members.end(), source.members.begin(),
                              source.members.end());
        events.push_back({static_cast<uint8_t>(pos), source.prefix, target.prefix,
                          k, psnr});
        dead.push_back(prune_one ? one_idx : zero_idx);
    }

    if (!dead.empty()) {
        std::vector<Leaf> next;
        next.reserve(leaves_.size() - dead.size());
        size_t d = 0;
        for (size_t idx = 0; idx < leaves_.size(); ++idx) {
            if (d < dead.size() && dead[d] == idx) {
                ++d;
                continue;
            }
            next.push_back(std::move(leaves_[idx]));
        }
        leaves_ = std::move(next);
    }
    last_siblings_.clear();
    return events;
}

BaseTree::BaseAssignment BaseTree::enumerate_bases() const {
    std::vector<std::pair<uint32_t, size_t>> order;  // (min member, leaf index)
    order.reserve(leaves_.size());
    for (size_t li = 0; li < leaves_.size(); ++li)
        order.emplace_back(*std::min_element(leaves_[li].members.begin(),
                                             leaves_[li].members.end()),
                           li);
    std::sort(order.begin(), order.end());

    BaseAssignment out;
    out.dictionary.reserve(leaves_.size());
    out.ids.resize(chunk_count());
    for (auto [first, li] : order) {
        const uint32_t id = static_cast<uint32_t>(out.dictionary.size());
        out.dictionary.push_back(leaves_[li].prefix);
        for (uint32_t i : leaves_[li].members) out.ids[i] = id;
    }
    return out;
}

}  // namespace rage
