#include "dgs/segmenter.hpp"

#include <algorithm>
#include <stdexcept>

#include "dgs/mask_ops.hpp"
#include "dgs/rng.hpp"

namespace dgs {

void SegmenterMemory::update(int frame_index, Mask mask, bool complete) {
    if (complete && flexible_) {
        for (auto& e : entries_) e.pinned = false;  // fresh complete releases the pin
    }
    entries_.push_back(Entry{frame_index, std::move(mask), complete, false});

    auto count_pinned = [&]() {
        size_t n = 0;
        for (const auto& e : entries_) n += e.pinned;
        return n;
    };
    while (entries_.size() > max_length_ + count_pinned()) {
        auto oldest = entries_.end();
        for (auto it = entries_.begin(); it != entries_.end(); ++it) {
            if (!it->pinned) {
                oldest = it;
                break;
            }
        }
        if (oldest == entries_.end()) break;
        if (flexible_ && oldest->complete) {
            bool other_complete = false;
            for (auto it = entries_.begin(); it != entries_.end(); ++it) {
                if (it != oldest && it->complete) {
                    other_complete = true;
                    break;
                }
            }
            if (!other_complete) {
                oldest->pinned = true;  // queue grows by the pinned slot
                continue;
            }
        }
        entries_.erase(oldest);
    }
}

bool SegmenterMemory::has_complete() const {
    for (const auto& e : entries_)
        if (e.complete) return true;
    return false;
}

namespace {

Mask label_mask(const LabelImage& labels, int id) {
    Mask m(labels.width(), labels.height(), 0);
    for (size_t i = 0; i < labels.size(); ++i) m[i] = labels[i] == id ? 1 : 0;
    return m;
}

bool in_bounds(const Vec2& p, int w, int h) {
    return p.x() >= 0 && p.x() < w && p.y() >= 0 && p.y() < h;
}

int label_at(const LabelImage& labels, const Vec2& p) {
    const int u = static_cast<int>(std::lround(p.x()));
    const int v = static_cast<int>(std::lround(p.y()));
    if (u < 0 || u >= labels.width() || v < 0 || v >= labels.height()) return -1;
    return labels.at(u, v);
}

}  // namespace

Mask OracleSegmenter::segment(const Frame& frame, const std::vector<PromptPoint>& prompts,
                              const SegmenterMemory& memory) {
    if (!frame.has_gt_labels())
        throw std::runtime_error("oracle segmenter: frame carries no ground-truth labels");
    if (frame.index != last_frame_) {
        last_frame_ = frame.index;
        calls_this_frame_ = 0;
    }
    const int call = calls_this_frame_++;

    std::vector<Vec2> positive;
    for (const auto& p : prompts)
        if (p.positive) positive.push_back(p.point);

    if (bound_id_ < 0) {
        if (positive.empty())
            throw std::runtime_error("segmenter: no prompts and nothing tracked yet");
        const int id = label_at(frame.gt_labels, positive.front());
        if (id <= 0 || id == kHandInstanceId) {
            // prompt landed on background or the hand: nothing to segment
            return Mask(frame.gt_labels.width(), frame.gt_labels.height(), 0);
        }
        bound_id_ = id;
    }
    if (positive.empty() && memory.empty() && sticky_positive_prompts_.empty())
        throw std::runtime_error("segmenter: no prompts and empty memory");
    for (const auto& p : positive) sticky_positive_prompts_.push_back(p);

    const Mask gt = label_mask(frame.gt_labels, bound_id_);
    Mask mask = gt;
    Rng rng(derive_seed(config_.seed, static_cast<uint64_t>(frame.index) * 64 + call,
                        static_cast<uint64_t>(bound_id_)));

    // ordered corruption rolls; each draw happens regardless of the outcome
    // so downstream decisions stay aligned across configs
    const bool roll_dropout = rng.uniform() < config_.dropout_prob;
    const bool roll_truncate = rng.uniform() < config_.truncate_component_prob;
    const bool roll_erode = rng.uniform() < config_.erode_prob;
    const bool roll_spurious = rng.uniform() < config_.spurious_blob_prob;
    const double spur_x = rng.uniform(0.0, mask.width() - 1.0);
    const double spur_y = rng.uniform(0.0, mask.height() - 1.0);

    if (roll_dropout) mask.fill(0);

    if (config_.stale_memory && !memory.empty() && !memory.has_complete()) {
        mask = erode_to_fraction(mask, config_.stale_erode_fraction);
    }

    if (roll_truncate && mask_count(mask) > 0) {
        const MaskComponents comps = connected_components(mask);
        if (comps.components.size() > 1) {
            Mask kept(mask.width(), mask.height(), 0);
            bool any = false;
            for (const auto& p : sticky_positive_prompts_) {
                const int comp = label_at(comps.labels, p);
                if (comp < 0) continue;
                for (size_t i = 0; i < kept.size(); ++i)
                    if (comps.labels[i] == comp) kept[i] = 1;
                any = true;
            }
            if (any) mask = std::move(kept);
        }
    }

    if (roll_erode) mask = erode(mask, config_.erode_iterations);

    if (roll_spurious) {
        // place the blob away from the true mask
        Vec2 c(spur_x, spur_y);
        const Mask inflated = dilate(gt, 4);
        for (int attempt = 0; attempt < 16; ++attempt) {
            const int u = static_cast<int>(std::lround(c.x()));
            const int v = static_cast<int>(std::lround(c.y()));
            if (in_bounds(c, mask.width(), mask.height()) && !inflated.at(u, v)) break;
            c = Vec2(rng.uniform(0.0, mask.width() - 1.0), rng.uniform(0.0, mask.height() - 1.0));
        }
        stamp_disk(mask, c, config_.spurious_blob_radius_px);
    }

    // prompt semantics: a positive prompt pulls in its ground-truth component
    // when the current mask misses it entirely; a negative prompt removes the
    // mask component containing it
    const MaskComponents gt_comps = connected_components(gt);
    for (const auto& p : positive) {
        const int comp = label_at(gt_comps.labels, p);
        if (comp < 0) continue;
        bool covered = false;
        for (size_t i = 0; i < mask.size(); ++i) {
            if (gt_comps.labels[i] == comp && mask[i]) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            for (size_t i = 0; i < mask.size(); ++i)
                if (gt_comps.labels[i] == comp) mask[i] = 1;
        }
    }
    for (const auto& p : prompts) {
        if (p.positive) continue;
        const MaskComponents comps = connected_components(mask);
        const int comp = label_at(comps.labels, p.point);
        if (comp < 0) continue;
        for (size_t i = 0; i < mask.size(); ++i)
            if (comps.labels[i] == comp) mask[i] = 0;
    }
    return mask;
}

bool absence_check(const DecomposedMap& map, int object_id, int frame_index,
                   const RigidPose& camera_prev, const RigidPose& camera_prev2,
                   const CameraIntrinsics& K, const RenderSettings& settings) {
    const ObjectMap& obj = map.object(object_id);
    const RigidPose object_pose = obj.pose_at(frame_index - 1);

    auto any_center_visible = [&](const RigidPose& cam) {
        const Mat3 R = cam.normalized().rotation() * object_pose.normalized().rotation();
        const Vec3 t = cam.normalized().rotation() * object_pose.t + cam.t;
        for (const auto& g : obj.gaussians) {
            const Vec3 pc = R * g.center + t;
            if (pc.z() <= settings.near_plane) continue;
            const double u = K.fx * pc.x() / pc.z() + K.cx;
            const double v = K.fy * pc.y() / pc.z() + K.cy;
            if (u >= 0 && u < K.width && v >= 0 && v < K.height) return true;
        }
        return false;
    };

    if (any_center_visible(camera_prev)) return false;
    const RigidPose predicted = constant_velocity_predict(camera_prev, camera_prev2);
    return !is_fully_visible(obj.gaussians, object_pose, predicted, K, settings);
}

namespace {

double ratio_or_one(size_t numerator, size_t denominator) {
    return denominator == 0 ? 1.0 : static_cast<double>(numerator) / denominator;
}

}  // namespace

RefineDecision refine_mask(const Mask& mask, const Mask& inconsistent,
                           const Mask& rendered_object, const RefineThresholds& thresholds) {
    RefineDecision d;
    const size_t n_i = mask_count(inconsistent);
    const size_t n_o = mask_count(rendered_object);
    if (n_i == 0 && n_o == 0) return d;  // nothing to compare against: accept

    const size_t m_and_i = mask_intersection_count(mask, inconsistent);
    const size_t m_and_o = mask_intersection_count(mask, rendered_object);
    d.r1 = ratio_or_one(m_and_i, n_i);
    d.r2 = ratio_or_one(m_and_o, n_o);
    d.r3 = ratio_or_one(m_and_o, mask_count(mask));
    d.refine = d.r1 < thresholds.t_m1 || d.r2 < thresholds.t_m2 || d.r3 < thresholds.t_m3;
    if (!d.refine) return d;

    const Mask uncovered_i = mask_minus(inconsistent, mask);
    if (mask_count(uncovered_i) > 0) {
        const auto comps = connected_components(uncovered_i);
        d.prompts.push_back({comps.components.front().centroid, true});
    }
    const Mask uncovered_o = mask_minus(rendered_object, mask);
    if (mask_count(uncovered_o) > 0) {
        const auto comps = connected_components(uncovered_o);
        d.prompts.push_back({comps.components.front().centroid, true});
    }
    if (d.r3 < thresholds.t_m3) {
        const Mask excess = mask_minus(mask, rendered_object);
        if (mask_count(excess) > 0) {
            const auto comps = connected_components(excess);
            d.prompts.push_back({comps.components.front().centroid, false});
        }
    }
    return d;
}

double coverage_score(const Mask& mask, const Mask& inconsistent, const Mask& rendered_object) {
    const size_t n_i = mask_count(inconsistent);
    const size_t n_o = mask_count(rendered_object);
    const double r1 = ratio_or_one(mask_intersection_count(mask, inconsistent), n_i);
    const double r2 = ratio_or_one(mask_intersection_count(mask, rendered_object), n_o);
    const double r3 = ratio_or_one(mask_intersection_count(mask, rendered_object), mask_count(mask));
    return (r1 + r2 + r3) / 3.0;
}

}  // namespace dgs
